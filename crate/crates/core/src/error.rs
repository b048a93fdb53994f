use thiserror::Error;

/// Errors raised by the library. Verdicts such as "not free" are never errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableMismatch { left: usize, right: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("arrangement dimension must be at least 1")]
    ZeroDimension,
    #[error("hyperplane {0} has a zero linear form")]
    ZeroForm(usize),
    #[error("hyperplanes {0} and {1} are proportional")]
    ProportionalForms(usize, usize),
    #[error("multiplicity has {got} entries, arrangement has {expected} hyperplanes")]
    MultiplicityLength { expected: usize, got: usize },
    #[error("label list has {got} entries, arrangement has {expected} hyperplanes")]
    LabelLength { expected: usize, got: usize },
    #[error("pivot {pivot} out of range for {count} hyperplanes")]
    InvalidPivot { pivot: usize, count: usize },
    #[error("flat is not part of the intersection lattice")]
    FlatNotInLattice,
    #[error("subset oracle limited to {bound} hyperplanes, got {got}")]
    OracleBound { bound: usize, got: usize },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("invalid family parameters: {0}")]
    FamilyParams(String),
    #[error("no generic arrangement found after {0} attempts")]
    GenericityExhausted(usize),
    #[error("derivation is not tangent to the pivot hyperplane")]
    NotTangent,
    #[error("derivation {0} does not belong to D(A,m)")]
    NotAMember(usize),
    #[error("expected {expected} derivations, got {got}")]
    CountMismatch { expected: usize, got: usize },
    #[error("requires ℓ ≥ 4, got ℓ = {0}")]
    DimensionGate(usize),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("malformed certificate: {0}")]
    Certificate(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
