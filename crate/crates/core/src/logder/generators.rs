use super::piece::{d0_graded_piece, graded_piece, GradedBasis};
use super::Derivation;
use crate::arrangement::{Arrangement, MultiArrangement};
use crate::error::{Error, Result};
use crate::polyalg::{EchelonSpace, HomogPoly, MonomialBasis};

/// Graded Nakayama bookkeeping for one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorRow {
    pub degree: u32,
    /// `dim M_d`.
    pub dim: usize,
    /// `dim (S_1 · M_{d-1})` inside `M_d`.
    pub image_dim: usize,
    /// A complement of the image, taken greedily from the basis of `M_d`.
    pub new_generators: Vec<Derivation>,
}

/// Minimal homogeneous generators of a graded module, degree by degree.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GeneratorTable {
    pub rows: Vec<GeneratorRow>,
}

impl GeneratorTable {
    pub fn total(&self) -> usize {
        self.rows.iter().map(|r| r.new_generators.len()).sum()
    }

    /// Generator degrees, ascending, with multiplicity.
    pub fn degrees(&self) -> Vec<u32> {
        self.rows
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.degree, r.new_generators.len()))
            .collect()
    }

    pub fn generators(&self) -> Vec<Derivation> {
        self.rows
            .iter()
            .flat_map(|r| r.new_generators.iter().cloned())
            .collect()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.dim).collect()
    }
}

/// Feeds graded pieces in ascending degree and extracts new generators.
pub(crate) struct Sweep {
    ell: usize,
    previous: Option<GradedBasis>,
    pub table: GeneratorTable,
}

impl Sweep {
    pub fn new(ell: usize) -> Self {
        Sweep {
            ell,
            previous: None,
            table: GeneratorTable::default(),
        }
    }

    pub fn push(&mut self, piece: GradedBasis) -> Result<&GeneratorRow> {
        let d = piece.degree;
        let basis = MonomialBasis::new(self.ell, d);
        let mut space = EchelonSpace::new(self.ell * basis.len());
        if let Some(prev) = &self.previous {
            if prev.degree + 1 != d {
                return Err(Error::Internal("graded pieces out of order".into()));
            }
            for delta in &prev.elements {
                for k in 0..self.ell {
                    let lifted = delta.mul_poly(&HomogPoly::var(self.ell, k))?;
                    space.insert(&lifted.to_vector(&basis));
                }
            }
        }
        let image_dim = space.rank();
        let mut new_generators = Vec::new();
        for delta in &piece.elements {
            if space.insert(&delta.to_vector(&basis)) {
                new_generators.push(delta.clone());
            }
        }
        if image_dim + new_generators.len() != piece.dim() {
            return Err(Error::Internal(format!(
                "degree {d}: image {image_dim} + new {} != dim {}",
                new_generators.len(),
                piece.dim()
            )));
        }
        self.table.rows.push(GeneratorRow {
            degree: d,
            dim: piece.dim(),
            image_dim,
            new_generators,
        });
        self.previous = Some(piece);
        Ok(self.table.rows.last().expect("just pushed"))
    }
}

/// Generator table of `D(A, m)` for degrees `0..=dmax`.
pub fn minimal_generators(ma: &MultiArrangement, dmax: u32) -> Result<GeneratorTable> {
    let mut sweep = Sweep::new(ma.dim());
    for d in 0..=dmax {
        sweep.push(graded_piece(ma, d))?;
    }
    Ok(sweep.table)
}

/// Generator table of `D_0(A)` (derivations killing the pivot form) for
/// degrees `0..=dmax`, stopping early once `stop_at` generators are found.
pub fn d0_generators(
    a: &Arrangement,
    pivot: usize,
    dmax: u32,
    stop_at: Option<usize>,
) -> Result<GeneratorTable> {
    let mut sweep = Sweep::new(a.dim());
    for d in 0..=dmax {
        sweep.push(d0_graded_piece(a, pivot, d)?)?;
        if stop_at.is_some_and(|s| sweep.table.total() >= s) {
            break;
        }
    }
    Ok(sweep.table)
}
