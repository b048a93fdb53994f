use std::collections::HashMap;

use num_bigint::BigInt;

use super::Arrangement;
use crate::polyalg::matrix::{int_rref, kernel_from_rows};

/// An intersection subspace `X ∈ L_A`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Flat {
    indices: Vec<usize>,
    dim: usize,
    equations: Vec<Vec<BigInt>>,
    basis: Vec<Vec<BigInt>>,
}

impl Flat {
    /// Closed, ascending set of hyperplanes containing the flat.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn codim(&self) -> usize {
        self.equations.len()
    }

    /// Reduced echelon basis of the space of linear forms vanishing on the flat.
    pub fn equations(&self) -> &[Vec<BigInt>] {
        &self.equations
    }

    /// Canonical integer basis of the subspace itself.
    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// `self ⊆ other` as subspaces, i.e. `other ≤ self` in `L_A`.
    pub fn is_contained_in(&self, other: &Flat) -> bool {
        other
            .indices
            .iter()
            .all(|i| self.indices.binary_search(i).is_ok())
    }
}

pub(crate) fn rank_of<'a>(rows: impl Iterator<Item = &'a [BigInt]>, ncols: usize) -> usize {
    int_rref(rows.map(<[BigInt]>::to_vec).collect(), ncols)
        .pivots
        .len()
}

/// Builds the flat cut out by the forms with the given indices.
fn flat_from_generators(a: &Arrangement, generators: &[usize]) -> Flat {
    let ell = a.dim();
    let rows: Vec<Vec<BigInt>> = generators
        .iter()
        .map(|&i| a.form(i).coeffs().to_vec())
        .collect();
    let rref = int_rref(rows, ell);
    let rank = rref.pivots.len();
    let indices = (0..a.len())
        .filter(|&i| {
            let mut rows = rref.rows.clone();
            rows.push(a.form(i).coeffs().to_vec());
            int_rref(rows, ell).pivots.len() == rank
        })
        .collect();
    let basis = kernel_from_rows(rref.rows.clone(), ell);
    Flat {
        indices,
        dim: ell - rank,
        equations: rref.rows,
        basis,
    }
}

pub(crate) fn is_flat_of(a: &Arrangement, flat: &Flat) -> bool {
    if flat.indices.iter().any(|&i| i >= a.len()) {
        return false;
    }
    let rebuilt = flat_from_generators(a, &flat.indices);
    rebuilt == *flat
}

/// The poset `L_A` of intersections, ordered by reverse inclusion, with its
/// Möbius function.
#[derive(Debug, Clone)]
pub struct IntersectionLattice {
    ambient_dim: usize,
    flats: Vec<Flat>,
    mobius: Vec<i64>,
}

impl IntersectionLattice {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Flats sorted by dimension descending, then by index set. The first is
    /// the whole space.
    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn mobius(&self, i: usize) -> i64 {
        self.mobius[i]
    }

    pub fn mobius_values(&self) -> &[i64] {
        &self.mobius
    }

    pub fn position(&self, flat: &Flat) -> Option<usize> {
        self.flats.iter().position(|f| f == flat)
    }

    /// `flats[i] ≤ flats[j]` in reverse-inclusion order.
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.flats[j].is_contained_in(&self.flats[i])
    }

    /// Indices of the lower interval `[0̂, X]`.
    pub fn lower_interval(&self, j: usize) -> Vec<usize> {
        (0..self.flats.len()).filter(|&i| self.le(i, j)).collect()
    }
}

/// Computes `L_A` incrementally: intersect every known flat with every
/// hyperplane until no new subspace appears. Flats are identified by the
/// reduced echelon basis of their equations.
pub fn intersection_lattice(a: &Arrangement) -> IntersectionLattice {
    let ell = a.dim();
    let top = flat_from_generators(a, &[]);
    let mut seen: HashMap<Vec<Vec<BigInt>>, usize> = HashMap::new();
    seen.insert(top.equations.clone(), 0);
    let mut flats = vec![top];
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &fi in &frontier {
            for h in 0..a.len() {
                if flats[fi].indices.binary_search(&h).is_ok() {
                    continue;
                }
                let mut generators = flats[fi].indices.clone();
                generators.push(h);
                let flat = flat_from_generators(a, &generators);
                if !seen.contains_key(&flat.equations) {
                    seen.insert(flat.equations.clone(), flats.len());
                    next.push(flats.len());
                    flats.push(flat);
                }
            }
        }
        frontier = next;
    }
    flats.sort_by(|x, y| y.dim.cmp(&x.dim).then_with(|| x.indices.cmp(&y.indices)));

    // Möbius recursion: μ(V) = 1, μ(X) = -Σ_{Y<X} μ(Y). Flats are sorted so
    // every Y < X precedes X.
    let mut mobius = Vec::with_capacity(flats.len());
    for j in 0..flats.len() {
        if j == 0 {
            mobius.push(1);
            continue;
        }
        let s: i64 = (0..j)
            .filter(|&i| flats[j].is_contained_in(&flats[i]))
            .map(|i| mobius[i])
            .sum();
        mobius.push(-s);
    }
    IntersectionLattice {
        ambient_dim: ell,
        flats,
        mobius,
    }
}
