use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{content, normalize_int_vec, Rational};
use crate::error::{Error, Result};

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Rows must all have length `cols`; `cols` is needed for the 0-row case.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in matrix with {} columns",
                    r.len(),
                    cols
                )));
            }
            data.extend(r);
        }
        Ok(RatMatrix {
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| Rational::from_integer(x.into()))
                    .collect()
            })
            .collect();
        RatMatrix::from_rows(cols, rows).expect("rectangular input")
    }

    pub fn from_bigint_rows(cols: usize, rows: &[Vec<BigInt>]) -> Result<Self> {
        RatMatrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().cloned().map(Rational::from_integer).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// Rows scaled by their denominators' lcm, so each spans the same line.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| clear_denominators(self.row(i)))
            .collect()
    }

    pub fn rank(&self) -> usize {
        int_rref(self.integer_rows(), self.cols).pivots.len()
    }

    /// Basis of the right null space. Each vector has integer entries with
    /// content 1 and a positive first nonzero entry; vectors are listed by
    /// ascending free column of the reduced echelon form.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        self.kernel_basis_int()
            .into_iter()
            .map(|v| v.into_iter().map(Rational::from_integer).collect())
            .collect()
    }

    pub fn kernel_basis_int(&self) -> Vec<Vec<BigInt>> {
        kernel_from_rows(self.integer_rows(), self.cols)
    }

    /// Inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Result<Option<RatMatrix>> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
                return Ok(None);
            };
            for j in 0..n {
                a.data.swap(k * n + j, p * n + j);
                inv.data.swap(k * n + j, p * n + j);
            }
            let pivot = a.get(k, k).clone();
            for j in 0..n {
                let x = a.get(k, j) / &pivot;
                a.set(k, j, x);
                let y = inv.get(k, j) / &pivot;
                inv.set(k, j, y);
            }
            for i in (0..n).filter(|&i| i != k) {
                let f = a.get(i, k).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let x = a.get(i, j) - &f * a.get(k, j);
                    a.set(i, j, x);
                    let y = inv.get(i, j) - &f * inv.get(k, j);
                    inv.set(i, j, y);
                }
            }
        }
        Ok(Some(inv))
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        // Scale rows to integers and remember the scale factors.
        let mut scale = Rational::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let row = self.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= Rational::from_integer(lcm.clone());
            m.push(row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect());
        }
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != k {
                m.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        Ok(Rational::from_integer(sign * &m[n - 1][n - 1]) / scale)
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(super::format_rational).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub(crate) fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

fn reduce_content(row: &mut [BigInt]) {
    let g = content(row);
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// `row <- p*row - a*pivot_row`, then content-reduced.
fn eliminate(row: &mut [BigInt], pivot_row: &[BigInt], p: &BigInt, a: &BigInt) {
    let p_is_one = p.is_one();
    for (x, y) in row.iter_mut().zip(pivot_row) {
        if y.is_zero() {
            if !p_is_one && !x.is_zero() {
                *x *= p;
            }
        } else if p_is_one {
            *x -= a * y;
        } else {
            *x = &*x * p - a * y;
        }
    }
    reduce_content(row);
}

pub(crate) struct IntRref {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
}

/// Fully reduced integer echelon form: each pivot column is zero outside its
/// pivot row, pivots positive, rows content-reduced.
pub(crate) fn int_rref(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> IntRref {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    for r in rows.iter_mut() {
        reduce_content(r);
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let best = (r..rows.len())
            .filter(|&i| !rows[i][col].is_zero())
            .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
        let Some(best) = best else { continue };
        rows.swap(r, best);
        if rows[r][col].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot_row = rows[r].clone();
        let p = pivot_row[col].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let a = row[col].clone();
            let g = p.gcd(&a);
            eliminate(row, &pivot_row, &(&p / &g), &(&a / &g));
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    IntRref { rows, pivots }
}

/// Kernel basis of the integer rows: the multi-modular route when it
/// verifies, exact elimination otherwise.
pub(crate) fn kernel_from_rows(rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    match super::modular::kernel_modular(&rows, ncols) {
        Some(basis) => basis,
        None => kernel_exact(rows, ncols),
    }
}

/// Kernel basis read off the fully reduced integer echelon form.
pub(crate) fn kernel_exact(rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let IntRref { rows, pivots } = int_rref(rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        // x_free = L, x_pivot(r) = -a_{r,free} * L / p_r
        let lcm = rows
            .iter()
            .zip(&pivots)
            .filter(|(row, _)| !row[free].is_zero())
            .fold(BigInt::one(), |acc, (row, &pc)| acc.lcm(&row[pc]));
        let mut v = vec![BigInt::zero(); ncols];
        v[free] = lcm.clone();
        for (row, &pc) in rows.iter().zip(&pivots) {
            if !row[free].is_zero() {
                v[pc] = -(&row[free] * (&lcm / &row[pc]));
            }
        }
        basis.push(normalize_int_vec(v));
    }
    basis
}

/// Tests whether `v` lies in the span of `basis`; on success returns one set
/// of coordinates (free directions set to zero when `basis` is dependent).
pub fn in_span(v: &[Rational], basis: &[Vec<Rational>]) -> Result<Option<Vec<Rational>>> {
    let n = v.len();
    if let Some(b) = basis.iter().find(|b| b.len() != n) {
        return Err(Error::DimensionMismatch(format!(
            "basis vector of length {} against vector of length {}",
            b.len(),
            n
        )));
    }
    let k = basis.len();
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(v[i].clone());
            clear_denominators(&row)
        })
        .collect();
    let IntRref { rows, pivots } = int_rref(rows, k + 1);
    if pivots.last() == Some(&k) {
        return Ok(None);
    }
    let mut coords = vec![Rational::zero(); k];
    for (row, &pc) in rows.iter().zip(&pivots) {
        coords[pc] = Rational::new(row[k].clone(), row[pc].clone());
    }
    Ok(Some(coords))
}

/// A subspace grown one vector at a time, kept in integer echelon form.
#[derive(Debug, Clone)]
pub struct EchelonSpace {
    dim: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl EchelonSpace {
    pub fn new(dim: usize) -> Self {
        EchelonSpace {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Rational]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.dim, "vector length");
        let mut w = clear_denominators(v);
        reduce_content(&mut w);
        for (pc, row) in &self.rows {
            if w[*pc].is_zero() {
                continue;
            }
            let a = w[*pc].clone();
            let p = &row[*pc];
            let g = p.gcd(&a);
            eliminate(&mut w, row, &(p / &g), &(&a / &g));
        }
        w
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns `true` when it enlarged the space.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let w = self.reduce(v);
        match w.iter().position(|x| !x.is_zero()) {
            Some(pc) => {
                let mut w = w;
                if w[pc].is_negative() {
                    for x in w.iter_mut() {
                        *x = -&*x;
                    }
                }
                self.rows.push((pc, w));
                true
            }
            None => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{rat, rat_frac};

    fn ints(v: &[Rational]) -> Vec<i64> {
        v.iter()
            .map(|x| {
                assert!(x.is_integer());
                i64::try_from(x.to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn kernel_examples() {
        let k = RatMatrix::from_i64(&[vec![1, 1]]).kernel_basis();
        assert_eq!(
            k.iter().map(|v| ints(v)).collect::<Vec<_>>(),
            vec![vec![1, -1]]
        );
        assert!(RatMatrix::identity(3).kernel_basis().is_empty());
        let m = RatMatrix::from_i64(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn kernel_of_rational_matrix_is_integral() {
        let m = RatMatrix::from_rows(2, vec![vec![rat_frac(1, 2), rat_frac(1, 3)]]).unwrap();
        let k = m.kernel_basis();
        assert_eq!(ints(&k[0]), vec![2, -3]);
    }

    #[test]
    fn det_examples() {
        assert_eq!(RatMatrix::identity(4).det().unwrap(), rat(1));
        let rep = RatMatrix::from_i64(&[vec![1, 2, 3], vec![4, 5, 6], vec![1, 2, 3]]);
        assert_eq!(rep.det().unwrap(), rat(0));
        let v = RatMatrix::from_i64(&[vec![1, 1, 1], vec![1, 2, 3], vec![1, 4, 9]]);
        assert_eq!(v.det().unwrap(), rat(2));
        let swap = RatMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(swap.det().unwrap(), rat(-1));
        let frac = RatMatrix::from_rows(1, vec![vec![rat_frac(3, 7)]]).unwrap();
        assert_eq!(frac.det().unwrap(), rat_frac(3, 7));
        assert!(matches!(
            RatMatrix::zeros(2, 3).det(),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn inverse_round_trip() {
        let m = RatMatrix::from_i64(&[vec![0, 2, 1], vec![1, 1, 0], vec![3, 0, 1]]);
        let inv = m.inverse().unwrap().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RatMatrix::identity(3));
        let singular = RatMatrix::from_i64(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(singular.inverse().unwrap(), None);
    }

    #[test]
    fn in_span_examples() {
        let zero = vec![rat(0), rat(0)];
        assert_eq!(
            in_span(&zero, &[vec![rat(0), rat(1)]]).unwrap(),
            Some(vec![rat(0)])
        );
        assert_eq!(
            in_span(&[rat(1), rat(0)], &[vec![rat(0), rat(1)]]).unwrap(),
            None
        );
        let coords = in_span(
            &[rat(3), rat(3)],
            &[vec![rat(1), rat(1)], vec![rat(1), rat(-1)]],
        )
        .unwrap();
        assert_eq!(coords, Some(vec![rat(3), rat(0)]));
        assert!(in_span(&[rat(1)], &[vec![rat(1), rat(2)]]).is_err());
        assert_eq!(in_span(&zero, &[]).unwrap(), Some(vec![]));
        assert_eq!(in_span(&[rat(1), rat(0)], &[]).unwrap(), None);
    }

    #[test]
    fn echelon_space_tracks_span() {
        let mut s = EchelonSpace::new(3);
        assert!(s.insert(&[rat(1), rat(2), rat(0)]));
        assert!(s.insert(&[rat(0), rat(1), rat(1)]));
        assert!(!s.insert(&[rat(1), rat(3), rat(1)]));
        assert!(s.contains(&[rat(2), rat(5), rat(1)]));
        assert!(!s.contains(&[rat(0), rat(0), rat(1)]));
        assert_eq!(s.rank(), 2);
    }

    fn same_span(a: &[Vec<BigInt>], b: &[Vec<BigInt>], ncols: usize) -> bool {
        let mut left = EchelonSpace::new(ncols);
        for v in a {
            left.insert(
                &v.iter()
                    .cloned()
                    .map(Rational::from_integer)
                    .collect::<Vec<_>>(),
            );
        }
        a.len() == b.len()
            && left.rank() == a.len()
            && b.iter().all(|v| {
                left.contains(
                    &v.iter()
                        .cloned()
                        .map(Rational::from_integer)
                        .collect::<Vec<_>>(),
                )
            })
    }

    proptest::proptest! {
        #[test]
        fn modular_kernel_matches_exact(
            ncols in 1usize..9,
            data in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 8), 0..8),
            scale in proptest::sample::select(vec![1i64, 1_000_003, i64::MAX / 16]),
        ) {
            let rows: Vec<Vec<BigInt>> = data
                .iter()
                .map(|r| r[..ncols].iter().map(|&x| BigInt::from(x) * scale).collect())
                .collect();
            let exact = kernel_exact(rows.clone(), ncols);
            let fast = kernel_from_rows(rows, ncols);
            proptest::prop_assert!(same_span(&exact, &fast, ncols));
        }
    }
}
