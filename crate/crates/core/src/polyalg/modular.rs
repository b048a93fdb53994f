//! Multi-modular kernel computation. Results are reconstructed from residues
//! and then verified exactly, so a wrong reconstruction can only cost time.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::normalize_int_vec;

/// Primes just below `2^62`.
const PRIMES: [u64; 5] = [
    4611686018427387847,
    4611686018427387817,
    4611686018427387787,
    4611686018427387761,
    4611686018427387751,
];

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn residue(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue below modulus")
}

/// Reduced row echelon form mod `p`: pivot columns and, for every free
/// column `f`, the kernel vector with `v_f = 1` and zeros on other free columns.
fn kernel_mod_p(rows: &[Vec<BigInt>], ncols: usize, p: u64) -> (Vec<usize>, Vec<Vec<u64>>) {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| residue(x, p)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(best) = (r..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(r, best);
        let inv = inv_mod(m[r][col], p);
        for x in m[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            let a = row[col];
            if i == r || a == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                if y != 0 {
                    *x = (*x + p - mul_mod(a, y, p)) % p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let kernel = (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0u64; ncols];
            v[free] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                if row[free] != 0 {
                    v[pc] = p - row[free];
                }
            }
            v
        })
        .collect();
    (pivots, kernel)
}

/// `n/d ≡ a (mod m)` with `|n|, d ≤ sqrt(m/2)`.
fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if t1.is_negative() {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

/// Lifts one kernel vector from residues modulo `m` to integers.
fn lift(residues: &[BigInt], m: &BigInt) -> Option<Vec<BigInt>> {
    let mut den = BigInt::one();
    let mut nums = Vec::with_capacity(residues.len());
    for a in residues {
        if a.is_zero() {
            nums.push((BigInt::zero(), BigInt::one()));
            continue;
        }
        // Scaling by the running denominator keeps later reconstructions small.
        let scaled = (a * &den).mod_floor(m);
        let (n, d) = rational_reconstruct(&scaled, m)?;
        den *= &d;
        nums.push((n, d));
    }
    // Entry i is n_i / (d_i · D_i), where D_i is the product of earlier denominators.
    let mut out = vec![BigInt::zero(); residues.len()];
    let mut suffix = BigInt::one();
    for (i, (n, d)) in nums.iter().enumerate().rev() {
        out[i] = n * &suffix;
        suffix *= d;
    }
    Some(normalize_int_vec(out))
}

fn annihilates(rows: &[Vec<(usize, BigInt)>], v: &[BigInt]) -> bool {
    rows.iter().all(|row| {
        row.iter()
            .filter(|(j, _)| !v[*j].is_zero())
            .map(|(j, x)| x * &v[*j])
            .sum::<BigInt>()
            .is_zero()
    })
}

/// Kernel basis by reduction modulo several primes, Chinese remaindering and
/// rational reconstruction. Every vector is checked against the integer
/// rows; `None` when the primes are exhausted or disagree.
///
/// If `k` verified vectors with the unit pattern on `ncols - rank_p` free
/// columns are returned, they are independent kernel vectors over ℚ, and
/// `rank_p ≤ rank_ℚ` forces them to span the whole kernel.
pub(crate) fn kernel_modular(rows: &[Vec<BigInt>], ncols: usize) -> Option<Vec<Vec<BigInt>>> {
    let sparse: Vec<Vec<(usize, BigInt)>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, x.clone()))
                .collect()
        })
        .filter(|r: &Vec<(usize, BigInt)>| !r.is_empty())
        .collect();
    let mut modulus = BigInt::one();
    let mut acc: Vec<Vec<BigInt>> = Vec::new();
    let mut pivots_seen: Option<Vec<usize>> = None;
    for &p in &PRIMES {
        let (pivots, kernel) = kernel_mod_p(rows, ncols, p);
        match &pivots_seen {
            None => {
                acc = kernel
                    .iter()
                    .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
                    .collect();
                pivots_seen = Some(pivots);
            }
            Some(seen) if *seen != pivots => return None,
            Some(_) => {
                let bp = BigInt::from(p);
                // x ≡ a (mod M), x ≡ b (mod p): x = a + M·((b - a)·M⁻¹ mod p).
                let m_inv = inv_mod(residue(&modulus, p), p);
                for (va, vb) in acc.iter_mut().zip(&kernel) {
                    for (a, &b) in va.iter_mut().zip(vb) {
                        let diff = (BigInt::from(b) - residue(a, p)).mod_floor(&bp);
                        let t = mul_mod(diff.to_u64().expect("reduced"), m_inv, p);
                        *a += &modulus * t;
                    }
                }
            }
        }
        modulus *= p;
        let lifted: Option<Vec<Vec<BigInt>>> = acc.iter().map(|v| lift(v, &modulus)).collect();
        if let Some(basis) = lifted {
            if basis.iter().all(|v| annihilates(&sparse, v)) {
                return Some(basis);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_prime(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let (mut d, mut s) = (n - 1, 0);
        while d % 2 == 0 {
            d /= 2;
            s += 1;
        }
        [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
            .iter()
            .all(|&a| {
                let mut x = pow_mod(a % n, d, n);
                if x == 1 || x == n - 1 || a % n == 0 {
                    return true;
                }
                for _ in 1..s {
                    x = mul_mod(x, x, n);
                    if x == n - 1 {
                        return true;
                    }
                }
                false
            })
    }

    #[test]
    fn primes_are_prime() {
        assert!(PRIMES.iter().all(|&p| is_prime(p)));
        assert!(!is_prime(PRIMES[0] + 2));
    }

    #[test]
    fn reconstruction() {
        let m = BigInt::from(PRIMES[0]);
        let inv3 = BigInt::from(inv_mod(3, PRIMES[0]));
        let a = (BigInt::from(-7) * inv3).mod_floor(&m);
        assert_eq!(
            rational_reconstruct(&a, &m),
            Some((BigInt::from(-7), BigInt::from(3)))
        );
    }

    #[test]
    fn small_kernel() {
        let rows = vec![
            vec![1, 2, 3]
                .into_iter()
                .map(BigInt::from)
                .collect::<Vec<_>>(),
            vec![2, 4, 7].into_iter().map(BigInt::from).collect(),
        ];
        let k = kernel_modular(&rows, 3).unwrap();
        assert_eq!(
            k,
            vec![vec![BigInt::from(2), BigInt::from(-1), BigInt::from(0)]]
        );
    }

    #[test]
    fn huge_entries_need_several_primes() {
        let big: BigInt = BigInt::from(10).pow(40u32) + 7u32;
        let other: BigInt = BigInt::from(3) * &big + 1u32;
        let rows = vec![vec![big.clone(), other.clone()]];
        let k = kernel_modular(&rows, 2).unwrap();
        let expected = vec![-other, big];
        assert_eq!(k, vec![normalize_int_vec(expected)]);
    }
}
