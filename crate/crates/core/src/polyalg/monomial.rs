use std::collections::HashMap;

use super::poly::Exponent;

/// The monomials of one degree in a fixed number of variables, in descending
/// lexicographic order (`x_1^d` first). This fixes the coordinates of `S_d`.
#[derive(Debug, Clone)]
pub struct MonomialBasis {
    nvars: usize,
    degree: u32,
    monomials: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: u32) -> Self {
        let mut monomials = Vec::new();
        if nvars > 0 {
            let mut current = vec![0u32; nvars];
            fill(&mut monomials, &mut current, 0, degree);
        } else if degree == 0 {
            monomials.push(Vec::new());
        }
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        MonomialBasis {
            nvars,
            degree,
            monomials,
            index,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Exponent] {
        &self.monomials
    }

    pub fn index_of(&self, e: &[u32]) -> Option<usize> {
        self.index.get(e).copied()
    }
}

fn fill(out: &mut Vec<Exponent>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(current.clone());
        return;
    }
    for k in (0..=remaining).rev() {
        current[pos] = k;
        fill(out, current, pos + 1, remaining - k);
    }
    current[pos] = 0;
}

/// `C(n, k)` with `C(n, k) = 0` for `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim S_d` for `S` in `nvars` variables; zero for negative `d`.
pub fn dim_homogeneous(nvars: usize, degree: i64) -> u64 {
    if degree < 0 || nvars == 0 {
        return u64::from(degree == 0);
    }
    binomial(degree as u64 + nvars as u64 - 1, nvars as u64 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_descending_lex() {
        let b = MonomialBasis::new(2, 2);
        assert_eq!(b.monomials(), &[vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(b.index_of(&[1, 1]), Some(1));
    }

    #[test]
    fn sizes_match_binomials() {
        for n in 1..5 {
            for d in 0..6 {
                assert_eq!(
                    MonomialBasis::new(n, d).len() as u64,
                    dim_homogeneous(n, d as i64)
                );
            }
        }
        assert_eq!(dim_homogeneous(3, -1), 0);
        assert_eq!(binomial(4, 2), 6);
    }
}
