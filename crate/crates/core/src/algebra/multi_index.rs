use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Exponent vector `k = (k_1, ..., k_n)` of a monomial `z^k`.
///
/// Ordered graded-lexicographically: lower total degree first, and within a
/// degree the exponent vectors compare lexicographically in *descending*
/// order, so for `n = 2` the quadratic monomials come out as
/// `z1^2, z1 z2, z2^2`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The exponent vector of the coordinate monomial `z_i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total degree `|k|`.
    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `k - e_i`, or `None` when `k_i = 0`.
    pub fn decrement(&self, i: usize) -> Option<MultiIndex> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(MultiIndex(e))
    }

    /// The pairing `(alpha, k) = sum k_i alpha_i`.
    pub fn dot(&self, alpha: &[Complex64]) -> Complex64 {
        self.0
            .iter()
            .zip(alpha)
            .map(|(&e, &a)| a * e as f64)
            .sum()
    }

    /// `z^k`, multiplied variable by variable in index order.
    pub fn monomial(&self, z: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for (&e, &zi) in self.0.iter().zip(z) {
            if e > 0 {
                acc *= zi.powu(e);
            }
        }
        acc
    }

    /// Reindex the exponents: `result[i] = self[order[i]]`.
    pub fn permuted(&self, order: &[usize]) -> MultiIndex {
        MultiIndex(order.iter().map(|&o| self.0[o]).collect())
    }

    /// True when no variable with index `>= from` occurs.
    pub fn vanishes_from(&self, from: usize) -> bool {
        self.0[from..].iter().all(|&e| e == 0)
    }

    /// All exponent vectors in `n` variables with total degree `d`, in
    /// graded-lex order.
    pub fn all_of_degree(n: usize, d: usize) -> Vec<MultiIndex> {
        fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == n {
                prefix.push(left);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=left).rev() {
                prefix.push(e);
                rec(n, left - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            if d == 0 {
                out.push(MultiIndex(Vec::new()));
            }
            return out;
        }
        rec(n, d as u32, &mut Vec::with_capacity(n), &mut out);
        out
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

impl<const N: usize> From<[u32; N]> for MultiIndex {
    fn from(v: [u32; N]) -> Self {
        MultiIndex(v.to_vec())
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let mut v = vec![
            MultiIndex::from([0, 2]),
            MultiIndex::from([1, 0]),
            MultiIndex::from([1, 1]),
            MultiIndex::from([2, 0]),
            MultiIndex::from([0, 1]),
        ];
        v.sort();
        let got: Vec<_> = v.iter().map(|k| k.exponents().to_vec()).collect();
        assert_eq!(got, vec![vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn enumerate_degree() {
        let ks = MultiIndex::all_of_degree(3, 2);
        assert_eq!(ks.len(), 6);
        assert!(ks.windows(2).all(|w| w[0] < w[1]));
        assert!(ks.iter().all(|k| k.degree() == 2));
        assert_eq!(MultiIndex::all_of_degree(2, 0), vec![MultiIndex::zero(2)]);
    }

    #[test]
    fn pairing_and_monomial() {
        let alpha = [Complex64::new(-1.0, 0.0), Complex64::new(-2.0, 1.0)];
        let k = MultiIndex::from([2, 1]);
        assert_eq!(k.dot(&alpha), Complex64::new(-4.0, 1.0));
        let z = [Complex64::new(2.0, 0.0), Complex64::new(0.0, 1.0)];
        assert_eq!(k.monomial(&z), Complex64::new(0.0, 4.0));
    }
}
