use std::collections::HashMap;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::series::{self, Series};
use super::MultiIndex;
use crate::error::{Error, Result};

/// Coefficients with modulus below this are dropped after arithmetic.
pub const PRUNE_THRESHOLD: f64 = 1e-14;

/// One stored coefficient of a [`PolyMap`]. `component` is 0-based.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub component: usize,
    pub k: MultiIndex,
    pub coeff: Complex64,
}

/// A truncated polynomial map `C^n -> C^n`.
///
/// Stored sparsely per component. Every stored exponent has total degree at
/// most `max_degree`, no stored coefficient is zero, and every coefficient
/// is finite. Values are immutable: all operations return new maps.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMap {
    dim: usize,
    max_degree: usize,
    comps: Vec<Series>,
}

impl PolyMap {
    pub fn zero(dim: usize, max_degree: usize) -> Self {
        PolyMap {
            dim,
            max_degree,
            comps: vec![Series::new(); dim],
        }
    }

    pub fn identity(dim: usize, max_degree: usize) -> Self {
        Self::diagonal(&vec![Complex64::new(1.0, 0.0); dim], max_degree.max(1))
    }

    /// The linear map `z -> diag(d) z`.
    pub fn diagonal(d: &[Complex64], max_degree: usize) -> Self {
        let dim = d.len();
        let mut p = PolyMap::zero(dim, max_degree.max(1));
        for (j, &c) in d.iter().enumerate() {
            if c != Complex64::new(0.0, 0.0) {
                p.comps[j].insert(MultiIndex::unit(dim, j), c);
            }
        }
        p
    }

    /// Build from `(component, exponents, coefficient)` triples. Repeated
    /// keys are summed; zero sums are dropped.
    pub fn from_terms<I, K>(dim: usize, max_degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, K, Complex64)>,
        K: Into<MultiIndex>,
    {
        let mut p = PolyMap::zero(dim, max_degree);
        for (j, k, c) in terms {
            let k = k.into();
            if j >= dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: j + 1,
                });
            }
            if k.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: k.len(),
                });
            }
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::NonFinite(format!("coefficient at ({}, {k})", j + 1)));
            }
            if k.degree() > max_degree {
                return Err(Error::DegreeTooHigh { k, max_degree });
            }
            series::insert_add(&mut p.comps[j], k, c);
        }
        p.prune_in_place(0.0);
        Ok(p)
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn coeff(&self, component: usize, k: &MultiIndex) -> Complex64 {
        self.comps[component]
            .get(k)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn len(&self) -> usize {
        self.comps.iter().map(|c| c.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.iter().all(|c| c.is_empty())
    }

    /// Terms in canonical order: graded lex on the exponent, then component.
    pub fn terms(&self) -> Vec<Term> {
        let mut out: Vec<Term> = self
            .comps
            .iter()
            .enumerate()
            .flat_map(|(j, s)| {
                s.iter().map(move |(k, &c)| Term {
                    component: j,
                    k: k.clone(),
                    coeff: c,
                })
            })
            .collect();
        out.sort_by(|a, b| a.k.cmp(&b.k).then(a.component.cmp(&b.component)));
        out
    }

    /// Terms of one component in graded-lex order.
    pub fn component_terms(&self, j: usize) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.comps[j].iter()
    }

    /// Smallest total degree carrying a nonzero coefficient.
    pub fn min_degree(&self) -> Option<usize> {
        self.comps
            .iter()
            .filter_map(|s| s.keys().next().map(|k| k.degree()))
            .min()
    }

    /// Largest total degree carrying a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.comps
            .iter()
            .filter_map(|s| s.keys().next_back().map(|k| k.degree()))
            .max()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.comps
            .iter()
            .flat_map(|s| s.values())
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// Direct sum `sum c_{j,k} z^k` per component, in graded-lex order.
    pub fn evaluate(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_point(z)?;
        Ok(self
            .comps
            .iter()
            .map(|s| s.iter().map(|(k, c)| c * k.monomial(z)).sum())
            .collect())
    }

    /// `sum c_{j,k} exp(((alpha,k) - alpha_j) t) w^k`, i.e. `e^{-At} p(e^{At} w)`
    /// with the exponential factor of each monomial formed analytically.
    pub fn evaluate_rescaled(
        &self,
        alpha: &[Complex64],
        t: f64,
        w: &[Complex64],
    ) -> Result<Vec<Complex64>> {
        self.check_point(w)?;
        if alpha.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: alpha.len(),
            });
        }
        Ok(self
            .comps
            .iter()
            .enumerate()
            .map(|(j, s)| {
                s.iter()
                    .map(|(k, c)| c * ((k.dot(alpha) - alpha[j]) * t).exp() * k.monomial(w))
                    .sum()
            })
            .collect())
    }

    fn check_point(&self, z: &[Complex64]) -> Result<()> {
        if z.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: z.len(),
            });
        }
        Ok(())
    }

    /// Terms with total degree exactly `m`.
    pub fn homogeneous_part(&self, m: usize) -> PolyMap {
        self.filter_degree(|d| d == m)
    }

    /// Terms with total degree at most `degree`; `max_degree` becomes `degree`.
    pub fn truncate(&self, degree: usize) -> PolyMap {
        let mut p = self.filter_degree(|d| d <= degree);
        p.max_degree = degree;
        p
    }

    /// Terms of total degree at least 2.
    pub fn nonlinear_part(&self) -> PolyMap {
        self.filter_degree(|d| d >= 2)
    }

    pub fn filter_degree(&self, keep: impl Fn(usize) -> bool) -> PolyMap {
        PolyMap {
            dim: self.dim,
            max_degree: self.max_degree,
            comps: self
                .comps
                .iter()
                .map(|s| {
                    s.iter()
                        .filter(|(k, _)| keep(k.degree()))
                        .map(|(k, c)| (k.clone(), *c))
                        .collect()
                })
                .collect(),
        }
    }

    /// Diagonal of the linear part, `dp_O e_j . e_j`.
    pub fn linear_diagonal(&self) -> Vec<Complex64> {
        (0..self.dim)
            .map(|j| self.coeff(j, &MultiIndex::unit(self.dim, j)))
            .collect()
    }

    /// `p(O) = O` and `dp_O = id`.
    pub fn is_normalized(&self, tol: f64) -> bool {
        let n = self.dim;
        (0..n).all(|j| {
            self.coeff(j, &MultiIndex::zero(n)).norm() <= tol
                && (0..n).all(|i| {
                    let target = if i == j { 1.0 } else { 0.0 };
                    (self.coeff(j, &MultiIndex::unit(n, i)) - target).norm() <= tol
                })
        })
    }

    pub fn add(&self, other: &PolyMap) -> Result<PolyMap> {
        self.combine(other, Complex64::new(1.0, 0.0), PRUNE_THRESHOLD)
    }

    pub fn sub(&self, other: &PolyMap) -> Result<PolyMap> {
        self.combine(other, Complex64::new(-1.0, 0.0), PRUNE_THRESHOLD)
    }

    /// `self - other` without pruning anything but exact zeros.
    pub fn sub_exact(&self, other: &PolyMap) -> Result<PolyMap> {
        self.combine(other, Complex64::new(-1.0, 0.0), 0.0)
    }

    fn combine(&self, other: &PolyMap, scale: Complex64, prune: f64) -> Result<PolyMap> {
        self.check_dim(other)?;
        let mut out = self.clone();
        out.max_degree = self.max_degree.max(other.max_degree);
        for (o, s) in out.comps.iter_mut().zip(&other.comps) {
            series::axpy(o, scale, s);
        }
        out.prune_in_place(prune);
        Ok(out)
    }

    pub fn scale(&self, c: Complex64) -> PolyMap {
        let mut out = self.clone();
        for s in &mut out.comps {
            for v in s.values_mut() {
                *v *= c;
            }
        }
        out.prune_in_place(0.0);
        out
    }

    /// `diag(d) p`: component `j` multiplied by `d_j`.
    pub fn scale_components(&self, d: &[Complex64]) -> Result<PolyMap> {
        self.check_point(d)?;
        let mut out = self.clone();
        for (s, &dj) in out.comps.iter_mut().zip(d) {
            for v in s.values_mut() {
                *v *= dj;
            }
        }
        out.prune_in_place(0.0);
        Ok(out)
    }

    /// Conjugate by a coordinate permutation: new coordinate `i` is old
    /// coordinate `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> PolyMap {
        let comps = order
            .iter()
            .map(|&o| {
                self.comps[o]
                    .iter()
                    .map(|(k, c)| (k.permuted(order), *c))
                    .collect()
            })
            .collect();
        PolyMap {
            dim: self.dim,
            max_degree: self.max_degree,
            comps,
        }
    }

    /// Drop coefficients with modulus below `threshold` (exact zeros always).
    pub fn pruned(&self, threshold: f64) -> PolyMap {
        let mut out = self.clone();
        out.prune_in_place(threshold);
        out
    }

    fn prune_in_place(&mut self, threshold: f64) {
        for s in &mut self.comps {
            series::prune(s, threshold);
        }
    }

    fn check_dim(&self, other: &PolyMap) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(())
    }


    pub(crate) fn from_series(dim: usize, max_degree: usize, comps: Vec<Series>) -> PolyMap {
        PolyMap {
            dim,
            max_degree,
            comps,
        }
    }
}

/// `outer ∘ inner`, keeping all terms of total degree at most `truncate_to`.
///
/// `inner` must vanish at the origin so that every degree of the result only
/// depends on finitely many terms of both maps.
pub fn compose(outer: &PolyMap, inner: &PolyMap, truncate_to: usize) -> Result<PolyMap> {
    compose_pruned(outer, inner, truncate_to, PRUNE_THRESHOLD)
}

/// [`compose`] with an explicit pruning floor.
pub fn compose_pruned(
    outer: &PolyMap,
    inner: &PolyMap,
    truncate_to: usize,
    prune: f64,
) -> Result<PolyMap> {
    outer.check_dim(inner)?;
    let n = outer.dim;
    for (j, s) in inner.comps.iter().enumerate() {
        if s.contains_key(&MultiIndex::zero(n)) {
            return Err(Error::NonZeroConstantTerm { component: j });
        }
    }
    let inner_t: Vec<Series> = inner
        .comps
        .iter()
        .map(|s| s.iter().filter(|(k, _)| k.degree() <= truncate_to).map(|(k, c)| (k.clone(), *c)).collect())
        .collect();

    // Products inner^k, memoized on k.
    let mut memo: HashMap<MultiIndex, Series> = HashMap::new();
    memo.insert(MultiIndex::zero(n), series::constant(n, Complex64::new(1.0, 0.0)));

    fn power(
        k: &MultiIndex,
        inner: &[Series],
        degree: usize,
        memo: &mut HashMap<MultiIndex, Series>,
    ) -> Series {
        if let Some(s) = memo.get(k) {
            return s.clone();
        }
        let i = (0..k.len()).rev().find(|&i| k.get(i) > 0).expect("nonzero index");
        let lower = k.decrement(i).expect("k_i > 0");
        let base = power(&lower, inner, degree, memo);
        let s = series::mul(&base, &inner[i], degree);
        memo.insert(k.clone(), s.clone());
        s
    }

    let mut comps = vec![Series::new(); n];
    for (j, s) in outer.comps.iter().enumerate() {
        for (k, c) in s {
            if k.degree() > truncate_to {
                break;
            }
            let pk = power(k, &inner_t, truncate_to, &mut memo);
            series::axpy(&mut comps[j], *c, &pk);
        }
    }
    let mut out = PolyMap::from_series(n, truncate_to, comps);
    out.prune_in_place(prune);
    Ok(out)
}

/// `dp_z . v(z)`, truncated to total degree `truncate_to`.
pub fn jacobian_apply(p: &PolyMap, v: &PolyMap, truncate_to: usize) -> Result<PolyMap> {
    jacobian_apply_pruned(p, v, truncate_to, PRUNE_THRESHOLD)
}

pub fn jacobian_apply_pruned(
    p: &PolyMap,
    v: &PolyMap,
    truncate_to: usize,
    prune: f64,
) -> Result<PolyMap> {
    p.check_dim(v)?;
    let n = p.dim;
    let mut comps = vec![Series::new(); n];
    for (j, out) in comps.iter_mut().enumerate() {
        for i in 0..n {
            let d = series::derivative(&p.comps[j], i);
            if d.is_empty() {
                continue;
            }
            let prod = series::mul(&d, &v.comps[i], truncate_to);
            series::axpy(out, Complex64::new(1.0, 0.0), &prod);
        }
    }
    let mut out = PolyMap::from_series(n, truncate_to, comps);
    out.prune_in_place(prune);
    Ok(out)
}

/// Search the variable-dependency graph for a coordinate order in which
/// `p` is triangular: component `j` is `a_j z_j` plus a polynomial in the
/// coordinates placed before `j`.
///
/// Returns the order (`order[i]` is the original index of the coordinate
/// placed at position `i`), or `None` when the dependencies are cyclic or
/// some component has a nonlinear term involving its own coordinate.
pub fn is_triangular(p: &PolyMap) -> Option<Vec<usize>> {
    let n = p.dim;
    // deps[j]: variables other than z_j that component j uses.
    let mut deps = vec![vec![false; n]; n];
    for (j, s) in p.comps.iter().enumerate() {
        for k in s.keys() {
            if k.get(j) > 0 && k.degree() > 1 {
                return None;
            }
            for (i, dep) in deps[j].iter_mut().enumerate() {
                if i != j && k.get(i) > 0 {
                    *dep = true;
                }
            }
        }
    }
    // Kahn's algorithm, lowest index first for a deterministic answer.
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n).find(|&j| !placed[j] && (0..n).all(|i| !deps[j][i] || placed[i]))?;
        placed[next] = true;
        order.push(next);
    }
    Some(order)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    component: usize,
    exponents: Vec<u32>,
    coeff: [f64; 2],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyMapJson {
    dimension: usize,
    max_degree: usize,
    terms: Vec<TermJson>,
}

impl Serialize for PolyMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyMapJson {
            dimension: self.dim,
            max_degree: self.max_degree,
            terms: self
                .terms()
                .into_iter()
                .map(|t| TermJson {
                    component: t.component + 1,
                    exponents: t.k.exponents().to_vec(),
                    coeff: [t.coeff.re, t.coeff.im],
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PolyMap {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PolyMapJson::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            if t.component == 0 {
                return Err(D::Error::custom("components are numbered from 1"));
            }
            terms.push((
                t.component - 1,
                MultiIndex::new(t.exponents),
                Complex64::new(t.coeff[0], t.coeff[1]),
            ));
        }
        PolyMap::from_terms(raw.dimension, raw.max_degree, terms).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ex3_h() -> PolyMap {
        PolyMap::from_terms(
            2,
            2,
            [
                (0, [1, 0], c(1.0, 0.0)),
                (1, [2, 0], c(1.0, 0.0)),
                (1, [0, 1], c(1.0, 0.0)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn evaluate_identity_and_monomial() {
        let id = PolyMap::identity(2, 1);
        let z = [c(0.3, 0.0), c(-0.1, 0.0)];
        assert_eq!(id.evaluate(&z).unwrap(), z.to_vec());

        let p = PolyMap::from_terms(2, 2, [(1, [2, 0], c(1.0, 0.0))]).unwrap();
        assert_eq!(
            p.evaluate(&[c(2.0, 0.0), c(0.0, 0.0)]).unwrap(),
            vec![c(0.0, 0.0), c(4.0, 0.0)]
        );

        assert_eq!(
            ex3_h().evaluate(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap(),
            vec![c(1.0, 0.0), c(2.0, 0.0)]
        );
    }

    #[test]
    fn evaluate_rejects_wrong_dimension() {
        let err = PolyMap::identity(2, 1).evaluate(&[c(1.0, 0.0)]).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, got: 1 });
    }

    #[test]
    fn construction_rejects_bad_terms() {
        assert!(matches!(
            PolyMap::from_terms(2, 1, [(0, [2, 0], c(1.0, 0.0))]),
            Err(Error::DegreeTooHigh { .. })
        ));
        assert!(matches!(
            PolyMap::from_terms(2, 2, [(0, [1, 0], c(f64::NAN, 0.0))]),
            Err(Error::NonFinite(_))
        ));
        let p = PolyMap::from_terms(1, 2, [(0, [2], c(1.0, 0.0)), (0, [2], c(-1.0, 0.0))]).unwrap();
        assert!(p.is_empty());
    }

    #[test]
    fn compose_examples() {
        let h = ex3_h();
        assert_eq!(compose(&PolyMap::identity(2, 2), &h, 2).unwrap(), h);

        let lin = PolyMap::diagonal(&[c(0.5, 0.0), c(0.25, 0.0)], 1);
        let sq = compose(&lin, &lin, 2).unwrap();
        assert_eq!(sq.linear_diagonal(), vec![c(0.25, 0.0), c(1.0 / 16.0, 0.0)]);
        assert_eq!(sq.len(), 2);

        // example3 fixture: h commutes with diag(1/2, 1/4).
        let a = compose(&h, &lin, 4).unwrap();
        let b = compose(&lin, &h, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn compose_rejects_constant_term() {
        let inner = PolyMap::from_terms(1, 1, [(0, [0], c(1.0, 0.0)), (0, [1], c(1.0, 0.0))]).unwrap();
        assert_eq!(
            compose(&PolyMap::identity(1, 1), &inner, 2).unwrap_err(),
            Error::NonZeroConstantTerm { component: 0 }
        );
    }

    #[test]
    fn jacobian_apply_examples() {
        let v = PolyMap::from_terms(
            2,
            2,
            [(0, [1, 0], c(-1.0, 0.0)), (1, [0, 1], c(-2.5, 0.0)), (1, [2, 0], c(1.0, 0.0))],
        )
        .unwrap();
        assert_eq!(jacobian_apply(&PolyMap::identity(2, 1), &v, 2).unwrap(), v);

        // p = (z1, z1^2 + z2), v = id: dp.v = (z1, 2 z1^2 + z2)
        let got = jacobian_apply(&ex3_h(), &PolyMap::identity(2, 1), 3).unwrap();
        let want = PolyMap::from_terms(
            2,
            3,
            [(0, [1, 0], c(1.0, 0.0)), (1, [2, 0], c(2.0, 0.0)), (1, [0, 1], c(1.0, 0.0))],
        )
        .unwrap();
        assert_eq!(got, want);

        // p = (z1, z2 - 2 z1^2), v = (-z1, -2.5 z2 + z1^2): second component -2.5 z2 + 5 z1^2
        let p = PolyMap::from_terms(
            2,
            2,
            [(0, [1, 0], c(1.0, 0.0)), (1, [0, 1], c(1.0, 0.0)), (1, [2, 0], c(-2.0, 0.0))],
        )
        .unwrap();
        let got = jacobian_apply(&p, &v, 2).unwrap();
        assert_eq!(got.coeff(1, &[2, 0].into()), c(5.0, 0.0));
        assert_eq!(got.coeff(1, &[0, 1].into()), c(-2.5, 0.0));
        assert_eq!(got.homogeneous_part(2).len(), 1);
    }

    #[test]
    fn homogeneous_parts() {
        let id = PolyMap::identity(2, 1);
        assert_eq!(id.homogeneous_part(1), id);
        let h2 = ex3_h().homogeneous_part(2);
        assert_eq!(h2.terms().len(), 1);
        assert_eq!(h2.coeff(1, &[2, 0].into()), c(1.0, 0.0));
        assert!(ex3_h().homogeneous_part(7).is_empty());
    }

    fn brute_force_triangular(p: &PolyMap) -> bool {
        let n = p.dimension();
        let mut perm: Vec<usize> = (0..n).collect();
        fn next_perm(v: &mut [usize]) -> bool {
            let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
                return false;
            };
            let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
            v.swap(i - 1, j);
            v[i..].reverse();
            true
        }
        loop {
            let q = p.permuted(&perm);
            let ok = q.terms().iter().all(|t| {
                let j = t.component;
                if t.k.degree() == 1 && t.k.get(j) == 1 {
                    return true;
                }
                t.k.vanishes_from(j)
            });
            if ok {
                return true;
            }
            if !next_perm(&mut perm) {
                return false;
            }
        }
    }

    #[test]
    fn triangular_detection() {
        let diag = PolyMap::diagonal(&[c(0.5, 0.0), c(0.25, 0.0)], 1);
        assert_eq!(is_triangular(&diag), Some(vec![0, 1]));

        // example1 flow map at some fixed t: (e^{a1 t} z1, e^{a2 t}(z2 + a t z1^2))
        let flow = PolyMap::from_terms(
            2,
            2,
            [(0, [1, 0], c(0.3, 0.0)), (1, [0, 1], c(0.1, 0.0)), (1, [2, 0], c(0.07, 0.0))],
        )
        .unwrap();
        assert_eq!(is_triangular(&flow), Some(vec![0, 1]));

        let swapped = flow.permuted(&[1, 0]);
        assert_eq!(is_triangular(&swapped), Some(vec![1, 0]));

        let cyclic = PolyMap::from_terms(
            2,
            2,
            [(0, [0, 2], c(1.0, 0.0)), (1, [2, 0], c(1.0, 0.0))],
        )
        .unwrap();
        assert!(!brute_force_triangular(&cyclic));
        assert_eq!(is_triangular(&cyclic), None);

        for p in [&diag, &flow, &swapped, &cyclic] {
            assert_eq!(is_triangular(p).is_some(), brute_force_triangular(p));
        }
    }

    #[test]
    fn json_form() {
        let json = serde_json::to_string(&ex3_h()).unwrap();
        assert_eq!(
            json,
            r#"{"dimension":2,"max_degree":2,"terms":[{"component":1,"exponents":[1,0],"coeff":[1.0,0.0]},{"component":2,"exponents":[0,1],"coeff":[1.0,0.0]},{"component":2,"exponents":[2,0],"coeff":[1.0,0.0]}]}"#
        );
        let back: PolyMap = serde_json::from_str(&json).unwrap();
        assert_eq!(back, ex3_h());
        assert!(serde_json::from_str::<PolyMap>(r#"{"dimension":1,"max_degree":1,"terms":[],"extra":0}"#).is_err());
    }
}
