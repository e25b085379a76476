//! Closed-form flows of triangular resonant fields.
//!
//! Write component `j` of the flow as `e^{alpha_j t} G_j(t, z)`. For a
//! resonant term `c z^k` in component `j` the exponentials cancel, so
//! `dG_j/dt = sum_k c prod_i G_i^{k_i}` with only `i < j` on the right.
//! Integrating from `G_j(0) = z_j` leaves `G_j` polynomial in `t` and `z`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{MultiIndex, PolyMap, VectorField};
use crate::error::{Error, Result, TermRef};

/// Coefficients `c_0, ..., c_d` of a polynomial in `t`, without trailing zeros.
type TPoly = Vec<Complex64>;

/// Polynomial in `z` with `t`-polynomial coefficients.
type TSeries = BTreeMap<MultiIndex, TPoly>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn tpoly_trim(mut p: TPoly) -> TPoly {
    while p.last() == Some(&ZERO) {
        p.pop();
    }
    p
}

fn tpoly_mul(a: &[Complex64], b: &[Complex64]) -> TPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    tpoly_trim(out)
}

fn tpoly_add_into(acc: &mut TPoly, p: &[Complex64], scale: Complex64) {
    if acc.len() < p.len() {
        acc.resize(p.len(), ZERO);
    }
    for (a, x) in acc.iter_mut().zip(p) {
        *a += x * scale;
    }
}

/// Antiderivative vanishing at `t = 0`.
fn tpoly_integrate(p: &[Complex64]) -> TPoly {
    let mut out = vec![ZERO];
    out.extend(p.iter().enumerate().map(|(i, c)| c / (i + 1) as f64));
    tpoly_trim(out)
}

fn tpoly_eval(p: &[Complex64], t: f64) -> Complex64 {
    p.iter().rev().fold(ZERO, |acc, c| acc * t + c)
}

fn tseries_mul(a: &TSeries, b: &TSeries) -> TSeries {
    let mut out = TSeries::new();
    for (ka, pa) in a {
        for (kb, pb) in b {
            let prod = tpoly_mul(pa, pb);
            let e = out.entry(ka.add(kb)).or_default();
            tpoly_add_into(e, &prod, Complex64::new(1.0, 0.0));
        }
    }
    out.into_iter()
        .map(|(k, p)| (k, tpoly_trim(p)))
        .filter(|(_, p)| !p.is_empty())
        .collect()
}

/// One entry of the coefficient table: component `j` of the flow contains
/// `e^{alpha_j t} (sum_i t_poly[i] t^i) z^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularTerm {
    pub j: usize,
    pub k: MultiIndex,
    pub t_poly: Vec<Complex64>,
}

/// The flow `P_t(z)_j = e^{alpha_j t}(z_j + sum_k R_{j,k}(t) z^k)`, exact for
/// every real `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularFlow {
    alpha: Vec<Complex64>,
    terms: Vec<TriangularTerm>,
}

/// Build the closed-form flow of a triangular field whose higher part is
/// made of resonant monomials only (within `tol * max|alpha|`).
pub fn triangular_flow(fhat: &VectorField, tol: f64) -> Result<TriangularFlow> {
    let alpha = fhat.alpha().to_vec();
    let n = alpha.len();
    let eps = tol * alpha.iter().map(|a| a.norm()).fold(0.0, f64::max);
    for t in fhat.higher().terms() {
        if !t.k.vanishes_from(t.component) {
            return Err(Error::NotTriangular);
        }
        if fhat.divisor(t.component, &t.k).norm() > eps {
            return Err(Error::NonResonantTerm {
                at: TermRef {
                    component: t.component,
                    k: t.k,
                },
            });
        }
    }

    let one = Complex64::new(1.0, 0.0);
    let mut g: Vec<TSeries> = Vec::with_capacity(n);
    for j in 0..n {
        let mut gj = TSeries::new();
        gj.insert(MultiIndex::unit(n, j), vec![one]);
        let mut rhs = TSeries::new();
        for (k, c) in fhat.higher().component_terms(j) {
            let mut prod = TSeries::new();
            prod.insert(MultiIndex::zero(n), vec![one]);
            for (i, gi) in g.iter().enumerate() {
                for _ in 0..k.get(i) {
                    prod = tseries_mul(&prod, gi);
                }
            }
            for (kk, p) in prod {
                tpoly_add_into(rhs.entry(kk).or_default(), &p, *c);
            }
        }
        for (k, p) in rhs {
            let integral = tpoly_integrate(&tpoly_trim(p));
            if !integral.is_empty() {
                gj.insert(k, integral);
            }
        }
        g.push(gj);
    }

    let mut terms = Vec::new();
    for (j, gj) in g.into_iter().enumerate() {
        for (k, p) in gj {
            if k == MultiIndex::unit(n, j) {
                continue;
            }
            terms.push(TriangularTerm { j, k, t_poly: p });
        }
    }
    terms.sort_by(|a, b| a.j.cmp(&b.j).then(a.k.cmp(&b.k)));
    Ok(TriangularFlow { alpha, terms })
}

impl TriangularFlow {
    pub fn alpha(&self) -> &[Complex64] {
        &self.alpha
    }

    pub fn dimension(&self) -> usize {
        self.alpha.len()
    }

    /// The coefficient table, sorted by `(j, graded lex k)`.
    pub fn terms(&self) -> &[TriangularTerm] {
        &self.terms
    }

    /// The `t`-polynomial attached to `(j, k)`, if any.
    pub fn t_poly(&self, j: usize, k: &MultiIndex) -> Option<&[Complex64]> {
        self.terms
            .iter()
            .find(|x| x.j == j && &x.k == k)
            .map(|x| x.t_poly.as_slice())
    }

    /// Largest `|k|` among the terms of component `j` (0 if none).
    pub fn z_degree(&self, j: usize) -> usize {
        self.terms
            .iter()
            .filter(|x| x.j == j)
            .map(|x| x.k.degree())
            .max()
            .unwrap_or(0)
    }

    /// `P_t(z)`; negative `t` gives the inverse `P_{-|t|} = P_{|t|}^{-1}`.
    pub fn eval(&self, t: f64, z: &[Complex64]) -> Result<Vec<Complex64>> {
        if z.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                got: z.len(),
            });
        }
        let mut g = z.to_vec();
        for x in &self.terms {
            g[x.j] += tpoly_eval(&x.t_poly, t) * x.k.monomial(z);
        }
        Ok(g.iter()
            .zip(&self.alpha)
            .map(|(gj, a)| (a * t).exp() * gj)
            .collect())
    }

    /// `P_t` as a polynomial map.
    pub fn as_polymap(&self, t: f64) -> PolyMap {
        let n = self.dimension();
        let degree = self.terms.iter().map(|x| x.k.degree()).max().unwrap_or(1);
        let lin = (0..n).map(|j| (j, MultiIndex::unit(n, j), (self.alpha[j] * t).exp()));
        let hi = self
            .terms
            .iter()
            .map(|x| (x.j, x.k.clone(), (self.alpha[x.j] * t).exp() * tpoly_eval(&x.t_poly, t)));
        PolyMap::from_terms(n, degree, lin.chain(hi).collect::<Vec<_>>()).expect("valid terms")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    j: usize,
    k: Vec<u32>,
    t_poly: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FlowJson {
    alpha: Vec<[f64; 2]>,
    terms: Vec<TermJson>,
}

impl Serialize for TriangularFlow {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FlowJson {
            alpha: self.alpha.iter().map(|a| [a.re, a.im]).collect(),
            terms: self
                .terms
                .iter()
                .map(|x| TermJson {
                    j: x.j + 1,
                    k: x.k.exponents().to_vec(),
                    t_poly: x.t_poly.iter().map(|c| [c.re, c.im]).collect(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TriangularFlow {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = FlowJson::deserialize(d)?;
        let n = raw.alpha.len();
        let mut terms = Vec::with_capacity(raw.terms.len());
        for x in raw.terms {
            if x.j == 0 || x.j > n || x.k.len() != n {
                return Err(D::Error::custom("term index out of range"));
            }
            terms.push(TriangularTerm {
                j: x.j - 1,
                k: MultiIndex::new(x.k),
                t_poly: x.t_poly.iter().map(|c| Complex64::new(c[0], c[1])).collect(),
            });
        }
        Ok(TriangularFlow {
            alpha: raw.alpha.iter().map(|a| Complex64::new(a[0], a[1])).collect(),
            terms,
        })
    }
}
