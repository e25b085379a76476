//! The coefficient `p(t)` of `z^k` in component `j` of `phi_t` for a field
//! whose only higher term is `a z^k` at lowest order. It solves
//! `p' = alpha_j p + a e^{(alpha,k) t}` with `p(0) = 0`:
//!
//! * nonresonant: `p(t) = a (e^{(alpha,k) t} - e^{alpha_j t}) / ((alpha,k) - alpha_j)`;
//! * resonant: `p(t) = a t e^{alpha_j t}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::MultiIndex;
use crate::error::{Error, Result};
use crate::spectrum::DEFAULT_TOL;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    Nonresonant,
    Resonant,
}

/// JSON uses a 1-based `j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "CurveJson", try_from = "CurveJson")]
pub struct CoefficientCurve {
    j: usize,
    k: MultiIndex,
    a: Complex64,
    alpha: Vec<Complex64>,
    kind: CurveKind,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveJson {
    j: usize,
    k: MultiIndex,
    a: Complex64,
    alpha: Vec<Complex64>,
    kind: CurveKind,
}

impl From<CoefficientCurve> for CurveJson {
    fn from(c: CoefficientCurve) -> Self {
        CurveJson {
            j: c.j + 1,
            k: c.k,
            a: c.a,
            alpha: c.alpha,
            kind: c.kind,
        }
    }
}

impl TryFrom<CurveJson> for CoefficientCurve {
    type Error = Error;

    fn try_from(c: CurveJson) -> Result<Self> {
        if c.j == 0 {
            return Err(Error::InvalidArgument("components are numbered from 1".into()));
        }
        CoefficientCurve::with_kind(c.j - 1, c.k, c.a, c.alpha, c.kind, DEFAULT_TOL)
    }
}

/// `(e^z - 1) / z`, accurate near `z = 0`.
fn phi1(z: Complex64) -> Complex64 {
    if z.norm() < 0.5 {
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for n in 2..=20 {
            term *= z / n as f64;
            sum += term;
        }
        sum
    } else {
        (z.exp() - 1.0) / z
    }
}

impl CoefficientCurve {
    /// Classify with the default relative tolerance.
    pub fn new(j: usize, k: MultiIndex, a: Complex64, alpha: Vec<Complex64>) -> Result<Self> {
        let kind = if divisor(j, &k, &alpha)?.norm() <= eps(&alpha, DEFAULT_TOL) {
            CurveKind::Resonant
        } else {
            CurveKind::Nonresonant
        };
        Ok(CoefficientCurve { j, k, a, alpha, kind })
    }

    /// Use the given kind; fails if it disagrees with the spectrum at `tol`
    /// (relative to `max |alpha|`).
    pub fn with_kind(
        j: usize,
        k: MultiIndex,
        a: Complex64,
        alpha: Vec<Complex64>,
        kind: CurveKind,
        tol: f64,
    ) -> Result<Self> {
        let d = divisor(j, &k, &alpha)?;
        let resonant = d.norm() <= eps(&alpha, tol);
        match (kind, resonant) {
            (CurveKind::Nonresonant, true) => Err(Error::SmallDivisor {
                at: crate::error::TermRef { component: j, k },
                divisor: d.norm(),
            }),
            (CurveKind::Resonant, false) => Err(Error::NonResonantTerm {
                at: crate::error::TermRef { component: j, k },
            }),
            _ => Ok(CoefficientCurve { j, k, a, alpha, kind }),
        }
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn k(&self) -> &MultiIndex {
        &self.k
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn alpha(&self) -> &[Complex64] {
        &self.alpha
    }

    /// `(alpha, k) - alpha_j`.
    pub fn divisor(&self) -> Complex64 {
        self.k.dot(&self.alpha) - self.alpha[self.j]
    }

    /// `p(t)`, with `p(0) = 0`.
    pub fn evaluate(&self, t: f64) -> Complex64 {
        let aj = self.alpha[self.j];
        match self.kind {
            CurveKind::Resonant => self.a * t * (aj * t).exp(),
            // a e^{alpha_j t} (e^{d t} - 1) / d, stable for small d t.
            CurveKind::Nonresonant => self.a * t * (aj * t).exp() * phi1(self.divisor() * t),
        }
    }

    /// `|p(t + s) - e^{alpha_j t} p(s) - p(t) e^{(alpha,k) s}|`.
    pub fn cocycle_deviation(&self, t: f64, s: f64) -> f64 {
        let aj = self.alpha[self.j];
        let ak = self.k.dot(&self.alpha);
        let lhs = self.evaluate(t + s);
        let rhs = (aj * t).exp() * self.evaluate(s) + self.evaluate(t) * (ak * s).exp();
        (lhs - rhs).norm()
    }

    /// `|p'(t) - alpha_j p(t) - a e^{(alpha,k) t}|` with `p'` from a central
    /// difference of step `h`.
    pub fn ode_residual(&self, t: f64, h: f64) -> f64 {
        let dp = (self.evaluate(t + h) - self.evaluate(t - h)) / (2.0 * h);
        let aj = self.alpha[self.j];
        let ak = self.k.dot(&self.alpha);
        (dp - aj * self.evaluate(t) - self.a * (ak * t).exp()).norm()
    }
}

/// The cocycle identity `p(t+s) = e^{alpha_j t} p(s) + p(t) e^{(alpha,k) s}` within `tol`.
pub fn cocycle_check(c: &CoefficientCurve, t: f64, s: f64, tol: f64) -> bool {
    c.cocycle_deviation(t, s) <= tol
}

fn divisor(j: usize, k: &MultiIndex, alpha: &[Complex64]) -> Result<Complex64> {
    if j >= alpha.len() || k.len() != alpha.len() {
        return Err(Error::DimensionMismatch {
            expected: alpha.len(),
            got: if j >= alpha.len() { j + 1 } else { k.len() },
        });
    }
    if k.degree() < 2 {
        return Err(Error::LowDegreeTerm { degree: k.degree() });
    }
    Ok(k.dot(alpha) - alpha[j])
}

fn eps(alpha: &[Complex64], tol: f64) -> f64 {
    tol * alpha.iter().map(|a| a.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn curve(alpha: &[Complex64]) -> CoefficientCurve {
        CoefficientCurve::new(1, [2, 0].into(), c(1.0, 0.0), alpha.to_vec()).unwrap()
    }

    #[test]
    fn resonant_value() {
        let p = curve(&[c(-1.0, 0.0), c(-2.0, 0.0)]);
        assert_eq!(p.kind(), CurveKind::Resonant);
        assert!((p.evaluate(1.0) - c((-2f64).exp(), 0.0)).norm() < 1e-15);
        assert!((p.evaluate(1.0).re - 0.135335).abs() < 1e-6);
        assert_eq!(p.evaluate(0.0), c(0.0, 0.0));
    }

    #[test]
    fn nonresonant_value() {
        let p = curve(&[c(-1.0, 0.0), c(-2.5, 0.0)]);
        assert_eq!(p.kind(), CurveKind::Nonresonant);
        assert_eq!(p.evaluate(0.0), c(0.0, 0.0));
        for t in [0.1f64, 1.0, 3.0] {
            let want = ((-2.0 * t).exp() - (-2.5 * t).exp()) / 0.5;
            assert!((p.evaluate(t) - c(want, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn example2_value_and_zero() {
        let p = curve(&[c(-1.0, -1.0), c(-2.0, -1.0)]);
        assert_eq!(p.kind(), CurveKind::Nonresonant);
        let i = c(0.0, 1.0);
        for t in [0.3f64, 1.0, 2.5] {
            let want = i * (-2.0 * t).exp() * ((-2.0 * i * t).exp() - (-i * t).exp());
            assert!((p.evaluate(t) - want).norm() < 1e-15);
        }
        assert!(p.evaluate(std::f64::consts::TAU).norm() < 1e-12);
    }

    #[test]
    fn cocycle_by_hand() {
        let p = curve(&[c(-1.0, 0.0), c(-2.0, 0.0)]);
        assert!((p.evaluate(3.0).re - 3.0 * (-6f64).exp()).abs() < 1e-15);
        assert!(cocycle_check(&p, 1.0, 2.0, 1e-15));
        assert!(cocycle_check(&p, 0.0, 0.0, 0.0));
    }

    #[test]
    fn kind_is_validated() {
        let alpha = vec![c(-1.0, 0.0), c(-2.0, 0.0)];
        assert!(matches!(
            CoefficientCurve::with_kind(1, [2, 0].into(), c(1.0, 0.0), alpha.clone(), CurveKind::Nonresonant, 1e-9),
            Err(Error::SmallDivisor { .. })
        ));
        let alpha = vec![c(-1.0, 0.0), c(-2.5, 0.0)];
        assert!(matches!(
            CoefficientCurve::with_kind(1, [2, 0].into(), c(1.0, 0.0), alpha, CurveKind::Resonant, 1e-9),
            Err(Error::NonResonantTerm { .. })
        ));
    }

    #[test]
    fn small_divisor_is_stable() {
        let alpha = vec![c(-1.0, 0.0), c(-2.0 - 1e-7, 0.0)];
        let p = curve(&alpha);
        assert_eq!(p.kind(), CurveKind::Nonresonant);
        let resonant = (-2.0f64).exp();
        assert!((p.evaluate(1.0).re - resonant).abs() < 1e-6);
    }

    proptest! {
        #[test]
        fn cocycle_holds(
            re1 in 0.2f64..3.0, im1 in -2.0f64..2.0, re2 in 0.2f64..3.0, im2 in -2.0f64..2.0,
            ar in -1.0f64..1.0, ai in -1.0f64..1.0, t in 0.0f64..3.0, s in 0.0f64..3.0,
        ) {
            let alpha = vec![c(-re1, im1), c(-re2, im2)];
            let p = CoefficientCurve::new(1, [2, 0].into(), c(ar, ai), alpha).unwrap();
            prop_assert!(p.cocycle_deviation(t, s) <= 1e-12);
            prop_assert!(p.ode_residual(t + 0.01, 1e-4) <= 1e-6);
        }
    }
}
