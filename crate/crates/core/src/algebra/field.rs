use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{MultiIndex, PolyMap};
use crate::error::{Error, Result};

/// A generator `f(z) = diag(alpha) z + higher(z)` of a semigroup on a polydisc.
///
/// Coordinates are stored so that `Re alpha_1 >= ... >= Re alpha_n`. If the
/// caller's coordinates are not in that order the field is conjugated by a
/// permutation at construction; [`VectorField::permutation`] records it
/// (`permutation[i]` is the caller's index of internal coordinate `i`).
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    alpha: Vec<Complex64>,
    higher: PolyMap,
    radius: f64,
    permutation: Vec<usize>,
}

impl VectorField {
    pub fn new(alpha: Vec<Complex64>, higher: PolyMap, radius: f64) -> Result<Self> {
        let n = alpha.len();
        if higher.dimension() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: higher.dimension(),
            });
        }
        if let Some(a) = alpha.iter().find(|a| !(a.re.is_finite() && a.im.is_finite())) {
            return Err(Error::NonFinite(format!("eigenvalue {a}")));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidArgument(format!("radius must be positive, got {radius}")));
        }
        if let Some(d) = higher.min_degree() {
            if d < 2 {
                return Err(Error::LowDegreeTerm { degree: d });
            }
        }
        let order = descending_real_order(&alpha);
        let identity = order.iter().enumerate().all(|(i, &o)| i == o);
        let (alpha, higher) = if identity {
            (alpha, higher)
        } else {
            (order.iter().map(|&o| alpha[o]).collect(), higher.permuted(&order))
        };
        Ok(VectorField {
            alpha,
            higher,
            radius,
            permutation: order,
        })
    }

    /// The linear field `z -> diag(alpha) z`.
    pub fn linear(alpha: Vec<Complex64>, radius: f64) -> Result<Self> {
        let n = alpha.len();
        VectorField::new(alpha, PolyMap::zero(n, 1), radius)
    }

    /// Split a full polynomial field into diagonal linear part and higher
    /// terms. Off-diagonal linear or constant terms are rejected.
    pub fn from_polymap(p: &PolyMap, radius: f64) -> Result<Self> {
        for t in p.terms() {
            match t.k.degree() {
                0 => return Err(Error::NonZeroConstantTerm { component: t.component }),
                1 if t.k.get(t.component) != 1 => {
                    return Err(Error::InvalidArgument(
                        "linear part must be diagonal".to_string(),
                    ))
                }
                _ => {}
            }
        }
        VectorField::new(p.linear_diagonal(), p.nonlinear_part(), radius)
    }

    pub fn dimension(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[Complex64] {
        &self.alpha
    }

    pub fn higher(&self) -> &PolyMap {
        &self.higher
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn is_linear(&self) -> bool {
        self.higher.is_empty()
    }

    /// The full field as a polynomial map truncated to `degree`.
    pub fn to_polymap(&self, degree: usize) -> PolyMap {
        let lin = PolyMap::diagonal(&self.alpha, degree.max(1));
        let hi = self.higher.truncate(degree.max(1));
        lin.add(&hi).expect("same dimension")
    }

    pub fn evaluate(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut out = self.higher.evaluate(z)?;
        for ((o, a), zi) in out.iter_mut().zip(&self.alpha).zip(z) {
            *o += a * zi;
        }
        Ok(out)
    }

    /// Right-hand side of the rescaled equation for `w = e^{-At} phi_t`:
    /// `w' = e^{-At} higher(e^{At} w)`.
    pub fn evaluate_rescaled(&self, t: f64, w: &[Complex64]) -> Result<Vec<Complex64>> {
        self.higher.evaluate_rescaled(&self.alpha, t, w)
    }

    /// Map a point from caller coordinates to internal coordinates.
    pub fn to_internal(&self, z: &[Complex64]) -> Vec<Complex64> {
        self.permutation.iter().map(|&o| z[o]).collect()
    }

    /// Map a point from internal coordinates back to caller coordinates.
    pub fn to_caller(&self, z: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); z.len()];
        for (i, &o) in self.permutation.iter().enumerate() {
            out[o] = z[i];
        }
        out
    }

    /// Least total degree of the higher-order part.
    pub fn least_higher_degree(&self) -> Option<usize> {
        self.higher.min_degree()
    }

    /// `(alpha, k) - alpha_j`, the homological eigenvalue of `e_j z^k`.
    pub fn divisor(&self, j: usize, k: &MultiIndex) -> Complex64 {
        k.dot(&self.alpha) - self.alpha[j]
    }
}

/// Indices sorted by descending real part (stable).
pub fn descending_real_order(alpha: &[Complex64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..alpha.len()).collect();
    order.sort_by(|&a, &b| alpha[b].re.total_cmp(&alpha[a].re));
    order
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VectorFieldJson {
    dimension: usize,
    alpha: Vec<[f64; 2]>,
    higher: PolyMap,
    radius: f64,
}

impl Serialize for VectorField {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        VectorFieldJson {
            dimension: self.dimension(),
            alpha: self.alpha.iter().map(|a| [a.re, a.im]).collect(),
            higher: self.higher.clone(),
            radius: self.radius,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for VectorField {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = VectorFieldJson::deserialize(deserializer)?;
        if raw.alpha.len() != raw.dimension {
            return Err(D::Error::custom(format!(
                "alpha has {} entries for dimension {}",
                raw.alpha.len(),
                raw.dimension
            )));
        }
        let alpha = raw.alpha.iter().map(|a| Complex64::new(a[0], a[1])).collect();
        VectorField::new(alpha, raw.higher, raw.radius).map_err(D::Error::custom)
    }
}
