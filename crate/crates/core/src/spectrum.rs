//! Arithmetic of the diagonal linear part: distortion index, resonances,
//! pure real resonances and resonances of discrete linear maps.
//!
//! Multi-indices are enumerated up to the order bound forced by the real
//! parts. If `alpha_j = (alpha, k)` then `Re alpha_j = (Re alpha, k)`, so
//! `|k| min|Re alpha| <= max|Re alpha|` and `|k| <= floor(lambda)`.
//!
//! Component indices in the Rust API are 0-based; JSON output is 1-based.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{descending_real_order, MultiIndex};
use crate::error::{Error, Result};

/// Default resonance tolerance, relative to `max |alpha_j|`.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Non-resonant divisors smaller than this are reported as warnings.
pub const NEAR_RESONANCE: f64 = 1e-3;

/// A relation `alpha_target = (alpha, k)` with `|k| >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Resonance {
    pub target: usize,
    pub k: MultiIndex,
}

impl Resonance {
    pub fn order(&self) -> usize {
        self.k.degree()
    }
}

/// A divisor `(alpha, k) - alpha_j` that is small but above the tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct NearResonance {
    pub target: usize,
    pub k: MultiIndex,
    pub divisor: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub is_dilation: bool,
    pub lambda_index: f64,
    pub resonances: Vec<Resonance>,
    /// `M_j`: the largest resonance order targeting `j`, or 0.
    pub m: Vec<usize>,
    pub m_alpha: usize,
    pub pure_real: Vec<Resonance>,
    pub warnings: Vec<NearResonance>,
    /// Coordinate order with descending real parts; `order[i]` is the
    /// input index placed at position `i`.
    pub order: Vec<usize>,
}

/// `max |Re alpha_j| / min |Re alpha_j|`.
pub fn lambda_index(alpha: &[Complex64]) -> Result<f64> {
    if alpha.is_empty() {
        return Err(Error::InvalidArgument("empty spectrum".into()));
    }
    if let Some((i, a)) = alpha.iter().enumerate().find(|(_, a)| a.re == 0.0) {
        return Err(Error::NonDilation { index: i, re: a.re });
    }
    let max = alpha.iter().map(|a| a.re.abs()).fold(0.0, f64::max);
    let min = alpha.iter().map(|a| a.re.abs()).fold(f64::INFINITY, f64::min);
    Ok(max / min)
}

fn require_dilation(alpha: &[Complex64]) -> Result<()> {
    if alpha.is_empty() {
        return Err(Error::InvalidArgument("empty spectrum".into()));
    }
    match alpha.iter().enumerate().find(|(_, a)| !(a.re < 0.0)) {
        Some((i, a)) => Err(Error::NonDilation { index: i, re: a.re }),
        None => Ok(()),
    }
}

fn scale(alpha: &[Complex64]) -> f64 {
    alpha.iter().map(|a| a.norm()).fold(0.0, f64::max)
}

fn order_bound(ratio: f64) -> usize {
    (ratio + 1e-9).floor() as usize
}

/// Calls `visit(j, k, (alpha,k) - alpha_j)` for every `j` and every `k` with
/// `2 <= |k| <= max_order`, in `(j, graded lex k)` order.
fn for_each_candidate(
    alpha: &[Complex64],
    max_order: usize,
    mut visit: impl FnMut(usize, &MultiIndex, Complex64),
) {
    let n = alpha.len();
    let by_degree: Vec<Vec<MultiIndex>> =
        (2..=max_order).map(|d| MultiIndex::all_of_degree(n, d)).collect();
    for j in 0..n {
        for ks in &by_degree {
            for k in ks {
                visit(j, k, k.dot(alpha) - alpha[j]);
            }
        }
    }
}

/// All resonances `|(alpha,k) - alpha_j| <= tol * max|alpha|`, sorted by
/// `(j, graded lex k)`.
pub fn resonances(alpha: &[Complex64], tol: f64) -> Result<Vec<Resonance>> {
    require_dilation(alpha)?;
    let bound = order_bound(lambda_index(alpha)?);
    let eps = tol * scale(alpha);
    let mut out = Vec::new();
    for_each_candidate(alpha, bound, |j, k, d| {
        if d.norm() <= eps {
            out.push(Resonance {
                target: j,
                k: k.clone(),
            });
        }
    });
    Ok(out)
}

/// Relations where the real parts match but the complex values do not.
///
/// Both comparisons use the same relative tolerance as [`resonances`], so
/// the two lists are always disjoint.
pub fn pure_real_resonances(alpha: &[Complex64], tol: f64) -> Result<Vec<Resonance>> {
    require_dilation(alpha)?;
    let bound = order_bound(lambda_index(alpha)?);
    let eps = tol * scale(alpha);
    let mut out = Vec::new();
    for_each_candidate(alpha, bound, |j, k, d| {
        if d.re.abs() <= eps && d.norm() > eps {
            out.push(Resonance {
                target: j,
                k: k.clone(),
            });
        }
    });
    Ok(out)
}

/// `(M_1, ..., M_n)` and `M(alpha) = max_j M_j`.
pub fn m_values(alpha: &[Complex64], tol: f64) -> Result<(Vec<usize>, usize)> {
    let res = resonances(alpha, tol)?;
    Ok(m_from_resonances(alpha.len(), &res))
}

fn m_from_resonances(n: usize, res: &[Resonance]) -> (Vec<usize>, usize) {
    let mut m = vec![0; n];
    for r in res {
        m[r.target] = m[r.target].max(r.order());
    }
    let m_alpha = m.iter().copied().max().unwrap_or(0);
    (m, m_alpha)
}

/// Near-resonances: `tol * max|alpha| < |(alpha,k) - alpha_j| < NEAR_RESONANCE`.
pub fn near_resonances(alpha: &[Complex64], tol: f64) -> Result<Vec<NearResonance>> {
    require_dilation(alpha)?;
    let max = alpha.iter().map(|a| a.re.abs()).fold(0.0, f64::max);
    let min = alpha.iter().map(|a| a.re.abs()).fold(f64::INFINITY, f64::min);
    let bound = order_bound((max + NEAR_RESONANCE) / min);
    let eps = tol * scale(alpha);
    let mut out = Vec::new();
    for_each_candidate(alpha, bound, |j, k, d| {
        let m = d.norm();
        if m > eps && m < NEAR_RESONANCE {
            out.push(NearResonance {
                target: j,
                k: k.clone(),
                divisor: m,
            });
        }
    });
    Ok(out)
}

/// Resonances `beta^k = beta_j` of the linear map `diag(beta)` with
/// `0 < |beta_j| < 1`, compared relative to `|beta_j|`.
pub fn discrete_resonances(beta: &[Complex64], tol: f64) -> Result<Vec<Resonance>> {
    if beta.is_empty() {
        return Err(Error::InvalidArgument("empty spectrum".into()));
    }
    for (i, b) in beta.iter().enumerate() {
        let m = b.norm();
        if !(m > 0.0 && m < 1.0) {
            return Err(Error::NotContracting { index: i, modulus: m });
        }
    }
    let max = beta.iter().map(|b| b.norm()).fold(0.0, f64::max);
    let min = beta.iter().map(|b| b.norm()).fold(f64::INFINITY, f64::min);
    let bound = (min.ln() / max.ln() - 1e-9).ceil().max(2.0) as usize;
    let n = beta.len();
    let mut out = Vec::new();
    for j in 0..n {
        for d in 2..=bound {
            for k in MultiIndex::all_of_degree(n, d) {
                let bk = k.monomial(beta);
                if (bk - beta[j]).norm() <= tol * beta[j].norm() {
                    out.push(Resonance { target: j, k });
                }
            }
        }
    }
    Ok(out)
}

/// Full report for a dilation spectrum.
pub fn analyze(alpha: &[Complex64], tol: f64) -> Result<SpectrumReport> {
    require_dilation(alpha)?;
    let lambda = lambda_index(alpha)?;
    let res = resonances(alpha, tol)?;
    let (m, m_alpha) = m_from_resonances(alpha.len(), &res);
    Ok(SpectrumReport {
        is_dilation: true,
        lambda_index: lambda,
        resonances: res,
        m,
        m_alpha,
        pure_real: pure_real_resonances(alpha, tol)?,
        warnings: near_resonances(alpha, tol)?,
        order: descending_real_order(alpha),
    })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ResonanceJson {
    j: usize,
    k: Vec<u32>,
}

impl Serialize for Resonance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ResonanceJson {
            j: self.target + 1,
            k: self.k.exponents().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Resonance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ResonanceJson::deserialize(d)?;
        if raw.j == 0 {
            return Err(D::Error::custom("components are numbered from 1"));
        }
        Ok(Resonance {
            target: raw.j - 1,
            k: MultiIndex::new(raw.k),
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NearResonanceJson {
    j: usize,
    k: Vec<u32>,
    divisor: f64,
}

impl Serialize for NearResonance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        NearResonanceJson {
            j: self.target + 1,
            k: self.k.exponents().to_vec(),
            divisor: self.divisor,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NearResonance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = NearResonanceJson::deserialize(d)?;
        if raw.j == 0 {
            return Err(D::Error::custom("components are numbered from 1"));
        }
        Ok(NearResonance {
            target: raw.j - 1,
            k: MultiIndex::new(raw.k),
            divisor: raw.divisor,
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpectrumReportJson {
    is_dilation: bool,
    lambda_index: f64,
    resonances: Vec<Resonance>,
    #[serde(rename = "M")]
    m: Vec<usize>,
    #[serde(rename = "M_alpha")]
    m_alpha: usize,
    pure_real: Vec<Resonance>,
    warnings: Vec<NearResonance>,
}

impl Serialize for SpectrumReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SpectrumReportJson {
            is_dilation: self.is_dilation,
            lambda_index: self.lambda_index,
            resonances: self.resonances.clone(),
            m: self.m.clone(),
            m_alpha: self.m_alpha,
            pure_real: self.pure_real.clone(),
            warnings: self.warnings.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SpectrumReport {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SpectrumReportJson::deserialize(d)?;
        Ok(SpectrumReport {
            is_dilation: raw.is_dilation,
            lambda_index: raw.lambda_index,
            resonances: raw.resonances,
            m: raw.m,
            m_alpha: raw.m_alpha,
            pure_real: raw.pure_real,
            warnings: raw.warnings,
            order: Vec::new(),
        })
    }
}
