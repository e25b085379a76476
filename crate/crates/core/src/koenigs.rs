//! The Koenigs limit `h(z) = lim_{t -> oo} e^{-At} phi_t(z)`.
//!
//! Samples of `e^{-At} Q(phi_t(z))` are produced by one integration with
//! dense output. The rescaled orbit `w = e^{-At} phi_t` solves
//! `w' = e^{-At} higher(e^{At} w)`; for a precomposition `Q` the sample
//! `u = e^{-At} Q(phi_t)` solves `u' = e^{-At} (dQ.f - AQ)(phi_t)` and is
//! integrated alongside `w`, so an exact linearizer gives an exactly
//! constant `u` however large `w` grows.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{jacobian_apply_pruned, PolyMap, VectorField};
use crate::error::{Error, Result};
use crate::flow::{self, sup_norm, OdeOptions};
use crate::spectrum;

/// Successive differences checked for convergence.
pub const CONFIRM_WINDOW: usize = 5;
/// Samples examined for oscillation and divergence.
pub const DETECT_WINDOW: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KoenigsOptions {
    pub t_max: f64,
    pub dt: f64,
    pub tol: f64,
    pub ode: OdeOptions,
}

impl Default for KoenigsOptions {
    fn default() -> Self {
        KoenigsOptions {
            t_max: 40.0,
            dt: 0.25,
            tol: 1e-9,
            ode: OdeOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Converged,
    Oscillating,
    Diverged,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KoenigsResult {
    pub verdict: Verdict,
    /// The last sample, when converged.
    pub limit: Option<Vec<Complex64>>,
    pub times: Vec<f64>,
    /// `e^{-A t_i} Q(phi_{t_i}(z))`.
    pub samples: Vec<Vec<Complex64>>,
    /// `|samples[i+1] - samples[i]|` (max norm).
    pub diffs: Vec<f64>,
    /// Half the largest distance between two samples of the second half.
    pub oscillation_amplitude: Option<f64>,
    /// `|phi_{t_i}(z)|` (max norm).
    pub orbit_norms: Vec<f64>,
}

impl KoenigsResult {
    /// Columns `t, re(h_1), im(h_1), ...`.
    pub fn to_csv(&self) -> String {
        let n = self.samples.first().map_or(0, |p| p.len());
        let mut s = String::from("t");
        for i in 1..=n {
            let _ = write!(s, ",re(h_{i}),im(h_{i})");
        }
        s.push('\n');
        for (t, p) in self.times.iter().zip(&self.samples) {
            let _ = write!(s, "{t:e}");
            for z in p {
                let _ = write!(s, ",{:e},{:e}", z.re, z.im);
            }
            s.push('\n');
        }
        s
    }
}

fn validate(o: &KoenigsOptions) -> Result<Vec<f64>> {
    if !(o.dt.is_finite() && o.dt > 0.0) {
        return Err(Error::InvalidArgument(format!("dt must be positive, got {}", o.dt)));
    }
    if !(o.t_max.is_finite() && o.t_max > 0.0) {
        return Err(Error::InvalidArgument(format!("t_max must be positive, got {}", o.t_max)));
    }
    if !(o.tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tol must be positive, got {}", o.tol)));
    }
    let count = (o.t_max / o.dt + 1e-9).floor() as usize;
    Ok((0..=count).map(|i| i as f64 * o.dt).collect())
}

/// `lim e^{-At} phi_t(z)` with convergence diagnostics.
pub fn limit(f: &VectorField, z: &[Complex64], o: &KoenigsOptions) -> Result<KoenigsResult> {
    let times = validate(o)?;
    let tr = flow::integrate_rescaled_at(f, z, &times, &o.ode)?;
    let orbit_norms = orbit_norms(f, &times, &tr.points);
    Ok(classify(times, tr.points, orbit_norms, o.tol))
}

/// `lim e^{-At} Q(phi_t(z))` for a normalized polynomial `Q`.
pub fn limit_with_precomposition(
    f: &VectorField,
    q: &PolyMap,
    z: &[Complex64],
    o: &KoenigsOptions,
) -> Result<KoenigsResult> {
    if q.dimension() != f.dimension() {
        return Err(Error::DimensionMismatch {
            expected: f.dimension(),
            got: q.dimension(),
        });
    }
    if !q.is_normalized(0.0) {
        return Err(Error::NotNormalized);
    }
    let times = validate(o)?;
    let n = f.dimension();
    let alpha = f.alpha().to_vec();
    let degree = q.degree().unwrap_or(1) + f.higher().degree().unwrap_or(1);
    let dq_f = jacobian_apply_pruned(q, &f.to_polymap(degree), degree, 0.0)?;
    let residual = dq_f.sub_exact(&q.scale_components(&alpha)?)?;

    // State (w, u) in C^{2n}; the field is the lifted one so the domain check sees w.
    let mut y0 = z.to_vec();
    y0.extend(q.evaluate(z)?);
    flow::check_point(f, z)?;
    let radius = f.radius();
    let (points, _) = flow::solve_raw(
        |t, y| {
            let (w, _) = y.split_at(n);
            let mut dy = f.evaluate_rescaled(t, w)?;
            dy.extend(residual.evaluate_rescaled(&alpha, t, w)?);
            Ok(dy)
        },
        &y0,
        *times.last().expect("nonempty"),
        &times,
        &o.ode,
        |t, y| {
            let phi = flow::linear_flow(&alpha, t, &y[..n]);
            if sup_norm(&phi) > radius {
                Err(Error::LeftDomain { time: t, radius })
            } else {
                Ok(())
            }
        },
    )?;
    let ws: Vec<Vec<Complex64>> = points.iter().map(|y| y[..n].to_vec()).collect();
    let us: Vec<Vec<Complex64>> = points.iter().map(|y| y[n..].to_vec()).collect();
    let orbit_norms = orbit_norms(f, &times, &ws);
    Ok(classify(times, us, orbit_norms, o.tol))
}

fn orbit_norms(f: &VectorField, times: &[f64], ws: &[Vec<Complex64>]) -> Vec<f64> {
    times
        .iter()
        .zip(ws)
        .map(|(&t, w)| sup_norm(&flow::linear_flow(f.alpha(), t, w)))
        .collect()
}

fn distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn euclid(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

/// Verdicts, checked in order:
/// * diverged: the sample norm grows at least tenfold across the final
///   `DETECT_WINDOW` samples;
/// * converged: the final `CONFIRM_WINDOW` differences are below `tol` and
///   non-increasing, ignoring fluctuations below `tol / 10`;
/// * oscillating: the final `DETECT_WINDOW` differences stay above
///   `10 tol` and below twice the largest sample norm, the samples stay
///   bounded by twice their earlier maximum, and the orbit contracts;
/// * otherwise inconclusive.
fn classify(times: Vec<f64>, samples: Vec<Vec<Complex64>>, orbit_norms: Vec<f64>, tol: f64) -> KoenigsResult {
    let diffs: Vec<f64> = samples.windows(2).map(|w| distance(&w[0], &w[1])).collect();
    let len = samples.len();
    let norms: Vec<f64> = samples.iter().map(|s| sup_norm(s)).collect();

    let amplitude = {
        let tail = &samples[len / 2..];
        let mut best: f64 = 0.0;
        for (i, a) in tail.iter().enumerate() {
            for b in &tail[i + 1..] {
                best = best.max(euclid(a, b));
            }
        }
        best / 2.0
    };

    let verdict = if len <= DETECT_WINDOW {
        Verdict::Inconclusive
    } else {
        let first = len - 1 - DETECT_WINDOW;
        let window_diffs = &diffs[diffs.len() - DETECT_WINDOW..];
        let confirm = &diffs[diffs.len() - CONFIRM_WINDOW..];
        let window_max = norms[first..].iter().copied().fold(0.0, f64::max);
        let earlier_max = norms[..first].iter().copied().fold(0.0, f64::max);

        if norms[first] > 0.0 && norms[len - 1] >= 10.0 * norms[first] {
            Verdict::Diverged
        } else if confirm.iter().all(|&d| d < tol)
            && confirm.windows(2).all(|w| w[1] <= w[0].max(tol / 10.0))
        {
            Verdict::Converged
        } else if window_diffs.iter().all(|&d| d > 10.0 * tol && d <= 2.0 * window_max)
            && window_max <= 2.0 * earlier_max
            && orbit_norms[len - 1] < orbit_norms[first]
        {
            Verdict::Oscillating
        } else {
            Verdict::Inconclusive
        }
    };

    KoenigsResult {
        verdict,
        limit: (verdict == Verdict::Converged).then(|| samples[len - 1].clone()),
        oscillation_amplitude: (verdict == Verdict::Oscillating).then_some(amplitude),
        times,
        samples,
        diffs,
        orbit_norms,
    }
}

/// Outcome of the sufficient test `m > lambda(A)` for normal linearizability.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Precheck {
    /// `true` means normally linearizable; `false` means the test is silent.
    pub holds: bool,
    /// Least degree of the higher-order part, `None` for linear fields.
    pub m: Option<usize>,
    pub lambda_index: f64,
    pub explanation: String,
}

pub fn precheck(f: &VectorField) -> Result<Precheck> {
    let lambda = spectrum::lambda_index(f.alpha())?;
    let m = f.least_higher_degree();
    let (holds, explanation) = match m {
        None => (true, "no higher-order terms: the semigroup is linear".to_string()),
        Some(m) if m as f64 > lambda => (
            true,
            format!("least degree {m} exceeds the distortion index {lambda}"),
        ),
        Some(m) => (
            false,
            format!("least degree {m} does not exceed the distortion index {lambda}; criterion silent"),
        ),
    };
    Ok(Precheck {
        holds,
        m,
        lambda_index: lambda,
        explanation,
    })
}

/// `|e^{-At} g(phi_t(z))|` (max norm) at each of `times`, where `g` is the
/// higher-order part of `f`.
pub fn decay_profile(f: &VectorField, z: &[Complex64], times: &[f64], o: &OdeOptions) -> Result<Vec<f64>> {
    let tr = flow::integrate_rescaled_at(f, z, times, o)?;
    times
        .iter()
        .zip(&tr.points)
        .map(|(&t, w)| Ok(sup_norm(&f.higher().evaluate_rescaled(f.alpha(), t, w)?)))
        .collect()
}
