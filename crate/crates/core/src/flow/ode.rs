//! Dormand–Prince 5(4) with Hairer's fourth-order dense output, on
//! complex state vectors. The error norm treats each complex entry as two
//! real unknowns sharing the scale `atol + rtol * max(|y|, |y_new|)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions {
            rtol: 1e-10,
            atol: 1e-12,
            max_steps: 200_000,
        }
    }
}

/// Step diagnostics. `max_error` is the largest scaled local error
/// estimate among accepted steps (always `<= 1`).
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepStats {
    pub accepted: usize,
    pub rejected: usize,
    pub rhs_evaluations: usize,
    pub max_error: f64,
}

type Vector = Vec<Complex64>;

fn combo(y: &[Complex64], h: f64, terms: &[(f64, &[Complex64])]) -> Vector {
    let mut out = y.to_vec();
    for &(a, k) in terms {
        if a == 0.0 {
            continue;
        }
        for (o, ki) in out.iter_mut().zip(k) {
            *o += ki * (h * a);
        }
    }
    out
}

fn scaled_norm(v: &[Complex64], y: &[Complex64], y_new: &[Complex64], o: &OdeOptions) -> f64 {
    let mut sum = 0.0;
    for ((vi, a), b) in v.iter().zip(y).zip(y_new) {
        let sc = o.atol + o.rtol * a.norm().max(b.norm());
        sum += (vi.re / sc).powi(2) + (vi.im / sc).powi(2);
    }
    (sum / (2 * v.len()).max(1) as f64).sqrt()
}

fn initial_step<F>(rhs: &mut F, y0: &[Complex64], f0: &[Complex64], t_end: f64, o: &OdeOptions) -> Result<f64>
where
    F: FnMut(f64, &[Complex64]) -> Result<Vector>,
{
    let d0 = scaled_norm(y0, y0, y0, o);
    let d1 = scaled_norm(f0, y0, y0, o);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    let h0 = h0.min(t_end);
    let y1 = combo(y0, h0, &[(1.0, f0)]);
    let f1 = rhs(h0, &y1)?;
    let diff: Vector = f1.iter().zip(f0).map(|(a, b)| a - b).collect();
    let d2 = scaled_norm(&diff, y0, y0, o) / h0;
    let dm = d1.max(d2);
    let h1 = if dm <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / dm).powf(0.2)
    };
    Ok((100.0 * h0).min(h1).min(t_end))
}

/// Integrate `y' = rhs(t, y)` from `t = 0` to `t_end`, returning the state at
/// each entry of `samples` (sorted, inside `[0, t_end]`) by dense output.
/// `on_step(t, y)` runs after every accepted step and may abort.
pub(crate) fn solve<F, G>(
    mut rhs: F,
    y0: &[Complex64],
    t_end: f64,
    samples: &[f64],
    o: &OdeOptions,
    mut on_step: G,
) -> Result<(Vec<Vector>, StepStats)>
where
    F: FnMut(f64, &[Complex64]) -> Result<Vector>,
    G: FnMut(f64, &[Complex64]) -> Result<()>,
{
    let mut stats = StepStats::default();
    let mut out = Vec::with_capacity(samples.len());
    let mut next = 0;
    while next < samples.len() && samples[next] <= 0.0 {
        out.push(y0.to_vec());
        next += 1;
    }
    if t_end <= 0.0 {
        return Ok((out, stats));
    }

    let mut t = 0.0;
    let mut y = y0.to_vec();
    let mut k1 = rhs(t, &y)?;
    stats.rhs_evaluations += 1;
    let mut h = initial_step(&mut rhs, &y, &k1, t_end, o)?;
    stats.rhs_evaluations += 1;
    let mut last_rejected = false;

    while t < t_end {
        if stats.accepted + stats.rejected >= o.max_steps {
            return Err(Error::TooManySteps(o.max_steps));
        }
        let last = t + h >= t_end;
        if last {
            h = t_end - t;
        }

        let y2 = combo(&y, h, &[(A21, &k1)]);
        let k2 = rhs(t + C2 * h, &y2)?;
        let y3 = combo(&y, h, &[(A31, &k1), (A32, &k2)]);
        let k3 = rhs(t + C3 * h, &y3)?;
        let y4 = combo(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]);
        let k4 = rhs(t + C4 * h, &y4)?;
        let y5 = combo(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]);
        let k5 = rhs(t + C5 * h, &y5)?;
        let y6 = combo(&y, h, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]);
        let k6 = rhs(t + h, &y6)?;
        let y_new = combo(&y, h, &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)]);
        let k7 = rhs(t + h, &y_new)?;
        stats.rhs_evaluations += 6;

        let est = combo(
            &vec![Complex64::new(0.0, 0.0); y.len()],
            h,
            &[(E1, &k1), (E3, &k3), (E4, &k4), (E5, &k5), (E6, &k6), (E7, &k7)],
        );
        let err = scaled_norm(&est, &y, &y_new, o);

        if err.is_finite() && err <= 1.0 {
            stats.accepted += 1;
            stats.max_error = stats.max_error.max(err);
            let t_new = if last { t_end } else { t + h };

            if next < samples.len() && samples[next] <= t_new {
                let ydiff: Vector = y_new.iter().zip(&y).map(|(a, b)| a - b).collect();
                let bspl: Vector = k1.iter().zip(&ydiff).map(|(k, d)| k * h - d).collect();
                let r4: Vector = ydiff
                    .iter()
                    .zip(&k7)
                    .zip(&bspl)
                    .map(|((d, k), b)| d - k * h - b)
                    .collect();
                let r5 = combo(
                    &vec![Complex64::new(0.0, 0.0); y.len()],
                    h,
                    &[(D1, &k1), (D3, &k3), (D4, &k4), (D5, &k5), (D6, &k6), (D7, &k7)],
                );
                while next < samples.len() && samples[next] <= t_new {
                    let s = samples[next];
                    if s >= t_new {
                        out.push(y_new.clone());
                    } else {
                        let th = (s - t) / h;
                        let th1 = 1.0 - th;
                        out.push(
                            (0..y.len())
                                .map(|i| {
                                    y[i] + (ydiff[i] + (bspl[i] + (r4[i] + r5[i] * th1) * th) * th1) * th
                                })
                                .collect(),
                        );
                    }
                    next += 1;
                }
            }

            on_step(t_new, &y_new)?;
            t = t_new;
            y = y_new;
            k1 = k7;

            let mut fac = if err == 0.0 { 10.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 10.0) };
            if last_rejected {
                fac = fac.min(1.0);
            }
            h *= fac;
            last_rejected = false;
        } else {
            stats.rejected += 1;
            let fac = if err.is_finite() { (0.9 * err.powf(-0.2)).clamp(0.2, 1.0) } else { 0.2 };
            h *= fac;
            last_rejected = true;
        }
        if h < 1e-14 * t.abs().max(1.0) && t < t_end {
            return Err(Error::StepSizeUnderflow { time: t });
        }
    }
    Ok((out, stats))
}
