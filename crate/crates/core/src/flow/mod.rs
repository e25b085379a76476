//! The semigroup `phi_t` generated by a [`VectorField`], evaluated by
//! adaptive integration, in closed form for triangular resonant fields, and
//! exactly for linear fields.
//!
//! Points are in the field's internal coordinates (descending `Re alpha`).

mod generator;
mod ode;
mod triangular;

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use generator::{estimate_generator, GeneratorEstimate};
pub use ode::{OdeOptions, StepStats};
pub(crate) use ode::solve as solve_raw;
pub use triangular::{triangular_flow, TriangularFlow, TriangularTerm};

use crate::algebra::VectorField;
use crate::error::{Error, Result};

/// A sampled solution of the Cauchy problem `d/dt phi_t = f(phi_t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Trajectory {
    /// Strictly increasing, `>= 0`.
    pub times: Vec<f64>,
    pub points: Vec<Vec<Complex64>>,
    pub stats: StepStats,
}

impl Trajectory {
    pub fn last(&self) -> &[Complex64] {
        self.points.last().expect("trajectory is nonempty")
    }

    /// Columns `t, re(z_1), im(z_1), ...`, one row per sample.
    pub fn to_csv(&self) -> String {
        let n = self.points.first().map_or(0, |p| p.len());
        let mut s = String::from("t");
        for i in 1..=n {
            let _ = write!(s, ",re(z_{i}),im(z_{i})");
        }
        s.push('\n');
        for (t, p) in self.times.iter().zip(&self.points) {
            let _ = write!(s, "{t:e}");
            for z in p {
                let _ = write!(s, ",{:e},{:e}", z.re, z.im);
            }
            s.push('\n');
        }
        s
    }
}

pub(crate) fn check_point(f: &VectorField, z: &[Complex64]) -> Result<()> {
    if z.len() != f.dimension() {
        return Err(Error::DimensionMismatch {
            expected: f.dimension(),
            got: z.len(),
        });
    }
    if z.iter().any(|x| !(x.re.is_finite() && x.im.is_finite())) {
        return Err(Error::NonFinite("initial point".into()));
    }
    if sup_norm(z) > f.radius() {
        return Err(Error::LeftDomain {
            time: 0.0,
            radius: f.radius(),
        });
    }
    Ok(())
}

fn check_times(times: &[f64]) -> Result<()> {
    match times.first() {
        Some(&t) if t >= 0.0 => {}
        _ => return Err(Error::InvalidArgument("sample times must be nonempty and >= 0".into())),
    }
    if times.iter().any(|t| !t.is_finite()) || times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(
            "sample times must be finite and strictly increasing".into(),
        ));
    }
    Ok(())
}

pub(crate) fn sup_norm(z: &[Complex64]) -> f64 {
    z.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// `phi_t(z0)` at `t = 0` and `t = t_end`.
pub fn integrate(f: &VectorField, z0: &[Complex64], t_end: f64, o: &OdeOptions) -> Result<Trajectory> {
    if !(t_end.is_finite() && t_end >= 0.0) {
        return Err(Error::InvalidArgument(format!("t_end must be >= 0, got {t_end}")));
    }
    let times = if t_end > 0.0 { vec![0.0, t_end] } else { vec![0.0] };
    integrate_at(f, z0, &times, o)
}

/// `phi_t(z0)` at each of `times` (strictly increasing, `>= 0`), from one
/// adaptive run with dense output. Fails if the solution leaves the
/// polydisc of radius `f.radius()`.
pub fn integrate_at(f: &VectorField, z0: &[Complex64], times: &[f64], o: &OdeOptions) -> Result<Trajectory> {
    check_point(f, z0)?;
    check_times(times)?;
    let radius = f.radius();
    let t_end = *times.last().expect("nonempty");
    let (points, stats) = ode::solve(
        |_, y| f.evaluate(y),
        z0,
        t_end,
        times,
        o,
        |t, y| {
            if sup_norm(y) > radius {
                Err(Error::LeftDomain { time: t, radius })
            } else {
                Ok(())
            }
        },
    )?;
    Ok(Trajectory {
        times: times.to_vec(),
        points,
        stats,
    })
}

/// `w_t = e^{-At} phi_t(z0)` at each of `times`, integrated directly from
/// `w' = e^{-At} higher(e^{At} w)`. Far more accurate than rescaling a
/// solution of the original equation, whose absolute error is amplified by
/// `e^{-Re alpha t}`. The domain check is applied to `phi_t = e^{At} w_t`.
pub fn integrate_rescaled_at(
    f: &VectorField,
    z0: &[Complex64],
    times: &[f64],
    o: &OdeOptions,
) -> Result<Trajectory> {
    check_point(f, z0)?;
    check_times(times)?;
    let radius = f.radius();
    let alpha = f.alpha();
    let t_end = *times.last().expect("nonempty");
    let (points, stats) = ode::solve(
        |t, w| f.evaluate_rescaled(t, w),
        z0,
        t_end,
        times,
        o,
        |t, w| {
            let phi = linear_flow(alpha, t, w);
            if sup_norm(&phi) > radius {
                Err(Error::LeftDomain { time: t, radius })
            } else {
                Ok(())
            }
        },
    )?;
    Ok(Trajectory {
        times: times.to_vec(),
        points,
        stats,
    })
}

/// `e^{At} z` for `A = diag(alpha)`; `t` may be negative.
pub fn linear_flow(alpha: &[Complex64], t: f64, z: &[Complex64]) -> Vec<Complex64> {
    alpha.iter().zip(z).map(|(a, x)| (a * t).exp() * x).collect()
}

/// `phi_t(z)` for `t >= 0`: exact for linear fields, integrated otherwise.
pub fn evaluate_flow(f: &VectorField, t: f64, z: &[Complex64], o: &OdeOptions) -> Result<Vec<Complex64>> {
    if f.is_linear() {
        check_point(f, z)?;
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::InvalidArgument(format!("t must be >= 0, got {t}")));
        }
        return Ok(linear_flow(f.alpha(), t, z));
    }
    Ok(integrate(f, z, t, o)?.last().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn linear_matches_closed_form() {
        let f = VectorField::linear(vec![c(-1.0, 0.5), c(-2.0, -1.0)], 2.0).unwrap();
        let z = [c(0.3, 0.1), c(-0.2, 0.4)];
        let tr = integrate(&f, &z, 5.0, &OdeOptions::default()).unwrap();
        let exact = linear_flow(f.alpha(), 5.0, &z);
        for (a, b) in tr.last().iter().zip(&exact) {
            assert!((a - b).norm() < 1e-9);
        }
        assert_eq!(tr.points[0], z.to_vec());
    }

    #[test]
    fn example2_matches_explicit_flow() {
        let a = c(1.0, 0.0);
        let f = fixtures::example2(a);
        let z = [c(0.5, 0.0), c(0.3, 0.0)];
        let tr = integrate(&f, &z, 1.0, &OdeOptions::default()).unwrap();
        let exact = fixtures::example2_flow(a, 1.0, &z);
        for (x, y) in tr.last().iter().zip(&exact) {
            assert!((x - y).norm() < 1e-8);
        }
    }

    #[test]
    fn nonresonant_field_is_attracted() {
        let f = fixtures::nonres_2_5();
        let z = [c(0.1, 0.0), c(0.1, 0.0)];
        let tr = integrate(&f, &z, 10.0, &OdeOptions::default()).unwrap();
        assert!(sup_norm(tr.last()) < 1e-4);
        // h^{-1}(e^{At} h(z)) with h = (z1, z2 - 2 z1^2)
        let t = 10.0;
        let h = [z[0], z[1] - 2.0 * z[0] * z[0]];
        let y = linear_flow(f.alpha(), t, &h);
        let exact = [y[0], y[1] + 2.0 * y[0] * y[0]];
        for (x, e) in tr.last().iter().zip(&exact) {
            assert!((x - e).norm() < 1e-10);
        }
    }

    #[test]
    fn rescaled_matches_scaled_flow() {
        let f = fixtures::example2(c(1.0, 0.0));
        let z = [c(1.0, 0.0), c(0.0, 0.0)];
        let times: Vec<f64> = (0..=12).map(|i| i as f64 * 0.5).collect();
        let tr = integrate_rescaled_at(&f, &z, &times, &OdeOptions::default()).unwrap();
        for (t, w) in times.iter().zip(&tr.points) {
            let want = c(0.0, 1.0) * ((c(0.0, -1.0) * *t).exp() - 1.0);
            assert!((w[1] - want).norm() < 1e-8, "t = {t}");
            assert_eq!(w[0], z[0]);
        }
    }

    #[test]
    fn leaving_the_polydisc_is_an_error() {
        // z' = -z + z^2 escapes from z = 1.5.
        let higher = crate::PolyMap::from_terms(1, 2, [(0, [2], c(1.0, 0.0))]).unwrap();
        let f = VectorField::new(vec![c(-1.0, 0.0)], higher, 2.0).unwrap();
        let err = integrate(&f, &[c(1.5, 0.0)], 5.0, &OdeOptions::default()).unwrap_err();
        assert!(matches!(err, Error::LeftDomain { radius, .. } if radius == 2.0));
        assert!(err.is_numerical());
        assert!(matches!(
            integrate(&f, &[c(3.0, 0.0)], 1.0, &OdeOptions::default()),
            Err(Error::LeftDomain { time, .. }) if time == 0.0
        ));
    }

    #[test]
    fn sample_times_are_validated() {
        let f = fixtures::nonres_2_5();
        let z = [c(0.1, 0.0), c(0.1, 0.0)];
        let o = OdeOptions::default();
        assert!(integrate_at(&f, &z, &[-0.5, 1.0], &o).is_err());
        assert!(integrate_at(&f, &z, &[], &o).is_err());
        assert!(integrate_at(&f, &z, &[0.5, 1.0], &o).is_ok());
        assert!(integrate_at(&f, &z, &[0.0, 1.0, 1.0], &o).is_err());
        assert!(integrate(&f, &z, -1.0, &o).is_err());
    }

    #[test]
    fn csv_layout() {
        let f = VectorField::linear(vec![c(-1.0, 0.0)], 1.0).unwrap();
        let tr = integrate(&f, &[c(0.5, 0.0)], 0.0, &OdeOptions::default()).unwrap();
        assert_eq!(tr.to_csv(), "t,re(z_1),im(z_1)\n0e0,5e-1,0e0\n");
    }
}
