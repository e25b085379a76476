use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of step halvings in the extrapolation tableau.
const LEVELS: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEstimate {
    pub value: Vec<Complex64>,
    /// Max-norm difference between the two most refined extrapolants.
    pub error: f64,
}

/// Recover `f(z) = lim_{t -> 0} (phi_t(z) - z) / t` from a flow.
///
/// Forward differences at `h, h/2, h/4, h/8` are combined in a Richardson
/// tableau; the forward difference has an error expansion in integer
/// powers of `h`, so column `m` eliminates the `h^m` term.
pub fn estimate_generator<F>(mut flow: F, z: &[Complex64], h: f64) -> Result<GeneratorEstimate>
where
    F: FnMut(f64, &[Complex64]) -> Result<Vec<Complex64>>,
{
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidArgument(format!("step must be positive, got {h}")));
    }
    let mut table: Vec<Vec<Vec<Complex64>>> = Vec::with_capacity(LEVELS);
    for level in 0..LEVELS {
        let hl = h / f64::powi(2.0, level as i32);
        let phi = flow(hl, z)?;
        if phi.len() != z.len() {
            return Err(Error::DimensionMismatch {
                expected: z.len(),
                got: phi.len(),
            });
        }
        let mut row = vec![phi.iter().zip(z).map(|(p, x)| (p - x) / hl).collect::<Vec<_>>()];
        for m in 1..=level {
            let w = f64::powi(2.0, m as i32);
            let prev = &table[level - 1][m - 1];
            let cur = &row[m - 1];
            let ext = cur.iter().zip(prev).map(|(a, b)| (a * w - b) / (w - 1.0)).collect();
            row.push(ext);
        }
        table.push(row);
    }
    let best = table[LEVELS - 1][LEVELS - 1].clone();
    let second = &table[LEVELS - 1][LEVELS - 2];
    let error = best
        .iter()
        .zip(second)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    Ok(GeneratorEstimate { value: best, error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::flow::linear_flow;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn linear_flow_gives_linear_part() {
        let alpha = [c(-1.0, 0.3), c(-2.0, -1.0)];
        let z = [c(0.4, 0.1), c(-0.3, 0.2)];
        let est = estimate_generator(|t, z| Ok(linear_flow(&alpha, t, z)), &z, 1e-3).unwrap();
        for ((v, a), x) in est.value.iter().zip(&alpha).zip(&z) {
            assert!((v - a * x).norm() < 1e-8);
        }
        assert!(est.error < 1e-8);
    }

    #[test]
    fn example2_generator() {
        let a = c(1.0, 0.0);
        let z = [c(1.0, 0.0), c(1.0, 0.0)];
        let est = estimate_generator(|t, z| Ok(fixtures::example2_flow(a, t, z)), &z, 1e-3).unwrap();
        assert!((est.value[0] - c(-1.0, -1.0)).norm() < 1e-8);
        assert!((est.value[1] - c(-1.0, -1.0)).norm() < 1e-8);
    }

    #[test]
    fn example1_generator() {
        let (a1, a) = (c(-0.5, 0.2), c(0.3, 0.0));
        let a2 = a1 * 3.0;
        let z = [c(0.6, 0.0), c(0.1, -0.2)];
        let flow = |t: f64, z: &[Complex64]| {
            Ok(vec![
                (a1 * t).exp() * z[0],
                (a2 * t).exp() * (z[1] + a * t * z[0].powu(3)),
            ])
        };
        let est = estimate_generator(flow, &z, 1e-3).unwrap();
        assert!((est.value[0] - a1 * z[0]).norm() < 1e-8);
        assert!((est.value[1] - (a2 * z[1] + a * z[0].powu(3))).norm() < 1e-8);
    }

    #[test]
    fn rejects_bad_step() {
        assert!(estimate_generator(|_, z| Ok(z.to_vec()), &[c(1.0, 0.0)], 0.0).is_err());
    }
}
