//! Quadratic Taylor coefficients of flow elements by Cauchy quadrature.
//!
//! On the torus `z_i = r e^{i a}`, `z_l = r e^{i b}` of a coordinate
//! 2-plane, the coefficient of `z_i^p z_l^q` in an analytic `F` is the
//! discrete Fourier coefficient `(1/N^2) sum F e^{-i(pa + qb)} / r^{p+q}`,
//! exact up to aliasing from degree `>= N + 2`.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::algebra::{MultiIndex, PolyMap, VectorField};
use crate::error::Result;
use crate::flow::{self, OdeOptions};

pub const PROBE_RADIUS: f64 = 0.05;
pub const PROBE_NODES: usize = 8;
/// Scaled curvature below this counts as a linear element.
pub const LINEARITY_THRESHOLD: f64 = 1e-6;

/// Integration tolerances used by the probe.
pub fn probe_ode() -> OdeOptions {
    OdeOptions {
        rtol: 1e-12,
        atol: 1e-15,
        ..OdeOptions::default()
    }
}

/// Degree-2 part of `e^{-At} phi_t`.
pub fn scaled_quadratic_part(f: &VectorField, t: f64, ode: &OdeOptions) -> Result<PolyMap> {
    let n = f.dimension();
    if f.is_linear() || t == 0.0 {
        return Ok(PolyMap::zero(n, 2));
    }
    let eval = |z: &[Complex64]| -> Result<Vec<Complex64>> {
        let tr = flow::integrate_rescaled_at(f, z, &[0.0, t], ode)?;
        Ok(tr.last().to_vec())
    };
    let r = PROBE_RADIUS;
    let nodes: Vec<Complex64> = (0..PROBE_NODES)
        .map(|m| Complex64::from_polar(1.0, TAU * m as f64 / PROBE_NODES as f64))
        .collect();
    let mut coeffs: BTreeMap<(usize, MultiIndex), Complex64> = BTreeMap::new();

    if n == 1 {
        let mut acc = Complex64::new(0.0, 0.0);
        for u in &nodes {
            let v = eval(&[u * r])?;
            acc += v[0] * (u.conj() * u.conj());
        }
        coeffs.insert((0, MultiIndex::new(vec![2])), acc / (PROBE_NODES as f64 * r * r));
    }
    for i in 0..n {
        for l in i + 1..n {
            let mut acc = vec![[Complex64::new(0.0, 0.0); 3]; n];
            for u in &nodes {
                for v in &nodes {
                    let mut z = vec![Complex64::new(0.0, 0.0); n];
                    z[i] = u * r;
                    z[l] = v * r;
                    let w = eval(&z)?;
                    let (uc, vc) = (u.conj(), v.conj());
                    let weights = [uc * uc, uc * vc, vc * vc];
                    for (j, wj) in w.iter().enumerate() {
                        for (a, wt) in acc[j].iter_mut().zip(&weights) {
                            *a += wj * wt;
                        }
                    }
                }
            }
            let scale = (PROBE_NODES * PROBE_NODES) as f64 * r * r;
            let mut ks = [vec![0u32; n], vec![0u32; n], vec![0u32; n]];
            ks[0][i] = 2;
            ks[1][i] = 1;
            ks[1][l] = 1;
            ks[2][l] = 2;
            for (j, row) in acc.iter().enumerate() {
                for (k, a) in ks.iter().zip(row) {
                    coeffs.insert((j, MultiIndex::new(k.clone())), a / scale);
                }
            }
        }
    }
    PolyMap::from_terms(n, 2, coeffs.into_iter().map(|((j, k), c)| (j, k, c)))
}

/// Degree-2 part of `phi_t` itself.
pub fn quadratic_part(f: &VectorField, t: f64, ode: &OdeOptions) -> Result<PolyMap> {
    let scale: Vec<Complex64> = f.alpha().iter().map(|a| (a * t).exp()).collect();
    scaled_quadratic_part(f, t, ode)?.scale_components(&scale)
}

/// Largest second derivative at `O` of `e^{-At} phi_t`:
/// `2|c|` for `c z_i^2`, `|c|` for `c z_i z_l`.
pub fn scaled_curvature(f: &VectorField, t: f64, ode: &OdeOptions) -> Result<f64> {
    let q = scaled_quadratic_part(f, t, ode)?;
    Ok(q.terms()
        .iter()
        .map(|x| {
            let square = x.k.exponents().iter().any(|&e| e == 2);
            x.coeff.norm() * if square { 2.0 } else { 1.0 }
        })
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn example2_quadratic_coefficient() {
        let f = fixtures::example2(c(1.0, 0.0));
        let i = c(0.0, 1.0);
        for t in [0.5, 1.0, 3.0] {
            let q = scaled_quadratic_part(&f, t, &probe_ode()).unwrap();
            let want = i * ((-i * t).exp() - 1.0);
            assert!((q.coeff(1, &[2, 0].into()) - want).norm() < 1e-9);
            assert!(q.coeff(1, &[1, 1].into()).norm() < 1e-9);
            assert!(q.coeff(0, &[2, 0].into()).norm() < 1e-9);
        }
    }

    #[test]
    fn one_dimensional_field() {
        // z' = -z + z^2: quadratic coefficient of phi_t is e^{-t} - e^{-2t}.
        let higher = PolyMap::from_terms(1, 2, [(0, [2], c(1.0, 0.0))]).unwrap();
        let f = VectorField::new(vec![c(-1.0, 0.0)], higher, 2.0).unwrap();
        let q = quadratic_part(&f, 1.0, &probe_ode()).unwrap();
        let want = (-1f64).exp() - (-2f64).exp();
        assert!((q.coeff(0, &[2].into()).re - want).abs() < 1e-9);
    }

    #[test]
    fn linear_field_has_zero_curvature() {
        let f = VectorField::linear(vec![c(-1.0, 0.0), c(-2.0, 0.0)], 1.0).unwrap();
        assert_eq!(scaled_curvature(&f, 1.0, &probe_ode()).unwrap(), 0.0);
    }
}
