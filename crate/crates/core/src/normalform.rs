//! Poincaré–Dulac normal forms by degree-wise conjugation.
//!
//! At degree `m` the homological operator `h_m -> dh_m . Az - A h_m` acts
//! diagonally on the monomial `e_j z^k` with eigenvalue `(alpha,k) - alpha_j`.
//! A non-resonant coefficient `c` of the current field is removed by the
//! conjugator term `-c / ((alpha,k) - alpha_j) e_j z^k`; resonant
//! coefficients stay in the normal field. The conjugator's own resonant
//! coefficients at each degree are zero, which fixes `h` in resonant cases.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    compose, compose_pruned, jacobian_apply, jacobian_apply_pruned, PolyMap, VectorField,
};
use crate::error::{Error, Result, TermRef};
use crate::spectrum::{self, Resonance, NEAR_RESONANCE};

pub const DEFAULT_DEGREE: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalFormOptions {
    /// Truncation degree `N >= 2`.
    pub degree: usize,
    /// Resonance tolerance, relative to `max |alpha_j|`.
    pub tol: f64,
    /// Non-resonant divisors below this are refused (or kept, see `force_keep`).
    pub near_resonance: f64,
    /// Keep near-resonant terms in the normal field instead of failing.
    pub force_keep: bool,
}

impl Default for NormalFormOptions {
    fn default() -> Self {
        NormalFormOptions {
            degree: DEFAULT_DEGREE,
            tol: spectrum::DEFAULT_TOL,
            near_resonance: NEAR_RESONANCE,
            force_keep: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormalFormResult {
    /// Conjugator with `h(O) = O`, `dh_O = id`, and `dh_z f(z) = fhat(h(z))`.
    pub h: PolyMap,
    pub h_inverse: PolyMap,
    pub normal_field: VectorField,
    pub removed_terms: usize,
    /// Smallest `|(alpha,k) - alpha_j|` over removed terms (`None` if none).
    pub small_divisor_min: Option<f64>,
    /// Near-resonant terms moved into the normal field by `force_keep`.
    pub forced: Vec<Resonance>,
}

/// Compute the normal form of `f` up to degree `opts.degree`.
pub fn solve(f: &VectorField, opts: &NormalFormOptions) -> Result<NormalFormResult> {
    let n_deg = opts.degree;
    if n_deg < 2 {
        return Err(Error::InvalidArgument(format!(
            "normal form degree must be at least 2, got {n_deg}"
        )));
    }
    let alpha = f.alpha().to_vec();
    for (i, a) in alpha.iter().enumerate() {
        if !(a.re < 0.0) {
            return Err(Error::NonDilation { index: i, re: a.re });
        }
    }
    let n = f.dimension();
    let eps = opts.tol * alpha.iter().map(|a| a.norm()).fold(0.0, f64::max);

    let mut g = f.to_polymap(n_deg);
    let mut h = PolyMap::identity(n, n_deg);
    let mut removed = 0;
    let mut smallest: Option<f64> = None;
    let mut forced = Vec::new();

    for m in 2..=n_deg {
        let gm = g.homogeneous_part(m);
        let mut step = Vec::new();
        for t in gm.terms() {
            let d = t.k.dot(&alpha) - alpha[t.component];
            let dn = d.norm();
            if dn <= eps {
                continue;
            }
            if dn < opts.near_resonance {
                if opts.force_keep {
                    forced.push(Resonance {
                        target: t.component,
                        k: t.k.clone(),
                    });
                    continue;
                }
                return Err(Error::SmallDivisor {
                    at: TermRef {
                        component: t.component,
                        k: t.k,
                    },
                    divisor: dn,
                });
            }
            step.push((t.component, t.k, -t.coeff / d));
            removed += 1;
            smallest = Some(smallest.map_or(dn, |s: f64| s.min(dn)));
        }
        if step.is_empty() {
            continue;
        }
        let phi = PolyMap::identity(n, n_deg).add(&PolyMap::from_terms(n, n_deg, step)?)?;
        let phi_inv = formal_inverse(&phi, n_deg)?;
        // New field in y = phi(z): (dphi . g) o phi^{-1}.
        g = compose(&jacobian_apply(&phi, &g, n_deg)?, &phi_inv, n_deg)?;
        h = compose(&phi, &h, n_deg)?;
    }

    let normal_field = VectorField::new(alpha, g.nonlinear_part(), f.radius())?;
    let h_inverse = formal_inverse(&h, n_deg)?;
    Ok(NormalFormResult {
        h,
        h_inverse,
        normal_field,
        removed_terms: removed,
        small_divisor_min: smallest,
        forced,
    })
}

/// Formal inverse of a normalized map (`h(O) = O`, `dh_O = id`) to degree
/// `degree`, by the recursion `g <- id - H o g` where `h = id + H`. Each
/// pass fixes one more degree of `h o g = id`.
pub fn formal_inverse(h: &PolyMap, degree: usize) -> Result<PolyMap> {
    if !h.is_normalized(0.0) {
        return Err(Error::NotNormalized);
    }
    let n = h.dimension();
    let id = PolyMap::identity(n, degree);
    let hh = h.nonlinear_part().truncate(degree);
    let mut g = id.clone();
    for _ in 1..degree {
        g = id.sub(&compose(&hh, &g, degree)?)?;
    }
    Ok(g)
}

/// `dh_z f(z) - diag(a_target) h(z)` truncated to `degree`, without pruning.
/// Zero iff `h` formally linearizes `f` to that degree.
pub fn schroder_residual(
    h: &PolyMap,
    f: &VectorField,
    a_target: &[Complex64],
    degree: usize,
) -> Result<PolyMap> {
    if h.dimension() != f.dimension() || a_target.len() != f.dimension() {
        return Err(Error::DimensionMismatch {
            expected: f.dimension(),
            got: if h.dimension() != f.dimension() { h.dimension() } else { a_target.len() },
        });
    }
    if !h.is_normalized(0.0) {
        return Err(Error::NotNormalized);
    }
    let lhs = jacobian_apply_pruned(h, &f.to_polymap(degree), degree, 0.0)?;
    let rhs = h.truncate(degree).scale_components(a_target)?;
    lhs.sub_exact(&rhs)
}

/// Largest coefficient of `dh_z f(z) - fhat(h(z))` up to `degree`.
pub fn conjugation_residual(
    h: &PolyMap,
    f: &VectorField,
    fhat: &VectorField,
    degree: usize,
) -> Result<f64> {
    let lhs = jacobian_apply_pruned(h, &f.to_polymap(degree), degree, 0.0)?;
    let rhs = compose_pruned(&fhat.to_polymap(degree), h, degree, 0.0)?;
    Ok(lhs.sub_exact(&rhs)?.max_abs_coeff())
}

/// Largest coefficient of `h o h_inv - id` up to `degree`.
pub fn inverse_residual(h: &PolyMap, h_inv: &PolyMap, degree: usize) -> Result<f64> {
    let comp = compose_pruned(h, h_inv, degree, 0.0)?;
    Ok(comp
        .sub_exact(&PolyMap::identity(h.dimension(), degree))?
        .max_abs_coeff())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn opts(degree: usize) -> NormalFormOptions {
        NormalFormOptions {
            degree,
            ..Default::default()
        }
    }

    #[test]
    fn linear_field_is_its_own_normal_form() {
        let f = VectorField::linear(vec![c(-1.0, 0.0), c(-3.0, 0.5)], 1.0).unwrap();
        let r = solve(&f, &opts(5)).unwrap();
        assert_eq!(r.h, PolyMap::identity(2, 5));
        assert!(r.normal_field.is_linear());
        assert_eq!(r.removed_terms, 0);
        assert_eq!(r.small_divisor_min, None);
    }

    #[test]
    fn nonresonant_quadratic() {
        let f = fixtures::nonres_2_5();
        let r = solve(&f, &opts(2)).unwrap();
        let want = PolyMap::from_terms(
            2,
            2,
            [(0, [1, 0], c(1.0, 0.0)), (1, [0, 1], c(1.0, 0.0)), (1, [2, 0], c(-2.0, 0.0))],
        )
        .unwrap();
        assert_eq!(r.h, want);
        assert!(r.normal_field.is_linear());
        assert_eq!(r.small_divisor_min, Some(0.5));
        // dh . f - A h vanishes exactly, not just to truncation order.
        let res = schroder_residual(&r.h, &f, f.alpha(), 6).unwrap();
        assert!(res.is_empty());
    }

    #[test]
    fn example2_conjugator() {
        let f = fixtures::example2(c(1.0, 0.0));
        let r = solve(&f, &opts(2)).unwrap();
        assert_eq!(r.h.coeff(1, &[2, 0].into()), c(0.0, -1.0));
        assert!(r.normal_field.is_linear());
        assert!(schroder_residual(&r.h, &f, f.alpha(), 4).unwrap().max_abs_coeff() < 1e-15);
    }

    #[test]
    fn resonant_term_is_kept() {
        let f = fixtures::example1(c(-1.0, 0.0), 2, c(1.0, 0.0));
        let r = solve(&f, &opts(3)).unwrap();
        assert_eq!(r.h, PolyMap::identity(2, 3));
        assert_eq!(r.normal_field.higher().coeff(1, &[2, 0].into()), c(1.0, 0.0));
        assert_eq!(r.normal_field.higher().len(), 1);
    }

    #[test]
    fn degree_below_two_is_rejected() {
        let f = fixtures::nonres_2_5();
        assert!(matches!(solve(&f, &opts(1)), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn near_resonance_is_refused_unless_forced() {
        let higher = PolyMap::from_terms(2, 2, [(1, [2, 0], c(1.0, 0.0))]).unwrap();
        let f = VectorField::new(vec![c(-1.0, 0.0), c(-2.0 - 1e-5, 0.0)], higher, 1.0).unwrap();
        let err = solve(&f, &opts(4)).unwrap_err();
        assert!(matches!(err, Error::SmallDivisor { ref at, .. } if at.component == 1));
        let r = solve(
            &f,
            &NormalFormOptions {
                degree: 4,
                force_keep: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(
            r.forced,
            vec![Resonance {
                target: 1,
                k: [2, 0].into()
            }]
        );
        assert_eq!(r.normal_field.higher().coeff(1, &[2, 0].into()), c(1.0, 0.0));
    }

    #[test]
    fn residual_detects_corruption() {
        let f = fixtures::nonres_2_5();
        let r = solve(&f, &opts(4)).unwrap();
        assert!(conjugation_residual(&r.h, &f, &r.normal_field, 4).unwrap() <= 1e-10);
        assert_eq!(conjugation_residual(&PolyMap::identity(2, 4), &f, &f, 4).unwrap(), 0.0);
        let bumped = r
            .h
            .add(&PolyMap::from_terms(2, 4, [(1, [1, 1], c(1e-3, 0.0))]).unwrap())
            .unwrap();
        assert!(conjugation_residual(&bumped, &f, &r.normal_field, 4).unwrap() >= 1e-4);
    }

    #[test]
    fn three_dimensional_resonant_fixture() {
        let f = fixtures::resonant_3d();
        let r = solve(&f, &opts(6)).unwrap();
        let res = spectrum::resonances(f.alpha(), spectrum::DEFAULT_TOL).unwrap();
        for t in r.normal_field.higher().terms() {
            assert!(res.iter().any(|x| x.target == t.component && x.k == t.k));
        }
        assert!(conjugation_residual(&r.h, &f, &r.normal_field, 6).unwrap() <= 1e-10);
        assert!(inverse_residual(&r.h, &r.h_inverse, 6).unwrap() <= 1e-12);
    }
}
