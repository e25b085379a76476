//! Rigidity checks on concrete semigroups: commutation, unique
//! linearizability of linear maps, coefficient curves, propagation of
//! linearity from one element, and coincidence of commuting semigroups.

mod coefficients;
mod grid;
mod probe;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use coefficients::{cocycle_check, CoefficientCurve, CurveKind};
pub use grid::{halton_points, random_points, Grid, DEFAULT_T_GRID, DEFAULT_Z_COUNT, DEFAULT_Z_RADIUS};
pub use probe::{
    probe_ode, quadratic_part, scaled_curvature, scaled_quadratic_part, LINEARITY_THRESHOLD,
    PROBE_NODES, PROBE_RADIUS,
};

use crate::algebra::{PolyMap, VectorField};
use crate::error::{Error, Result};
use crate::flow::{self, sup_norm, OdeOptions};
use crate::koenigs;
use crate::spectrum::{self, Resonance};

/// A holomorphic self-map that can be evaluated pointwise.
pub trait SelfMap {
    fn dimension(&self) -> usize;
    fn apply(&self, z: &[Complex64]) -> Result<Vec<Complex64>>;
}

impl SelfMap for PolyMap {
    fn dimension(&self) -> usize {
        PolyMap::dimension(self)
    }

    fn apply(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        self.evaluate(z)
    }
}

/// The element `phi_t` of the semigroup generated by `field`.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowMap {
    pub field: VectorField,
    pub t: f64,
    pub ode: OdeOptions,
}

impl SelfMap for FlowMap {
    fn dimension(&self) -> usize {
        self.field.dimension()
    }

    fn apply(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        flow::evaluate_flow(&self.field, self.t, z, &self.ode)
    }
}

fn check_grid(grid: &Grid, n: usize) -> Result<()> {
    if grid.t.is_empty() || grid.z.is_empty() {
        return Err(Error::InvalidArgument("grids must be nonempty".into()));
    }
    if grid.t.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
        return Err(Error::InvalidArgument("grid times must be finite and >= 0".into()));
    }
    if let Some(z) = grid.z.iter().find(|z| z.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: z.len(),
        });
    }
    Ok(())
}

fn distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommutationReport {
    /// Max over the grid of `|psi(phi_t(z)) - phi_t(psi(z))|` (max norm).
    pub max_deviation: f64,
    /// `(t, index into grid.z)` of the largest deviation.
    pub worst: (f64, usize),
    pub tol: f64,
    pub passed: bool,
    pub grid: Grid,
}

/// Compare `psi o phi_t` with `phi_t o psi` on `grid`.
pub fn check_commutation(
    psi: &dyn SelfMap,
    f: &VectorField,
    grid: &Grid,
    tol: f64,
    ode: &OdeOptions,
) -> Result<CommutationReport> {
    let n = f.dimension();
    if psi.dimension() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: psi.dimension(),
        });
    }
    check_grid(grid, n)?;
    let mut max_deviation: f64 = 0.0;
    let mut worst = (grid.t[0], 0);
    for (zi, z) in grid.z.iter().enumerate() {
        let psi_z = psi.apply(z)?;
        for &t in &grid.t {
            let a = psi.apply(&flow::evaluate_flow(f, t, z, ode)?)?;
            let b = flow::evaluate_flow(f, t, &psi_z, ode)?;
            let d = distance(&a, &b);
            if d > max_deviation {
                max_deviation = d;
                worst = (t, zi);
            }
        }
    }
    Ok(CommutationReport {
        max_deviation,
        worst,
        tol,
        passed: max_deviation <= tol,
        grid: grid.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UniqueLinearizability {
    pub uniquely_linearizable: bool,
    /// Relations `beta^k = beta_j` obstructing uniqueness.
    pub witnesses: Vec<Resonance>,
}

/// `diag(beta)` is uniquely linearizable iff it has no discrete resonance.
pub fn unique_linearizability(beta: &[Complex64], tol: f64) -> Result<UniqueLinearizability> {
    let witnesses = spectrum::discrete_resonances(beta, tol)?;
    Ok(UniqueLinearizability {
        uniquely_linearizable: witnesses.is_empty(),
        witnesses,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinearElementVerdict {
    /// The field is linear, so every element is.
    AllLinear,
    /// `phi_{t0}` is linear, a hypothesis holds, and every probed element is linear.
    Propagated,
    /// `phi_{t0}` is linear, every hypothesis fails, and some element is not linear.
    Counterexample,
    /// `phi_{t0}` is not linear; there is nothing to propagate.
    ElementNonlinear,
    /// `phi_{t0}` is linear and a hypothesis holds, yet some element is not linear.
    Violation,
    /// `phi_{t0}` is linear, no hypothesis holds, and every probed element is linear.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Hypotheses {
    /// (i) no pure real resonance.
    pub no_pure_real_resonance: bool,
    /// (ii) the sufficient condition for normal linearizability.
    pub normally_linearizable: bool,
    /// (iii) `diag(e^{alpha t0})` has no discrete resonance.
    pub discrete_nonresonant: bool,
    pub pure_real_witnesses: Vec<Resonance>,
    pub discrete_witnesses: Vec<Resonance>,
}

impl Hypotheses {
    pub fn any(&self) -> bool {
        self.no_pure_real_resonance || self.normally_linearizable || self.discrete_nonresonant
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearElementOptions {
    pub threshold: f64,
    pub tol: f64,
    /// Times probed after `t0`; `None` means the default grid plus `t0 / 2`.
    pub t_grid: Option<Vec<f64>>,
    pub ode: OdeOptions,
}

impl Default for LinearElementOptions {
    fn default() -> Self {
        LinearElementOptions {
            threshold: LINEARITY_THRESHOLD,
            tol: spectrum::DEFAULT_TOL,
            t_grid: None,
            ode: probe_ode(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearElementReport {
    pub t0: f64,
    pub curvature_t0: f64,
    pub element_linear: bool,
    pub hypotheses: Hypotheses,
    /// `(t, scaled curvature)` over the probe grid (empty if not probed).
    pub curvatures: Vec<(f64, f64)>,
    pub max_curvature: f64,
    pub threshold: f64,
    pub verdict: LinearElementVerdict,
}

/// Decide whether linearity of `phi_{t0}` propagates to the whole semigroup.
pub fn linear_element_check(f: &VectorField, t0: f64, o: &LinearElementOptions) -> Result<LinearElementReport> {
    if !(t0.is_finite() && t0 > 0.0) {
        return Err(Error::InvalidArgument(format!("t0 must be positive, got {t0}")));
    }
    let alpha = f.alpha();
    let pure_real = spectrum::pure_real_resonances(alpha, o.tol)?;
    let beta: Vec<Complex64> = alpha.iter().map(|a| (a * t0).exp()).collect();
    let discrete = spectrum::discrete_resonances(&beta, o.tol)?;
    let hypotheses = Hypotheses {
        no_pure_real_resonance: pure_real.is_empty(),
        normally_linearizable: koenigs::precheck(f)?.holds,
        discrete_nonresonant: discrete.is_empty(),
        pure_real_witnesses: pure_real,
        discrete_witnesses: discrete,
    };

    if f.is_linear() {
        return Ok(LinearElementReport {
            t0,
            curvature_t0: 0.0,
            element_linear: true,
            hypotheses,
            curvatures: Vec::new(),
            max_curvature: 0.0,
            threshold: o.threshold,
            verdict: LinearElementVerdict::AllLinear,
        });
    }

    let curvature_t0 = scaled_curvature(f, t0, &o.ode)?;
    let element_linear = curvature_t0 < o.threshold;
    let mut curvatures = Vec::new();
    if element_linear {
        let mut times = o.t_grid.clone().unwrap_or_else(|| {
            let mut v = DEFAULT_T_GRID.to_vec();
            v.push(t0 / 2.0);
            v
        });
        times.sort_by(f64::total_cmp);
        times.dedup();
        for t in times {
            curvatures.push((t, scaled_curvature(f, t, &o.ode)?));
        }
    }
    let max_curvature = curvatures.iter().map(|&(_, c)| c).fold(0.0, f64::max);
    let all_linear = max_curvature < o.threshold;
    let verdict = match (element_linear, hypotheses.any(), all_linear) {
        (false, _, _) => LinearElementVerdict::ElementNonlinear,
        (true, true, true) => LinearElementVerdict::Propagated,
        (true, true, false) => LinearElementVerdict::Violation,
        (true, false, false) => LinearElementVerdict::Counterexample,
        (true, false, true) => LinearElementVerdict::Inconclusive,
    };
    Ok(LinearElementReport {
        t0,
        curvature_t0,
        element_linear,
        hypotheses,
        curvatures,
        max_curvature,
        threshold: o.threshold,
        verdict,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoincidenceVerdict {
    Coincide,
    HypothesesNotMet,
    /// Hypotheses hold but the flows differ on the grid.
    Violation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoincidenceReport {
    pub s0: f64,
    pub commutation: CommutationReport,
    pub unique_linearizability: UniqueLinearizability,
    pub lambda_index: f64,
    pub hypotheses_met: bool,
    /// Max over the grid of `|phi_t(z) - psi_t(z)|`.
    pub max_flow_deviation: f64,
    pub tol: f64,
    pub verdict: CoincidenceVerdict,
}

/// Two semigroups with the same linear part `A` coincide when `psi_{s0}`
/// commutes with the first and either `diag(e^{A s0})` is uniquely
/// linearizable or `lambda(A) < 2`.
pub fn semigroups_coincide(
    f1: &VectorField,
    f2: &VectorField,
    s0: f64,
    grid: &Grid,
    tol: f64,
    ode: &OdeOptions,
) -> Result<CoincidenceReport> {
    if f1.dimension() != f2.dimension() {
        return Err(Error::MismatchedLinearParts);
    }
    let scale = f1.alpha().iter().map(|a| a.norm()).fold(0.0, f64::max);
    if f1.alpha().iter().zip(f2.alpha()).any(|(a, b)| (a - b).norm() > 1e-12 * scale) {
        return Err(Error::MismatchedLinearParts);
    }
    if !(s0.is_finite() && s0 > 0.0) {
        return Err(Error::InvalidArgument(format!("s0 must be positive, got {s0}")));
    }
    check_grid(grid, f1.dimension())?;
    let psi = FlowMap {
        field: f2.clone(),
        t: s0,
        ode: *ode,
    };
    let commutation = check_commutation(&psi, f1, grid, tol, ode)?;
    let beta: Vec<Complex64> = f1.alpha().iter().map(|a| (a * s0).exp()).collect();
    let unique = unique_linearizability(&beta, spectrum::DEFAULT_TOL)?;
    let lambda = spectrum::lambda_index(f1.alpha())?;
    let hypotheses_met = commutation.passed && (unique.uniquely_linearizable || lambda < 2.0);

    let mut max_flow_deviation: f64 = 0.0;
    for z in &grid.z {
        for &t in &grid.t {
            let a = flow::evaluate_flow(f1, t, z, ode)?;
            let b = flow::evaluate_flow(f2, t, z, ode)?;
            max_flow_deviation = max_flow_deviation.max(distance(&a, &b));
        }
    }
    let verdict = if !hypotheses_met {
        CoincidenceVerdict::HypothesesNotMet
    } else if max_flow_deviation <= tol {
        CoincidenceVerdict::Coincide
    } else {
        CoincidenceVerdict::Violation
    };
    Ok(CoincidenceReport {
        s0,
        commutation,
        unique_linearizability: unique,
        lambda_index: lambda,
        hypotheses_met,
        max_flow_deviation,
        tol,
        verdict,
    })
}

/// Largest `|p(z)|` over `points`, a convenience for grid diagnostics.
pub fn max_norm_on(p: &dyn SelfMap, points: &[Vec<Complex64>]) -> Result<f64> {
    points
        .iter()
        .map(|z| Ok(sup_norm(&p.apply(z)?)))
        .try_fold(0.0, |acc: f64, x: Result<f64>| Ok(acc.max(x?)))
}
