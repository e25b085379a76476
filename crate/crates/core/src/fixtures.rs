//! The fields and maps of the worked examples, plus two resonance fixtures.
//!
//! Every field uses polydisc radius [`RADIUS`].

use std::f64::consts::LN_2;

use num_complex::Complex64;

use crate::algebra::{PolyMap, VectorField};

pub const RADIUS: f64 = 2.0;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn field(alpha: Vec<Complex64>, degree: usize, terms: Vec<(usize, Vec<u32>, Complex64)>) -> VectorField {
    let n = alpha.len();
    let higher = PolyMap::from_terms(n, degree, terms).expect("valid fixture");
    VectorField::new(alpha, higher, RADIUS).expect("valid fixture")
}

/// `(alpha1 z1, m alpha1 z2 + a z1^m)`: resonant, flow
/// `(e^{alpha1 t} z1, e^{alpha2 t}(z2 + a t z1^m))`.
pub fn example1(alpha1: Complex64, m: u32, a: Complex64) -> VectorField {
    assert!(m >= 2, "example1 needs m >= 2");
    field(
        vec![alpha1, alpha1 * m as f64],
        m as usize,
        vec![(1, vec![m, 0], a)],
    )
}

/// `(-(1+i) z1, -(2+i) z2 + a z1^2)`: pure real resonance `Re alpha2 = 2 Re alpha1`.
pub fn example2(a: Complex64) -> VectorField {
    field(vec![c(-1.0, -1.0), c(-2.0, -1.0)], 2, vec![(1, vec![2, 0], a)])
}

/// Closed-form flow of [`example2`]:
/// `(z1 e^{-(1+i)t}, (a i z1^2 (e^{-it} - 1) + z2) e^{-(2+i)t})`.
pub fn example2_flow(a: Complex64, t: f64, z: &[Complex64]) -> Vec<Complex64> {
    let i = c(0.0, 1.0);
    vec![
        z[0] * (c(-1.0, -1.0) * t).exp(),
        (a * i * z[0] * z[0] * ((-i * t).exp() - 1.0) + z[1]) * (c(-2.0, -1.0) * t).exp(),
    ]
}

/// The linear map `diag(1/2, 1/4)`.
pub fn example3_map() -> PolyMap {
    PolyMap::diagonal(&[c(0.5, 0.0), c(0.25, 0.0)], 1)
}

/// `h = (z1, z1^2 + z2)`, which commutes with [`example3_map`].
pub fn example3_h() -> PolyMap {
    PolyMap::from_terms(
        2,
        2,
        [
            (0, [1, 0], c(1.0, 0.0)),
            (1, [0, 1], c(1.0, 0.0)),
            (1, [2, 0], c(1.0, 0.0)),
        ],
    )
    .expect("valid fixture")
}

/// The linear field `(ln(1/2) z1, ln(1/4) z2)` whose time-one map is [`example3_map`].
pub fn example3_field() -> VectorField {
    VectorField::linear(vec![c(-LN_2, 0.0), c(-2.0 * LN_2, 0.0)], RADIUS).expect("valid fixture")
}

/// `(-z1, -2.5 z2 + z1^2)`: no resonances, linearized by `(z1, z2 - 2 z1^2)`.
pub fn nonres_2_5() -> VectorField {
    field(vec![c(-1.0, 0.0), c(-2.5, 0.0)], 2, vec![(1, vec![2, 0], c(1.0, 0.0))])
}

/// `(-z1, -2 z2 + z1^2, -3 z3 + z1 z2)`: resonances `alpha2 = 2 alpha1`,
/// `alpha3 = alpha1 + alpha2`, `alpha3 = 3 alpha1`.
pub fn resonant_3d() -> VectorField {
    field(
        vec![c(-1.0, 0.0), c(-2.0, 0.0), c(-3.0, 0.0)],
        2,
        vec![
            (1, vec![2, 0, 0], c(1.0, 0.0)),
            (2, vec![1, 1, 0], c(1.0, 0.0)),
        ],
    )
}

/// Fixture names accepted by [`by_name`].
pub const NAMES: [&str; 6] = [
    "example1",
    "example2",
    "example3-map",
    "example3-h",
    "nonres-2.5",
    "resonant-3d",
];

/// A fixture as either a field or a bare map.
#[derive(Debug, Clone, PartialEq)]
pub enum Fixture {
    Field(VectorField),
    Map(PolyMap),
}

/// Parameters for the parametrized examples (defaults `a = 1`, `m = 2`, `alpha1 = -1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixtureParams {
    pub a: Complex64,
    pub m: u32,
    pub alpha1: Complex64,
}

impl Default for FixtureParams {
    fn default() -> Self {
        FixtureParams {
            a: c(1.0, 0.0),
            m: 2,
            alpha1: c(-1.0, 0.0),
        }
    }
}

pub fn by_name(name: &str, params: &FixtureParams) -> Option<Fixture> {
    Some(match name {
        "example1" => Fixture::Field(example1(params.alpha1, params.m, params.a)),
        "example2" => Fixture::Field(example2(params.a)),
        "example3-map" => Fixture::Map(example3_map()),
        "example3-h" => Fixture::Map(example3_h()),
        "nonres-2.5" => Fixture::Field(nonres_2_5()),
        "resonant-3d" => Fixture::Field(resonant_3d()),
        _ => return None,
    })
}
