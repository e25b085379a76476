#![allow(dead_code)]

use dulac::{Complex64, MultiIndex, PolyMap, VectorField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex(rng: &mut impl Rng, scale: f64) -> Complex64 {
    c(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

/// Uniform point in the polydisc of radius `r`.
pub fn point(rng: &mut impl Rng, n: usize, r: f64) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::from_polar(r * rng.gen::<f64>().sqrt(), std::f64::consts::TAU * rng.gen::<f64>()))
        .collect()
}

fn random_index(rng: &mut impl Rng, n: usize, degree: usize) -> MultiIndex {
    let mut k = vec![0u32; n];
    for _ in 0..degree {
        k[rng.gen_range(0..n)] += 1;
    }
    k.into()
}

/// `terms` random monomials of degree `2..=max_degree` with coefficients of size `<= scale`.
pub fn nonlinear_map(rng: &mut impl Rng, n: usize, max_degree: usize, terms: usize, scale: f64) -> PolyMap {
    let t: Vec<_> = (0..terms)
        .map(|_| {
            let d = rng.gen_range(2..=max_degree);
            (rng.gen_range(0..n), random_index(rng, n, d), complex(rng, scale))
        })
        .collect();
    PolyMap::from_terms(n, max_degree, t).unwrap()
}

/// `id + ` [`nonlinear_map`].
pub fn normalized_map(rng: &mut impl Rng, n: usize, max_degree: usize, terms: usize, scale: f64) -> PolyMap {
    PolyMap::identity(n, max_degree)
        .add(&nonlinear_map(rng, n, max_degree, terms, scale))
        .unwrap()
}

/// A map with zero constant term and a random linear part.
pub fn origin_map(rng: &mut impl Rng, n: usize, max_degree: usize, terms: usize) -> PolyMap {
    let lin: Vec<_> = (0..n)
        .flat_map(|j| (0..n).map(move |i| (j, i)))
        .map(|(j, i)| (j, MultiIndex::unit(n, i), complex(rng, 1.0)))
        .collect();
    PolyMap::from_terms(n, max_degree, lin)
        .unwrap()
        .add(&nonlinear_map(rng, n, max_degree, terms, 1.0))
        .unwrap()
}

/// Dilation spectrum with `Re alpha` in `[-re_max, -re_min]`.
pub fn dilation_spectrum(rng: &mut impl Rng, n: usize, re_min: f64, re_max: f64) -> Vec<Complex64> {
    (0..n)
        .map(|_| c(-rng.gen_range(re_min..re_max), rng.gen_range(-1.0..1.0)))
        .collect()
}

/// A random field with small quadratic and cubic terms.
pub fn random_field(rng: &mut impl Rng, n: usize) -> VectorField {
    let alpha = dilation_spectrum(rng, n, 0.5, 2.0);
    VectorField::new(alpha, nonlinear_map(rng, n, 3, 4, 0.5), 2.0).unwrap()
}

pub fn max_dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
