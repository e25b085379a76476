use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub const DEFAULT_T_GRID: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 4.0];
pub const DEFAULT_Z_COUNT: usize = 16;
pub const DEFAULT_Z_RADIUS: f64 = 0.1;

const PRIMES: [u32; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// The `(t, z)` sample set of a check, kept in reports for reproducibility.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub t: Vec<f64>,
    pub z: Vec<Vec<Complex64>>,
}

impl Grid {
    /// Default times with [`halton_points`] on the polydisc of radius 0.1.
    pub fn standard(n: usize) -> Grid {
        Grid {
            t: DEFAULT_T_GRID.to_vec(),
            z: halton_points(n, DEFAULT_Z_COUNT, DEFAULT_Z_RADIUS),
        }
    }

    /// Default times with seeded uniform points on the polydisc of radius 0.1.
    pub fn seeded(n: usize, seed: u64) -> Grid {
        Grid {
            t: DEFAULT_T_GRID.to_vec(),
            z: random_points(n, DEFAULT_Z_COUNT, DEFAULT_Z_RADIUS, seed),
        }
    }
}

fn radical_inverse(mut i: u32, base: u32) -> f64 {
    let inv = 1.0 / base as f64;
    let mut x = 0.0;
    let mut scale = inv;
    while i > 0 {
        x += (i % base) as f64 * scale;
        i /= base;
        scale *= inv;
    }
    x
}

fn disc_point(radius: f64, u: f64, v: f64) -> Complex64 {
    // Area-uniform: modulus r sqrt(u), argument 2 pi v.
    Complex64::from_polar(radius * u.sqrt(), TAU * v)
}

/// Low-discrepancy points in the closed polydisc of radius `radius`, from
/// the Halton sequence in `2n` dimensions (`n <= 8`).
pub fn halton_points(n: usize, count: usize, radius: f64) -> Vec<Vec<Complex64>> {
    assert!(2 * n <= PRIMES.len(), "halton grid supports n <= 8");
    (1..=count as u32)
        .map(|i| {
            (0..n)
                .map(|j| {
                    disc_point(
                        radius,
                        radical_inverse(i, PRIMES[2 * j]),
                        radical_inverse(i, PRIMES[2 * j + 1]),
                    )
                })
                .collect()
        })
        .collect()
}

/// Uniform random points in the polydisc, reproducible from `seed`.
pub fn random_points(n: usize, count: usize, radius: f64, seed: u64) -> Vec<Vec<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..n).map(|_| disc_point(radius, rng.gen(), rng.gen())).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halton_points_fill_the_polydisc() {
        let pts = halton_points(3, 16, 0.1);
        assert_eq!(pts.len(), 16);
        assert!(pts.iter().flatten().all(|z| z.norm() <= 0.1));
        assert_eq!(radical_inverse(1, 2), 0.5);
        assert_eq!(radical_inverse(3, 2), 0.75);
        assert!((radical_inverse(5, 3) - 7.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn seeded_points_are_reproducible() {
        assert_eq!(random_points(2, 5, 0.1, 7), random_points(2, 5, 0.1, 7));
        assert_ne!(random_points(2, 5, 0.1, 7), random_points(2, 5, 0.1, 8));
    }
}
