//! Resonances, Poincaré–Dulac normal forms, Koenigs linearizers and flows
//! for dilation-type holomorphic semigroups in `C^n`.
//!
//! A semigroup `phi_t` with generator `f(z) = Az + O(|z|^2)`, `A` diagonal
//! with spectrum in the open left half-plane, is described by a
//! [`VectorField`]. The modules build on each other:
//!
//! * [`algebra`]: sparse truncated polynomial maps and their calculus.
//! * [`spectrum`]: distortion index, resonances, pure real resonances.
//! * [`normalform`]: formal conjugation to the resonant normal form.
//! * [`flow`]: numeric, closed-form triangular and linear flows.
//! * [`koenigs`]: the limit `lim e^{-At} phi_t(z)` and its diagnostics.
//! * [`rigidity`]: commutation, linear elements and coincidence checks.
//!
//! ```
//! use dulac::{fixtures, normalform, spectrum};
//!
//! let f = fixtures::nonres_2_5();
//! assert_eq!(spectrum::lambda_index(f.alpha()).unwrap(), 2.5);
//! let nf = normalform::solve(&f, &Default::default()).unwrap();
//! assert!(nf.normal_field.is_linear());
//! ```

pub mod algebra;
pub mod error;
pub mod fixtures;
pub mod flow;
pub mod koenigs;
pub mod normalform;
pub mod rigidity;
pub mod spectrum;

pub use algebra::{MultiIndex, PolyMap, TriangularPolyMap, VectorField};
pub use error::{Error, Result};
pub use num_complex::Complex64;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    mod algebra {}
    #[doc = include_str!("../../../book/src/spectrum.md")]
    mod spectrum {}
    #[doc = include_str!("../../../book/src/normalform.md")]
    mod normalform {}
    #[doc = include_str!("../../../book/src/flow.md")]
    mod flow {}
    #[doc = include_str!("../../../book/src/koenigs.md")]
    mod koenigs {}
    #[doc = include_str!("../../../book/src/rigidity.md")]
    mod rigidity {}
}
