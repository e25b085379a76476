//! Sparse truncated polynomial maps over the complex numbers.

mod field;
mod multi_index;
mod polymap;
pub(crate) mod series;

pub use field::{descending_real_order, VectorField};
pub use multi_index::MultiIndex;
pub use polymap::{
    compose, compose_pruned, is_triangular, jacobian_apply, jacobian_apply_pruned, PolyMap, Term,
    PRUNE_THRESHOLD,
};

use crate::error::{Error, Result};

/// A polynomial map known to be triangular in its stored coordinate order:
/// component `j` is `a_j z_j` plus a polynomial in `z_1, ..., z_{j-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularPolyMap(PolyMap);

impl TriangularPolyMap {
    pub fn new(p: PolyMap) -> Result<Self> {
        match is_triangular(&p) {
            Some(order) if order.iter().enumerate().all(|(i, &o)| i == o) => {
                Ok(TriangularPolyMap(p))
            }
            _ => Err(Error::NotTriangular),
        }
    }

    pub fn as_polymap(&self) -> &PolyMap {
        &self.0
    }

    pub fn into_inner(self) -> PolyMap {
        self.0
    }
}
