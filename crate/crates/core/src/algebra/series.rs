//! Scalar truncated power series: one component of a [`PolyMap`](super::PolyMap).

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::MultiIndex;

pub(crate) type Series = BTreeMap<MultiIndex, Complex64>;

pub(crate) fn insert_add(s: &mut Series, k: MultiIndex, c: Complex64) {
    let e = s.entry(k).or_insert(Complex64::new(0.0, 0.0));
    *e += c;
}

pub(crate) fn prune(s: &mut Series, threshold: f64) {
    s.retain(|_, c| *c != Complex64::new(0.0, 0.0) && c.norm() >= threshold);
}

/// Product truncated to total degree `degree`.
pub(crate) fn mul(a: &Series, b: &Series, degree: usize) -> Series {
    let mut out = Series::new();
    for (ka, ca) in a {
        let da = ka.degree();
        if da > degree {
            break;
        }
        for (kb, cb) in b {
            if da + kb.degree() > degree {
                break;
            }
            insert_add(&mut out, ka.add(kb), ca * cb);
        }
    }
    out
}

/// Partial derivative with respect to variable `i`.
pub(crate) fn derivative(a: &Series, i: usize) -> Series {
    let mut out = Series::new();
    for (k, c) in a {
        if let Some(km) = k.decrement(i) {
            insert_add(&mut out, km, c * k.get(i) as f64);
        }
    }
    out
}

pub(crate) fn axpy(out: &mut Series, scale: Complex64, a: &Series) {
    for (k, c) in a {
        insert_add(out, k.clone(), scale * c);
    }
}

pub(crate) fn constant(n: usize, c: Complex64) -> Series {
    let mut s = Series::new();
    s.insert(MultiIndex::zero(n), c);
    s
}
