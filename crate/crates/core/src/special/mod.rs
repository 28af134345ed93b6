//! Gamma, error functions, Kummer's ₁F₁ and the integer-order Hermite polynomial.

mod erf;
mod gamma;
pub(crate) mod kummer;
mod poly;

pub use erf::{erf, erfc, erfc_cf_tail, erfcx};
pub use gamma::{cospi, gamma, ln_gamma, rgamma, sinpi};
pub use kummer::{kummer_1f1, kummer_1f1_with};
pub use poly::{hermite_poly, hermite_poly_pair};

use serde::Serialize;

use crate::Real;

/// A summed series together with its bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesResult<T> {
    pub value: T,
    pub terms_used: usize,
    /// Absolute bound on the discarded tail.
    pub truncation_estimate: T,
}

/// Tolerances for convergent series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig<T> {
    pub tol_abs: T,
    pub tol_rel: T,
    pub max_terms: usize,
    /// Largest |z| accepted by [`kummer_1f1_with`].
    pub radius: T,
}

impl<T: Real> Default for SeriesConfig<T> {
    fn default() -> Self {
        let tol = T::c(1e-12).max(T::epsilon() * T::c(4.0));
        Self {
            tol_abs: tol,
            tol_rel: tol,
            max_terms: 2000,
            radius: T::c(50.0),
        }
    }
}

impl<T: Real> SeriesConfig<T> {
    /// Tolerances pinned at machine precision, used internally by the Hermite evaluator.
    pub fn machine() -> Self {
        let tol = T::epsilon() * T::c(0.5);
        Self {
            tol_abs: T::zero(),
            tol_rel: tol,
            max_terms: 5000,
            radius: T::c(50.0),
        }
    }
}
