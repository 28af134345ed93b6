//! Hermite functions H_k(x) of real order: H'' - xH' + kH = 0 with H_k(x) ~ x^k at +∞.
//!
//! H_k(x) = e^{x²/4} D_k(x) in terms of the parabolic cylinder function.

mod asymptotic;
mod closed;
mod continuation;
mod series;

pub use asymptotic::{hermite_asymptotic, hermite_minus_log, Direction};
pub use closed::{h_minus_one, h_minus_two};

use serde::Serialize;

use crate::limits::alpha;
use crate::quad::integrate;
use crate::special::hermite_poly_pair;
use crate::{Error, Real, Result};

/// Largest supported |k|.
pub const MAX_ORDER: f64 = 30.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Series,
    Hypergeometric,
    IntegerRecurrence,
    AsymptPlus,
    AsymptMinus,
    /// Taylor integration of the ODE inward from the +∞ expansion.
    Continuation,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Series => "series",
            Regime::Hypergeometric => "hypergeometric",
            Regime::IntegerRecurrence => "integer_recurrence",
            Regime::AsymptPlus => "asympt_plus",
            Regime::AsymptMinus => "asympt_minus",
            Regime::Continuation => "continuation",
        }
    }
}

/// H_k and its x-derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HermiteEval<T> {
    pub x: T,
    pub k: T,
    pub value: T,
    pub dx: T,
    pub dxx: T,
    pub regime: Regime,
    /// Error estimate relative to max(|H|, |H′|/(1 + |x|)).
    pub est_error: T,
}

/// Accuracy every returned evaluation must meet.
pub fn accuracy_target<T: Real>() -> T {
    T::c(1e-8).max(T::epsilon() * T::c(1000.0))
}

// Accept a candidate without trying the others once it is this good.
fn good_enough<T: Real>() -> T {
    T::epsilon() * T::c(256.0)
}

fn validate<T: Real>(x: T, k: T) -> Result<()> {
    if !x.is_finite() || !k.is_finite() {
        return Err(Error::Domain(format!(
            "non-finite input x = {}, k = {}",
            x.f64(),
            k.f64()
        )));
    }
    if k.abs() > T::c(MAX_ORDER) {
        return Err(Error::UnsupportedOrder(k.f64()));
    }
    Ok(())
}

fn finish<T: Real>(
    x: T,
    k: T,
    value: T,
    dx: T,
    err_v: T,
    err_d: T,
    regime: Regime,
) -> HermiteEval<T> {
    let scale = value
        .abs()
        .max(dx.abs() / (T::one() + x.abs()))
        .max(T::min_positive_value());
    let est = (err_v.max(err_d / (T::one() + x.abs())) / scale).max(T::zero());
    HermiteEval {
        x,
        k,
        value,
        dx,
        dxx: x * dx - k * value,
        regime,
        est_error: est,
    }
}

fn value_in<T: Real>(x: T, k: T, regime: Regime) -> Result<(T, T)> {
    match regime {
        Regime::Series => series::hyp1(x, k),
        Regime::Hypergeometric => series::hyp2(x, k),
        Regime::AsymptPlus => asymptotic::plus(x, k).map(|r| r.1),
        Regime::AsymptMinus => asymptotic::minus(x, k).map(|r| r.1),
        Regime::IntegerRecurrence | Regime::Continuation => unreachable!("handled by caller"),
    }
}

/// Evaluates H_k(x) along a forced path.
///
/// `dx` comes from H′_k = k·H_{k-1} on the same path (or from the Taylor state
/// for `Continuation`) and `dxx` from the ODE.
pub fn hermite_in_regime<T: Real>(x: T, k: T, regime: Regime) -> Result<HermiteEval<T>> {
    validate(x, k)?;
    match regime {
        Regime::IntegerRecurrence => {
            if !(k >= T::zero() && k.is_integer()) {
                return Err(Error::Domain(format!(
                    "integer recurrence needs a nonnegative integer order, got {}",
                    k
                )));
            }
            let n = k.to_usize().unwrap_or(0);
            let (v, vm1) = hermite_poly_pair(n, x);
            let (mut b, mut bm1, mut peak) = (T::one(), T::zero(), T::one());
            for j in 0..n {
                let next = x * b - T::from_usize_exact(j) * bm1;
                bm1 = b;
                b = next;
                peak = peak.max(b.abs());
            }
            let scale = peak.max(k.abs() * vm1.abs() / (T::one() + x.abs()));
            let err = T::c(4.0) * T::from_usize_exact(n + 1) * T::epsilon() * scale;
            Ok(finish(x, k, v, k * vm1, err, k * err, regime))
        }
        Regime::Continuation => {
            let (v, d, ev, ed) = continuation::integrate(x, k)?;
            Ok(finish(x, k, v, d, ev, ed, regime))
        }
        _ => {
            let (v, ev) = value_in(x, k, regime)?;
            let (dx, ed) = if k == T::zero() {
                (T::zero(), T::zero())
            } else {
                let (vm1, em1) = value_in(x, k - T::one(), regime)?;
                (k * vm1, k.abs() * em1)
            };
            if !(v.is_finite() && dx.is_finite()) {
                return Err(Error::Overflow(format!(
                    "H_{}({}) is not representable",
                    k.f64(),
                    x.f64()
                )));
            }
            Ok(finish(x, k, v, dx, ev, ed, regime))
        }
    }
}

fn direct_regime<T: Real>(x: T, k: T) -> Regime {
    if k.is_integer() && x * x * T::c(0.5) <= T::c(50.0) {
        Regime::Hypergeometric
    } else {
        Regime::Series
    }
}

/// Candidate paths in preference order and whether all of them must be compared.
fn candidates<T: Real>(x: T, k: T) -> (Vec<Regime>, bool) {
    use Regime::*;
    let direct = direct_regime(x, k);
    let a = x.abs();
    if x < T::zero() {
        if a <= T::c(8.0) {
            (vec![direct, Continuation], false)
        } else if a < T::c(10.0) {
            (vec![direct, AsymptMinus, Continuation], true)
        } else if a <= T::c(30.0) {
            (vec![AsymptMinus, direct, Continuation], false)
        } else {
            (vec![AsymptMinus], false)
        }
    } else if a <= T::one() {
        (vec![direct, Continuation], false)
    } else if a <= T::c(8.0) {
        (vec![Continuation], false)
    } else if a < T::c(10.0) {
        (vec![Continuation, AsymptPlus], true)
    } else {
        (vec![AsymptPlus, Continuation], false)
    }
}

fn best_effort<T: Real>(x: T, k: T) -> Result<HermiteEval<T>> {
    validate(x, k)?;
    if k >= T::zero() && k.is_integer() {
        return hermite_in_regime(x, k, Regime::IntegerRecurrence);
    }
    let (list, exhaustive) = candidates(x, k);
    let mut best: Option<HermiteEval<T>> = None;
    let mut first_err: Option<Error> = None;
    for r in list {
        match hermite_in_regime(x, k, r) {
            Ok(e) => {
                let accept = !exhaustive && e.est_error <= good_enough();
                if best.as_ref().map_or(true, |b| e.est_error < b.est_error) {
                    best = Some(e);
                }
                if accept {
                    break;
                }
            }
            Err(err) => {
                first_err.get_or_insert(err);
            }
        }
    }
    match best {
        Some(b) => Ok(b),
        None => Err(first_err.unwrap_or(Error::Accuracy {
            x: x.f64(),
            k: k.f64(),
            est: f64::INFINITY,
        })),
    }
}

/// H_k(x) with its derivatives, choosing the most accurate available path.
///
/// Fails with [`Error::Accuracy`] rather than returning an evaluation whose
/// estimated error exceeds [`accuracy_target`].
pub fn hermite<T: Real>(x: T, k: T) -> Result<HermiteEval<T>> {
    let b = best_effort(x, k)?;
    if !b.value.is_finite() || !b.dx.is_finite() {
        return Err(Error::Overflow(format!(
            "H_{}({}) or its derivative overflows",
            k.f64(),
            x.f64()
        )));
    }
    if b.est_error > accuracy_target() {
        return Err(Error::Accuracy {
            x: x.f64(),
            k: k.f64(),
            est: b.est_error.f64(),
        });
    }
    Ok(b)
}

/// Sign of H_k(x), also beyond the overflow threshold on the negative axis.
pub fn hermite_sign<T: Real>(x: T, k: T) -> Result<T> {
    match best_effort(x, k) {
        Ok(e) => Ok(if e.value == T::zero() {
            T::zero()
        } else {
            e.value.signum()
        }),
        Err(Error::Overflow(_)) if x < T::zero() => hermite_minus_log(x, k).map(|r| r.0),
        Err(e) => Err(e),
    }
}

/// ∂H/∂k at k = 0, which equals ∫₁ˣ H_{-1}(s) ds - α.
pub fn hermite_dk_at_zero_order<T: Real>(x: T) -> Result<T> {
    if !x.is_finite() {
        return Err(Error::Domain("non-finite x".into()));
    }
    let q = integrate(|s: T| Ok(h_minus_one(s)), T::one(), x)?;
    Ok(q.value - alpha::<T>()?.value)
}
