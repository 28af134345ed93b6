//! Extreme real zeros R_k and L_k of H_k.

use serde::Serialize;

use crate::hermite::{hermite, hermite_sign, MAX_ORDER};
use crate::roots::bisect;
use crate::{Error, Real, Result};

/// Scan resolution for sign changes.
pub const SCAN_STEP: f64 = 0.01;
/// Bisection width before the derivative polish.
pub const BISECT_TOL: f64 = 1e-13;
/// Hard limit of the leftmost-zero search window.
pub const WINDOW_CAP: f64 = 200.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroTable<T> {
    pub k: T,
    /// R_k, or -∞ for k ≤ 0.
    pub rightmost: T,
    /// L_k, or -∞ for k ≤ 0.
    pub leftmost: T,
    /// n + 1 for n < k ≤ n + 1, zero for k ≤ 0.
    pub zero_count: usize,
}

fn check<T: Real>(k: T) -> Result<()> {
    if !k.is_finite() {
        return Err(Error::Domain("non-finite order".into()));
    }
    if k.abs() > T::c(MAX_ORDER) {
        return Err(Error::UnsupportedOrder(k.f64()));
    }
    Ok(())
}

/// Number of real zeros of H_k.
pub fn zero_count<T: Real>(k: T) -> usize {
    if k <= T::zero() {
        0
    } else {
        k.ceil().to_usize().unwrap_or(0)
    }
}

fn upper_start<T: Real>(k: T) -> T {
    T::c(2.0) * k.max(T::one()).sqrt() + T::c(2.0)
}

/// Bisection on [lo, hi] followed by one Newton step if it stays inside.
fn refine<T: Real>(k: T, lo: T, hi: T) -> Result<T> {
    let x = bisect(|x| hermite_sign(x, k), lo, hi, T::c(BISECT_TOL))?;
    if let Ok(e) = hermite(x, k) {
        if e.dx != T::zero() {
            let polished = x - e.value / e.dx;
            if polished >= lo && polished <= hi {
                return Ok(polished);
            }
        }
    }
    Ok(x)
}

/// R_k by scanning down from 2√max(k,1) + 2, where H_k > 0, to the first sign change.
pub fn rightmost_zero<T: Real>(k: T) -> Result<T> {
    check(k)?;
    if k <= T::zero() {
        return Ok(T::neg_infinity());
    }
    let step = T::c(SCAN_STEP);
    let top = upper_start(k);
    if hermite_sign(top, k)? <= T::zero() {
        return Err(Error::Bracket(format!(
            "H_{} not positive at the scan start {}",
            k.f64(),
            top.f64()
        )));
    }
    let mut hi = top;
    let mut j = 1usize;
    loop {
        let x = top - step * T::from_usize_exact(j);
        if x < -T::c(WINDOW_CAP) {
            return Err(Error::Bracket(format!(
                "no sign change of H_{} above -{}",
                k.f64(),
                WINDOW_CAP
            )));
        }
        let s = hermite_sign(x, k)?;
        if s == T::zero() {
            return Ok(x);
        }
        if s < T::zero() {
            return refine(k, x, hi);
        }
        hi = x;
        j += 1;
    }
}

/// All real zeros in increasing order, widening the window until zero_count(k) are found.
pub fn real_zeros<T: Real>(k: T) -> Result<Vec<T>> {
    check(k)?;
    let want = zero_count(k);
    if want == 0 {
        return Ok(Vec::new());
    }
    let step = T::c(SCAN_STEP);
    let top = upper_start(k);
    let mut width = T::c(2.0) * k.sqrt() + T::c(4.0);
    let mut zeros: Vec<T> = Vec::with_capacity(want);
    let mut x_prev = top;
    let mut s_prev = hermite_sign(top, k)?;
    let mut j = 1usize;
    loop {
        let x = top - step * T::from_usize_exact(j);
        if x < -width {
            if width >= T::c(WINDOW_CAP) {
                return Err(Error::Bracket(format!(
                    "found {} of {} zeros of H_{} within |x| <= {}",
                    zeros.len(),
                    want,
                    k.f64(),
                    WINDOW_CAP
                )));
            }
            width = (width * T::c(2.0)).min(T::c(WINDOW_CAP));
            continue;
        }
        let s = hermite_sign(x, k)?;
        if s == T::zero() {
            zeros.push(x);
            s_prev = -s_prev;
        } else {
            if s != s_prev {
                zeros.push(refine(k, x, x_prev)?);
            }
            s_prev = s;
        }
        if zeros.len() == want {
            zeros.reverse();
            return Ok(zeros);
        }
        x_prev = x;
        j += 1;
    }
}

/// L_k, or -∞ for k ≤ 0.
pub fn leftmost_zero<T: Real>(k: T) -> Result<T> {
    check(k)?;
    if k <= T::zero() {
        return Ok(T::neg_infinity());
    }
    Ok(real_zeros(k)?[0])
}

/// Both extreme zeros and the zero count.
pub fn zero_table<T: Real>(k: T) -> Result<ZeroTable<T>> {
    Ok(ZeroTable {
        k,
        rightmost: rightmost_zero(k)?,
        leftmost: leftmost_zero(k)?,
        zero_count: zero_count(k),
    })
}
