//! Taylor-series integration of the Hermite ODE inward from the +∞ expansion.
//!
//! On x > 0 the wanted solution is the slowly growing one, so the convergent
//! representations cancel against the e^{x²/2} companion. Integrating from a
//! point where the expansion is already at machine precision toward smaller x
//! keeps the companion decaying relative to H_k.

use super::asymptotic::plus;
use crate::{Error, Real, Result};

/// (value, derivative, relative error) at the anchor point.
struct Anchor<T> {
    x: T,
    y: T,
    dy: T,
    rel: T,
}

fn anchor_at<T: Real>(x: T, k: T) -> Result<Anchor<T>> {
    let (_, (y, ey)) = plus(x, k)?;
    let (_, (ym1, em1)) = plus(x, k - T::one())?;
    let rel_y = ey / y.abs();
    let rel_d = if k == T::zero() {
        T::zero()
    } else {
        em1 / ym1.abs()
    };
    Ok(Anchor {
        x,
        y,
        dy: k * ym1,
        rel: rel_y.max(rel_d),
    })
}

/// Smallest integer X ≥ 10 where the expansion meets machine precision.
fn anchor<T: Real>(k: T) -> Result<Anchor<T>> {
    let gate = T::c(16.0) * T::epsilon();
    let mut best: Option<Anchor<T>> = None;
    for xi in 10..=80 {
        let a = anchor_at(T::c(xi as f64), k)?;
        if a.rel <= gate && a.y.is_finite() {
            return Ok(a);
        }
        if best.as_ref().map_or(true, |b| a.rel < b.rel) {
            best = Some(a);
        }
    }
    best.ok_or(Error::Threshold {
        x: 10.0,
        k: k.f64(),
    })
}

/// One Taylor step of y'' = x y' - k y from x0 by h.
fn taylor_step<T: Real>(x0: T, k: T, y: T, dy: T, h: T) -> (T, T) {
    let eps = T::epsilon();
    let (mut a0, mut a1) = (y, dy);
    let mut sy = y + dy * h;
    let mut sd = dy;
    let mut hn = h;
    let mut quiet = 0;
    for n in 0..400usize {
        let nf = T::from_usize_exact(n);
        let a2 = (x0 * (nf + T::one()) * a1 + (nf - k) * a0) / ((nf + T::c(2.0)) * (nf + T::one()));
        let dterm = (nf + T::c(2.0)) * a2 * hn;
        hn = hn * h;
        let term = a2 * hn;
        sy = sy + term;
        sd = sd + dterm;
        let scale = sy.abs() + (sd * h).abs();
        if term.abs() + (dterm * h).abs() <= T::c(0.05) * eps * scale {
            quiet += 1;
            if quiet >= 2 && n >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
        a0 = a1;
        a1 = a2;
    }
    (sy, sd)
}

/// H_k(x) and H′_k(x) with an absolute error bound on each.
pub(crate) fn integrate<T: Real>(x: T, k: T) -> Result<(T, T, T, T)> {
    let start = anchor(k)?;
    let start = if x > start.x { anchor_at(x, k)? } else { start };
    let (mut x0, mut y, mut dy) = (start.x, start.y, start.dy);
    let mut steps = 0usize;
    while x0 > x {
        let h = -(T::c(0.5).min(T::c(1.5) / x0.abs()).min(x0 - x));
        let (ny, nd) = taylor_step(x0, k, y, dy, h);
        y = ny;
        dy = nd;
        x0 = if x0 + h <= x || (x0 - x) <= -h {
            x
        } else {
            x0 + h
        };
        steps += 1;
        if !(y.is_finite() && dy.is_finite()) {
            return Err(Error::Overflow(format!(
                "continuation of H_{} left the floating-point range",
                k.f64()
            )));
        }
    }
    let rel = start.rel + T::c(8.0) * T::epsilon() * T::from_usize_exact(steps + 1);
    let scale = y.abs().max(dy.abs() / (T::one() + x.abs()));
    Ok((y, dy, rel * scale, rel * scale * (T::one() + x.abs())))
}
