//! Bracketed scalar root finding.

use crate::{Error, Real, Result};

/// Bisection on a sign change of `f` over `[lo, hi]` down to width `xtol`.
pub fn bisect<T: Real, F: FnMut(T) -> Result<T>>(mut f: F, lo: T, hi: T, xtol: T) -> Result<T> {
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let fa = f(a)?;
    let fb = f(b)?;
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Bracket(format!(
            "no sign change on [{}, {}]",
            a.f64(),
            b.f64()
        )));
    }
    let neg_left = fa < T::zero();
    for _ in 0..400 {
        let m = (a + b) * T::c(0.5);
        if b - a <= xtol || m <= a || m >= b {
            return Ok(m);
        }
        let fm = f(m)?;
        if fm == T::zero() {
            return Ok(m);
        }
        if (fm < T::zero()) == neg_left {
            a = m;
        } else {
            b = m;
        }
    }
    Ok((a + b) * T::c(0.5))
}

/// Newton iteration kept inside a shrinking bracket, falling back to
/// bisection when a step leaves the bracket or stalls.
///
/// `fdf` returns `(f(x), f'(x))`; `[lo, hi]` must bracket a sign change.
/// Iterates until the step is at the level of rounding in `x`.
pub fn newton_bracketed<T: Real, F: FnMut(T) -> Result<(T, T)>>(
    mut fdf: F,
    lo: T,
    hi: T,
    guess: T,
) -> Result<T> {
    let (flo, _) = fdf(lo)?;
    let (fhi, _) = fdf(hi)?;
    if flo == T::zero() {
        return Ok(lo);
    }
    if fhi == T::zero() {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::Bracket(format!(
            "no sign change on [{}, {}]",
            lo.f64(),
            hi.f64()
        )));
    }
    // xl carries f < 0, xh carries f > 0.
    let (mut xl, mut xh) = if flo < T::zero() { (lo, hi) } else { (hi, lo) };
    let mut x = if guess > lo.min(hi) && guess < lo.max(hi) {
        guess
    } else {
        (lo + hi) * T::c(0.5)
    };
    let mut dxold = (hi - lo).abs();
    let mut dx = dxold;
    let eps = T::epsilon();
    for _ in 0..300 {
        let (fx, dfx) = fdf(x)?;
        if fx == T::zero() {
            return Ok(x);
        }
        if fx < T::zero() {
            xl = x;
        } else {
            xh = x;
        }
        let out_of_bracket = ((x - xh) * dfx - fx) * ((x - xl) * dfx - fx) > T::zero();
        let slow = (fx * T::c(2.0)).abs() > (dxold * dfx).abs();
        if out_of_bracket || slow || !dfx.is_finite() || dfx == T::zero() {
            dxold = dx;
            dx = (xh - xl) * T::c(0.5);
            x = xl + dx;
        } else {
            dxold = dx;
            dx = fx / dfx;
            x = x - dx;
        }
        let scale = x.abs().max(T::min_positive_value());
        if dx.abs() <= T::c(2.0) * eps * scale || (xh - xl).abs() <= T::c(4.0) * eps * scale {
            return Ok(x);
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn bisect_sqrt2() {
        let r = bisect(|x: f64| Ok(x * x - 2.0), 0.0, 2.0, 1e-14).unwrap();
        assert_relative_eq!(r, 2.0_f64.sqrt(), max_relative = 1e-13);
    }

    #[test]
    fn newton_cubic() {
        let r = newton_bracketed(
            |x: f64| Ok((x * x * x - 3.0 * x, 3.0 * x * x - 3.0)),
            1.2,
            3.0,
            2.9,
        )
        .unwrap();
        assert_relative_eq!(r, 3.0_f64.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn newton_rejects_missing_bracket() {
        let r = newton_bracketed(|x: f64| Ok((x * x + 1.0, 2.0 * x)), -1.0, 1.0, 0.0);
        assert!(matches!(r, Err(Error::Bracket(_))));
    }
}
