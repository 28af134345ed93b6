//! Divergent expansions at ±∞ with optimal truncation.

use serde::Serialize;

use super::series::Approx;
use crate::special::{cospi, rgamma, SeriesResult};
use crate::{Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Plus,
    Minus,
}

const MAX_TERMS: usize = 400;

struct Truncated<T> {
    sum: T,
    omitted: T,
    abs_sum: T,
    used: usize,
}

/// Sums c₀ = 1, c_{n+1} = c_n·ratio(n) up to, not including, the smallest term.
fn optimal_sum<T: Real>(ratio: impl Fn(T) -> T) -> Truncated<T> {
    let mut terms = Vec::with_capacity(64);
    let mut c = T::one();
    let mut sum = T::one();
    terms.push(c);
    let mut best = (0usize, T::infinity());
    for n in 0..MAX_TERMS {
        c = c * ratio(T::from_usize_exact(n));
        if !c.is_finite() || c.abs() > T::c(1e200) {
            break;
        }
        terms.push(c);
        sum = sum + c;
        if c.abs() < best.1 {
            best = (n + 1, c.abs());
        }
        if c == T::zero() || c.abs() < T::epsilon() * T::epsilon() * sum.abs() {
            break;
        }
    }
    let m = best.0.max(1);
    let kept = &terms[..m.min(terms.len())];
    Truncated {
        sum: kept.iter().fold(T::zero(), |s, &t| s + t),
        omitted: best.1,
        abs_sum: kept.iter().fold(T::zero(), |s, &t| s + t.abs()),
        used: kept.len(),
    }
}

fn plus_series<T: Real>(a: T, k: T) -> Truncated<T> {
    let two_a2 = T::c(2.0) * a * a;
    optimal_sum(|n| {
        let m = T::c(2.0) * n;
        -(m - k) * (m + T::one() - k) / ((n + T::one()) * two_a2)
    })
}

fn minus_series<T: Real>(a: T, k: T) -> Truncated<T> {
    let two_a2 = T::c(2.0) * a * a;
    optimal_sum(|n| {
        let m = T::c(2.0) * n;
        (T::one() + k + m) * (T::c(2.0) + k + m) / ((n + T::one()) * two_a2)
    })
}

fn check<T: Real>(x: T, k: T, direction: Direction) -> Result<()> {
    let ok = match direction {
        Direction::Plus => x >= T::one(),
        Direction::Minus => x <= -T::one(),
    };
    if !ok || !k.is_finite() {
        return Err(Error::Threshold {
            x: x.f64(),
            k: k.f64(),
        });
    }
    Ok(())
}

/// ln of the exponentially large part √(2π)/Γ(-k)·a^{-k-1}·e^{a²/2}, with its sign.
fn dominant_prefactor_log<T: Real>(a: T, k: T) -> Option<(T, T)> {
    let rg = rgamma(-k);
    if rg == T::zero() {
        return None;
    }
    let ln =
        T::c(0.5) * T::TAU().ln() + rg.abs().ln() - (k + T::one()) * a.ln() + a * a * T::c(0.5);
    Some((rg.signum(), ln))
}

pub(crate) fn plus<T: Real>(x: T, k: T) -> Result<(SeriesResult<T>, Approx<T>)> {
    check(x, k, Direction::Plus)?;
    let s = plus_series(x, k);
    let xk = x.powf(k);
    let value = xk * s.sum;
    let trunc = xk.abs() * s.omitted;
    let err = trunc + T::c(4.0) * T::epsilon() * xk.abs() * s.abs_sum;
    Ok((
        SeriesResult {
            value,
            terms_used: s.used,
            truncation_estimate: trunc,
        },
        (value, err),
    ))
}

pub(crate) fn minus<T: Real>(x: T, k: T) -> Result<(SeriesResult<T>, Approx<T>)> {
    check(x, k, Direction::Minus)?;
    let a = -x;
    let eps = T::epsilon();
    let cos = cospi(k);
    let (mut value, mut trunc, mut round, mut used) = (T::zero(), T::zero(), T::zero(), 0);
    if cos != T::zero() {
        let s1 = plus_series(a, k);
        let pa = a.powf(k) * cos;
        value = value + pa * s1.sum;
        trunc = trunc + pa.abs() * s1.omitted;
        round = round + pa.abs() * s1.abs_sum;
        used += s1.used;
    }
    if let Some((sign, ln)) = dominant_prefactor_log(a, k) {
        if ln > T::max_value().ln() - T::c(2.0) {
            return Err(Error::Overflow(format!(
                "H_{}({}) exceeds the floating-point range",
                k.f64(),
                x.f64()
            )));
        }
        let s2 = minus_series(a, k);
        let pb = sign * ln.exp();
        value = value + pb * s2.sum;
        trunc = trunc + pb.abs() * s2.omitted;
        // exp of a large argument carries its own relative error ~ eps·ln
        round = round + pb.abs() * s2.abs_sum * (T::one() + ln.abs());
        used += s2.used;
    }
    let err = trunc + T::c(4.0) * eps * round;
    Ok((
        SeriesResult {
            value,
            terms_used: used,
            truncation_estimate: trunc,
        },
        (value, err),
    ))
}

/// Optimally truncated expansion of H_k at +∞ (`Plus`) or −∞ (`Minus`).
///
/// The `Minus` form adds the cos(kπ)-weighted algebraic part and the
/// e^{x²/2}|x|^{-k-1}√(2π)/Γ(-k) part; the latter vanishes at nonnegative integer k.
pub fn hermite_asymptotic<T: Real>(x: T, k: T, direction: Direction) -> Result<SeriesResult<T>> {
    match direction {
        Direction::Plus => plus(x, k).map(|r| r.0),
        Direction::Minus => minus(x, k).map(|r| r.0),
    }
}

/// (sign, ln|H_k(x)|) for x ≤ -1 from the minus expansion, valid past the overflow threshold.
pub fn hermite_minus_log<T: Real>(x: T, k: T) -> Result<(T, T)> {
    check(x, k, Direction::Minus)?;
    let a = -x;
    let cos = cospi(k);
    let mut parts: Vec<(T, T)> = Vec::with_capacity(2);
    if cos != T::zero() {
        let s1 = plus_series(a, k);
        let v = cos * s1.sum;
        if v != T::zero() {
            parts.push((v.signum(), k * a.ln() + v.abs().ln()));
        }
    }
    if let Some((sign, ln)) = dominant_prefactor_log(a, k) {
        let s2 = minus_series(a, k);
        parts.push((sign * s2.sum.signum(), ln + s2.sum.abs().ln()));
    }
    let top = parts.iter().fold(T::neg_infinity(), |m, p| m.max(p.1));
    if parts.is_empty() || !top.is_finite() {
        return Err(Error::Threshold {
            x: x.f64(),
            k: k.f64(),
        });
    }
    let scaled = parts
        .iter()
        .fold(T::zero(), |s, p| s + p.0 * (p.1 - top).exp());
    if scaled == T::zero() {
        return Ok((T::zero(), T::neg_infinity()));
    }
    Ok((scaled.signum(), top + scaled.abs().ln()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomial_orders_are_exact() {
        let r = hermite_asymptotic(12.0_f64, 0.0, Direction::Plus).unwrap();
        assert_eq!(r.value, 1.0);
        let r = hermite_asymptotic(12.0_f64, 2.0, Direction::Plus).unwrap();
        assert_relative_eq!(r.value, 143.0, max_relative = 1e-15);
        assert_eq!(r.truncation_estimate, 0.0);
        let r = hermite_asymptotic(-12.0_f64, 3.0, Direction::Minus).unwrap();
        assert_relative_eq!(r.value, -12.0_f64.powi(3) + 36.0, max_relative = 1e-15);
    }

    #[test]
    fn minus_one_against_closed_form() {
        let x = -10.0_f64;
        let r = hermite_asymptotic(x, -1.0, Direction::Minus).unwrap();
        let exact = super::super::closed::h_minus_one(x);
        assert_relative_eq!(r.value, exact, max_relative = 1e-12);
    }

    #[test]
    fn wrong_direction_is_threshold_error() {
        assert!(matches!(
            hermite_asymptotic(5.0_f64, 1.5, Direction::Minus),
            Err(Error::Threshold { .. })
        ));
        assert!(matches!(
            hermite_asymptotic(0.5_f64, 1.5, Direction::Plus),
            Err(Error::Threshold { .. })
        ));
    }

    #[test]
    fn log_form_agrees_with_value() {
        let (s, l) = hermite_minus_log(-12.0_f64, 2.5).unwrap();
        let v = hermite_asymptotic(-12.0_f64, 2.5, Direction::Minus)
            .unwrap()
            .value;
        assert_eq!(s, v.signum());
        assert_relative_eq!(l, v.abs().ln(), max_relative = 1e-13);
        // 1/Γ(-1/2) < 0 makes H_{1/2} negative at -∞
        let (s, l) = hermite_minus_log(-100.0_f64, 0.5).unwrap();
        assert!(s < 0.0 && l > 4000.0);
    }
}
