//! The k → 0⁺ and k → -1 limits of F_k, the constant α and ψ.
//!
//! With G(q) = ∫_q^∞ (1/s - H_{-1}(s)) ds = ∫_q^∞ H_{-2}(s)/s ds one has,
//! for q ≥ 1, ∫₁^q H_{-1} = α + ln q + G(q), which keeps every quantity free of
//! cancellation on the positive axis.

use std::sync::OnceLock;

use serde::Serialize;

use crate::hermite::{h_minus_one, h_minus_two};
use crate::quad::{integrate, integrate_with, QuadConfig};
use crate::roots::newton_bracketed;
use crate::{Error, Real, Result};

/// Split point between quadrature and the analytic tail.
pub const TAIL_START: f64 = 40.0;
/// Largest t accepted by [`f_exp`].
pub const F_EXP_T_MAX: f64 = 1e4;
/// Largest t accepted by [`f_minus_ln`].
pub const F_MINUS_LN_T_MAX: f64 = 30.0;
const TAYLOR_T: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaConstant<T> {
    pub value: T,
    pub quad_error: T,
}

/// Evaluation of F_exp or F_{-ln} at t, with the abscissa it was inverted at.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitEval<T> {
    pub t: T,
    /// q with H_{-1}(q) = t, or x with H_{-2}(x)/H_{-1}(x) = t; +∞ at t = 0.
    pub abscissa: T,
    pub value: T,
    pub d1: T,
    pub d2: T,
}

/// ∫_S^∞ (H_{-1}(s) - 1/s) ds = Σ_{n≥1} (-1)ⁿ (2n-1)!!/(2n·S^{2n}), optimally truncated.
/// Returns (value, magnitude of the first omitted term).
pub fn alpha_tail<T: Real>(s: T) -> (T, T) {
    let inv2 = (s * s).recip();
    let mut dfact = T::one();
    let mut pow = T::one();
    let mut sum = T::zero();
    let mut prev = T::infinity();
    for n in 1..200usize {
        let nf = T::from_usize_exact(n);
        dfact = dfact * (T::c(2.0) * nf - T::one());
        pow = pow * inv2;
        let term = dfact * pow / (T::c(2.0) * nf);
        if term >= prev || term < T::epsilon() * T::epsilon() * sum.abs() {
            return (sum, term.min(prev));
        }
        sum = if n % 2 == 1 { sum - term } else { sum + term };
        prev = term;
    }
    (sum, prev)
}

fn compute_alpha() -> Result<AlphaConstant<f64>> {
    let cfg = QuadConfig {
        tol_abs: 1e-14,
        tol_rel: 1e-14,
        max_intervals: 4000,
    };
    // H_{-1}(s) - 1/s = -H_{-2}(s)/s
    let body = integrate_with(|s: f64| Ok(-h_minus_two(s) / s), 1.0, TAIL_START, &cfg)?;
    let (tail, omitted) = alpha_tail(TAIL_START);
    Ok(AlphaConstant {
        value: body.value + tail,
        quad_error: body.error + omitted,
    })
}

static ALPHA: OnceLock<Result<AlphaConstant<f64>>> = OnceLock::new();

/// α = ∫₁^∞ (H_{-1}(s) - 1/s) ds ≈ -0.2667, computed once per process.
pub fn alpha<T: Real>() -> Result<AlphaConstant<T>> {
    ALPHA
        .get_or_init(compute_alpha)
        .clone()
        .map(|a| AlphaConstant {
            value: T::c(a.value),
            quad_error: T::c(a.quad_error),
        })
}

/// G(q) = ∫_q^∞ H_{-2}(s)/s ds for q ≥ 1.
fn g_tail<T: Real>(q: T) -> Result<T> {
    let s0 = T::c(TAIL_START);
    if q >= s0 {
        return Ok(-alpha_tail(q).0);
    }
    let body = integrate(|s: T| Ok(h_minus_two(s) / s), q, s0)?;
    Ok(body.value - alpha_tail(s0).0)
}

/// ∫_x^1 H_{-1}(s) ds for x < 1.
fn integral_to_one<T: Real>(x: T) -> Result<T> {
    Ok(integrate(|s: T| Ok(h_minus_one(s)), x, T::one())?.value)
}

fn check_t<T: Real>(t: T, cap: f64) -> Result<()> {
    if !(t >= T::zero()) {
        return Err(Error::Domain(format!(
            "argument t = {} must be nonnegative",
            t.f64()
        )));
    }
    if t > T::c(cap) {
        return Err(Error::Overflow(format!(
            "t = {} beyond the cap {}",
            t.f64(),
            cap
        )));
    }
    Ok(())
}

/// Solves g(x) = 0 for a decreasing g given as (g, g′), expanding [lo, hi] first.
fn invert_decreasing<T: Real, F: FnMut(T) -> Result<(T, T)>>(
    mut g: F,
    mut lo: T,
    mut hi: T,
    guess: T,
) -> Result<T> {
    for _ in 0..200 {
        if g(lo)?.0 > T::zero() {
            break;
        }
        lo = lo * T::c(2.0) - T::one();
    }
    for _ in 0..2000 {
        if g(hi)?.0 < T::zero() {
            break;
        }
        hi = hi * T::c(2.0) + T::one();
    }
    newton_bracketed(g, lo, hi, guess)
}

/// q with H_{-1}(q) = t.
pub fn invert_h_minus_one<T: Real>(t: T) -> Result<T> {
    if !(t > T::zero()) || !t.is_finite() {
        return Err(Error::Domain(format!(
            "H_-1 takes values in (0, inf), got {}",
            t.f64()
        )));
    }
    let lt = t.ln();
    let hi = T::one().max(T::c(2.0) / t);
    let guess = if t < T::c(0.5) {
        T::one() / t
    } else {
        T::zero()
    };
    invert_decreasing(
        |q| {
            let h1 = h_minus_one(q);
            Ok((h1.ln() - lt, -h_minus_two(q) / h1))
        },
        -T::one(),
        hi,
        guess,
    )
}

/// x with H_{-2}(x)/H_{-1}(x) = t.
pub fn invert_ratio_minus_two<T: Real>(t: T) -> Result<T> {
    if !(t > T::zero()) || !t.is_finite() {
        return Err(Error::Domain(format!(
            "H_-2/H_-1 takes values in (0, inf), got {}",
            t.f64()
        )));
    }
    let lt = t.ln();
    let hi = T::one().max(T::c(2.0) / t);
    let lo = -(T::one().max(T::c(2.0) * t));
    let guess = if t < T::one() { T::one() / t } else { -t };
    invert_decreasing(
        |x| {
            let h1 = h_minus_one(x);
            let h2 = h_minus_two(x);
            Ok(((h2 / h1).ln() - lt, x - h1 / h2 + h2 / h1))
        },
        lo,
        hi,
        guess,
    )
}

/// F_exp(t) with both derivatives.
pub fn f_exp_eval<T: Real>(t: T) -> Result<LimitEval<T>> {
    check_t(t, F_EXP_T_MAX)?;
    if t == T::zero() {
        return Ok(LimitEval {
            t,
            abscissa: T::infinity(),
            value: T::one(),
            d1: T::zero(),
            d2: -T::one(),
        });
    }
    let q = invert_h_minus_one(t)?;
    let h2 = h_minus_two(q);
    let gate = (q * t + h2 - T::one()).abs();
    if gate > T::c(1e-10).max(T::epsilon() * T::c(1e3)) * (T::one() + (q * t).abs()) {
        return Err(Error::Domain(format!(
            "identity 1 = qH_-1 + H_-2 violated by {:e} at q = {}",
            gate.f64(),
            q.f64()
        )));
    }
    if t < T::c(TAYLOR_T) {
        let t2 = t * t;
        let value = T::one() - t2 * (T::c(0.5) + t2 * (T::c(0.125) - t2 * T::c(5.0 / 48.0)));
        let d1 = -t * (T::one() + t2 * (T::c(0.5) - t2 * T::c(5.0 / 8.0)));
        let d2 = -(T::one() + t2 * (T::c(1.5) - t2 * T::c(25.0 / 8.0)));
        return Ok(LimitEval {
            t,
            abscissa: q,
            value,
            d1,
            d2,
        });
    }
    let (value, e_psi) = if q >= T::one() {
        let f = (-g_tail(q)?).exp();
        (f, f / q)
    } else {
        let e_psi = (alpha::<T>()?.value + integral_to_one(q)?).exp();
        (q * e_psi, e_psi)
    };
    if !value.is_finite() || !e_psi.is_finite() {
        return Err(Error::Overflow(format!("F_exp({}) overflows", t.f64())));
    }
    Ok(LimitEval {
        t,
        abscissa: q,
        value,
        d1: -e_psi,
        d2: -e_psi * t / h2,
    })
}

/// (sign, ln|F_exp(t)|), finite where F_exp itself overflows; the sign is zero where F_exp vanishes.
pub fn f_exp_log<T: Real>(t: T) -> Result<(T, T)> {
    check_t(t, F_EXP_T_MAX)?;
    if t < T::c(TAYLOR_T) {
        let v = f_exp_eval(t)?.value;
        return Ok((T::one(), v.ln()));
    }
    let q = invert_h_minus_one(t)?;
    if q >= T::one() {
        return Ok((T::one(), -g_tail(q)?));
    }
    if q == T::zero() {
        return Ok((T::zero(), T::neg_infinity()));
    }
    let ln_e_psi = alpha::<T>()?.value + integral_to_one(q)?;
    Ok((q.signum(), q.abs().ln() + ln_e_psi))
}

/// F_exp(t), the k → 0⁺ limit: F_exp(H_{-1}(q)) = q·exp(α - ∫₁^q H_{-1}).
pub fn f_exp<T: Real>(t: T) -> Result<T> {
    f_exp_eval(t).map(|e| e.value)
}

/// (F′_exp(t), F″_exp(t)) = (-e^ψ, -e^ψ·H_{-1}/H_{-2}) with ψ(q) = α - ∫₁^q H_{-1}.
pub fn f_exp_derivatives<T: Real>(t: T) -> Result<(T, T)> {
    f_exp_eval(t).map(|e| (e.d1, e.d2))
}

/// ψ(q) = α - ∫₁^q H_{-1}(s) ds.
pub fn psi<T: Real>(q: T) -> Result<T> {
    if !q.is_finite() {
        return Err(Error::Domain("non-finite q".into()));
    }
    if q >= T::one() {
        Ok(-g_tail(q)? - q.ln())
    } else {
        Ok(alpha::<T>()?.value + integral_to_one(q)?)
    }
}

/// F_{-ln}(t) with both derivatives.
pub fn f_minus_ln_eval<T: Real>(t: T) -> Result<LimitEval<T>> {
    check_t(t, F_MINUS_LN_T_MAX)?;
    if t == T::zero() {
        return Ok(LimitEval {
            t,
            abscissa: T::infinity(),
            value: T::zero(),
            d1: T::zero(),
            d2: -T::one(),
        });
    }
    let x = invert_ratio_minus_two(t)?;
    let h1 = h_minus_one(x);
    let h2 = h_minus_two(x);
    let d1 = -h1;
    let d2 = -h2 * h1 * h1 / (h1 * h1 - h2);
    if t < T::c(TAYLOR_T) {
        let t2 = t * t;
        let value = -t2 * (T::c(0.5) + t2 * (T::c(0.25) - t2 / T::c(6.0)));
        let d1 = -t * (T::one() + t2 * (T::one() - t2));
        let d2 = -(T::one() + t2 * (T::c(3.0) - T::c(5.0) * t2));
        return Ok(LimitEval {
            t,
            abscissa: x,
            value,
            d1,
            d2,
        });
    }
    let value = if x >= T::one() {
        g_tail(x)? + (-h2).ln_1p()
    } else {
        -alpha::<T>()?.value - integral_to_one(x)? + h1.ln()
    };
    Ok(LimitEval {
        t,
        abscissa: x,
        value,
        d1,
        d2,
    })
}

/// F_{-ln}(t), the k → -1 limit: F_{-ln}(H_{-2}(x)/H_{-1}(x)) = ∫₁ˣ H_{-1} - α + ln H_{-1}(x).
pub fn f_minus_ln<T: Real>(t: T) -> Result<T> {
    f_minus_ln_eval(t).map(|e| e.value)
}

/// (F′_{-ln}, F″_{-ln}) = (-H_{-1}, -H_{-2}H_{-1}²/(H_{-1}² - H_{-2})) at the inverted x.
pub fn f_minus_ln_derivatives<T: Real>(t: T) -> Result<(T, T)> {
    f_minus_ln_eval(t).map(|e| (e.d1, e.d2))
}
