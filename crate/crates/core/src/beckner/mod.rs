//! The improvement function F_k, defined by F_k(|H′_k(q)/H_k(q)|) = H_{k+1}(q)/H_k(q)^{1+1/k}
//! for q ∈ (R_k, ∞).

use serde::Serialize;

use crate::hermite::{hermite, HermiteEval, MAX_ORDER};
use crate::limits::{f_exp_eval, f_minus_ln_eval};
use crate::roots::newton_bracketed;
use crate::special::ln_gamma;
use crate::zeros::rightmost_zero;
use crate::{Error, Real, Result};

/// |k| or |k + 1| below this routes to the limit functions.
pub const LIMIT_BAND: f64 = 1e-3;
/// t / min(1, |k|) below this uses the Taylor polynomial.
pub const TAYLOR_BAND: f64 = 1e-3;
/// For k > 0, t above this uses the t → ∞ form.
pub const POSITIVE_ASYMPTOTIC_T: f64 = 1e6;
/// For k < 0, t above this uses the t → ∞ form.
pub const NEGATIVE_ASYMPTOTIC_T: f64 = 30.0;
/// For k < 0, largest admissible t.
pub const NEGATIVE_T_MAX: f64 = 200.0;
/// Inversion brackets stay this far right of R_k.
pub const ROOT_CLEARANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FkRoute {
    Implicit,
    Taylor,
    Asymptotic,
    /// F_exp(t/|k|) for |k| < 1e-3.
    LimitExp,
    /// 1 + (k + 1)·F_{-ln}(t) for |k + 1| < 1e-3.
    LimitMinusLn,
}

impl FkRoute {
    pub fn name(self) -> &'static str {
        match self {
            FkRoute::Implicit => "implicit",
            FkRoute::Taylor => "taylor",
            FkRoute::Asymptotic => "asymptotic",
            FkRoute::LimitExp => "limit_exp",
            FkRoute::LimitMinusLn => "limit_minus_ln",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FkEval<T> {
    pub t: T,
    /// Inverted parameter; +∞ at t = 0, the leading-order estimates |k|/t on the Taylor route
    /// and R_k or -t on the asymptotic route, and the limit function's abscissa on the limit routes.
    pub q: T,
    pub value: T,
    pub d1: T,
    pub d2: T,
    pub route: FkRoute,
}

/// F_k for a fixed order, with R_k and H′_k(R_k) resolved once.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FkCurve<T> {
    pub k: T,
    pub p: T,
    /// R_k for k > 0, -∞ otherwise.
    pub q_domain_left: T,
    /// H′_k(R_k) for k > 0, NaN otherwise.
    pub slope_at_root: T,
}

fn sign<T: Real>(k: T) -> T {
    if k > T::zero() {
        T::one()
    } else {
        -T::one()
    }
}

impl<T: Real> FkCurve<T> {
    pub fn new(k: T) -> Result<Self> {
        if !k.is_finite() || k == T::zero() || k == -T::one() {
            return Err(Error::Domain(format!(
                "F_k is undefined at k = {}",
                k.f64()
            )));
        }
        if k.abs() > T::c(MAX_ORDER) {
            return Err(Error::UnsupportedOrder(k.f64()));
        }
        let p = T::one() + k.recip();
        let (left, slope) = if k > T::c(LIMIT_BAND) {
            let r = rightmost_zero(k)?;
            (r, hermite(r, k)?.dx)
        } else {
            (T::neg_infinity(), T::nan())
        };
        Ok(Self {
            k,
            p,
            q_domain_left: left,
            slope_at_root: slope,
        })
    }

    /// Builds the curve for the exponent p = 1 + 1/k.
    pub fn from_p(p: T) -> Result<Self> {
        if !p.is_finite() || p == T::one() || p == T::zero() {
            return Err(Error::Domain(format!(
                "no finite order for p = {}",
                p.f64()
            )));
        }
        Self::new((p - T::one()).recip())
    }

    fn near_zero(&self) -> bool {
        self.k.abs() < T::c(LIMIT_BAND)
    }

    fn near_minus_one(&self) -> bool {
        (self.k + T::one()).abs() < T::c(LIMIT_BAND)
    }

    /// t(q) = sign(k)·H′_k(q)/H_k(q) with the underlying evaluation.
    pub fn t_of_q(&self, q: T) -> Result<(T, HermiteEval<T>)> {
        let e = hermite(q, self.k)?;
        Ok((sign(self.k) * e.dx / e.value, e))
    }

    /// Unique q ∈ (R_k, ∞) with t(q) = t.
    pub fn invert(&self, t: T) -> Result<T> {
        if !(t > T::zero()) {
            return Err(Error::Domain(format!(
                "invert_t needs t > 0, got {}",
                t.f64()
            )));
        }
        if !t.is_finite() {
            return Err(Error::Overflow("t is not finite".into()));
        }
        if self.k < T::zero() && t > T::c(NEGATIVE_T_MAX) {
            return Err(Error::Overflow(format!(
                "t = {} exceeds {} for k < 0",
                t.f64(),
                NEGATIVE_T_MAX
            )));
        }
        let k = self.k;
        let ak = k.abs();
        let s = sign(k);
        let lt = t.ln();
        let f = |q: T| -> Result<(T, T)> {
            let (tq, _) = self.t_of_q(q)?;
            if !(tq > T::zero()) {
                return Err(Error::Domain(format!(
                    "t(q) not positive at q = {}",
                    q.f64()
                )));
            }
            Ok((tq.ln() - lt, (q * tq - ak - s * tq * tq) / tq))
        };
        let (mut lo, mut hi) = if k > T::zero() {
            let lo = self.q_domain_left
                + T::c(ROOT_CLEARANCE).max(self.q_domain_left.abs() * T::epsilon() * T::c(8.0));
            (lo, self.q_domain_left + T::one().max(T::c(2.0) * ak / t))
        } else {
            (-(t + T::one()), T::one().max(T::c(2.0) * ak / t))
        };
        for _ in 0..200 {
            if f(hi)?.0 < T::zero() {
                break;
            }
            hi = hi + (hi - lo);
        }
        if k > T::zero() {
            if f(lo)?.0 <= T::zero() {
                return Err(Error::Overflow(format!(
                    "t = {} too large to resolve next to R_k",
                    t.f64()
                )));
            }
        } else {
            for _ in 0..200 {
                if f(lo)?.0 > T::zero() {
                    break;
                }
                lo = lo - T::one().max(lo.abs() * T::c(0.5));
            }
        }
        let guess = if t < T::one() {
            self.q_domain_left.max(T::zero()) + ak / t
        } else {
            (lo + hi) * T::c(0.5)
        };
        newton_bracketed(f, lo, hi, guess)
    }

    fn taylor(&self, t: T) -> (T, T, T) {
        let k = self.k;
        let k2 = k * k;
        let c2 = -(k + T::one()) / (T::c(2.0) * k2);
        let c4 = (k - T::one()) * (k + T::one()) / (T::c(8.0) * k2 * k2);
        let c6 = -(k - T::one()) * (k + T::one()) * (k + T::c(5.0)) / (T::c(48.0) * k2 * k2 * k2);
        let t2 = t * t;
        let value = T::one() + t2 * (c2 + t2 * (c4 + t2 * c6));
        let d1 = t * (T::c(2.0) * c2 + t2 * (T::c(4.0) * c4 + t2 * T::c(6.0) * c6));
        let d2 = T::c(2.0) * c2 + t2 * (T::c(12.0) * c4 + t2 * T::c(30.0) * c6);
        (value, d1, d2)
    }

    /// Asymptotic value with derivatives as t → ∞.
    fn asymptotic_eval(&self, t: T) -> Result<(T, T, T)> {
        let p = self.p;
        if self.k > T::zero() {
            let v = self.asymptotic(t)?;
            return Ok((v, v * p / t, v * p * (p - T::one()) / (t * t)));
        }
        let v = self.asymptotic(t)?;
        let kinv = self.k.recip();
        let a = -(t - t.recip()) * kinv;
        let d1 = v * a;
        let d2 = v * (a * a - (T::one() + (t * t).recip()) * kinv);
        Ok((v, d1, d2))
    }

    /// Leading-order F_k(t) as t → ∞.
    ///
    /// k > 0: -t^p·H′_k(R_k)^{1-p}. k < 0: (-1-k)·(√(2π)e^{t²/2}/(tΓ(-k)))^{-1/k}·e^{-(k+1)/k}.
    pub fn asymptotic(&self, t: T) -> Result<T> {
        if !(t > T::zero()) {
            return Err(Error::Domain(format!(
                "asymptotic form needs t > 0, got {}",
                t.f64()
            )));
        }
        if self.k > T::zero() {
            if !self.slope_at_root.is_finite() {
                return Err(Error::Domain("H'_k(R_k) unavailable for this order".into()));
            }
            let v = -((T::one() - self.p) * self.slope_at_root.ln() + self.p * t.ln()).exp();
            if !v.is_finite() {
                return Err(Error::Overflow(format!(
                    "asymptotic F_k({}) overflows",
                    t.f64()
                )));
            }
            return Ok(v);
        }
        let v = negative_order_asymptotic(self.k, t, true)?;
        if !v.is_finite() {
            return Err(Error::Overflow(format!(
                "asymptotic F_k({}) overflows",
                t.f64()
            )));
        }
        Ok(v)
    }

    /// F_k(t) with F′ and F″.
    pub fn eval(&self, t: T) -> Result<FkEval<T>> {
        if !(t >= T::zero()) {
            return Err(Error::Domain(format!("F_k needs t >= 0, got {}", t.f64())));
        }
        if !t.is_finite() {
            return Err(Error::Overflow("t is not finite".into()));
        }
        let k = self.k;
        let ak = k.abs();
        if self.near_zero() {
            let e = f_exp_eval(t / ak)?;
            return Ok(FkEval {
                t,
                q: e.abscissa,
                value: e.value,
                d1: e.d1 / ak,
                d2: e.d2 / (k * k),
                route: FkRoute::LimitExp,
            });
        }
        if self.near_minus_one() {
            let e = f_minus_ln_eval(t)?;
            let w = k + T::one();
            return Ok(FkEval {
                t,
                q: e.abscissa,
                value: T::one() + w * e.value,
                d1: w * e.d1,
                d2: w * e.d2,
                route: FkRoute::LimitMinusLn,
            });
        }
        if t == T::zero() {
            let (value, d1, d2) = self.taylor(t);
            return Ok(FkEval {
                t,
                q: T::infinity(),
                value,
                d1,
                d2,
                route: FkRoute::Taylor,
            });
        }
        if t < T::c(TAYLOR_BAND) * ak.min(T::one()) {
            let (value, d1, d2) = self.taylor(t);
            return Ok(FkEval {
                t,
                q: ak / t,
                value,
                d1,
                d2,
                route: FkRoute::Taylor,
            });
        }
        let asymptotic = if k > T::zero() {
            t > T::c(POSITIVE_ASYMPTOTIC_T)
        } else {
            if t > T::c(NEGATIVE_T_MAX) {
                return Err(Error::Overflow(format!(
                    "t = {} exceeds {} for k < 0",
                    t.f64(),
                    NEGATIVE_T_MAX
                )));
            }
            t > T::c(NEGATIVE_ASYMPTOTIC_T)
        };
        if asymptotic {
            let (value, d1, d2) = self.asymptotic_eval(t)?;
            let q = if k > T::zero() {
                self.q_domain_left
            } else {
                -t
            };
            return Ok(FkEval {
                t,
                q,
                value,
                d1,
                d2,
                route: FkRoute::Asymptotic,
            });
        }
        let q = self.invert(t)?;
        let e = hermite(q, k)?;
        implicit_from(t, q, k, e.value, e.dx)
    }
}

/// F_k, F′_k, F″_k from H_k(q) and H′_k(q), using only ratios to H_k and H_k^{-1/k}.
fn implicit_from<T: Real>(t: T, q: T, k: T, h: T, dh: T) -> Result<FkEval<T>> {
    let ak = k.abs();
    let r = dh / h;
    let below = r / k;
    let above = q - r;
    let power = (-h.ln() / k).exp();
    let value = above * power;
    let d1 = -((k + T::one()) / ak) * power;
    let d2 = d1 / ak * below / (T::one() - above * below);
    if !value.is_finite() || !d1.is_finite() || !d2.is_finite() {
        return Err(Error::Overflow(format!(
            "F_{}({}) is not representable",
            k.f64(),
            t.f64()
        )));
    }
    Ok(FkEval {
        t,
        q,
        value,
        d1,
        d2,
        route: FkRoute::Implicit,
    })
}

/// k < 0 leading-order form; `corrected = false` gives the form without the e^{-(k+1)/k} factor.
fn negative_order_asymptotic<T: Real>(k: T, t: T, corrected: bool) -> Result<T> {
    let ln_b = T::c(0.5) * T::TAU().ln() + t * t * T::c(0.5) - t.ln() - ln_gamma(-k)?;
    let mut ln = -ln_b / k;
    if corrected {
        ln = ln - (k + T::one()) / k;
    }
    Ok((-T::one() - k) * ln.exp())
}

fn check_order<T: Real>(k: T) -> Result<()> {
    if !k.is_finite() || k == T::zero() || k == -T::one() {
        return Err(Error::Domain(format!(
            "F_k is undefined at k = {}",
            k.f64()
        )));
    }
    if k.abs() > T::c(MAX_ORDER) {
        return Err(Error::UnsupportedOrder(k.f64()));
    }
    Ok(())
}

/// q ∈ (R_k, ∞) with sign(k)·H′_k(q)/H_k(q) = t.
pub fn invert_t<T: Real>(k: T, t: T) -> Result<T> {
    check_order(k)?;
    FkCurve::new(k)?.invert(t)
}

/// F_k(t) with derivatives.
pub fn fk_eval<T: Real>(k: T, t: T) -> Result<FkEval<T>> {
    check_order(k)?;
    FkCurve::new(k)?.eval(t)
}

/// Leading-order F_k(t) for large t.
pub fn fk_asymptotic<T: Real>(k: T, t: T) -> Result<T> {
    check_order(k)?;
    if k < T::zero() {
        let v = negative_order_asymptotic(k, t, true)?;
        return if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Overflow(format!(
                "asymptotic F_k({}) overflows",
                t.f64()
            )))
        };
    }
    FkCurve::new(k)?.asymptotic(t)
}

/// The k < 0 form (-1-k)·(√(2π)e^{t²/2}/(tΓ(-k)))^{-1/k} without the e^{-(k+1)/k} factor.
/// F_k divided by it tends to e^{-(k+1)/k}, not 1.
pub fn fk_asymptotic_uncorrected<T: Real>(k: T, t: T) -> Result<T> {
    check_order(k)?;
    if k > T::zero() {
        return fk_asymptotic(k, t);
    }
    negative_order_asymptotic(k, t, false)
}

/// (1 - p(p-1)t²/2, F_{1/(p-1)}(t)) for p ∈ (1, 2]; the first never exceeds the second.
pub fn beckner_lower_bound<T: Real>(p: T, t: T) -> Result<(T, T)> {
    if !(p > T::one() && p <= T::c(2.0)) {
        return Err(Error::Domain(format!("p = {} outside (1, 2]", p.f64())));
    }
    if !(t >= T::zero()) {
        return Err(Error::Domain(format!(
            "t = {} must be nonnegative",
            t.f64()
        )));
    }
    let lhs = T::one() - p * (p - T::one()) * t * t * T::c(0.5);
    let rhs = FkCurve::from_p(p)?.eval(t)?.value;
    Ok((lhs, rhs))
}

/// (x^{3/2} - (2x - r)√(x + r)/√2, (3/8)x^{-1/2}y²) with r = √(x² + y²).
pub fn impr_pointwise<T: Real>(x: T, y: T) -> Result<(T, T)> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::Domain(format!("x = {} must be positive", x.f64())));
    }
    if !(y >= T::zero()) || !y.is_finite() {
        return Err(Error::Domain(format!(
            "y = {} must be nonnegative",
            y.f64()
        )));
    }
    let r = x.hypot(y);
    let lhs = x * x.sqrt() - (T::c(2.0) * x - r) * (x + r).sqrt() * T::FRAC_1_SQRT_2();
    let rhs = T::c(0.375) * y * y / x.sqrt();
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests;
