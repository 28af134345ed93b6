//! Gauss–Hermite verification of the functional inequalities in dimensions 1 and 2.

mod functions;
mod rule;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

pub use functions::{suite, TestFunction, STRESS_FLOOR, SUITE_NAMES};
pub use rule::{gauss_hermite_rule, QuadratureRule, MAX_RULE_ORDER};

use crate::beckner::{impr_pointwise, FkCurve};
use crate::certificate::Verdict;
use crate::limits::{f_exp_log, f_minus_ln_eval};
use crate::{Error, Real, Result};

pub const DEFAULT_ORDER: usize = 80;
pub const SLACK_REL: f64 = 1e-9;
pub const DOUBLING_TOL: f64 = 1e-7;
/// Smallest admissible f on the node set.
pub const VALUE_FLOOR: f64 = 1e-30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum InequalityId {
    #[serde(rename = "poincare")]
    Poincare,
    #[serde(rename = "beckner")]
    Beckner,
    #[serde(rename = "theorem_main")]
    TheoremMain,
    #[serde(rename = "prop_lower")]
    PropLower,
    #[serde(rename = "e_sobolev")]
    ESobolev,
    #[serde(rename = "neg_log_sobolev")]
    NegLogSobolev,
    #[serde(rename = "b_three_halves")]
    BThreeHalves,
    #[serde(rename = "scaled_R")]
    ScaledR,
}

impl InequalityId {
    pub const ALL: [InequalityId; 8] = [
        InequalityId::Poincare,
        InequalityId::Beckner,
        InequalityId::TheoremMain,
        InequalityId::PropLower,
        InequalityId::ESobolev,
        InequalityId::NegLogSobolev,
        InequalityId::BThreeHalves,
        InequalityId::ScaledR,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InequalityId::Poincare => "poincare",
            InequalityId::Beckner => "beckner",
            InequalityId::TheoremMain => "theorem_main",
            InequalityId::PropLower => "prop_lower",
            InequalityId::ESobolev => "e_sobolev",
            InequalityId::NegLogSobolev => "neg_log_sobolev",
            InequalityId::BThreeHalves => "b_three_halves",
            InequalityId::ScaledR => "scaled_R",
        }
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InequalityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown inequality '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyConfig<T> {
    pub order: usize,
    pub dim: usize,
    /// In two dimensions use g(x₁) instead of g(x₁)·g(x₂).
    pub separable: bool,
    pub slack_rel: T,
    pub doubling_tol: T,
    pub floor: T,
}

impl<T: Real> Default for VerifyConfig<T> {
    fn default() -> Self {
        Self {
            order: DEFAULT_ORDER,
            dim: 1,
            separable: false,
            slack_rel: T::c(SLACK_REL),
            doubling_tol: T::c(DOUBLING_TOL),
            floor: T::c(VALUE_FLOOR).max(T::epsilon() * T::epsilon()),
        }
    }
}

impl<T: Real> From<usize> for VerifyConfig<T> {
    fn from(order: usize) -> Self {
        Self {
            order,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport<T> {
    pub inequality_id: InequalityId,
    /// Exponent; None for the exponential and logarithmic limits.
    pub p: Option<T>,
    /// Curvature bound of the scaled measure.
    pub r: Option<T>,
    pub test_function_id: String,
    pub dim: usize,
    pub lhs: T,
    pub rhs: T,
    /// rhs - lhs, or lhs - rhs when the comparison is reversed.
    pub gap: T,
    pub slack: T,
    pub reversed: bool,
    pub verdict: Verdict,
    pub quadrature_order: usize,
    /// Largest change of lhs or rhs when the order is doubled, over max(1, |lhs|, |rhs|).
    pub doubling_shift: T,
    pub diagnostics: Vec<String>,
}

/// Weight, f and |∇f| at one node.
#[derive(Debug, Clone, Copy)]
struct Sample<T> {
    w: T,
    v: T,
    g: T,
}

fn samples<T: Real>(
    f: &TestFunction<T>,
    cfg: &VerifyConfig<T>,
    order: usize,
    r: T,
) -> Result<Vec<Sample<T>>> {
    let rule = gauss_hermite_rule::<T>(order)?;
    let s = r.sqrt().recip();
    let mut out = Vec::with_capacity(order.pow(cfg.dim as u32));
    match cfg.dim {
        1 => {
            for (&z, &w) in rule.nodes.iter().zip(&rule.weights) {
                let (v, g) = f.eval_nd(&[z * s], cfg.separable);
                out.push(Sample { w, v, g });
            }
        }
        2 => {
            for (&z1, &w1) in rule.nodes.iter().zip(&rule.weights) {
                for (&z2, &w2) in rule.nodes.iter().zip(&rule.weights) {
                    let (v, g) = f.eval_nd(&[z1 * s, z2 * s], cfg.separable);
                    out.push(Sample { w: w1 * w2, v, g });
                }
            }
        }
        d => {
            return Err(Error::Domain(format!(
                "dimension {d} unsupported; use 1 or 2"
            )))
        }
    }
    Ok(out)
}

fn check_floor<T: Real>(s: &[Sample<T>], floor: T, f: &TestFunction<T>) -> Result<()> {
    match s.iter().find(|x| !(x.v >= floor)) {
        Some(x) => Err(Error::Domain(format!(
            "{f} = {} below the floor {} on the node set",
            x.v.f64(),
            floor.f64()
        ))),
        None => Ok(()),
    }
}

struct Spec<T> {
    id: InequalityId,
    p: Option<T>,
    r: Option<T>,
    reversed: bool,
    needs_floor: bool,
}

/// Evaluates both sides at the configured and the doubled order and assembles the report.
fn run<T: Real, S>(
    spec: Spec<T>,
    f: &TestFunction<T>,
    cfg: &VerifyConfig<T>,
    sides: S,
) -> Result<VerificationReport<T>>
where
    S: Fn(&[Sample<T>], T) -> Result<(T, T)>,
{
    if cfg.order == 0 || cfg.order > MAX_RULE_ORDER {
        return Err(Error::Domain(format!(
            "quadrature order {} outside 1..={MAX_RULE_ORDER}",
            cfg.order
        )));
    }
    let other = if 2 * cfg.order <= MAX_RULE_ORDER {
        2 * cfg.order
    } else {
        cfg.order / 2
    };
    let r = spec.r.unwrap_or_else(T::one);
    let a = samples(f, cfg, cfg.order, r)?;
    let b = samples(f, cfg, other.max(1), r)?;
    if spec.needs_floor {
        check_floor(&a, cfg.floor, f)?;
        check_floor(&b, cfg.floor, f)?;
    }
    let reference = mean(&a, |x| x.v);
    let (lhs, rhs) = sides(&a, reference)?;
    let (lhs2, rhs2) = sides(&b, reference)?;
    let scale = T::one().max(lhs.abs()).max(rhs.abs());
    let shift = (lhs - lhs2).abs().max((rhs - rhs2).abs()) / scale;
    let gap = if spec.reversed { lhs - rhs } else { rhs - lhs };
    let slack = cfg.slack_rel * scale;
    let verdict = if gap >= -slack {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let mut diagnostics = Vec::new();
    if !(shift < cfg.doubling_tol) {
        diagnostics.push(format!(
            "order {} vs {} shifts the sides by {:.3e}",
            cfg.order,
            other,
            shift.f64()
        ));
    }
    if spec.reversed {
        diagnostics.push("reversed comparison".into());
    }
    Ok(VerificationReport {
        inequality_id: spec.id,
        p: spec.p,
        r: spec.r,
        test_function_id: f.id(),
        dim: cfg.dim,
        lhs,
        rhs,
        gap,
        slack,
        reversed: spec.reversed,
        verdict,
        quadrature_order: cfg.order,
        doubling_shift: shift,
        diagnostics,
    })
}

fn mean<T: Real>(s: &[Sample<T>], mut g: impl FnMut(&Sample<T>) -> T) -> T {
    s.iter().fold(T::zero(), |acc, x| acc + x.w * g(x))
}

fn try_mean<T: Real>(s: &[Sample<T>], mut g: impl FnMut(&Sample<T>) -> Result<T>) -> Result<T> {
    s.iter().try_fold(T::zero(), |acc, x| Ok(acc + x.w * g(x)?))
}

fn order_for<T: Real>(p: T) -> Result<T> {
    if !p.is_finite() || p == T::zero() || p == T::one() {
        return Err(Error::Domain(format!(
            "p = {} has no finite order",
            p.f64()
        )));
    }
    Ok((p - T::one()).recip())
}

/// ∫f² - (∫f)² ≤ ∫|∇f|².
pub fn verify_poincare<T: Real>(
    f: &TestFunction<T>,
    cfg: impl Into<VerifyConfig<T>>,
) -> Result<VerificationReport<T>> {
    let cfg = cfg.into();
    let spec = Spec {
        id: InequalityId::Poincare,
        p: Some(T::c(2.0)),
        r: None,
        reversed: false,
        needs_floor: false,
    };
    run(spec, f, &cfg, |s, _| {
        let m = mean(s, |x| x.v);
        Ok((mean(s, |x| x.v * x.v) - m * m, mean(s, |x| x.g * x.g)))
    })
}

/// ∫f^p - (∫f)^p ≤ (p(p-1)/2)∫f^{p-2}|∇f|² for p ∈ (1, 2].
pub fn verify_beckner<T: Real>(
    p: T,
    f: &TestFunction<T>,
    cfg: impl Into<VerifyConfig<T>>,
) -> Result<VerificationReport<T>> {
    let cfg = cfg.into();
    if !(p > T::one() && p <= T::c(2.0)) {
        return Err(Error::Domain(format!("p = {} outside (1, 2]", p.f64())));
    }
    let spec = Spec {
        id: InequalityId::Beckner,
        p: Some(p),
        r: None,
        reversed: false,
        needs_floor: true,
    };
    run(spec, f, &cfg, |s, _| {
        let lhs = mean(s, |x| x.v.powf(p)) - mean(s, |x| x.v).powf(p);
        let rhs = p * (p - T::one()) * T::c(0.5) * mean(s, |x| x.v.powf(p - T::c(2.0)) * x.g * x.g);
        Ok((lhs, rhs))
    })
}

fn theorem_sides<T: Real>(s: &[Sample<T>], p: T, curve: &FkCurve<T>, r: T) -> Result<(T, T)> {
    let root = r.sqrt();
    let lhs = try_mean(s, |x| {
        Ok(x.v.powf(p) * curve.eval(x.g / (x.v * root))?.value)
    })?;
    Ok((lhs, mean(s, |x| x.v).powf(p)))
}

/// ∫f^p F_{1/(p-1)}(|∇f|/f) ≤ (∫f)^p, reversed for p ∈ (0, 1).
pub fn verify_theorem<T: Real>(
    p: T,
    f: &TestFunction<T>,
    cfg: impl Into<VerifyConfig<T>>,
) -> Result<VerificationReport<T>> {
    scaled_theorem(InequalityId::TheoremMain, None, p, f, &cfg.into())
}

/// The theorem for the Gaussian with covariance Id/R, via x = z/√R and t = |∇f|/(f√R).
pub fn verify_scaled<T: Real>(
    r: T,
    p: T,
    f: &TestFunction<T>,
    cfg: impl Into<VerifyConfig<T>>,
) -> Result<VerificationReport<T>> {
    if !(r > T::zero()) || !r.is_finite() {
        return Err(Error::Domain(format!("R = {} must be positive", r.f64())));
    }
    scaled_theorem(InequalityId::ScaledR, Some(r), p, f, &cfg.into())
}

fn scaled_theorem<T: Real>(
    id: InequalityId,
    r: Option<T>,
    p: T,
    f: &TestFunction<T>,
    cfg: &VerifyConfig<T>,
) -> Result<VerificationReport<T>> {
    let k = order_for(p)?;
    let curve = FkCurve::new(k)?;
    let reversed = p > T::zero() && p < T::one();
    let spec = Spec {
        id,
        p: Some(p),
        r,
        reversed,
        needs_floor: true,
    };
    let rr = r.unwrap_or_else(T::one);
    run(spec, f, cfg, |s, _| theorem_sides(s, p, &curve, rr))
}

/// ∫f^p - (∫f)^p ≤ ∫f^p(1 - F_{1/(p-1)}(|∇f|/f)) for p ∈ (1, 2].
pub fn verify_prop_lower<T: Real>(
    p: T,
    f: &TestFunction<T>,
    cfg: impl Into<VerifyConfig<T>>,
) -> Result<VerificationReport<T>> {
    let cfg = cfg.into();
    if !(p > T::one() && p <= T::c(2.0)) {
        return Err(Error::Domain(format!("p = {} outside (1, 2]", p.f64())));
    }
    let curve = FkCurve::from_p(p)?;
    let spec = Spec {
        id: InequalityId::PropLower,
        p: Some(p),
        r: None,
        reversed: false,
        needs_floor: true,
    };
    run(spec, f, &cfg, |s, _| {
        let lhs = mean(s, |x| x.v.powf(p)) - mean(s, |x| x.v).powf(p);
        let rhs = try_mean(s, |x| {
            Ok(x.v.powf(p) * (T::one() - curve.eval(x.g / x.v)?.value))
        })?;
        Ok((lhs, rhs))
    })
}

/// Beckner's bound (first) against the improved bound (second) for p ∈ (1, 2].
pub fn verify_beckner_comparison<T: Real>(
    p: T,
    f: &TestFunction<T>,
    cfg: impl Into<VerifyConfig<T>>,
) -> Result<(VerificationReport<T>, VerificationReport<T>)> {
    let cfg = cfg.into();
    Ok((verify_beckner(p, f, cfg)?, verify_prop_lower(p, f, cfg)?))
}

/// The p = 3/2 improvement with the closed-form right side.
pub fn verify_b_three_halves<T: Real>(
    f: &TestFunction<T>,
    cfg: impl Into<VerifyConfig<T>>,
) -> Result<VerificationReport<T>> {
    let cfg = cfg.into();
    let p = T::c(1.5);
    let spec = Spec {
        id: InequalityId::BThreeHalves,
        p: Some(p),
        r: None,
        reversed: false,
        needs_floor: true,
    };
    run(spec, f, &cfg, |s, _| {
        let lhs = mean(s, |x| x.v.powf(p)) - mean(s, |x| x.v).powf(p);
        let rhs = try_mean(s, |x| impr_pointwise(x.v, x.g).map(|r| r.0))?;
        Ok((lhs, rhs))
    })
}

/// ∫e^f F_exp(|∇f|) ≤ exp(∫f); both sides are reported times e^{-∫f}, each node term summed in log space.
pub fn verify_e_sobolev<T: Real>(
    f: &TestFunction<T>,
    cfg: impl Into<VerifyConfig<T>>,
) -> Result<VerificationReport<T>> {
    let cfg = cfg.into();
    if !f.exp_integrable(cfg.dim, cfg.separable) {
        return Err(Error::Domain(format!(
            "e^f is not Gaussian-integrable for f = {f}"
        )));
    }
    let spec = Spec {
        id: InequalityId::ESobolev,
        p: None,
        r: None,
        reversed: false,
        needs_floor: false,
    };
    let mut rep = run(spec, f, &cfg, |s, reference| {
        let lhs = s.iter().try_fold(T::zero(), |acc, x| {
            if x.w == T::zero() {
                return Ok(acc);
            }
            let (sign, ln_abs) = if x.g == T::zero() {
                (T::one(), T::zero())
            } else {
                f_exp_log(x.g)?
            };
            Ok::<T, Error>(acc + sign * (x.w.ln() + x.v - reference + ln_abs).exp())
        })?;
        Ok((lhs, (mean(s, |x| x.v) - reference).exp()))
    })?;
    rep.diagnostics.push("sides scaled by exp(-mean f)".into());
    Ok(rep)
}

/// ∫(-ln f) + ln ∫f ≤ ∫ -F_{-ln}(|∇f|/f).
pub fn verify_neg_log_sobolev<T: Real>(
    f: &TestFunction<T>,
    cfg: impl Into<VerifyConfig<T>>,
) -> Result<VerificationReport<T>> {
    let cfg = cfg.into();
    let spec = Spec {
        id: InequalityId::NegLogSobolev,
        p: None,
        r: None,
        reversed: false,
        needs_floor: true,
    };
    run(spec, f, &cfg, |s, _| {
        let lhs = mean(s, |x| -x.v.ln()) + mean(s, |x| x.v).ln();
        let rhs = try_mean(s, |x| {
            let t = x.g / x.v;
            Ok(if t == T::zero() {
                T::zero()
            } else {
                -f_minus_ln_eval(t)?.value
            })
        })?;
        Ok((lhs, rhs))
    })
}

/// Dispatches on the inequality; `p` and `r` are required where the inequality has them.
pub fn verify<T: Real>(
    id: InequalityId,
    p: Option<T>,
    r: Option<T>,
    f: &TestFunction<T>,
    cfg: &VerifyConfig<T>,
) -> Result<VerificationReport<T>> {
    let need =
        |v: Option<T>, name: &str| v.ok_or_else(|| Error::Domain(format!("{id} needs --{name}")));
    match id {
        InequalityId::Poincare => verify_poincare(f, *cfg),
        InequalityId::Beckner => verify_beckner(need(p, "p")?, f, *cfg),
        InequalityId::TheoremMain => verify_theorem(need(p, "p")?, f, *cfg),
        InequalityId::PropLower => verify_prop_lower(need(p, "p")?, f, *cfg),
        InequalityId::ESobolev => verify_e_sobolev(f, *cfg),
        InequalityId::NegLogSobolev => verify_neg_log_sobolev(f, *cfg),
        InequalityId::BThreeHalves => verify_b_three_halves(f, *cfg),
        InequalityId::ScaledR => verify_scaled(need(r, "R")?, need(p, "p")?, f, *cfg),
    }
}

/// One result per member, in suite order.
pub fn verify_suite<T: Real>(
    id: InequalityId,
    p: Option<T>,
    r: Option<T>,
    members: &[TestFunction<T>],
    cfg: &VerifyConfig<T>,
) -> Vec<(TestFunction<T>, Result<VerificationReport<T>>)> {
    members
        .par_iter()
        .map(|f| (*f, verify(id, p, r, f, cfg)))
        .collect()
}
