//! Subcommand implementations.

use std::fmt;

use beckner_core::certificate::{certify_with, GridSpec, MVariant, Verdict};
use beckner_core::limits::{alpha, f_exp_eval, f_minus_ln_eval, LimitEval};
use beckner_core::verify::{suite, verify_suite, InequalityId, VerificationReport, VerifyConfig, MAX_RULE_ORDER};
use beckner_core::{hermite, zero_table, FkCurve};

use crate::args::{CertifyArgs, Cli, Command, ConstArgs, ConstName, CurveArgs, EvalArgs, EvalFn, VerifyArgs, ZerosArgs};
use crate::record::{OutputRecord, Status, Value};

pub const MAX_POINTS: usize = 1_000_000;

/// Bad flags or configuration; maps to exit code 2.
#[derive(Debug, Clone, PartialEq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(msg: impl Into<String>) -> Result<T, UsageError> {
    Err(UsageError(msg.into()))
}

/// A single value or lo:hi:step, inclusive of hi up to rounding.
pub fn parse_range(s: &str) -> Result<Vec<f64>, UsageError> {
    let num = |p: &str| p.trim().parse::<f64>().map_err(|_| UsageError(format!("'{p}' is not a number in '{s}'")));
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [v] => {
            let v = num(v)?;
            if !v.is_finite() {
                return usage(format!("'{s}' is not finite"));
            }
            Ok(vec![v])
        }
        [lo, hi, step] => {
            let (lo, hi, step) = (num(lo)?, num(hi)?, num(step)?);
            if !(lo.is_finite() && hi.is_finite() && step.is_finite()) || step <= 0.0 || hi < lo {
                return usage(format!("range '{s}' needs finite lo <= hi and step > 0"));
            }
            let n = ((hi - lo) / step * (1.0 + 1e-12) + 1e-9).floor() as usize + 1;
            if n > MAX_POINTS {
                return usage(format!("range '{s}' has more than {MAX_POINTS} points"));
            }
            Ok((0..n).map(|i| lo + step * i as f64).collect())
        }
        _ => usage(format!("'{s}' is neither a number nor lo:hi:step")),
    }
}

fn check_config(cli: &Cli) -> Result<(), UsageError> {
    if !(cli.tol_abs >= 0.0) || !(cli.tol_rel >= 0.0) {
        return usage("tolerances must be nonnegative");
    }
    if cli.quad_order == 0 || cli.quad_order > MAX_RULE_ORDER {
        return usage(format!("quadrature order must lie in 1..={MAX_RULE_ORDER}"));
    }
    Ok(())
}

pub fn run(cli: &Cli) -> Result<Vec<OutputRecord>, UsageError> {
    check_config(cli)?;
    match &cli.command {
        Command::Eval(a) => eval(cli, a),
        Command::Certify(a) => certify(a),
        Command::Verify(a) => verify(cli, a),
        Command::Const(a) => constant(a),
        Command::Curve(a) => curve(a),
        Command::Zeros(a) => zeros(a),
    }
}

fn limit_outputs(rec: &mut OutputRecord, e: &LimitEval<f64>) {
    rec.output("abscissa", e.abscissa);
    rec.output("value", e.value);
    rec.output("d1", e.d1);
    rec.output("d2", e.d2);
}

fn eval(cli: &Cli, a: &EvalArgs) -> Result<Vec<OutputRecord>, UsageError> {
    let points = parse_range(&a.at)?;
    let name = match a.function {
        EvalFn::H => "H",
        EvalFn::F => "F",
        EvalFn::Fexp => "Fexp",
        EvalFn::Fln => "Fln",
    };
    let k = match (a.function, a.k) {
        (EvalFn::H | EvalFn::F, None) => return usage(format!("--fn {name} needs --k")),
        (_, k) => k,
    };
    let base = |v: f64| {
        let r = OutputRecord::new("eval").input("fn", name);
        let r = match k {
            Some(k) => r.input("k", k),
            None => r,
        };
        r.input(if a.function == EvalFn::H { "x" } else { "t" }, v)
    };
    let curve = match (a.function, k) {
        (EvalFn::F, Some(k)) => Some(FkCurve::new(k)),
        _ => None,
    };
    let mut out = Vec::with_capacity(points.len());
    for &v in &points {
        let rec = base(v);
        let rec = match a.function {
            EvalFn::H => match hermite(v, k.unwrap_or_default()) {
                Ok(e) => {
                    let mut r = rec;
                    r.output("value", e.value);
                    r.output("dx", e.dx);
                    r.output("dxx", e.dxx);
                    r.output("regime", e.regime.name());
                    r.output("est_error", e.est_error);
                    let scale = e.value.abs().max(e.dx.abs() / (1.0 + v.abs()));
                    if e.est_error > cli.tol_rel && e.est_error * scale > cli.tol_abs {
                        r.status = Status::Fail;
                        r.diagnostics.push(format!(
                            "error estimate {:.3e} exceeds tol_rel {:.1e} and tol_abs {:.1e}",
                            e.est_error, cli.tol_rel, cli.tol_abs
                        ));
                    }
                    r
                }
                Err(e) => rec.error(e),
            },
            EvalFn::F => match curve.as_ref().map(|c| c.as_ref().map_err(Clone::clone).and_then(|c| c.eval(v))) {
                Some(Ok(e)) => {
                    let mut r = rec;
                    r.output("q", e.q);
                    r.output("value", e.value);
                    r.output("d1", e.d1);
                    r.output("d2", e.d2);
                    r.output("route", e.route.name());
                    r
                }
                Some(Err(e)) => rec.error(e),
                None => unreachable!("F always has a curve"),
            },
            EvalFn::Fexp => match f_exp_eval(v) {
                Ok(e) => {
                    let mut r = rec;
                    limit_outputs(&mut r, &e);
                    r
                }
                Err(e) => rec.error(e),
            },
            EvalFn::Fln => match f_minus_ln_eval(v) {
                Ok(e) => {
                    let mut r = rec;
                    limit_outputs(&mut r, &e);
                    r
                }
                Err(e) => rec.error(e),
            },
        };
        out.push(rec);
    }
    Ok(out)
}

fn parse_variant(s: &str) -> Result<MVariant<f64>, UsageError> {
    match s.trim() {
        "exp" => Ok(MVariant::Exp),
        "ln" => Ok(MVariant::MinusLn),
        other => other
            .parse::<f64>()
            .map(MVariant::Power)
            .map_err(|_| UsageError(format!("--k value '{other}' is not a number, exp or ln"))),
    }
}

fn certify(a: &CertifyArgs) -> Result<Vec<OutputRecord>, UsageError> {
    let grid: GridSpec<f64> = a.grid.parse().map_err(|e| UsageError(format!("--grid: {e}")))?;
    let variants = a.k.iter().map(|s| parse_variant(s)).collect::<Result<Vec<_>, _>>()?;
    let mut out = Vec::with_capacity(variants.len());
    for v in variants {
        let rec = OutputRecord::new("certify")
            .input("k", match v {
                MVariant::Power(k) => Value::Number(k),
                other => Value::Text(other.label()),
            })
            .input("grid", grid.to_string())
            .input("fd", a.fd);
        out.push(match certify_with(v, &grid, a.fd) {
            Ok(r) => {
                let mut rec = rec;
                rec.output("points", r.points);
                rec.output("max_det_residual", r.max_det_residual);
                rec.output("trace_sign_violations", r.trace_sign_violations);
                rec.output("bracket_deviation", r.bracket_deviation);
                if r.fd_checked {
                    rec.output("fd_agreement", r.fd_agreement);
                }
                rec.output("trace_sign", if v.trace_sign() > 0.0 { "+" } else { "-" });
                rec.output("verdict", verdict_name(r.verdict));
                if r.verdict == Verdict::Fail {
                    rec.status = Status::Fail;
                }
                rec
            }
            Err(e) => rec.error(e),
        });
    }
    Ok(out)
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
    }
}

fn report_record(base: OutputRecord, r: &VerificationReport<f64>) -> OutputRecord {
    let mut rec = base;
    rec.output("lhs", r.lhs);
    rec.output("rhs", r.rhs);
    rec.output("gap", r.gap);
    rec.output("slack", r.slack);
    rec.output("reversed", r.reversed);
    rec.output("doubling_shift", r.doubling_shift);
    rec.output("verdict", verdict_name(r.verdict));
    rec.diagnostics.extend(r.diagnostics.iter().cloned());
    if r.verdict == Verdict::Fail {
        rec.status = Status::Fail;
    }
    rec
}

fn verify(cli: &Cli, a: &VerifyArgs) -> Result<Vec<OutputRecord>, UsageError> {
    let id: InequalityId = a.ineq.parse().map_err(|e| UsageError(format!("--ineq: {e}")))?;
    let needs_p = matches!(
        id,
        InequalityId::Beckner | InequalityId::TheoremMain | InequalityId::PropLower | InequalityId::ScaledR
    );
    if needs_p && a.p.is_none() {
        return usage(format!("--ineq {id} needs --p"));
    }
    if id == InequalityId::ScaledR && a.r.is_none() {
        return usage("--ineq scaled_R needs --R");
    }
    let members = suite::<f64>(&a.suite).map_err(|e| UsageError(format!("--suite: {e}")))?;
    let order = a.order.unwrap_or(cli.quad_order);
    if order == 0 || order > MAX_RULE_ORDER {
        return usage(format!("--order must lie in 1..={MAX_RULE_ORDER}"));
    }
    let cfg = VerifyConfig { order, dim: a.dim as usize, ..VerifyConfig::default() };
    let p = if needs_p || id == InequalityId::Poincare || id == InequalityId::BThreeHalves { a.p } else { None };
    let results = verify_suite(id, p, a.r, &members, &cfg);
    Ok(results
        .into_iter()
        .map(|(f, r)| {
            let mut base = OutputRecord::new("verify").input("ineq", id.name()).input("f", f.id());
            if let Some(p) = a.p {
                base = base.input("p", p);
            }
            if let Some(r) = a.r {
                base = base.input("R", r);
            }
            base = base.input("order", order).input("dim", a.dim as usize);
            match r {
                Ok(rep) => report_record(base, &rep),
                Err(e) => base.error(e),
            }
        })
        .collect())
}

fn constant(a: &ConstArgs) -> Result<Vec<OutputRecord>, UsageError> {
    let rec = OutputRecord::new("const").input("name", "alpha");
    Ok(vec![match a.name {
        ConstName::Alpha => match alpha::<f64>() {
            Ok(c) => {
                let mut r = rec;
                r.output("value", c.value);
                r.output("quad_error", c.quad_error);
                r
            }
            Err(e) => rec.error(e),
        },
    }])
}

fn curve(a: &CurveArgs) -> Result<Vec<OutputRecord>, UsageError> {
    let ts = parse_range(&a.t)?;
    let c = FkCurve::new(a.k);
    let p = 1.0 + 1.0 / a.k;
    Ok(ts
        .into_iter()
        .map(|t| {
            let rec = OutputRecord::new("curve").input("k", a.k).input("t", t);
            let c = match &c {
                Ok(c) => c,
                Err(e) => return rec.error(e),
            };
            match c.eval(t) {
                Ok(e) => {
                    let mut r = rec;
                    r.output("value", e.value);
                    r.output("route", e.route.name());
                    if a.with_bounds {
                        r.output("lower_bound", 1.0 - p * (p - 1.0) * t * t / 2.0);
                    }
                    if t > 0.0 {
                        match c.asymptotic(t) {
                            Ok(v) => r.output("asymptotic", v),
                            Err(e) => r.diagnostics.push(format!("asymptotic: {e}")),
                        }
                    }
                    r
                }
                Err(e) => rec.error(e),
            }
        })
        .collect())
}

fn zeros(a: &ZerosArgs) -> Result<Vec<OutputRecord>, UsageError> {
    Ok(parse_range(&a.k)?
        .into_iter()
        .map(|k| {
            let rec = OutputRecord::new("zeros").input("k", k);
            match zero_table(k) {
                Ok(z) => {
                    let mut r = rec;
                    r.output("rightmost", z.rightmost);
                    r.output("leftmost", z.leftmost);
                    r.output("zero_count", z.zero_count);
                    r
                }
                Err(e) => rec.error(e),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0.5").unwrap(), vec![0.5]);
        assert_eq!(parse_range("0:1:0.25").unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(parse_range("0:3:0.1").unwrap().len(), 31);
        assert_eq!(parse_range("-2:-1:0.5").unwrap(), vec![-2.0, -1.5, -1.0]);
        assert!(parse_range("1:0:0.1").is_err());
        assert!(parse_range("0:1:0").is_err());
        assert!(parse_range("a").is_err());
        assert!(parse_range("0:1").is_err());
    }
}
