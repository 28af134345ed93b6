use beckner_core::certificate::{GridScale, MVariant};
use beckner_core::verify::{self, suite, InequalityId, VerifyConfig};
use beckner_core::{
    f_exp_eval, f_minus_ln_eval, fk_eval, hermite, hermite_in_regime, m_eval, monotone_in_x_check,
    rightmost_zero, verify_beckner_comparison, Verdict, verify_theorem, GridSpec, Regime, TestFunction,
};

const ORDERS: [f64; 12] = [-2.5, -2.0, -1.5, -0.75, -0.5, -0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0];

fn steps(lo: f64, hi: f64, h: f64) -> impl Iterator<Item = f64> {
    let n = ((hi - lo) / h).round() as usize;
    (0..=n).map(move |i| lo + h * i as f64)
}

#[test]
fn ode_residual_on_grid() {
    for k in [-2.5, -2.0, -1.5, -1.0, -0.5, 0.5, 1.0, 1.5, 2.0, 2.5, 5.0, 7.5] {
        for x in steps(-8.0, 8.0, 0.25) {
            let e = hermite(x, k).unwrap();
            let terms = [e.dxx, x * e.dx, k * e.value];
            let scale = terms.iter().fold(f64::MIN_POSITIVE, |m, v| m.max(v.abs()));
            assert!((terms[0] - terms[1] + terms[2]).abs() <= 1e-8 * scale, "k={k} x={x}");
            if k <= 0.0 {
                assert!(e.value > 0.0);
            }
        }
    }
}

#[test]
fn regimes_agree_in_overlap() {
    for k in [-7.3, -4.0, -2.5, -0.5, 0.5, 1.5, 3.7, 4.0, 6.25] {
        for x in steps(8.0, 12.0, 0.5).chain(steps(-12.0, -8.0, 0.5)) {
            let r = if x > 0.0 { Regime::AsymptPlus } else { Regime::AsymptMinus };
            let a = hermite_in_regime(x, k, r).unwrap();
            let b = hermite(x, k).unwrap();
            let rel = (a.value - b.value).abs() / b.value.abs();
            assert!(rel <= a.est_error + b.est_error + 1e-15, "k={k} x={x}: {rel} vs {}", a.est_error);
            if k.abs() <= 4.0 {
                assert!(rel <= 1e-7, "k={k} x={x}: {rel}");
            }
        }
    }
}

#[test]
fn rightmost_zero_monotone_on_grid() {
    let zs: Vec<f64> = (1..=300).map(|i| rightmost_zero(0.1 * i as f64).unwrap()).collect();
    assert!(zs.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn negative_semidefinite_when_above_minus_one() {
    let grid = GridSpec::new(0.01, 8.0, 200, GridScale::Log).unwrap();
    for k in ORDERS.into_iter().filter(|&k| k > -1.0) {
        for t in grid.points() {
            let b = match m_eval(k, 1.0, t) {
                Ok(b) => b,
                Err(_) => continue,
            };
            let (a, c, d) = b.matrix(t);
            let scale = a.abs().max(c.abs()).max(d.abs()).max(b.m.abs());
            let mean = 0.5 * (a + d);
            let rad = (0.25 * (a - d) * (a - d) + c * c).sqrt();
            assert!(mean + rad <= 1e-8 * scale, "k={k} t={t}: {}", mean + rad);
        }
    }
    for v in [MVariant::Exp, MVariant::MinusLn] {
        for t in grid.points() {
            let b = m_eval(v, 1.0, t).unwrap();
            let (a, c, d) = b.matrix(t);
            let scale = a.abs().max(c.abs()).max(d.abs()).max(b.m.abs());
            let mean = 0.5 * (a + d);
            let rad = (0.25 * (a - d) * (a - d) + c * c).sqrt();
            assert!(mean + rad <= 1e-8 * scale, "{v:?} t={t}");
        }
    }
}

#[test]
fn monotone_in_x() {
    let grid = GridSpec::new(0.01, 8.0, 100, GridScale::Log).unwrap();
    for k in [-0.5, -0.25, -2.0, -1.5] {
        let r = monotone_in_x_check(k, &grid).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
    }
}

#[test]
fn limit_functions_decrease() {
    let mut last = (f64::INFINITY, f64::INFINITY);
    for t in steps(0.0, 3.0, 0.05) {
        let (e, l) = (f_exp_eval(t).unwrap(), f_minus_ln_eval(t).unwrap());
        assert!(e.value < last.0 && l.value < last.1, "t={t}");
        if t > 0.0 {
            assert!(e.d1 < 0.0 && l.d1 < 0.0);
        }
        last = (e.value, l.value);
    }
}

#[test]
fn order_minus_one_limit() {
    for t in [0.2, 0.5, 1.0] {
        let target = f_minus_ln_eval(t).unwrap().value;
        for side in [-1.0, 1.0] {
            let v: Vec<f64> = [0.02, 0.01]
                .iter()
                .map(|&d| {
                    let k = -1.0 + side * d;
                    (fk_eval(k, t).unwrap().value - 1.0) / (k + 1.0)
                })
                .collect();
            let extrapolated = 2.0 * v[1] - v[0];
            assert!((extrapolated - target).abs() < 1e-3, "t={t} side={side}");
        }
    }
}

#[test]
fn separable_two_dimensional_matches_one_dimensional() {
    let members = suite::<f64>("all").unwrap();
    for f in &members {
        let one = verify_theorem(1.5, f, VerifyConfig::from(60)).unwrap();
        let cfg = VerifyConfig { order: 60, dim: 2, separable: true, ..VerifyConfig::default() };
        let two = verify_theorem(1.5, f, cfg).unwrap();
        assert!((one.lhs - two.lhs).abs() <= 1e-9 * one.lhs.abs().max(1.0), "{f}");
        assert!((one.rhs - two.rhs).abs() <= 1e-9 * one.rhs.abs().max(1.0), "{f}");
    }
}

#[test]
fn sharpness_trend() {
    for p in [1.5, 2.0, 3.0, -1.0] {
        let gaps: Vec<f64> = [0.4, 0.2, 0.1, 0.05]
            .iter()
            .map(|&eps| {
                let r = verify_theorem(p, &TestFunction::Exp { eps }, VerifyConfig::<f64>::default()).unwrap();
                r.gap.abs() / r.rhs.abs()
            })
            .collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]), "p={p}: {gaps:?}");
        let ratio = |g: f64, e: f64| g / (e * e);
        assert!(ratio(gaps[3], 0.05) < ratio(gaps[0], 0.4), "p={p}");
    }
}

#[test]
fn reversed_range_passes() {
    let members = suite::<f64>("all").unwrap();
    for p in [0.25, 0.5, 0.75] {
        for f in &members {
            let r = verify::verify(InequalityId::TheoremMain, Some(p), None, f, &VerifyConfig::default()).unwrap();
            assert!(r.reversed);
            assert_eq!(r.verdict, Verdict::Pass, "p={p} {f}");
        }
    }
}

#[test]
fn proposition_dominates_beckner() {
    for f in suite::<f64>("all").unwrap() {
        for p in [1.25, 1.5, 2.0] {
            let (a, b) = verify_beckner_comparison(p, &f, VerifyConfig::default()).unwrap();
            assert!(b.rhs <= a.rhs + 1e-12 * a.rhs.abs().max(1.0), "p={p} {f}");
            assert_eq!(b.verdict, Verdict::Pass);
        }
    }
}

#[test]
fn e_sobolev_is_the_large_p_limit() {
    let g = TestFunction::Linear { a: 0.0, b: 0.3 };
    let target = beckner_core::verify_e_sobolev(&g, VerifyConfig::<f64>::default()).unwrap();
    let sides: Vec<(f64, f64)> = [20.0, 50.0, 100.0]
        .iter()
        .map(|&p| {
            let r = verify_theorem(p, &TestFunction::Exp { eps: 0.3 / p }, VerifyConfig::<f64>::default()).unwrap();
            (r.lhs, r.rhs)
        })
        .collect();
    let lhs = 2.0 * sides[2].0 - sides[1].0;
    let rhs = 2.0 * sides[2].1 - sides[1].1;
    assert!((lhs - target.lhs).abs() < 1e-4, "{lhs} vs {}", target.lhs);
    assert!((rhs - target.rhs).abs() < 1e-4, "{rhs} vs {}", target.rhs);
    assert!((sides[0].0 - target.lhs).abs() > (lhs - target.lhs).abs());
}
