use beckner_core::{
    beckner_lower_bound, fk_eval, gamma, hermite, hermite_poly, impr_pointwise, invert_t,
    kummer_1f1, rightmost_zero, FkCurve,
};
use proptest::prelude::*;

const ORDERS: [f64; 12] = [-2.5, -2.0, -1.5, -0.75, -0.5, -0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0];

fn ode_residual(x: f64, k: f64) -> f64 {
    let e = hermite(x, k).unwrap();
    let terms = [e.dxx, x * e.dx, k * e.value];
    (terms[0] - terms[1] + terms[2]).abs() / terms.iter().map(|v| v.abs()).fold(f64::MIN_POSITIVE, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn polynomial_recurrence(n in 1usize..20, x in -10.0..10.0f64) {
        let lhs = hermite_poly(n + 1, x);
        let rhs = x * hermite_poly(n, x) - n as f64 * hermite_poly(n - 1, x);
        let scale = lhs.abs().max((x * hermite_poly(n, x)).abs()).max(1.0);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * scale);
    }

    #[test]
    fn gamma_functional_equation(z in -20.0..40.0f64) {
        prop_assume!((z - z.round()).abs() > 1e-3 || z > 0.5);
        let r = gamma(z + 1.0).unwrap() / (z * gamma(z).unwrap());
        prop_assert!((r - 1.0).abs() < 1e-12, "z={} r={}", z, r);
    }

    #[test]
    fn kummer_contiguous(a in -3.0..3.0f64, b in 0.3..4.0f64, z in -5.0..5.0f64) {
        let h = 1e-5;
        let f = |z: f64| kummer_1f1(a, b, z).unwrap().value;
        let fd = (f(z + h) - f(z - h)) / (2.0 * h);
        let exact = a / b * kummer_1f1(a + 1.0, b + 1.0, z).unwrap().value;
        prop_assert!((fd - exact).abs() <= 1e-6 * exact.abs().max(1.0), "{} vs {}", fd, exact);
    }

    #[test]
    fn hermite_ode(k in -10.0..12.0f64, x in -10.0..10.0f64) {
        prop_assert!(ode_residual(x, k) < 1e-8);
    }

    #[test]
    fn hermite_recurrences(k in -8.0..8.0f64, x in -8.0..8.0f64) {
        let e = hermite(x, k).unwrap();
        let below = hermite(x, k - 1.0).unwrap().value;
        let above = hermite(x, k + 1.0).unwrap().value;
        let scale = e.value.abs().max(e.dx.abs()).max((x * e.value).abs()).max(1e-300);
        prop_assert!((e.dx - k * below).abs() <= 1e-9 * scale);
        prop_assert!((above - (x * e.value - e.dx)).abs() <= 1e-9 * scale.max(above.abs()));
    }

    #[test]
    fn nonpositive_orders_are_positive(k in -12.0..=0.0f64, x in -10.0..10.0f64) {
        prop_assert!(hermite(x, k).unwrap().value > 0.0);
    }

    #[test]
    fn positive_beyond_rightmost_zero(k in 0.05..20.0f64, d in 1e-3..15.0f64) {
        let r = rightmost_zero(k).unwrap();
        prop_assert!(hermite(r + d, k).unwrap().value > 0.0);
    }

    #[test]
    fn rightmost_zero_increases(k in 0.05..29.5f64, dk in 0.01..0.5f64) {
        prop_assert!(rightmost_zero(k).unwrap() < rightmost_zero(k + dk).unwrap());
    }

    #[test]
    fn identity_and_sign_law(i in 0usize..12, u in 0.0..1.0f64) {
        let k = ORDERS[i];
        let lo = if k > 0.0 { rightmost_zero(k).unwrap() + 0.05 } else { -6.0 };
        let x = lo + u * 12.0;
        let e = hermite(x, k).unwrap();
        let below = hermite(x, k - 1.0).unwrap().value;
        let above = hermite(x, k + 1.0).unwrap().value;
        let turan = e.value * e.value - below * above;
        let lhs = k * turan;
        let rhs = e.dx * e.dx - e.value * e.dxx;
        prop_assert!(turan > 0.0);
        prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs.abs().max(k.abs() * e.value * e.value));
        prop_assert_eq!(rhs.signum(), k.signum());
    }

    #[test]
    fn inversion_round_trip(i in 0usize..12, u in 0.0..1.0f64) {
        let k = ORDERS[i];
        let q = if k > 0.0 { rightmost_zero(k).unwrap() + 0.05 + 19.95 * u } else { -5.0 + 20.0 * u };
        let e = hermite(q, k).unwrap();
        let t = k.signum() * e.dx / e.value;
        let back = invert_t(k, t).unwrap();
        prop_assert!((back - q).abs() <= 1e-9 * q.abs().max(1.0), "k={} q={} back={}", k, q, back);
    }

    #[test]
    fn fk_derivatives(i in 0usize..12, t in 0.01..5.0f64) {
        let k = ORDERS[i];
        let e = match fk_eval(k, t) {
            Ok(e) => e,
            Err(_) => return Ok(()),
        };
        let h = 1e-4 * t.max(0.1) / (t / k.abs()).max(1.0).min(50.0);
        let f = |s: f64| fk_eval(k, s).unwrap();
        let (a, b) = (f(t + h), f(t - h));
        let d1 = (a.value - b.value) / (2.0 * h);
        let d2 = (a.d1 - b.d1) / (2.0 * h);
        prop_assert!((d1 - e.d1).abs() <= 1e-6 * e.d1.abs().max(1.0), "k={} t={} {} {}", k, t, d1, e.d1);
        prop_assert!((d2 - e.d2).abs() <= 1e-6 * e.d2.abs().max(1.0), "k={} t={} {} {}", k, t, d2, e.d2);
    }

    #[test]
    fn fk_shape(i in 0usize..12, t in 0.05..5.0f64) {
        let k = ORDERS[i];
        let e = match fk_eval(k, t) {
            Ok(e) => e,
            Err(_) => return Ok(()),
        };
        if k > -1.0 {
            prop_assert!(e.d1 < 0.0 && e.d2 < 0.0);
        } else {
            prop_assert!(e.d1 > 0.0 && e.d2 > 0.0);
        }
    }

    #[test]
    fn lower_bound_holds(p in 1.04..2.0f64, t in 0.0..6.0f64) {
        let (lhs, rhs) = beckner_lower_bound(p, t).unwrap();
        prop_assert!(lhs <= rhs + 1e-12);
    }

    #[test]
    fn pointwise_improvement(x in 0.1..10.0f64, y in 0.0..10.0f64, s in 0.1..10.0f64) {
        let (l, r) = impr_pointwise(x, y).unwrap();
        prop_assert!(l <= r + 1e-12 * r.abs().max(1.0));
        let (ls, rs) = impr_pointwise(s * x, s * y).unwrap();
        let w = s.powf(1.5);
        prop_assert!((ls - w * l).abs() <= 1e-12 * (w * l).abs().max(w * x.powf(1.5)));
        prop_assert!((rs - w * r).abs() <= 1e-12 * (w * r).abs().max(1e-300));
    }

    #[test]
    fn taylor_remainder(i in 0usize..12, t in 1e-3..0.1f64) {
        let k = ORDERS[i];
        let c = FkCurve::new(k).unwrap();
        let v = c.eval(t).unwrap().value;
        let quad = 1.0 - c.p * (c.p - 1.0) * t * t / 2.0;
        prop_assert!((v - quad).abs() <= 50.0 * t.powi(4) + 1e-13, "k={} t={} diff={}", k, t, v - quad);
    }
}
