use super::*;
use approx::assert_relative_eq;

// (k, t, q, F_k(t)) from 40-digit arithmetic.
const REFERENCE: [(f64, f64, f64, f64); 11] = [
    (
        -0.5,
        0.5,
        -0.078_528_144_127_357_874,
        0.673_258_133_594_198_81,
    ),
    (
        -0.5,
        3.0,
        -3.196_628_593_389_764_4,
        -3_722.088_010_013_135_7,
    ),
    (-2.0, 1.0, 0.679_566_913_684_232_8, 1.147_758_801_890_032_9),
    (-2.0, 10.0, -9.898_979_485_566_356_2, 21_920_807_694.794_51),
    (
        0.5,
        0.7,
        0.311_085_691_369_407_35,
        -0.677_138_103_429_233_85,
    ),
    (3.0, 2.0, 2.469_001_749_928_518_3, 0.238_086_680_220_466_41),
    (-4.0, 0.3, 12.960_353_629_492_299, 1.008_496_779_999_278_5),
    (
        10.0,
        5.0,
        5.207_863_478_100_244_9,
        0.054_069_180_086_279_231,
    ),
    (-1.5, 2.0, -1.631_610_996_352_880_7, 2.022_787_941_576_151),
    (
        -0.3,
        5.0,
        -5.146_793_075_799_937_8,
        -28_840_493_845_919_314.0,
    ),
    (2.0, 1.0, 2.414_213_562_373_095, 0.643_594_252_905_582_62),
];

#[test]
fn reference_values() {
    for &(k, t, q, v) in REFERENCE.iter() {
        let e = fk_eval(k, t).unwrap();
        assert_eq!(e.route, FkRoute::Implicit, "k={k} t={t}");
        assert_relative_eq!(e.q, q, max_relative = 1e-11);
        assert_relative_eq!(e.value, v, max_relative = 1e-10);
    }
}

#[test]
fn order_one_is_quadratic() {
    let e = fk_eval(1.0, 0.5).unwrap();
    assert_relative_eq!(e.q, 2.0, max_relative = 1e-13);
    assert_relative_eq!(e.value, 0.75, max_relative = 1e-13);
    assert_relative_eq!(e.d1, -1.0, max_relative = 1e-12);
    assert_relative_eq!(e.d2, -2.0, max_relative = 1e-10);
}

fn f2(y: f64) -> f64 {
    let r = (1.0 + y * y).sqrt();
    (2.0 - r) * (1.0 + r).sqrt() / 2f64.sqrt()
}

#[test]
fn order_two_closed_form() {
    let c = FkCurve::new(2.0).unwrap();
    for &t in &[1e-4, 0.01, 0.3, 1.0, 2.0, 7.0, 50.0] {
        let e = c.eval(t).unwrap();
        assert_relative_eq!(e.value, f2(t), max_relative = 1e-11, epsilon = 1e-14);
        let h = 1e-4 * t.max(1e-2);
        let fd = (f2(t + h) - f2(t - h)) / (2.0 * h);
        assert_relative_eq!(e.d1, fd, max_relative = 1e-6, epsilon = 1e-9);
    }
}

#[test]
fn inversion_round_trip() {
    for &k in &[-7.5, -2.0, -0.5, 0.5, 1.5, 6.0] {
        let c = FkCurve::new(k).unwrap();
        for &t in &[0.01, 0.2, 1.0, 4.0] {
            let q = c.invert(t).unwrap();
            let (tq, _) = c.t_of_q(q).unwrap();
            assert_relative_eq!(tq, t, max_relative = 1e-12);
            assert!(q > c.q_domain_left);
        }
    }
}

#[test]
fn taylor_matches_implicit_at_switch() {
    for &k in &[-3.0_f64, -0.5, 0.7, 4.0] {
        let c = FkCurve::new(k).unwrap();
        let t = TAYLOR_BAND * f64::min(1.0, k.abs());
        let below = c.eval(t * 0.999_999).unwrap();
        let above = c.eval(t * 1.000_001).unwrap();
        assert_eq!(below.route, FkRoute::Taylor);
        assert_eq!(above.route, FkRoute::Implicit);
        assert_relative_eq!(below.value, above.value, max_relative = 1e-11);
        assert_relative_eq!(below.d1, above.d1, max_relative = 1e-5);
    }
}

#[test]
fn derivatives_match_finite_differences() {
    for &(k, t) in &[(-2.0, 1.5), (-0.5, 0.8), (0.5, 0.7), (3.0, 2.0)] {
        let c = FkCurve::new(k).unwrap();
        let e = c.eval(t).unwrap();
        let h = 1e-4;
        let (a, b) = (c.eval(t - h).unwrap(), c.eval(t + h).unwrap());
        assert_relative_eq!(e.d1, (b.value - a.value) / (2.0 * h), max_relative = 1e-6);
        assert_relative_eq!(e.d2, (b.d1 - a.d1) / (2.0 * h), max_relative = 1e-6);
    }
}

#[test]
fn negative_order_asymptotic_ratio() {
    let k = -0.5_f64;
    let c = FkCurve::new(k).unwrap();
    let t = 25.0;
    let q = c.invert(t).unwrap();
    let exact = hermite(q, k).unwrap();
    let v = implicit_from(t, q, k, exact.value, exact.dx).unwrap().value;
    let corrected = fk_asymptotic(k, t).unwrap();
    let bare = fk_asymptotic_uncorrected(k, t).unwrap();
    assert_relative_eq!(v / corrected, 1.0, max_relative = 5e-3);
    assert_relative_eq!(v / bare, (-(k + 1.0) / k).exp(), max_relative = 5e-3);
}

#[test]
fn positive_order_asymptotic() {
    let c = FkCurve::new(2.0).unwrap();
    let t = 1e4;
    assert_relative_eq!(c.asymptotic(t).unwrap() / f2(t), 1.0, max_relative = 1e-3);
    let e = c.eval(2e6).unwrap();
    assert_eq!(e.route, FkRoute::Asymptotic);
    assert_relative_eq!(e.value / f2(2e6), 1.0, max_relative = 1e-5);
}

#[test]
fn limit_routes() {
    let e = fk_eval(5e-4, 1e-3).unwrap();
    assert_eq!(e.route, FkRoute::LimitExp);
    let e = fk_eval(-1.0005, 0.4).unwrap();
    assert_eq!(e.route, FkRoute::LimitMinusLn);
    assert!(matches!(fk_eval(0.0, 1.0), Err(Error::Domain(_))));
    assert!(matches!(fk_eval(-1.0, 1.0), Err(Error::Domain(_))));
    assert!(matches!(
        fk_eval(31.0, 1.0),
        Err(Error::UnsupportedOrder(_))
    ));
    assert!(matches!(fk_eval(-2.0, 250.0), Err(Error::Overflow(_))));
    assert!(matches!(fk_eval(2.0, -1.0), Err(Error::Domain(_))));
}

#[test]
fn limit_blend_is_continuous() {
    let inside = fk_eval(-1.0 + 0.999e-3, 0.5).unwrap();
    let outside = fk_eval(-1.0 + 1.001e-3, 0.5).unwrap();
    assert_relative_eq!(inside.value, outside.value, max_relative = 1e-5);
    let inside = fk_eval(0.999e-3, 1e-3).unwrap();
    let outside = fk_eval(1.001e-3, 1e-3).unwrap();
    assert_relative_eq!(inside.value, outside.value, max_relative = 1e-2);
}

#[test]
fn lower_bound_and_pointwise() {
    let (lhs, rhs) = beckner_lower_bound(1.5, 2.0).unwrap();
    assert!(lhs <= rhs);
    let (l, r) = impr_pointwise(1.0, 0.0).unwrap();
    assert_relative_eq!(l, 0.0, epsilon = 1e-15);
    assert_relative_eq!(r, 0.0, epsilon = 1e-15);
    let (l, r) = impr_pointwise(1.0, 1.0).unwrap();
    assert!(l <= r);
    assert!(beckner_lower_bound(2.5, 1.0).is_err());
    assert!(impr_pointwise(0.0, 1.0).is_err());
}
