//! Comparisons against values that do not come from this crate's own code paths.

use approx::assert_relative_eq;
use beckner_core::{
    alpha, f_exp, f_minus_ln, fk_eval, gauss_hermite_rule, hermite, leftmost_zero, real_zeros, rightmost_zero,
};
use nalgebra::{DMatrix, SymmetricEigen};

/// Golub–Welsch: eigen-decomposition of the Jacobi matrix of the probabilists' recurrence.
fn golub_welsch(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut j = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        let b = (i as f64).sqrt();
        j[(i, i - 1)] = b;
        j[(i - 1, i)] = b;
    }
    let eig = SymmetricEigen::new(j);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| (eig.eigenvalues[i], eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

#[test]
fn gauss_hermite_matches_golub_welsch() {
    for n in [1, 2, 7, 20, 80, 160, 200] {
        let rule = gauss_hermite_rule::<f64>(n).unwrap();
        let (nodes, weights) = golub_welsch(n);
        let scale = (n as f64).sqrt().max(1.0);
        for i in 0..n {
            assert!((rule.nodes[i] - nodes[i]).abs() < 1e-12 * scale, "n={n} i={i}");
            assert!((rule.weights[i] - weights[i]).abs() < 1e-13, "n={n} i={i}");
            if weights[i] > 1e-6 {
                assert_relative_eq!(rule.weights[i], weights[i], max_relative = 1e-9);
            }
        }
    }
}

#[test]
fn integer_zeros_match_jacobi_eigenvalues() {
    for n in 1..=30usize {
        let (nodes, _) = golub_welsch(n);
        let r = rightmost_zero(n as f64).unwrap();
        let l = leftmost_zero(n as f64).unwrap();
        assert!((r - nodes[n - 1]).abs() < 1e-10, "n={n}: {r} vs {}", nodes[n - 1]);
        assert!((l - nodes[0]).abs() < 1e-10, "n={n}");
        let all = real_zeros(n as f64).unwrap();
        assert_eq!(all.len(), n);
        for (z, e) in all.iter().zip(&nodes) {
            assert!((z - e).abs() < 1e-10, "n={n}: {z} vs {e}");
        }
    }
}

/// H_{-1}(x) = sqrt(π/2) e^{x²/2} erfc(x/√2), 30-digit values.
const H_MINUS_ONE: [(f64, f64); 8] = [
    (-6.0, 164_585_134.988_653_86),
    (-2.5, 56.696_331_457_739_682),
    (-1.0, 3.477_051_811_703_694_5),
    (0.0, 1.253_314_137_315_500_3),
    (0.5, 0.876_364_456_453_692_35),
    (1.0, 0.655_679_542_418_798_47),
    (3.0, 0.304_590_298_710_103_30),
    (6.0, 0.162_377_660_896_867_46),
];

#[test]
fn minus_one_order_table() {
    for (x, v) in H_MINUS_ONE {
        assert_relative_eq!(hermite(x, -1.0).unwrap().value, v, max_relative = 1e-12);
    }
}

#[test]
fn alpha_high_precision() {
    assert_relative_eq!(alpha::<f64>().unwrap().value, -0.266_726_589_922_067_42, max_relative = 1e-13);
}

#[test]
fn limit_function_tables() {
    let fexp = [
        (0.25, 0.968_282_887_743_645_69),
        (0.5, 0.868_149_838_535_956_37),
        (1.0, 0.407_089_858_497_905_72),
        (2.0, -2.218_648_189_466_841),
        (500.0, -2.798_433_633_667_764_1e76),
        (2000.0, -3.612_770_373_030_713_7e262),
    ];
    for (t, v) in fexp {
        assert_relative_eq!(f_exp(t).unwrap(), v, max_relative = 1e-11);
    }
    assert!(f_exp(3000.0).is_err());
    let fln = [
        (0.25, -0.032_195_357_834_262_996),
        (0.5, -0.139_414_952_543_700_62),
        (1.0, -0.726_531_597_412_035_32),
        (2.0, -7.228_795_325_923_264_8),
    ];
    for (t, v) in fln {
        assert_relative_eq!(f_minus_ln(t).unwrap(), v, max_relative = 1e-11);
    }
}

#[test]
fn fk_table() {
    let rows = [
        (1.5, 0.8, 2.093_801_432_036_955_4, 0.654_499_419_639_701_85),
        (-1.5, 0.5, 2.228_525_339_562_689_2, 1.029_633_258_051_307_7),
        (5.0, 3.0, 3.398_651_760_460_766_2, 0.155_187_859_048_288_73),
        (-3.0, 4.0, -3.467_490_610_847_69, 10.020_252_726_409_135),
        (0.25, 0.1, 2.232_455_092_308_845_2, 0.897_294_078_469_704_61),
        (-0.25, 1.2, -1.837_059_172_443_913_3, -89.136_388_697_663_722),
    ];
    for (k, t, q, v) in rows {
        let e = fk_eval(k, t).unwrap();
        assert_relative_eq!(e.q, q, max_relative = 1e-10);
        assert_relative_eq!(e.value, v, max_relative = 1e-10);
    }
}
