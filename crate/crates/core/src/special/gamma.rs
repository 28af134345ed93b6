use crate::{Error, Real, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// sin(πx) with exact argument reduction, so integers give exact zeros.
pub fn sinpi<T: Real>(x: T) -> T {
    let two = T::c(2.0);
    let n = (x * two).round();
    let r = x - n / two;
    let s = (r * T::PI()).sin();
    let c = (r * T::PI()).cos();
    match (n % T::c(4.0) + T::c(4.0)) % T::c(4.0) {
        m if m == T::zero() => s,
        m if m == T::one() => c,
        m if m == two => -s,
        _ => -c,
    }
}

/// cos(πx) with exact argument reduction.
pub fn cospi<T: Real>(x: T) -> T {
    let two = T::c(2.0);
    let n = (x * two).round();
    let r = x - n / two;
    let s = (r * T::PI()).sin();
    let c = (r * T::PI()).cos();
    match (n % T::c(4.0) + T::c(4.0)) % T::c(4.0) {
        m if m == T::zero() => c,
        m if m == T::one() => -s,
        m if m == two => -c,
        _ => s,
    }
}

fn is_pole<T: Real>(z: T) -> bool {
    z <= T::zero() && z.is_integer()
}

// Lanczos sum for Γ(z + 1), z >= -0.5; returns (sum, t).
fn lanczos<T: Real>(z: T) -> (T, T) {
    let mut a = T::c(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a = a + T::c(c) / (z + T::from_usize_exact(i));
    }
    (a, z + T::c(LANCZOS_G + 0.5))
}

/// Γ(z). Reflection is used for z < 1/2.
pub fn gamma<T: Real>(z: T) -> Result<T> {
    if !z.is_finite() {
        return Err(Error::Domain(format!("gamma of non-finite argument {}", z)));
    }
    if is_pole(z) {
        return Err(Error::Pole(z.f64()));
    }
    if z < T::c(0.5) {
        let g = gamma(T::one() - z)?;
        return Ok(T::PI() / (sinpi(z) * g));
    }
    if z.is_integer() && z <= T::c(30.0) {
        let mut f = T::one();
        let mut i = T::c(2.0);
        while i < z {
            f = f * i;
            i = i + T::one();
        }
        return Ok(f);
    }
    let zm = z - T::one();
    let (a, t) = lanczos(zm);
    // Split the power to keep t^(z+1/2) finite up to the overflow edge of Γ.
    let h = t.powf((zm + T::c(0.5)) * T::c(0.5));
    Ok((T::TAU()).sqrt() * h * (h * (-t).exp()) * a)
}

/// ln|Γ(z)|.
pub fn ln_gamma<T: Real>(z: T) -> Result<T> {
    if !z.is_finite() {
        return Err(Error::Domain(format!(
            "ln_gamma of non-finite argument {}",
            z
        )));
    }
    if is_pole(z) {
        return Err(Error::Pole(z.f64()));
    }
    if z < T::c(0.5) {
        let l = ln_gamma(T::one() - z)?;
        return Ok(T::PI().ln() - sinpi(z).abs().ln() - l);
    }
    if (z - T::one()).abs() < T::epsilon() || (z - T::c(2.0)).abs() < T::epsilon() {
        return Ok(T::zero());
    }
    let zm = z - T::one();
    let (a, t) = lanczos(zm);
    Ok(T::c(0.5) * T::TAU().ln() + (zm + T::c(0.5)) * t.ln() - t + a.ln())
}

/// 1/Γ(z), an entire function: zero at the poles of Γ.
pub fn rgamma<T: Real>(z: T) -> T {
    if is_pole(z) {
        return T::zero();
    }
    if z < T::c(0.5) {
        // 1/Γ(z) = sin(πz) Γ(1 - z) / π
        return match gamma(T::one() - z) {
            Ok(g) => sinpi(z) * g / T::PI(),
            Err(_) => T::nan(),
        };
    }
    match gamma(z) {
        Ok(g) => T::one() / g,
        Err(_) => T::nan(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn factorials_and_half_integers() {
        assert_relative_eq!(gamma(5.0_f64).unwrap(), 24.0, max_relative = 1e-15);
        assert_relative_eq!(
            gamma(0.5_f64).unwrap(),
            std::f64::consts::PI.sqrt(),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            gamma(2.5_f64).unwrap(),
            1.329_340_388_179_137,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            gamma(-0.5_f64).unwrap(),
            -2.0 * std::f64::consts::PI.sqrt(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn poles() {
        assert_eq!(gamma(0.0_f64), Err(Error::Pole(0.0)));
        assert_eq!(gamma(-3.0_f64), Err(Error::Pole(-3.0)));
        assert_eq!(rgamma(-3.0_f64), 0.0);
        assert!(ln_gamma(-2.0_f64).is_err());
    }

    #[test]
    fn trig_reduction_exact_at_integers() {
        for n in -20..20 {
            assert_eq!(sinpi(n as f64), 0.0);
            assert_eq!(cospi(n as f64 + 0.5), 0.0);
        }
        assert_relative_eq!(
            sinpi(0.25_f64),
            std::f64::consts::FRAC_1_SQRT_2,
            max_relative = 1e-15
        );
        assert_relative_eq!(cospi(2.0_f64 / 3.0), -0.5, max_relative = 1e-15);
        assert_relative_eq!(sinpi(-7.5_f64), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn ln_gamma_matches_gamma() {
        for &z in &[0.1, 0.7, 3.3, 17.5, 45.2, -0.3, -4.7, -29.5] {
            let g: f64 = gamma(z).unwrap();
            assert_relative_eq!(
                ln_gamma(z).unwrap(),
                g.abs().ln(),
                epsilon = 1e-13,
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn f32_smoke() {
        assert!((gamma(4.0_f32).unwrap() - 6.0).abs() < 1e-5);
        assert!((rgamma(0.5_f32) - 0.564_189_6).abs() < 1e-6);
    }
}
