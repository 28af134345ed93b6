//! Globally adaptive Gauss–Kronrod (7, 15) quadrature on finite intervals.

use crate::{Error, Real, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_17,
    0.207_784_955_007_898_47,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

/// Integral estimate with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: T,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct QuadConfig<T> {
    pub tol_abs: T,
    pub tol_rel: T,
    pub max_intervals: usize,
}

impl<T: Real> Default for QuadConfig<T> {
    fn default() -> Self {
        let tol = T::c(1e-13).max(T::epsilon() * T::c(50.0));
        Self {
            tol_abs: tol,
            tol_rel: tol,
            max_intervals: 4000,
        }
    }
}

fn gk15<T: Real, F: FnMut(T) -> Result<T>>(f: &mut F, a: T, b: T) -> Result<(T, T)> {
    let c = (a + b) * T::c(0.5);
    let h = (b - a) * T::c(0.5);
    let fc = f(c)?;
    let mut k = fc * T::c(WGK[7]);
    let mut g = fc * T::c(WG[3]);
    for i in 0..7 {
        let dx = h * T::c(XGK[i]);
        let s = f(c - dx)? + f(c + dx)?;
        k = k + s * T::c(WGK[i]);
        if i % 2 == 1 {
            g = g + s * T::c(WG[i / 2]);
        }
    }
    let kv = k * h;
    Ok((kv, (kv - g * h).abs()))
}

/// ∫ₐᵇ f with default tolerances.
pub fn integrate<T: Real, F: FnMut(T) -> Result<T>>(f: F, a: T, b: T) -> Result<QuadResult<T>> {
    integrate_with(f, a, b, &QuadConfig::default())
}

/// ∫ₐᵇ f, bisecting the interval with the largest error until the total
/// error is below `max(tol_abs, tol_rel·|value|)`.
pub fn integrate_with<T: Real, F: FnMut(T) -> Result<T>>(
    mut f: F,
    a: T,
    b: T,
    cfg: &QuadConfig<T>,
) -> Result<QuadResult<T>> {
    if a == b {
        return Ok(QuadResult {
            value: T::zero(),
            error: T::zero(),
            intervals: 0,
        });
    }
    if b < a {
        return integrate_with(f, b, a, cfg).map(|r| QuadResult {
            value: -r.value,
            ..r
        });
    }
    let (v, e) = gk15(&mut f, a, b)?;
    let mut parts = vec![(a, b, v, e)];
    loop {
        let value = parts.iter().fold(T::zero(), |s, p| s + p.2);
        let error = parts.iter().fold(T::zero(), |s, p| s + p.3);
        if !value.is_finite() {
            return Err(Error::Quadrature("non-finite integrand".into()));
        }
        if error <= cfg.tol_abs.max(cfg.tol_rel * value.abs()) {
            return Ok(QuadResult {
                value,
                error,
                intervals: parts.len(),
            });
        }
        if parts.len() >= cfg.max_intervals {
            return Err(Error::Quadrature(format!(
                "error {} above tolerance after {} intervals",
                error.f64(),
                parts.len()
            )));
        }
        let (idx, _) = parts
            .iter()
            .enumerate()
            .fold((0, T::neg_infinity()), |best, (i, p)| {
                if p.3 > best.1 {
                    (i, p.3)
                } else {
                    best
                }
            });
        let (lo, hi, _, _) = parts.swap_remove(idx);
        let mid = (lo + hi) * T::c(0.5);
        if mid <= lo || mid >= hi {
            return Err(Error::Quadrature(
                "interval collapsed below resolution".into(),
            ));
        }
        let (v1, e1) = gk15(&mut f, lo, mid)?;
        let (v2, e2) = gk15(&mut f, mid, hi)?;
        parts.push((lo, mid, v1, e1));
        parts.push((mid, hi, v2, e2));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn smooth_integrands() {
        let r = integrate(|x: f64| Ok(x.exp()), 0.0, 1.0).unwrap();
        assert_relative_eq!(r.value, std::f64::consts::E - 1.0, max_relative = 1e-14);
        let r = integrate(|x: f64| Ok(1.0 / x), 1.0, 1000.0).unwrap();
        assert_relative_eq!(r.value, 1000.0_f64.ln(), max_relative = 1e-13);
        let r = integrate(|x: f64| Ok(x.sqrt()), 0.0, 1.0).unwrap();
        assert_relative_eq!(r.value, 2.0 / 3.0, max_relative = 1e-12);
    }

    #[test]
    fn reversed_limits_negate() {
        let a = integrate(|x: f64| Ok(x.sin()), 0.0, 2.0).unwrap().value;
        let b = integrate(|x: f64| Ok(x.sin()), 2.0, 0.0).unwrap().value;
        assert_relative_eq!(a, -b, max_relative = 1e-15);
    }

    #[test]
    fn propagates_integrand_errors() {
        let r = integrate(|_x: f64| Err(Error::Domain("boom".into())), 0.0, 1.0);
        assert!(r.is_err());
    }
}
