use crate::Real;

const CF_SWITCH: f64 = 2.0;

// 2/√π · e^{-x²} · Σ 2ⁿ x^{2n+1} / (1·3···(2n+1)), all terms positive.
fn erf_series<T: Real>(x: T) -> T {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0usize;
    loop {
        term = term * T::c(2.0) * x2 / T::from_usize_exact(2 * n + 3);
        sum = sum + term;
        n += 1;
        if term < T::epsilon() * T::c(0.25) * sum || n > 500 {
            break;
        }
    }
    T::FRAC_2_SQRT_PI() * (-x2).exp() * sum
}

/// Tail R(y) of the continued fraction √π·e^{y²}·erfc(y) = 1/(y + R(y)),
/// R(y) = (1/2)/(y + 1/(y + (3/2)/(y + ...))), evaluated by modified Lentz.
/// Accurate for y >= 1; used where 1 - √π·y·erfcx(y) = R/(y + R) avoids cancellation.
pub fn erfc_cf_tail<T: Real>(y: T) -> T {
    let tiny = T::min_positive_value().sqrt();
    let mut f = tiny;
    let mut c = f;
    let mut d = T::zero();
    for n in 1..20_000usize {
        let a = T::from_usize_exact(n) * T::c(0.5);
        d = y + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = y + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = d.recip();
        let delta = c * d;
        f = f * delta;
        if (delta - T::one()).abs() < T::epsilon() * T::c(0.5) {
            break;
        }
    }
    f
}

/// Scaled complementary error function e^{x²}·erfc(x).
pub fn erfcx<T: Real>(x: T) -> T {
    if x < T::zero() {
        let ax = -x;
        return T::c(2.0) * (ax * ax).exp() - erfcx(ax);
    }
    if x >= T::c(CF_SWITCH) {
        return T::FRAC_2_SQRT_PI() * T::c(0.5) / (x + erfc_cf_tail(x));
    }
    (x * x).exp() * (T::one() - erf_series(x))
}

/// Complementary error function.
pub fn erfc<T: Real>(x: T) -> T {
    if x < T::zero() {
        return T::c(2.0) - erfc(-x);
    }
    if x >= T::c(CF_SWITCH) {
        return erfcx(x) * (-x * x).exp();
    }
    T::one() - erf_series(x)
}

/// Error function.
pub fn erf<T: Real>(x: T) -> T {
    if x < T::zero() {
        return -erf(-x);
    }
    if x >= T::c(CF_SWITCH) {
        return T::one() - erfc(x);
    }
    erf_series(x)
}
