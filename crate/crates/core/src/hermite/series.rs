//! Convergent representations: the Γ-weighted power series and the Kummer form.

use crate::special::{gamma, kummer::kummer_detail, rgamma, SeriesConfig};
use crate::{Error, Real, Result};

/// Value and absolute error bound.
pub(crate) type Approx<T> = (T, T);

/// H_k(x) = 2^{-k/2}/(2Γ(-k)) Σ Γ((n-k)/2)/n! (-x√2)ⁿ.
///
/// Singular for nonnegative integer k; the two parity chains are advanced by
/// term ratios so no Γ of large argument is ever formed.
pub(crate) fn hyp1<T: Real>(x: T, k: T) -> Result<Approx<T>> {
    if k >= T::zero() && k.is_integer() {
        return Err(Error::Domain(format!(
            "power series is singular at integer order {}",
            k
        )));
    }
    let half = T::c(0.5);
    let eps = T::epsilon();
    let pref = T::c(2.0).powf(-k * half) * rgamma(-k) * half;
    let w = -x * T::SQRT_2();
    let two_x2 = T::c(2.0) * x * x;
    let mut chain = [gamma(-k * half)?, gamma((T::one() - k) * half)? * w];
    let mut sum = chain[0] + chain[1];
    let mut weighted = chain[0].abs() * T::c(2.0) + chain[1].abs() * T::c(3.0);
    let mut n = 0usize;
    let max_terms = 20_000usize;
    loop {
        for (par, term) in chain.iter_mut().enumerate() {
            let m = T::from_usize_exact(n + par);
            *term = *term * (m - k) * half * two_x2 / ((m + T::one()) * (m + T::c(2.0)));
        }
        n += 2;
        sum = sum + chain[0] + chain[1];
        let root = T::from_usize_exact(n).sqrt();
        weighted = weighted + (chain[0].abs() + chain[1].abs()) * (T::c(2.0) + root);
        let nf = T::from_usize_exact(n);
        let tail = chain[0].abs() + chain[1].abs();
        let ratio = ((nf - k) * half * two_x2 / ((nf + T::one()) * (nf + T::c(2.0)))).abs();
        let past_peak = nf > k && ratio < half;
        if (past_peak && tail <= eps * T::c(0.0625) * weighted) || tail == T::zero() {
            let bound = if ratio < T::one() {
                tail * ratio / (T::one() - ratio)
            } else {
                tail
            };
            let value = pref * sum;
            let err = pref.abs() * (bound + eps * weighted) + T::c(8.0) * eps * value.abs();
            return Ok((value, err));
        }
        if n > max_terms {
            return Err(Error::NonConvergence(max_terms));
        }
    }
}

/// H_k(x) = 2^{k/2}√π [M(-k/2, 1/2, x²/2)/Γ((1-k)/2) - √2·x·M((1-k)/2, 3/2, x²/2)/Γ(-k/2)].
pub(crate) fn hyp2<T: Real>(x: T, k: T) -> Result<Approx<T>> {
    let half = T::c(0.5);
    let eps = T::epsilon();
    let cfg = SeriesConfig::machine();
    let z = x * x * half;
    let (m1, abs1) = kummer_detail(-k * half, half, z, &cfg)?;
    let (m2, abs2) = kummer_detail((T::one() - k) * half, T::c(1.5), z, &cfg)?;
    let g1 = rgamma((T::one() - k) * half);
    let g2 = rgamma(-k * half);
    let scale = T::c(2.0).powf(k * half) * T::PI().sqrt();
    let a = m1.value * g1;
    let b = T::SQRT_2() * x * m2.value * g2;
    let value = scale * (a - b);
    let r1 = T::from_usize_exact(m1.terms_used).sqrt() + T::c(2.0);
    let r2 = T::from_usize_exact(m2.terms_used).sqrt() + T::c(2.0);
    let err = scale
        * (g1.abs() * (m1.truncation_estimate + eps * r1 * abs1)
            + T::SQRT_2() * x.abs() * g2.abs() * (m2.truncation_estimate + eps * r2 * abs2))
        + T::c(8.0) * eps * scale * (a.abs() + b.abs());
    Ok((value, err))
}
