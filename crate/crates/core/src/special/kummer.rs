use super::{SeriesConfig, SeriesResult};
use crate::{Error, Real, Result};

/// ₁F₁(a; b; z) by its power series with the default configuration.
pub fn kummer_1f1<T: Real>(a: T, b: T, z: T) -> Result<SeriesResult<T>> {
    kummer_1f1_with(a, b, z, &SeriesConfig::default())
}

/// ₁F₁(a; b; z) by its power series.
///
/// Stops once three consecutive terms fall below `tol_abs + tol_rel·|sum|`
/// and the geometric tail bound does too.
pub fn kummer_1f1_with<T: Real>(
    a: T,
    b: T,
    z: T,
    cfg: &SeriesConfig<T>,
) -> Result<SeriesResult<T>> {
    kummer_detail(a, b, z, cfg).map(|(r, _)| r)
}

/// Series value plus Σ|term|, the scale against which rounding is measured.
pub(crate) fn kummer_detail<T: Real>(
    a: T,
    b: T,
    z: T,
    cfg: &SeriesConfig<T>,
) -> Result<(SeriesResult<T>, T)> {
    if b <= T::zero() && b.is_integer() {
        return Err(Error::Domain(format!(
            "1F1 with nonpositive integer b = {}",
            b
        )));
    }
    if !(a.is_finite() && b.is_finite() && z.is_finite()) {
        return Err(Error::Domain("1F1 with non-finite argument".into()));
    }
    if z.abs() > cfg.radius {
        return Err(Error::Radius {
            z: z.abs().f64(),
            radius: cfg.radius.f64(),
        });
    }
    let mut sum = T::one();
    let mut abs_sum = T::one();
    let mut term = T::one();
    let mut small = 0;
    for n in 0..cfg.max_terms {
        let nf = T::from_usize_exact(n);
        term = term * (a + nf) / (b + nf) * z / (nf + T::one());
        sum = sum + term;
        abs_sum = abs_sum + term.abs();
        if term == T::zero() {
            let r = SeriesResult {
                value: sum,
                terms_used: n + 1,
                truncation_estimate: T::zero(),
            };
            return Ok((r, abs_sum));
        }
        let gate = cfg.tol_abs + cfg.tol_rel * sum.abs();
        if term.abs() <= gate {
            small += 1;
        } else {
            small = 0;
        }
        if small >= 3 {
            let n1 = nf + T::one();
            let ratio = ((a + n1) / (b + n1) * z / (n1 + T::one())).abs();
            let tail = if ratio < T::one() {
                term.abs() * ratio / (T::one() - ratio)
            } else {
                term.abs()
            };
            if tail <= gate {
                let r = SeriesResult {
                    value: sum,
                    terms_used: n + 2,
                    truncation_estimate: tail,
                };
                return Ok((r, abs_sum));
            }
        }
    }
    Err(Error::NonConvergence(cfg.max_terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn elementary_cases() {
        let r = kummer_1f1(0.3_f64, 1.7, 0.0).unwrap();
        assert_eq!(r.value, 1.0);
        let e = kummer_1f1(1.0_f64, 1.0, 1.0).unwrap();
        assert_relative_eq!(e.value, std::f64::consts::E, max_relative = 1e-14);
        assert!(e.truncation_estimate <= 1e-12 * e.value);
        let p = kummer_1f1(-1.0_f64, 0.5, 2.0).unwrap();
        assert_eq!(p.value, -3.0);
        assert_eq!(p.truncation_estimate, 0.0);
    }

    #[test]
    fn erf_identity() {
        // erf(x) = 2x/√π · ₁F₁(1/2; 3/2; -x²)
        let x = 1.3_f64;
        let m = kummer_1f1(0.5, 1.5, -x * x).unwrap().value;
        let v = 2.0 * x / std::f64::consts::PI.sqrt() * m;
        assert_relative_eq!(v, crate::special::erf(x), max_relative = 1e-13);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(
            kummer_1f1(1.0_f64, -2.0, 1.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            kummer_1f1(1.0_f64, 1.0, 60.0),
            Err(Error::Radius { .. })
        ));
        let cfg = SeriesConfig {
            max_terms: 5,
            ..SeriesConfig::default()
        };
        assert_eq!(
            kummer_1f1_with(1.0_f64, 1.0, 20.0, &cfg),
            Err(Error::NonConvergence(5))
        );
    }
}
