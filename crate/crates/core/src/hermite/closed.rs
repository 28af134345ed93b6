//! Closed forms for the orders -1 and -2.

use crate::special::{erfc_cf_tail, erfcx};
use crate::Real;

/// H_{-1}(x) = √(π/2)·e^{x²/2}·erfc(x/√2).
pub fn h_minus_one<T: Real>(x: T) -> T {
    (T::FRAC_PI_2()).sqrt() * erfcx(x * T::FRAC_1_SQRT_2())
}

/// H_{-2}(x) = 1 - x·H_{-1}(x), rewritten through the erfc continued fraction for x > 2.
pub fn h_minus_two<T: Real>(x: T) -> T {
    if x > T::c(2.0) {
        let y = x * T::FRAC_1_SQRT_2();
        let r = erfc_cf_tail(y);
        r / (y + r)
    } else {
        T::one() - x * h_minus_one(x)
    }
}
