//! Real-order Hermite functions, the sharp improvement function F_k of
//! Beckner's inequality, the matrix certificate behind it, and Gauss–Hermite
//! verification of the resulting functional inequalities.
//!
//! Every evaluator is generic over [`Real`] (`f32` or `f64`); the aliases at the
//! crate root fix the scalar to `f64`.

mod error;
mod real;

pub mod beckner;
pub mod certificate;
pub mod hermite;
pub mod limits;
pub mod quad;
pub mod roots;
pub mod special;
pub mod verify;
pub mod zeros;

pub use error::{Error, Result};
pub use real::Real;

pub use beckner::{
    beckner_lower_bound, fk_asymptotic, fk_asymptotic_uncorrected, fk_eval, impr_pointwise,
    invert_t, FkCurve, FkEval, FkRoute,
};
pub use certificate::{
    certify, certify_determinant, certify_with, certify_trace, fd_crosscheck, m_eval, monotone_in_x_check,
    CertificateReport, GridSpec, MBundle, MVariant, Verdict,
};
pub use hermite::{
    hermite, hermite_asymptotic, hermite_dk_at_zero_order, hermite_in_regime, hermite_minus_log,
    hermite_sign, Direction, HermiteEval, Regime,
};
pub use limits::{
    alpha, f_exp, f_exp_derivatives, f_exp_eval, f_exp_log, f_minus_ln, f_minus_ln_derivatives,
    f_minus_ln_eval, AlphaConstant, LimitEval,
};
pub use special::{erfc, gamma, hermite_poly, kummer_1f1, SeriesResult};
pub use verify::{
    gauss_hermite_rule, suite, verify_b_three_halves, verify_beckner, verify_beckner_comparison,
    verify_e_sobolev, verify_neg_log_sobolev, verify_poincare, verify_prop_lower, verify_scaled,
    verify_suite, verify_theorem, InequalityId, QuadratureRule, TestFunction, VerificationReport,
    VerifyConfig,
};
pub use zeros::{leftmost_zero, real_zeros, rightmost_zero, zero_count, zero_table, ZeroTable};

pub type HermiteEval64 = HermiteEval<f64>;
pub type FkCurve64 = FkCurve<f64>;
pub type FkEval64 = FkEval<f64>;
pub type ZeroTable64 = ZeroTable<f64>;
pub type CertificateReport64 = CertificateReport<f64>;
pub type VerificationReport64 = VerificationReport<f64>;
pub type QuadratureRule64 = QuadratureRule<f64>;
pub type SeriesResult64 = SeriesResult<f64>;
pub type AlphaConstant64 = AlphaConstant<f64>;
pub type LimitEval64 = LimitEval<f64>;
