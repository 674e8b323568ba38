//! Airy function, its zeros, and adaptive quadrature.
//!
//! Everything here is a pure function of its arguments.

mod airy;
mod quad;
mod zeros;

pub use airy::{airy, airy_ai, airy_ai_prime, AiryValue, NEGATIVE_SWITCH, POSITIVE_SWITCH};
pub use quad::{
    integrate_1d, integrate_to_infinity, integrate_with_error, truncation_point, QuadratureResult, QuadratureSpec,
    GAUSS_ORDER,
};
pub use zeros::{airy_zero, airy_zero_asymptotic, airy_zeros, NEWTON_MAX_ITER, NEWTON_STEP_TOL};

pub(crate) use airy::airy_unchecked;
pub(crate) use quad::rule as gauss_rule;
