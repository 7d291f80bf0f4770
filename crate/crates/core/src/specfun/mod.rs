//! Special functions: Bessel functions of the first kind for real or purely
//! imaginary order, complex log-gamma and the complementary error function.
//!
//! All routines are pure functions of their arguments and safe to call from
//! any thread.

mod bessel;
mod erf;
mod gamma;

pub use bessel::{
    bessel_j, bessel_j_dx, bessel_j_real, bessel_j_real_with_derivative, bessel_log_derivative, bessel_ratio,
    BesselOrder, IMAGINARY_SERIES_LIMIT, MAX_ARG, MAX_ORDER,
};
pub use erf::{erfc, erfcx};
pub use gamma::{gamma_real, log_gamma, rgamma_real};
