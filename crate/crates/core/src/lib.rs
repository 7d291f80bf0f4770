//! Exact bound spectra, scattering, supersymmetric partners and approximation
//! benchmarks for the exponential potential wells
//! `U_I(x) = -U_0 exp(-αx)` (hard wall at `x = 0`) and
//! `U_II(x) = -U_0 exp(-α|x|)`.
//!
//! Everything is expressed through the dimensionless depth
//! `a = sqrt(8 m U_0 / (ħ² α²))`, with positions in units of `1/α` and
//! energies in units of `U_0` unless a function says otherwise.

pub mod error;
pub mod exact;
pub mod numerics;
pub mod oracle;
pub mod scatter;
pub mod semiclassical;
pub mod specfun;
pub mod susy;
pub mod variational;

pub use error::{Error, Result};
