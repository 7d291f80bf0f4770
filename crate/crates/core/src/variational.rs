//! Variational upper bounds from one-parameter trial families, with energy
//! functionals in closed form (units of `U_0`).
//!
//! * `GaussianTimesX`: `φ ∝ x e^{-x²/4σ²}` on `x > 0`, `η = ασ/√2`,
//!   `E = 3/(2a²η²) - [erfcx(η)(1 + 2η²) - 2η/√π]`.
//! * `ExponentialTimesX`: `φ = 2x e^{-x/σ}/σ^{3/2}`, `s = ασ`,
//!   `E = 4/(a²s²) - 8/(2 + s)³`.
//! * `GaussianII`: `φ ∝ e^{-x²/4σ²}` on the whole line, `η = ασ/√2`,
//!   `E = 1/(2a²η²) - erfcx(η)`.
//! * `AntisymmetricII`: the odd extension of `GaussianTimesX` to the
//!   symmetric well; same functional, compared with the first excited level.
//!
//! A family "exists" at depth `a` when its functional has an interior
//! minimum (`dE/dη = 0`, `d²E/dη² > 0`). That minimum can lie slightly above
//! zero just past the threshold, so `bound` records `E < 0` separately.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::Result;
use crate::exact::{check_a, spectrum, PotentialSpec};
use crate::numerics::{logspace, minimize::golden_section, roots};
use crate::specfun::erfcx;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AnsatzFamily {
    GaussianTimesX,
    ExponentialTimesX,
    GaussianII,
    AntisymmetricII,
}

impl AnsatzFamily {
    pub const ALL: [AnsatzFamily; 4] = [
        AnsatzFamily::GaussianTimesX,
        AnsatzFamily::ExponentialTimesX,
        AnsatzFamily::GaussianII,
        AnsatzFamily::AntisymmetricII,
    ];

    /// How the width parameter relates to `σ`.
    pub fn width_convention(self) -> &'static str {
        match self {
            AnsatzFamily::ExponentialTimesX => "s = alpha*sigma",
            _ => "eta = alpha*sigma/sqrt(2)",
        }
    }

    /// `⟨φ|H|φ⟩ / U_0`.
    pub fn energy(self, a: f64, eta: f64) -> f64 {
        match self {
            AnsatzFamily::GaussianTimesX | AnsatzFamily::AntisymmetricII => energy_gaussian_x_i(a, eta),
            AnsatzFamily::ExponentialTimesX => energy_exponential_i(a, eta),
            AnsatzFamily::GaussianII => energy_gaussian_ii(a, eta),
        }
    }

    /// `d⟨H⟩/dη`.
    pub fn energy_slope(self, a: f64, eta: f64) -> f64 {
        let a2 = a * a;
        match self {
            AnsatzFamily::GaussianTimesX | AnsatzFamily::AntisymmetricII => {
                let e = erfcx(eta);
                -3.0 / (a2 * eta.powi(3)) - (e * (6.0 * eta + 4.0 * eta.powi(3)) - 4.0 / PI.sqrt() * (1.0 + eta * eta))
            }
            AnsatzFamily::ExponentialTimesX => -8.0 / (a2 * eta.powi(3)) + 24.0 / (2.0 + eta).powi(4),
            AnsatzFamily::GaussianII => -1.0 / (a2 * eta.powi(3)) - (2.0 * eta * erfcx(eta) - 2.0 / PI.sqrt()),
        }
    }

    fn reference_energy(self, a: f64) -> Result<Option<f64>> {
        Ok(match self {
            AnsatzFamily::GaussianTimesX | AnsatzFamily::ExponentialTimesX => {
                spectrum(&PotentialSpec::well_i(a)?)?.ground().map(|l| l.energy)
            }
            AnsatzFamily::GaussianII => spectrum(&PotentialSpec::well_ii(a)?)?.ground().map(|l| l.energy),
            AnsatzFamily::AntisymmetricII => spectrum(&PotentialSpec::well_ii(a)?)?.levels.get(1).map(|l| l.energy),
        })
    }

    fn is_well_i(self) -> bool {
        matches!(self, AnsatzFamily::GaussianTimesX | AnsatzFamily::ExponentialTimesX)
    }
}

/// Kinetic `3/(2a²η²)` plus potential `-[erfcx(η)(1 + 2η²) - 2η/√π]`.
pub fn energy_gaussian_x_i(a: f64, eta: f64) -> f64 {
    let potential = -(erfcx(eta) * (1.0 + 2.0 * eta * eta) - 2.0 * eta / PI.sqrt());
    1.5 / (a * a * eta * eta) + potential
}

/// `4/(a²s²) - 8/(2 + s)³` with `s = ασ`.
pub fn energy_exponential_i(a: f64, s: f64) -> f64 {
    4.0 / (a * a * s * s) - 8.0 / (2.0 + s).powi(3)
}

/// `1/(2a²η²) - erfcx(η)`.
pub fn energy_gaussian_ii(a: f64, eta: f64) -> f64 {
    0.5 / (a * a * eta * eta) - erfcx(eta)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariationalResult {
    pub family: AnsatzFamily,
    pub a: f64,
    /// Optimal width parameter (see [`AnsatzFamily::width_convention`]).
    pub eta0: f64,
    pub energy: f64,
    /// An interior minimum of the functional exists.
    pub exists: bool,
    /// The minimum lies below zero.
    pub bound: bool,
    pub relative_error: Option<f64>,
}

pub const ETA_MIN: f64 = 1e-3;
pub const ETA_MAX: f64 = 50.0;
const SCAN_POINTS: usize = 500;

/// Upper end of the width scan; the Gaussian on the symmetric well keeps a
/// minimum near `η ≈ √π/a²` for shallow wells, so the range grows there.
fn eta_max(a: f64) -> f64 {
    ETA_MAX.max(10.0 / (a * a))
}

/// Interior minima of the functional, as `(η, E)`.
fn stationary_minima(family: AnsatzFamily, a: f64) -> Vec<(f64, f64)> {
    let grid = logspace(ETA_MIN, eta_max(a), SCAN_POINTS);
    let slope = |eta: f64| family.energy_slope(a, eta);
    let d: Vec<f64> = grid.iter().map(|&e| slope(e)).collect();
    let mut brackets: Vec<(f64, f64)> = Vec::new();
    for i in 1..grid.len() {
        if d[i - 1] < 0.0 && d[i] >= 0.0 {
            brackets.push((grid[i - 1], grid[i]));
        }
    }
    // near a fold the slope may only touch zero between samples
    for i in 1..grid.len() - 1 {
        if d[i] >= d[i - 1] && d[i] >= d[i + 1] && d[i] < 0.0 {
            let (x, neg) = golden_section(|e| -slope(e), grid[i - 1], grid[i + 1], 1e-14);
            if -neg > 0.0 {
                let left = grid[i - 1];
                if slope(left) < 0.0 {
                    brackets.push((left, x));
                }
            }
        }
    }
    brackets
        .into_iter()
        .filter_map(|(lo, hi)| roots::brent(slope, lo, hi, 1e-13).ok())
        .map(|eta| (eta, family.energy(a, eta)))
        .collect()
}

/// Global minimum of the family's functional at depth `a`.
pub fn minimize(family: AnsatzFamily, a: f64) -> Result<VariationalResult> {
    check_a(a)?;
    let best = stationary_minima(family, a).into_iter().min_by(|x, y| x.1.total_cmp(&y.1));
    let reference = family.reference_energy(a)?;
    Ok(match best {
        Some((eta0, energy)) => VariationalResult {
            family,
            a,
            eta0,
            energy,
            exists: true,
            bound: energy < 0.0,
            relative_error: reference.map(|r| ((r - energy) / r).abs()),
        },
        None => VariationalResult {
            family,
            a,
            eta0: f64::NAN,
            energy: f64::NAN,
            exists: false,
            bound: false,
            relative_error: None,
        },
    })
}

/// Smallest `a` at which the family has a minimum, by bisection.
pub fn ansatz_threshold(family: AnsatzFamily) -> Result<f64> {
    if !family.is_well_i() && family != AnsatzFamily::AntisymmetricII {
        return Err(crate::error::Error::Domain(
            "the Gaussian on the symmetric well has a minimum for every depth".into(),
        ));
    }
    let exists = |a: f64| !stationary_minima(family, a).is_empty();
    let (mut lo, mut hi) = (0.5, 20.0);
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if exists(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorPoint {
    pub a: f64,
    /// `|E_exact - E_var| / |E_exact|`, missing where either side has no level.
    pub delta: Option<f64>,
}

/// Relative error of the variational estimate along a grid of depths.
pub fn error_curve(family: AnsatzFamily, a_grid: &[f64]) -> Result<Vec<ErrorPoint>> {
    a_grid
        .iter()
        .map(|&a| {
            let r = minimize(family, a)?;
            Ok(ErrorPoint { a, delta: if r.exists { r.relative_error } else { None } })
        })
        .collect()
}
