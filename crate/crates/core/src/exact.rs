//! Exact bound spectra of the two exponential wells.
//!
//! With `X = αx` and `y = a·exp(-|X|/2)` the Schrödinger equation becomes
//! Bessel's equation of order `b = sqrt(8m(-E)/(ħ²α²))`, so bound states are
//! the orders `ν` for which `J_ν(a) = 0` (a node at the wall or at `x = 0`)
//! or `J'_ν(a) = 0` (zero slope at `x = 0`, WellII even states). Energies are
//! `E/U_0 = -(ν/a)²`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{derivative5, roots};
use crate::specfun::{bessel_j_real, bessel_j_real_with_derivative, bessel_ratio, MAX_ARG};

/// Step of the downward scan in the order variable.
pub const ORDER_SCAN_STEP: f64 = 0.05;
/// Roots below this are states sitting at threshold and are dropped.
pub const THRESHOLD_ROOT: f64 = 1e-6;
const ROOT_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WellKind {
    /// Hard wall at `x = 0` plus `-U_0 exp(-αx)` for `x > 0`.
    I,
    /// Symmetric `-U_0 exp(-α|x|)`.
    II,
}

/// Physical scales, used only to convert at the input/output boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Units {
    pub u0: f64,
    pub alpha: f64,
    pub mass: f64,
    pub hbar: f64,
}

impl Units {
    /// Depth parameter `a = sqrt(8 m U_0) / (ħ α)`.
    pub fn depth_parameter(&self) -> f64 {
        (8.0 * self.mass * self.u0).sqrt() / (self.hbar * self.alpha)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialSpec {
    pub kind: WellKind,
    pub a: f64,
    pub units: Option<Units>,
}

impl PotentialSpec {
    pub fn new(kind: WellKind, a: f64) -> Result<Self> {
        check_a(a)?;
        Ok(Self { kind, a, units: None })
    }

    pub fn well_i(a: f64) -> Result<Self> {
        Self::new(WellKind::I, a)
    }

    pub fn well_ii(a: f64) -> Result<Self> {
        Self::new(WellKind::II, a)
    }

    /// Potential in units of `U_0` at `X = αx`; infinite behind the wall of WellI.
    pub fn potential(&self, x: f64) -> f64 {
        match self.kind {
            WellKind::I if x < 0.0 => f64::INFINITY,
            _ => -(-x.abs()).exp(),
        }
    }

    /// Factor turning `U_0` units into the internal `ħ = 2m = α = 1` units.
    pub fn internal_scale(&self) -> f64 {
        0.25 * self.a * self.a
    }
}

pub(crate) fn check_a(a: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Domain(format!("depth parameter a must be positive and finite, got {a}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RootKind {
    /// `J_ν(a) = 0`
    Value,
    /// `J'_ν(a) = 0`
    Derivative,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundLevel {
    pub index: usize,
    /// Bessel order `b_n` (or `b̃_n` for even WellII states).
    pub root: f64,
    pub parity: Parity,
    /// `E/U_0 = -(root/a)²`
    pub energy: f64,
    /// Normalization so that `∫|ψ|² dX = 1` over the well's domain.
    pub norm: f64,
}

impl BoundLevel {
    pub fn root_kind(&self) -> RootKind {
        match self.parity {
            Parity::Even => RootKind::Derivative,
            _ => RootKind::Value,
        }
    }

    /// Normalized wavefunction at `X = αx`.
    pub fn wavefunction(&self, spec: &PotentialSpec, x: f64) -> Result<f64> {
        Ok(self.wavefunction_with_derivative(spec, x)?.0)
    }

    /// `(ψ(X), dψ/dX)`.
    pub fn wavefunction_with_derivative(&self, spec: &PotentialSpec, x: f64) -> Result<(f64, f64)> {
        if spec.kind == WellKind::I && x < 0.0 {
            return Err(Error::Domain(format!("WellI wavefunction undefined behind the wall (x = {x})")));
        }
        let y = spec.a * (-0.5 * x.abs()).exp();
        if y == 0.0 {
            return Ok((0.0, 0.0));
        }
        let (j, jp) = bessel_j_real_with_derivative(self.root, y)?;
        let psi = self.norm * j;
        let dpsi = -0.5 * y * self.norm * jp;
        Ok(match (self.parity, x < 0.0) {
            (Parity::Odd, true) => (-psi, dpsi),
            (Parity::Even, true) => (psi, -dpsi),
            _ => (psi, dpsi),
        })
    }

    /// `-ψ'/ψ` in internal units, evaluated through the Bessel ratio so it
    /// stays finite far out in the tail.
    pub fn log_derivative(&self, spec: &PotentialSpec, x: f64) -> Result<f64> {
        if spec.kind == WellKind::I && x < 0.0 {
            return Err(Error::Domain(format!("WellI wavefunction undefined behind the wall (x = {x})")));
        }
        let y = spec.a * (-0.5 * x.abs()).exp();
        // -ψ'/ψ = (y/2) J'_b/J_b = b/2 - (y/2) J_{b+1}/J_b   for X > 0
        let w = 0.5 * self.root - 0.5 * y * bessel_ratio(self.root, y)?;
        Ok(if x < 0.0 { -w } else { w })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundSpectrum {
    pub spec: PotentialSpec,
    pub levels: Vec<BoundLevel>,
}

impl BoundSpectrum {
    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn ground(&self) -> Option<&BoundLevel> {
        self.levels.first()
    }
}

fn root_function(kind: RootKind, a: f64) -> impl Fn(f64) -> f64 {
    move |nu: f64| {
        let (j, jp) = bessel_j_real_with_derivative(nu, a).expect("order and argument inside the validated box");
        match kind {
            RootKind::Value => j,
            RootKind::Derivative => jp,
        }
    }
}

/// All orders `ν > 0` with `J_ν(a) = 0` or `J'_ν(a) = 0`, descending.
pub fn order_zeros(a: f64, kind: RootKind) -> Result<Vec<f64>> {
    check_a(a)?;
    if a > MAX_ARG {
        return Err(Error::AccuracyLoss { order: a, arg: a });
    }
    // both J_ν(a) and J'_ν(a) are positive for ν >= a
    let f = root_function(kind, a);
    let mut grid = Vec::new();
    let mut nu = a;
    while nu > THRESHOLD_ROOT {
        grid.push(nu);
        nu -= ORDER_SCAN_STEP;
    }
    grid.push(THRESHOLD_ROOT);
    let mut out = Vec::new();
    let mut prev = (grid[0], f(grid[0]));
    for &nu in &grid[1..] {
        let val = f(nu);
        if val == 0.0 {
            out.push(nu);
        } else if prev.1 != 0.0 && (val < 0.0) != (prev.1 < 0.0) {
            out.push(roots::brent(&f, nu, prev.0, ROOT_TOL)?);
        }
        prev = (nu, val);
    }
    Ok(out)
}

/// `∫_0^a J_ν(t)²/t dt` at a root, from the order-derivative identities
///
/// `∫_0^a J_ν²/t dt = -(a/2ν) J'_ν(a) ∂_ν J_ν(a)`   when `J_ν(a) = 0`,
/// `∫_0^a J_ν²/t dt =  (a/2ν) J_ν(a) ∂_ν J'_ν(a)`   when `J'_ν(a) = 0`.
pub fn bessel_square_integral(nu: f64, a: f64, kind: RootKind) -> Result<f64> {
    let h = 1e-3_f64.min(0.25 * nu.max(1e-3));
    let (j, jp) = bessel_j_real_with_derivative(nu, a)?;
    let f = root_function(kind, a);
    let dnu = derivative5(&f, nu, h);
    Ok(match kind {
        RootKind::Value => -a * jp * dnu / (2.0 * nu),
        RootKind::Derivative => a * j * dnu / (2.0 * nu),
    })
}

/// Bound spectrum ordered by energy (ground state first).
pub fn spectrum(spec: &PotentialSpec) -> Result<BoundSpectrum> {
    let a = spec.a;
    let mut roots: Vec<(f64, RootKind)> = order_zeros(a, RootKind::Value)?
        .into_iter()
        .map(|r| (r, RootKind::Value))
        .collect();
    if spec.kind == WellKind::II {
        roots.extend(order_zeros(a, RootKind::Derivative)?.into_iter().map(|r| (r, RootKind::Derivative)));
    }
    roots.sort_by(|x, y| y.0.total_cmp(&x.0));
    // ∫ψ² dX = 2 N² ∫_0^a J²/y dy on the half line, doubled again for WellII
    let sides = if spec.kind == WellKind::II { 2.0 } else { 1.0 };
    let levels = roots
        .into_iter()
        .enumerate()
        .map(|(index, (root, kind))| {
            let integral = bessel_square_integral(root, a, kind)?;
            let parity = match (spec.kind, kind) {
                (WellKind::I, _) => Parity::None,
                (WellKind::II, RootKind::Value) => Parity::Odd,
                (WellKind::II, RootKind::Derivative) => Parity::Even,
            };
            Ok(BoundLevel {
                index,
                root,
                parity,
                energy: -(root / a).powi(2),
                norm: 1.0 / (2.0 * sides * integral).sqrt(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundSpectrum { spec: *spec, levels })
}

/// Threshold depth for the first WellI level: the first zero of `J_0`.
pub fn critical_a() -> f64 {
    roots::brent(|x| bessel_j_real(0.0, x).expect("in range"), 2.0, 3.0, 1e-14).expect("J_0 changes sign on [2, 3]")
}

/// Cross-check the level count against the negative eigenvalues of a grid
/// Hamiltonian; returns the count, or [`Error::CountMismatch`].
pub fn audit_level_count(spec: &PotentialSpec) -> Result<usize> {
    let roots = spectrum(spec)?.len();
    let grid = crate::oracle::bound_state_count(spec)?;
    if roots != grid {
        return Err(Error::CountMismatch { roots, grid });
    }
    Ok(roots)
}
