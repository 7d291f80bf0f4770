//! Superpotentials and supersymmetric partners of the exponential wells.
//!
//! Internal units `ħ = 2m = α = 1`: `W = -ψ₀'/ψ₀`, `V₋ = W² - W' = V - ε₀`,
//! `V₊ = W² + W'`. Reported values are converted to `U_0` units (energies
//! times `4/a²`, `W` times `2/a`).
//!
//! Depth `k` of the hierarchy uses Crum's closed form: with
//! `D_k = Wr(ψ₀, …, ψ_{k-1})` the partner `U_k = V - 2(ln D_k)''` carries the
//! parent levels `ε_k, ε_{k+1}, …`, and
//! `W⁽ᵏ⁾ = -(ln D_k - ln D_{k-1})'`, `V₊⁽ᵏ⁾ = U_k - ε_{k-1}`.
//! Derivatives of the `ψ_j` beyond the first come from differentiating
//! `ψ'' = (V - ε)ψ`. Columns that sit in their classically forbidden tail are
//! divided by `ψ_j` (ratio form, finite at any depth); elsewhere they are
//! scaled to unit size, which keeps nodes harmless.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{spectrum, BoundLevel, BoundSpectrum, PotentialSpec, WellKind};
use crate::oracle::{self, Boundary, GridProblem, Incidence, Scheme};
use crate::scatter::{reflection, ScatteringPoint};

/// Superpotential of depth `k` built from the `k` lowest levels of a well.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperPotential {
    spec: PotentialSpec,
    levels: Vec<BoundLevel>,
}

impl SuperPotential {
    fn new(spec: PotentialSpec, levels: Vec<BoundLevel>) -> Self {
        Self { spec, levels }
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn spec(&self) -> &PotentialSpec {
        &self.spec
    }

    /// Open interval on which `W` is defined.
    pub fn domain(&self) -> (f64, f64) {
        match self.spec.kind {
            WellKind::I => (0.0, f64::INFINITY),
            WellKind::II => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// `W(+∞)` in `√U_0` units; its square is `|E_{k-1}|/U_0`.
    pub fn asymptote(&self) -> f64 {
        self.levels.last().expect("depth >= 1").root / self.spec.a
    }

    /// Energy `E_{k-1}/U_0` removed by this factorization.
    pub fn factorization_energy(&self) -> f64 {
        self.levels.last().expect("depth >= 1").energy
    }

    fn check_x(&self, x: f64) -> Result<()> {
        if self.spec.kind == WellKind::I && !(x > 0.0) {
            return Err(Error::Domain(format!("WellI superpotential needs x > 0, got {x}")));
        }
        if !x.is_finite() {
            return Err(Error::Domain(format!("non-finite position {x}")));
        }
        Ok(())
    }

    /// `(W, W')` in internal units.
    pub fn eval_internal(&self, x: f64) -> Result<(f64, f64)> {
        self.check_x(x)?;
        if self.depth() == 1 {
            let ground = &self.levels[0];
            let w = ground.log_derivative(&self.spec, x)?;
            // Riccati: W' = W² - V + ε₀
            let eps = -0.25 * ground.root * ground.root;
            let v = internal_potential(&self.spec, x);
            return Ok((w, w * w - v + eps));
        }
        let (l1k, l2k) = log_wronskian_derivatives(&self.spec, &self.levels, x)?;
        let (l1p, l2p) = log_wronskian_derivatives(&self.spec, &self.levels[..self.depth() - 1], x)?;
        Ok((-(l1k - l1p), -(l2k - l2p)))
    }

    /// `W(x)` in `√U_0` units.
    pub fn eval(&self, x: f64) -> Result<f64> {
        Ok(self.eval_internal(x)?.0 * 2.0 / self.spec.a)
    }

    /// `V₊ = W² + W'` in internal units.
    pub fn partner_internal(&self, x: f64) -> Result<f64> {
        let (w, wp) = self.eval_internal(x)?;
        Ok(w * w + wp)
    }

    /// `V₋ = W² - W'` in internal units.
    pub fn minus_internal(&self, x: f64) -> Result<f64> {
        let (w, wp) = self.eval_internal(x)?;
        Ok(w * w - wp)
    }
}

/// `V₊ = W² + W'` in units of `U_0` (zero-ground convention).
pub fn partner_potential(w: &SuperPotential, x: f64) -> Result<f64> {
    Ok(w.partner_internal(x)? / w.spec.internal_scale())
}

pub(crate) fn internal_potential(spec: &PotentialSpec, x: f64) -> f64 {
    -spec.internal_scale() * (-x.abs()).exp()
}

/// `i`-th derivative of the internal potential at `x ≠ 0`.
fn potential_derivative(spec: &PotentialSpec, x: f64, i: usize) -> f64 {
    let v = internal_potential(spec, x);
    if x > 0.0 && i % 2 == 1 {
        -v
    } else {
        v
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `ψ_j^{(m)}` for `m = 0..=order`, up to a common factor per column.
fn column(spec: &PotentialSpec, level: &BoundLevel, x: f64, order: usize) -> Result<Vec<f64>> {
    let y = spec.a * (-0.5 * x.abs()).exp();
    let mut c = vec![0.0; order + 1];
    if y < level.root {
        c[0] = 1.0;
        c[1] = -level.log_derivative(spec, x)?;
    } else {
        let (p, dp) = level.wavefunction_with_derivative(spec, x)?;
        let s = p.hypot(dp);
        c[0] = p / s;
        c[1] = dp / s;
    }
    let eps = -0.25 * level.root * level.root;
    let g: Vec<f64> = (0..order)
        .map(|i| potential_derivative(spec, x, i) - if i == 0 { eps } else { 0.0 })
        .collect();
    for m in 0..order.saturating_sub(1) {
        c[m + 2] = (0..=m).map(|i| binomial(m, i) * g[i] * c[m - i]).sum();
    }
    Ok(c)
}

fn determinant(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs())).unwrap();
        if m[piv][col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        det *= m[col][col];
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            for c in col..n {
                m[r][c] -= f * m[col][c];
            }
        }
    }
    det
}

/// `((ln D)', (ln D)'')` for the Wronskian of the given levels (`D = 1` for
/// an empty set).
fn log_wronskian_derivatives(spec: &PotentialSpec, levels: &[BoundLevel], x: f64) -> Result<(f64, f64)> {
    let k = levels.len();
    if k == 0 {
        return Ok((0.0, 0.0));
    }
    let cols: Vec<Vec<f64>> = levels.iter().map(|l| column(spec, l, x, k + 1)).collect::<Result<_>>()?;
    let det_rows = |rows: &[usize]| determinant(rows.iter().map(|&r| cols.iter().map(|c| c[r]).collect()).collect());
    let base: Vec<usize> = (0..k).collect();
    let d = det_rows(&base);
    let mut r1 = base.clone();
    r1[k - 1] = k;
    let d1 = det_rows(&r1);
    let mut r2 = base.clone();
    r2[k - 1] = k + 1;
    let mut d2 = det_rows(&r2);
    if k >= 2 {
        let mut r3 = base;
        r3[k - 2] = k - 1;
        r3[k - 1] = k;
        d2 += det_rows(&r3);
    }
    let l1 = d1 / d;
    Ok((l1, d2 / d - l1 * l1))
}

/// `W⁽¹⁾` for WellI in `√U_0` units.
pub fn superpotential_i(a: f64) -> Result<SuperPotential> {
    ground_superpotential(&PotentialSpec::well_i(a)?)
}

/// `W⁽¹⁾` for WellII in `√U_0` units (odd in `x`).
pub fn superpotential_ii(a: f64) -> Result<SuperPotential> {
    ground_superpotential(&PotentialSpec::well_ii(a)?)
}

fn ground_superpotential(spec: &PotentialSpec) -> Result<SuperPotential> {
    let s = spectrum(spec)?;
    let ground = *s.ground().ok_or(Error::NoBoundState(spec.a))?;
    Ok(SuperPotential::new(*spec, vec![ground]))
}

/// Second-level superpotential of WellI written directly in terms of `ψ₀`,
/// `ψ₁` (internal units):
/// `W⁽²⁾ = -[ψ₀(ψ₀ψ₁'' - ψ₀''ψ₁ - ψ₀'ψ₁') + ψ₀'²ψ₁] / [ψ₀(ψ₀ψ₁' - ψ₀'ψ₁)]`.
pub fn second_superpotential_explicit(spectrum: &BoundSpectrum, x: f64) -> Result<f64> {
    if spectrum.len() < 2 {
        return Err(Error::DepthExceedsLevels { depth: 2, levels: spectrum.len() });
    }
    let spec = &spectrum.spec;
    let (l0, l1) = (&spectrum.levels[0], &spectrum.levels[1]);
    let (p0, d0) = l0.wavefunction_with_derivative(spec, x)?;
    let (p1, d1) = l1.wavefunction_with_derivative(spec, x)?;
    let v = internal_potential(spec, x);
    let dd0 = (v + 0.25 * l0.root * l0.root) * p0;
    let dd1 = (v + 0.25 * l1.root * l1.root) * p1;
    let num = p0 * (p0 * dd1 - dd0 * p1 - d0 * d1) + d0 * d0 * p1;
    let den = p0 * (p0 * d1 - d0 * p1);
    Ok(-num / den)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SusyLevel {
    pub depth: usize,
    pub w: SuperPotential,
    /// `E_{k-1}/U_0`; `V₊⁽ᵏ⁾ + shift` is the partner on the parent's energy scale.
    pub shift: f64,
    /// Parent energies `E_k, E_{k+1}, …` in units of `U_0`.
    pub expected_spectrum: Vec<f64>,
}

impl SusyLevel {
    /// `V₊⁽ᵏ⁾` in units of `U_0`.
    pub fn v_plus(&self, x: f64) -> Result<f64> {
        partner_potential(&self.w, x)
    }

    /// `V₊⁽ᵏ⁾ + E_{k-1}`.
    pub fn v_plus_shifted(&self, x: f64) -> Result<f64> {
        Ok(self.v_plus(x)? + self.shift)
    }
}

/// The first `depth` rungs of the partner hierarchy.
pub fn hierarchy(spec: &PotentialSpec, depth: usize) -> Result<Vec<SusyLevel>> {
    if depth == 0 {
        return Err(Error::Domain("hierarchy depth must be at least 1".into()));
    }
    let s = spectrum(spec)?;
    if depth > s.len() {
        return Err(Error::DepthExceedsLevels { depth, levels: s.len() });
    }
    Ok((1..=depth)
        .map(|k| SusyLevel {
            depth: k,
            w: SuperPotential::new(*spec, s.levels[..k].to_vec()),
            shift: s.levels[k - 1].energy,
            expected_spectrum: s.levels[k..].iter().map(|l| l.energy).collect(),
        })
        .collect())
}

/// Grid problem for `V₊⁽ᵏ⁾ + ε_{k-1}` in internal units. WellI partners
/// have an `l(l+1)/x²` core, so the grid starts at `x₀ = offset·X_max`.
fn partner_grid(level: &SusyLevel, offset: f64) -> Result<GridProblem> {
    let spec = *level.w.spec();
    let xmax = oracle::fpwef_extent(&spec)?;
    let eps = level.shift * spec.internal_scale();
    let w = level.w.clone();
    let v: oracle::PotentialFn = std::sync::Arc::new(move |x| w.partner_internal(x).map(|v| v + eps).unwrap_or(f64::NAN));
    let k_max = 0.5 * spec.a;
    Ok(match spec.kind {
        WellKind::I => {
            let lo = offset * xmax;
            GridProblem::new(v, lo, xmax, oracle::default_points(xmax, k_max))
                .with_boundary(Boundary::DirichletLeftDecayRight)
                .with_scheme(Scheme::ThreePoint)
        }
        WellKind::II => {
            // V₊ is even with a cusp at 0; its size comes from the one-sided slope
            let h = 1e-4;
            let fwd = |t: f64| level.w.partner_internal(t).unwrap_or(f64::NAN);
            let slope = (-25.0 * fwd(h) + 48.0 * fwd(2.0 * h) - 36.0 * fwd(3.0 * h) + 16.0 * fwd(4.0 * h)
                - 3.0 * fwd(5.0 * h))
                / (12.0 * h);
            GridProblem::new(v, -xmax, xmax, oracle::default_points(2.0 * xmax, k_max))
                .with_boundary(Boundary::DecayBoth)
                .with_scheme(Scheme::Numerov)
                .with_kink(0.0, 2.0 * slope)
        }
    })
}

/// Default inner cut-off for WellI partner grids, as a fraction of `X_max`.
pub const CORE_OFFSET: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartnerReport {
    pub depth: usize,
    pub expected: Vec<f64>,
    /// Grid eigenvalues of `V₊⁽ᵏ⁾ + E_{k-1}` below zero, in units of `U_0`.
    pub found: Vec<f64>,
    pub relative_errors: Vec<f64>,
    /// Largest change of any found level when the WellI core cut-off is halved.
    pub core_sensitivity: Option<f64>,
    pub message: Option<String>,
    pub pass: bool,
}

pub const PARTNER_TOLERANCE: f64 = 1e-5;

fn partner_energies(level: &SusyLevel, offset: f64) -> Result<Vec<f64>> {
    let p = partner_grid(level, offset)?;
    let n = oracle::count_below(&p.refined(), 0.0)?;
    let s = oracle::grid_diagonalize(&p, n)?;
    let scale = level.w.spec().internal_scale();
    Ok(s.eigenvalues.iter().map(|e| e / scale).collect())
}

/// Diagonalize the partner on a grid and compare with the expected levels.
pub fn verify_partner_spectrum(level: &SusyLevel) -> PartnerReport {
    let mut report = PartnerReport {
        depth: level.depth,
        expected: level.expected_spectrum.clone(),
        found: Vec::new(),
        relative_errors: Vec::new(),
        core_sensitivity: None,
        message: None,
        pass: false,
    };
    let found = match partner_energies(level, CORE_OFFSET) {
        Ok(f) => f,
        Err(e) => {
            report.message = Some(format!("oracle failed: {e}"));
            return report;
        }
    };
    if level.w.spec().kind == WellKind::I {
        if let Ok(half) = partner_energies(level, 0.5 * CORE_OFFSET) {
            if half.len() == found.len() {
                report.core_sensitivity =
                    Some(found.iter().zip(&half).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
            }
        }
    }
    report.relative_errors = found.iter().zip(&report.expected).map(|(f, e)| ((f - e) / e).abs()).collect();
    report.pass = found.len() == report.expected.len() && report.relative_errors.iter().all(|&r| r < PARTNER_TOLERANCE);
    if found.len() != report.expected.len() {
        report.message = Some(format!("partner has {} levels, expected {}", found.len(), report.expected.len()));
    }
    report.found = found;
    report
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScatteringRow {
    pub beta: f64,
    pub closed_form: Option<f64>,
    pub partner: Option<f64>,
    pub deviation: Option<f64>,
    /// `|r₊ - r₋(W₋ - ik)/(W₋ + ik)|` from the two ODE runs.
    pub phase_relation_error: Option<f64>,
    pub message: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScatteringReport {
    pub a: f64,
    pub rows: Vec<ScatteringRow>,
    pub max_deviation: f64,
    pub pass: bool,
}

pub const SCATTERING_TOLERANCE: f64 = 1e-4;

/// Compare `|r|²` of the symmetric well (closed form) with `|r|²` of its
/// first partner (ODE integration of `V₊⁽¹⁾ + Ẽ₀`).
pub fn verify_scattering_invariance(a: f64, betas: &[f64]) -> Result<ScatteringReport> {
    let spec = PotentialSpec::well_ii(a)?;
    let w = superpotential_ii(a)?;
    let ground = spectrum(&spec)?.levels[0];
    let eps = -0.25 * ground.root * ground.root;
    let w_minus = -0.5 * ground.root;
    let rows: Vec<ScatteringRow> = betas
        .iter()
        .map(|&beta| {
            let mut row = ScatteringRow {
                beta,
                closed_form: None,
                partner: None,
                deviation: None,
                phase_relation_error: None,
                message: None,
            };
            match ScatteringPoint::new(a, beta).and_then(reflection) {
                Ok(r) => row.closed_form = Some(r.reflection),
                Err(e) => row.message = Some(e.to_string()),
            }
            let k = 0.5 * beta;
            let ext = oracle::exponential_tail_extent(a * a, k);
            let plus = oracle::ode_scatter(
                |x| w.partner_internal(x).map(|v| v + eps).unwrap_or(f64::NAN),
                k,
                -ext,
                ext,
                Incidence::Left,
            );
            let minus = oracle::ode_scatter(|x| internal_potential(&spec, x), k, -ext, ext, Incidence::Left);
            match (plus, minus) {
                (Ok(p), Ok(m)) => {
                    row.partner = Some(p.reflection());
                    let i = Complex64::i();
                    let predicted = m.r * (w_minus - i * k) / (w_minus + i * k);
                    row.phase_relation_error = Some((p.r - predicted).norm());
                }
                (Err(e), _) | (_, Err(e)) => row.message = Some(format!("oracle failed: {e}")),
            }
            if let (Some(c), Some(p)) = (row.closed_form, row.partner) {
                row.deviation = Some((c - p).abs());
            }
            row
        })
        .collect();
    let max_deviation = rows.iter().filter_map(|r| r.deviation).fold(0.0, f64::max);
    let pass = rows.iter().all(|r| r.deviation.is_some_and(|d| d <= SCATTERING_TOLERANCE));
    Ok(ScatteringReport { a, rows, max_deviation, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crum_depth_one_matches_riccati_form() {
        let spec = PotentialSpec::well_i(11.75).unwrap();
        let s = spectrum(&spec).unwrap();
        let w = SuperPotential::new(spec, vec![s.levels[0]]);
        for &x in &[0.05, 0.7, 3.0, 12.0] {
            let (wa, wpa) = w.eval_internal(x).unwrap();
            let (l1, l2) = log_wronskian_derivatives(&spec, &s.levels[..1], x).unwrap();
            assert!((wa + l1).abs() < 1e-9 * wa.abs().max(1.0), "{x}");
            assert!((wpa + l2).abs() < 1e-8 * wpa.abs().max(1.0), "{x}");
        }
    }

    #[test]
    fn explicit_second_superpotential_agrees_with_crum() {
        let spec = PotentialSpec::well_i(11.75).unwrap();
        let levels = hierarchy(&spec, 2).unwrap();
        let s = spectrum(&spec).unwrap();
        for &x in &[0.1, 0.5, 1.3, 2.2, 4.0, 8.0] {
            let crum = levels[1].w.eval_internal(x).unwrap().0;
            let explicit = second_superpotential_explicit(&s, x).unwrap();
            assert!((crum - explicit).abs() < 1e-8 * crum.abs().max(1.0), "{x}: {crum} vs {explicit}");
        }
    }

    #[test]
    fn depth_contract() {
        let spec = PotentialSpec::well_i(11.75).unwrap();
        assert!(hierarchy(&spec, 0).is_err());
        assert!(matches!(hierarchy(&spec, 4), Err(Error::DepthExceedsLevels { depth: 4, levels: 3 })));
        let h = hierarchy(&spec, 2).unwrap();
        assert_eq!(h[0].expected_spectrum.len(), 2);
        assert_eq!(h[1].expected_spectrum.len(), 1);
        assert!(superpotential_i(2.0).is_err());
    }

    #[test]
    fn asymptote_squares_to_ground_energy() {
        let w = superpotential_i(11.75).unwrap();
        assert!((w.asymptote().powi(2) + w.factorization_energy()).abs() < 1e-14);
        assert!((w.eval(40.0).unwrap() - w.asymptote()).abs() < 1e-10);
    }
}
