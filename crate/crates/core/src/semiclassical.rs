//! Semiclassical quantization of the exponential wells.
//!
//! With `E = -U_0 y²` the WKB action across the well is `(a/π)·F(y)` periods,
//! `F(y) = sqrt(1 - y²) - y·arccos(y)`, so
//!
//! * WellI (hard wall + one smooth turning point, Maslov 3/4):
//!   `(n + 3/4)π/a = F(y_n)`
//! * WellII (two smooth turning points, Maslov 1/2, twice the width):
//!   `(n + 1/2)π/(2a) = F(y_n)`
//!
//! JWKB adds the first `ħ²` term
//! `δ(E) = -(1/24π)(ħ²/2m)^{1/2} ∂_E ∫ U''(x)/(E - U(x))^{1/2} dx`, the
//! integral taken over the smooth part of the well `(0, x_t)` only (the wall
//! is already accounted for by the Maslov index). For WellI the integral is
//! `-2 sqrt(1 - y²)`, giving `δ = 1/(12πa sqrt(1 - y²))`, and the level
//! condition used here is `n + 3/4 = (a/π)F(y) - δ`.
//!
//! SWKB: `∫ sqrt(E⁻ - W²) dx = nπ` between the roots of `W² = E⁻`
//! (internal units), `E_n = E⁻_n + E_0`.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::exact::{spectrum, PotentialSpec, WellKind};
use crate::numerics::{quad, roots};
use crate::susy::{superpotential_i, superpotential_ii, SuperPotential};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scheme {
    Wkb,
    Jwkb,
    Swkb,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::Wkb, Scheme::Jwkb, Scheme::Swkb];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Wkb => "wkb",
            Scheme::Jwkb => "jwkb",
            Scheme::Swkb => "swkb",
        }
    }
}

/// Which JWKB correction is used for the reported energies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum JwkbForm {
    /// `δ` from numerical quadrature and energy differentiation.
    Integral,
    /// `n + 3/4 = (a/π)F(y) - 1/(12πa sqrt(1 - y))`, the correction term as
    /// printed (square root of `1 - y`), with the `a/π` factor of the WKB
    /// condition restored.
    Printed,
}

/// Maslov index for the well: 3/4 with the hard wall, 1/2 without.
pub fn maslov(kind: WellKind) -> f64 {
    match kind {
        WellKind::I => 0.75,
        WellKind::II => 0.5,
    }
}

/// `F(y) = sqrt(1 - y²) - y·arccos(y)` on `[0, 1]`.
pub fn action_f(y: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&y) {
        return Err(Error::Domain(format!("F(y) needs 0 <= y <= 1, got {y}")));
    }
    Ok((1.0 - y * y).sqrt() - y * y.acos())
}

fn f_unchecked(y: f64) -> f64 {
    (1.0 - y * y).max(0.0).sqrt() - y * y.clamp(-1.0, 1.0).acos()
}

/// Classical turning point `X_t = -ln(y²)` of `-e^{-X} = -y²`.
pub fn turning_point(y: f64) -> f64 {
    -2.0 * y.ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantizedLevel {
    pub n: usize,
    /// `sqrt(-E/U_0)`
    pub y: f64,
    /// `E/U_0`
    pub energy: f64,
    pub exact: Option<f64>,
    pub relative_error: Option<f64>,
    /// JWKB only: energy from the other correction form minus this one.
    pub form_discrepancy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantizationResult {
    pub scheme: Scheme,
    pub maslov: Option<f64>,
    pub levels: Vec<QuantizedLevel>,
    /// More levels than the exact spectrum has plus one.
    pub overshoot: bool,
}

fn solve_decreasing<F: Fn(f64) -> f64>(g: F, target: f64) -> Result<f64> {
    // g decreases on (0, 1); find y with g(y) = target
    roots::bisect(|y| g(y) - target, 1e-15, 1.0 - 1e-15, 1e-14)
}

fn finish(scheme: Scheme, maslov: Option<f64>, spec: &PotentialSpec, raw: Vec<(f64, Option<f64>)>) -> Result<QuantizationResult> {
    let exact = spectrum(spec)?.energies();
    let levels: Vec<QuantizedLevel> = raw
        .into_iter()
        .enumerate()
        .map(|(n, (y, other))| {
            let energy = -y * y;
            let ex = exact.get(n).copied();
            QuantizedLevel {
                n,
                y,
                energy,
                exact: ex,
                relative_error: ex.map(|e| ((energy - e) / e).abs()),
                form_discrepancy: other.map(|o| -o * o - energy),
            }
        })
        .collect();
    let overshoot = levels.len() > exact.len() + 1;
    Ok(QuantizationResult { scheme, maslov, levels, overshoot })
}

/// WKB levels with the Maslov index of the well.
pub fn wkb_spectrum(spec: &PotentialSpec) -> Result<QuantizationResult> {
    let nu = maslov(spec.kind);
    let g = match spec.kind {
        WellKind::I => 1.0,
        WellKind::II => 2.0,
    };
    let mut raw = Vec::new();
    for n in 0.. {
        let target = (n as f64 + nu) * PI / (spec.a * g);
        if target > 1.0 {
            break;
        }
        raw.push((solve_decreasing(f_unchecked, target)?, None));
    }
    finish(Scheme::Wkb, Some(nu), spec, raw)
}

/// `∫_0^{X_t} U''/(E - U)^{1/2} dX` for `U = -e^{-X}` (units of `U_0`).
fn curvature_integral(e: f64) -> Result<f64> {
    let xt = -(-e).ln();
    // X = X_t (1 - t²) removes the inverse square root at the turning point
    let f = |t: f64| {
        let x = xt * (1.0 - t * t);
        let u = (-x).exp();
        // e + u without cancellation near the turning point
        let d = -e * (xt * t * t).exp_m1();
        if d <= 0.0 {
            return 0.0;
        }
        -u / d.sqrt() * 2.0 * xt * t
    };
    let r = quad::integrate(f, 0.0, 1.0, 1e-14, 1e-13);
    if !r.converged {
        return Err(Error::Convergence(format!("curvature integral at E = {e}")));
    }
    Ok(r.value)
}

/// First-order correction `δ(y)` for WellI from the curvature integral,
/// with the energy derivative by centred differences, Richardson-extrapolated.
pub fn jwkb_delta_integral(a: f64, y: f64) -> Result<f64> {
    let e = -y * y;
    // keep the stencil clear of both E = 0 and the well bottom E = -U_0
    let h = 1e-2 * (y * y).min(1.0 - y * y);
    let diff = |h: f64| -> Result<f64> { Ok((curvature_integral(e + h)? - curvature_integral(e - h)?) / (2.0 * h)) };
    let d1 = diff(h)?;
    let d2 = diff(0.5 * h)?;
    let dide = (4.0 * d2 - d1) / 3.0;
    // (ħ²/2m)^{1/2} = 2/a in units of U_0 and 1/α
    Ok(-(1.0 / (24.0 * PI)) * (2.0 / a) * dide)
}

/// Closed form of the same correction, `1/(12πa sqrt(1 - y²))`.
pub fn jwkb_delta_closed(a: f64, y: f64) -> f64 {
    1.0 / (12.0 * PI * a * (1.0 - y * y).sqrt())
}

/// Printed correction term `1/(12πa sqrt(1 - y))`.
pub fn jwkb_delta_printed(a: f64, y: f64) -> f64 {
    1.0 / (12.0 * PI * a * (1.0 - y).sqrt())
}

/// Below this `y` the energy difference in the integral form is lost to
/// cancellation; JWKB levels shallower than `-U_0·Y_FLOOR²` are not reported.
pub const JWKB_Y_FLOOR: f64 = 1e-3;

fn jwkb_levels(a: f64, form: JwkbForm) -> Result<Vec<f64>> {
    let g = |y: f64| -> f64 {
        let delta = match form {
            JwkbForm::Integral => jwkb_delta_integral(a, y).unwrap_or(f64::NAN),
            JwkbForm::Printed => jwkb_delta_printed(a, y),
        };
        a * f_unchecked(y) / PI - delta
    };
    let top = g(JWKB_Y_FLOOR);
    if top.is_nan() {
        return Err(Error::Convergence("JWKB correction near threshold".into()));
    }
    let mut out = Vec::new();
    for n in 0.. {
        let target = n as f64 + 0.75;
        if target > top {
            break;
        }
        let y = roots::brent(|y| g(y) - target, JWKB_Y_FLOOR, 1.0 - 1e-12, 1e-14)?;
        out.push(y);
    }
    Ok(out)
}

/// JWKB levels for WellI; each level also records the energy shift that
/// the other correction form would give.
pub fn jwkb_spectrum(spec: &PotentialSpec, form: JwkbForm) -> Result<QuantizationResult> {
    if spec.kind != WellKind::I {
        return Err(Error::Domain("the JWKB correction is implemented for WellI only".into()));
    }
    let main = jwkb_levels(spec.a, form)?;
    let other_form = match form {
        JwkbForm::Integral => JwkbForm::Printed,
        JwkbForm::Printed => JwkbForm::Integral,
    };
    let other = jwkb_levels(spec.a, other_form)?;
    let raw = main.iter().enumerate().map(|(i, &y)| (y, other.get(i).copied())).collect();
    finish(Scheme::Jwkb, Some(0.75), spec, raw)
}

fn superpotential(spec: &PotentialSpec) -> Result<SuperPotential> {
    match spec.kind {
        WellKind::I => superpotential_i(spec.a),
        WellKind::II => superpotential_ii(spec.a),
    }
}

struct SwkbAction {
    w: SuperPotential,
    x_lo: f64,
    x_zero: f64,
    x_hi: f64,
}

impl SwkbAction {
    fn new(spec: &PotentialSpec) -> Result<Self> {
        let w = superpotential(spec)?;
        let wf = |x: f64| w.eval_internal(x).map(|v| v.0).unwrap_or(f64::NAN);
        let (x_lo, x_zero) = match spec.kind {
            WellKind::I => {
                let x_lo = 1e-9;
                let mut hi = 1.0;
                while wf(hi) < 0.0 {
                    hi *= 2.0;
                }
                (x_lo, roots::brent(wf, x_lo, hi, 1e-14)?)
            }
            WellKind::II => (-300.0, 0.0),
        };
        Ok(Self { w, x_lo, x_zero, x_hi: 300.0 })
    }

    fn w(&self, x: f64) -> f64 {
        self.w.eval_internal(x).map(|v| v.0).unwrap_or(f64::NAN)
    }

    /// `∫ sqrt(E⁻ - W²) dx` between the turning points.
    fn action(&self, em: f64) -> Result<f64> {
        if em <= 0.0 {
            return Ok(0.0);
        }
        let s = em.sqrt();
        let x1 = roots::brent(|x| self.w(x) + s, self.x_lo, self.x_zero, 1e-14)?;
        let x2 = roots::brent(|x| self.w(x) - s, self.x_zero, self.x_hi, 1e-14)?;
        let half = 0.5 * (x2 - x1);
        let f = |th: f64| {
            let x = x1 + half * (1.0 - th.cos());
            let w = self.w(x);
            (em - w * w).max(0.0).sqrt() * half * th.sin()
        };
        let r = quad::integrate(f, 0.0, PI, 1e-13, 1e-12);
        Ok(r.value)
    }
}

/// SWKB levels, one per exact level unless the turning points run out.
pub fn swkb_spectrum(spec: &PotentialSpec) -> Result<QuantizationResult> {
    let exact = spectrum(spec)?;
    let ground = *exact.ground().ok_or(Error::NoBoundState(spec.a))?;
    let act = SwkbAction::new(spec)?;
    let top = 0.25 * ground.root * ground.root;
    let eps0 = -top;
    let mut raw = Vec::new();
    for n in 0..exact.len() {
        if n == 0 {
            raw.push((ground.root / spec.a, None));
            continue;
        }
        let target = n as f64 * PI;
        let e_hi = top * (1.0 - 1e-12);
        match act.action(e_hi) {
            Ok(v) if v >= target => {}
            _ => break,
        }
        let em = roots::brent(|e| act.action(e).unwrap_or(f64::NAN) - target, 0.0, e_hi, 1e-13 * top)?;
        let energy = (em + eps0) / spec.internal_scale();
        raw.push(((-energy).max(0.0).sqrt(), None));
    }
    finish(Scheme::Swkb, None, spec, raw)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorRow {
    pub n: usize,
    pub exact: f64,
    /// Energies per requested scheme, in the order given.
    pub energies: Vec<Option<f64>>,
    pub errors: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorTable {
    pub schemes: Vec<Scheme>,
    pub rows: Vec<ErrorRow>,
}

/// Relative errors of each scheme against the exact spectrum, one row per
/// exact level. JWKB uses the integral form; for WellII it is left empty.
pub fn error_table(spec: &PotentialSpec, schemes: &[Scheme]) -> Result<ErrorTable> {
    error_table_with_form(spec, schemes, JwkbForm::Integral)
}

pub fn error_table_with_form(spec: &PotentialSpec, schemes: &[Scheme], form: JwkbForm) -> Result<ErrorTable> {
    let exact = spectrum(spec)?.energies();
    let results: Vec<Option<QuantizationResult>> = schemes
        .iter()
        .map(|&s| -> Result<Option<QuantizationResult>> {
            Ok(match s {
                Scheme::Wkb => Some(wkb_spectrum(spec)?),
                Scheme::Jwkb if spec.kind == WellKind::I => Some(jwkb_spectrum(spec, form)?),
                Scheme::Jwkb => None,
                Scheme::Swkb if exact.is_empty() => None,
                Scheme::Swkb => Some(swkb_spectrum(spec)?),
            })
        })
        .collect::<Result<_>>()?;
    let rows = exact
        .iter()
        .enumerate()
        .map(|(n, &e)| {
            let energies: Vec<Option<f64>> =
                results.iter().map(|r| r.as_ref().and_then(|r| r.levels.get(n)).map(|l| l.energy)).collect();
            let errors = energies.iter().map(|x| x.map(|x| ((x - e) / e).abs())).collect();
            ErrorRow { n, exact: e, energies, errors }
        })
        .collect();
    Ok(ErrorTable { schemes: schemes.to_vec(), rows })
}
