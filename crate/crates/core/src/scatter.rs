//! Scattering on the symmetric well from the closed-form Bessel expression.
//!
//! Left of the origin the solution is `A₁ J_b(a e^{X/2}) + A₂ J_{-b}(a e^{X/2})`
//! with `b = iβ`, right of it `C J_{-b}(a e^{-X/2})` (outgoing wave only).
//! Matching value and slope at `X = 0` gives
//! `A₂/A₁ = -(J_b/J_{-b} + J'_b/J'_{-b})/2`, all at argument `a`. The
//! physical amplitude (incident `e^{ikX}`, reflected `r e^{-ikX}`, phases
//! referred to `X = 0`, `k = β/2`) adds the factor
//! `(a/2)^{-2iβ} Γ(1+iβ)/Γ(1-iβ)`, which has unit modulus.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::check_a;
use crate::numerics::{derivative5, linspace, minimize::golden_section};
use crate::specfun::{bessel_j, bessel_j_dx, log_gamma, BesselOrder};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringPoint {
    pub a: f64,
    pub beta: f64,
}

impl ScatteringPoint {
    pub fn new(a: f64, beta: f64) -> Result<Self> {
        check_a(a)?;
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::Domain(format!("beta must be positive, got {beta}")));
        }
        Ok(Self { a, beta })
    }

    /// Wavenumber in units of α.
    pub fn k(&self) -> f64 {
        0.5 * self.beta
    }

    /// Energy `E/U_0 = β²/a²`.
    pub fn energy(&self) -> f64 {
        (self.beta / self.a).powi(2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringResult {
    pub re_r: f64,
    pub im_r: f64,
    /// `|r|²`
    pub reflection: f64,
    /// `1 - |r|²`
    pub transmission: f64,
}

impl ScatteringResult {
    pub fn r(&self) -> Complex64 {
        Complex64::new(self.re_r, self.im_r)
    }
}

/// Reflection amplitude and probability for the symmetric well.
pub fn reflection(point: ScatteringPoint) -> Result<ScatteringResult> {
    let (a, beta) = (point.a, point.beta);
    let jb = bessel_j(BesselOrder::Imaginary(beta), a)?;
    let jpb = bessel_j_dx(BesselOrder::Imaginary(beta), a)?;
    let jm = bessel_j(BesselOrder::Imaginary(-beta), a)?;
    let jpm = bessel_j_dx(BesselOrder::Imaginary(-beta), a)?;
    if jm.norm() < 1e-300 || jpm.norm() < 1e-300 {
        return Err(Error::NearSingular { a, beta });
    }
    let sum = jb / jm + jpb / jpm;
    let prob = (0.25 * sum.norm_sqr()).clamp(0.0, 1.0);
    let b = Complex64::new(0.0, beta);
    let phase = (-2.0 * b * (0.5 * a).ln() + log_gamma(1.0 + b)? - log_gamma(1.0 - b)?).exp();
    let r = -0.5 * sum * phase;
    Ok(ScatteringResult { re_r: r.re, im_r: r.im, reflection: prob, transmission: 1.0 - prob })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReflectionMap {
    pub a: Vec<f64>,
    pub beta: Vec<f64>,
    /// Row-major over `a` (outer) and `beta` (inner); `None` where the
    /// closed form failed.
    pub values: Vec<Option<f64>>,
}

impl ReflectionMap {
    pub fn get(&self, ia: usize, ib: usize) -> Option<f64> {
        self.values[ia * self.beta.len() + ib]
    }
}

/// Probability `|r|²` on a Cartesian grid of `(a, β)`.
pub fn reflection_map(a_range: (f64, f64), a_count: usize, beta_range: (f64, f64), beta_count: usize) -> Result<ReflectionMap> {
    if a_count == 0 || beta_count == 0 || !(a_range.0 > 0.0) || !(beta_range.0 > 0.0) {
        return Err(Error::Domain("reflection map needs positive ranges and non-zero counts".into()));
    }
    let a = linspace(a_range.0, a_range.1, a_count);
    let beta = linspace(beta_range.0, beta_range.1, beta_count);
    let values = a
        .iter()
        .flat_map(|&ai| beta.iter().map(move |&bi| reflection_cell(ai, bi)))
        .collect();
    Ok(ReflectionMap { a, beta, values })
}

pub fn reflection_cell(a: f64, beta: f64) -> Option<f64> {
    ScatteringPoint::new(a, beta).and_then(reflection).ok().map(|r| r.reflection)
}

/// Closed-form bound `4π/(3√3 β)` on `|dλ/dX|`, `λ` the local de Broglie
/// wavelength in units of `1/α`.
pub fn max_wavelength_gradient(beta: f64) -> f64 {
    4.0 * std::f64::consts::PI / (3.0 * 3f64.sqrt() * beta)
}

/// Local de Broglie wavelength `4π/sqrt(β² + a² e^{-|X|})`.
pub fn de_broglie_wavelength(a: f64, beta: f64, x: f64) -> f64 {
    4.0 * std::f64::consts::PI / (beta * beta + a * a * (-x.abs()).exp()).sqrt()
}

/// Largest `|dλ/dX|` over the well, found by golden-section search on a
/// finite-difference derivative of [`de_broglie_wavelength`]. Equals the
/// closed form when `a ≥ √2 β`; for shallower wells the maximum sits at the
/// cusp and is smaller.
pub fn max_wavelength_gradient_numeric(a: f64, beta: f64) -> Result<f64> {
    let point = ScatteringPoint::new(a, beta)?;
    let slope = |x: f64| derivative5(|t| de_broglie_wavelength(point.a, point.beta, t), x, 1e-3).abs();
    let hi = (a * a / (beta * beta)).ln().max(0.0) + 10.0;
    let (x, _) = golden_section(|x| -slope(x), 1e-2, hi, 1e-10);
    Ok(slope(x).max(slope(1e-2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probability_in_unit_interval() {
        for &(a, b) in &[(0.3, 0.1), (3.0, 0.01), (8.0, 2.0), (12.0, 0.3)] {
            let r = reflection(ScatteringPoint::new(a, b).unwrap()).unwrap();
            assert!((0.0..=1.0).contains(&r.reflection));
            assert!((r.r().norm_sqr() - r.reflection).abs() < 1e-12);
        }
    }

    #[test]
    fn gradient_closed_form_value() {
        assert!((max_wavelength_gradient(1.0) - 2.418399152).abs() < 1e-8);
    }

    #[test]
    fn degenerate_map() {
        let m = reflection_map((4.0, 4.0), 1, (1.0, 1.0), 1).unwrap();
        let direct = reflection(ScatteringPoint::new(4.0, 1.0).unwrap()).unwrap().reflection;
        assert_eq!(m.values, vec![Some(direct)]);
    }

    #[test]
    fn invalid_points() {
        assert!(ScatteringPoint::new(4.0, 0.0).is_err());
        assert!(ScatteringPoint::new(-1.0, 1.0).is_err());
    }
}
