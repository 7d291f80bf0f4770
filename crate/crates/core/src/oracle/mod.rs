//! Independent numerical ground truth: grid diagonalization of 1-D
//! Hamiltonians and direct ODE integration of scattering states. All of it
//! works in internal units, `H = -d²/dX² + V(X)`; the exponential wells read
//! `V = -(a²/4) exp(-|X|)` there and `E/U_0 = 4E/a²`.

pub mod grid;
pub mod scatter;

pub use grid::{
    convergence_study, count_below, grid_diagonalize, grid_eigenvalues, Boundary, ConvergenceReport, GridProblem,
    Kink, OracleSpectrum, PotentialFn, Scheme,
};
pub use scatter::{exponential_tail_extent, ode_scatter, Incidence, ScatterAmplitudes};

use std::sync::Arc;

use crate::error::Result;
use crate::exact::{self, PotentialSpec, WellKind};

/// Grid resolution for the wells: `h·k_max` with `k_max = a/2` the largest
/// local wavenumber.
const PHASE_PER_STEP: f64 = 0.1;
const MIN_POINTS: usize = 4097;

/// Internal-unit potential `-(a²/4) exp(-|X|)`.
pub fn fpwef_potential(spec: &PotentialSpec) -> PotentialFn {
    let c = spec.internal_scale();
    Arc::new(move |x: f64| -c * (-x.abs()).exp())
}

/// Outer edge of the grid: `max(30, 2 ln a + 40/b_min)`, `b_min` the
/// smallest Bessel-order root (floored at 0.02 so near-threshold states do
/// not demand absurd domains).
pub fn fpwef_extent(spec: &PotentialSpec) -> Result<f64> {
    let s = exact::spectrum(spec)?;
    let b_min = s.levels.last().map(|l| l.root).unwrap_or(1.0).max(0.02);
    Ok((2.0 * spec.a.ln() + 40.0 / b_min).max(30.0))
}

/// Number of grid points for a span `length` at the default resolution.
pub fn default_points(length: f64, k_max: f64) -> usize {
    let h = PHASE_PER_STEP / k_max.max(1e-3);
    let n = ((length / h).ceil() as usize + 1).max(MIN_POINTS);
    n | 1
}

/// Grid problem for one of the wells with the given scheme; WellII carries
/// the cusp at `X = 0` as a kink of size `a²/2`.
pub fn fpwef_grid(spec: &PotentialSpec, scheme: Scheme) -> Result<GridProblem> {
    let xmax = fpwef_extent(spec)?;
    let k_max = 0.5 * spec.a;
    let v = fpwef_potential(spec);
    Ok(match spec.kind {
        WellKind::I => GridProblem::new(v, 0.0, xmax, default_points(xmax, k_max))
            .with_boundary(Boundary::DirichletLeftDecayRight)
            .with_scheme(scheme),
        WellKind::II => GridProblem::new(v, -xmax, xmax, default_points(2.0 * xmax, k_max))
            .with_boundary(Boundary::DecayBoth)
            .with_scheme(scheme)
            .with_kink(0.0, 0.5 * spec.a * spec.a),
    })
}

/// Negative grid eigenvalues of the well (Numerov, fine grid).
pub fn bound_state_count(spec: &PotentialSpec) -> Result<usize> {
    let p = fpwef_grid(spec, Scheme::Numerov)?;
    count_below(&p, 0.0)
}

/// Bound-state energies of the well in units of `U_0` from the grid,
/// Richardson-extrapolated.
pub fn fpwef_energies(spec: &PotentialSpec) -> Result<Vec<f64>> {
    let p = fpwef_grid(spec, Scheme::Numerov)?;
    let n = count_below(&p.refined(), 0.0)?;
    let s = grid_diagonalize(&p, n)?;
    let scale = spec.internal_scale();
    Ok(s.eigenvalues.iter().map(|e| e / scale).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn well_i_848_two_levels() {
        let spec = PotentialSpec::well_i(8.48).unwrap();
        let e = fpwef_energies(&spec).unwrap();
        let exact = exact::spectrum(&spec).unwrap().energies();
        assert_eq!(e.len(), 2);
        for (g, x) in e.iter().zip(&exact) {
            assert!((g / x - 1.0).abs() < 1e-6, "{g} vs {x}");
        }
    }
}
