//! Small numerical building blocks shared by the physics modules: adaptive
//! quadrature, bracketing root finders, 1-D minimization and an embedded
//! Runge-Kutta integrator.

pub mod minimize;
pub mod ode;
pub mod quad;
pub mod roots;

/// `n` points spaced evenly in log between `lo` and `hi` (both positive).
pub fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (l, h) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (l + (h - l) * i as f64 / (n - 1).max(1) as f64).exp())
        .collect()
}

/// `n` evenly spaced points on `[lo, hi]`; a single point yields `lo`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Five-point central difference of `f` at `x` with step `h`.
pub fn derivative5<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}
