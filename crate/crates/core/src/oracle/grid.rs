//! Finite-difference eigenvalues of `-ψ'' + V ψ = E ψ` on a uniform grid.
//!
//! Both schemes reduce to a symmetric tridiagonal matrix `T(E)` with unit
//! off-diagonal whose diagonal decreases monotonically in `E`, so the number
//! of negative pivots of `T(E)` counts eigenvalues below `E` (Sturm count)
//! and each eigenvalue is found by bisection.
//!
//! * three-point: `d_i = 2 + h²(V_i - E)`
//! * Numerov, in the variable `w = (1 - s)ψ` with `s = h²(V - E)/12`:
//!   `d_i = 2(1 + 5s)/(1 - s)`; valid while `s < 1` on the whole grid.
//!
//! A jump `J` in `V'` at a grid node spoils the truncation order there
//! (`ψ'''` jumps by `Jψ`); the leading local error is removed by adding
//! `h³J/6` (three-point) or `h³J/(12(1 - s))` (Numerov) to that diagonal.

use std::sync::Arc;

use crate::error::{Error, Result};

pub type PotentialFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    DirichletBoth,
    /// Dirichlet at `x_lo`; at `x_hi` the solution continues as `exp(-κx)`.
    DirichletLeftDecayRight,
    DecayBoth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    ThreePoint,
    Numerov,
}

impl Scheme {
    pub fn order(self) -> i32 {
        match self {
            Scheme::ThreePoint => 2,
            Scheme::Numerov => 4,
        }
    }
}

/// Location of a jump in `V'`, and its size `V'(x+) - V'(x-)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kink {
    pub x: f64,
    pub jump: f64,
}

#[derive(Clone)]
pub struct GridProblem {
    pub potential: PotentialFn,
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub boundary: Boundary,
    pub scheme: Scheme,
    pub kinks: Vec<Kink>,
}

impl std::fmt::Debug for GridProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GridProblem")
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .field("points", &self.points)
            .field("boundary", &self.boundary)
            .field("scheme", &self.scheme)
            .field("kinks", &self.kinks)
            .finish()
    }
}

impl GridProblem {
    pub fn new(potential: PotentialFn, lo: f64, hi: f64, points: usize) -> Self {
        Self {
            potential,
            lo,
            hi,
            points,
            boundary: Boundary::DirichletBoth,
            scheme: Scheme::ThreePoint,
            kinks: Vec::new(),
        }
    }

    pub fn with_boundary(mut self, boundary: Boundary) -> Self {
        self.boundary = boundary;
        self
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn with_kink(mut self, x: f64, jump: f64) -> Self {
        self.kinks.push(Kink { x, jump });
        self
    }

    /// Same problem on a grid with half the step.
    pub fn refined(&self) -> Self {
        let mut p = self.clone();
        p.points = 2 * self.points - 1;
        p
    }

    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.points - 1) as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.points).map(|j| self.lo + j as f64 * h).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleSpectrum {
    /// Richardson-extrapolated eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    /// `|E(h/2) - E(h)| / (2^p - 1)`, the size of the extrapolation step.
    pub error_estimates: Vec<f64>,
    /// Nodes of the finer grid.
    pub grid: Vec<f64>,
    /// Eigenvectors on the finer grid, unit norm under trapezoidal weights.
    pub eigenvectors: Vec<Vec<f64>>,
    pub warnings: Vec<String>,
}

/// Grid assembled for repeated Sturm counts.
pub(crate) struct Assembled {
    h: f64,
    v: Vec<f64>,
    /// index range of unknowns within the node array
    first: usize,
    last: usize,
    scheme: Scheme,
    kink_terms: Vec<(usize, f64)>,
    decay_left: bool,
    decay_right: bool,
}

impl Assembled {
    pub(crate) fn new(p: &GridProblem) -> Result<Self> {
        if p.points < 64 || !(p.hi > p.lo) {
            return Err(Error::Domain(format!(
                "grid needs at least 64 points on a non-empty interval (got {} on [{}, {}])",
                p.points, p.lo, p.hi
            )));
        }
        let h = p.step();
        let v: Vec<f64> = p.nodes().iter().map(|&x| (p.potential)(x)).collect();
        let (decay_left, decay_right) = match p.boundary {
            Boundary::DirichletBoth => (false, false),
            Boundary::DirichletLeftDecayRight => (false, true),
            Boundary::DecayBoth => (true, true),
        };
        let first = if decay_left { 0 } else { 1 };
        let last = if decay_right { p.points - 1 } else { p.points - 2 };
        for (i, &vi) in v.iter().enumerate().take(last + 1).skip(first) {
            if !vi.is_finite() {
                return Err(Error::Domain(format!("potential not finite at interior node x = {}", p.lo + i as f64 * h)));
            }
        }
        let mut kink_terms = Vec::new();
        for k in &p.kinks {
            let j = ((k.x - p.lo) / h).round();
            if (p.lo + j * h - k.x).abs() > 1e-9 * h {
                return Err(Error::Domain(format!("kink at x = {} does not fall on a grid node", k.x)));
            }
            kink_terms.push((j as usize, k.jump));
        }
        Ok(Self { h, v, first, last, scheme: p.scheme, kink_terms, decay_left, decay_right })
    }

    fn s(&self, i: usize, e: f64) -> f64 {
        self.h * self.h * (self.v[i] - e) / 12.0
    }

    fn diag(&self, i: usize, e: f64) -> f64 {
        let h = self.h;
        let g = self.v[i] - e;
        let mut d = match self.scheme {
            Scheme::ThreePoint => 2.0 + h * h * g,
            Scheme::Numerov => {
                let s = self.s(i, e);
                2.0 * (1.0 + 5.0 * s) / (1.0 - s)
            }
        };
        for &(j, jump) in &self.kink_terms {
            if j == i {
                d += match self.scheme {
                    Scheme::ThreePoint => h * h * h * jump / 6.0,
                    Scheme::Numerov => h * h * h * jump / (12.0 * (1.0 - self.s(i, e))),
                };
            }
        }
        if (i == self.first && self.decay_left) || (i == self.last && self.decay_right) {
            d -= (-h * (self.v[i] - e).max(0.0).sqrt()).exp();
        }
        d
    }

    /// Number of eigenvalues strictly below `e`.
    pub(crate) fn count_below(&self, e: f64) -> usize {
        let mut count = 0;
        let mut q = 1.0;
        for i in self.first..=self.last {
            let d = self.diag(i, e);
            q = if i == self.first { d } else { d - 1.0 / q };
            if q == 0.0 {
                q = -1e-300;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn lower_bound(&self) -> f64 {
        self.v[self.first..=self.last].iter().cloned().fold(f64::INFINITY, f64::min)
    }

    fn check_numerov(&self, e_lo: f64) -> Result<()> {
        if self.scheme == Scheme::Numerov {
            let worst = (self.first..=self.last).map(|i| self.s(i, e_lo)).fold(f64::NEG_INFINITY, f64::max);
            if worst >= 0.9 {
                return Err(Error::Domain(format!(
                    "Numerov needs h²(V - E)/12 < 1 on the grid (max {worst:.3}); refine or use the three-point scheme"
                )));
            }
        }
        Ok(())
    }

    /// Lowest `count` eigenvalues by bisection on the Sturm count.
    pub(crate) fn eigenvalues(&self, count: usize) -> Result<Vec<f64>> {
        let e_min = self.lower_bound();
        self.check_numerov(e_min)?;
        let mut out = Vec::with_capacity(count);
        let mut lo = e_min - 1e-12 * e_min.abs().max(1.0);
        for k in 0..count {
            let mut hi = lo + 1.0;
            let mut width = 1.0;
            let mut guard = 0;
            while self.count_below(hi) <= k {
                width *= 2.0;
                hi = lo + width;
                guard += 1;
                if guard > 200 {
                    return Err(Error::Convergence(format!("no bracket for grid eigenvalue {k}")));
                }
            }
            let mut a = lo;
            let mut b = hi;
            for _ in 0..300 {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                if self.count_below(m) > k {
                    b = m;
                } else {
                    a = m;
                }
            }
            let e = 0.5 * (a + b);
            out.push(e);
            lo = a;
        }
        Ok(out)
    }

    /// Eigenvector at eigenvalue `e` by inverse iteration, as ψ on all nodes.
    pub(crate) fn eigenvector(&self, e: f64) -> Vec<f64> {
        let n = self.last - self.first + 1;
        let diag: Vec<f64> = (self.first..=self.last).map(|i| self.diag(i, e)).collect();
        let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 0.3 * ((i as f64) * 0.7).sin()).collect();
        for _ in 0..4 {
            x = solve_tridiagonal(&diag, &x);
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            for v in &mut x {
                *v /= norm;
            }
        }
        let mut psi = vec![0.0; self.v.len()];
        for (k, i) in (self.first..=self.last).enumerate() {
            psi[i] = match self.scheme {
                Scheme::ThreePoint => x[k],
                Scheme::Numerov => x[k] / (1.0 - self.s(i, e)),
            };
        }
        let norm = trapezoid_norm(&psi, self.h);
        // fix the overall sign: first sizeable lobe positive
        let peak = psi.iter().cloned().fold(0.0_f64, |m, v| m.max(v.abs()));
        let lead = psi.iter().find(|v| v.abs() > 1e-3 * peak).cloned().unwrap_or(1.0);
        let sign = if lead < 0.0 { -1.0 } else { 1.0 };
        psi.iter().map(|v| sign * v / norm).collect()
    }
}

pub(crate) fn trapezoid_norm(psi: &[f64], h: f64) -> f64 {
    let n = psi.len();
    let s: f64 = psi.iter().map(|v| v * v).sum::<f64>() - 0.5 * (psi[0] * psi[0] + psi[n - 1] * psi[n - 1]);
    (s * h).sqrt()
}

/// Solve `T x = b` for `T` with diagonal `d` and unit negative off-diagonal,
/// Gaussian elimination with partial pivoting; zero pivots are nudged so the
/// routine also works at an exact eigenvalue (inverse iteration).
fn solve_tridiagonal(d: &[f64], b: &[f64]) -> Vec<f64> {
    let n = d.len();
    let tiny = 1e-300;
    let mut diag = d.to_vec();
    // sub-diagonal; after elimination it holds the second super-diagonal
    let mut dl = vec![-1.0_f64; n.saturating_sub(1)];
    let mut du = vec![-1.0_f64; n.saturating_sub(1)];
    let mut x = b.to_vec();
    for i in 0..n.saturating_sub(1) {
        if diag[i].abs() >= dl[i].abs() {
            if diag[i] == 0.0 {
                diag[i] = tiny;
            }
            let fact = dl[i] / diag[i];
            diag[i + 1] -= fact * du[i];
            x[i + 1] -= fact * x[i];
            dl[i] = 0.0;
        } else {
            let fact = diag[i] / dl[i];
            diag[i] = dl[i];
            let temp = diag[i + 1];
            diag[i + 1] = du[i] - fact * temp;
            if i + 1 < n - 1 {
                dl[i] = du[i + 1];
                du[i + 1] = -fact * dl[i];
            } else {
                dl[i] = 0.0;
            }
            du[i] = temp;
            let t = x[i];
            x[i] = x[i + 1];
            x[i + 1] = t - fact * x[i + 1];
        }
    }
    if diag[n - 1] == 0.0 {
        diag[n - 1] = tiny;
    }
    x[n - 1] /= diag[n - 1];
    if n > 1 {
        x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / diag[n - 2];
    }
    for i in (0..n.saturating_sub(2)).rev() {
        x[i] = (x[i] - du[i] * x[i + 1] - dl[i] * x[i + 2]) / diag[i];
    }
    x
}

/// Lowest `count` eigenvalues on the problem's own grid (no extrapolation).
pub fn grid_eigenvalues(problem: &GridProblem, count: usize) -> Result<Vec<f64>> {
    check_count(problem, count)?;
    Assembled::new(problem)?.eigenvalues(count)
}

/// Number of eigenvalues below `e` on the problem's grid.
pub fn count_below(problem: &GridProblem, e: f64) -> Result<usize> {
    Ok(Assembled::new(problem)?.count_below(e))
}

fn check_count(problem: &GridProblem, count: usize) -> Result<()> {
    if count > problem.points / 4 {
        return Err(Error::Domain(format!("count {count} exceeds points/4 = {}", problem.points / 4)));
    }
    Ok(())
}

fn richardson(coarse: f64, fine: f64, order: i32) -> (f64, f64) {
    let c = (fine - coarse) / (2f64.powi(order) - 1.0);
    (fine + c, c.abs())
}

/// Lowest `count` eigenpairs, Richardson-extrapolated from steps `h` and `h/2`.
pub fn grid_diagonalize(problem: &GridProblem, count: usize) -> Result<OracleSpectrum> {
    check_count(problem, count)?;
    let coarse = Assembled::new(problem)?.eigenvalues(count)?;
    let fine_problem = problem.refined();
    let fine_grid = Assembled::new(&fine_problem)?;
    let fine = fine_grid.eigenvalues(count)?;
    let p = problem.scheme.order();
    let (eigenvalues, error_estimates) = coarse.iter().zip(&fine).map(|(&c, &f)| richardson(c, f, p)).unzip();
    let eigenvectors: Vec<Vec<f64>> = fine.iter().map(|&e| fine_grid.eigenvector(e)).collect();
    let mut warnings = Vec::new();
    if let Some(ground) = eigenvectors.first() {
        let n = ground.len();
        let edge = (n / 20).max(1);
        let h = fine_problem.step();
        let left: f64 = ground[..edge].iter().map(|v| v * v).sum::<f64>() * h;
        let right: f64 = ground[n - edge..].iter().map(|v| v * v).sum::<f64>() * h;
        let (check_left, check_right) = match problem.boundary {
            Boundary::DirichletBoth => (false, false),
            Boundary::DirichletLeftDecayRight => (false, true),
            Boundary::DecayBoth => (true, true),
        };
        if (check_left && left > 1e-8) || (check_right && right > 1e-8) {
            warnings.push(format!(
                "domain may be too small: ground state holds {:.2e} of its norm in the outer 5% of the grid",
                left.max(right)
            ));
        }
    }
    Ok(OracleSpectrum { eigenvalues, error_estimates, grid: fine_problem.nodes(), eigenvectors, warnings })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub points: Vec<usize>,
    /// `eigenvalues[level][k]` on the k-th refinement.
    pub eigenvalues: Vec<Vec<f64>>,
    /// Order estimated from the last three refinements, per level.
    pub observed_order: Vec<f64>,
    /// Richardson value from the last two refinements, per level.
    pub extrapolated: Vec<f64>,
}

/// Eigenvalues on `levels` successively halved grids, with the observed order.
pub fn convergence_study(problem: &GridProblem, count: usize, levels: usize) -> Result<ConvergenceReport> {
    if levels < 2 {
        return Err(Error::Domain("convergence study needs at least 2 grid levels".into()));
    }
    check_count(problem, count)?;
    let mut p = problem.clone();
    let mut points = Vec::new();
    let mut runs = Vec::new();
    for _ in 0..levels {
        points.push(p.points);
        runs.push(Assembled::new(&p)?.eigenvalues(count)?);
        p = p.refined();
    }
    let eigenvalues: Vec<Vec<f64>> = (0..count).map(|k| runs.iter().map(|r| r[k]).collect()).collect();
    let order = problem.scheme.order();
    let observed_order = eigenvalues
        .iter()
        .map(|seq| {
            if seq.len() < 3 {
                return f64::NAN;
            }
            let n = seq.len();
            ((seq[n - 3] - seq[n - 2]) / (seq[n - 2] - seq[n - 1])).abs().log2()
        })
        .collect();
    let extrapolated = eigenvalues
        .iter()
        .map(|seq| {
            let n = seq.len();
            richardson(seq[n - 2], seq[n - 1], order).0
        })
        .collect();
    Ok(ConvergenceReport { points, eigenvalues, observed_order, extrapolated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn box_problem(scheme: Scheme) -> GridProblem {
        GridProblem::new(Arc::new(|_| 0.0), 0.0, 1.0, 201).with_scheme(scheme)
    }

    #[test]
    fn box_spectrum_ratios() {
        for scheme in [Scheme::ThreePoint, Scheme::Numerov] {
            let s = grid_diagonalize(&box_problem(scheme), 3).unwrap();
            let e = &s.eigenvalues;
            assert!((e[0] - PI * PI).abs() < 1e-6 * e[0], "{scheme:?}: {}", e[0]);
            assert!((e[1] / e[0] - 4.0).abs() < 1e-6);
            assert!((e[2] / e[0] - 9.0).abs() < 1e-6);
        }
    }

    #[test]
    fn harmonic_spacing() {
        // -ψ'' + x² ψ: E_n = 2n + 1
        let p = GridProblem::new(Arc::new(|x| x * x), -10.0, 10.0, 801).with_scheme(Scheme::Numerov);
        let s = grid_diagonalize(&p, 4).unwrap();
        for (n, e) in s.eigenvalues.iter().enumerate() {
            assert!((e - (2 * n + 1) as f64).abs() < 1e-8, "{n}: {e}");
        }
        let gaps: Vec<f64> = s.eigenvalues.windows(2).map(|w| w[1] - w[0]).collect();
        for g in &gaps {
            assert!((g / gaps[0] - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn observed_orders() {
        // the top level keeps the truncation error well above rounding
        for (scheme, want, tol) in [(Scheme::ThreePoint, 2.0, 0.1), (Scheme::Numerov, 4.0, 0.2)] {
            let r = convergence_study(&GridProblem { points: 65, ..box_problem(scheme) }, 6, 4).unwrap();
            let o = r.observed_order[5];
            assert!((o - want).abs() < tol, "{scheme:?}: {o}");
        }
    }

    #[test]
    fn eigenvectors_orthonormal() {
        let p = GridProblem::new(Arc::new(|x: f64| -5.0 * (-x.abs()).exp()), -20.0, 20.0, 1001);
        let s = grid_diagonalize(&p, 3).unwrap();
        let h = s.grid[1] - s.grid[0];
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = s.eigenvectors[i].iter().zip(&s.eigenvectors[j]).map(|(a, b)| a * b).sum::<f64>() * h;
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-8, "{i} {j} {dot}");
            }
        }
        // parity alternates for the symmetric well
        for (k, v) in s.eigenvectors.iter().enumerate() {
            let n = v.len();
            let overlap: f64 = (0..n).map(|i| v[i] * v[n - 1 - i]).sum::<f64>() * h;
            let want = if k % 2 == 0 { 1.0 } else { -1.0 };
            assert!((overlap - want).abs() < 1e-8);
        }
    }

    #[test]
    fn too_few_points_or_levels() {
        let p = GridProblem::new(Arc::new(|_| 0.0), 0.0, 1.0, 32);
        assert!(grid_eigenvalues(&p, 1).is_err());
        assert!(grid_eigenvalues(&box_problem(Scheme::ThreePoint), 100).is_err());
    }

    #[test]
    fn off_node_kink_rejected() {
        let p = box_problem(Scheme::Numerov).with_kink(0.5001, 1.0);
        assert!(grid_eigenvalues(&p, 1).is_err());
    }
}
