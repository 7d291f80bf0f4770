//! Invariant suites behind `expwell verify`. Each check prints one line.

use std::f64::consts::PI;

use expwell_core::exact::{order_zeros, spectrum, PotentialSpec, RootKind};
use expwell_core::oracle::{self, exponential_tail_extent, fpwef_energies, fpwef_potential, Incidence};
use expwell_core::scatter::{max_wavelength_gradient, max_wavelength_gradient_numeric, reflection, ScatteringPoint};
use expwell_core::semiclassical::{error_table, wkb_spectrum, Scheme};
use expwell_core::specfun::{bessel_j, bessel_j_real, bessel_j_real_with_derivative, erfc, log_gamma, BesselOrder};
use expwell_core::susy::{hierarchy, verify_partner_spectrum, verify_scattering_invariance};
use expwell_core::variational::{ansatz_threshold, minimize, AnsatzFamily};
use num_complex::Complex64;

use crate::output::emit;
use crate::Suite;

type Check = (&'static str, fn() -> Result<String, String>);

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn line(s: String) {
    let _ = emit(&(s + "\n"));
}

pub fn run(suite: Suite) -> bool {
    let suites: &[(&str, &[Check])] = &[
        ("specfun", SPECFUN),
        ("exact", EXACT),
        ("susy", SUSY),
        ("variational", VARIATIONAL),
        ("semiclassical", SEMICLASSICAL),
        ("scatter", SCATTER),
    ];
    let wanted = |name: &str| match suite {
        Suite::All => true,
        Suite::Specfun => name == "specfun",
        Suite::Exact => name == "exact",
        Suite::Susy => name == "susy",
        Suite::Variational => name == "variational",
        Suite::Semiclassical => name == "semiclassical",
        Suite::Scatter => name == "scatter",
    };
    let mut all = true;
    for (name, checks) in suites.iter().filter(|(n, _)| wanted(n)) {
        for (check, f) in checks.iter() {
            match f() {
                Ok(d) => line(format!("{name}/{check}: PASS {d}")),
                Err(d) => {
                    all = false;
                    line(format!("{name}/{check}: FAIL {d}"));
                }
            }
        }
    }
    all
}

const SPECFUN: &[Check] = &[
    ("half-order-closed-form", || {
        let mut worst = 0.0f64;
        for x in [0.5, 3.0, 17.0, 50.0] {
            let want = (2.0 / (PI * x)).sqrt() * x.sin();
            let got = bessel_j_real(0.5, x).map_err(e)?;
            worst = worst.max((got - want).abs());
        }
        ensure(worst < 1e-13, || format!("max diff {worst:.1e}"))?;
        Ok(format!("max diff {worst:.1e}"))
    }),
    ("wronskian", || {
        let mut worst = 0.0f64;
        for (nu, x) in [(0.3, 1.0), (2.7, 9.0), (7.1, 30.0)] {
            let (j, dj) = bessel_j_real_with_derivative(nu, x).map_err(e)?;
            let (jm, djm) = bessel_j_real_with_derivative(-nu, x).map_err(e)?;
            let w = j * djm - dj * jm;
            worst = worst.max((w + 2.0 * (nu * PI).sin() / (PI * x)).abs());
        }
        ensure(worst < 1e-12, || format!("max defect {worst:.1e}"))?;
        Ok(format!("max defect {worst:.1e}"))
    }),
    ("imaginary-order-conjugation", || {
        let p = bessel_j(BesselOrder::Imaginary(1.3), 7.0).map_err(e)?;
        let m = bessel_j(BesselOrder::Imaginary(-1.3), 7.0).map_err(e)?;
        let d = (p.conj() - m).norm();
        ensure(d < 1e-13, || format!("{d:.1e}"))?;
        Ok(format!("{d:.1e}"))
    }),
    ("log-gamma-reference", || {
        let g = log_gamma(Complex64::new(1.0, 2.0)).map_err(e)?;
        let d = (g - Complex64::new(-1.8760787864309293, 0.12964631630978832)).norm();
        ensure(d < 1e-13, || format!("{d:.1e}"))?;
        Ok(format!("{d:.1e}"))
    }),
    ("erfc-reference", || {
        let d = (erfc(1.5) / 0.033894853524689273 - 1.0).abs();
        ensure(d < 1e-14, || format!("{d:.1e}"))?;
        Ok(format!("{d:.1e}"))
    }),
];

const EXACT: &[Check] = &[
    ("level-counts", || {
        for (spec, n) in [
            (PotentialSpec::well_ii(8.48), 5),
            (PotentialSpec::well_i(8.48), 2),
            (PotentialSpec::well_i(32.0), 10),
            (PotentialSpec::well_i(2.40), 0),
            (PotentialSpec::well_i(2.41), 1),
        ] {
            let spec = spec.map_err(e)?;
            let got = spectrum(&spec).map_err(e)?.len();
            ensure(got == n, || format!("{:?} a={}: {got} != {n}", spec.kind, spec.a))?;
        }
        Ok("5 cases".into())
    }),
    ("interlacing", || {
        for a in [3.3, 8.48, 17.0, 39.0] {
            let even = order_zeros(a, RootKind::Derivative).map_err(e)?;
            let odd = order_zeros(a, RootKind::Value).map_err(e)?;
            let mut m = Vec::new();
            for (i, x) in even.iter().enumerate() {
                m.push(*x);
                m.extend(odd.get(i));
            }
            ensure(m.len() == even.len() + odd.len() && m.windows(2).all(|w| w[0] > w[1]), || format!("a={a}"))?;
        }
        Ok("4 depths".into())
    }),
    ("grid-oracle", || {
        let mut worst = 0.0f64;
        for spec in [PotentialSpec::well_i(8.48), PotentialSpec::well_ii(8.48)] {
            let spec = spec.map_err(e)?;
            let ex = spectrum(&spec).map_err(e)?.energies();
            let g = fpwef_energies(&spec).map_err(e)?;
            ensure(ex.len() == g.len(), || "level count".into())?;
            for (x, y) in ex.iter().zip(&g) {
                worst = worst.max(((x - y) / x).abs());
            }
        }
        ensure(worst < 1e-6, || format!("max rel {worst:.1e}"))?;
        Ok(format!("max rel {worst:.1e}"))
    }),
];

const SUSY: &[Check] = &[
    ("well-i-partners", || {
        let h = hierarchy(&PotentialSpec::well_i(11.75).map_err(e)?, 2).map_err(e)?;
        let mut worst = 0.0f64;
        for level in &h {
            let r = verify_partner_spectrum(level);
            ensure(r.pass, || format!("depth {}: {:?} vs {:?}", r.depth, r.found, r.expected))?;
            worst = r.relative_errors.iter().fold(worst, |m, &x| m.max(x));
        }
        Ok(format!("max rel {worst:.1e}"))
    }),
    ("well-ii-partner", || {
        let h = hierarchy(&PotentialSpec::well_ii(4.5).map_err(e)?, 1).map_err(e)?;
        let r = verify_partner_spectrum(&h[0]);
        ensure(r.pass, || format!("{:?} vs {:?}", r.found, r.expected))?;
        Ok(format!("{} levels", r.found.len()))
    }),
    ("scattering-invariance", || {
        let r = verify_scattering_invariance(4.5, &[0.2, 0.5, 1.0, 2.0]).map_err(e)?;
        ensure(r.pass, || format!("max deviation {:.1e}", r.max_deviation))?;
        Ok(format!("max deviation {:.1e}", r.max_deviation))
    }),
];

const VARIATIONAL: &[Check] = &[
    ("gaussian-symmetric-a5", || {
        let r = minimize(AnsatzFamily::GaussianII, 5.0).map_err(e)?;
        let rel = r.relative_error.unwrap_or(f64::NAN);
        ensure((r.energy + 0.545).abs() <= 0.005 && rel < 0.015, || format!("E={} rel={rel}", r.energy))?;
        Ok(format!("E={:.4} rel={rel:.2e}", r.energy))
    }),
    ("exponential-threshold", || {
        let t = ansatz_threshold(AnsatzFamily::ExponentialTimesX).map_err(e)?;
        ensure((t - 2.5142).abs() <= 1e-3, || format!("{t}"))?;
        Ok(format!("{t:.5}"))
    }),
    ("upper-bound", || {
        for a in [3.0, 6.0, 12.0, 30.0] {
            let exact = spectrum(&PotentialSpec::well_i(a).map_err(e)?).map_err(e)?.levels[0].energy;
            for f in [AnsatzFamily::GaussianTimesX, AnsatzFamily::ExponentialTimesX] {
                let r = minimize(f, a).map_err(e)?;
                ensure(!r.exists || r.energy >= exact, || format!("{f:?} a={a}"))?;
            }
        }
        Ok("8 points".into())
    }),
];

const SEMICLASSICAL: &[Check] = &[
    ("scheme-ordering-a32", || {
        let t = error_table(&PotentialSpec::well_i(32.0).map_err(e)?, &Scheme::ALL).map_err(e)?;
        let col = |j: usize| -> Vec<f64> { t.rows.iter().map(|r| r.errors[j].unwrap_or(f64::NAN)).collect() };
        let (w, j, s) = (col(0), col(1), col(2));
        let n_min = (0..w.len()).min_by(|&a, &b| w[a].total_cmp(&w[b])).unwrap_or(0);
        ensure(w.len() == 10, || "10 levels".into())?;
        ensure((4..=6).contains(&n_min), || format!("WKB minimum at {n_min}"))?;
        ensure(j.iter().zip(&w).all(|(a, b)| a <= b), || "JWKB above WKB".into())?;
        ensure(j[9] < s[9] && s[0] < 1e-8, || "endpoints".into())?;
        ensure((0..=2).all(|n| s[n] <= w[n] && s[n] <= j[n]), || "SWKB not best at the bottom".into())?;
        Ok(format!("WKB min at n={n_min}"))
    }),
    ("maslov-odd-levels", || {
        let one = wkb_spectrum(&PotentialSpec::well_i(32.0).map_err(e)?).map_err(e)?;
        let two = wkb_spectrum(&PotentialSpec::well_ii(32.0).map_err(e)?).map_err(e)?;
        let d = one.levels.iter().enumerate().map(|(m, l)| (two.levels[2 * m + 1].energy - l.energy).abs()).fold(0.0, f64::max);
        ensure(d < 1e-12, || format!("{d:.1e}"))?;
        Ok(format!("{d:.1e}"))
    }),
];

const SCATTER: &[Check] = &[
    ("closed-form-vs-ode", || {
        let mut worst = 0.0f64;
        for (a, beta) in [(0.8, 0.3), (3.0, 1.1), (7.5, 0.4), (11.0, 2.9)] {
            let spec = PotentialSpec::well_ii(a).map_err(e)?;
            let c = reflection(ScatteringPoint::new(a, beta).map_err(e)?).map_err(e)?.reflection;
            let k = 0.5 * beta;
            let ext = exponential_tail_extent(spec.internal_scale(), k);
            let v = fpwef_potential(&spec);
            let o = oracle::ode_scatter(|x| v(x), k, -ext, ext, Incidence::Left).map_err(e)?;
            ensure(o.unitarity_defect() < 1e-8, || format!("unitarity {:.1e}", o.unitarity_defect()))?;
            worst = worst.max((c - o.reflection()).abs());
        }
        ensure(worst < 1e-6, || format!("{worst:.1e}"))?;
        Ok(format!("max diff {worst:.1e}"))
    }),
    ("quantum-reflection", || {
        let r = reflection(ScatteringPoint::new(3.0, 0.01).map_err(e)?).map_err(e)?.reflection;
        ensure(r >= 0.95, || format!("{r}"))?;
        Ok(format!("|r|^2 = {r:.4}"))
    }),
    ("wavelength-gradient", || {
        let mut worst = 0.0f64;
        for beta in [0.2, 1.0, 5.0] {
            let n = max_wavelength_gradient_numeric(10.0 * beta, beta).map_err(e)?;
            worst = worst.max((n / max_wavelength_gradient(beta) - 1.0).abs());
        }
        ensure(worst < 1e-3, || format!("{worst:.1e}"))?;
        Ok(format!("max rel {worst:.1e}"))
    }),
];
