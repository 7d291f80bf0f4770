use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use expwell_core::exact::{spectrum, Parity, PotentialSpec, Units, WellKind};
use expwell_core::numerics::{linspace, logspace};
use expwell_core::scatter::{reflection, reflection_cell, ScatteringPoint};
use expwell_core::semiclassical::{error_table_with_form, JwkbForm, Scheme};
use expwell_core::susy::{hierarchy, verify_partner_spectrum, PartnerReport, SusyLevel};
use expwell_core::variational::{minimize, AnsatzFamily};

use crate::output::{emit, manifest, num, opt, sweep_pool, write_json, Csv};
use crate::{figures, verify, Cli, Command, Failure, Family, Form, ScatterCommand, UnitArgs, Well};

pub fn dispatch(cli: &Cli) -> Result<(), Failure> {
    check_units(&cli.units)?;
    let u = &cli.units;
    match &cli.command {
        Command::Spectrum { well, a, json } => run_spectrum(kind(*well), resolve_a(*a, u)?, *json, u),
        Command::Scatter { a, beta, map: Some(ScatterCommand::Map { a_min, a_max, a_steps, beta_min, beta_max, beta_steps, out }) } => {
            if a.is_some() || beta.is_some() {
                return Err(Failure::Usage("'scatter map' takes its own ranges, not --a/--beta".into()));
            }
            run_map((*a_min, *a_max, *a_steps), (*beta_min, *beta_max, *beta_steps), out)
        }
        Command::Scatter { a, beta, map: None } => {
            let beta = beta.ok_or_else(|| Failure::Usage("--beta is required".into()))?;
            run_scatter(resolve_a(*a, u)?, beta, u)
        }
        Command::Susy { well, a, depth, emit_potentials } => {
            run_susy(kind(*well), resolve_a(*a, u)?, *depth, emit_potentials.as_deref(), u)
        }
        Command::Variational { family, a } => run_variational(ansatz(*family), resolve_a(*a, u)?, u),
        Command::Semiclassical { well, a, schemes, jwkb_form } => {
            run_semiclassical(kind(*well), resolve_a(*a, u)?, schemes, *jwkb_form, u)
        }
        Command::Figure { id, out } => figures::write(*id, out, u),
        Command::Verify { suite } => {
            if verify::run(*suite) {
                Ok(())
            } else {
                Err(Failure::Verification(format!("suite {suite:?} has failing checks")))
            }
        }
    }
}

fn check_units(u: &UnitArgs) -> Result<(), Failure> {
    for (name, v) in [("--u0", Some(u.u0)), ("--alpha", Some(u.alpha)), ("--mass", u.mass)] {
        if let Some(v) = v {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Failure::Domain(format!("{name} must be positive and finite, got {v}")));
            }
        }
    }
    Ok(())
}

/// `--a` directly, or derived from the physical scales when `--mass` is given.
pub fn resolve_a(a: Option<f64>, u: &UnitArgs) -> Result<f64, Failure> {
    match (a, u.mass) {
        (a, Some(mass)) => {
            let derived = Units { u0: u.u0, alpha: u.alpha, mass, hbar: 1.0 }.depth_parameter();
            if let Some(a) = a {
                if (a - derived).abs() > 1e-9 * derived {
                    return Err(Failure::Usage(format!("--a {a} conflicts with a = {derived} from --u0/--alpha/--mass")));
                }
            }
            Ok(derived)
        }
        (Some(a), None) => Ok(a),
        (None, None) => Err(Failure::Usage("--a is required (or give --mass to derive it)".into())),
    }
}

pub fn kind(w: Well) -> WellKind {
    match w {
        Well::I => WellKind::I,
        Well::Ii => WellKind::II,
    }
}

fn ansatz(f: Family) -> AnsatzFamily {
    match f {
        Family::GaussX => AnsatzFamily::GaussianTimesX,
        Family::ExpX => AnsatzFamily::ExponentialTimesX,
        Family::GaussIi => AnsatzFamily::GaussianII,
        Family::Antisym => AnsatzFamily::AntisymmetricII,
    }
}

pub fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
        Parity::None => "none",
    }
}

#[derive(Serialize)]
struct LevelOut {
    n: usize,
    parity: &'static str,
    root: f64,
    energy: f64,
    norm: f64,
}

#[derive(Serialize)]
struct SpectrumOut {
    well: WellKind,
    a: f64,
    u0: f64,
    alpha: f64,
    levels: Vec<LevelOut>,
}

fn run_spectrum(kind: WellKind, a: f64, json: bool, u: &UnitArgs) -> Result<(), Failure> {
    let s = spectrum(&PotentialSpec::new(kind, a)?)?;
    if json {
        let out = SpectrumOut {
            well: kind,
            a,
            u0: u.u0,
            alpha: u.alpha,
            levels: s
                .levels
                .iter()
                .map(|l| LevelOut {
                    n: l.index,
                    parity: parity_name(l.parity),
                    root: l.root,
                    energy: l.energy * u.u0,
                    norm: l.norm,
                })
                .collect(),
        };
        emit(&(serde_json::to_string_pretty(&out)? + "\n"))?;
    } else {
        let mut t = Csv::new(&["n", "parity", "root", "energy"]);
        for l in &s.levels {
            t.push(vec![l.index.to_string(), parity_name(l.parity).into(), num(l.root), num(l.energy * u.u0)]);
        }
        emit(&t.render())?;
    }
    Ok(())
}

fn run_scatter(a: f64, beta: f64, u: &UnitArgs) -> Result<(), Failure> {
    let p = ScatteringPoint::new(a, beta)?;
    let r = reflection(p)?;
    let mut t = Csv::new(&["a", "beta", "k", "energy", "re_r", "im_r", "R", "T"]);
    t.push(vec![
        num(a),
        num(beta),
        num(p.k() * u.alpha),
        num(p.energy() * u.u0),
        num(r.re_r),
        num(r.im_r),
        num(r.reflection),
        num(r.transmission),
    ]);
    emit(&t.render())?;
    Ok(())
}

/// `|r|²` over a grid, rows ordered by `a` then `beta` regardless of which
/// thread finished first.
pub fn reflection_grid(a: &[f64], beta: &[f64]) -> Result<Vec<Vec<Option<f64>>>, Failure> {
    let pool = sweep_pool()?;
    Ok(pool.install(|| a.par_iter().map(|&ai| beta.iter().map(|&bi| reflection_cell(ai, bi)).collect()).collect()))
}

pub fn reflection_csv(a: &[f64], beta: &[f64], grid: &[Vec<Option<f64>>]) -> Csv {
    let mut t = Csv::new(&["a", "beta", "R"]);
    for (ai, row) in a.iter().zip(grid) {
        for (bi, r) in beta.iter().zip(row) {
            t.push(vec![num(*ai), num(*bi), opt(*r)]);
        }
    }
    t
}

fn run_map(a: (f64, f64, usize), beta: (f64, f64, usize), out: &Path) -> Result<(), Failure> {
    if a.2 == 0 || beta.2 == 0 {
        return Err(Failure::Usage("--a-steps and --beta-steps must be at least 1".into()));
    }
    if !(a.0 > 0.0 && a.1 >= a.0 && beta.0 > 0.0 && beta.1 >= beta.0) {
        return Err(Failure::Domain("map ranges must be positive with min <= max".into()));
    }
    let ag = linspace(a.0, a.1, a.2);
    let bg = linspace(beta.0, beta.1, beta.2);
    let grid = reflection_grid(&ag, &bg)?;
    reflection_csv(&ag, &bg, &grid).write(out)?;
    let params = BTreeMap::from([
        ("a_min".into(), num(a.0)),
        ("a_max".into(), num(a.1)),
        ("a_steps".into(), a.2.to_string()),
        ("beta_min".into(), num(beta.0)),
        ("beta_max".into(), num(beta.1)),
        ("beta_steps".into(), beta.2.to_string()),
    ]);
    let name = out.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let mut mpath = out.as_os_str().to_owned();
    mpath.push(".manifest.json");
    write_json(Path::new(&mpath), &manifest("scatter map", params, vec![name]))
}

#[derive(Serialize)]
struct SusyOut {
    well: WellKind,
    a: f64,
    rungs: Vec<PartnerReport>,
}

/// Positions for potential curves: the half line for WellI (the partner
/// core diverges at the wall), symmetric for WellII.
pub fn curve_grid(kind: WellKind) -> Vec<f64> {
    match kind {
        WellKind::I => {
            let mut x = logspace(0.02, 0.5, 60);
            x.pop();
            x.extend(linspace(0.5, 20.0, 391));
            x
        }
        WellKind::II => linspace(-15.0, 15.0, 1201),
    }
}

/// `x, V, V₊⁽¹⁾ + E_0, …` in output units.
pub fn potentials_csv(spec: &PotentialSpec, rungs: &[SusyLevel], u: &UnitArgs) -> Result<Csv, Failure> {
    let mut header = vec!["x".to_string(), "V".to_string()];
    header.extend(rungs.iter().map(|r| format!("V{}_plus_shifted", r.depth)));
    let mut t = Csv::new(&header);
    for x in curve_grid(spec.kind) {
        let mut row = vec![num(x / u.alpha), num(spec.potential(x) * u.u0)];
        for r in rungs {
            row.push(num(r.v_plus_shifted(x)? * u.u0));
        }
        t.push(row);
    }
    Ok(t)
}

fn run_susy(kind: WellKind, a: f64, depth: usize, potentials: Option<&Path>, u: &UnitArgs) -> Result<(), Failure> {
    let spec = PotentialSpec::new(kind, a)?;
    let rungs = hierarchy(&spec, depth)?;
    let reports: Vec<PartnerReport> = rungs.iter().map(verify_partner_spectrum).collect();
    if let Some(path) = potentials {
        potentials_csv(&spec, &rungs, u)?.write(path)?;
    }
    let pass = reports.iter().all(|r| r.pass);
    emit(&(serde_json::to_string_pretty(&SusyOut { well: kind, a, rungs: reports })? + "\n"))?;
    if pass {
        Ok(())
    } else {
        Err(Failure::Verification("partner spectrum differs from the expected levels".into()))
    }
}

#[derive(Serialize)]
struct VariationalOut {
    family: AnsatzFamily,
    width_convention: &'static str,
    a: f64,
    eta0: Option<f64>,
    energy: Option<f64>,
    exists: bool,
    bound: bool,
    relative_error: Option<f64>,
}

fn run_variational(family: AnsatzFamily, a: f64, u: &UnitArgs) -> Result<(), Failure> {
    let r = minimize(family, a)?;
    let out = VariationalOut {
        family,
        width_convention: family.width_convention(),
        a,
        eta0: r.exists.then_some(r.eta0),
        energy: r.exists.then_some(r.energy * u.u0),
        exists: r.exists,
        bound: r.bound,
        relative_error: r.relative_error,
    };
    emit(&(serde_json::to_string_pretty(&out)? + "\n"))?;
    Ok(())
}

pub fn parse_scheme(s: &str) -> Result<Scheme, Failure> {
    match s.trim().to_ascii_lowercase().as_str() {
        "wkb" => Ok(Scheme::Wkb),
        "jwkb" => Ok(Scheme::Jwkb),
        "swkb" => Ok(Scheme::Swkb),
        other => Err(Failure::Usage(format!("unknown scheme '{other}' (expected wkb, jwkb, swkb)"))),
    }
}

pub fn semiclassical_csv(spec: &PotentialSpec, schemes: &[Scheme], form: JwkbForm, u: &UnitArgs) -> Result<Csv, Failure> {
    let table = error_table_with_form(spec, schemes, form)?;
    let mut header = vec!["n".to_string(), "exact".to_string()];
    header.extend(schemes.iter().map(|s| s.name().to_string()));
    header.extend(schemes.iter().map(|s| format!("delta_{}", s.name())));
    let mut t = Csv::new(&header);
    for r in &table.rows {
        let mut row = vec![r.n.to_string(), num(r.exact * u.u0)];
        row.extend(r.energies.iter().map(|e| opt(e.map(|e| e * u.u0))));
        row.extend(r.errors.iter().map(|e| opt(*e)));
        t.push(row);
    }
    Ok(t)
}

fn run_semiclassical(kind: WellKind, a: f64, schemes: &[String], form: Form, u: &UnitArgs) -> Result<(), Failure> {
    let schemes: Vec<Scheme> = schemes.iter().map(|s| parse_scheme(s)).collect::<Result<_, _>>()?;
    if schemes.is_empty() {
        return Err(Failure::Usage("--schemes must name at least one scheme".into()));
    }
    let form = match form {
        Form::Integral => JwkbForm::Integral,
        Form::Printed => JwkbForm::Printed,
    };
    let spec = PotentialSpec::new(kind, a)?;
    emit(&semiclassical_csv(&spec, &schemes, form, u)?.render())?;
    Ok(())
}
