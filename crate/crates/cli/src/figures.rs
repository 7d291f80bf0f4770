//! Plot-ready datasets, one directory per figure with a `manifest.json`.

use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;

use expwell_core::exact::{spectrum, PotentialSpec, WellKind};
use expwell_core::numerics::linspace;
use expwell_core::semiclassical::{JwkbForm, Scheme};
use expwell_core::susy::hierarchy;
use expwell_core::variational::{minimize, AnsatzFamily};

use crate::commands::{parity_name, potentials_csv, reflection_csv, reflection_grid, semiclassical_csv};
use crate::output::{manifest, num, opt, sweep_pool, write_json, Csv};
use crate::{Failure, FigureId, UnitArgs};

pub const FIG2_A: (f64, f64, usize) = (0.1, 10.0, 100);
pub const FIG2_BETA: (f64, f64, usize) = (0.05, 5.0, 100);

pub fn write(id: FigureId, out: &Path, u: &UnitArgs) -> Result<(), Failure> {
    std::fs::create_dir_all(out)?;
    let mut params = BTreeMap::from([("u0".to_string(), num(u.u0)), ("alpha".to_string(), num(u.alpha))]);
    let files: Vec<(&str, Csv)> = match id {
        FigureId::F1 => {
            params.insert("a".into(), num(8.48));
            figure1(u)?
        }
        FigureId::F2 => {
            params.insert("a_range".into(), format!("{}:{}:{}", num(FIG2_A.0), num(FIG2_A.1), FIG2_A.2));
            params.insert("beta_range".into(), format!("{}:{}:{}", num(FIG2_BETA.0), num(FIG2_BETA.1), FIG2_BETA.2));
            figure2()?
        }
        FigureId::F3a => {
            params.insert("a".into(), num(11.75));
            params.insert("well".into(), "I".into());
            figure3(WellKind::I, 11.75, 2, u)?
        }
        FigureId::F3b => {
            params.insert("a".into(), num(4.5));
            params.insert("well".into(), "II".into());
            figure3(WellKind::II, 4.5, 1, u)?
        }
        FigureId::F4 => {
            params.insert("a_grid".into(), "2.45:40:0.05".into());
            figure4(u)?
        }
        FigureId::F5 => {
            params.insert("a".into(), num(32.0));
            params.insert("jwkb_form".into(), "integral".into());
            let spec = PotentialSpec::well_i(32.0)?;
            vec![("fig5_semiclassical.csv", semiclassical_csv(&spec, &Scheme::ALL, JwkbForm::Integral, u)?)]
        }
    };
    let mut names = Vec::new();
    for (name, csv) in &files {
        csv.write(&out.join(name))?;
        names.push(name.to_string());
    }
    params.insert("id".into(), id_name(id).into());
    write_json(&out.join("manifest.json"), &manifest("figure", params, names))
}

fn id_name(id: FigureId) -> &'static str {
    match id {
        FigureId::F1 => "1",
        FigureId::F2 => "2",
        FigureId::F3a => "3a",
        FigureId::F3b => "3b",
        FigureId::F4 => "4",
        FigureId::F5 => "5",
    }
}

fn levels_csv(specs: &[PotentialSpec], u: &UnitArgs) -> Result<Csv, Failure> {
    let mut t = Csv::new(&["well", "n", "parity", "root", "energy"]);
    for spec in specs {
        let well = if spec.kind == WellKind::I { "I" } else { "II" };
        for l in spectrum(spec)?.levels {
            t.push(vec![well.into(), l.index.to_string(), parity_name(l.parity).into(), num(l.root), num(l.energy * u.u0)]);
        }
    }
    Ok(t)
}

/// Both wells at `a = 8.48` and their levels.
fn figure1(u: &UnitArgs) -> Result<Vec<(&'static str, Csv)>, Failure> {
    let one = PotentialSpec::well_i(8.48)?;
    let two = PotentialSpec::well_ii(8.48)?;
    let mut t = Csv::new(&["x", "U_I", "U_II"]);
    for x in linspace(-8.0, 8.0, 1601) {
        t.push(vec![num(x / u.alpha), num(one.potential(x) * u.u0), num(two.potential(x) * u.u0)]);
    }
    Ok(vec![("fig1_potentials.csv", t), ("fig1_levels.csv", levels_csv(&[two, one], u)?)])
}

/// Reflection probability of the symmetric well over `(a, β)`.
fn figure2() -> Result<Vec<(&'static str, Csv)>, Failure> {
    let a = linspace(FIG2_A.0, FIG2_A.1, FIG2_A.2);
    let b = linspace(FIG2_BETA.0, FIG2_BETA.1, FIG2_BETA.2);
    let grid = reflection_grid(&a, &b)?;
    Ok(vec![("fig2_reflection.csv", reflection_csv(&a, &b, &grid))])
}

/// A well with its first partners shifted onto the parent's energy scale.
fn figure3(kind: WellKind, a: f64, depth: usize, u: &UnitArgs) -> Result<Vec<(&'static str, Csv)>, Failure> {
    let spec = PotentialSpec::new(kind, a)?;
    let rungs = hierarchy(&spec, depth)?;
    Ok(vec![("fig3_potentials.csv", potentials_csv(&spec, &rungs, u)?), ("fig3_levels.csv", levels_csv(&[spec], u)?)])
}

/// Relative error of the two WellI trial families across depths.
fn figure4(u: &UnitArgs) -> Result<Vec<(&'static str, Csv)>, Failure> {
    let grid: Vec<f64> = (0..=751).map(|i| 2.45 + 0.05 * i as f64).collect();
    let pool = sweep_pool()?;
    let rows: Vec<Result<Vec<String>, Failure>> = pool.install(|| {
        grid.par_iter()
            .map(|&a| {
                let s = spectrum(&PotentialSpec::well_i(a)?)?;
                let g = minimize(AnsatzFamily::GaussianTimesX, a)?;
                let e = minimize(AnsatzFamily::ExponentialTimesX, a)?;
                let val = |r: &expwell_core::variational::VariationalResult| r.exists.then_some(r.energy * u.u0);
                let err = |r: &expwell_core::variational::VariationalResult| if r.exists { r.relative_error } else { None };
                Ok(vec![
                    num(a),
                    s.len().to_string(),
                    opt(s.ground().map(|l| l.energy * u.u0)),
                    opt(val(&g)),
                    opt(err(&g)),
                    opt(val(&e)),
                    opt(err(&e)),
                ])
            })
            .collect()
    });
    let mut t = Csv::new(&["a", "levels", "exact", "gauss_x", "delta_gauss_x", "exp_x", "delta_exp_x"]);
    for r in rows {
        t.push(r?);
    }
    Ok(vec![("fig4_variational.csv", t)])
}
