use std::path::Path;
use std::process::{Command, Output};

fn expwell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_expwell")).args(args).env_remove("SOURCE_DATE_EPOCH").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn col(t: &[Vec<String>], name: &str) -> Vec<f64> {
    let j = t[0].iter().position(|h| h == name).unwrap();
    t[1..].iter().map(|r| r[j].parse().unwrap()).collect()
}

#[test]
fn spectrum_symmetric_well_has_five_levels_with_alternating_parity() {
    let o = expwell(&["spectrum", "--well", "II", "--a", "8.48"]);
    assert!(o.status.success());
    let t = rows(&stdout(&o));
    assert_eq!(t[0], ["n", "parity", "root", "energy"]);
    assert_eq!(t.len(), 6);
    let parity: Vec<&str> = t[1..].iter().map(|r| r[1].as_str()).collect();
    assert_eq!(parity, ["even", "odd", "even", "odd", "even"]);
    let e = col(&t, "energy");
    assert!(e.windows(2).all(|w| w[0] < w[1]) && e[4] < 0.0);
}

#[test]
fn spectrum_json_matches_csv() {
    let csv = rows(&stdout(&expwell(&["spectrum", "--well", "I", "--a", "8.48"])));
    let o = expwell(&["spectrum", "--well", "I", "--a", "8.48", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let levels = v["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 2);
    for (l, e) in levels.iter().zip(col(&csv, "energy")) {
        assert_eq!(l["energy"].as_f64().unwrap(), e);
    }
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        &["spectrum", "--well", "III", "--a", "1"][..],
        &["spectrum", "--a", "1"],
        &["nonsense"],
        &["spectrum", "--well", "I", "--a", "x"],
        &["--mass", "1", "spectrum", "--well", "I", "--a", "3"],
    ] {
        let o = expwell(args);
        assert_eq!(o.status.code(), Some(64), "{args:?}");
        assert!(o.stdout.is_empty());
    }
    assert_eq!(expwell(&["--help"]).status.code(), Some(0));
    assert_eq!(expwell(&["--version"]).status.code(), Some(0));
}

#[test]
fn domain_errors_exit_1() {
    for args in [
        &["spectrum", "--well", "I", "--a", "-1"][..],
        &["spectrum", "--well", "I", "--a", "0"],
        &["scatter", "--a", "3", "--beta", "0"],
        &["susy", "--well", "II", "--a", "4.5", "--depth", "4"],
        &["--u0", "-2", "spectrum", "--well", "I", "--a", "3"],
    ] {
        let o = expwell(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn verify_all_passes() {
    let o = expwell(&["verify", "--suite", "all"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.lines().count() >= 6);
    assert!(out.lines().all(|l| l.contains(": PASS")));
}

#[test]
fn susy_reports_pass_and_emits_potentials() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("v.csv");
    let o = expwell(&["susy", "--well", "I", "--a", "11.75", "--depth", "2", "--emit-potentials", p.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rungs"].as_array().unwrap().len(), 2);
    assert!(v["rungs"].as_array().unwrap().iter().all(|r| r["pass"] == true));
    let t = rows(&std::fs::read_to_string(p).unwrap());
    assert_eq!(t[0], ["x", "V", "V1_plus_shifted", "V2_plus_shifted"]);
}

#[test]
fn variational_reports_existence() {
    let o = expwell(&["variational", "--family", "gauss-ii", "--a", "5"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["energy"].as_f64().unwrap() + 0.545).abs() < 5e-3);
    let o = expwell(&["variational", "--family", "exp-x", "--a", "2.4"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["exists"], false);
}

#[test]
fn semiclassical_columns_follow_schemes() {
    let o = expwell(&["semiclassical", "--well", "I", "--a", "32", "--schemes", "swkb,wkb"]);
    assert!(o.status.success());
    let t = rows(&stdout(&o));
    assert_eq!(t[0], ["n", "exact", "swkb", "wkb", "delta_swkb", "delta_wkb"]);
    assert_eq!(t.len(), 11);
    assert_eq!(expwell(&["semiclassical", "--well", "I", "--a", "32", "--schemes", "foo"]).status.code(), Some(64));
}

#[test]
fn units_rescale_energies_and_positions() {
    let base = rows(&stdout(&expwell(&["spectrum", "--well", "II", "--a", "8.48"])));
    let scaled = rows(&stdout(&expwell(&["--u0", "3", "--alpha", "2", "spectrum", "--well", "II", "--a", "8.48"])));
    for (x, y) in col(&base, "energy").iter().zip(col(&scaled, "energy")) {
        assert!((3.0 * x - y).abs() <= 1e-15 * y.abs());
    }
    // a = sqrt(8 m U0)/alpha; m = 8.48^2 / 8 with U0 = alpha = 1
    let m = format!("{}", 8.48f64 * 8.48 / 8.0);
    let via_mass = rows(&stdout(&expwell(&["--mass", &m, "spectrum", "--well", "II"])));
    for (x, y) in col(&base, "root").iter().zip(col(&via_mass, "root")) {
        assert!((x - y).abs() < 1e-12);
    }
}

fn figure(id: &str, dir: &Path) -> Output {
    expwell(&["figure", "--id", id, "--out", dir.to_str().unwrap()])
}

#[test]
fn figure_five_table_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    assert!(figure("5", dir.path()).status.success());
    let t = rows(&std::fs::read_to_string(dir.path().join("fig5_semiclassical.csv")).unwrap());
    assert_eq!(t.len(), 11);
    assert_eq!(t[0], ["n", "exact", "wkb", "jwkb", "swkb", "delta_wkb", "delta_jwkb", "delta_swkb"]);
    let m: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(m["command"], "figure");
    assert_eq!(m["parameters"]["id"], "5");
    assert_eq!(m["output_files"][0], "fig5_semiclassical.csv");
    assert_eq!(m["timestamp"], "1970-01-01T00:00:00Z");
    assert!(m["tool_version"].is_string());
}

#[test]
fn every_figure_writes_its_files() {
    let want: &[(&str, &[&str])] = &[
        ("1", &["fig1_potentials.csv", "fig1_levels.csv"]),
        ("2", &["fig2_reflection.csv"]),
        ("3a", &["fig3_potentials.csv", "fig3_levels.csv"]),
        ("3b", &["fig3_potentials.csv", "fig3_levels.csv"]),
        ("4", &["fig4_variational.csv"]),
    ];
    for (id, files) in want {
        let dir = tempfile::tempdir().unwrap();
        assert!(figure(id, dir.path()).status.success(), "figure {id}");
        for f in files.iter().chain(&["manifest.json"]) {
            assert!(dir.path().join(f).is_file(), "figure {id}: {f}");
        }
    }
}

#[test]
fn figure_four_variational_columns() {
    let dir = tempfile::tempdir().unwrap();
    assert!(figure("4", dir.path()).status.success());
    let t = rows(&std::fs::read_to_string(dir.path().join("fig4_variational.csv")).unwrap());
    assert_eq!(t.len(), 753);
    let a = col(&t, "a");
    let dg = col(&t, "delta_gauss_x");
    let de = col(&t, "delta_exp_x");
    // neither family binds at the start of the grid; both do deep in it
    assert!(dg[0].is_nan() && de[0].is_nan());
    let last = a.len() - 1;
    assert!(dg[last] > 0.0 && de[last] > 0.0 && dg[last] < de[last]);
}

#[test]
fn scatter_map_is_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, threads: Option<&str>| {
        let out = dir.path().join(name);
        let mut c = Command::new(env!("CARGO_BIN_EXE_expwell"));
        c.args(["scatter", "map", "--a-min", "0.5", "--a-max", "9", "--a-steps", "17", "--beta-min", "0.1"]);
        c.args(["--beta-max", "3", "--beta-steps", "13", "--out", out.to_str().unwrap()]);
        c.env_remove("SOURCE_DATE_EPOCH");
        if let Some(n) = threads {
            c.env("EXPWELL_THREADS", n);
        }
        assert!(c.output().unwrap().status.success());
        (std::fs::read(&out).unwrap(), std::fs::read(dir.path().join(format!("{name}.manifest.json"))).unwrap())
    };
    let one = run("one.csv", Some("1"));
    let many = run("many.csv", Some("4"));
    let default = run("default.csv", None);
    assert_eq!(one.0, many.0);
    assert_eq!(one.0, default.0);
    let t = rows(std::str::from_utf8(&one.0).unwrap());
    assert_eq!(t[0], ["a", "beta", "R"]);
    assert_eq!(t.len(), 1 + 17 * 13);
    assert!(col(&t, "R").iter().all(|r| (0.0..=1.0).contains(r)));
}

#[test]
fn reruns_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        assert!(figure("1", d.path()).status.success());
    }
    for f in ["fig1_potentials.csv", "fig1_levels.csv", "manifest.json"] {
        assert_eq!(std::fs::read(a.path().join(f)).unwrap(), std::fs::read(b.path().join(f)).unwrap(), "{f}");
    }
}

#[test]
fn source_date_epoch_sets_timestamp() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_expwell"))
        .args(["figure", "--id", "3b", "--out", dir.path().to_str().unwrap()])
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .output()
        .unwrap();
    assert!(o.status.success());
    let m: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(m["timestamp"], "2023-11-14T22:13:20Z");
}
