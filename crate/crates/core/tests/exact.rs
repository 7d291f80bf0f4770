use expwell_core::exact::{audit_level_count, critical_a, spectrum, BoundLevel, Parity, PotentialSpec, WellKind};
use expwell_core::oracle::{fpwef_grid, grid_diagonalize, Scheme};
use expwell_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

fn tail_length(level: &BoundLevel) -> f64 {
    // ψ ~ e^{-b X/2}; go far enough that ψ² < 1e-20
    50.0 / level.root.max(0.05) + 20.0
}

#[test]
fn wavefunctions_are_unit_normalized() {
    for spec in [
        PotentialSpec::well_i(8.48).unwrap(),
        PotentialSpec::well_i(32.0).unwrap(),
        PotentialSpec::well_ii(4.5).unwrap(),
        PotentialSpec::well_ii(11.75).unwrap(),
    ] {
        for level in spectrum(&spec).unwrap().levels {
            let l = tail_length(&level);
            let half = simpson(|x| level.wavefunction(&spec, x).unwrap().powi(2), 0.0, l, 200_000);
            let total = if spec.kind == WellKind::II { 2.0 * half } else { half };
            assert!((total - 1.0).abs() < 1e-8, "{:?} a={} n={}: norm {total}", spec.kind, spec.a, level.index);
        }
    }
}

#[test]
fn distinct_levels_are_orthogonal() {
    let spec = PotentialSpec::well_i(11.75).unwrap();
    let s = spectrum(&spec).unwrap();
    let (p, q) = (&s.levels[0], &s.levels[2]);
    let l = tail_length(q);
    let o = simpson(|x| p.wavefunction(&spec, x).unwrap() * q.wavefunction(&spec, x).unwrap(), 0.0, l, 200_000);
    assert!(o.abs() < 1e-8, "overlap {o}");
}

#[test]
fn node_count_equals_level_index() {
    for spec in [PotentialSpec::well_i(32.0).unwrap(), PotentialSpec::well_ii(8.48).unwrap()] {
        for level in spectrum(&spec).unwrap().levels {
            let l = tail_length(&level);
            let lo = if spec.kind == WellKind::II { -l } else { 1e-9 };
            let n = 20_000;
            let mut nodes = 0;
            let mut prev = level.wavefunction(&spec, lo).unwrap();
            for i in 1..=n {
                let x = lo + (l - lo) * i as f64 / n as f64;
                let v = level.wavefunction(&spec, x).unwrap();
                // ignore the exponentially small tail where sign noise lives
                if v.abs() > 1e-12 && prev.abs() > 1e-12 && (v < 0.0) != (prev < 0.0) {
                    nodes += 1;
                }
                if v.abs() > 1e-12 {
                    prev = v;
                }
            }
            assert_eq!(nodes, level.index, "{:?} a={} level {}", spec.kind, spec.a, level.index);
        }
    }
}

#[test]
fn wavefunctions_match_grid_eigenvectors() {
    for spec in [PotentialSpec::well_i(8.48).unwrap(), PotentialSpec::well_ii(8.48).unwrap()] {
        let levels = spectrum(&spec).unwrap().levels;
        let o = grid_diagonalize(&fpwef_grid(&spec, Scheme::Numerov).unwrap(), levels.len()).unwrap();
        for (level, vec) in levels.iter().zip(&o.eigenvectors) {
            let exact: Vec<f64> = o.grid.iter().map(|&x| level.wavefunction(&spec, x).unwrap()).collect();
            let dot: f64 = exact.iter().zip(vec).map(|(a, b)| a * b).sum();
            let sign = dot.signum();
            let worst = exact.iter().zip(vec).map(|(a, b)| (a - sign * b).abs()).fold(0.0, f64::max);
            assert!(worst < 1e-4, "{:?} n={}: max diff {worst}", spec.kind, level.index);
        }
    }
}

#[test]
fn parity_alternates_in_symmetric_well() {
    let s = spectrum(&PotentialSpec::well_ii(32.0).unwrap()).unwrap();
    for l in &s.levels {
        let want = if l.index % 2 == 0 { Parity::Even } else { Parity::Odd };
        assert_eq!(l.parity, want);
    }
    let spec = s.spec;
    let odd = &s.levels[1];
    let even = &s.levels[0];
    for x in [0.3, 2.0, 7.0] {
        assert_eq!(odd.wavefunction(&spec, -x).unwrap(), -odd.wavefunction(&spec, x).unwrap());
        assert_eq!(even.wavefunction(&spec, -x).unwrap(), even.wavefunction(&spec, x).unwrap());
    }
}

#[test]
fn hard_wall_levels_are_the_odd_symmetric_levels() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let a: f64 = rng.gen_range(3.0..60.0);
        let one = spectrum(&PotentialSpec::well_i(a).unwrap()).unwrap().energies();
        let odd: Vec<f64> = spectrum(&PotentialSpec::well_ii(a).unwrap())
            .unwrap()
            .levels
            .iter()
            .filter(|l| l.parity == Parity::Odd)
            .map(|l| l.energy)
            .collect();
        assert_eq!(one.len(), odd.len(), "a={a}");
        for (x, y) in one.iter().zip(&odd) {
            assert!((x - y).abs() < 1e-12, "a={a}");
        }
    }
}

#[test]
fn counts_grow_monotonically_with_depth() {
    for kind in [WellKind::I, WellKind::II] {
        let mut last = 0;
        let mut a = 0.2;
        while a < 64.0 {
            let n = spectrum(&PotentialSpec::new(kind, a).unwrap()).unwrap().len();
            assert!(n >= last, "{kind:?} a={a}: {n} < {last}");
            last = n;
            a += 0.37;
        }
    }
}

#[test]
fn every_symmetric_well_binds() {
    for a in [0.05, 0.3, 1.0] {
        let s = spectrum(&PotentialSpec::well_ii(a).unwrap()).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s.levels[0].energy < 0.0);
    }
}

#[test]
fn threshold_depth_is_first_zero_of_j0() {
    let ac = critical_a();
    assert!((ac - 2.404825557695773).abs() < 1e-13);
    assert_eq!(spectrum(&PotentialSpec::well_i(ac - 1e-6).unwrap()).unwrap().len(), 0);
    assert_eq!(spectrum(&PotentialSpec::well_i(ac + 1e-3).unwrap()).unwrap().len(), 1);
}

#[test]
fn grid_audit_agrees_with_roots() {
    for spec in [
        PotentialSpec::well_i(5.0).unwrap(),
        PotentialSpec::well_i(20.0).unwrap(),
        PotentialSpec::well_ii(8.48).unwrap(),
    ] {
        assert_eq!(audit_level_count(&spec).unwrap(), spectrum(&spec).unwrap().len());
    }
}

#[test]
fn invalid_depths_are_rejected() {
    assert!(matches!(PotentialSpec::well_i(0.0), Err(Error::Domain(_))));
    assert!(matches!(PotentialSpec::well_ii(-1.0), Err(Error::Domain(_))));
    assert!(PotentialSpec::well_i(f64::NAN).is_err());
    assert!(matches!(spectrum(&PotentialSpec::well_i(70.0).unwrap()), Err(Error::AccuracyLoss { .. })));
}
