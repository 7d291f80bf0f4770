use expwell_core::exact::PotentialSpec;
use expwell_core::oracle::{exponential_tail_extent, fpwef_potential, ode_scatter, Incidence};
use expwell_core::scatter::{
    de_broglie_wavelength, max_wavelength_gradient, max_wavelength_gradient_numeric, reflection, reflection_map,
    ScatteringPoint,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ode(a: f64, beta: f64, side: Incidence) -> expwell_core::oracle::ScatterAmplitudes {
    let spec = PotentialSpec::well_ii(a).unwrap();
    let k = 0.5 * beta;
    let ext = exponential_tail_extent(spec.internal_scale(), k);
    let v = fpwef_potential(&spec);
    ode_scatter(|x| v(x), k, -ext, ext, side).unwrap()
}

fn r2(a: f64, beta: f64) -> f64 {
    reflection(ScatteringPoint::new(a, beta).unwrap()).unwrap().reflection
}

#[test]
fn complex_amplitude_matches_integration() {
    for &(a, beta) in &[(0.7, 0.3), (3.0, 1.0), (8.48, 0.2), (11.75, 2.5)] {
        let c = reflection(ScatteringPoint::new(a, beta).unwrap()).unwrap().r();
        let o = ode(a, beta, Incidence::Left).r;
        assert!((c - o).norm() < 1e-8, "a={a} beta={beta}: {c} vs {o}");
    }
}

#[test]
fn reciprocity_of_the_symmetric_well() {
    for &(a, beta) in &[(2.0, 0.4), (9.0, 1.3)] {
        let l = ode(a, beta, Incidence::Left);
        let r = ode(a, beta, Incidence::Right);
        assert!((l.reflection() - r.reflection()).abs() < 1e-10);
        assert!((l.t - r.t).norm() < 1e-10);
    }
}

#[test]
fn low_energy_quantum_reflection() {
    for a in [1.0, 3.0, 10.0] {
        assert!(r2(a, 1e-3) > 0.99, "a={a}: {}", r2(a, 1e-3));
    }
}

#[test]
fn high_energy_and_shallow_limits_transmit() {
    assert!(r2(3.0, 10.0) < 1e-3);
    assert!(r2(0.01, 1.0) < 1e-6);
}

#[test]
fn map_shows_transmission_resonances_in_depth() {
    let m = reflection_map((0.1, 10.0), 400, (0.5, 0.5), 1).unwrap();
    let v: Vec<f64> = (0..m.a.len()).map(|i| m.get(i, 0).unwrap()).collect();
    let dips = (1..v.len() - 1).filter(|&i| v[i] < v[i - 1] && v[i] < v[i + 1]).count();
    assert!(dips >= 2, "only {dips} reflection dips along a");
}

#[test]
fn map_cells_match_the_oracle() {
    let m = reflection_map((0.1, 10.0), 60, (0.05, 5.0), 60).unwrap();
    assert_eq!(m.values.len(), 3600);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..10 {
        let (ia, ib) = (rng.gen_range(0..60), rng.gen_range(0..60));
        let cell = m.get(ia, ib).unwrap();
        let o = ode(m.a[ia], m.beta[ib], Incidence::Left).reflection();
        assert!((cell - o).abs() < 1e-8, "a={} beta={}: {cell} vs {o}", m.a[ia], m.beta[ib]);
    }
}

#[test]
fn probabilities_stay_in_the_unit_interval() {
    let m = reflection_map((0.1, 10.0), 40, (0.05, 5.0), 40).unwrap();
    assert!(m.values.iter().all(|v| v.is_some_and(|p| (0.0..=1.0).contains(&p))));
}

#[test]
fn wavelength_gradient_bound() {
    for beta in [0.3, 2.0] {
        let closed = max_wavelength_gradient(beta);
        // deep wells reach the bound, shallow ones stay below it
        let deep = max_wavelength_gradient_numeric(20.0 * beta, beta).unwrap();
        let shallow = max_wavelength_gradient_numeric(0.5 * beta, beta).unwrap();
        assert!((deep / closed - 1.0).abs() < 1e-6);
        assert!(shallow < closed);
        let far = de_broglie_wavelength(20.0 * beta, beta, 200.0);
        assert!((far - 4.0 * std::f64::consts::PI / beta).abs() < 1e-9);
    }
}
