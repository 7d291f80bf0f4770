use expwell_core::exact::{spectrum, PotentialSpec};
use expwell_core::susy::{
    hierarchy, partner_potential, superpotential_i, superpotential_ii, verify_partner_spectrum,
    verify_scattering_invariance,
};
use expwell_core::Error;

fn internal_v(spec: &PotentialSpec, x: f64) -> f64 {
    -spec.internal_scale() * (-x.abs()).exp()
}

fn d5(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)
}

#[test]
fn superpotential_is_minus_log_derivative_of_ground_state() {
    for w in [superpotential_i(11.75).unwrap(), superpotential_ii(4.5).unwrap()] {
        let spec = *w.spec();
        let ground = spectrum(&spec).unwrap().levels[0];
        for x in [0.2, 1.0, 2.5, 6.0] {
            let psi = |t: f64| ground.wavefunction(&spec, t).unwrap();
            let fd = -d5(psi, x, 1e-3) / psi(x);
            let (wi, wp) = w.eval_internal(x).unwrap();
            assert!((wi - fd).abs() < 1e-8 * wi.abs().max(1.0), "{:?} x={x}: {wi} vs {fd}", spec.kind);
            let fdp = d5(|t| w.eval_internal(t).unwrap().0, x, 1e-3);
            assert!((wp - fdp).abs() < 1e-7 * wp.abs().max(1.0), "{:?} x={x}: W' {wp} vs {fdp}", spec.kind);
        }
    }
}

#[test]
fn minus_partner_is_the_original_well_shifted() {
    for w in [superpotential_i(8.48).unwrap(), superpotential_ii(8.48).unwrap()] {
        let spec = *w.spec();
        let eps0 = w.factorization_energy() * spec.internal_scale();
        for x in [0.1, 0.9, 3.0, 10.0, 25.0] {
            let vm = w.minus_internal(x).unwrap();
            let want = internal_v(&spec, x) - eps0;
            assert!((vm - want).abs() < 1e-9 * want.abs().max(1.0), "x={x}: {vm} vs {want}");
        }
    }
}

#[test]
fn hard_wall_superpotential_has_unit_pole() {
    let w = superpotential_i(11.75).unwrap();
    for x in [1e-3, 1e-4, 1e-5] {
        let (wi, _) = w.eval_internal(x).unwrap();
        assert!((x * wi + 1.0).abs() < 10.0 * x, "x={x}: x W = {}", x * wi);
    }
    assert!(w.eval_internal(0.0).is_err());
    assert!(w.eval_internal(-1.0).is_err());
}

#[test]
fn superpotential_tends_to_its_asymptote() {
    for w in [superpotential_i(32.0).unwrap(), superpotential_ii(4.5).unwrap()] {
        let far = w.eval(80.0).unwrap();
        assert!((far - w.asymptote()).abs() < 1e-12, "{far} vs {}", w.asymptote());
    }
    let w = superpotential_ii(4.5).unwrap();
    assert!((w.eval(-80.0).unwrap() + w.asymptote()).abs() < 1e-12);
}

#[test]
fn partner_core_grows_with_depth() {
    // V₊⁽ᵏ⁾ ~ k(k+1)/x² at the wall
    let spec = PotentialSpec::well_i(11.75).unwrap();
    let h = hierarchy(&spec, 2).unwrap();
    for level in &h {
        let k = level.depth as f64;
        let x = 1e-3;
        let c = x * x * level.w.partner_internal(x).unwrap();
        assert!((c - k * (k + 1.0)).abs() < 1e-3, "depth {}: x² V₊ = {c}", level.depth);
    }
}

#[test]
fn partner_tail_decays_exponentially() {
    let w = superpotential_i(11.75).unwrap();
    let inf = (w.asymptote() * 11.75 / 2.0).powi(2);
    let d = |x: f64| w.partner_internal(x).unwrap() - inf;
    for x in [8.0, 12.0, 16.0] {
        let ratio = d(x + 1.0) / d(x);
        assert!((ratio - (-1.0f64).exp()).abs() < 1e-3, "x={x}: ratio {ratio}");
    }
}

#[test]
fn symmetric_partner_is_even_with_reversed_cusp() {
    let spec = PotentialSpec::well_ii(4.5).unwrap();
    let w = superpotential_ii(4.5).unwrap();
    for x in [0.1, 1.0, 4.0] {
        assert!((w.eval(x).unwrap() + w.eval(-x).unwrap()).abs() < 1e-13);
        assert!((partner_potential(&w, x).unwrap() - partner_potential(&w, -x).unwrap()).abs() < 1e-12);
    }
    // W is C¹ across the origin
    let h = 1e-6;
    let (_, wp_r) = w.eval_internal(h).unwrap();
    let (_, wp_l) = w.eval_internal(-h).unwrap();
    assert!((wp_r - wp_l).abs() < 1e-4, "W' jumps: {wp_l} vs {wp_r}");
    // the original cusp jump in V' is a²/2; the partner carries the opposite one
    let slope = |f: &dyn Fn(f64) -> f64, s: f64| (f(s * 2e-4) - f(s * 1e-4)) / (s * 1e-4);
    let vp = |x: f64| w.partner_internal(x).unwrap();
    let vm = |x: f64| internal_v(&spec, x);
    let jump_plus = slope(&vp, 1.0) - slope(&vp, -1.0);
    let jump_minus = slope(&vm, 1.0) - slope(&vm, -1.0);
    assert!((jump_minus - 0.5 * 4.5 * 4.5).abs() < 1e-2);
    assert!((jump_plus + jump_minus).abs() < 1e-2, "{jump_plus} vs {jump_minus}");
}

#[test]
fn deep_symmetric_partner_has_double_well() {
    let w = superpotential_ii(11.75).unwrap();
    let xs: Vec<f64> = (0..=3000).map(|i| -15.0 + 0.01 * i as f64).collect();
    let v: Vec<f64> = xs.iter().map(|&x| partner_potential(&w, x).unwrap()).collect();
    let minima = (1..xs.len() - 1).filter(|&i| v[i] < v[i - 1] && v[i] < v[i + 1]).count();
    assert_eq!(minima, 2);
}

#[test]
fn hierarchy_matches_exact_spectrum_on_the_grid() {
    let spec = PotentialSpec::well_i(20.0).unwrap();
    let h = hierarchy(&spec, 3).unwrap();
    for level in &h {
        let r = verify_partner_spectrum(level);
        assert!(r.pass, "depth {}: {:?} vs {:?}", level.depth, r.found, r.expected);
        if let Some(s) = r.core_sensitivity {
            assert!(s < 1e-6, "core sensitivity {s}");
        }
    }
}

#[test]
fn partner_reflection_matches_at_more_depths() {
    for a in [1.5, 8.48] {
        let r = verify_scattering_invariance(a, &[0.3, 1.5]).unwrap();
        assert!(r.pass, "a={a}: {:?}", r.rows);
        for row in &r.rows {
            assert!(row.phase_relation_error.unwrap() < 1e-8, "{row:?}");
        }
    }
}

#[test]
fn depth_errors() {
    let spec = PotentialSpec::well_ii(4.5).unwrap();
    assert!(matches!(hierarchy(&spec, 0), Err(Error::Domain(_))));
    assert!(matches!(hierarchy(&spec, 4), Err(Error::DepthExceedsLevels { depth: 4, levels: 3 })));
    assert!(matches!(superpotential_i(2.3), Err(Error::NoBoundState(_))));
}

#[test]
fn ground_state_is_a_zero_mode_of_h_minus() {
    for spec in [PotentialSpec::well_i(11.75).unwrap(), PotentialSpec::well_ii(4.5).unwrap(), PotentialSpec::well_ii(20.0).unwrap()] {
        let ground = spectrum(&spec).unwrap().levels[0];
        let e0 = ground.energy * spec.internal_scale();
        let xs: Vec<f64> = (1..400).map(|i| 0.05 * i as f64).collect();
        let peak = xs.iter().map(|&x| ground.wavefunction(&spec, x).unwrap().abs()).fold(0.0, f64::max);
        for &x in &xs {
            let dpsi = |t: f64| ground.wavefunction_with_derivative(&spec, t).unwrap().1;
            let psi = ground.wavefunction(&spec, x).unwrap();
            let res = -d5(dpsi, x, 1e-3) + (internal_v(&spec, x) - e0) * psi;
            assert!(res.abs() < 1e-8 * peak, "{:?} a={} x={x}: residual {res:.2e}", spec.kind, spec.a);
        }
    }
}
