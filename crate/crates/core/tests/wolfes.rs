use std::f64::consts::PI;

use anyonlab::cell::uniform_grid;
use anyonlab::exchange::phase_distance;
use anyonlab::oracle::SampleMeta;
use anyonlab::radial::{separation_residual, FullState};
use anyonlab::wolfes::{wolfes_discriminant, wolfes_inner_edges, wolfes_subband_edges};
use anyonlab::*;
use num_complex::Complex64;
use proptest::prelude::*;

const A: f64 = PI / 3.0;

fn params(s: f64, w: f64) -> WolfesParams {
    WolfesParams::from_sw(s, w, A).unwrap()
}

#[test]
fn coupling_windows() {
    let p = WolfesParams::from_couplings(-0.16, -0.21, A).unwrap();
    assert!((p.s - 0.3).abs() < 1e-15 && (p.w - 0.2).abs() < 1e-15);
    assert!(matches!(WolfesParams::from_couplings(-0.16, 0.1, A), Err(Error::CouplingWindow { name: "f", .. })));
    assert!(matches!(WolfesParams::from_couplings(-0.3, -0.1, A), Err(Error::CouplingWindow { name: "g", .. })));
}

#[test]
fn basis_leading_exponents_and_domain() {
    let p = params(0.3, 0.2);
    let x = 1e-7;
    let scale = PI / A;
    assert!((wolfes_basis_u(&p, 2.0, x).unwrap() / (scale * x).powf(0.8) - 1.0).abs() < 1e-9);
    assert!((wolfes_basis_v(&p, 2.0, x).unwrap() / (scale * x).powf(0.2) - 1.0).abs() < 1e-9);
    for x in [0.0, 0.5 * A, 0.7 * A] {
        assert!(wolfes_basis_u(&p, 2.0, x).is_err());
        assert!(wolfes_basis_v(&p, 2.0, x).is_err());
    }
}

#[test]
fn basis_residuals() {
    let p = params(0.3, 0.2);
    let xs = uniform_grid(0.05 * A, 0.45 * A, 256);
    for lam in [1.0, 2.9, 6.4] {
        let eq = AngularEquation::wolfes(&p, lam);
        for f in [wolfes_basis_u, wolfes_basis_v] {
            let values = xs.iter().map(|&x| Complex64::new(f(&p, lam, x).unwrap(), 0.0)).collect();
            let sample = SampledFunction::new(xs.clone(), values, SampleMeta { k: 0.0, equation: eq }).unwrap();
            assert!(ode_residual(&sample).unwrap() < 1e-7);
        }
    }
}

#[test]
fn printed_edges() {
    let oracle = Oracle::default();
    let (lo, hi) = wolfes_band_edges(&params(0.3, 0.2), 0, &oracle).unwrap();
    assert!((lo - 1.5).abs() < 1e-12 && (hi - 4.5).abs() < 1e-12);
    for n in 0..3 {
        let (lo, hi) = wolfes_band_edges(&params(0.25, 0.25), n, &oracle).unwrap();
        let centre = 3.0 * (2 * n + 1) as f64;
        assert!(((lo + hi) / 2.0 - centre).abs() < 1e-12);
    }
}

#[test]
fn inner_edges_are_antiperiodic() {
    let oracle = Oracle::default();
    let p = params(0.3, 0.2);
    for n in 0..3 {
        let (lo, hi) = wolfes_inner_edges(&p, n, &oracle).unwrap();
        assert!((wolfes_discriminant(&p, lo, &oracle).unwrap() + 1.0).abs() < 1e-6);
        assert!((wolfes_discriminant(&p, hi, &oracle).unwrap() + 1.0).abs() < 1e-6);
    }
}

#[test]
fn dispersion_reproduces_edges() {
    let oracle = Oracle::default();
    let p = params(0.3, 0.2);
    for b in 0..6 {
        let (lo, hi) = wolfes_subband_edges(&p, b);
        let at_zero = wolfes_dispersion(&p, b, 0.0, &oracle).unwrap();
        let at_edge = wolfes_dispersion(&p, b, PI / A, &oracle).unwrap();
        let (expect_zero, expect_edge) = if b % 2 == 0 { (lo, hi) } else { (hi, lo) };
        assert!((at_zero - expect_zero).abs() < 1e-6, "b = {b}");
        assert!((at_edge - expect_edge).abs() < 1e-6, "b = {b}");
    }
}

#[test]
fn bloch_assembly() {
    let oracle = Oracle::default();
    let p = params(0.3, 0.2);
    let xs = uniform_grid(0.01 * A, 2.99 * A, 300);
    for b in 0..4 {
        for k in [0.0, 0.45 * PI / A, PI / A] {
            let sol = WolfesBloch::wolfes_on_band(p, b, k, &oracle).unwrap();
            assert!(sol.bloch_deviation(&xs) < 1e-8);
            let phase = sol.measured_phase(0.27 * A).unwrap();
            assert!(phase_distance(phase, k * A) < 1e-8);
        }
    }
}

#[test]
fn gaps_close_in_free_limit() {
    let oracle = Oracle::default();
    let p = params(0.4999, 0.4999);
    for n in 0..2 {
        let (outer_lo, outer_hi) = wolfes_band_edges(&p, n, &oracle).unwrap();
        let (next_lo, _) = wolfes_band_edges(&p, n + 1, &oracle).unwrap();
        // Outer gap is 6(1 − s − w).
        assert!((next_lo - outer_hi - 1.2e-3).abs() < 1e-12);
        let (inner_lo, inner_hi) = wolfes_inner_edges(&p, n, &oracle).unwrap();
        assert!(inner_hi - inner_lo < 1e-12);
        assert!(outer_lo < inner_lo);
    }
}

#[test]
fn radial_sector_uses_doubled_frequency() {
    let oracle = Oracle::default();
    let p = params(0.3, 0.2);
    let sol = WolfesBloch::wolfes_on_band(p, 1, 0.6, &oracle).unwrap();
    let radial = radial::RadialState::wolfes(0, sol.lambda(), 1.0).unwrap();
    assert!((radial.energy() - 2.0 * (sol.lambda() + 1.0)).abs() < 1e-12);
    let fs = FullState::new(radial, sol).unwrap();
    assert!(separation_residual(&fs, (0.6, 2.0), (0.05, 0.45), 120).unwrap() < 1e-6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn edges_ordered_and_confirmed(s in 0.05f64..0.45, w in 0.05f64..0.45, n in 0usize..3) {
        let oracle = Oracle::default();
        let p = params(s, w);
        let (lo, hi) = wolfes_band_edges(&p, n, &oracle).unwrap();
        let (ilo, ihi) = wolfes_inner_edges(&p, n, &oracle).unwrap();
        prop_assert!(lo < ilo && ilo <= ihi && ihi < hi);
        let (next_lo, _) = wolfes_band_edges(&p, n + 1, &oracle).unwrap();
        prop_assert!(next_lo > hi);
    }
}
