use std::f64::consts::PI;

use anyonlab::radial::{count_nodes, radial_residual, separation_residual};
use anyonlab::*;
use num_complex::Complex64;
use proptest::prelude::*;

const A: f64 = PI / 3.0;

fn scarf() -> ScarfParams {
    ScarfParams::from_s(0.3, A).unwrap()
}

#[test]
fn ground_state_shape() {
    let st = RadialState::new(0, 0.6, 1.0).unwrap();
    for r in [0.0f64, 0.3, 1.7, 4.0] {
        let expect = r.powf(1.1) * (-r * r / 4.0).exp();
        assert!((radial_wavefunction(&st, r) - expect).abs() < 1e-15);
    }
}

#[test]
fn residual_and_nodes_for_low_l() {
    for omega in [0.5, 1.0, 2.0] {
        for l in 0..4 {
            let st = RadialState::new(l, 0.6, omega).unwrap();
            let w = omega.sqrt();
            assert!(radial_residual(&st, 0.1 / w, 6.0 / w, 3000).unwrap() < 1e-8);
            assert_eq!(count_nodes(&st, 12.0 / w, 40_000), l);
        }
    }
}

#[test]
fn energy_examples() {
    let m = dispersion_lambda(&scarf(), 0, 0.0).unwrap().m;
    let st = RadialState::new(0, m, 1.0).unwrap();
    assert!((energy(&st) - 1.6).abs() < 1e-15);
    for l in 0..5 {
        let e0 = RadialState::new(l, 0.37, 1.3).unwrap().energy();
        let e1 = RadialState::new(l + 1, 0.37, 1.3).unwrap().energy();
        assert!((e1 - e0 - 2.6).abs() < 1e-14);
    }
}

#[test]
fn energy_follows_band_monotonically() {
    let p = scarf();
    for n in 0..4 {
        let e: Vec<f64> = (0..=16)
            .map(|j| {
                let m = dispersion_lambda(&p, n, j as f64 * PI / (16.0 * A)).unwrap().m;
                RadialState::new(1, m, 1.0).unwrap().energy()
            })
            .collect();
        let rising = e.windows(2).all(|w| w[1] > w[0]);
        let falling = e.windows(2).all(|w| w[1] < w[0]);
        assert!(rising || falling);
    }
}

#[test]
fn spectrum_is_nonlinear_in_band_index() {
    let p = scarf();
    for k in [0.0, 0.25 * PI / A, PI / A] {
        let e: Vec<f64> = (0..3)
            .map(|n| RadialState::new(0, dispersion_lambda(&p, n, k).unwrap().m, 1.0).unwrap().energy())
            .collect();
        assert!((e[0] - 2.0 * e[1] + e[2]).abs() > 1e-3);
    }
}

fn full(n: usize, k: f64, l: usize) -> FullState<ScarfBasis> {
    let sol = BlochSolution::on_band(scarf(), n, k).unwrap();
    let radial = RadialState::new(l, sol.point().m, 1.0).unwrap();
    FullState::new(radial, sol).unwrap()
}

#[test]
fn full_state_checks_separation_constant() {
    let sol = BlochSolution::on_band(scarf(), 0, 0.5).unwrap();
    assert!(FullState::new(RadialState::new(0, 1.0, 1.0).unwrap(), sol).is_err());
}

#[test]
fn full_wavefunction_properties() {
    let fs = full(1, 0.9, 1);
    let bloch = Complex64::from_polar(1.0, 0.9 * A);
    for phi in [0.1, 0.4, 0.9] {
        let here = full_wavefunction(&fs, 1.3, phi);
        let next = full_wavefunction(&fs, 1.3, phi + PI / 3.0);
        assert!((next - bloch * here).norm() < 1e-12 * here.norm().max(1e-300));
    }
    assert!(full_wavefunction(&fs, 40.0, 0.4).norm() < 1e-100);
    for p in 0..6 {
        assert_eq!(full_wavefunction(&fs, 1.0, p as f64 * PI / 3.0), Complex64::new(0.0, 0.0));
    }
}

#[test]
fn planar_equation_is_satisfied() {
    for (n, k) in [(0, 0.0), (1, PI / A), (2, 1.3), (0, 2.0)] {
        for l in 0..2 {
            let fs = full(n, k, l);
            let res = separation_residual(&fs, (0.6, 2.4), (0.15, 0.9), 120).unwrap();
            assert!(res < 1e-6, "n = {n}, k = {k}, l = {l}: {res:e}");
        }
    }
}

proptest! {
    #[test]
    fn spacing_is_two_omega(l in 0usize..50, m in 0.0f64..20.0, omega in 0.01f64..10.0) {
        let e0 = RadialState::new(l, m, omega).unwrap().energy();
        let e1 = RadialState::new(l + 1, m, omega).unwrap().energy();
        prop_assert!((e1 - e0 - 2.0 * omega).abs() < 1e-12 * e1.max(1.0));
    }
}
