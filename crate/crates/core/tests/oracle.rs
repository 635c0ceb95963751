use std::f64::consts::PI;

use anyonlab::cell::uniform_grid;
use anyonlab::oracle::{integrate, SampleMeta, Tolerance};
use anyonlab::*;
use num_complex::Complex64;

const A: f64 = PI / 3.0;

fn params(s: f64) -> ScarfParams {
    ScarfParams::from_s(s, A).unwrap()
}

#[test]
fn seed_normalization_and_log_derivative() {
    let oracle = Oracle::default();
    let p = params(0.3);
    for eps in [1e-6, 1e-8] {
        let (v, d) = oracle.frobenius_seed(&p, 0.5, eps, Branch::Plus).unwrap();
        assert!((v / eps.powf(0.8) - 1.0).abs() < 1e-9);
        assert!((d / v * eps - 0.8).abs() < 1e-9);
    }
    assert!(oracle.frobenius_seed(&p, 0.5, 0.11 * A, Branch::Minus).is_err());
}

#[test]
fn frobenius_series_matches_integration() {
    // Integrate from a tiny seed out to θ = 0.3 and compare with the five-term
    // series there; the difference is dominated by the c₁ term if it were wrong.
    let p = params(0.3);
    let lam = 0.5;
    let oracle = Oracle::new(OracleConfig { terms: 5, ..OracleConfig::default() });
    let c = oracle.frobenius_coefficients(&p, lam, Branch::Plus);
    let rho = 0.8;
    let q = 0.25 - 0.09;
    let expect_c1 = -(lam * lam + q / 3.0) / (2.0 * (2.0 * rho + 1.0));
    assert!((c[1] - expect_c1).abs() < 1e-15);

    let series = |d: f64| -> (f64, f64) {
        let mut v = 0.0;
        let mut dv = 0.0;
        for (j, cj) in c.iter().enumerate() {
            let e = rho + 2.0 * j as f64;
            v += cj * d.powf(e);
            dv += cj * e * d.powf(e - 1.0);
        }
        (v, dv)
    };
    let (d0, d1) = (1e-4, 0.3);
    let (v0, dv0) = series(d0);
    let rhs = |d: f64, y: &[f64; 2]| [y[1], -(lam * lam + q / (d.sin() * d.sin())) * y[0]];
    let tol = Tolerance { rtol: 1e-13, atol: 1e-18 };
    let y = integrate(rhs, d0, d1, [v0, dv0], 1e-6, tol).unwrap();
    let (v1, _) = series(d1);
    assert!((y[0] / v1 - 1.0).abs() < 1e-9);
}

#[test]
fn free_rotation() {
    let oracle = Oracle::default();
    for lam in [0.3, 1.0, 2.7] {
        let t = oracle.transfer(&AngularEquation::free(A, lam)).unwrap();
        let q = PI * lam / A;
        let (c, s) = ((q * A).cos(), (q * A).sin());
        let expect = [[c, s / q], [-q * s, c]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((t.entries[i][j] - expect[i][j]).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn determinant_and_wronskian() {
    let oracle = Oracle::default();
    for s in [0.1, 0.3, 0.45] {
        let t = oracle.integrate_cell(&params(s), 0.55).unwrap();
        assert!((t.det() - 1.0).abs() < 1e-9);
        assert!(t.wronskian_drift < 1e-9);
    }
}

#[test]
fn discriminant_edges_and_gaps() {
    let oracle = Oracle::default();
    for s in [0.1, 0.3, 0.45] {
        let p = params(s);
        for n in 0..4 {
            let (lo, hi) = band_edges(&p, n);
            // Sign of Δ at the edges alternates with the band index.
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((oracle.discriminant(&p, lo).unwrap() - sign).abs() < 1e-6);
            assert!((oracle.discriminant(&p, hi).unwrap() + sign).abs() < 1e-6);
            let gap_mid = hi + 0.5 * (1.0 - 2.0 * s);
            assert!(oracle.discriminant(&p, gap_mid).unwrap().abs() > 1.0);
        }
    }
    assert!(oracle.discriminant(&params(0.3), 0.0).is_err());
}

#[test]
fn discriminant_closed_form() {
    let oracle = Oracle::default();
    let p = params(0.3);
    for i in 1..40 {
        let lam = 0.1 * i as f64;
        let expect = (PI * lam).cos() / (PI * 0.3).sin();
        assert!((oracle.discriminant(&p, lam).unwrap() - expect).abs() < 1e-8, "λ = {lam}");
    }
}

#[test]
fn discriminant_monotone_in_band() {
    let oracle = Oracle::default();
    let p = params(0.3);
    for n in 0..4 {
        let (lo, hi) = band_edges(&p, n);
        let d: Vec<f64> = (0..=20).map(|i| oracle.discriminant(&p, lo + (hi - lo) * i as f64 / 20.0).unwrap()).collect();
        let falling = n % 2 == 0;
        assert!(d.windows(2).all(|w| (w[1] < w[0]) == falling));
    }
}

#[test]
fn numerical_dispersion_endpoints() {
    let oracle = Oracle::default();
    let p = params(0.3);
    for n in 0..4 {
        for edge in [BandEdge::Lower, BandEdge::Upper] {
            let lam = oracle.numerical_dispersion(&p, n, edge.wave_number(&p, n)).unwrap();
            assert!((lam - edge.lambda(&p, n)).abs() < 1e-8);
        }
    }
    assert!(oracle.numerical_dispersion(&p, 0, -1.0).is_err());
}

#[test]
fn eps_robustness() {
    let p = params(0.3);
    let coarse = Oracle::default();
    let fine = Oracle::new(OracleConfig { eps: 0.5e-6, ..OracleConfig::default() });
    for n in 0..4 {
        for k in [0.3, 1.1, 2.5] {
            let a = coarse.numerical_dispersion(&p, n, k).unwrap();
            let b = fine.numerical_dispersion(&p, n, k).unwrap();
            assert!((a - b).abs() < 1e-8);
        }
    }
}

#[test]
fn residual_examples() {
    let p = params(0.3);
    let xs = uniform_grid(0.1 * A, 0.9 * A, 256);
    let sol = BlochSolution::on_band(p, 1, 1.2).unwrap();
    let f = sol.sample(xs.clone()).unwrap();
    assert!(ode_residual(&f).unwrap() < 1e-7);

    let lam = sol.lambda();
    let wrong = SampledFunction::new(
        f.xs.clone(),
        f.values.clone(),
        SampleMeta { k: f.meta.k, equation: AngularEquation::scarf(&p, lam + 1e-3) },
    )
    .unwrap();
    assert!(ode_residual(&wrong).unwrap() > 1e-3);

    let q = PI * 2.3 / A;
    let plane = xs.iter().map(|&x| Complex64::from_polar(1.0, q * x)).collect();
    let free = SampledFunction::new(xs, plane, SampleMeta { k: 0.0, equation: AngularEquation::free(A, 2.3) }).unwrap();
    assert!(ode_residual(&free).unwrap() < 1e-10);
}

#[test]
fn sampled_function_validation() {
    let meta = SampleMeta { k: 0.0, equation: AngularEquation::free(A, 1.0) };
    let one = Complex64::new(1.0, 0.0);
    assert!(SampledFunction::new(vec![0.1, 0.1], vec![one, one], meta).is_err());
    assert!(SampledFunction::new(vec![0.1, 0.2], vec![one, Complex64::new(f64::NAN, 0.0)], meta).is_err());
    assert!(SampledFunction::new(vec![0.1], vec![one, one], meta).is_err());
}
