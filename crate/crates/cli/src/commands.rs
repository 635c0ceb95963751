//! One function per subcommand. Each returns the table to write plus any
//! numerical disagreements; the caller decides the exit code.

use std::f64::consts::PI;

use anyonlab::radial::FullState;
use anyonlab::wolfes::wolfes_inner_edges;
use anyonlab::*;
use std::result::Result;
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::output::{Cell, Table};
use crate::CliError;

/// Oracle and analytic band values must agree this closely.
pub const LAMBDA_TOLERANCE: f64 = 1e-6;
/// Bloch condition and phase checks on assembled solutions.
pub const BLOCH_TOLERANCE: f64 = 1e-8;
const DET_TOLERANCE: f64 = 1e-8;

pub struct Outcome {
    pub table: Table,
    pub failures: Vec<String>,
}

fn numerical(e: Error) -> CliError {
    CliError::Numerical(e.to_string())
}

fn sector0() -> OrderingSector {
    OrderingSector::new(0).expect("sector 0 exists")
}

fn check_zone(k: f64, a: f64) -> Result<f64, CliError> {
    let edge = PI / a;
    if !(0.0..=edge).contains(&k) {
        return Err(CliError::Config(format!("k = {k} outside the reduced zone [0, {edge}]")));
    }
    Ok(k)
}

fn jobs(cfg: &RunConfig) -> Vec<(usize, f64)> {
    let ks = cfg.k_grid();
    cfg.bands.iter().flat_map(|&n| ks.iter().map(move |&k| (n, k))).collect()
}

/// Signed offset of `measured` from `analytic`, folded into (−π, π].
fn wrapped(measured: f64, analytic: f64) -> f64 {
    let d = (measured - analytic + PI).rem_euclid(2.0 * PI) - PI;
    if d <= -PI { d + 2.0 * PI } else { d }
}

/// Phase over one cell, moving the probe off any node it happens to hit.
fn measure<B: CellBasis>(sol: &BlochWave<B>, a: f64) -> Result<f64, CliError> {
    let mut last = None;
    for frac in [0.37, 0.29, 0.43, 0.21] {
        match measured_exchange_phase(sol, frac * a) {
            Ok(phase) => return Ok(phase),
            Err(e @ Error::ProbeAtNode { .. }) => last = Some(e),
            Err(e) => return Err(numerical(e)),
        }
    }
    Err(numerical(last.expect("at least one probe")))
}

pub fn bands(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let p = cfg.scarf()?;
    let oracle = Oracle::new(cfg.oracle());
    let rows: Vec<(Vec<Cell>, Option<String>)> = jobs(cfg)
        .par_iter()
        .map(|&(n, k)| {
            let pt = dispersion_lambda(&p, n, k).map_err(numerical)?;
            let energy = RadialState::new(0, pt.m, cfg.omega).map_err(numerical)?.energy();
            let theta = exchange_phase(k, cfg.a, &sector0(), (2, 3)).map_err(numerical)?.theta;
            let momentum = momentum(k, cfg.a, 0).map_err(numerical)?;
            let (oracle_lambda, failure) = match oracle.numerical_dispersion(&p, n, k) {
                Ok(l) if (l - pt.lambda).abs() <= LAMBDA_TOLERANCE => (l, None),
                Ok(l) => (l, Some(format!("n={n} k={k}: analytic {} oracle {l}", pt.lambda))),
                Err(e) => (f64::NAN, Some(format!("n={n} k={k}: {e}"))),
            };
            let row = vec![
                n.into(),
                k.into(),
                pt.lambda.into(),
                pt.m.into(),
                energy.into(),
                theta.into(),
                momentum.into(),
                oracle_lambda.into(),
                (oracle_lambda - pt.lambda).abs().into(),
            ];
            Ok((row, failure))
        })
        .collect::<Result<_, CliError>>()?;
    let mut table = Table::new(vec![
        "n", "k", "lambda", "m", "energy_l0", "theta", "momentum_n0", "oracle_lambda", "abs_diff",
    ]);
    let mut failures = Vec::new();
    for (row, failure) in rows {
        table.push(row);
        failures.extend(failure);
    }
    Ok(Outcome { table, failures })
}

pub struct WavefunctionArgs {
    pub n: usize,
    pub k: f64,
    pub cells: usize,
    pub l: Option<usize>,
    pub r: Option<f64>,
}

pub fn wavefunction(cfg: &RunConfig, args: &WavefunctionArgs) -> Result<Outcome, CliError> {
    let p = cfg.scarf()?;
    let k = check_zone(args.k, cfg.a)?;
    if args.cells == 0 {
        return Err(CliError::Config("cells must be at least 1".into()));
    }
    if let Some(r) = args.r {
        if !(r > 0.0 && r.is_finite()) {
            return Err(CliError::Config(format!("r = {r} must be positive")));
        }
    }
    let sol = BlochSolution::on_band(p, args.n, k).map_err(numerical)?;
    let xs = uniform_grid(0.0, args.cells as f64 * cfg.a, cfg.grid_points);
    let full = match (args.l, args.r) {
        (None, None) => None,
        (l, r) => {
            let radial = RadialState::new(l.unwrap_or(0), sol.point().m, cfg.omega).map_err(numerical)?;
            Some((FullState::new(radial, sol.clone()).map_err(numerical)?, r.unwrap_or(1.0)))
        }
    };
    let mut headers = vec!["x", "re", "im", "abs"];
    if full.is_some() {
        headers.extend(["psi_re", "psi_im", "psi_abs"]);
    }
    let mut table = Table::new(headers);
    for &x in &xs {
        let v = sol.eval(x);
        let mut row: Vec<Cell> = vec![x.into(), v.re.into(), v.im.into(), v.norm().into()];
        if let Some((fs, r)) = &full {
            let psi = full_wavefunction(fs, *r, x * PI / (3.0 * cfg.a));
            row.extend([psi.re.into(), psi.im.into(), psi.norm().into()]);
        }
        table.push(row);
    }
    let deviation = sol.bloch_deviation(&xs);
    table.notes.push(format!("lambda={}", crate::output::fmt_g15(sol.lambda())));
    table.notes.push(format!("bloch_deviation={}", crate::output::fmt_g15(deviation)));
    let mut failures = Vec::new();
    if !(deviation <= BLOCH_TOLERANCE) {
        failures.push(format!("Bloch deviation {deviation:e} exceeds {BLOCH_TOLERANCE:e}"));
    }
    Ok(Outcome { table, failures })
}

pub fn default_exchange_ks(a: f64) -> Vec<f64> {
    [0.0, 0.25, 0.5, 0.75, 1.0].iter().map(|t| t * PI / a).collect()
}

pub fn exchange(cfg: &RunConfig, ks: &[f64], band: usize) -> Result<Outcome, CliError> {
    let p = cfg.scarf()?;
    for &k in ks {
        check_zone(k, cfg.a)?;
    }
    let rows: Vec<(Vec<Cell>, Option<String>)> = ks
        .par_iter()
        .map(|&k| {
            let report = exchange_phase(k, cfg.a, &sector0(), (2, 3)).map_err(numerical)?;
            let sol = BlochSolution::on_band(p, band, k).map_err(numerical)?;
            let offset = wrapped(measure(&sol, cfg.a)?, report.theta);
            let mut row: Vec<Cell> = vec![
                k.into(),
                report.theta.into(),
                (report.theta + offset).into(),
                offset.abs().into(),
                report.classification.letter().to_string().as_str().into(),
            ];
            for n_prime in 0..3 {
                row.push(momentum(k, cfg.a, n_prime).map_err(numerical)?.into());
            }
            let failure = (!(offset.abs() <= BLOCH_TOLERANCE))
                .then(|| format!("k={k}: measured phase off by {:e}", offset.abs()));
            Ok((row, failure))
        })
        .collect::<Result<_, CliError>>()?;
    let mut table = Table::new(vec![
        "k", "theta", "theta_measured", "abs_diff", "statistics", "momentum_n0", "momentum_n1", "momentum_n2",
    ]);
    let mut failures = Vec::new();
    for (row, failure) in rows {
        table.push(row);
        failures.extend(failure);
    }
    Ok(Outcome { table, failures })
}

pub fn oracle(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let p = cfg.scarf()?;
    let oracle = Oracle::new(cfg.oracle());
    let rows: Vec<(Vec<Cell>, Vec<String>)> = jobs(cfg)
        .par_iter()
        .map(|&(n, k)| {
            let lambda = dispersion_lambda(&p, n, k).map_err(numerical)?.lambda;
            let mut failures = Vec::new();
            let oracle_lambda = oracle.numerical_dispersion(&p, n, k).unwrap_or_else(|e| {
                failures.push(format!("n={n} k={k}: {e}"));
                f64::NAN
            });
            let diff = (oracle_lambda - lambda).abs();
            if diff > LAMBDA_TOLERANCE {
                failures.push(format!("n={n} k={k}: analytic {lambda} oracle {oracle_lambda}"));
            }
            let (disc, det_defect, drift) = match oracle.integrate_cell(&p, lambda) {
                Ok(t) => (t.half_trace(), t.det() - 1.0, t.wronskian_drift),
                Err(e) => {
                    failures.push(format!("n={n} k={k}: {e}"));
                    (f64::NAN, f64::NAN, f64::NAN)
                }
            };
            if !(det_defect.abs() <= DET_TOLERANCE) {
                failures.push(format!("n={n} k={k}: det T - 1 = {det_defect:e}"));
            }
            let row = vec![
                n.into(),
                k.into(),
                lambda.into(),
                oracle_lambda.into(),
                diff.into(),
                disc.into(),
                (k * cfg.a).cos().into(),
                det_defect.into(),
                drift.into(),
            ];
            Ok((row, failures))
        })
        .collect::<Result<_, CliError>>()?;
    let mut table = Table::new(vec![
        "n", "k", "lambda", "oracle_lambda", "abs_diff", "discriminant", "cos_ka", "det_minus_one", "wronskian_drift",
    ]);
    let mut failures = Vec::new();
    for (row, f) in rows {
        table.push(row);
        failures.extend(f);
    }
    Ok(Outcome { table, failures })
}

pub fn wolfes(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let p = cfg.wolfes()?;
    let oracle = Oracle::new(cfg.oracle());
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let top = cfg.bands.iter().max().copied().unwrap_or(0) / 2;
    for n in 0..=top {
        match (wolfes_band_edges(&p, n, &oracle), wolfes_inner_edges(&p, n, &oracle)) {
            (Ok((lo, hi)), Ok((ilo, ihi))) => notes.push(format!(
                "edges n={n} outer={},{} inner={},{}",
                crate::output::fmt_g15(lo),
                crate::output::fmt_g15(hi),
                crate::output::fmt_g15(ilo),
                crate::output::fmt_g15(ihi),
            )),
            (Err(e), _) | (_, Err(e)) => failures.push(format!("edges n={n}: {e}")),
        }
    }
    let probes = uniform_grid(0.01 * cfg.a, 0.99 * cfg.a, cfg.grid_points);
    let rows: Vec<(Vec<Cell>, Vec<String>)> = jobs(cfg)
        .par_iter()
        .map(|&(b, k)| {
            let mut failures = Vec::new();
            let sol = WolfesBloch::wolfes_on_band(p, b, k, &oracle).map_err(numerical)?;
            let lambda = sol.lambda();
            let energy = RadialState::wolfes(0, lambda, cfg.omega).map_err(numerical)?.energy();
            let theta = exchange_phase(k, cfg.a, &sector0(), (2, 3)).map_err(numerical)?.theta;
            let offset = wrapped(measure(&sol, cfg.a)?, theta);
            let deviation = sol.bloch_deviation(&probes);
            if !(deviation <= BLOCH_TOLERANCE) || !(offset.abs() <= BLOCH_TOLERANCE) {
                failures.push(format!("b={b} k={k}: Bloch deviation {deviation:e}, phase offset {:e}", offset.abs()));
            }
            let row = vec![
                b.into(),
                k.into(),
                lambda.into(),
                lambda.into(),
                energy.into(),
                theta.into(),
                (theta + offset).into(),
                deviation.into(),
            ];
            Ok((row, failures))
        })
        .collect::<Result<_, CliError>>()?;
    let mut table =
        Table::new(vec!["sub_band", "k", "lambda", "m", "energy_l0", "theta", "theta_measured", "bloch_deviation"]);
    for (row, f) in rows {
        table.push(row);
        failures.extend(f);
    }
    table.notes = notes;
    Ok(Outcome { table, failures })
}
