//! The Wolfes extension: an extra `9f/cos²3φ` term in the angular problem.
//!
//! In `θ = πx/a` the cell equation is
//! `−K_θθ − [(1/4 − s²)/sin²θ + (1/4 − w²)/cos²θ] K = (λ/3)² K`
//! with singular points at both `x = 0` and `x = a/2`. The closed-form pair
//! at the left edge is
//!
//! `u = [sin²]^{1/4+s/2} [cos²]^{1/4+w/2} ₂F₁(1/2+s/2+w/2 ± λ/6; 1+s; sin²)`
//! `v = [sin²]^{1/4−s/2} [cos²]^{1/4−w/2} ₂F₁(1/2−s/2−w/2 ± λ/6; 1−s; sin²)`.
//!
//! Each truncation of a `₂F₁` gives an edge. Pure `v` or pure `u`
//! (`λ = 3(2n+1 ∓ (s+w))`) is periodic. The mixed types
//! (`λ = 3(2n+1 ∓ |s−w|)`) are antiperiodic. So every printed interval
//! `[3(2n+1−s−w), 3(2n+1+s+w)]` holds two allowed sub-bands, `2n` and
//! `2n+1`, split by a gap of width `6|s−w|`.

use std::f64::consts::PI;

use crate::cell::{theta, BlochWave, CellBasis, Midpoint};
use crate::angular::{check_k, check_period};
use crate::error::{domain, Error, Result};
use crate::oracle::{AngularEquation, Oracle};
use crate::specfun::{connection_coefficients, hyp2f1_complement};

/// Largest `||Δ| − 1|` accepted when confirming a truncation edge.
pub const EDGE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WolfesParams {
    pub g: f64,
    pub f: f64,
    pub s: f64,
    pub w: f64,
    pub a: f64,
}

impl WolfesParams {
    pub fn from_couplings(g: f64, f: f64, a: f64) -> Result<Self> {
        if !(g > -0.25 && g < 0.0) {
            return Err(Error::CouplingWindow { name: "g", value: g });
        }
        if !(f > -0.25 && f < 0.0) {
            return Err(Error::CouplingWindow { name: "f", value: f });
        }
        check_period(a)?;
        Ok(WolfesParams { g, f, s: (g + 0.25).sqrt(), w: (f + 0.25).sqrt(), a })
    }

    pub fn from_sw(s: f64, w: f64, a: f64) -> Result<Self> {
        for (name, v) in [("s", s), ("w", w)] {
            if !(v > 0.0 && v < 0.5) {
                return domain(format!("{name} = {v} outside (0, 1/2)"));
            }
        }
        check_period(a)?;
        Ok(WolfesParams { g: s * s - 0.25, f: w * w - 0.25, s, w, a })
    }
}

fn v_params(p: &WolfesParams, lambda: f64) -> (f64, f64, f64) {
    let base = 0.5 - 0.5 * p.s - 0.5 * p.w;
    (base + lambda / 6.0, base - lambda / 6.0, 1.0 - p.s)
}

fn u_params(p: &WolfesParams, lambda: f64) -> (f64, f64, f64) {
    let base = 0.5 + 0.5 * p.s + 0.5 * p.w;
    (base + lambda / 6.0, base - lambda / 6.0, 1.0 + p.s)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WolfesBasis {
    params: WolfesParams,
    lambda: f64,
    mid: Midpoint,
}

impl WolfesBasis {
    /// At the midpoint `x = a/2` the "even" data are the coefficients of the
    /// `|d|^{1/2−w}` solution and the "odd" data those of `|d|^{1/2+w}`.
    pub fn new(params: WolfesParams, lambda: f64) -> Result<Self> {
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return domain(format!("λ = {lambda} must be non-negative"));
        }
        let (av, bv, cv) = v_params(&params, lambda);
        let (au, bu, cu) = u_params(&params, lambda);
        let (v_minus, v_plus) = connection_coefficients(av, bv, cv)?;
        let (u_plus, u_minus) = connection_coefficients(au, bu, cu)?;
        let mid = Midpoint { even_v: v_minus, odd_v: v_plus, even_u: u_minus, odd_u: u_plus };
        Ok(WolfesBasis { params, lambda, mid })
    }

    pub fn params(&self) -> &WolfesParams {
        &self.params
    }

    fn eval(&self, t: f64, (es, ec): (f64, f64), (a, b, c): (f64, f64, f64)) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let (sn, cs) = theta(t, self.params.a).sin_cos();
        let (z, zc) = (sn * sn, cs * cs);
        if zc < 1e-30 {
            return 0.0;
        }
        let f = hyp2f1_complement(a, b, c, z, zc).unwrap_or(f64::NAN);
        z.powf(es) * zc.powf(ec) * f
    }
}

impl CellBasis for WolfesBasis {
    fn period(&self) -> f64 {
        self.params.a
    }

    fn lambda(&self) -> f64 {
        self.lambda
    }

    fn v(&self, t: f64) -> f64 {
        let p = &self.params;
        self.eval(t, (0.25 - 0.5 * p.s, 0.25 - 0.5 * p.w), v_params(p, self.lambda))
    }

    fn u(&self, t: f64) -> f64 {
        let p = &self.params;
        self.eval(t, (0.25 + 0.5 * p.s, 0.25 + 0.5 * p.w), u_params(p, self.lambda))
    }

    fn midpoint(&self) -> Midpoint {
        self.mid
    }

    fn equation(&self) -> AngularEquation {
        AngularEquation::wolfes(&self.params, self.lambda)
    }
}

fn check_open_half(p: &WolfesParams, x: f64) -> Result<()> {
    if !(x > 0.0 && x < 0.5 * p.a) {
        return domain(format!("x = {x} outside (0, a/2)"));
    }
    Ok(())
}

pub fn wolfes_basis_u(p: &WolfesParams, lambda: f64, x: f64) -> Result<f64> {
    check_open_half(p, x)?;
    Ok(WolfesBasis::new(*p, lambda)?.u(x))
}

pub fn wolfes_basis_v(p: &WolfesParams, lambda: f64, x: f64) -> Result<f64> {
    check_open_half(p, x)?;
    Ok(WolfesBasis::new(*p, lambda)?.v(x))
}

/// Oracle discriminant of the Wolfes cell.
pub fn wolfes_discriminant(p: &WolfesParams, lambda: f64, oracle: &Oracle) -> Result<f64> {
    Ok(oracle.transfer(&AngularEquation::wolfes(p, lambda))?.half_trace())
}

fn confirm_edge(p: &WolfesParams, lambda: f64, oracle: &Oracle) -> Result<f64> {
    let delta = wolfes_discriminant(p, lambda, oracle)?;
    let defect = (delta.abs() - 1.0).abs();
    if defect > EDGE_TOLERANCE {
        return Err(Error::OracleMismatch { lambda, defect });
    }
    Ok(lambda)
}

/// Truncation edges `3(2n + 1 ∓ (s + w))`, each confirmed by the oracle.
pub fn wolfes_band_edges(p: &WolfesParams, n: usize, oracle: &Oracle) -> Result<(f64, f64)> {
    let c = 3.0 * (2 * n + 1) as f64;
    let sw = 3.0 * (p.s + p.w);
    Ok((confirm_edge(p, c - sw, oracle)?, confirm_edge(p, c + sw, oracle)?))
}

/// Mixed-type truncation edges `3(2n + 1 ∓ |s − w|)`, oracle-confirmed.
pub fn wolfes_inner_edges(p: &WolfesParams, n: usize, oracle: &Oracle) -> Result<(f64, f64)> {
    let c = 3.0 * (2 * n + 1) as f64;
    let d = 3.0 * (p.s - p.w).abs();
    Ok((confirm_edge(p, c - d, oracle)?, confirm_edge(p, c + d, oracle)?))
}

/// Unconfirmed edges of sub-band `b`.
pub fn wolfes_subband_edges(p: &WolfesParams, b: usize) -> (f64, f64) {
    let n = b / 2;
    let c = 3.0 * (2 * n + 1) as f64;
    let (outer, inner) = (3.0 * (p.s + p.w), 3.0 * (p.s - p.w).abs());
    if b % 2 == 0 {
        (c - outer, c - inner)
    } else {
        (c + inner, c + outer)
    }
}

/// `λ` on sub-band `b` at reduced wave number `k`, from the oracle
/// discriminant.
pub fn wolfes_dispersion(p: &WolfesParams, b: usize, k: f64, oracle: &Oracle) -> Result<f64> {
    let k = check_k(k, p.a)?;
    let (lo, hi) = wolfes_subband_edges(p, b);
    oracle.solve_bracket(|lam| wolfes_discriminant(p, lam, oracle), lo, hi, (k * p.a).cos())
}

pub type WolfesBloch = BlochWave<WolfesBasis>;

impl BlochWave<WolfesBasis> {
    pub fn wolfes_on_band(p: WolfesParams, b: usize, k: f64, oracle: &Oracle) -> Result<Self> {
        let lambda = wolfes_dispersion(&p, b, k, oracle)?;
        Ok(BlochWave::new(WolfesBasis::new(p, lambda)?, k))
    }
}

/// Zone edge for the Wolfes lattice.
pub fn wolfes_zone_edge(p: &WolfesParams) -> f64 {
    PI / p.a
}
