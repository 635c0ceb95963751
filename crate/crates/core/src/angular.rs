//! The periodic `1/sin²` (Scarf) band problem
//!
//! ```text
//! −(a²/π²) K'' − (1/4 − s²)/sin²(πx/a) K = λ² K,     g = s² − 1/4,
//! ```
//!
//! which is the angular equation of the three-body Calogero model under
//! `3φ = πx/a`. For `−1/4 < g < 0` the spectrum consists of bands
//! `n + 1/2 − s ≤ λ ≤ n + 1/2 + s` separated by gaps of width `1 − 2s`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::cell::{locate, theta, BlochWave, CellBasis, Midpoint};
use crate::error::{domain, Error, Result};
use crate::oracle::AngularEquation;
use crate::specfun::{arccos_branch, connection_coefficients, hyp2f1_complement, jacobi_poly};

/// Scarf coupling with `0 < s < 1/2` and lattice period `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScarfParams {
    pub g: f64,
    pub s: f64,
    pub a: f64,
}

impl ScarfParams {
    /// `s = √(g + 1/4)`; fails outside the band window `−1/4 < g < 0`.
    pub fn from_coupling(g: f64, a: f64) -> Result<Self> {
        if !(g > -0.25 && g < 0.0) {
            return Err(Error::CouplingWindow { name: "g", value: g });
        }
        check_period(a)?;
        Ok(ScarfParams { g, s: (g + 0.25).sqrt(), a })
    }

    pub fn from_s(s: f64, a: f64) -> Result<Self> {
        if !(s > 0.0 && s < 0.5) {
            return domain(format!("s = {s} outside (0, 1/2)"));
        }
        check_period(a)?;
        Ok(ScarfParams { g: s * s - 0.25, s, a })
    }

    /// Strength `1/4 − s²` of the attractive `1/sin²` term.
    pub fn strength(&self) -> f64 {
        0.25 - self.s * self.s
    }

    pub fn zone_edge(&self) -> f64 {
        PI / self.a
    }
}

pub(crate) fn check_period(a: f64) -> Result<()> {
    if !(a > 0.0 && a.is_finite()) {
        return domain(format!("lattice period a = {a} must be positive"));
    }
    Ok(())
}

/// Shorthand for [`ScarfParams::from_coupling`].
pub fn scarf_from_coupling(g: f64, a: f64) -> Result<ScarfParams> {
    ScarfParams::from_coupling(g, a)
}

/// A point on the dispersion curve. `m = 3λ` is the separation constant of
/// the radial equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandPoint {
    pub n: usize,
    pub k: f64,
    pub lambda: f64,
    pub m: f64,
}

impl BandPoint {
    pub fn new(n: usize, k: f64, lambda: f64) -> Self {
        BandPoint { n, k, lambda, m: 3.0 * lambda }
    }
}

pub(crate) fn check_k(k: f64, a: f64) -> Result<f64> {
    let edge = PI / a;
    let tol = 1e-12 * edge;
    if !(k >= -tol && k <= edge + tol) {
        return domain(format!("k = {k} outside the reduced zone [0, π/a = {edge}]"));
    }
    Ok(k.clamp(0.0, edge))
}

/// `cos(πλ) = sin(πs) cos(ka)`, solved on the `n`th branch `n ≤ λ ≤ n + 1`.
///
/// Even bands rise from `n + 1/2 − s` at `k = 0` to `n + 1/2 + s` at
/// `k = π/a`; odd bands run the other way.
pub fn dispersion_lambda(p: &ScarfParams, n: usize, k: f64) -> Result<BandPoint> {
    let k = check_k(k, p.a)?;
    let y = (PI * p.s).sin() * (k * p.a).cos();
    let y = if n % 2 == 0 { y } else { -y };
    let lambda = arccos_branch(y.clamp(-1.0, 1.0), n)? / PI;
    Ok(BandPoint::new(n, k, lambda))
}

/// `(n + 1/2 − s, n + 1/2 + s)`.
pub fn band_edges(p: &ScarfParams, n: usize) -> (f64, f64) {
    let c = n as f64 + 0.5;
    (c - p.s, c + p.s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BandEdge {
    /// `λ = n + 1/2 − s`
    Lower,
    /// `λ = n + 1/2 + s`
    Upper,
}

impl BandEdge {
    pub fn lambda(self, p: &ScarfParams, n: usize) -> f64 {
        let (lo, hi) = band_edges(p, n);
        match self {
            BandEdge::Lower => lo,
            BandEdge::Upper => hi,
        }
    }

    /// Reduced wave number at which band `n` reaches this edge.
    pub fn wave_number(self, p: &ScarfParams, n: usize) -> f64 {
        let at_zero = matches!((self, n % 2), (BandEdge::Lower, 0) | (BandEdge::Upper, 1));
        if at_zero {
            0.0
        } else {
            PI / p.a
        }
    }
}

/// Closed-form `u`, `v` of the Scarf cell at fixed `λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScarfBasis {
    params: ScarfParams,
    lambda: f64,
    mid: Midpoint,
}

impl ScarfBasis {
    pub fn new(params: ScarfParams, lambda: f64) -> Result<Self> {
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return domain(format!("λ = {lambda} must be non-negative"));
        }
        let (av, bv, cv) = v_params(params.s, lambda);
        let (au, bu, cu) = u_params(params.s, lambda);
        let (even_v, odd_v) = connection_coefficients(av, bv, cv)?;
        let (even_u, odd_u) = connection_coefficients(au, bu, cu)?;
        Ok(ScarfBasis { params, lambda, mid: Midpoint { even_v, odd_v, even_u, odd_u } })
    }

    pub fn params(&self) -> &ScarfParams {
        &self.params
    }

    fn eval(&self, t: f64, exponent: f64, (a, b, c): (f64, f64, f64), at_mid: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let th = theta(t, self.params.a);
        let (sn, cs) = th.sin_cos();
        let (z, zc) = (sn * sn, cs * cs);
        if zc < 1e-30 {
            return at_mid;
        }
        // Parameters are validated in `new`, so the only failure left is z = 1.
        let f = hyp2f1_complement(a, b, c, z, zc).unwrap_or(f64::NAN);
        z.powf(exponent) * f
    }
}

fn v_params(s: f64, lambda: f64) -> (f64, f64, f64) {
    (0.25 - 0.5 * s + 0.5 * lambda, 0.25 - 0.5 * s - 0.5 * lambda, 1.0 - s)
}

fn u_params(s: f64, lambda: f64) -> (f64, f64, f64) {
    (0.25 + 0.5 * s + 0.5 * lambda, 0.25 + 0.5 * s - 0.5 * lambda, 1.0 + s)
}

impl CellBasis for ScarfBasis {
    fn period(&self) -> f64 {
        self.params.a
    }

    fn lambda(&self) -> f64 {
        self.lambda
    }

    fn v(&self, t: f64) -> f64 {
        let s = self.params.s;
        self.eval(t, 0.25 - 0.5 * s, v_params(s, self.lambda), self.mid.even_v)
    }

    fn u(&self, t: f64) -> f64 {
        let s = self.params.s;
        self.eval(t, 0.25 + 0.5 * s, u_params(s, self.lambda), self.mid.even_u)
    }

    fn midpoint(&self) -> Midpoint {
        self.mid
    }

    fn equation(&self) -> AngularEquation {
        AngularEquation::scarf(&self.params, self.lambda)
    }
}

fn check_half_cell(p: &ScarfParams, x: f64) -> Result<()> {
    if !(x > 0.0 && x <= 0.5 * p.a) {
        return domain(format!("x = {x} outside (0, a/2]"));
    }
    Ok(())
}

/// `u(x) = [sin²(πx/a)]^{1/4+s/2} ₂F₁(1/4+s/2+λ/2, 1/4+s/2−λ/2; 1+s; sin²(πx/a))`.
pub fn basis_u(p: &ScarfParams, lambda: f64, x: f64) -> Result<f64> {
    check_half_cell(p, x)?;
    Ok(ScarfBasis::new(*p, lambda)?.u(x))
}

/// `v(x)`: as [`basis_u`] with `s → −s`.
pub fn basis_v(p: &ScarfParams, lambda: f64, x: f64) -> Result<f64> {
    check_half_cell(p, x)?;
    Ok(ScarfBasis::new(*p, lambda)?.v(x))
}

/// Angular Bloch eigenfunction of the Scarf lattice.
pub type BlochSolution = BlochWave<ScarfBasis>;

impl BlochWave<ScarfBasis> {
    pub fn from_point(params: ScarfParams, point: &BandPoint) -> Result<Self> {
        check_k(point.k, params.a)?;
        Ok(BlochWave::new(ScarfBasis::new(params, point.lambda)?, point.k))
    }

    /// On the analytic dispersion curve.
    pub fn on_band(params: ScarfParams, n: usize, k: f64) -> Result<Self> {
        let point = dispersion_lambda(&params, n, k)?;
        Self::from_point(params, &point)
    }

    pub fn params(&self) -> &ScarfParams {
        self.basis().params()
    }

    pub fn point(&self) -> BandPoint {
        // n is not stored in the basis; recover it from λ.
        BandPoint::new(self.lambda().floor().max(0.0) as usize, self.k(), self.lambda())
    }

    /// Reference normalizations `(u₀, v₀)`.
    pub fn normalization(&self) -> (f64, f64) {
        let mid = self.basis().midpoint();
        (mid.even_u, mid.even_v)
    }
}

pub fn bloch_wavefunction(sol: &BlochSolution, x: f64) -> Complex64 {
    sol.eval(x)
}

/// Bloch-condition deviation over a grid; see [`BlochWave::bloch_deviation`].
pub fn check_bloch(sol: &BlochSolution, xs: &[f64]) -> f64 {
    sol.bloch_deviation(xs)
}

/// Band-edge eigenfunction in Jacobi-polynomial form,
/// `[sin²(πt/a)]^{n/2 ∓ s/2 + 1/4} P_n^{(ν,ν)}(−i cot(πt/a))` with
/// `ν = −n ± s − 1/2`, carried to other cells with the edge's Bloch phase.
pub fn band_edge_wavefunction(p: &ScarfParams, n: usize, edge: BandEdge, x: f64) -> Complex64 {
    let (j, t) = locate(x, p.a);
    if t <= 0.0 || t >= p.a {
        return Complex64::new(0.0, 0.0);
    }
    let nf = n as f64;
    let (exponent, nu) = match edge {
        BandEdge::Lower => (0.5 * nf - 0.5 * p.s + 0.25, -nf + p.s - 0.5),
        BandEdge::Upper => (0.5 * nf + 0.5 * p.s + 0.25, -nf - p.s - 0.5),
    };
    let th = theta(t, p.a);
    let (sn, cs) = th.sin_cos();
    let arg = Complex64::new(0.0, -cs / sn);
    let k = edge.wave_number(p, n);
    let phase = Complex64::from_polar(1.0, j as f64 * k * p.a);
    phase * (sn * sn).powf(exponent) * jacobi_poly(n, nu, nu, arg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cell::uniform_grid;

    const A: f64 = PI / 3.0;

    #[test]
    fn scarf_window() {
        let p = scarf_from_coupling(-0.16, A).unwrap();
        assert!((p.s - 0.3).abs() < 1e-15);
        assert!((scarf_from_coupling(-1e-12, A).unwrap().s - 0.5).abs() < 1e-11);
        assert!(scarf_from_coupling(-0.25 + 1e-14, A).unwrap().s < 1e-6);
        assert!(scarf_from_coupling(0.0, A).is_err());
        assert!(scarf_from_coupling(-0.25, A).is_err());
        assert!(scarf_from_coupling(-0.1, -1.0).is_err());
    }

    #[test]
    fn dispersion_band_zero_edges() {
        let p = ScarfParams::from_s(0.3, A).unwrap();
        let lo = dispersion_lambda(&p, 0, 0.0).unwrap();
        assert!((lo.lambda - 0.2).abs() < 1e-14);
        assert!((lo.m - 0.6).abs() < 1e-13);
        let hi = dispersion_lambda(&p, 0, PI / A).unwrap();
        assert!((hi.lambda - 0.8).abs() < 1e-14);
        assert!(dispersion_lambda(&p, 0, 1.1 * PI / A).is_err());
    }

    #[test]
    fn band_edges_and_gaps() {
        let p = ScarfParams::from_s(0.3, A).unwrap();
        let (lo, hi) = band_edges(&p, 2);
        assert!((lo - 2.2).abs() < 1e-15 && (hi - 2.8).abs() < 1e-15);
        for n in 0..5 {
            let (lo, hi) = band_edges(&p, n);
            let (next, _) = band_edges(&p, n + 1);
            assert!((hi - lo - 0.6).abs() < 1e-14);
            assert!((next - hi - 0.4).abs() < 1e-14);
        }
    }

    #[test]
    fn odd_bands_reach_lower_edge_at_zone_boundary() {
        let p = ScarfParams::from_s(0.3, A).unwrap();
        let at_edge = dispersion_lambda(&p, 1, PI / A).unwrap();
        assert!((at_edge.lambda - 1.2).abs() < 1e-14);
        assert_eq!(BandEdge::Lower.wave_number(&p, 1), PI / A);
        assert_eq!(BandEdge::Lower.wave_number(&p, 2), 0.0);
    }

    #[test]
    fn u_leading_frobenius_behaviour() {
        let p = ScarfParams::from_s(0.3, A).unwrap();
        let x = 1e-7;
        let ratio = basis_u(&p, 0.55, x).unwrap() / x.powf(0.8);
        assert!((ratio / (PI / A).powf(0.8) - 1.0).abs() < 1e-10);
        assert!(basis_u(&p, 0.55, 0.0).is_err());
        assert!(basis_v(&p, 0.55, 0.6 * A).is_err());
    }

    #[test]
    fn basis_is_smooth_through_one_half() {
        // z = sin² crosses 1/2 at a/4, where the evaluation switches branch.
        let p = ScarfParams::from_s(0.3, A).unwrap();
        let b = ScarfBasis::new(p, 0.55).unwrap();
        let h = 1e-9;
        let x = 0.25 * A;
        let jump = (b.u(x + h) - b.u(x - h)).abs();
        assert!(jump < 1e-8, "jump {jump}");
    }

    #[test]
    fn midpoint_discriminant_is_scarf_closed_form() {
        let p = ScarfParams::from_s(0.3, A).unwrap();
        for &lam in &[0.1, 0.55, 1.0, 1.37, 2.5, 3.3] {
            let d = ScarfBasis::new(p, lam).unwrap().midpoint().discriminant();
            let exact = (PI * lam).cos() / (PI * 0.3).sin();
            assert!((d - exact).abs() < 1e-12, "λ={lam}: {d} vs {exact}");
        }
    }

    #[test]
    fn n0_lower_edge_is_pure_power() {
        let p = ScarfParams::from_s(0.3, A).unwrap();
        let x = 0.37 * A;
        let k = band_edge_wavefunction(&p, 0, BandEdge::Lower, x);
        let expect = (theta(x, A).sin().powi(2)).powf(0.25 - 0.15);
        assert!((k - Complex64::new(expect, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn zero_k_solution_is_real_and_periodic() {
        let p = ScarfParams::from_s(0.3, A).unwrap();
        let sol = BlochSolution::on_band(p, 0, 0.0).unwrap();
        for x in uniform_grid(0.05 * A, 2.95 * A, 41) {
            let k = sol.eval(x);
            assert!(k.im.abs() < 1e-14);
            assert!((sol.eval(x + A) - k).norm() < 1e-12);
        }
    }

    #[test]
    fn zone_boundary_solution_alternates() {
        let p = ScarfParams::from_s(0.3, A).unwrap();
        let sol = BlochSolution::on_band(p, 0, PI / A).unwrap();
        for x in uniform_grid(0.05 * A, 0.95 * A, 17) {
            assert!((sol.continued_next(x) + sol.eval(x)).norm() < 1e-10);
        }
    }
}
