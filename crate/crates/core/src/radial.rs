//! Radial oscillator sector and complete eigenfunctions `Ψ(r, φ)`.
//!
//! The radial equation is
//! `−u'' + [(m² − 1/4)/r² + ω²r²/4] u = E u`.
//! The Wolfes problem prints `ω²r²` instead, which is the same equation at
//! frequency `2ω` (see [`RadialState::wolfes`]).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::cell::{BlochWave, CellBasis};
use crate::error::{domain, Result};
use crate::oracle::{first_derivative, second_derivative};
use crate::specfun::laguerre;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialState {
    pub l: usize,
    pub m: f64,
    pub omega: f64,
}

impl RadialState {
    pub fn new(l: usize, m: f64, omega: f64) -> Result<Self> {
        if !(m >= 0.0 && m.is_finite()) {
            return domain(format!("separation constant m = {m} must be finite and non-negative"));
        }
        if !(omega > 0.0 && omega.is_finite()) {
            return domain(format!("omega = {omega} must be positive"));
        }
        Ok(RadialState { l, m, omega })
    }

    /// Radial state of the Wolfes problem: the separation constant is the
    /// angular eigenvalue itself and the oscillator term `ω²r²` means an
    /// effective frequency `2ω`.
    pub fn wolfes(l: usize, lambda: f64, omega: f64) -> Result<Self> {
        Self::new(l, lambda, 2.0 * omega)
    }

    pub fn energy(&self) -> f64 {
        (2.0 * self.l as f64 + self.m + 1.0) * self.omega
    }

    /// `r^m e^{−ωr²/4} L_l^{(m)}(ωr²/2)`, the factor carried by `Ψ`.
    pub fn reduced(&self, r: f64) -> f64 {
        let r = r.max(0.0);
        let z = 0.5 * self.omega * r * r;
        let lag = laguerre(self.l, self.m, z).expect("m >= 0 by construction");
        r.powf(self.m) * (-0.5 * z).exp() * lag
    }

    /// `u(r) = √r · reduced(r)`.
    pub fn value(&self, r: f64) -> f64 {
        r.max(0.0).sqrt() * self.reduced(r)
    }

    /// `(m² − 1/4)/r² + ω²r²/4`.
    pub fn potential(&self, r: f64) -> f64 {
        (self.m * self.m - 0.25) / (r * r) + 0.25 * self.omega * self.omega * r * r
    }
}

pub fn radial_wavefunction(st: &RadialState, r: f64) -> f64 {
    st.value(r)
}

pub fn energy(st: &RadialState) -> f64 {
    st.energy()
}

/// Relative residual `max|−u'' + V u − E u| / max|E u|` on `points` uniform
/// samples of `[lo, hi]`.
pub fn radial_residual(st: &RadialState, lo: f64, hi: f64, points: usize) -> Result<f64> {
    if !(lo > 0.0 && hi > lo) || points < 24 {
        return domain("radial residual needs 0 < lo < hi and at least 24 points");
    }
    let h = (hi - lo) / (points - 1) as f64;
    let rs: Vec<f64> = (0..points).map(|i| lo + h * i as f64).collect();
    let y: Vec<Complex64> = rs.iter().map(|&r| Complex64::new(st.value(r), 0.0)).collect();
    let e = st.energy();
    let (mut worst, mut reference) = (0.0f64, 0.0f64);
    for i in 4..points - 4 {
        let res = -second_derivative(&y, i, h) + (st.potential(rs[i]) - e) * y[i];
        worst = worst.max(res.norm());
        reference = reference.max(e * y[i].re.abs());
    }
    Ok(worst / reference)
}

/// Sign changes of `u` on `(0, r_max]` sampled at `points` points.
pub fn count_nodes(st: &RadialState, r_max: f64, points: usize) -> usize {
    let mut count = 0;
    let mut last = 0.0;
    for i in 1..=points {
        let v = st.value(r_max * i as f64 / points as f64);
        if v != 0.0 {
            if last != 0.0 && v.signum() != last {
                count += 1;
            }
            last = v.signum();
        }
    }
    count
}

/// Separated eigenfunction `R(r) K(x)` with `x = 3φa/π`.
#[derive(Debug, Clone)]
pub struct FullState<B> {
    pub radial: RadialState,
    pub angular: BlochWave<B>,
}

impl<B: CellBasis> FullState<B> {
    /// Checks that `radial.m` is the separation constant of the angular
    /// solution, `m² = 9E_θ`.
    pub fn new(radial: RadialState, angular: BlochWave<B>) -> Result<Self> {
        let m_ang = 3.0 * angular.basis().equation().energy.sqrt();
        if (radial.m - m_ang).abs() > 1e-12 * m_ang.max(1.0) {
            return domain(format!("radial m = {} does not match angular m = {m_ang}", radial.m));
        }
        Ok(FullState { radial, angular })
    }

    pub fn energy(&self) -> f64 {
        self.radial.energy()
    }

    /// `Ψ(r, φ)`; zero on the coincidence lines `sin 3φ = 0`.
    pub fn eval(&self, r: f64, phi: f64) -> Complex64 {
        let a = self.angular.basis().period();
        self.radial.reduced(r) * self.angular.eval(3.0 * phi * a / PI)
    }

    /// Planar potential `−9V(3φ)/r² + ω²r²/4` with `V` the angular well.
    pub fn potential(&self, r: f64, phi: f64) -> f64 {
        let eq = self.angular.basis().equation();
        -9.0 * eq.potential(3.0 * phi) / (r * r) + 0.25 * self.radial.omega * self.radial.omega * r * r
    }
}

pub fn full_wavefunction<B: CellBasis>(fs: &FullState<B>, r: f64, phi: f64) -> Complex64 {
    fs.eval(r, phi)
}

/// Relative residual of the planar equation
/// `−(Ψ_rr + Ψ_r/r + Ψ_φφ/r²) + UΨ = EΨ` on a tensor grid, with all
/// derivatives taken by finite differences.
pub fn separation_residual<B: CellBasis>(
    fs: &FullState<B>,
    r_range: (f64, f64),
    phi_range: (f64, f64),
    points: usize,
) -> Result<f64> {
    if points < 24 {
        return domain("separation residual needs at least 24 points per axis");
    }
    let hr = (r_range.1 - r_range.0) / (points - 1) as f64;
    let hp = (phi_range.1 - phi_range.0) / (points - 1) as f64;
    let rs: Vec<f64> = (0..points).map(|i| r_range.0 + hr * i as f64).collect();
    let ps: Vec<f64> = (0..points).map(|j| phi_range.0 + hp * j as f64).collect();
    let grid: Vec<Vec<Complex64>> = rs.iter().map(|&r| ps.iter().map(|&p| fs.eval(r, p)).collect()).collect();
    let e = fs.energy();
    let (mut worst, mut reference) = (0.0f64, 0.0f64);
    for i in 4..points - 4 {
        for j in 4..points - 4 {
            let along_r: Vec<Complex64> = (i - 4..=i + 4).map(|ii| grid[ii][j]).collect();
            let psi = grid[i][j];
            let r = rs[i];
            let lap = second_derivative(&along_r, 4, hr)
                + first_derivative(&along_r, 4, hr) / r
                + second_derivative(&grid[i], j, hp) / (r * r);
            let res = -lap + (fs.potential(r, ps[j]) - e) * psi;
            worst = worst.max(res.norm());
            reference = reference.max(e * psi.norm());
        }
    }
    Ok(worst / reference)
}
