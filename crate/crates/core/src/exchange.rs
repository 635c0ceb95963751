//! Particle coordinates, ordering sectors, the exchange phase and the
//! crystal-momentum ladder.
//!
//! With `a = π/3` one angular sector `Δφ = π/3` is one lattice cell `Δx = a`
//! under `x = 3φa/π`. Sectors are numbered by `p = ⌊3φ/π⌋` and the particle
//! ordering of each sector is read off from a representative configuration.
//! Crossing one sector wall translates the angular wavefunction by one cell,
//! so it picks up `e^{ika}`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::angular::check_k;
use crate::cell::{BlochWave, CellBasis};
use crate::error::{domain, Error, Result};

/// Planck's constant in units with `ħ = 1`.
pub const PLANCK_H: f64 = 2.0 * PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticleConfig {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl ParticleConfig {
    pub fn new(x1: f64, x2: f64, x3: f64) -> Self {
        ParticleConfig { x1, x2, x3 }
    }

    pub fn positions(&self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }

    /// Exchanges the positions of particles `i` and `j` (labels 1..=3).
    pub fn swapped(&self, pair: (usize, usize)) -> Result<Self> {
        check_pair(pair)?;
        let mut x = self.positions();
        x.swap(pair.0 - 1, pair.1 - 1);
        Ok(ParticleConfig::new(x[0], x[1], x[2]))
    }

    pub fn translated(&self, d: f64) -> Self {
        ParticleConfig::new(self.x1 + d, self.x2 + d, self.x3 + d)
    }
}

/// `(X, x, y)`: centre of mass and the two relative coordinates.
pub fn to_jacobi(c: &ParticleConfig) -> (f64, f64, f64) {
    let big_x = (c.x1 + c.x2 + c.x3) / 3.0;
    let x = (c.x1 - c.x2) * FRAC_1_SQRT_2;
    let y = (c.x1 + c.x2 - 2.0 * c.x3) / 6f64.sqrt();
    (big_x, x, y)
}

/// `x = r sin φ`, `y = r cos φ` with `φ ∈ [0, 2π)`.
pub fn to_polar(x: f64, y: f64) -> Result<(f64, f64)> {
    let r = x.hypot(y);
    if r == 0.0 {
        return Err(Error::Degenerate("all three particles coincide".into()));
    }
    let mut phi = x.atan2(y);
    if phi < 0.0 {
        phi += 2.0 * PI;
    }
    if phi >= 2.0 * PI {
        phi = 0.0;
    }
    Ok((r, phi))
}

/// Inverse of [`to_jacobi`] followed by [`to_polar`].
pub fn from_polar(big_x: f64, r: f64, phi: f64) -> ParticleConfig {
    let (x, y) = (r * phi.sin(), r * phi.cos());
    let s6 = 6f64.sqrt();
    let x3 = big_x - s6 * y / 3.0;
    let pair_sum = s6 * y / 3.0;
    let diff = 2f64.sqrt() * x;
    ParticleConfig::new(big_x + 0.5 * (pair_sum + diff), big_x + 0.5 * (pair_sum - diff), x3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderingSector {
    pub p: usize,
    /// Particle labels from rightmost to leftmost.
    pub ordering: [usize; 3],
}

impl OrderingSector {
    pub fn new(p: usize) -> Result<Self> {
        if p >= 6 {
            return domain(format!("sector index {p} must be 0..=5"));
        }
        let phi = (p as f64 + 0.5) * PI / 3.0;
        Ok(OrderingSector { p, ordering: ordering_of(&from_polar(0.0, 1.0, phi)) })
    }

    /// Sector whose ordering is `ordering`.
    pub fn with_ordering(ordering: [usize; 3]) -> Result<Self> {
        (0..6)
            .map(|p| OrderingSector::new(p).expect("valid index"))
            .find(|s| s.ordering == ordering)
            .ok_or_else(|| Error::Domain(format!("{ordering:?} is not a permutation of (1, 2, 3)")))
    }
}

fn ordering_of(c: &ParticleConfig) -> [usize; 3] {
    let x = c.positions();
    let mut idx = [1, 2, 3];
    idx.sort_by(|&i, &j| x[j - 1].partial_cmp(&x[i - 1]).expect("finite positions"));
    idx
}

pub fn sector_of(phi: f64) -> Result<OrderingSector> {
    let phi = phi.rem_euclid(2.0 * PI);
    if (3.0 * phi).sin().abs() < 1e-12 {
        return Err(Error::Degenerate(format!("φ = {phi} lies on a coincidence line")));
    }
    OrderingSector::new(((3.0 * phi / PI).floor() as usize).min(5))
}

/// Sector of a particle configuration.
pub fn sector_of_config(c: &ParticleConfig) -> Result<OrderingSector> {
    let (_, x, y) = to_jacobi(c);
    let (_, phi) = to_polar(x, y)?;
    sector_of(phi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistics {
    Bosonic,
    Fermionic,
    Anyonic,
}

impl Statistics {
    pub fn letter(self) -> char {
        match self {
            Statistics::Bosonic => 'B',
            Statistics::Fermionic => 'F',
            Statistics::Anyonic => 'A',
        }
    }

    /// Classification of a phase in `[0, 2π)`.
    pub fn of_phase(theta: f64) -> Self {
        const TOL: f64 = 1e-12;
        if theta < TOL || theta > 2.0 * PI - TOL {
            Statistics::Bosonic
        } else if (theta - PI).abs() < TOL {
            Statistics::Fermionic
        } else {
            Statistics::Anyonic
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExchangeReport {
    pub k: f64,
    pub from: OrderingSector,
    pub to: OrderingSector,
    /// Signed sector step; a swap of the two outer particles is three steps.
    pub cells_translated: i32,
    pub theta: f64,
    pub classification: Statistics,
}

fn check_pair(pair: (usize, usize)) -> Result<()> {
    let ok = |i: usize| (1..=3).contains(&i);
    if !ok(pair.0) || !ok(pair.1) || pair.0 == pair.1 {
        return domain(format!("{pair:?} is not a transposition of particles 1..=3"));
    }
    Ok(())
}

/// Phase picked up when particles `pair` are exchanged starting in sector
/// `from`.
pub fn exchange_phase(k: f64, a: f64, from: &OrderingSector, pair: (usize, usize)) -> Result<ExchangeReport> {
    check_pair(pair)?;
    let k = check_k(k, a)?;
    let mut ordering = from.ordering;
    for label in ordering.iter_mut() {
        if *label == pair.0 {
            *label = pair.1;
        } else if *label == pair.1 {
            *label = pair.0;
        }
    }
    let to = OrderingSector::with_ordering(ordering)?;
    let step = (to.p as i32 - from.p as i32).rem_euclid(6);
    let cells = match step {
        0..=3 => step,
        _ => step - 6,
    };
    let theta = (cells as f64 * k * a).rem_euclid(2.0 * PI);
    let theta = if theta >= 2.0 * PI { 0.0 } else { theta };
    Ok(ExchangeReport { k, from: *from, to, cells_translated: cells, theta, classification: Statistics::of_phase(theta) })
}

/// `arg[K(x+a)/K(x)]` with `K(x+a)` continued through the singularity.
pub fn measured_exchange_phase<B: CellBasis>(sol: &BlochWave<B>, x_probe: f64) -> Result<f64> {
    let a = sol.basis().period();
    if !(x_probe > 0.0 && x_probe < a) {
        return domain(format!("probe x = {x_probe} must lie inside the cell (0, {a})"));
    }
    sol.measured_phase(x_probe)
}

/// Distance between two phases on the circle.
pub fn phase_distance(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// `p = (h/a)(ka/2π + n′)`.
pub fn momentum(k: f64, a: f64, n_prime: u32) -> Result<f64> {
    let k = check_k(k, a)?;
    Ok(PLANCK_H / a * (k * a / (2.0 * PI) + n_prime as f64))
}
