//! Self-matching Bloch assembly shared by the Scarf and Wolfes problems.
//!
//! A cell `(ja, (j+1)a]` has inverse-square singularities at its edges and a
//! mirror plane at its midpoint. The two Frobenius solutions of the left edge,
//! `v ~ t^{1/2-s}` and `u ~ t^{1/2+s}`, are known in closed form on the left
//! half `(0, a/2]`. Each decomposes at the midpoint into an even-type and an
//! odd-type component; those four numbers fix both the continuation of
//! `(v, u)` over the right half and the one-period propagation through the
//! next singularity (`v`-type coefficient continuous, `u`-type coefficient
//! flips sign).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::oracle::{AngularEquation, SampleMeta, SampledFunction};

/// Even/odd components of the left-edge basis at the cell midpoint.
///
/// For a regular midpoint the even part is the value and the odd part the
/// (scaled) slope; for a singular midpoint they are the coefficients of the
/// `|d|^{1/2-w}` and `|d|^{1/2+w}` Frobenius solutions there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Midpoint {
    pub even_v: f64,
    pub odd_v: f64,
    pub even_u: f64,
    pub odd_u: f64,
}

type Mat2 = [[f64; 2]; 2];

impl Midpoint {
    fn det(&self) -> f64 {
        self.even_v * self.odd_u - self.even_u * self.odd_v
    }

    /// Rows: `v_cont(t)` and `u_cont(t)` on `(a/2, a)` as combinations of
    /// `v(a - t)` and `u(a - t)`.
    pub fn reflection(&self) -> Mat2 {
        let Midpoint { even_v: ev, odd_v: ov, even_u: eu, odd_u: ou } = *self;
        let d = self.det();
        [
            [(ev * ou + eu * ov) / d, -2.0 * ev * ov / d],
            [2.0 * eu * ou / d, -(ev * ou + ov * eu) / d],
        ]
    }

    /// One-period propagation of the coefficient column `(c_v, c_u)`.
    pub fn propagation(&self) -> Mat2 {
        let r = self.reflection();
        [[r[0][0], r[1][0]], [-r[0][1], -r[1][1]]]
    }

    /// Half-trace of [`Midpoint::propagation`]; allowed bands have `|Δ| ≤ 1`.
    pub fn discriminant(&self) -> f64 {
        let Midpoint { even_v: ev, odd_v: ov, even_u: eu, odd_u: ou } = *self;
        (ev * ou + eu * ov) / self.det()
    }
}

/// A pair of cell solutions with the data needed for self-matching.
pub trait CellBasis {
    fn period(&self) -> f64;
    fn lambda(&self) -> f64;
    /// `v` on `(0, a/2]`.
    fn v(&self, t: f64) -> f64;
    /// `u` on `(0, a/2]`.
    fn u(&self, t: f64) -> f64;
    fn midpoint(&self) -> Midpoint;
    fn equation(&self) -> AngularEquation;
}

fn cell_value<B: CellBasis>(basis: &B, refl: &Mat2, c: [Complex64; 2], t: f64) -> Complex64 {
    let a = basis.period();
    if t <= 0.0 || t >= a {
        return Complex64::new(0.0, 0.0);
    }
    if t <= 0.5 * a {
        c[0] * basis.v(t) + c[1] * basis.u(t)
    } else {
        let r = a - t;
        let (v, u) = (basis.v(r), basis.u(r));
        c[0] * (refl[0][0] * v + refl[0][1] * u) + c[1] * (refl[1][0] * v + refl[1][1] * u)
    }
}

/// Cell index `j` with `ja < x ≤ (j+1)a` and the offset from the left edge.
/// Offsets within rounding distance of a lattice point are snapped onto it.
pub(crate) fn locate(x: f64, a: f64) -> (i64, f64) {
    let j = (x / a).ceil() - 1.0;
    let mut t = x - j * a;
    let tol = 8.0 * f64::EPSILON * x.abs().max(a);
    if t < tol {
        t = 0.0;
    } else if a - t < tol {
        t = a;
    }
    (j as i64, t)
}

/// Bloch solution `K_k` assembled in self-matching form.
///
/// In cell `N = j + 1/2` the solution is
/// `e^{i(Nka - ka/2)} [cos(ka/2) v(t)/v₀ + i sin(ka/2) u(t)/u₀]`, with
/// `t = x - ja` measured from the cell's left edge.
#[derive(Debug, Clone)]
pub struct BlochWave<B> {
    basis: B,
    k: f64,
    coeff: [Complex64; 2],
    reflection: Mat2,
    propagation: Mat2,
}

impl<B: CellBasis> BlochWave<B> {
    /// Uses the value-matching form (`v₀`, `u₀` in the denominators) unless
    /// it degenerates, in which case the slope-matching form is used. Both
    /// give the same vector whenever `λ` lies on the dispersion curve.
    pub fn new(basis: B, k: f64) -> Self {
        let mid = basis.midpoint();
        let a = basis.period();
        let (cs, sn) = ((0.5 * k * a).cos(), (0.5 * k * a).sin());
        let i = Complex64::new(0.0, 1.0);

        let e_scale = mid.even_v.abs() + mid.even_u.abs();
        let o_scale = mid.odd_v.abs() + mid.odd_u.abs();
        let value_form = [
            Complex64::new(cs * mid.even_u / e_scale, 0.0),
            i * sn * mid.even_v / e_scale,
        ];
        let slope_form = [i * sn * mid.odd_u / o_scale, Complex64::new(cs * mid.odd_v / o_scale, 0.0)];
        let norm = |c: &[Complex64; 2]| c[0].norm_sqr() + c[1].norm_sqr();

        let coeff = if norm(&value_form) >= norm(&slope_form) {
            let mut c = [Complex64::new(0.0, 0.0); 2];
            c[0] = if mid.even_v != 0.0 { Complex64::new(cs / mid.even_v, 0.0) } else { c[0] };
            c[1] = if mid.even_u != 0.0 { i * sn / mid.even_u } else { c[1] };
            c
        } else {
            slope_form
        };
        BlochWave { reflection: mid.reflection(), propagation: mid.propagation(), basis, k, coeff }
    }

    pub fn basis(&self) -> &B {
        &self.basis
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn lambda(&self) -> f64 {
        self.basis.lambda()
    }

    /// Coefficients of `(v, u)` in the cell `0 < x ≤ a`.
    pub fn coefficients(&self) -> [Complex64; 2] {
        self.coeff
    }

    /// `K_k(x)` for any real `x`; zero at the lattice singularities.
    pub fn eval(&self, x: f64) -> Complex64 {
        let a = self.basis.period();
        let (j, t) = locate(x, a);
        let phase = Complex64::from_polar(1.0, j as f64 * self.k * a);
        phase * cell_value(&self.basis, &self.reflection, self.coeff, t)
    }

    /// `K(x + a)` obtained by continuing the solution through the singularity
    /// at the right edge of `x`'s cell, without using the Bloch prefactor.
    pub fn continued_next(&self, x: f64) -> Complex64 {
        self.continued(x, 1)
    }

    /// `K(x + cells·a)` by repeated propagation of the cell coefficients.
    pub fn continued(&self, x: f64, cells: usize) -> Complex64 {
        let a = self.basis.period();
        let (j, t) = locate(x, a);
        let p = &self.propagation;
        let mut c = self.coeff;
        for _ in 0..cells {
            c = [p[0][0] * c[0] + p[0][1] * c[1], p[1][0] * c[0] + p[1][1] * c[1]];
        }
        let phase = Complex64::from_polar(1.0, j as f64 * self.k * a);
        phase * cell_value(&self.basis, &self.reflection, c, t)
    }

    /// `max |K(x+a) − e^{ika}K(x)| / max |K|` over `xs`, with `K(x+a)` from
    /// [`BlochWave::continued_next`].
    pub fn bloch_deviation(&self, xs: &[f64]) -> f64 {
        let bloch = Complex64::from_polar(1.0, self.k * self.basis.period());
        let mut dev: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for &x in xs {
            let here = self.eval(x);
            let next = self.continued_next(x);
            dev = dev.max((next - bloch * here).norm());
            scale = scale.max(here.norm()).max(next.norm());
        }
        if scale == 0.0 {
            return 0.0;
        }
        dev / scale
    }

    /// Phase `arg[K(x+a)/K(x)]` in `(-π, π]`, measured from the continued
    /// solution.
    pub fn measured_phase(&self, x_probe: f64) -> Result<f64> {
        self.measured_phase_over(x_probe, 1)
    }

    /// `arg[K(x + cells·a)/K(x)]` from the continued solution.
    pub fn measured_phase_over(&self, x_probe: f64, cells: usize) -> Result<f64> {
        let here = self.eval(x_probe);
        let reference = self.reference_scale();
        if here.norm() < 1e-8 * reference {
            return Err(Error::ProbeAtNode { x: x_probe });
        }
        Ok((self.continued(x_probe, cells) / here).arg())
    }

    fn reference_scale(&self) -> f64 {
        let a = self.basis.period();
        (1..16).map(|i| self.eval(a * i as f64 / 16.0).norm()).fold(0.0, f64::max)
    }

    pub fn sample(&self, xs: Vec<f64>) -> Result<SampledFunction> {
        let values = xs.iter().map(|&x| self.eval(x)).collect();
        SampledFunction::new(xs, values, SampleMeta { k: self.k, equation: self.basis.equation() })
    }
}

/// Uniform grid of `points` values on `[lo, hi]`.
pub fn uniform_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let step = (hi - lo) / (points - 1) as f64;
    (0..points).map(|i| lo + step * i as f64).collect()
}

/// `θ = πx/a`.
pub(crate) fn theta(x: f64, a: f64) -> f64 {
    PI * x / a
}
