//! Numerical verification engine for the angular band problem.
//!
//! Solutions are seeded by Frobenius series at each inverse-square
//! singularity, integrated with an adaptive Dormand–Prince scheme, projected
//! onto the Frobenius pair of the next singularity by Wronskians, and carried
//! through it with the connection rule (the `|d|^{1/2-s}` coefficient is
//! continuous, the `|d|^{1/2+s}` coefficient changes sign). The product over
//! one period is the transfer matrix; its half-trace is the discriminant.
//! Nothing here uses the hypergeometric closed forms.

mod ode;

use std::f64::consts::PI;

use num_complex::Complex64;

pub use ode::{integrate, Tolerance};

use crate::angular::{band_edges, check_k, ScarfParams};
use crate::error::{domain, Error, Result};
use crate::wolfes::WolfesParams;

/// `−(a²/π²) K'' − [q_sin/sin²(πx/a) + q_cos/cos²(πx/a)] K = E K`.
///
/// The signs are such that positive `q` is attractive. Scarf: `q_sin = 1/4 − s²`,
/// `E = λ²`. Wolfes: additionally `q_cos = 1/4 − w²`, `E = (λ/3)²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularEquation {
    pub a: f64,
    pub q_sin: f64,
    pub q_cos: f64,
    pub energy: f64,
    /// Whether `x = a/2` is a singular point (Wolfes).
    pub singular_midpoint: bool,
}

impl AngularEquation {
    pub fn scarf(p: &ScarfParams, lambda: f64) -> Self {
        AngularEquation { a: p.a, q_sin: p.strength(), q_cos: 0.0, energy: lambda * lambda, singular_midpoint: false }
    }

    pub fn wolfes(p: &WolfesParams, lambda: f64) -> Self {
        AngularEquation {
            a: p.a,
            q_sin: 0.25 - p.s * p.s,
            q_cos: 0.25 - p.w * p.w,
            energy: (lambda / 3.0).powi(2),
            singular_midpoint: true,
        }
    }

    /// Test hook: the Scarf problem with the `1/sin²` term removed.
    pub fn free(a: f64, lambda: f64) -> Self {
        AngularEquation { a, q_sin: 0.0, q_cos: 0.0, energy: lambda * lambda, singular_midpoint: false }
    }

    /// `q_sin/sin²θ + q_cos/cos²θ`.
    pub fn potential(&self, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        let mut v = self.q_sin / (s * s);
        if self.q_cos != 0.0 {
            v += self.q_cos / (c * c);
        }
        v
    }

    fn segments(&self) -> Vec<(End, End)> {
        let sin_end = End { near: self.q_sin, far: self.q_cos };
        if self.singular_midpoint {
            let cos_end = End { near: self.q_cos, far: self.q_sin };
            vec![(sin_end, cos_end), (cos_end, sin_end)]
        } else {
            vec![(sin_end, sin_end)]
        }
    }

    fn segment_length(&self) -> f64 {
        if self.singular_midpoint {
            0.5 * PI
        } else {
            PI
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    /// Distance of the Frobenius seed from the singularity, as a fraction of `a`.
    pub eps: f64,
    /// Number of Frobenius terms (1 to 5).
    pub terms: usize,
    pub tolerance: Tolerance,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { eps: 1e-6, terms: 3, tolerance: Tolerance { rtol: 1e-14, atol: 1e-17 } }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// exponent `1/2 − s`
    Minus,
    /// exponent `1/2 + s`
    Plus,
}

/// Local data of one singular point: `near/sin²d + far/cos²d` in the
/// distance `d` from it.
#[derive(Debug, Clone, Copy, PartialEq)]
struct End {
    near: f64,
    far: f64,
}

impl End {
    fn exponent(&self, branch: Branch) -> f64 {
        let root = (0.25 - self.near).max(0.0).sqrt();
        match branch {
            Branch::Minus => 0.5 - root,
            Branch::Plus => 0.5 + root,
        }
    }

    /// Series coefficients `c_j` of `d^ρ Σ c_j d^{2j}`.
    fn coefficients(&self, energy: f64, rho: f64, terms: usize) -> Vec<f64> {
        // Laurent/Taylor coefficients of E + near·csc²d + far·sec²d beyond the d⁻² term.
        let p = [
            energy + self.near / 3.0 + self.far,
            self.near / 15.0 + self.far,
            2.0 * self.near / 189.0 + 2.0 * self.far / 3.0,
            self.near / 675.0 + 17.0 * self.far / 45.0,
        ];
        let mut c = vec![1.0];
        for j in 1..terms {
            let jf = j as f64;
            let sum: f64 = (1..=j).map(|i| p[i - 1] * c[j - i]).sum();
            c.push(-sum / (2.0 * jf * (2.0 * rho + 2.0 * jf - 1.0)));
        }
        c
    }

    /// Value and `d`-derivative of the truncated series.
    fn seed(&self, energy: f64, branch: Branch, terms: usize, d: f64) -> (f64, f64) {
        let rho = self.exponent(branch);
        let c = self.coefficients(energy, rho, terms);
        let mut val = 0.0;
        let mut der = 0.0;
        for (j, cj) in c.iter().enumerate() {
            let e = rho + 2.0 * j as f64;
            val += cj * d.powf(e);
            der += cj * e * d.powf(e - 1.0);
        }
        (val, der)
    }
}

/// One-period propagator of `(K, dK/dx)` from `x = ε` to `x = a + ε`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix {
    pub entries: [[f64; 2]; 2],
    /// The same map on the coefficients of the Frobenius pair at `x = 0`.
    /// Near a singularity `(K, dK/dx)` is badly scaled, so the invariants
    /// are taken from this similar matrix.
    pub coefficients: [[f64; 2]; 2],
    /// Largest relative change of the Wronskian of a Frobenius pair along
    /// its integration.
    pub wronskian_drift: f64,
}

impl TransferMatrix {
    pub fn det(&self) -> f64 {
        let m = &self.coefficients;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn half_trace(&self) -> f64 {
        0.5 * (self.coefficients[0][0] + self.coefficients[1][1])
    }
}

type Mat2 = [[f64; 2]; 2];

fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut r = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    r
}

fn inv(a: &Mat2) -> Mat2 {
    let d = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    [[a[1][1] / d, -a[0][1] / d], [-a[1][0] / d, a[0][0] / d]]
}

/// Frobenius pair of one end integrated to distance `d1`:
/// `[φ₋, φ₋', φ₊, φ₊']` with derivatives in `d`.
struct EndPair {
    state: [f64; 4],
    drift: f64,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Oracle {
    pub config: OracleConfig,
}

impl Oracle {
    pub fn new(config: OracleConfig) -> Self {
        Oracle { config }
    }

    fn eps_theta(&self) -> f64 {
        PI * self.config.eps
    }

    fn check_config(&self) -> Result<()> {
        let c = &self.config;
        if !(c.eps > 0.0 && c.eps <= 0.1) {
            return domain(format!("Frobenius offset eps = {} must lie in (0, a/10]", c.eps));
        }
        if !(1..=5).contains(&c.terms) {
            return domain(format!("Frobenius terms = {} must be 1..=5", c.terms));
        }
        Ok(())
    }

    fn integrate_end(&self, end: End, energy: f64, d1: f64) -> Result<EndPair> {
        let d0 = self.eps_theta();
        let terms = self.config.terms;
        let (m0, m1) = end.seed(energy, Branch::Minus, terms, d0);
        let (p0, p1) = end.seed(energy, Branch::Plus, terms, d0);
        let rhs = |d: f64, y: &[f64; 4]| {
            let (s, c) = d.sin_cos();
            let v = energy + end.near / (s * s) + if end.far != 0.0 { end.far / (c * c) } else { 0.0 };
            [y[1], -v * y[0], y[3], -v * y[2]]
        };
        let w0 = m0 * p1 - m1 * p0;
        let state = integrate(rhs, d0, d1, [m0, m1, p0, p1], 1e-3 * d0, self.config.tolerance)?;
        let w1 = state[0] * state[3] - state[1] * state[2];
        Ok(EndPair { state, drift: ((w1 - w0) / w0).abs() })
    }

    /// Frobenius pair at the left end of the cell, expanded to `terms` and
    /// evaluated at `x = eps` (absolute, not scaled). Normalized so that
    /// `value / eps^{1/2±s} → 1`.
    pub fn frobenius_seed(&self, p: &ScarfParams, lambda: f64, eps: f64, branch: Branch) -> Result<(f64, f64)> {
        if !(eps > 0.0 && eps <= 0.1 * p.a) {
            return domain(format!("Frobenius offset {eps} must lie in (0, a/10]"));
        }
        let eq = AngularEquation::scarf(p, lambda);
        let end = End { near: eq.q_sin, far: eq.q_cos };
        let rho = end.exponent(branch);
        let scale = PI / p.a;
        let (val, der) = end.seed(eq.energy, branch, self.config.terms, scale * eps);
        let norm = scale.powf(-rho);
        Ok((norm * val, norm * scale * der))
    }

    /// Series coefficients of the Frobenius solution (in `θ = πx/a`).
    pub fn frobenius_coefficients(&self, p: &ScarfParams, lambda: f64, branch: Branch) -> Vec<f64> {
        let eq = AngularEquation::scarf(p, lambda);
        let end = End { near: eq.q_sin, far: eq.q_cos };
        end.coefficients(eq.energy, end.exponent(branch), self.config.terms)
    }

    pub fn transfer(&self, eq: &AngularEquation) -> Result<TransferMatrix> {
        self.check_config()?;
        let half = 0.5 * eq.segment_length();
        let segments = eq.segments();

        let mut cache: Vec<(End, EndPair)> = Vec::new();
        let mut pair_for = |end: End| -> Result<[f64; 4]> {
            if let Some((_, p)) = cache.iter().find(|(e, _)| *e == end) {
                return Ok(p.state);
            }
            let p = self.integrate_end(end, eq.energy, half)?;
            let s = p.state;
            cache.push((end, p));
            Ok(s)
        };

        let flip: Mat2 = [[1.0, 0.0], [0.0, -1.0]];
        let mut m: Mat2 = [[1.0, 0.0], [0.0, 1.0]];
        for (left, right) in &segments {
            let l = pair_for(*left)?;
            let r = pair_for(*right)?;
            // θ-derivatives: +d for the left pair, −d for the right pair.
            let phi = [(l[0], l[1]), (l[2], l[3])];
            let chi = [(r[0], -r[1]), (r[2], -r[3])];
            let w = |f: (f64, f64), g: (f64, f64)| f.0 * g.1 - f.1 * g.0;
            let wchi = w(chi[0], chi[1]);
            let mut s = [[0.0; 2]; 2];
            for i in 0..2 {
                s[i][0] = w(phi[i], chi[1]) / wchi;
                s[i][1] = w(chi[0], phi[i]) / wchi;
            }
            let st = [[s[0][0], s[1][0]], [s[0][1], s[1][1]]];
            m = mul(&mul(&flip, &st), &m);
        }
        let drift = cache.iter().map(|(_, p)| p.drift).fold(0.0, f64::max);

        // Coefficient space -> (K, dK/dx) at x = ε.
        let first = segments[0].0;
        let d0 = self.eps_theta();
        let (m0, m1) = first.seed(eq.energy, Branch::Minus, self.config.terms, d0);
        let (p0, p1) = first.seed(eq.energy, Branch::Plus, self.config.terms, d0);
        let scale = PI / eq.a;
        let phi: Mat2 = [[m0, p0], [scale * m1, scale * p1]];
        let entries = mul(&mul(&phi, &m), &inv(&phi));
        Ok(TransferMatrix { entries, coefficients: m, wronskian_drift: drift })
    }

    pub fn integrate_cell(&self, p: &ScarfParams, lambda: f64) -> Result<TransferMatrix> {
        self.transfer(&AngularEquation::scarf(p, lambda))
    }

    /// `Δ(λ) = tr T / 2` for the Scarf lattice.
    pub fn discriminant(&self, p: &ScarfParams, lambda: f64) -> Result<f64> {
        if !(lambda > 0.0) {
            return domain(format!("λ = {lambda} must be positive"));
        }
        Ok(self.transfer(&AngularEquation::scarf(p, lambda))?.half_trace())
    }

    /// Root of `Δ(λ) = cos(ka)` in band `n`'s edge bracket.
    pub fn numerical_dispersion(&self, p: &ScarfParams, n: usize, k: f64) -> Result<f64> {
        let k = check_k(k, p.a)?;
        let (lo, hi) = band_edges(p, n);
        self.solve_bracket(|lam| self.discriminant(p, lam), lo, hi, (k * p.a).cos())
    }

    /// Safeguarded (Brent) solve of `f(λ) = target` on `[lo, hi]`.
    pub fn solve_bracket<F>(&self, f: F, lo: f64, hi: f64, target: f64) -> Result<f64>
    where
        F: Fn(f64) -> Result<f64>,
    {
        let g = |x: f64| f(x).map(|v| v - target);
        let (mut a, mut b) = (lo, hi);
        let (mut fa, mut fb) = (g(a)?, g(b)?);
        if fa == 0.0 {
            return Ok(a);
        }
        if fb == 0.0 {
            return Ok(b);
        }
        if fa.signum() == fb.signum() {
            // Roots sitting on a band edge can land a rounding error outside.
            let (x, fx) = if fa.abs() < fb.abs() { (a, fa) } else { (b, fb) };
            if fx.abs() < 1e-7 {
                return Ok(x);
            }
            return Err(Error::Bracket { lo, hi, target });
        }
        let mut c = a;
        let mut fc = fa;
        let mut d = b - a;
        let mut e = d;
        for _ in 0..200 {
            if fb.signum() == fc.signum() {
                c = a;
                fc = fa;
                d = b - a;
                e = d;
            }
            if fc.abs() < fb.abs() {
                a = b;
                b = c;
                c = a;
                fa = fb;
                fb = fc;
                fc = fa;
            }
            let tol = 2.0 * f64::EPSILON * b.abs() + 1e-14;
            let m = 0.5 * (c - b);
            if m.abs() <= tol || fb == 0.0 {
                return Ok(b);
            }
            if e.abs() >= tol && fa.abs() > fb.abs() {
                let s = fb / fa;
                let (mut p, mut q);
                if a == c {
                    p = 2.0 * m * s;
                    q = 1.0 - s;
                } else {
                    let qa = fa / fc;
                    let r = fb / fc;
                    p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                    q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
                }
                if p > 0.0 {
                    q = -q;
                } else {
                    p = -p;
                }
                if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                    e = d;
                    d = p / q;
                } else {
                    d = m;
                    e = d;
                }
            } else {
                d = m;
                e = d;
            }
            a = b;
            fa = fb;
            b += if d.abs() > tol { d } else { tol * m.signum() };
            fb = g(b)?;
        }
        Ok(b)
    }
}

/// Provenance of a sampled wavefunction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleMeta {
    pub k: f64,
    pub equation: AngularEquation,
}

/// Complex samples on a strictly increasing grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    pub xs: Vec<f64>,
    pub values: Vec<Complex64>,
    pub meta: SampleMeta,
}

impl SampledFunction {
    pub fn new(xs: Vec<f64>, values: Vec<Complex64>, meta: SampleMeta) -> Result<Self> {
        if xs.len() != values.len() {
            return domain("grid and value lengths differ");
        }
        if xs.windows(2).any(|w| !(w[1] > w[0])) {
            return domain("grid must be strictly increasing");
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) || xs.iter().any(|x| !x.is_finite()) {
            return domain("non-finite sample");
        }
        Ok(SampledFunction { xs, values, meta })
    }
}

/// Smallest number of points at which a residual is reported.
pub const MIN_RESIDUAL_POINTS: usize = 16;

/// Central differences at spacings `h, 2h, 3h, 4h` extrapolated to zero
/// spacing (Neville in `h²`), error `O(h⁸)`. Needs 4 samples on either
/// side of `i`.
pub(crate) fn second_derivative(y: &[Complex64], i: usize, h: f64) -> Complex64 {
    richardson(|s| (y[i + s] - 2.0 * y[i] + y[i - s]) / (s as f64 * h).powi(2))
}

pub(crate) fn first_derivative(y: &[Complex64], i: usize, h: f64) -> Complex64 {
    richardson(|s| (y[i + s] - y[i - s]) / (2.0 * s as f64 * h))
}

fn richardson(d: impl Fn(usize) -> Complex64) -> Complex64 {
    let mut t: [Complex64; 4] = std::array::from_fn(|j| d(j + 1));
    for level in 1..4 {
        for j in 0..4 - level {
            let (hj, hk) = (((j + 1) * (j + 1)) as f64, ((j + 1 + level) * (j + 1 + level)) as f64);
            t[j] = (hk * t[j] - hj * t[j + 1]) / (hk - hj);
        }
    }
    t[0]
}

/// Maximum residual of the angular equation on a uniform grid, relative to
/// `max |E K|`, at all points with four neighbours on either side.
pub fn ode_residual(f: &SampledFunction) -> Result<f64> {
    let n = f.xs.len();
    if n < MIN_RESIDUAL_POINTS + 8 {
        return Err(Error::GridTooCoarse { points: n.saturating_sub(8), required: MIN_RESIDUAL_POINTS });
    }
    let h = (f.xs[n - 1] - f.xs[0]) / (n - 1) as f64;
    if f.xs.windows(2).any(|w| ((w[1] - w[0]) - h).abs() > 1e-9 * h) {
        return domain("residual grid must be uniform");
    }
    let eq = &f.meta.equation;
    let y = &f.values;
    let scale_x = (eq.a / PI).powi(2);

    let mut worst: f64 = 0.0;
    let mut reference: f64 = 0.0;
    for i in 4..n - 4 {
        let second = second_derivative(y, i, h);
        let th = PI * f.xs[i] / eq.a;
        let res = scale_x * second + (eq.energy + eq.potential(th)) * y[i];
        worst = worst.max(res.norm());
        reference = reference.max((eq.energy * y[i]).norm());
    }
    if reference == 0.0 {
        return domain("sample vanishes on the grid");
    }
    Ok(worst / reference)
}
