//! Special-function kernels: Gauss ₂F₁ on `[0, 1)`, Jacobi polynomials with
//! complex argument, generalized Laguerre polynomials with real upper index,
//! and a branch-labelled inverse cosine.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Result};

/// Parameters of a real Gauss hypergeometric function `₂F₁(a, b; c; z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp2F1Params {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub z: f64,
}

impl Hyp2F1Params {
    pub fn new(a: f64, b: f64, c: f64, z: f64) -> Self {
        Hyp2F1Params { a, b, c, z }
    }
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// `sin(πx)` with argument reduction, exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let r = x - n;
    let s = (PI * r).sin();
    if (n as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// Gamma function (Lanczos, g = 7) with the reflection formula for `x < 1/2`.
/// Poles return `±inf`.
pub fn gamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return f64::INFINITY;
    }
    if x < 0.5 {
        return PI / (sin_pi(x) * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, p) in LANCZOS.iter().enumerate().skip(1) {
        acc += p / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
}

/// Reciprocal gamma function; entire, exactly zero at the poles of Γ.
pub fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x < 0.5 {
        return sin_pi(x) * gamma(1.0 - x) / PI;
    }
    1.0 / gamma(x)
}

fn series(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let mut sum = 1.0;
    let mut term = 1.0;
    let mut small = 0;
    for k in 0..10_000 {
        let k = k as f64;
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        if term.abs() <= 1e-17 * sum.abs() {
            small += 1;
            if small == 2 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    domain(format!("2F1 series failed to converge (a={a}, b={b}, c={c}, z={z})"))
}

/// Coefficients `(A₁, A₂)` of the two-term `z → 1 − z` connection formula
///
/// ```text
/// ₂F₁(a,b;c;z) = A₁ ₂F₁(a,b;a+b−c+1;1−z) + A₂ (1−z)^{c−a−b} ₂F₁(c−a,c−b;c−a−b+1;1−z)
/// ```
///
/// Uses reciprocal gammas so that truncating cases give exact zeros.
pub fn connection_coefficients(a: f64, b: f64, c: f64) -> Result<(f64, f64)> {
    let s = c - a - b;
    if (s - s.round()).abs() < 1e-9 {
        return domain(format!(
            "c - a - b = {s} is an integer; the two-term connection formula degenerates"
        ));
    }
    if is_nonpositive_integer(c) {
        return domain(format!("c = {c} is zero or a negative integer"));
    }
    let gc = gamma(c);
    let a1 = gc * gamma(s) * rgamma(c - a) * rgamma(c - b);
    let a2 = gc * gamma(-s) * rgamma(a) * rgamma(b);
    Ok((a1, a2))
}

/// Gauss hypergeometric function on `z ∈ [0, 1)`.
///
/// Direct series for `z ≤ 1/2`, two-term connection formula for `z > 1/2`.
/// Terminating series (`a` or `b` a non-positive integer) are summed as
/// polynomials for every `z`.
pub fn hyp2f1(p: Hyp2F1Params) -> Result<f64> {
    hyp2f1_complement(p.a, p.b, p.c, p.z, 1.0 - p.z)
}

/// As [`hyp2f1`], with `1 − z` supplied by the caller. Near `z = 1` the
/// complement is usually available without cancellation (e.g. `cos²θ`
/// alongside `z = sin²θ`).
pub fn hyp2f1_complement(a: f64, b: f64, c: f64, z: f64, zc: f64) -> Result<f64> {
    // z may round to 1 while the complement is still resolvable.
    if !(0.0..=1.0).contains(&z) || !(zc > 0.0) {
        return domain(format!("2F1 argument z = {z} outside [0, 1)"));
    }
    if is_nonpositive_integer(c) {
        return domain(format!("c = {c} is zero or a negative integer"));
    }
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) || z <= 0.5 {
        return series(a, b, c, z);
    }
    let s = c - a - b;
    let (a1, a2) = connection_coefficients(a, b, c)?;
    let mut value = 0.0;
    if a1 != 0.0 {
        value += a1 * series(a, b, 1.0 - s, zc)?;
    }
    if a2 != 0.0 {
        value += a2 * zc.powf(s) * series(c - a, c - b, s + 1.0, zc)?;
    }
    Ok(value)
}

fn binom(x: f64, k: usize) -> f64 {
    let mut r = 1.0;
    for i in 0..k {
        r *= (x - i as f64) / (i as f64 + 1.0);
    }
    r
}

fn jacobi_explicit(n: usize, alpha: f64, beta: f64, z: Complex64) -> Complex64 {
    let zm = (z - 1.0) * 0.5;
    let zp = (z + 1.0) * 0.5;
    let nf = n as f64;
    (0..=n)
        .map(|j| binom(nf + alpha, n - j) * binom(nf + beta, j) * zm.powu(j as u32) * zp.powu((n - j) as u32))
        .sum()
}

/// Jacobi polynomial `P_n^{(α,β)}(z)` by the three-term recurrence.
///
/// Falls back to the explicit binomial sum when a recurrence denominator
/// comes close to zero (possible for negative `α + β`); the recurrence loses
/// roughly the square of that distance in relative accuracy.
pub fn jacobi_poly(n: usize, alpha: f64, beta: f64, z: Complex64) -> Complex64 {
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let ab = alpha + beta;
    let p1 = 0.5 * (alpha - beta) + 0.5 * (ab + 2.0) * z;
    if n == 1 {
        return p1;
    }
    let mut prev = Complex64::new(1.0, 0.0);
    let mut cur = p1;
    for j in 2..=n {
        let j = j as f64;
        let a1 = 2.0 * j * (j + ab) * (2.0 * j + ab - 2.0);
        if (j + ab).abs().min((2.0 * j + ab - 2.0).abs()) < 0.05 {
            return jacobi_explicit(n, alpha, beta, z);
        }
        let a2 = (2.0 * j + ab - 1.0) * (alpha * alpha - beta * beta);
        let a3 = (2.0 * j + ab - 2.0) * (2.0 * j + ab - 1.0) * (2.0 * j + ab);
        let a4 = 2.0 * (j + alpha - 1.0) * (j + beta - 1.0) * (2.0 * j + ab);
        let next = ((a2 + a3 * z) * cur - a4 * prev) / a1;
        prev = cur;
        cur = next;
    }
    cur
}

/// Generalized Laguerre polynomial `L_l^{(m)}(z)` for real `m > −1`.
pub fn laguerre(l: usize, m: f64, z: f64) -> Result<f64> {
    if !(m > -1.0) {
        return domain(format!("Laguerre index m = {m} must exceed -1"));
    }
    if l == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + m - z;
    for k in 1..l {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + m - z) * cur - (k + m) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `nπ + arccos(y)` with the principal `arccos ∈ [0, π]`.
pub fn arccos_branch(y: f64, n: usize) -> Result<f64> {
    if !(y.abs() <= 1.0) {
        return domain(format!("arccos argument {y} outside [-1, 1]"));
    }
    Ok(n as f64 * PI + y.acos())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn gamma_known_values() {
        assert!(rel(gamma(0.5), PI.sqrt()) < 1e-14);
        assert!(rel(gamma(5.0), 24.0) < 1e-14);
        assert!(rel(gamma(-0.5), -2.0 * PI.sqrt()) < 1e-14);
        assert_eq!(rgamma(-3.0), 0.0);
        assert!(rel(rgamma(-2.5) * gamma(-2.5), 1.0) < 1e-14);
    }

    #[test]
    fn hyp2f1_at_origin_is_one() {
        let v = hyp2f1(Hyp2F1Params::new(0.55, -0.15, 1.3, 0.0)).unwrap();
        assert_eq!(v, 1.0);
    }

    #[test]
    fn hyp2f1_truncates_for_a_minus_one() {
        for &z in &[0.1, 0.4, 0.7, 0.95] {
            let (b, c) = (0.37, 1.8);
            let v = hyp2f1(Hyp2F1Params::new(-1.0, b, c, z)).unwrap();
            assert!((v - (1.0 - b * z / c)).abs() < 1e-15);
        }
    }

    #[test]
    fn hyp2f1_domain_errors() {
        assert!(hyp2f1(Hyp2F1Params::new(0.2, 0.3, 1.5, 1.0)).is_err());
        assert!(hyp2f1(Hyp2F1Params::new(0.2, 0.3, 1.5, -0.1)).is_err());
        // c - a - b = 1 exactly
        assert!(hyp2f1(Hyp2F1Params::new(0.2, 0.3, 1.5, 0.8)).is_err());
        assert!(hyp2f1(Hyp2F1Params::new(0.2, 0.3, -2.0, 0.3)).is_err());
    }

    #[test]
    fn hyp2f1_closed_form_near_one() {
        // 2F1(1/2, 1/2; 3/2; z) = asin(sqrt z)/sqrt z, c - a - b = 1/2
        for &z in &[0.55, 0.8, 0.97, 0.999_999] {
            let v = hyp2f1(Hyp2F1Params::new(0.5, 0.5, 1.5, z)).unwrap();
            let exact = z.sqrt().asin() / z.sqrt();
            assert!(rel(v, exact) < 1e-12, "z={z}: {v} vs {exact}");
        }
    }

    #[test]
    fn jacobi_low_orders() {
        let z = Complex64::new(0.3, -0.8);
        assert_eq!(jacobi_poly(0, 1.7, -0.4, z), Complex64::new(1.0, 0.0));
        let (a, b) = (1.7, -0.4);
        let p1 = jacobi_poly(1, a, b, z);
        let exact = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * z;
        assert!((p1 - exact).norm() < 1e-15);
    }

    #[test]
    fn jacobi_legendre_special_case() {
        // P_3^{(0,0)} = (5x³ − 3x)/2
        let x = Complex64::new(0.4, 0.0);
        let v = jacobi_poly(3, 0.0, 0.0, x);
        assert!((v.re - 0.5 * (5.0 * 0.064 - 1.2)).abs() < 1e-15);
    }

    #[test]
    fn laguerre_low_orders_and_domain() {
        assert_eq!(laguerre(0, 0.3, 2.0).unwrap(), 1.0);
        assert!((laguerre(1, 0.3, 2.0).unwrap() - (1.3 - 2.0)).abs() < 1e-15);
        let (m, z) = (0.27, 1.5);
        let exact = (m + 1.0) * (m + 2.0) / 2.0 - (m + 2.0) * z + z * z / 2.0;
        assert!((laguerre(2, m, z).unwrap() - exact).abs() < 1e-14);
        assert!(laguerre(2, -1.0, 1.0).is_err());
    }

    #[test]
    fn arccos_branch_values() {
        assert_eq!(arccos_branch(1.0, 0).unwrap(), 0.0);
        assert!((arccos_branch(0.0, 2).unwrap() - 2.5 * PI).abs() < 1e-15);
        let v = arccos_branch((0.3 * PI).sin(), 0).unwrap();
        assert!((v - 0.2 * PI).abs() < 1e-15);
        assert!(arccos_branch(1.0 + 1e-12, 0).is_err());
    }
}
