//! Numerical integration and series summation used by the zeta and
//! transform routines.
//!
//! Everything is built on one globally adaptive Gauss–Kronrod (7, 15) rule.
//! Singular integrals are handled by reshaping the integrand before it
//! reaches the rule: power substitutions for weak endpoint singularities,
//! residue subtraction for simple poles.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::trig::{cos_pi, sin_pi};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Half-width of the symmetric window around each pole.
    pub pv_window: f64,
    pub max_depth: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            pv_window: 1e-3,
            max_depth: 40,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidConfig(what.to_string()));
        if !(self.abs_tol > 0.0) || !self.abs_tol.is_finite() {
            return bad("abs_tol must be positive");
        }
        if !(self.rel_tol > 0.0) || !self.rel_tol.is_finite() {
            return bad("rel_tol must be positive");
        }
        // poles are spaced 1 apart
        if !(self.pv_window > 0.0 && self.pv_window < 0.25) {
            return bad("pv_window must lie in (0, 1/4)");
        }
        if self.max_depth == 0 || self.max_depth > 60 {
            return bad("max_depth must lie in 1..=60");
        }
        Ok(())
    }

    pub fn with_abs_tol(mut self, tol: f64) -> Self {
        self.abs_tol = tol;
        self
    }

    pub fn with_rel_tol(mut self, tol: f64) -> Self {
        self.rel_tol = tol;
        self
    }

    pub fn with_pv_window(mut self, w: f64) -> Self {
        self.pv_window = w;
        self
    }
}

/// Scalars the integrators can accumulate.
pub trait QValue:
    Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn magnitude(self) -> f64;
}

impl QValue for f64 {
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl QValue for Complex64 {
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub error: f64,
    pub evaluations: usize,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];

// Gauss weights at XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<T: QValue, F: Fn(f64) -> T>(f: &F, a: f64, b: f64) -> (T, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for i in 0..7 {
        let dx = h * XGK[i];
        let pair = f(c - dx) + f(c + dx);
        kronrod = kronrod + pair * WGK[i];
        if i % 2 == 1 {
            gauss = gauss + pair * WG[i / 2];
        }
    }
    let kronrod = kronrod * h;
    let gauss = gauss * h;
    (kronrod, (kronrod - gauss).magnitude())
}

struct Cell<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
    depth: u32,
}

impl<T> PartialEq for Cell<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T> Eq for Cell<T> {}
impl<T> PartialOrd for Cell<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Cell<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

const MAX_CELLS: usize = 200_000;

/// Adaptive integral over consecutive panels `[p_0, p_1], [p_1, p_2], ...`.
pub fn integrate_panels<T: QValue, F: Fn(f64) -> T>(
    f: F,
    points: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Estimate<T>> {
    if points.len() < 2 || points.windows(2).any(|w| !(w[1] >= w[0])) {
        return Err(Error::InvalidGrid(
            "panel boundaries must be nondecreasing with at least two points".into(),
        ));
    }
    let pieces: Vec<_> = points.windows(2).map(|w| (w[0], w[1])).collect();
    integrate_pieces(f, &pieces, cfg)
}

/// Adaptive integral over a union of intervals.
///
/// Cells are refined globally, worst first, until the summed error estimate
/// meets `max(abs_tol, rel_tol·|I|)`.
pub fn integrate_pieces<T: QValue, F: Fn(f64) -> T>(
    f: F,
    pieces: &[(f64, f64)],
    cfg: &QuadratureConfig,
) -> Result<Estimate<T>> {
    cfg.validate()?;
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for &(a, b) in pieces {
        if !(a.is_finite() && b.is_finite() && b >= a) {
            return Err(Error::InvalidGrid(format!("bad interval [{a}, {b}]")));
        }
        if b > a {
            let (value, error) = gk15(&f, a, b);
            evaluations += 15;
            heap.push(Cell { a, b, value, error, depth: 0 });
        }
    }
    let mut total = heap.iter().fold(T::default(), |v, c| v + c.value);
    let mut err: f64 = heap.iter().map(|c| c.error).sum();
    loop {
        if err <= cfg.abs_tol.max(cfg.rel_tol * total.magnitude()) {
            // resum to shed drift from the running updates
            total = heap.iter().fold(T::default(), |v, c| v + c.value);
            err = heap.iter().map(|c| c.error).sum();
            if err <= cfg.abs_tol.max(cfg.rel_tol * total.magnitude()) {
                return Ok(Estimate { value: total, error: err, evaluations });
            }
        }
        let worst = match heap.pop() {
            Some(c) => c,
            None => return Ok(Estimate { value: total, error: err, evaluations }),
        };
        if worst.depth >= cfg.max_depth || heap.len() >= MAX_CELLS || !err.is_finite() {
            return Err(Error::QuadratureNonConvergence { achieved_error: err });
        }
        total = total - worst.value;
        err -= worst.error;
        let mid = 0.5 * (worst.a + worst.b);
        for (a, b) in [(worst.a, mid), (mid, worst.b)] {
            let (value, error) = gk15(&f, a, b);
            evaluations += 15;
            total = total + value;
            err += error;
            heap.push(Cell { a, b, value, error, depth: worst.depth + 1 });
        }
    }
}

pub fn integrate<T: QValue, F: Fn(f64) -> T>(
    f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate<T>> {
    integrate_panels(f, &[a, b], cfg)
}

/// `∫_a^b f` for `f` with integrable (log or inverse-power weaker than
/// `|x-e|^{-2/3}`) singularities at both endpoints.
///
/// Each half is mapped through `x = e ± (h/2)·v³`, which multiplies the
/// integrand by `v²` and flattens the singularity.
pub fn integrate_endpoint_singular<T: QValue, F: Fn(f64) -> T>(
    f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate<T>> {
    let half = 0.5 * (b - a);
    let g = |v: f64| {
        let jac = 3.0 * half * v * v;
        if jac == 0.0 {
            return T::default();
        }
        let dx = half * v * v * v;
        (f(a + dx) + f(b - dx)) * jac
    };
    integrate(g, 0.0, 1.0, cfg)
}

/// Principal value of `∫_a^b n(ξ)/cos(πξ) dξ`.
///
/// Around every pole `c = j + 1/2` in `(a, b)` a window of half-width
/// `pv_window` is cut out. Inside it the simple pole `r/(ξ - c)`,
/// `r = n(c)/(-π sin πc)`, is subtracted; it integrates to zero over the
/// symmetric window, so only the smooth remainder is integrated. Each window
/// is split at `c` so no node lands on the pole.
pub fn pv_over_cos_pi<T: QValue, F: Fn(f64) -> T>(
    numerator: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate<T>> {
    cfg.validate()?;
    let w = cfg.pv_window;
    let mut poles = Vec::new();
    let mut c = (a - 0.5).floor() + 0.5;
    while c < b {
        if c > a {
            if c - w <= a || c + w >= b {
                return Err(Error::PoleCollision(format!(
                    "pole at {c} lies within pv_window of an endpoint of [{a}, {b}]"
                )));
            }
            poles.push(c);
        }
        c += 1.0;
    }
    if (a - 0.5).rem_euclid(1.0) == 0.0 || (b - 0.5).rem_euclid(1.0) == 0.0 {
        return Err(Error::PoleCollision(format!(
            "endpoint of [{a}, {b}] sits on a pole"
        )));
    }

    let direct = |x: f64| numerator(x) * (1.0 / cos_pi(x));
    let mut pieces = Vec::with_capacity(poles.len() + 1);
    let mut left = a;
    for &c in &poles {
        pieces.push((left, c - w));
        left = c + w;
    }
    pieces.push((left, b));
    let mut est = integrate_pieces(direct, &pieces, cfg)?;

    for &c in &poles {
        let r = numerator(c) * (1.0 / (-std::f64::consts::PI * sin_pi(c)));
        let smooth = |x: f64| direct(x) - r * (1.0 / (x - c));
        let inner = integrate_panels(smooth, &[c - w, c, c + w], cfg)?;
        est.value = est.value + inner.value;
        est.error += inner.error;
        est.evaluations += inner.evaluations;
    }
    Ok(est)
}

/// Composite Filon–Simpson rule for `∫_0^X f(x) cos(ωx) dx` from samples
/// `f(0), f(Δ), ..., f(X)` (odd count).
pub fn filon_cos<T: QValue>(samples: &[T], dx: f64, omega: f64) -> Result<T> {
    let n = samples.len();
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidGrid(format!(
            "Filon–Simpson needs an odd number (≥ 3) of samples, got {n}"
        )));
    }
    let theta = omega * dx;
    let (alpha, beta, gamma) = filon_weights(theta);
    let x_end = dx * (n - 1) as f64;
    let mut even = T::default();
    let mut odd = T::default();
    for (i, &f) in samples.iter().enumerate() {
        let c = (omega * dx * i as f64).cos();
        if i % 2 == 0 {
            let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
            even = even + f * (w * c);
        } else {
            odd = odd + f * c;
        }
    }
    let ends = samples[n - 1] * (omega * x_end).sin();
    Ok((ends * alpha + even * beta + odd * gamma) * dx)
}

fn filon_weights(theta: f64) -> (f64, f64, f64) {
    if theta.abs() < 1e-2 {
        let t2 = theta * theta;
        let alpha = theta * t2 * (2.0 / 45.0 - t2 * (2.0 / 315.0 - t2 * 2.0 / 4725.0));
        let beta = 2.0 / 3.0 + t2 * (2.0 / 15.0 - t2 * (4.0 / 105.0 - t2 * 2.0 / 567.0));
        let gamma = 4.0 / 3.0 - t2 * (2.0 / 15.0 - t2 * (1.0 / 210.0 - t2 / 11340.0));
        (alpha, beta, gamma)
    } else {
        let (s, c) = theta.sin_cos();
        let t3 = theta * theta * theta;
        let alpha = (theta * theta + theta * s * c - 2.0 * s * s) / t3;
        let beta = 2.0 * (theta * (1.0 + c * c) - 2.0 * s * c) / t3;
        let gamma = 4.0 * (s - theta * c) / t3;
        (alpha, beta, gamma)
    }
}

/// A series value together with a certified bound on its remaining error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub tail_bound: f64,
}

const BERNOULLI: [f64; 4] = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0];
const EM_ORDER: usize = 4;

/// `Σ_{k=0}^∞ (1/(b+k) - 1/(c+k))`: `K` explicit terms plus an
/// Euler–Maclaurin tail of order 8.
///
/// The bound uses `|R| ≤ 2ζ(2q)/(2π)^{2q} ∫_K^∞ |f^{(2q)}|`.
pub fn pair_series(b: Complex64, c: Complex64, k_terms: usize) -> Result<SeriesValue> {
    let kf = k_terms as f64;
    if b.re + kf <= 1.0 || c.re + kf <= 1.0 {
        return Err(Error::InvalidConfig(format!(
            "K = {k_terms} too small for the tail expansion at b = {b}, c = {c}"
        )));
    }
    let mut partial = Complex64::new(0.0, 0.0);
    // sum smallest terms first
    for k in (0..k_terms).rev() {
        let k = k as f64;
        let zb = b + k;
        let zc = c + k;
        if zb.norm() == 0.0 || zc.norm() == 0.0 {
            return Err(Error::PoleCollision(format!("term k = {k} of the pair series is infinite")));
        }
        partial += (zc - zb) / (zb * zc);
    }
    let xb = b + kf;
    let xc = c + kf;
    let mut tail = (xc / xb).ln() + 0.5 * (xb.inv() - xc.inv());
    // f^{(n)}(K) = (-1)^n n! [(b+K)^{-n-1} - (c+K)^{-n-1}]
    let mut fact = 1.0; // (n)! for n = 2j-1
    let mut fact2j = 1.0; // (2j)!
    for (j, &b2j) in BERNOULLI.iter().enumerate() {
        let n = 2 * j + 1;
        if j > 0 {
            fact *= (n - 1) as f64 * n as f64;
        }
        fact2j *= (2 * j + 1) as f64 * (2 * j + 2) as f64;
        let p = -(n as i32) - 1;
        let deriv = -fact * (xb.powi(p) - xc.powi(p));
        tail -= b2j / fact2j * deriv;
    }
    let q = EM_ORDER as i32;
    let zeta8 = std::f64::consts::PI.powi(8) / 9450.0;
    let fact_2q: f64 = (1..=2 * EM_ORDER).map(|i| i as f64).product();
    let bound = 2.0 * zeta8 / (2.0 * std::f64::consts::PI).powi(2 * q) * fact_2q
        / (2 * EM_ORDER) as f64
        * ((b.re + kf).powi(-2 * q) + (c.re + kf).powi(-2 * q));
    Ok(SeriesValue {
        value: partial + tail,
        tail_bound: bound + partial.norm() * (k_terms as f64) * f64::EPSILON,
    })
}

/// `Σ_{k=0}^∞ f(k)` for an analytic `f` with pairwise-decaying tail, given
/// only by plain truncation; used as an independent cross-check in tests.
pub fn truncated_sum<F: Fn(usize) -> Complex64>(f: F, k_terms: usize) -> Complex64 {
    (0..k_terms).rev().map(f).sum()
}
