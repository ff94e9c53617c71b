//! The Selberg transform pipeline `Φ → Q → g → h` and its inverses, on
//! uniformly sampled functions.
//!
//! * `Q(v) = ∫_v^∞ Φ(t)/√(t-v) dt`
//! * `g(u) = Q(e^u + e^{-u} - 2)`
//! * `h(r) = ∫ g(u) e^{iru} du`, inverted by `g(u) = (1/2π) ∫ h(r) e^{-iur} dr`
//! * `Φ(t) = -(1/π) ∫_t^∞ Q'(v)/√(v-t) dv`
//!
//! The recovery formula is the inverse Abel transform with `√(v-t)` in the
//! denominator; the round trip `Φ → Q → Φ` is what pins that choice down.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{filon_cos, integrate_pieces, QValue, QuadratureConfig};

/// Uniform grid `start + i·step`, `i = 0..len`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    start: f64,
    step: f64,
    len: usize,
}

impl Grid {
    pub fn uniform(start: f64, step: f64, len: usize) -> Result<Self> {
        if !(step > 0.0 && step.is_finite() && start.is_finite()) || len == 0 {
            return Err(Error::InvalidGrid(format!(
                "need a positive step and at least one point (start {start}, step {step}, len {len})"
            )));
        }
        Ok(Grid { start, step, len })
    }

    /// `len` points covering `[a, b]`.
    pub fn linspace(a: f64, b: f64, len: usize) -> Result<Self> {
        if len < 2 || !(b > a) {
            return Err(Error::InvalidGrid(format!("cannot space {len} points over [{a}, {b}]")));
        }
        Grid::uniform(a, (b - a) / (len - 1) as f64, len)
    }

    /// `2m + 1` points on `[-x_max, x_max]`; `m` must be even so each half
    /// supports composite Simpson panels.
    pub fn symmetric(x_max: f64, m: usize) -> Result<Self> {
        if m == 0 || !m.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!("half-grid interval count {m} must be even and positive")));
        }
        let step = x_max / m as f64;
        Grid::uniform(-x_max, step, 2 * m + 1)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn end(&self) -> f64 {
        self.point(self.len - 1)
    }

    pub fn point(&self, i: usize) -> f64 {
        self.start + self.step * i as f64
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len).map(|i| self.point(i))
    }

    /// Symmetric about 0 with an even number of intervals on each side.
    pub fn is_symmetric(&self) -> bool {
        let m = (self.len - 1) / 2;
        self.len % 2 == 1 && m.is_multiple_of(2) && m > 0 && (self.start + self.step * m as f64).abs() <= 1e-12 * self.step
    }
}

/// Samples of a function on a [`Grid`], with an asserted bound on the
/// absolute integral of the function beyond the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction<T> {
    pub grid: Grid,
    pub values: Vec<T>,
    /// Bound on `∫` of `|f|` outside the grid; `+∞` until asserted.
    pub tail_bound: f64,
}

impl<T: QValue> SampledFunction<T> {
    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> T) -> Self {
        SampledFunction {
            grid,
            values: grid.points().map(f).collect(),
            tail_bound: f64::INFINITY,
        }
    }

    pub fn new(grid: Grid, values: Vec<T>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidGrid(format!(
                "{} values for a grid of {} points",
                values.len(),
                grid.len()
            )));
        }
        Ok(SampledFunction { grid, values, tail_bound: f64::INFINITY })
    }

    pub fn with_tail_bound(mut self, bound: f64) -> Self {
        self.tail_bound = bound;
        self
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.magnitude()).fold(0.0, f64::max)
    }

    /// `max_i |f(x_i) - f(-x_i)|` on a symmetric grid.
    pub fn asymmetry(&self) -> f64 {
        let n = self.values.len();
        (0..n / 2)
            .map(|i| (self.values[i] - self.values[n - 1 - i]).magnitude())
            .fold(0.0, f64::max)
    }

    /// Samples on `x ≥ 0` of the even part, for a symmetric grid.
    fn even_half(&self) -> Result<Vec<T>> {
        if !self.grid.is_symmetric() {
            return Err(Error::InvalidGrid("transform input needs a symmetric grid".into()));
        }
        let asym = self.asymmetry();
        if asym > 1e-12 * self.max_abs().max(f64::MIN_POSITIVE) {
            return Err(Error::NotEven { asymmetry: asym });
        }
        let n = self.values.len();
        let m = n / 2;
        Ok((0..=m).map(|i| (self.values[m + i] + self.values[m - i]) * 0.5).collect())
    }

    /// Four-point Lagrange interpolation; `None` outside the grid.
    pub fn interpolate(&self, x: f64) -> Option<T> {
        let g = &self.grid;
        let pos = (x - g.start) / g.step;
        if pos < -1e-9 || pos > (g.len - 1) as f64 + 1e-9 {
            return None;
        }
        if g.len < 4 {
            let i = (pos.round() as usize).min(g.len - 1);
            return Some(self.values[i]);
        }
        let i = (pos.floor() as isize - 1).clamp(0, g.len as isize - 4) as usize;
        let t = pos - i as f64;
        let mut acc = T::default();
        for j in 0..4 {
            let mut w = 1.0;
            for l in 0..4 {
                if l != j {
                    w *= (t - l as f64) / (j as f64 - l as f64);
                }
            }
            acc = acc + self.values[i + j] * w;
        }
        Some(acc)
    }
}

/// `h(r) = ∫ g(u) e^{iru} du` for even `g`, evaluated on `r_grid` by
/// Filon–Simpson on the half line (`h(r) = 2∫₀^X g(u) cos(ru) du`).
///
/// The output is even by construction and carries an unknown tail bound.
pub fn selberg_forward<T: QValue>(g: &SampledFunction<T>, r_grid: &Grid, tol: f64) -> Result<SampledFunction<T>> {
    if g.tail_bound > tol {
        return Err(Error::TailBoundViolated { bound: g.tail_bound, tol });
    }
    let half = g.even_half()?;
    let du = g.grid.step();
    let values = r_grid
        .points()
        .map(|r| Ok(filon_cos(&half, du, r.abs())? * 2.0))
        .collect::<Result<Vec<_>>>()?;
    SampledFunction::new(*r_grid, values)
}

/// `g(u) = (1/2π) ∫ h(r) e^{-iur} dr = (1/π) ∫₀^R h(r) cos(ur) dr` for even `h`.
pub fn selberg_inverse<T: QValue>(h: &SampledFunction<T>, u_grid: &Grid, tol: f64) -> Result<SampledFunction<T>> {
    let bound = h.tail_bound / (2.0 * std::f64::consts::PI);
    if bound > tol {
        return Err(Error::TailBoundViolated { bound, tol });
    }
    let half = h.even_half()?;
    let dr = h.grid.step();
    let values = u_grid
        .points()
        .map(|u| Ok(filon_cos(&half, dr, u.abs())? * (1.0 / std::f64::consts::PI)))
        .collect::<Result<Vec<_>>>()?;
    SampledFunction::new(*u_grid, values)
}

/// A real function on `[0, ∞)` taken as zero beyond `support_end`.
pub trait Profile {
    fn eval(&self, t: f64) -> f64;
    fn support_end(&self) -> f64;
    /// Points where the function or its derivatives jump.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
}

/// A closure with declared support and breakpoints.
pub struct FnProfile<F> {
    f: F,
    support_end: f64,
    breakpoints: Vec<f64>,
}

impl<F: Fn(f64) -> f64> FnProfile<F> {
    pub fn new(f: F, support_end: f64) -> Self {
        FnProfile { f, support_end, breakpoints: Vec::new() }
    }

    pub fn with_breakpoints(mut self, points: Vec<f64>) -> Self {
        self.breakpoints = points;
        self
    }
}

impl<F: Fn(f64) -> f64> Profile for FnProfile<F> {
    fn eval(&self, t: f64) -> f64 {
        if t > self.support_end {
            0.0
        } else {
            (self.f)(t)
        }
    }

    fn support_end(&self) -> f64 {
        self.support_end
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.breakpoints.clone()
    }
}

impl Profile for SampledFunction<f64> {
    fn eval(&self, t: f64) -> f64 {
        self.interpolate(t).unwrap_or(0.0)
    }

    fn support_end(&self) -> f64 {
        self.grid.end()
    }
}

/// `2 ∫₀^{√(T-v)} f(v + w²) dw` split at the images of the breakpoints.
fn abel_integral(f: impl Fn(f64) -> f64, v: f64, end: f64, breaks: &[f64], cfg: &QuadratureConfig) -> Result<f64> {
    if v >= end {
        return Ok(0.0);
    }
    let mut cuts: Vec<f64> = breaks
        .iter()
        .filter(|&&b| b > v && b < end)
        .map(|&b| (b - v).sqrt())
        .collect();
    cuts.push(0.0);
    cuts.push((end - v).sqrt());
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let pieces: Vec<_> = cuts.windows(2).map(|w| (w[0], w[1])).collect();
    Ok(2.0 * integrate_pieces(|w| f(v + w * w), &pieces, cfg)?.value)
}

/// `Q(v) = ∫_v^∞ Φ(t)/√(t-v) dt` on `v_grid`, through `t = v + w²`.
pub fn q_from_phi(phi: &impl Profile, v_grid: &Grid, cfg: &QuadratureConfig) -> Result<SampledFunction<f64>> {
    let end = phi.support_end();
    let breaks = phi.breakpoints();
    let values = v_grid
        .points()
        .map(|v| abel_integral(|t| phi.eval(t), v, end, &breaks, cfg))
        .collect::<Result<Vec<_>>>()?;
    SampledFunction::new(*v_grid, values)
}

/// `g(u) = Q(4 sinh²(u/2))`, interpolating `Q`. Every `u` must map inside
/// `Q`'s grid.
pub fn g_from_q(q: &SampledFunction<f64>, u_grid: &Grid) -> Result<SampledFunction<f64>> {
    let values = u_grid
        .points()
        .map(|u| {
            let v = 4.0 * (0.5 * u).sinh().powi(2);
            q.interpolate(v).ok_or_else(|| {
                Error::InvalidGrid(format!("u = {u} maps to v = {v} outside the Q grid"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    SampledFunction::new(*u_grid, values)
}

/// Second-order finite differences: central inside, one-sided at the ends.
/// Error `O(Δ²)`.
pub fn derivative(f: &SampledFunction<f64>) -> Result<SampledFunction<f64>> {
    let n = f.values.len();
    if n < 3 {
        return Err(Error::InvalidGrid("need at least three samples to differentiate".into()));
    }
    let h = f.grid.step();
    let y = &f.values;
    let mut d = Vec::with_capacity(n);
    d.push((-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h));
    for i in 1..n - 1 {
        d.push((y[i + 1] - y[i - 1]) / (2.0 * h));
    }
    d.push((3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) / (2.0 * h));
    SampledFunction::new(f.grid, d)
}

/// `Φ(t) = -(1/π) ∫_t^∞ Q'(v)/√(v-t) dv` on `t_grid`, with `Q'` from
/// [`derivative`] and interpolated between nodes. `Q` is taken as zero past
/// its grid.
pub fn phi_recovery(q: &SampledFunction<f64>, t_grid: &Grid, cfg: &QuadratureConfig) -> Result<SampledFunction<f64>> {
    let dq = derivative(q)?;
    let end = q.grid.end();
    let values = t_grid
        .points()
        .map(|t| Ok(-abel_integral(|v| dq.eval(v), t, end, &[], cfg)? / std::f64::consts::PI))
        .collect::<Result<Vec<_>>>()?;
    SampledFunction::new(*t_grid, values)
}

/// The test pair `g(u) = e^{-α|u|}/(2α) - e^{-β|u|}/(2β)`,
/// `h(r) = 1/(r²+α²) - 1/(r²+β²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestPair {
    alpha: Complex64,
    beta: Complex64,
}

impl TestPair {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        if !(alpha.re > 0.5 && beta.re > alpha.re) {
            return Err(Error::InvalidConfig(format!(
                "test pair needs 1/2 < Re α < Re β, got α = {alpha}, β = {beta}"
            )));
        }
        Ok(TestPair { alpha, beta })
    }

    pub fn real(alpha: f64, beta: f64) -> Result<Self> {
        TestPair::new(alpha.into(), beta.into())
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn g(&self, u: f64) -> Complex64 {
        let u = u.abs();
        (-self.alpha * u).exp() / (2.0 * self.alpha) - (-self.beta * u).exp() / (2.0 * self.beta)
    }

    pub fn h(&self, r: f64) -> Complex64 {
        let r2 = r * r;
        1.0 / (r2 + self.alpha * self.alpha) - 1.0 / (r2 + self.beta * self.beta)
    }

    /// `∫_{|u|>X} |g|`.
    pub fn g_tail(&self, x: f64) -> f64 {
        let a = self.alpha;
        let b = self.beta;
        (-a.re * x).exp() / (a.norm() * a.re) + (-b.re * x).exp() / (b.norm() * b.re)
    }

    /// `∫_{|r|>R} |h|`, valid for `R ≥ 2 max(|α|, |β|)`.
    pub fn h_tail(&self, r: f64) -> f64 {
        let m = self.alpha.norm().max(self.beta.norm());
        if r < 2.0 * m {
            return f64::INFINITY;
        }
        let num = (self.beta * self.beta - self.alpha * self.alpha).norm();
        2.0 * num * (16.0 / 9.0) / (3.0 * r * r * r)
    }

    pub fn sample_g(&self, x_max: f64, m: usize) -> Result<SampledFunction<Complex64>> {
        let grid = Grid::symmetric(x_max, m)?;
        Ok(SampledFunction::from_fn(grid, |u| self.g(u)).with_tail_bound(self.g_tail(x_max)))
    }

    pub fn sample_h(&self, r_max: f64, m: usize) -> Result<SampledFunction<Complex64>> {
        let grid = Grid::symmetric(r_max, m)?;
        Ok(SampledFunction::from_fn(grid, |r| self.h(r)).with_tail_bound(self.h_tail(r_max)))
    }
}
