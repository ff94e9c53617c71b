//! Analytic identities behind the functional equation of the Selberg zeta
//! function, each evaluated twice: as an integral and as a series or closed
//! form.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::orbifold::{area, OrbifoldSignature};
use crate::quadrature::{
    integrate, integrate_endpoint_singular, integrate_pieces, pair_series, pv_over_cos_pi, QuadratureConfig,
};
use crate::ruelle::elliptic_family_from_cone;
use crate::trig::{cos_pi, sin_pi};

/// Two evaluations of the same quantity with their error budgets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityCheck {
    pub lhs: Complex64,
    pub rhs: Complex64,
    /// Error estimate of `lhs` (quadrature).
    pub lhs_error: f64,
    /// Certified bound on the truncation error of `rhs`.
    pub rhs_tail: f64,
}

impl IdentityCheck {
    pub fn discrepancy(&self) -> f64 {
        (self.lhs - self.rhs).norm()
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.discrepancy() <= tol
    }
}

fn check_tail(bound: f64, tol: f64, terms: usize) -> Result<()> {
    if bound > tol {
        return Err(Error::SeriesTailTooLarge { bound, tol, terms });
    }
    Ok(())
}

/// Radius past which `tanh(πr)` equals 1 to double precision.
const TANH_RADIUS: f64 = 40.0;

/// `(1/4π) ∫ r (1/(r²+β²) - 1/(r²+(s-1/2)²)) tanh(πr) dr` against
/// `(1/2π) Σ_{k≥0} (1/(β+1/2+k) - 1/(s+k))` (unit area).
///
/// The integral is taken over `[0, 40]` with the exact `tanh = 1` tail
/// `-(1/2) log((R²+β²)/(R²+a²))` added on.
pub fn identity_term_partial_fraction(
    s: Complex64,
    beta: Complex64,
    k_terms: usize,
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<IdentityCheck> {
    if !(s.re > 0.5 && beta.re > 0.5) {
        return Err(Error::InvalidConfig(format!("need Re s > 1/2 and Re β > 1/2, got s = {s}, β = {beta}")));
    }
    let a = s - 0.5;
    let (a2, b2) = (a * a, beta * beta);
    let f = |r: f64| {
        let r2 = r * r;
        r * (1.0 / (r2 + b2) - 1.0 / (r2 + a2)) * (std::f64::consts::PI * r).tanh()
    };
    let big_r = TANH_RADIUS;
    let panels: Vec<_> = (0..40).map(|i| (i as f64, i as f64 + 1.0)).collect();
    let est = integrate_pieces(f, &panels, cfg)?;
    let tail = -0.5 * ((big_r * big_r + b2) / (big_r * big_r + a2)).ln();
    let two_pi = 2.0 * std::f64::consts::PI;
    let lhs = (est.value + tail) / two_pi;

    let series = pair_series(beta + 0.5, s, k_terms)?;
    check_tail(series.tail_bound / two_pi, tol, k_terms)?;
    Ok(IdentityCheck {
        lhs,
        rhs: series.value / two_pi,
        lhs_error: est.error / two_pi,
        rhs_tail: series.tail_bound / two_pi,
    })
}

/// Distance below which a parameter counts as sitting on a pole.
const POLE_GUARD: f64 = 1e-6;

fn near_half_odd(z: Complex64) -> Option<f64> {
    let k = (z.re - 0.5).round();
    if k < 0.0 {
        return None;
    }
    let c = k + 0.5;
    ((z - c).norm() < POLE_GUARD).then_some(c)
}

/// `e^{-2θr}/(1 + e^{-2πr})` for complex `r`, without overflow for real `r`
/// of either sign.
fn weight(theta: f64, r: Complex64) -> Complex64 {
    let pi = std::f64::consts::PI;
    if r.re >= 0.0 {
        (-2.0 * theta * r).exp() / (1.0 + (-2.0 * pi * r).exp())
    } else {
        ((2.0 * pi - 2.0 * theta) * r).exp() / ((2.0 * pi * r).exp() + 1.0)
    }
}

/// `∫ e^{-2θr}/(1+e^{-2πr}) · (1/(r²+β²) - 1/(r²+a²)) dr`, `a = s - 1/2`,
/// against the sum of residues in the upper half plane:
///
/// ```text
/// i Σ_{k≥0} e^{-iθ(2k+1)} [1/(β² - (k+1/2)²) - 1/(a² - (k+1/2)²)]
///   + π [w(iβ)/β - w(ia)/a],     w(r) = e^{-2θr}/(1+e^{-2πr}).
/// ```
pub fn elliptic_residue_expansion(
    theta: f64,
    s: Complex64,
    beta: Complex64,
    k_terms: usize,
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<IdentityCheck> {
    let pi = std::f64::consts::PI;
    if !(theta > 0.0 && theta < pi) {
        return Err(Error::InvalidConfig(format!("θ = {theta} outside (0, π)")));
    }
    let a = s - 0.5;
    if !(a.re > 0.0 && beta.re > 0.0) {
        return Err(Error::InvalidConfig(format!("need Re(s - 1/2) > 0 and Re β > 0, got s = {s}, β = {beta}")));
    }
    for (name, z) in [("s - 1/2", a), ("β", beta)] {
        if let Some(c) = near_half_odd(z) {
            return Err(Error::PoleCollision(format!("{name} = {z} sits on the pole i·{c} of the weight")));
        }
    }
    let (a2, b2) = (a * a, beta * beta);
    let h = |r2: Complex64| 1.0 / (r2 + b2) - 1.0 / (r2 + a2);

    // the weight decays like e^{-2 min(θ, π-θ) |r|}
    let rate = 2.0 * theta.min(pi - theta);
    let radius = (40.0 / rate).max(10.0);
    let f = |r: f64| weight(theta, r.into()) * h((r * r).into());
    let n_panels = radius.ceil() as usize;
    let panels: Vec<_> = (0..2 * n_panels)
        .map(|i| {
            let x = -(n_panels as f64) + i as f64;
            (x, x + 1.0)
        })
        .collect();
    let est = integrate_pieces(f, &panels, cfg)?;

    let i = Complex64::new(0.0, 1.0);
    let mut series = Complex64::new(0.0, 0.0);
    for k in (0..k_terms).rev() {
        let c = k as f64 + 0.5;
        let hk = 1.0 / (b2 - c * c) - 1.0 / (a2 - c * c);
        series += Complex64::from_polar(1.0, -theta * (2 * k + 1) as f64) * hk;
    }
    // Σ_{k≥K} |H_k| ≤ (16/9)|a²-β²| / (3 (K-1/2)³) once K - 1/2 ≥ 2 max(|a|, |β|)
    let start = k_terms as f64 - 0.5;
    let tail = if start >= 2.0 * a.norm().max(beta.norm()) && start > 0.0 {
        16.0 / 9.0 * (a2 - b2).norm() / (3.0 * start.powi(3))
    } else {
        f64::INFINITY
    };
    check_tail(tail, tol, k_terms)?;
    let residues = pi * (weight(theta, i * beta) / beta - weight(theta, i * a) / a);
    Ok(IdentityCheck {
        lhs: est.value,
        rhs: i * series + residues,
        lhs_error: est.error,
        rhs_tail: tail,
    })
}

/// `Σ_{k≥0} (1/(1-s+k) - 1/(s+k))` against `π tan π(s - 1/2)`.
pub fn cot_series_identity(s: Complex64, k_terms: usize, tol: f64) -> Result<IdentityCheck> {
    if (s - s.re.round()).norm() < POLE_GUARD {
        return Err(Error::PoleCollision(format!("s = {s} is an integer")));
    }
    let series = pair_series(1.0 - s, s, k_terms)?;
    check_tail(series.tail_bound, tol, k_terms)?;
    let pi = std::f64::consts::PI;
    Ok(IdentityCheck {
        lhs: series.value,
        rhs: pi * (pi * (s - 0.5)).tan(),
        lhs_error: series.tail_bound,
        rhs_tail: 0.0,
    })
}

/// `μ ξ sin πξ + Σ_j Σ_p -π/(α_j sin(pπ/α_j)) cos((2pπ/α_j - π)ξ)`, the
/// numerator of the right-hand side over `cos πξ`, `ξ = s - 1/2`.
pub fn functional_eq_numerator(sig: &OrbifoldSignature, xi: f64) -> f64 {
    let mu = area(sig);
    let elliptic: f64 = sig
        .cones()
        .iter()
        .map(|&a| elliptic_family_from_cone(a).expect("valid cone").numerator(xi))
        .sum();
    mu * xi * sin_pi(xi) + elliptic
}

/// `d/ds log(Z(s)/Z(1-s)) = μ(s-1/2) tan π(s-1/2)
///   + Σ_R -π/(m(R) sin θ(R)) · cos((2θ(R)-π)(s-1/2))/cos π(s-1/2)`.
pub fn functional_eq_rhs(sig: &OrbifoldSignature, s: Complex64) -> Result<Complex64> {
    if (s - s.re.round()).norm() < 1e-12 {
        return Err(Error::PoleCollision(format!("s = {s}: cos π(s-1/2) vanishes")));
    }
    let pi = std::f64::consts::PI;
    let xi = s - 0.5;
    let mu = area(sig);
    let mut total = mu * xi * (pi * xi).tan();
    let cos = (pi * xi).cos();
    for &a in sig.cones() {
        let m = a as f64;
        for p in 1..a {
            let theta = pi * p as f64 / m;
            total += -pi / (m * theta.sin()) * ((2.0 * theta - pi) * xi).cos() / cos;
        }
    }
    Ok(total)
}

/// Principal value of `∫_{1/2}^{1/2+x}` of [`functional_eq_rhs`] along the
/// real axis: `log|η(1/2 + x)|` when `x` is a positive integer.
pub fn functional_eq_antiderivative(sig: &OrbifoldSignature, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if x == 0.0 {
        return Ok(0.0);
    }
    if !(x > 0.0) {
        return Err(Error::InvalidConfig(format!("upper limit {x} must be positive")));
    }
    Ok(pv_over_cos_pi(|xi| functional_eq_numerator(sig, xi), 0.0, x, cfg)?.value)
}

/// `PV ∫₀^x v tan πv dv` through integration by parts,
/// `-x log|cos πx|/π + (1/π) ∫₀^x log|cos πv| dv`, independent of the
/// residue-subtraction quadrature.
pub fn tan_moment_by_parts(x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(x >= 0.0) || (x - 0.5).rem_euclid(1.0) == 0.0 {
        return Err(Error::PoleCollision(format!("upper limit {x} must be nonnegative and off the half-integers")));
    }
    let pi = std::f64::consts::PI;
    let log_cos = |v: f64| cos_pi(v).abs().ln();
    let mut cuts = vec![0.0];
    let mut c = 0.5;
    while c < x {
        cuts.push(c);
        c += 1.0;
    }
    cuts.push(x);
    let mut total = 0.0;
    for w in cuts.windows(2) {
        total += integrate_endpoint_singular(log_cos, w[0], w[1], cfg)?.value;
    }
    Ok(-x * log_cos(x) / pi + total / pi)
}

/// Plain integral of the real right-hand side over `[a, b]`, which must
/// avoid the poles at the integers.
pub fn functional_eq_rhs_integral(sig: &OrbifoldSignature, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if a.ceil() <= b {
        return Err(Error::PoleCollision(format!("[{a}, {b}] contains an integer")));
    }
    let f = |s: f64| functional_eq_numerator(sig, s - 0.5) / cos_pi(s - 0.5);
    Ok(integrate(f, a, b, cfg)?.value)
}
