//! The value `|R_{ρ₂ₙ}(0)|` of the Ruelle zeta function at zero.
//!
//! `R_{ρ₂ₙ}(0)^{-1} = η(N + 1/2)`, where `η(s) = Z(s)/Z(1-s)` is fixed by the
//! functional equation of the Selberg zeta function. Its log-modulus is the
//! real part of
//!
//! ```text
//! μ ∫₀^N ξ tan πξ dξ + Σ_{R elliptic} ∫₀^N -π/(m(R) sin θ(R)) · cos((2θ(R)-π)ξ)/cos πξ dξ,
//! ```
//!
//! split here into an identity term and an elliptic term. Three routes are
//! offered: the product formula, the per-interval residue values, and
//! principal-value quadrature of the integrals themselves.
//!
//! Only the real part is computed. The imaginary part of the exponent (a
//! phase of `R(0)`) is not modelled.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::Ratio;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::orbifold::{area, OrbifoldSignature};
use crate::quadrature::{integrate_pieces, pv_over_cos_pi, QuadratureConfig};
use crate::torsion::{check_n, log_torsion_closed};
use crate::trig::{cos_pi, PiFraction};

/// Largest `N` accepted by the quadrature route.
pub const QUADRATURE_MAX_N: u64 = 64;

/// Agreement required between exact closed forms.
pub const CLOSED_FORM_TOL: f64 = 1e-11;

/// Agreement required between quadrature and closed forms for `log|R(0)|`.
pub const QUADRATURE_ROUTE_TOL: f64 = 1e-7;

/// Largest `N` for which [`verify_ruelle_equals_torsion`] also runs quadrature.
pub const VERIFY_QUADRATURE_MAX_N: u64 = 16;

fn check_quadrature_n(n: u64) -> Result<()> {
    check_n(n)?;
    if n > QUADRATURE_MAX_N {
        return Err(Error::QuadratureCapExceeded { n, cap: QUADRATURE_MAX_N });
    }
    Ok(())
}

/// `μ(𝒟)·(-N/π)·log 2`.
pub fn identity_term_closed(sig: &OrbifoldSignature, n: u64) -> Result<f64> {
    check_n(n)?;
    Ok(area(sig) * (-(n as f64) / std::f64::consts::PI) * std::f64::consts::LN_2)
}

/// `PV ∫₀^N ξ tan πξ dξ` through `[-ξ log|cos πξ|/π]₀^N + (1/π) ∫₀^N log|cos πξ| dξ`.
///
/// The logarithmic singularities sit at the half-integers; each half cell
/// `[j/2, (j+1)/2]` is mapped by a cubic substitution at both ends and all
/// cells are refined together.
pub fn identity_integral_quadrature(n: u64, cfg: &QuadratureConfig) -> Result<f64> {
    check_quadrature_n(n)?;
    let nf = n as f64;
    let boundary = -nf / std::f64::consts::PI * cos_pi(nf).abs().ln();
    let cells = 2 * n as usize;
    // v ∈ [j, j+1] parametrises half cell j
    let integrand = |v: f64| {
        let j = (v.floor() as usize).min(cells - 1);
        let t = v - j as f64;
        let (a, b) = (0.5 * j as f64, 0.5 * (j + 1) as f64);
        let half = 0.25;
        let (x, jac) = if t < 0.5 {
            let u = 2.0 * t;
            (a + half * u * u * u, 6.0 * half * u * u)
        } else {
            let u = 2.0 * (1.0 - t);
            (b - half * u * u * u, 6.0 * half * u * u)
        };
        if jac == 0.0 {
            0.0
        } else {
            cos_pi(x).abs().ln() * jac
        }
    };
    let pieces: Vec<_> = (0..cells)
        .flat_map(|j| [(j as f64, j as f64 + 0.5), (j as f64 + 0.5, j as f64 + 1.0)])
        .collect();
    let est = integrate_pieces(integrand, &pieces, cfg)?;
    Ok(boundary + est.value / std::f64::consts::PI)
}

/// `μ(𝒟) · Re ∫₀^N ξ tan πξ dξ` by quadrature. `N ≤ 64`.
pub fn identity_term_quadrature(sig: &OrbifoldSignature, n: u64, cfg: &QuadratureConfig) -> Result<f64> {
    let mu = area(sig);
    let scaled = QuadratureConfig {
        abs_tol: cfg.abs_tol / mu.max(1.0),
        ..*cfg
    };
    Ok(mu * identity_integral_quadrature(n, &scaled)?)
}

/// One elliptic conjugacy class `{R₀^p}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EllipticClass {
    pub power: u32,
    /// `θ(R₀^p) = pπ/m0`.
    pub theta: PiFraction,
    /// Centralizer order `m(R₀^p)`.
    pub centralizer: u32,
}

/// The classes `{R₀}, {R₀²}, ..., {R₀^{m0-1}}` generated by an elliptic
/// element of order `m0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EllipticFamily {
    m0: u32,
}

impl EllipticFamily {
    pub fn new(m0: u32) -> Result<Self> {
        if m0 < 2 {
            return Err(Error::InvalidSignature(format!("elliptic order {m0} < 2")));
        }
        Ok(EllipticFamily { m0 })
    }

    pub fn m0(&self) -> u32 {
        self.m0
    }

    pub fn len(&self) -> usize {
        self.m0 as usize - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn members(&self) -> Vec<EllipticClass> {
        (1..self.m0)
            .map(|p| EllipticClass {
                power: p,
                theta: PiFraction::new(p as i64, self.m0 as i64),
                centralizer: self.m0,
            })
            .collect()
    }

    /// `Σ_p -π/(m0 sin(pπ/m0)) · cos((2pπ/m0 - π)ξ)`, the numerator over `cos πξ`.
    pub fn numerator(&self, xi: f64) -> f64 {
        let m0 = self.m0 as f64;
        (1..self.m0)
            .map(|p| {
                let weight = -std::f64::consts::PI / (m0 * PiFraction::new(p as i64, self.m0 as i64).sin());
                weight * cos_pi((2 * p as i64 - self.m0 as i64) as f64 * xi / m0)
            })
            .sum()
    }
}

/// The family attached to a cone point of order `α`: `θ = π/α`, `m = α`.
pub fn elliptic_family_from_cone(alpha: u32) -> Result<EllipticFamily> {
    EllipticFamily::new(alpha)
}

/// Real part of the family's integral over `[k-1, k]`:
/// `2 log|1 - e^{-(2k-1)πi/m0}| - (2/m0) log 2`.
pub fn elliptic_interval_closed(m0: u32, k: u64) -> f64 {
    assert!(m0 >= 2 && k >= 1, "need m0 ≥ 2 and k ≥ 1");
    // |1 - e^{iφ}| = 2|sin(φ/2)|, with (2k-1)/(2m0) reduced exactly
    let s = PiFraction::new(2 * k as i64 - 1, 2 * m0 as i64).sin().abs();
    2.0 * (2.0 * s).ln() - 2.0 / m0 as f64 * std::f64::consts::LN_2
}

/// Principal value of the family's integral over `[k-1, k]`.
///
/// Only the pole at `k - 1/2` lies inside. Its half-residue contributions
/// are purely imaginary, so the real part is the symmetric principal value.
pub fn elliptic_interval_quadrature(m0: u32, k: u64, cfg: &QuadratureConfig) -> Result<f64> {
    let family = EllipticFamily::new(m0)?;
    if k == 0 {
        return Err(Error::InvalidN { n: 0, reason: "interval index starts at 1".into() });
    }
    let kf = k as f64;
    Ok(pv_over_cos_pi(|x| family.numerator(x), kf - 1.0, kf, cfg)?.value)
}

/// `Σ_j Σ_{k=1}^N elliptic_interval_closed(α_j, k)`.
pub fn elliptic_term_total(sig: &OrbifoldSignature, n: u64) -> Result<f64> {
    check_n(n)?;
    Ok(sig
        .cones()
        .iter()
        .map(|&a| (1..=n).map(|k| elliptic_interval_closed(a, k)).sum::<f64>())
        .fold(0.0, |acc, v| acc + v))
}

/// The elliptic term from the product form
/// `log ∏_k (1 - e^{(2k-1)πi/α})(1 - e^{-(2k-1)πi/α}) - (2N/α) log 2`.
pub fn elliptic_term_product(sig: &OrbifoldSignature, n: u64) -> Result<f64> {
    check_n(n)?;
    let mut total = 0.0;
    for &a in sig.cones() {
        let mut log_prod = 0.0;
        for k in 1..=n {
            let z = PiFraction::new(2 * k as i64 - 1, a as i64).expi();
            let one = Complex64::new(1.0, 0.0);
            log_prod += ((one - z) * (one - z.conj())).norm().ln();
        }
        total += log_prod - 2.0 * n as f64 / a as f64 * std::f64::consts::LN_2;
    }
    Ok(total)
}

/// Elliptic term by quadrature, one principal value per interval and cone.
pub fn elliptic_term_quadrature(sig: &OrbifoldSignature, n: u64, cfg: &QuadratureConfig) -> Result<f64> {
    check_quadrature_n(n)?;
    let mut total = 0.0;
    for &a in sig.cones() {
        for k in 1..=n {
            total += elliptic_interval_quadrature(a, k, cfg)?;
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// The explicit product formula.
    Closed,
    /// Sum of the per-interval residue values.
    Residue,
    /// Principal-value quadrature of the integral expression.
    Quadrature,
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(Route::Closed),
            "residue" => Ok(Route::Residue),
            "quadrature" => Ok(Route::Quadrature),
            other => Err(Error::InvalidConfig(format!("unknown route {other:?}"))),
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Closed => "closed",
            Route::Residue => "residue",
            Route::Quadrature => "quadrature",
        })
    }
}

/// `log|R_{ρ₂ₙ}(0)| = -(identity term + elliptic term)`.
pub fn ruelle_zero_log_abs(
    sig: &OrbifoldSignature,
    n: u64,
    route: Route,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let (identity, elliptic) = match route {
        Route::Closed => (identity_term_closed(sig, n)?, elliptic_term_product(sig, n)?),
        Route::Residue => (identity_term_closed(sig, n)?, elliptic_term_total(sig, n)?),
        Route::Quadrature => (
            identity_term_quadrature(sig, n, cfg)?,
            elliptic_term_quadrature(sig, n, cfg)?,
        ),
    };
    Ok(-(identity + elliptic))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RuelleZeroReport {
    pub signature: OrbifoldSignature,
    pub n: u64,
    pub log_abs_closed: Option<f64>,
    pub log_abs_residue: Option<f64>,
    pub log_abs_quadrature: Option<f64>,
    pub identity_term: f64,
    pub elliptic_term: f64,
    pub log_torsion: f64,
}

impl RuelleZeroReport {
    /// Evaluates the requested routes; the term breakdown is always the
    /// closed-form one.
    pub fn compute(
        sig: &OrbifoldSignature,
        n: u64,
        routes: &[Route],
        cfg: &QuadratureConfig,
    ) -> Result<Self> {
        let eval = |r: Route| -> Result<Option<f64>> {
            if routes.contains(&r) {
                ruelle_zero_log_abs(sig, n, r, cfg).map(Some)
            } else {
                Ok(None)
            }
        };
        Ok(RuelleZeroReport {
            signature: sig.clone(),
            n,
            log_abs_closed: eval(Route::Closed)?,
            log_abs_residue: eval(Route::Residue)?,
            log_abs_quadrature: eval(Route::Quadrature)?,
            identity_term: identity_term_closed(sig, n)?,
            elliptic_term: elliptic_term_total(sig, n)?,
            log_torsion: log_torsion_closed(sig, n)?,
        })
    }

    /// Largest pairwise disagreement among the computed routes.
    pub fn route_spread(&self) -> f64 {
        let vals: Vec<f64> = [self.log_abs_closed, self.log_abs_residue, self.log_abs_quadrature]
            .into_iter()
            .flatten()
            .collect();
        let max = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        if vals.is_empty() {
            0.0
        } else {
            max - min
        }
    }

    pub const CSV_HEADER: [&'static str; 9] = [
        "genus",
        "cones",
        "N",
        "log_abs_closed",
        "log_abs_residue",
        "log_abs_quadrature",
        "identity_term",
        "elliptic_term",
        "log_torsion",
    ];

    pub fn csv_record(&self) -> [String; 9] {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        let cones: Vec<_> = self.signature.cones().iter().map(u32::to_string).collect();
        [
            self.signature.genus().to_string(),
            cones.join(";"),
            self.n.to_string(),
            opt(self.log_abs_closed),
            opt(self.log_abs_residue),
            opt(self.log_abs_quadrature),
            self.identity_term.to_string(),
            self.elliptic_term.to_string(),
            self.log_torsion.to_string(),
        ]
    }
}

impl Serialize for RuelleZeroReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("RuelleZeroReport", 9)?;
        st.serialize_field("genus", &self.signature.genus())?;
        st.serialize_field("cones", self.signature.cones())?;
        st.serialize_field("N", &self.n)?;
        st.serialize_field("log_abs_closed", &self.log_abs_closed)?;
        st.serialize_field("log_abs_residue", &self.log_abs_residue)?;
        st.serialize_field("log_abs_quadrature", &self.log_abs_quadrature)?;
        st.serialize_field("identity_term", &self.identity_term)?;
        st.serialize_field("elliptic_term", &self.elliptic_term)?;
        st.serialize_field("log_torsion", &self.log_torsion)?;
        st.end()
    }
}

/// Checks `|R_{ρ₂ₙ}(0)| = Tor(M, ρ₂ₙ)` with the closed and residue routes
/// (to `1e-11`) and, for `N ≤ 16`, the quadrature route (to `1e-7`).
pub fn verify_ruelle_equals_torsion(
    sig: &OrbifoldSignature,
    n: u64,
    cfg: &QuadratureConfig,
) -> Result<RuelleZeroReport> {
    let mut routes = vec![Route::Closed, Route::Residue];
    if n <= VERIFY_QUADRATURE_MAX_N {
        routes.push(Route::Quadrature);
    }
    let report = RuelleZeroReport::compute(sig, n, &routes, cfg)?;
    let tor = report.log_torsion;
    let closed = report.log_abs_closed.unwrap_or(f64::NAN);
    let residue = report.log_abs_residue.unwrap_or(f64::NAN);
    let violation = |what: &str, lhs: f64, rhs: f64| Error::IdentityViolation {
        what: format!("{what} for {sig}, N = {n}"),
        lhs,
        rhs,
    };
    if !((closed - tor).abs() <= CLOSED_FORM_TOL) {
        return Err(violation("log|R(0)| (closed) vs log Tor", closed, tor));
    }
    if !((residue - closed).abs() <= CLOSED_FORM_TOL) {
        return Err(violation("log|R(0)| residue vs closed", residue, closed));
    }
    if let Some(q) = report.log_abs_quadrature {
        if !((q - closed).abs() <= QUADRATURE_ROUTE_TOL) {
            return Err(violation("log|R(0)| quadrature vs closed", q, closed));
        }
    }
    Ok(report)
}

/// A quotient of shifted Selberg zeta functions `∏ Z(s + a) / ∏ Z(s + b)`,
/// kept reduced.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ZetaQuotient {
    // shift ↦ multiplicity (positive: numerator)
    shifts: BTreeMap<Ratio<i64>, i64>,
}

impl ZetaQuotient {
    /// `R(s + a) = Z(s + a)/Z(s + a + 1)`.
    pub fn ruelle(shift: Ratio<i64>) -> Self {
        let mut q = ZetaQuotient::default();
        q.add(shift, 1);
        q.add(shift + 1, -1);
        q
    }

    fn add(&mut self, shift: Ratio<i64>, mult: i64) {
        let e = self.shifts.entry(shift).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.shifts.remove(&shift);
        }
    }

    pub fn mul(&self, other: &ZetaQuotient) -> Self {
        let mut out = self.clone();
        for (&s, &m) in &other.shifts {
            out.add(s, m);
        }
        out
    }

    /// Numerator shifts, with multiplicity, ascending.
    pub fn numerator(&self) -> Vec<Ratio<i64>> {
        self.side(|m| m > 0)
    }

    pub fn denominator(&self) -> Vec<Ratio<i64>> {
        self.side(|m| m < 0)
    }

    fn side(&self, pick: impl Fn(i64) -> bool) -> Vec<Ratio<i64>> {
        self.shifts
            .iter()
            .filter(|(_, &m)| pick(m))
            .flat_map(|(&s, &m)| std::iter::repeat_n(s, m.unsigned_abs() as usize))
            .collect()
    }
}

fn fmt_shift(s: Ratio<i64>) -> String {
    if s == Ratio::from_integer(0) {
        "Z(s)".into()
    } else if s > Ratio::from_integer(0) {
        format!("Z(s+{s})")
    } else {
        format!("Z(s-{})", -s)
    }
}

impl fmt::Display for ZetaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: Vec<Ratio<i64>>| {
            if v.is_empty() {
                "1".to_string()
            } else {
                v.into_iter().map(fmt_shift).collect::<Vec<_>>().join("·")
            }
        };
        write!(f, "{}/{}", join(self.numerator()), join(self.denominator()))
    }
}

/// `R_{ρ₂ₙ}(s) = ∏_{k=1}^N R(s - (2k-1)/2) R(s + (2k-1)/2)`, telescoped.
/// The result is `Z(s - N + 1/2)/Z(s + N + 1/2)`.
pub fn selberg_quotient(n: u64) -> Result<ZetaQuotient> {
    check_n(n)?;
    let mut q = ZetaQuotient::default();
    for k in 1..=n as i64 {
        let half = Ratio::new(2 * k - 1, 2);
        q = q.mul(&ZetaQuotient::ruelle(-half)).mul(&ZetaQuotient::ruelle(half));
    }
    Ok(q)
}

/// The `N`-independent building block `R(s) = Z(s)/Z(s+1)`.
pub fn classical_ruelle() -> ZetaQuotient {
    ZetaQuotient::ruelle(Ratio::from_integer(0))
}
