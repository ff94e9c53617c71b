//! Higher-dimensional Reidemeister torsion `Tor(M, ρ₂ₙ)` of the unit tangent
//! bundle `M = Γ\PSL₂(ℝ)`, with `ρ₂ₙ = σ₂ₙ ∘ ρ`.
//!
//! Conventions follow the closed form
//! `Tor = 2^{-2N(2-2g-m)} ∏_j ∏_{k=1}^N (2 sin(π(2k-1)/(2α_j)))^{-2}`,
//! which is the inverse of Müller's normalisation.

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::logvalue::LogValue;
use crate::orbifold::{euler_char_orb, OrbifoldSignature};
use crate::sym_rep::{det_one_minus, rep_on_generators};
use crate::trig::PiFraction;

/// Largest `N` accepted by the closed forms.
pub const MAX_N: u64 = 1_000_000;

pub(crate) fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidN {
            n,
            reason: "N must be at least 1".into(),
        });
    }
    if n > MAX_N {
        return Err(Error::InvalidN {
            n,
            reason: format!("N is capped at {MAX_N}"),
        });
    }
    Ok(())
}

/// `Σ_{k=1}^N log (2 sin(π(2k-1)/(2α)))²`.
pub(crate) fn cone_log_sine_sum(alpha: u32, n: u64) -> f64 {
    let alpha = alpha as i64;
    let term = |k: i64| {
        let s = PiFraction::new(2 * k - 1, 2 * alpha).sin().abs();
        2.0 * (2.0 * s).ln()
    };
    // the summand has period α in k
    let period = n as i64 / alpha;
    let rest = n as i64 % alpha;
    let mut partial = 0.0;
    let mut full = 0.0;
    for k in 1..=alpha {
        let t = term(k);
        if k <= rest {
            partial += t;
        }
        full += t;
    }
    period as f64 * full + partial
}

/// `log Tor(M, ρ₂ₙ)` from the sine product.
pub fn log_torsion_closed(sig: &OrbifoldSignature, n: u64) -> Result<f64> {
    check_n(n)?;
    let base = -2.0 * n as f64 * sig.fiber_exponent() as f64 * std::f64::consts::LN_2;
    let cones: f64 = sig.cones().iter().map(|&a| cone_log_sine_sum(a, n)).sum();
    Ok(base - cones)
}

/// `Tor(M, ρ₂ₙ)` as a sign/log-magnitude value.
pub fn torsion(sig: &OrbifoldSignature, n: u64) -> Result<LogValue> {
    Ok(LogValue::from_ln(log_torsion_closed(sig, n)?))
}

/// `log Tor` from `det(1 - ρ₂ₙ(h))^{-(2-2g-m)} ∏_j det(1 - ρ₂ₙ(ℓ_j))^{-1}`.
pub fn log_torsion_fibers(sig: &OrbifoldSignature, n: u64) -> Result<f64> {
    check_n(n)?;
    let images = rep_on_generators(sig);
    let dim = n as usize;
    let h = det_one_minus(&images.h.spectrum_2n(dim))?;
    let mut tor = h.powi(-sig.fiber_exponent());
    for ell in &images.ell {
        tor = tor / det_one_minus(&ell.spectrum_2n(dim))?;
    }
    Ok(tor.ln_abs())
}

/// `log Tor / (2N)`, with the fiber part divided out exactly so that it
/// equals [`asymptotic_limit`] bit for bit when there are no cones.
pub fn leading_coefficient(sig: &OrbifoldSignature, n: u64) -> Result<f64> {
    check_n(n)?;
    let base = -(sig.fiber_exponent() as f64) * std::f64::consts::LN_2;
    let cones: f64 = sig.cones().iter().map(|&a| cone_log_sine_sum(a, n)).sum();
    Ok(base - cones / (2.0 * n as f64))
}

/// `-χ^orb log 2`, the limit of [`leading_coefficient`] as `N → ∞`.
pub fn asymptotic_limit(sig: &OrbifoldSignature) -> f64 {
    let chi = euler_char_orb(sig);
    -(*chi.numer() as f64 / *chi.denom() as f64) * std::f64::consts::LN_2
}

/// Per-fiber defect `-(1/2N) Σ_k log(2 sin(π(2k-1)/(2α)))²`, tending to `-(log 2)/α`.
pub fn elliptic_defect(alpha: u32, n: u64) -> Result<f64> {
    if alpha < 2 {
        return Err(Error::InvalidSignature(format!("cone order {alpha} < 2")));
    }
    check_n(n)?;
    Ok(-cone_log_sine_sum(alpha, n) / (2.0 * n as f64))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TorsionReport {
    pub signature: OrbifoldSignature,
    pub n: u64,
    pub log_torsion: f64,
    pub leading_coeff: f64,
    pub limit: f64,
}

impl TorsionReport {
    pub fn compute(sig: &OrbifoldSignature, n: u64) -> Result<Self> {
        let log_torsion = log_torsion_closed(sig, n)?;
        Ok(TorsionReport {
            signature: sig.clone(),
            n,
            log_torsion,
            leading_coeff: log_torsion / (2.0 * n as f64),
            limit: asymptotic_limit(sig),
        })
    }

    pub const CSV_HEADER: [&'static str; 6] =
        ["genus", "cones", "N", "log_torsion", "leading_coeff", "limit"];

    /// One CSV row; cones are joined with `;` since the field separator is `,`.
    pub fn csv_record(&self) -> [String; 6] {
        let cones: Vec<_> = self.signature.cones().iter().map(u32::to_string).collect();
        [
            self.signature.genus().to_string(),
            cones.join(";"),
            self.n.to_string(),
            self.log_torsion.to_string(),
            self.leading_coeff.to_string(),
            self.limit.to_string(),
        ]
    }
}

impl Serialize for TorsionReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("TorsionReport", 6)?;
        st.serialize_field("genus", &self.signature.genus())?;
        st.serialize_field("cones", self.signature.cones())?;
        st.serialize_field("N", &self.n)?;
        st.serialize_field("log_torsion", &self.log_torsion)?;
        st.serialize_field("leading_coeff", &self.leading_coeff)?;
        st.serialize_field("limit", &self.limit)?;
        st.end()
    }
}
