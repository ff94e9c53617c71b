//! Reidemeister torsion and the Ruelle zeta function at zero for unit
//! tangent bundles `M = Γ\PSL₂(ℝ)` of closed hyperbolic 2-orbifolds, with the
//! representations `ρ₂ₙ = σ₂ₙ ∘ ρ` built from symmetric powers of the
//! geometric lift `ρ : π₁(M) → SL₂(ℝ)`.
//!
//! ```
//! use zetat_core::{torsion, ruelle, OrbifoldSignature, QuadratureConfig};
//!
//! let sig: OrbifoldSignature = "g=0;cones=2,3,7".parse().unwrap();
//! let tor = torsion::log_torsion_closed(&sig, 1).unwrap();
//! let r0 = ruelle::ruelle_zero_log_abs(&sig, 1, ruelle::Route::Closed, &QuadratureConfig::default()).unwrap();
//! assert!((tor - r0).abs() < 1e-12);
//! ```

// Quadrature nodes keep their published digits; negated comparisons reject NaN.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod logvalue;
pub mod orbifold;
pub mod quadrature;
pub mod ruelle;
pub mod selberg;
pub mod sym_rep;
pub mod torsion;
pub mod trig;

pub use error::{Error, Result};
pub use logvalue::{LogValue, Sign};
pub use orbifold::{area, euler_char_orb, OrbifoldSignature};
pub use quadrature::QuadratureConfig;
pub use ruelle::{Route, RuelleZeroReport};
pub use torsion::TorsionReport;
