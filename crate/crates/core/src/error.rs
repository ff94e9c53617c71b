use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Signature fails validation (cone order < 2, or χ^orb ≥ 0).
    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("cannot parse signature {input:?}: {reason}")]
    SignatureParse { input: String, reason: String },

    /// N (or a representation dimension) outside the range an operation accepts.
    #[error("invalid N = {n}: {reason}")]
    InvalidN { n: u64, reason: String },

    /// `det(1 - A)` vanishes because 1 is an eigenvalue of `A`.
    #[error("degenerate determinant: eigenvalue {eigenvalue} is 1 (local system not acyclic)")]
    DegenerateDeterminant { eigenvalue: String },

    /// `det(1 - A)` came out with a non-negligible imaginary part.
    #[error("determinant is not real (phase {phase})")]
    NonRealDeterminant { phase: f64 },

    #[error("matrix is not in SL2 (det = {det})")]
    NotUnimodular { det: String },

    #[error("quadrature did not converge (achieved error {achieved_error:e})")]
    QuadratureNonConvergence { achieved_error: f64 },

    #[error("N = {n} exceeds the quadrature cap {cap}")]
    QuadratureCapExceeded { n: u64, cap: u64 },

    /// Two routes to a quantity that must agree exactly did not.
    #[error("identity violated: {what}: {lhs} vs {rhs}")]
    IdentityViolation { what: String, lhs: f64, rhs: f64 },

    #[error("truncation tail bound {bound:e} exceeds tolerance {tol:e}")]
    TailBoundViolated { bound: f64, tol: f64 },

    #[error("series tail bound {bound:e} exceeds tolerance {tol:e} at K = {terms}")]
    SeriesTailTooLarge { bound: f64, tol: f64, terms: usize },

    #[error("pole collision: {0}")]
    PoleCollision(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// Input to an even-function transform has an odd component.
    #[error("sampled function is not even (max asymmetry {asymmetry:e})")]
    NotEven { asymmetry: f64 },
}
