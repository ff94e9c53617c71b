//! Numerical checks of the Selberg transform and of the identities that
//! produce the functional equation of the Selberg zeta function.

pub mod identities;
pub mod transform;

pub use identities::{
    cot_series_identity, elliptic_residue_expansion, functional_eq_antiderivative, functional_eq_numerator,
    functional_eq_rhs, functional_eq_rhs_integral, identity_term_partial_fraction, tan_moment_by_parts,
    IdentityCheck,
};
pub use transform::{
    g_from_q, phi_recovery, q_from_phi, selberg_forward, selberg_inverse, FnProfile, Grid, Profile,
    SampledFunction, TestPair,
};
