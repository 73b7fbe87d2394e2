//! Resolvent-smoothed spectral certification for sparse self-adjoint
//! nonnegative operators, with plane-wave and annulus test-vector builders.

mod annulus;
mod criterion;
mod grid;
mod operator;
mod solve;

pub use annulus::{
    annulus_certify, growth_certify, AnnulusCertificate, AnnulusConfig, GrowthCertificate,
    GrowthConfig,
};
pub use criterion::{
    certify, certify_batch, certify_distance, criterion_constants, evaluate_criterion,
    CertificateVerdict, CriterionConstants, CriterionEvaluation, DistanceBound, WeylCertificate,
    WeylConfig,
};
pub use grid::{
    componentwise_operator, plane_wave_test_function, smoothstep_cutoff, wedge_test_form,
    GridDomain, GridKForm, HalfLineGrid,
};
pub use operator::{deterministic_unit_vector, SparseOperator};
pub use solve::{
    cg_solve_shifted, cg_solve_shifted_complex, smallest_eigenpair, smallest_eigenvalue, CgOutcome,
};
