//! Spectra of the Hodge Laplacian on l-forms over compact flat manifolds
//! ℝ^n/Γ, from Bieberbach group data.

pub mod catalog;
pub mod intmat;
mod lattice;
mod manifold;
mod spectrum;

pub use lattice::Lattice;
pub use manifold::{FlatManifold, FlatManifoldOptions, HolonomyElement};
pub use spectrum::{
    enumerate_dual_vectors, form_spectrum, form_spectrum_with_budget, holonomy_orbits,
    invariant_multiplicity, lambda_o, lambda_o_with_budget, DualOrbit, SpectrumTable,
    DEFAULT_VECTOR_BUDGET,
};
