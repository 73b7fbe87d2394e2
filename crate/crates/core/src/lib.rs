//! Numerical spectral geometry workbench.
//!
//! Three computational pillars:
//!
//! * [`flat`] / [`product`] — Hodge-Laplacian form spectra of compact flat
//!   manifolds (Bieberbach data) by dual-lattice enumeration and holonomy
//!   averaging, and the bottom of the form spectrum of flat products
//!   `K × ℝ^m`.
//! * [`weyl`] — a resolvent-smoothed spectral membership test for sparse
//!   self-adjoint nonnegative operators: instead of demanding a small
//!   residual `‖(H−λ)ψ‖`, it certifies a distance bound from the smallness
//!   of the pairings `((H+α)^{-γ}ψ, (H−λ)ψ)`, γ = 1, 2.
//! * [`warped`] / [`localize`] — warped-product model manifolds reduced to
//!   one-dimensional channel operators, essential-spectrum classification
//!   from fiber Betti data, and ball-localization utilities for bottom
//!   eigenvalues.
//!
//! [`io`] holds the line-oriented file formats and CSV report emitters used
//! by the command-line front end.

pub mod error;
pub mod flat;
pub mod io;
pub mod localize;
pub mod product;
pub mod warped;
pub mod weyl;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
