//! Ball localization of bottom eigenvalues: Gromov-style covers, squared
//! partitions of unity, and expanding-domain probes.

mod cover;
mod domain;
#[allow(clippy::module_inception)]
mod localize;
mod probe;

pub use cover::{gromov_cover, CoverSystem};
pub use domain::DiscreteDomain;
pub use localize::{localize_eigenvalue, Localized};
pub use probe::{minimal_sequence_probe, ProbeDomain, ProbeResult, ProbeRow};
