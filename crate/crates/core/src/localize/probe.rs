//! Bottom-eigenvalue probes along sequences of expanding domains — the
//! finite surrogate for following a minimal sequence out to infinity.

use rayon::prelude::*;

use crate::error::Error;
use crate::weyl::{smallest_eigenvalue, SparseOperator};
use crate::Result;

/// One domain of the sequence: an operator window labeled by its ball
/// radius and center coordinate.
#[derive(Debug)]
pub struct ProbeDomain {
    pub radius: f64,
    pub center: f64,
    pub operator: SparseOperator,
}

#[derive(Debug, Clone)]
pub struct ProbeRow {
    pub radius: f64,
    pub center: f64,
    pub bottom: f64,
}

#[derive(Debug, Clone)]
pub struct ProbeResult {
    pub rows: Vec<ProbeRow>,
    /// The last bottom eigenvalue — the limit estimate of the sequence.
    pub limit_estimate: f64,
    /// For a nested family (fixed center), whether the bottoms were
    /// nonincreasing as domain monotonicity demands. `None` when the
    /// centers move (translated windows), where monotonicity is not
    /// guaranteed.
    pub monotone: Option<bool>,
}

/// Computes the bottom Dirichlet eigenvalue of every domain in the
/// sequence. Radii must be nondecreasing (shrinking domains are rejected:
/// the sequence must expand). For a fixed center the rows also get a
/// monotonicity diagnostic.
pub fn minimal_sequence_probe(domains: &[ProbeDomain]) -> Result<ProbeResult> {
    if domains.is_empty() {
        return Err(Error::invalid("empty probe sequence"));
    }
    for w in domains.windows(2) {
        if w[1].radius < w[0].radius {
            return Err(Error::invalid(
                "probe radii must be nondecreasing (domains must expand)",
            ));
        }
    }
    let bottoms: Vec<f64> = domains
        .par_iter()
        .map(|d| smallest_eigenvalue(&d.operator, 1e-9, 400))
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<ProbeRow> = domains
        .iter()
        .zip(&bottoms)
        .map(|(d, &b)| ProbeRow { radius: d.radius, center: d.center, bottom: b })
        .collect();
    let limit_estimate = *bottoms.last().unwrap();
    let same_center = domains
        .windows(2)
        .all(|w| (w[0].center - w[1].center).abs() < 1e-12);
    let monotone = if same_center && domains.len() > 1 {
        Some(
            rows.windows(2)
                .all(|w| w[1].bottom <= w[0].bottom * (1.0 + 1e-9) + 1e-12),
        )
    } else {
        None
    };
    Ok(ProbeResult { rows, limit_estimate, monotone })
}
