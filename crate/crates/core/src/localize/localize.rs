//! Transfer of a Rayleigh quotient from the whole domain into one ball of
//! a cover: the squared partition splits the quadratic form with a
//! measured kinetic overhead C/R′², and a pigeonhole step picks the best
//! piece.

use crate::error::Error;
use crate::localize::cover::CoverSystem;
use crate::localize::domain::DiscreteDomain;
use crate::Result;

/// Outcome of localizing one test vector.
#[derive(Debug, Clone)]
pub struct Localized {
    /// Index into `cover.centers`.
    pub best_center: usize,
    /// The node id of that center.
    pub best_center_node: usize,
    /// Rayleigh quotient of the localized piece ρ_j·ω.
    pub localized_quotient: f64,
    /// Rayleigh quotient of ω itself.
    pub global_quotient: f64,
    /// Measured localization constant: the excess of Σ_j (Hω_j, ω_j) over
    /// (Hω, ω), in units of ‖ω‖²/R′².
    pub c_measured: f64,
    /// Σ_j (Hω_j, ω_j) — kept so callers can assert the summed inequality.
    pub summed_forms: f64,
    /// Σ_j ‖ω_j‖² (equals ‖ω‖² up to the partition defect).
    pub summed_norms: f64,
}

/// Splits ω along the partition, measures the localization constant, and
/// returns the center whose piece has the smallest Rayleigh quotient. By
/// the pigeonhole inequality that quotient never exceeds
/// `global + c_measured/R′²` (up to the tiny partition defect).
pub fn localize_eigenvalue(
    domain: &DiscreteDomain,
    cover: &CoverSystem,
    omega: &[f64],
) -> Result<Localized> {
    let n = domain.node_count();
    if omega.len() != n {
        return Err(Error::invalid("test vector length does not match domain"));
    }
    let norm_sq: f64 = omega.iter().map(|v| v * v).sum();
    if norm_sq == 0.0 {
        return Err(Error::invalid("test vector is zero"));
    }
    let h = domain.laplacian();
    let mut buf = vec![0.0; n];
    h.apply(omega, &mut buf);
    let global_form: f64 = buf.iter().zip(omega).map(|(a, b)| a * b).sum();
    let global_quotient = global_form / norm_sq;

    let mut best: Option<(usize, f64)> = None;
    let mut summed_forms = 0.0;
    let mut summed_norms = 0.0;
    for (j, rho) in cover.partition.iter().enumerate() {
        let piece: Vec<f64> = rho.iter().zip(omega).map(|(r, w)| r * w).collect();
        let piece_norm_sq: f64 = piece.iter().map(|v| v * v).sum();
        if piece_norm_sq == 0.0 {
            continue;
        }
        h.apply(&piece, &mut buf);
        let form: f64 = buf.iter().zip(&piece).map(|(a, b)| a * b).sum();
        summed_forms += form;
        summed_norms += piece_norm_sq;
        let quotient = form / piece_norm_sq;
        if best.map_or(true, |(_, q)| quotient < q) {
            best = Some((j, quotient));
        }
    }
    let (best_center, localized_quotient) =
        best.ok_or_else(|| Error::invalid("partition annihilated the test vector"))?;

    let r2 = cover.small_radius * cover.small_radius;
    let c_measured = ((summed_forms - global_form) / norm_sq * r2).max(0.0);

    Ok(Localized {
        best_center,
        best_center_node: cover.centers[best_center],
        localized_quotient,
        global_quotient,
        c_measured,
        summed_forms,
        summed_norms,
    })
}
