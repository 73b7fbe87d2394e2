//! Reduction of the form Laplacian on a warped product to one-dimensional
//! channel operators, one per fiber eigenvalue and degree split.
//!
//! A k-form splits as k = a + c₁ + c₂ with a ∈ {0,1} for the dr part and
//! c_j a degree on fiber j. Each fiber eigenvalue μ in degree c_j feeds
//! the channel potential μ/φ(r)². These are leading-order channels: the
//! curvature coupling terms of the reduced operator scale like the warp
//! curvature (1/r² for the collapsing examples) and vanish at infinity,
//! so they do not move the essential-spectrum classification.

use crate::error::Error;
use crate::flat::{form_spectrum, FlatManifold};
use crate::warped::model::{FactorSpace, WarpedModel};
use crate::Result;
use crate::weyl::SparseOperator;

/// Uniform 1D channel grid: node i at `start + i·spacing`.
#[derive(Debug, Clone, Copy)]
pub struct ChannelGrid {
    pub start: f64,
    pub spacing: f64,
    pub nodes: usize,
}

impl ChannelGrid {
    pub fn new(start: f64, spacing: f64, nodes: usize) -> Result<Self> {
        if !(spacing > 0.0) || nodes < 8 {
            return Err(Error::invalid("channel grid needs spacing > 0 and ≥ 8 nodes"));
        }
        Ok(ChannelGrid { start, spacing, nodes })
    }

    pub fn position(&self, i: usize) -> f64 {
        self.start + i as f64 * self.spacing
    }

    pub fn end(&self) -> f64 {
        self.position(self.nodes - 1)
    }
}

/// Tail behavior of the channel potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelTag {
    /// V → 0: a free channel.
    Free,
    /// V → L > 0: free plus a constant shift L.
    FreePlusShift(f64),
    /// V → ∞: the channel contributes no essential spectrum.
    Divergent,
}

/// Identifies one channel: the dr exponent and the per-factor degrees and
/// fiber eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelLabel {
    pub dr_part: usize,
    pub degrees: Vec<usize>,
    pub eigenvalues: Vec<f64>,
}

/// An assembled 1D Sturm–Liouville channel, symmetrized to a plain
/// symmetric matrix by the similarity with √(weight).
#[derive(Debug, Clone)]
pub struct ChannelOperator {
    pub label: ChannelLabel,
    pub grid: ChannelGrid,
    pub potential: Vec<f64>,
    pub weight: Vec<f64>,
    pub operator: SparseOperator,
    pub tag: ChannelTag,
}

fn factor_flat(space: &FactorSpace) -> Result<&FlatManifold> {
    match space {
        FactorSpace::Flat(m) => Ok(m),
        FactorSpace::Sphere(_) => Err(Error::invalid(
            "sphere factors carry no tabulated form spectra; channel reduction needs flat fibers",
        )),
    }
}

/// Enumerates the degree splits k = a + c₁ (+ c₂) with a ∈ {0,1}.
fn degree_splits(k: usize, dims: &[usize]) -> Vec<(usize, Vec<usize>)> {
    let mut out = Vec::new();
    for a in 0..=1usize.min(k) {
        let rest = k - a;
        match dims.len() {
            1 => {
                if rest <= dims[0] {
                    out.push((a, vec![rest]));
                }
            }
            2 => {
                for c1 in 0..=dims[0].min(rest) {
                    let c2 = rest - c1;
                    if c2 <= dims[1] {
                        out.push((a, vec![c1, c2]));
                    }
                }
            }
            _ => unreachable!("models carry one or two factors"),
        }
    }
    out
}

/// Builds every channel operator for degree k on the given grid, taking
/// fiber eigenvalues from the flat spectra up to `spectral_cutoff`.
/// Channels are tagged by the tail of their potential.
pub fn channel_operators(
    model: &WarpedModel,
    k: usize,
    grid: ChannelGrid,
    spectral_cutoff: f64,
) -> Result<Vec<ChannelOperator>> {
    if k > model.total_dimension {
        return Err(Error::invalid(format!(
            "degree {k} exceeds model dimension {}",
            model.total_dimension
        )));
    }
    // midpoint weights reach half a step beyond the grid
    let needed_min = grid.start - 0.5 * grid.spacing;
    if needed_min < model.min_formula_radius() {
        return Err(Error::invalid(format!(
            "channel grid starts at {} but the warp formulas begin at {}",
            grid.start,
            model.min_formula_radius()
        )));
    }
    if grid.end() + 0.5 * grid.spacing > model.max_radius() {
        return Err(Error::invalid("channel grid exceeds the warp sample range"));
    }

    let dims: Vec<usize> = model.factors.iter().map(|f| f.space.dimension()).collect();
    let mut channels = Vec::new();
    for (a, degrees) in degree_splits(k, &dims) {
        // eigenvalue lists per factor at these degrees
        let mut eigenvalue_lists: Vec<Vec<f64>> = Vec::new();
        for (factor, &c) in model.factors.iter().zip(&degrees) {
            let flat = factor_flat(&factor.space)?;
            let table = form_spectrum(flat, c, spectral_cutoff)?;
            if table.rows.is_empty() {
                return Err(Error::invalid(format!(
                    "missing factor spectra: no degree-{c} eigenvalue of {} below cutoff {spectral_cutoff}",
                    flat.name().unwrap_or("fiber"),
                )));
            }
            eigenvalue_lists.push(table.rows.iter().map(|&(ev, _)| ev).collect());
        }
        // cartesian product over factors (one or two)
        let combos: Vec<Vec<f64>> = match eigenvalue_lists.len() {
            1 => eigenvalue_lists[0].iter().map(|&mu| vec![mu]).collect(),
            2 => {
                let mut v = Vec::new();
                for &mu in &eigenvalue_lists[0] {
                    for &nu in &eigenvalue_lists[1] {
                        v.push(vec![mu, nu]);
                    }
                }
                v
            }
            _ => unreachable!(),
        };
        for eigenvalues in combos {
            channels.push(assemble_channel(
                model,
                ChannelLabel { dr_part: a, degrees: degrees.clone(), eigenvalues },
                grid,
            )?);
        }
    }
    Ok(channels)
}

/// Assembles one channel: potential V = Σ μ_j/φ_j², volume weight
/// w = Π φ_j^{dim_j}, discretized in Sturm–Liouville form and symmetrized
/// by the √w similarity (entries −w_{i+1/2}/(h²√(w_i w_{i+1})) off the
/// diagonal). The Dirichlet part is nonnegative, so the operator bottom is
/// at least min V.
pub fn assemble_channel(
    model: &WarpedModel,
    label: ChannelLabel,
    grid: ChannelGrid,
) -> Result<ChannelOperator> {
    let n = grid.nodes;
    let h = grid.spacing;
    let warp_values = |r: f64| -> Result<Vec<f64>> {
        model.factors.iter().map(|f| f.warp.eval(r).map(|(v, _, _)| v)).collect()
    };
    let mut potential = Vec::with_capacity(n);
    let mut weight = Vec::with_capacity(n);
    for i in 0..n {
        let r = grid.position(i);
        let values = warp_values(r)?;
        let mut v_pot = 0.0;
        let mut w = 1.0;
        for ((&phi, &mu), factor) in values
            .iter()
            .zip(&label.eigenvalues)
            .zip(&model.factors)
        {
            v_pot += mu / (phi * phi);
            w *= phi.powi(factor.space.dimension() as i32);
        }
        potential.push(v_pot);
        weight.push(w);
    }
    // midpoint weights
    let mut w_half = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let r = grid.start + (i as f64 - 0.5) * h;
        let values = warp_values(r)?;
        let mut w = 1.0;
        for (&phi, factor) in values.iter().zip(&model.factors) {
            w *= phi.powi(factor.space.dimension() as i32);
        }
        w_half.push(w);
    }

    let inv = 1.0 / (h * h);
    let mut triplets = Vec::with_capacity(2 * n);
    for i in 0..n {
        let diag = (w_half[i] + w_half[i + 1]) / weight[i] * inv + potential[i];
        triplets.push((i, i, diag));
        if i + 1 < n {
            let off = -w_half[i + 1] / (weight[i] * weight[i + 1]).sqrt() * inv;
            triplets.push((i, i + 1, off));
        }
    }
    let operator = SparseOperator::from_triplets(n, &triplets)?;

    // tail of the potential from the warp tails
    let mut tail_limit = 0.0f64;
    let mut divergent = false;
    for (factor, &mu) in model.factors.iter().zip(&label.eigenvalues) {
        if mu == 0.0 {
            continue;
        }
        match factor.warp.tail() {
            crate::warped::warp::WarpTail::Constant(c) => tail_limit += mu / (c * c),
            crate::warped::warp::WarpTail::Collapsing => divergent = true,
            crate::warped::warp::WarpTail::Expanding => {} // 1/φ² → 0
            crate::warped::warp::WarpTail::Unknown => {
                return Err(Error::invalid(
                    "custom warp tails cannot be classified; channel tagging needs analytic tails",
                ))
            }
        }
    }
    let tag = if divergent {
        ChannelTag::Divergent
    } else if tail_limit > 0.0 {
        ChannelTag::FreePlusShift(tail_limit)
    } else {
        ChannelTag::Free
    };

    Ok(ChannelOperator { label, grid, potential, weight, operator, tag })
}

/// Bottom eigenvalue of a channel truncated to a window around r₀ — the
/// divergence probe for collapsing channels.
pub fn window_bottom(
    model: &WarpedModel,
    label: &ChannelLabel,
    r0: f64,
    half_width: f64,
    spacing: f64,
) -> Result<f64> {
    let nodes = (2.0 * half_width / spacing).round() as usize + 1;
    let grid = ChannelGrid::new(r0 - half_width, spacing, nodes)?;
    let ch = assemble_channel(model, label.clone(), grid)?;
    crate::weyl::smallest_eigenvalue(&ch.operator, 1e-9, 400)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flat::catalog;
    use crate::warped::model::{BaseLine, FactorSpace, WarpedFactor, WarpedModel};
    use crate::warped::warp::WarpFunction;

    fn hw_over_inverse_r() -> WarpedModel {
        WarpedModel::new(
            BaseLine::FullLine,
            vec![WarpedFactor {
                space: FactorSpace::Flat(catalog::hantzsche_wendt().unwrap()),
                warp: WarpFunction::power_law(-1.0, 1.0).unwrap(),
            }],
        )
        .unwrap()
    }

    #[test]
    fn constant_channel_is_free() {
        let m = hw_over_inverse_r();
        let grid = ChannelGrid::new(2.0, 0.1, 64).unwrap();
        let channels = channel_operators(&m, 0, grid, 1.0).unwrap();
        // k = 0: only a = 0, c = 0, μ = 0
        assert_eq!(channels.len(), 1);
        assert_eq!(channels[0].tag, ChannelTag::Free);
        assert!(channels[0].potential.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn collapsing_channel_potential_grows_quadratically() {
        let m = hw_over_inverse_r();
        let mu = crate::flat::lambda_o(&catalog::hantzsche_wendt().unwrap(), 1).unwrap();
        let label = ChannelLabel { dr_part: 1, degrees: vec![1], eigenvalues: vec![mu] };
        let grid = ChannelGrid::new(10.0, 0.05, 64).unwrap();
        let ch = assemble_channel(&m, label, grid).unwrap();
        assert_eq!(ch.tag, ChannelTag::Divergent);
        for (i, &v) in ch.potential.iter().enumerate() {
            let r = grid.position(i);
            assert!((v - mu * r * r).abs() < 1e-9 * v);
        }
    }

    #[test]
    fn window_bottoms_diverge_with_radius() {
        let m = hw_over_inverse_r();
        let mu = crate::flat::lambda_o(&catalog::hantzsche_wendt().unwrap(), 1).unwrap();
        let label = ChannelLabel { dr_part: 0, degrees: vec![2], eigenvalues: vec![mu] };
        let b50 = window_bottom(&m, &label, 50.0, 2.0, 0.05).unwrap();
        let b100 = window_bottom(&m, &label, 100.0, 2.0, 0.05).unwrap();
        assert!(b50 > mu * 50.0 * 50.0 * 0.9);
        assert!(b100 > b50 * 2.0);
    }

    #[test]
    fn constant_warp_channel_shift() {
        let c0 = 2.0;
        let hw = catalog::hantzsche_wendt().unwrap();
        let mu = crate::flat::lambda_o(&hw, 1).unwrap();
        let m = WarpedModel::new(
            BaseLine::FullLine,
            vec![WarpedFactor {
                space: FactorSpace::Flat(hw),
                warp: WarpFunction::constant(c0).unwrap(),
            }],
        )
        .unwrap();
        let label = ChannelLabel { dr_part: 0, degrees: vec![1], eigenvalues: vec![mu] };
        let grid = ChannelGrid::new(0.0, 0.1, 128).unwrap();
        let ch = assemble_channel(&m, label, grid).unwrap();
        match ch.tag {
            ChannelTag::FreePlusShift(l) => assert!((l - mu / (c0 * c0)).abs() < 1e-12),
            other => panic!("expected a shifted free channel, got {other:?}"),
        }
        // constant weight: the operator is the plain Laplacian plus the shift
        let bottom = crate::weyl::smallest_eigenvalue(&ch.operator, 1e-9, 300).unwrap();
        let shift = mu / (c0 * c0);
        assert!((bottom - shift).abs() < 0.1 * shift.max(1.0));
    }

    #[test]
    fn grid_below_matching_radius_is_rejected() {
        let m = hw_over_inverse_r();
        let grid = ChannelGrid::new(0.5, 0.1, 32).unwrap();
        assert!(channel_operators(&m, 0, grid, 1.0).is_err());
    }
}
