//! Warped and doubly-warped product models over a line.

use crate::error::Error;
use crate::flat::FlatManifold;
use crate::warped::warp::WarpFunction;
use crate::Result;

/// The base of the warped product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseLine {
    /// The whole line ℝ (the default; warps are functions of |r|).
    FullLine,
    /// The half line [0, ∞).
    HalfLine,
}

/// A compact fiber: a flat manifold with full spectral data, or a round
/// sphere tag (curvature formulas only).
#[derive(Debug, Clone)]
pub enum FactorSpace {
    Flat(FlatManifold),
    Sphere(usize),
}

impl FactorSpace {
    pub fn dimension(&self) -> usize {
        match self {
            FactorSpace::Flat(m) => m.dimension(),
            FactorSpace::Sphere(d) => *d,
        }
    }

    pub fn is_sphere(&self) -> bool {
        matches!(self, FactorSpace::Sphere(_))
    }
}

/// One warped factor.
#[derive(Debug, Clone)]
pub struct WarpedFactor {
    pub space: FactorSpace,
    pub warp: WarpFunction,
}

/// The model `base ×_{φ} K₁ (×_{ψ} K₂)`, metric
/// `dr² + φ(r)²g₁ (+ ψ(r)²g₂)`. At most two factors.
#[derive(Debug, Clone)]
pub struct WarpedModel {
    pub base: BaseLine,
    pub factors: Vec<WarpedFactor>,
    pub total_dimension: usize,
}

impl WarpedModel {
    pub fn new(base: BaseLine, factors: Vec<WarpedFactor>) -> Result<Self> {
        if factors.is_empty() || factors.len() > 2 {
            return Err(Error::invalid("a warped model carries one or two factors"));
        }
        if factors.iter().any(|f| f.space.dimension() == 0) {
            return Err(Error::invalid("factors must have positive dimension"));
        }
        let total_dimension = 1 + factors.iter().map(|f| f.space.dimension()).sum::<usize>();
        Ok(WarpedModel { base, factors, total_dimension })
    }

    /// Smallest radius at which all warp formulas are valid.
    pub fn min_formula_radius(&self) -> f64 {
        self.factors
            .iter()
            .map(|f| f.warp.min_radius())
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Largest radius every warp can be evaluated at.
    pub fn max_radius(&self) -> f64 {
        self.factors
            .iter()
            .map(|f| f.warp.max_radius())
            .fold(f64::INFINITY, f64::min)
    }
}
