//! Künneth composition of bottom eigenvalues across product fibers, with a
//! divergence rule for collapsing factors.

use crate::error::Error;
use crate::flat::{lambda_o, FlatManifold};
use crate::Result;

/// Extended nonnegative real: Künneth minima must short-circuit through
/// unbounded channels correctly, so infinity is an explicit variant rather
/// than a sentinel float.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bottom {
    Finite(f64),
    Unbounded,
}

impl Bottom {
    pub fn min(self, other: Bottom) -> Bottom {
        match (self, other) {
            (Bottom::Unbounded, b) => b,
            (a, Bottom::Unbounded) => a,
            (Bottom::Finite(a), Bottom::Finite(b)) => Bottom::Finite(a.min(b)),
        }
    }

    pub fn add(self, other: Bottom) -> Bottom {
        match (self, other) {
            (Bottom::Finite(a), Bottom::Finite(b)) => Bottom::Finite(a + b),
            _ => Bottom::Unbounded,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Bottom::Finite(v) => Some(v),
            Bottom::Unbounded => None,
        }
    }
}

/// A product fiber: either a flat manifold carrying its true spectrum, or
/// one tagged as collapsing, whose nonzero eigenvalues blow up — only its
/// harmonic degrees (positive Betti number) still contribute, with value 0.
#[derive(Debug, Clone)]
pub struct KunnethFactor {
    pub manifold: FlatManifold,
    pub divergent: bool,
}

impl KunnethFactor {
    pub fn fixed(manifold: FlatManifold) -> Self {
        KunnethFactor { manifold, divergent: false }
    }

    pub fn divergent(manifold: FlatManifold) -> Self {
        KunnethFactor { manifold, divergent: true }
    }

    fn bottom_at(&self, degree: usize) -> Result<Bottom> {
        if degree > self.manifold.dimension() {
            return Ok(Bottom::Unbounded);
        }
        if self.divergent {
            if self.manifold.betti(degree) > 0 {
                Ok(Bottom::Finite(0.0))
            } else {
                Ok(Bottom::Unbounded)
            }
        } else {
            Ok(Bottom::Finite(lambda_o(&self.manifold, degree)?))
        }
    }
}

/// Minimum of `Σ_j λ_o(l_j, factor_j)` over all decompositions
/// `l = Σ l_j`, under the divergence rule. `Unbounded` means every
/// decomposition hits a divergent channel.
pub fn kunneth_lambda_o(factors: &[KunnethFactor], degree: usize) -> Result<Bottom> {
    let total: usize = factors.iter().map(|f| f.manifold.dimension()).sum();
    if degree > total {
        // degree exceeding the total dimension: unbounded by convention
        return Ok(Bottom::Unbounded);
    }
    if factors.is_empty() {
        return if degree == 0 {
            Ok(Bottom::Finite(0.0))
        } else {
            Err(Error::invalid("no factors and positive degree"))
        };
    }
    // dynamic program over factors: best[d] = min cost to realize degree d
    let mut best: Vec<Bottom> = vec![Bottom::Unbounded; degree + 1];
    best[0] = Bottom::Finite(0.0);
    for f in factors {
        let dim = f.manifold.dimension();
        let mut next = vec![Bottom::Unbounded; degree + 1];
        for d in 0..=degree {
            if matches!(best[d], Bottom::Unbounded) {
                continue;
            }
            for l in 0..=dim.min(degree - d) {
                let contribution = f.bottom_at(l)?;
                next[d + l] = next[d + l].min(best[d].add(contribution));
            }
        }
        best = next;
    }
    Ok(best[degree])
}
