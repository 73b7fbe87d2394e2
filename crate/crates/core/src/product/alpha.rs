//! The bottom α(K,m,n,k) of the k-form spectrum over K^{n−m} × ℝ^m.

use crate::error::Error;
use crate::flat::{lambda_o, FlatManifold};
use crate::product::SpectrumVerdict;
use crate::Result;

/// A flat product K^{n−m} × ℝ^m.
#[derive(Debug, Clone)]
pub struct ProductModel {
    pub compact_factor: FlatManifold,
    pub euclidean_rank: usize,
    pub total_dimension: usize,
}

impl ProductModel {
    pub fn new(compact_factor: FlatManifold, euclidean_rank: usize) -> Self {
        let total_dimension = compact_factor.dimension() + euclidean_rank;
        ProductModel { compact_factor, euclidean_rank, total_dimension }
    }
}

/// Which clause of the definition produced the value; reported in CSV.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaBranch {
    /// m ≥ n/2: zero for every degree.
    LargeEuclideanRank,
    /// k ≤ m or k ≥ n−m: zero band.
    ZeroBand,
    /// m+1 ≤ k ≤ n/2: minimum of λ_o(k−l, K) over 0 ≤ l ≤ m.
    Minimum,
    /// n/2 < k ≤ n−(m+1): reflected to degree n−k.
    Reflected,
}

impl AlphaBranch {
    pub fn as_str(&self) -> &'static str {
        match self {
            AlphaBranch::LargeEuclideanRank => "m>=n/2",
            AlphaBranch::ZeroBand => "zero-band",
            AlphaBranch::Minimum => "min-lambda_o",
            AlphaBranch::Reflected => "reflected",
        }
    }
}

/// α(K,m,n,k): zero when m ≥ n/2 or k lies in the zero band (k ≤ m or
/// k ≥ n−m); `min{λ_o(k−l,K) : 0 ≤ l ≤ m}` for m+1 ≤ k ≤ n/2; and the
/// reflection α(K,m,n,n−k) for n/2 < k ≤ n−(m+1).
pub fn alpha(k_manifold: &FlatManifold, m: usize, n: usize, k: usize) -> Result<f64> {
    alpha_with_branch(k_manifold, m, n, k).map(|(v, _)| v)
}

pub fn alpha_with_branch(
    k_manifold: &FlatManifold,
    m: usize,
    n: usize,
    k: usize,
) -> Result<(f64, AlphaBranch)> {
    if k_manifold.dimension() + m != n {
        return Err(Error::invalid(format!(
            "dimension mismatch: dim K = {} plus euclidean rank {m} must equal n = {n}",
            k_manifold.dimension()
        )));
    }
    if k > n {
        return Err(Error::invalid(format!("degree {k} out of range for n = {n}")));
    }
    if 2 * m >= n {
        return Ok((0.0, AlphaBranch::LargeEuclideanRank));
    }
    if k <= m || k + m >= n {
        return Ok((0.0, AlphaBranch::ZeroBand));
    }
    if 2 * k <= n {
        // m+1 ≤ k ≤ n/2
        let mut best = f64::INFINITY;
        for l in 0..=m {
            best = best.min(lambda_o(k_manifold, k - l)?);
        }
        Ok((best, AlphaBranch::Minimum))
    } else {
        let (v, _) = alpha_with_branch(k_manifold, m, n, n - k)?;
        Ok((v, AlphaBranch::Reflected))
    }
}

/// Spectrum (and essential spectrum) of K^{n−m} × ℝ^m on k-forms: always
/// the interval [α(K,m,n,k), ∞).
pub fn product_spectrum(model: &ProductModel, k: usize) -> Result<SpectrumVerdict> {
    let bottom = alpha(
        &model.compact_factor,
        model.euclidean_rank,
        model.total_dimension,
        k,
    )?;
    Ok(SpectrumVerdict::Interval(bottom))
}
