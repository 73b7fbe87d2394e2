//! Warp profiles along the base line, with two derivatives.

use crate::error::Error;
use crate::Result;

/// Tail behavior of a warp, as far as the classifier needs it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WarpTail {
    /// φ ≡ c.
    Constant(f64),
    /// Power law with negative exponent: the factor collapses at infinity.
    Collapsing,
    /// Power law with positive exponent.
    Expanding,
    /// Sampled data without analytic tail.
    Unknown,
}

/// A tabulated warp: samples of the value and its first two derivatives on
/// an increasing grid.
#[derive(Debug, Clone)]
pub struct CustomWarp {
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
    pub first: Vec<f64>,
    pub second: Vec<f64>,
}

/// A warp function, positive on its domain.
#[derive(Debug, Clone)]
pub enum WarpFunction {
    Constant(f64),
    /// φ(r) = r^exponent for r ≥ matching_radius (the formula region).
    PowerLaw { exponent: f64, matching_radius: f64 },
    Custom(CustomWarp),
}

impl WarpFunction {
    pub fn constant(c: f64) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::invalid("constant warp must be positive"));
        }
        Ok(WarpFunction::Constant(c))
    }

    pub fn power_law(exponent: f64, matching_radius: f64) -> Result<Self> {
        if !(matching_radius > 0.0) {
            return Err(Error::invalid("power-law warp needs a positive matching radius"));
        }
        if !exponent.is_finite() {
            return Err(Error::invalid("power-law exponent must be finite"));
        }
        Ok(WarpFunction::PowerLaw { exponent, matching_radius })
    }

    /// Validates positivity and the finite-difference consistency of the
    /// supplied derivatives (interior nodes, tolerance 1e-4 relative to
    /// the local value scale).
    pub fn custom(data: CustomWarp) -> Result<Self> {
        let n = data.radii.len();
        if n < 5
            || data.values.len() != n
            || data.first.len() != n
            || data.second.len() != n
        {
            return Err(Error::invalid("custom warp needs ≥ 5 aligned samples"));
        }
        if data.radii.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::invalid("custom warp radii must increase"));
        }
        if data.values.iter().any(|&v| !(v > 0.0)) {
            return Err(Error::invalid("custom warp must be positive"));
        }
        for i in 1..n - 1 {
            let hl = data.radii[i] - data.radii[i - 1];
            let hr = data.radii[i + 1] - data.radii[i];
            if (hl - hr).abs() > 1e-9 * hl.max(hr) {
                continue; // central differences only checked on uniform stretches
            }
            let h = hl;
            let d1 = (data.values[i + 1] - data.values[i - 1]) / (2.0 * h);
            let d2 = (data.values[i + 1] - 2.0 * data.values[i] + data.values[i - 1]) / (h * h);
            let scale = data.values[i]
                .abs()
                .max(data.first[i].abs())
                .max(data.second[i].abs())
                .max(1.0);
            if (d1 - data.first[i]).abs() > 1e-4 * scale
                || (d2 - data.second[i]).abs() > 1e-4 * scale
            {
                return Err(Error::invalid(format!(
                    "custom warp derivatives inconsistent with finite differences at r = {}",
                    data.radii[i]
                )));
            }
        }
        Ok(WarpFunction::Custom(data))
    }

    /// (φ, φ′, φ″) at r. Power laws are only defined in their formula
    /// region r ≥ matching radius; custom warps only on their sample range.
    pub fn eval(&self, r: f64) -> Result<(f64, f64, f64)> {
        match self {
            WarpFunction::Constant(c) => Ok((*c, 0.0, 0.0)),
            WarpFunction::PowerLaw { exponent, matching_radius } => {
                if r < *matching_radius {
                    return Err(Error::invalid(format!(
                        "power-law warp evaluated at r = {r} below matching radius {matching_radius}"
                    )));
                }
                let p = *exponent;
                Ok((r.powf(p), p * r.powf(p - 1.0), p * (p - 1.0) * r.powf(p - 2.0)))
            }
            WarpFunction::Custom(data) => {
                let n = data.radii.len();
                if r < data.radii[0] || r > data.radii[n - 1] {
                    return Err(Error::invalid(format!(
                        "custom warp evaluated at r = {r} outside its sample range"
                    )));
                }
                // linear interpolation of all three series
                let idx = match data.radii.binary_search_by(|x| x.total_cmp(&r)) {
                    Ok(i) => return Ok((data.values[i], data.first[i], data.second[i])),
                    Err(i) => i - 1,
                };
                let t = (r - data.radii[idx]) / (data.radii[idx + 1] - data.radii[idx]);
                let lerp = |a: &[f64]| a[idx] + t * (a[idx + 1] - a[idx]);
                Ok((lerp(&data.values), lerp(&data.first), lerp(&data.second)))
            }
        }
    }

    pub fn tail(&self) -> WarpTail {
        match self {
            WarpFunction::Constant(c) => WarpTail::Constant(*c),
            WarpFunction::PowerLaw { exponent, .. } => {
                if *exponent < 0.0 {
                    WarpTail::Collapsing
                } else if *exponent > 0.0 {
                    WarpTail::Expanding
                } else {
                    WarpTail::Constant(1.0)
                }
            }
            WarpFunction::Custom(_) => WarpTail::Unknown,
        }
    }

    /// Largest radius at which this warp may be evaluated (∞ for analytic
    /// kinds).
    pub fn max_radius(&self) -> f64 {
        match self {
            WarpFunction::Custom(d) => *d.radii.last().unwrap(),
            _ => f64::INFINITY,
        }
    }

    /// Smallest admissible radius.
    pub fn min_radius(&self) -> f64 {
        match self {
            WarpFunction::Constant(_) => f64::NEG_INFINITY,
            WarpFunction::PowerLaw { matching_radius, .. } => *matching_radius,
            WarpFunction::Custom(d) => d.radii[0],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_law_derivatives() {
        let w = WarpFunction::power_law(-1.0, 1.0).unwrap();
        let (v, d1, d2) = w.eval(10.0).unwrap();
        assert!((v - 0.1).abs() < 1e-15);
        assert!((d1 + 0.01).abs() < 1e-15);
        assert!((d2 - 0.002).abs() < 1e-15);
        assert!(w.eval(0.5).is_err());
        assert_eq!(w.tail(), WarpTail::Collapsing);
    }

    #[test]
    fn custom_consistency_check_fires() {
        // h = 0.01 keeps the central-difference truncation below the 1e-4
        // consistency tolerance for e^r
        let radii: Vec<f64> = (0..200).map(|i| 1.0 + 0.01 * i as f64).collect();
        let values: Vec<f64> = radii.iter().map(|r| r.exp()).collect();
        let w = WarpFunction::custom(CustomWarp {
            radii: radii.clone(),
            values: values.clone(),
            first: values.clone(),
            second: values.clone(),
        });
        assert!(w.is_ok());
        let bad = WarpFunction::custom(CustomWarp {
            radii,
            values: values.clone(),
            first: values.iter().map(|v| -v).collect(),
            second: values,
        });
        assert!(bad.is_err());
    }
}
