//! Sectional-curvature generators of (doubly) warped products over a line
//! and the asymptotic-flatness check built on them.
//!
//! For flat fibers the sectional curvatures are convex combinations of
//! `−φ″/φ`, `−ψ″/ψ`, `−(φ′)²/φ²`, `−(ψ′)²/ψ²`, `−φ′ψ′/(φψ)`; when a fiber
//! is a round sphere, its pure quadratic term is replaced by
//! `(1−(φ′)²)/φ²`.

use crate::error::Error;
use crate::warped::model::WarpedModel;
use crate::Result;

/// Values of the curvature generators at radius r, in a fixed order:
/// second-derivative terms first (one per factor), then quadratic terms
/// (one per factor, sphere-corrected), then the mixed term when two
/// factors are present.
pub fn curvature_generators(model: &WarpedModel, r: f64) -> Result<Vec<f64>> {
    if r < model.min_formula_radius() {
        return Err(Error::invalid(format!(
            "r = {r} is below the warp matching radius; the curvature formulas hold beyond it"
        )));
    }
    let evals: Vec<(f64, f64, f64)> = model
        .factors
        .iter()
        .map(|f| f.warp.eval(r))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for (v, _, d2) in &evals {
        out.push(-d2 / v);
    }
    for (factor, (v, d1, _)) in model.factors.iter().zip(&evals) {
        if factor.space.is_sphere() {
            out.push((1.0 - d1 * d1) / (v * v));
        } else {
            out.push(-(d1 * d1) / (v * v));
        }
    }
    if evals.len() == 2 {
        let (v1, d1, _) = evals[0];
        let (v2, e1, _) = evals[1];
        out.push(-d1 * e1 / (v1 * v2));
    }
    Ok(out)
}

/// Largest generator magnitude at r.
pub fn curvature_magnitude(model: &WarpedModel, r: f64) -> Result<f64> {
    Ok(curvature_generators(model, r)?
        .into_iter()
        .map(f64::abs)
        .fold(0.0, f64::max))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Flatness {
    Flat,
    NotFlat,
    Unknown(String),
}

#[derive(Debug, Clone)]
pub struct FlatnessReport {
    pub verdict: Flatness,
    /// Fitted decay exponent of the max generator magnitude (|Rm| ~ r^−e);
    /// `None` for exactly flat models (all generators vanish).
    pub decay_exponent: Option<f64>,
    /// (r, max |generator|) samples used for the fit.
    pub samples: Vec<(f64, f64)>,
}

/// Samples the curvature generators along a geometric grid up to 10⁶ (or
/// the warp's data range) and fits the decay of the max magnitude.
pub fn is_asymptotically_flat(model: &WarpedModel) -> Result<FlatnessReport> {
    let r_start = model.min_formula_radius().max(1.0) * 2.0;
    let r_stop = model.max_radius().min(1e6);
    if !(r_stop > r_start * 8.0) {
        return Ok(FlatnessReport {
            verdict: Flatness::Unknown(
                "warp tail data does not reach far enough to sample the curvature decay".into(),
            ),
            decay_exponent: None,
            samples: Vec::new(),
        });
    }
    let mut samples = Vec::new();
    let mut r = r_start;
    while r <= r_stop {
        samples.push((r, curvature_magnitude(model, r)?));
        r *= 2.0;
    }
    let positive: Vec<(f64, f64)> = samples
        .iter()
        .copied()
        .filter(|&(_, m)| m > 0.0)
        .collect();
    if positive.is_empty() {
        // all generators vanish identically: exactly flat
        return Ok(FlatnessReport {
            verdict: Flatness::Flat,
            decay_exponent: None,
            samples,
        });
    }
    // log-log least squares for the decay exponent
    let n = positive.len() as f64;
    let sx: f64 = positive.iter().map(|(r, _)| r.ln()).sum();
    let sy: f64 = positive.iter().map(|(_, m)| m.ln()).sum();
    let sxx: f64 = positive.iter().map(|(r, _)| r.ln().powi(2)).sum();
    let sxy: f64 = positive.iter().map(|(r, m)| r.ln() * m.ln()).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let exponent = -slope;

    let first = positive.first().unwrap().1;
    let last = positive.last().unwrap().1;
    let decays = last < first * 1e-3 || (exponent > 0.1 && last < first);
    Ok(FlatnessReport {
        verdict: if decays { Flatness::Flat } else { Flatness::NotFlat },
        decay_exponent: Some(exponent),
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flat::catalog;
    use crate::warped::model::{BaseLine, FactorSpace, WarpedFactor, WarpedModel};
    use crate::warped::warp::{CustomWarp, WarpFunction};

    fn single_factor(warp: WarpFunction) -> WarpedModel {
        WarpedModel::new(
            BaseLine::FullLine,
            vec![WarpedFactor {
                space: FactorSpace::Flat(catalog::hantzsche_wendt().unwrap()),
                warp,
            }],
        )
        .unwrap()
    }

    #[test]
    fn inverse_radius_generators() {
        let m = single_factor(WarpFunction::power_law(-1.0, 1.0).unwrap());
        for &r in &[10.0, 100.0] {
            let g = curvature_generators(&m, r).unwrap();
            assert_eq!(g.len(), 2);
            assert!((g[0] + 2.0 / (r * r)).abs() < 1e-12 / r);
            assert!((g[1] + 1.0 / (r * r)).abs() < 1e-12 / r);
            // cross-check by central differences of the warp itself
            let h = 1e-4 * r;
            let phi = |x: f64| x.powf(-1.0);
            let d2 = (phi(r + h) - 2.0 * phi(r) + phi(r - h)) / (h * h);
            assert!((g[0] + d2 / phi(r)).abs() < 1e-6 / (r * r));
        }
    }

    #[test]
    fn constant_warp_is_exactly_flat() {
        let m = single_factor(WarpFunction::constant(3.0).unwrap());
        let g = curvature_generators(&m, 5.0).unwrap();
        assert!(g.iter().all(|&v| v == 0.0));
        let rep = is_asymptotically_flat(&m).unwrap();
        assert_eq!(rep.verdict, Flatness::Flat);
        assert_eq!(rep.decay_exponent, None);
    }

    #[test]
    fn mixed_term_vanishes_with_constant_first_warp() {
        let hw = catalog::hantzsche_wendt().unwrap();
        let m = WarpedModel::new(
            BaseLine::FullLine,
            vec![
                WarpedFactor {
                    space: FactorSpace::Flat(hw.clone()),
                    warp: WarpFunction::constant(2.0).unwrap(),
                },
                WarpedFactor {
                    space: FactorSpace::Flat(hw),
                    warp: WarpFunction::power_law(-1.0, 1.0).unwrap(),
                },
            ],
        )
        .unwrap();
        let g = curvature_generators(&m, 10.0).unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(g[4], 0.0); // −φ′ψ′/(φψ) with φ′ = 0
    }

    #[test]
    fn inverse_radius_is_asymptotically_flat_with_exponent_two() {
        let m = single_factor(WarpFunction::power_law(-1.0, 1.0).unwrap());
        let rep = is_asymptotically_flat(&m).unwrap();
        assert_eq!(rep.verdict, Flatness::Flat);
        let e = rep.decay_exponent.unwrap();
        assert!((1.9..=2.1).contains(&e), "exponent {e}");
    }

    #[test]
    fn exponential_warp_is_not_flat() {
        // e^r sampled densely enough for the derivative consistency check
        let radii: Vec<f64> = (0..4000).map(|i| 1.0 + 0.01 * i as f64).collect();
        let values: Vec<f64> = radii.iter().map(|r| r.exp()).collect();
        let warp = WarpFunction::custom(CustomWarp {
            radii,
            values: values.clone(),
            first: values.clone(),
            second: values,
        })
        .unwrap();
        let m = single_factor(warp);
        let rep = is_asymptotically_flat(&m).unwrap();
        assert_eq!(rep.verdict, Flatness::NotFlat);
    }

    #[test]
    fn sphere_replacement_changes_the_quadratic_term() {
        let m = WarpedModel::new(
            BaseLine::FullLine,
            vec![WarpedFactor {
                space: FactorSpace::Sphere(2),
                warp: WarpFunction::constant(1.0).unwrap(),
            }],
        )
        .unwrap();
        let g = curvature_generators(&m, 3.0).unwrap();
        // (1 − 0)/1 = 1: the round sphere keeps curvature at constant warp
        assert_eq!(g, vec![0.0, 1.0]);
    }
}
