//! Certification from interior generalized eigenvectors: no boundary
//! conditions are imposed on the input, only an interior eigen-equation
//! and a non-concentration hypothesis on an annulus (or, on a half-line,
//! a subexponential-growth scan for admissible annuli).

use num_complex::Complex64;

use crate::error::Error;
use crate::weyl::criterion::{
    certify, CertificateVerdict, WeylCertificate, WeylConfig,
};
use crate::weyl::grid::{smoothstep_cutoff, GridDomain, HalfLineGrid};
use crate::weyl::operator::SparseOperator;
use crate::Result;

#[derive(Debug, Clone)]
pub struct AnnulusConfig {
    pub alpha: f64,
    /// Cap on `(R−R′)^{-2} · (annulus mass)/(inner mass)`; beyond it the
    /// concentration hypothesis is declared violated.
    pub concentration_threshold: f64,
    /// Relative interior eigen-equation tolerance.
    pub interior_tol: f64,
    pub weyl: WeylConfig,
}

impl Default for AnnulusConfig {
    fn default() -> Self {
        AnnulusConfig {
            alpha: 1.0,
            concentration_threshold: 0.01,
            interior_tol: 1e-8,
            weyl: WeylConfig::default(),
        }
    }
}

/// Certificate plus the annulus bookkeeping that produced it.
#[derive(Debug, Clone)]
pub struct AnnulusCertificate {
    pub certificate: WeylCertificate,
    /// annulus mass / inner mass.
    pub mass_ratio: f64,
    /// `(R−R′)^{-2} ·` mass ratio — the concentration quantity.
    pub concentration: f64,
    pub hypothesis_ok: bool,
    /// Measured constant C in `δ ≤ C·(R−R′)^{-1}·√(mass ratio)`.
    pub measured_constant: f64,
}

fn interior_residual_ok(
    h: &SparseOperator,
    grid: &GridDomain,
    omega: &[Complex64],
    lambda: f64,
    radius_cap: f64,
    tol: f64,
) -> Result<()> {
    let n = h.dim();
    let mut hw = vec![Complex64::new(0.0, 0.0); n];
    h.apply_complex(omega, &mut hw);
    let mut res_sq = 0.0;
    let mut mass_sq = 0.0;
    for i in 0..n {
        if grid.radius(i) <= radius_cap {
            res_sq += (hw[i] - lambda * omega[i]).norm_sqr();
            mass_sq += omega[i].norm_sqr();
        }
    }
    if mass_sq == 0.0 {
        return Err(Error::invalid("eigenvector vanishes on the interior"));
    }
    if res_sq.sqrt() > tol * mass_sq.sqrt() {
        return Err(Error::invalid(format!(
            "omega does not satisfy the eigen-equation on the interior \
             (relative residual {:.3e})",
            res_sq.sqrt() / mass_sq.sqrt()
        )));
    }
    Ok(())
}

/// Certifies λ from a generalized eigenvector on a 1D ball of radius R,
/// cutting it off between R′+1 and R−1 and evaluating the criterion on the
/// truncation. When the mass of ω concentrates on the annulus
/// B(R) ∖ B(R′) the hypothesis fails and the certificate is `Unknown`.
pub fn annulus_certify(
    grid: &GridDomain,
    h: &SparseOperator,
    omega: &[Complex64],
    lambda: f64,
    r_prime: f64,
    config: &AnnulusConfig,
) -> Result<AnnulusCertificate> {
    if grid.dimension() != 1 {
        return Err(Error::invalid("annulus certification is a 1D-model operation"));
    }
    if h.dim() != grid.node_count() || omega.len() != h.dim() {
        return Err(Error::invalid("operator, grid and vector sizes disagree"));
    }
    let r = grid.extent();
    if !(r_prime > 0.0 && r_prime < r - 3.0) {
        return Err(Error::invalid("need R' < R − 3"));
    }
    // the eigen-equation must hold wherever the cutoff lives (only the
    // truncation boundary layer is exempt)
    interior_residual_ok(h, grid, omega, lambda, r - 1.0, config.interior_tol)?;

    let mut inner_mass = 0.0;
    let mut annulus_mass = 0.0;
    for i in 0..h.dim() {
        let rad = grid.radius(i);
        let m = omega[i].norm_sqr();
        if rad <= r_prime {
            inner_mass += m;
        } else {
            annulus_mass += m;
        }
    }
    let width = r - r_prime;
    let mass_ratio = if inner_mass > 0.0 { annulus_mass / inner_mass } else { f64::INFINITY };
    let concentration = mass_ratio / (width * width);
    let hypothesis_ok = concentration <= config.concentration_threshold;

    // cutoff: 1 on B(R'+1), 0 outside B(R−1)
    let psi: Vec<Complex64> = (0..h.dim())
        .map(|i| omega[i] * smoothstep_cutoff(grid.radius(i), r_prime + 1.0, r - 1.0))
        .collect();
    if psi.iter().all(|z| z.norm_sqr() == 0.0) {
        return Err(Error::invalid("cutoff annihilated omega (support outside B(R−1)?)"));
    }

    let mut certificate = certify(h, &psi, lambda, config.alpha, &config.weyl)?;
    let measured_constant = if annulus_mass > 0.0 {
        certificate.delta * width / mass_ratio.sqrt()
    } else {
        0.0
    };
    if !hypothesis_ok {
        certificate.verdict = CertificateVerdict::Unknown;
        certificate.distance_bound = f64::INFINITY;
    }
    Ok(AnnulusCertificate {
        certificate,
        mass_ratio,
        concentration,
        hypothesis_ok,
        measured_constant,
    })
}

#[derive(Debug, Clone)]
pub struct GrowthConfig {
    pub alpha: f64,
    /// An annulus [n, n+1) is admissible when its mass is at most epsilon
    /// times the cumulative mass below n.
    pub epsilon: f64,
    /// At most this many (largest-n) admissible annuli are evaluated.
    pub max_candidates: usize,
    pub interior_tol: f64,
    pub weyl: WeylConfig,
}

impl Default for GrowthConfig {
    fn default() -> Self {
        GrowthConfig {
            alpha: 1.0,
            epsilon: 0.05,
            max_candidates: 12,
            interior_tol: 1e-8,
            weyl: WeylConfig::default(),
        }
    }
}

/// Outcome of the growth scan on a half-line model.
#[derive(Debug, Clone)]
pub struct GrowthCertificate {
    /// Best (smallest-δ) certificate among the admissible cutoffs, if any.
    pub certificate: Option<WeylCertificate>,
    /// Cut radius that produced it.
    pub best_radius: Option<usize>,
    pub admissible: Vec<usize>,
    /// Least-squares slope of ln(cumulative mass) against the radius — the
    /// subexponential-growth diagnostic (≈ 0 for polynomially growing mass).
    pub growth_slope: f64,
}

/// Scans annuli [n, n+1) of a truncated half-line operator for radii where
/// the generalized eigenvector has relatively little mass, cuts off there,
/// and returns the best resulting certificate. With exponentially growing
/// mass no annulus qualifies and the result carries no certificate, only
/// the growth diagnostic.
pub fn growth_certify(
    h: &SparseOperator,
    grid: &HalfLineGrid,
    omega: &[Complex64],
    lambda: f64,
    config: &GrowthConfig,
) -> Result<GrowthCertificate> {
    if omega.len() != h.dim() || h.dim() != grid.nodes {
        return Err(Error::invalid("vector length does not match operator"));
    }
    let n = h.dim();
    let spacing = grid.spacing;
    let r_max = grid.extent();
    if r_max < 6.0 {
        return Err(Error::invalid("half-line model too short for the annulus scan"));
    }

    // interior eigen-equation: everywhere except the truncation row(s)
    {
        let mut hw = vec![Complex64::new(0.0, 0.0); n];
        h.apply_complex(omega, &mut hw);
        let mut res_sq = 0.0;
        let mut mass_sq = 0.0;
        for i in 0..n.saturating_sub(2) {
            res_sq += (hw[i] - lambda * omega[i]).norm_sqr();
            mass_sq += omega[i].norm_sqr();
        }
        if mass_sq == 0.0 {
            return Err(Error::invalid("zero eigenvector"));
        }
        if res_sq.sqrt() > config.interior_tol * mass_sq.sqrt() {
            return Err(Error::invalid(format!(
                "omega does not satisfy the eigen-equation on the interior \
                 (relative residual {:.3e})",
                res_sq.sqrt() / mass_sq.sqrt()
            )));
        }
    }

    // annulus masses m_k over [k, k+1) and cumulative masses
    let shells = r_max.floor() as usize;
    let mut shell_mass = vec![0.0f64; shells + 1];
    for i in 0..n {
        let r = grid.position(i);
        let k = (r.floor() as usize).min(shells);
        shell_mass[k] += omega[i].norm_sqr() * spacing;
    }
    let mut cumulative = vec![0.0f64; shells + 2];
    for k in 0..=shells {
        cumulative[k + 1] = cumulative[k] + shell_mass[k];
    }

    // subexponential diagnostic: slope of ln M(r) vs r
    let pts: Vec<(f64, f64)> = (1..=shells)
        .filter(|&k| cumulative[k + 1] > 0.0)
        .map(|k| (k as f64, cumulative[k + 1].ln()))
        .collect();
    let growth_slope = if pts.len() >= 2 {
        let n_p = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        (n_p * sxy - sx * sy) / (n_p * sxx - sx * sx)
    } else {
        0.0
    };

    // admissible cut radii: mass in [k,k+1) at most ε·(mass below k);
    // leave two shells of room below the truncation boundary
    let mut admissible: Vec<usize> = (1..shells.saturating_sub(1))
        .filter(|&k| cumulative[k] > 0.0 && shell_mass[k] <= config.epsilon * cumulative[k])
        .collect();
    if admissible.is_empty() {
        return Ok(GrowthCertificate {
            certificate: None,
            best_radius: None,
            admissible,
            growth_slope,
        });
    }
    let evaluate: Vec<usize> = admissible
        .iter()
        .rev()
        .take(config.max_candidates)
        .copied()
        .collect();

    let mut best: Option<(usize, WeylCertificate)> = None;
    for &k in evaluate.iter().rev() {
        // cutoff 1 on [0, k], 0 beyond k+1
        let psi: Vec<Complex64> = (0..n)
            .map(|i| omega[i] * smoothstep_cutoff(grid.position(i), k as f64, k as f64 + 1.0))
            .collect();
        if psi.iter().all(|z| z.norm_sqr() == 0.0) {
            continue;
        }
        let cert = certify(h, &psi, lambda, config.alpha, &config.weyl)?;
        let better = match &best {
            Some((_, b)) => cert.delta < b.delta,
            None => true,
        };
        if better {
            best = Some((k, cert));
        }
    }
    admissible.sort_unstable();
    let (best_radius, certificate) = match best {
        Some((k, c)) => (Some(k), Some(c)),
        None => (None, None),
    };
    Ok(GrowthCertificate { certificate, best_radius, admissible, growth_slope })
}
