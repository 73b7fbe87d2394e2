//! Conjugate-gradient solves of shifted systems and a bottom-eigenvalue
//! routine built on them.

use num_complex::Complex64;

use crate::error::Error;
use crate::weyl::operator::{deterministic_unit_vector, SparseOperator};
use crate::Result;

/// Convergence report of one CG solve.
#[derive(Debug, Clone, Copy)]
pub struct CgOutcome {
    pub iterations: usize,
    pub rel_residual: f64,
}

/// Solves (H + shift)·x = b for a nonnegative H and shift > 0 by plain
/// conjugate gradients, to a relative residual `rel_tol`.
pub fn cg_solve_shifted(
    h: &SparseOperator,
    shift: f64,
    b: &[f64],
    rel_tol: f64,
    max_iter: usize,
) -> Result<(Vec<f64>, CgOutcome)> {
    let n = h.dim();
    assert_eq!(b.len(), n);
    let b_norm = b.iter().map(|v| v * v).sum::<f64>().sqrt();
    if b_norm == 0.0 {
        return Ok((vec![0.0; n], CgOutcome { iterations: 0, rel_residual: 0.0 }));
    }
    let mut x = vec![0.0; n];
    let mut r = b.to_vec();
    let mut p = r.clone();
    let mut hp = vec![0.0; n];
    let mut rs: f64 = r.iter().map(|v| v * v).sum();
    let target = (rel_tol * b_norm) * (rel_tol * b_norm);
    let mut iterations = 0;
    while rs > target && iterations < max_iter {
        h.apply(&p, &mut hp);
        for (hpi, pi) in hp.iter_mut().zip(&p) {
            *hpi += shift * pi;
        }
        let php: f64 = p.iter().zip(&hp).map(|(a, b)| a * b).sum();
        if php <= 0.0 {
            return Err(Error::solver(format!(
                "CG curvature became nonpositive ({php:.3e}); operator violates nonnegativity"
            )));
        }
        let alpha = rs / php;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * hp[i];
        }
        let rs_new: f64 = r.iter().map(|v| v * v).sum();
        let beta = rs_new / rs;
        for i in 0..n {
            p[i] = r[i] + beta * p[i];
        }
        rs = rs_new;
        iterations += 1;
    }
    let rel_residual = rs.sqrt() / b_norm;
    if rel_residual > rel_tol {
        return Err(Error::solver(format!(
            "CG did not reach tolerance {rel_tol:.1e} in {max_iter} iterations \
             (residual {rel_residual:.3e})"
        )));
    }
    Ok((x, CgOutcome { iterations, rel_residual }))
}

/// Complex right-hand side: the operator is real, so the system splits
/// exactly into independent real and imaginary solves.
pub fn cg_solve_shifted_complex(
    h: &SparseOperator,
    shift: f64,
    b: &[Complex64],
    rel_tol: f64,
    max_iter: usize,
) -> Result<(Vec<Complex64>, CgOutcome)> {
    let re: Vec<f64> = b.iter().map(|z| z.re).collect();
    let im: Vec<f64> = b.iter().map(|z| z.im).collect();
    let (xr, oc_r) = cg_solve_shifted(h, shift, &re, rel_tol, max_iter)?;
    let (xi, oc_i) = cg_solve_shifted(h, shift, &im, rel_tol, max_iter)?;
    let x = xr
        .into_iter()
        .zip(xi)
        .map(|(a, b)| Complex64::new(a, b))
        .collect();
    Ok((
        x,
        CgOutcome {
            iterations: oc_r.iterations.max(oc_i.iterations),
            rel_residual: oc_r.rel_residual.max(oc_i.rel_residual),
        },
    ))
}

/// Smallest eigenvalue of a nonnegative symmetric operator by shift-invert
/// power iteration. The shift sits between the Gershgorin lower bound and
/// the running Rayleigh estimate, which keeps both the CG condition number
/// and the power-iteration rate under control.
pub fn smallest_eigenvalue(h: &SparseOperator, rel_tol: f64, max_outer: usize) -> Result<f64> {
    smallest_eigenpair(h, rel_tol, max_outer).map(|(v, _)| v)
}

/// Smallest eigenvalue together with its (approximate, normalized)
/// eigenvector.
pub fn smallest_eigenpair(
    h: &SparseOperator,
    rel_tol: f64,
    max_outer: usize,
) -> Result<(f64, Vec<f64>)> {
    let n = h.dim();
    let (glb, gub) = h.gershgorin_bounds();
    let span = (gub - glb).max(1e-300);
    if n == 1 {
        return Ok((h.rayleigh(&[1.0]), vec![1.0]));
    }
    let mut v = deterministic_unit_vector(n, 0xB0770);
    let mut rho = h.rayleigh(&v);
    let cg_cap = 40 * n + 200;
    for _ in 0..max_outer {
        let delta = ((rho - glb) * 0.5).max(span * 1e-14).max(1e-300);
        let shift = delta - glb;
        let (w, _) = cg_solve_shifted(h, shift, &v, 1e-10, cg_cap)?;
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::solver("inverse iteration produced a zero vector"));
        }
        for (vi, wi) in v.iter_mut().zip(&w) {
            *vi = wi / norm;
        }
        let rho_new = h.rayleigh(&v);
        let scale = rho_new.abs().max(span * 1e-12);
        if (rho_new - rho).abs() <= rel_tol * scale {
            return Ok((rho_new, v));
        }
        rho = rho_new;
    }
    Ok((rho, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laplacian_1d(n: usize, h: f64) -> SparseOperator {
        let mut t = Vec::new();
        let inv = 1.0 / (h * h);
        for i in 0..n {
            t.push((i, i, 2.0 * inv));
            if i + 1 < n {
                t.push((i, i + 1, -inv));
            }
        }
        SparseOperator::from_triplets(n, &t).unwrap()
    }

    #[test]
    fn cg_solves_diagonal_system() {
        let h = SparseOperator::from_diagonal(&[0.0, 1.0, 3.0]).unwrap();
        let (x, out) = cg_solve_shifted(&h, 1.0, &[1.0, 2.0, 4.0], 1e-12, 100).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-10);
        assert!((x[1] - 1.0).abs() < 1e-10);
        assert!((x[2] - 1.0).abs() < 1e-10);
        assert!(out.rel_residual <= 1e-12);
    }

    #[test]
    fn dirichlet_interval_bottom_eigenvalue() {
        // interval (0, L) with L = (n+1)h: λ₁ = (2 - 2cos(πh/L))/h²
        let n = 199;
        let h = 0.05;
        let l = (n as f64 + 1.0) * h;
        let op = laplacian_1d(n, h);
        let exact = (2.0 - 2.0 * (std::f64::consts::PI * h / l).cos()) / (h * h);
        let got = smallest_eigenvalue(&op, 1e-10, 300).unwrap();
        assert!(
            (got - exact).abs() < 1e-8 * exact,
            "got {got}, exact {exact}"
        );
    }

    #[test]
    fn shifted_diagonal_bottom() {
        let h = SparseOperator::from_diagonal(&[5.0, 9.0, 5.5, 12.0]).unwrap();
        let got = smallest_eigenvalue(&h, 1e-12, 200).unwrap();
        assert!((got - 5.0).abs() < 1e-9);
    }
}
