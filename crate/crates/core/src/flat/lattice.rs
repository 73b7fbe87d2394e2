//! Translation lattices of crystallographic groups.

use nalgebra::DMatrix;

use crate::error::Error;
use crate::Result;

/// A full-rank lattice in ℝ^n, given by a basis matrix whose columns are
/// the generators (units of length).
#[derive(Debug, Clone, PartialEq)]
pub struct Lattice {
    basis: DMatrix<f64>,
}

impl Lattice {
    /// Builds a lattice from its basis, rejecting (numerically) singular
    /// bases. The degeneracy guard is relative to the basis scale.
    pub fn new(basis: DMatrix<f64>) -> Result<Self> {
        if basis.nrows() != basis.ncols() {
            return Err(Error::invalid("lattice basis must be square"));
        }
        let n = basis.nrows();
        if n == 0 {
            return Ok(Lattice { basis });
        }
        let scale = basis
            .column_iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
        if scale == 0.0 {
            return Err(Error::invalid("lattice basis is zero"));
        }
        let det = basis.determinant();
        if det.abs() <= 1e-12 * scale.powi(n as i32) {
            return Err(Error::invalid(format!(
                "lattice basis is singular (|det| = {:.3e})",
                det.abs()
            )));
        }
        let gram = basis.transpose() * &basis;
        // Gram matrix must be symmetric positive definite; the determinant
        // guard above makes definiteness a cheap Cholesky check.
        if gram.clone().cholesky().is_none() {
            return Err(Error::invalid("lattice Gram matrix is not positive definite"));
        }
        Ok(Lattice { basis })
    }

    /// Unit cubic lattice ℤ^n.
    pub fn cubic(n: usize) -> Self {
        Lattice { basis: DMatrix::identity(n, n) }
    }

    /// The zero-dimensional lattice (trivial compact factor).
    pub fn trivial() -> Self {
        Lattice { basis: DMatrix::zeros(0, 0) }
    }

    pub fn dimension(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    /// Gram matrix Bᵀ·B of the basis.
    pub fn gram(&self) -> DMatrix<f64> {
        self.basis.transpose() * &self.basis
    }

    /// Gram matrix of the dual basis, (BᵀB)⁻¹. Dual vectors are carried in
    /// integer dual coordinates ζ; their squared Euclidean norm is ζᵀG*ζ.
    pub fn dual_gram(&self) -> DMatrix<f64> {
        let n = self.dimension();
        if n == 0 {
            return DMatrix::zeros(0, 0);
        }
        self.gram()
            .try_inverse()
            .expect("validated lattice has invertible Gram matrix")
    }

    /// Squared Euclidean norm of the dual vector with integer dual
    /// coordinates `zeta`.
    pub fn dual_norm_sq(&self, zeta: &[i64], dual_gram: &DMatrix<f64>) -> f64 {
        let n = self.dimension();
        let mut q = 0.0;
        for i in 0..n {
            for j in 0..n {
                q += zeta[i] as f64 * dual_gram[(i, j)] * zeta[j] as f64;
            }
        }
        q
    }

    /// Operator 2-norm of the basis (largest singular value), used for the
    /// rigorous enumeration box bound.
    pub fn basis_norm(&self) -> f64 {
        let n = self.dimension();
        if n == 0 {
            return 0.0;
        }
        let eig = self.gram().symmetric_eigen();
        eig.eigenvalues.iter().fold(0.0f64, |a, &b| a.max(b)).sqrt()
    }
}
