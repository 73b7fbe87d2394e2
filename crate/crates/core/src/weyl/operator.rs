//! Symmetric nonnegative sparse operators in compressed-row form.

use num_complex::Complex64;

use crate::error::Error;
use crate::Result;

/// A symmetric sparse matrix with a build-time nonnegativity check. The
/// stored data is the full (both-triangles) pattern; symmetry is validated
/// entry by entry, bit-exact.
#[derive(Debug, Clone)]
pub struct SparseOperator {
    dim: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
    /// Conservative lower bound on the smallest eigenvalue (≥ 0 once the
    /// build-time check has passed).
    nonneg_shift: f64,
}

impl SparseOperator {
    /// Builds from coordinate triplets. Both triangles may be given (they
    /// must then match exactly); entries present in only one triangle are
    /// mirrored. Duplicate coordinates are rejected.
    pub fn from_triplets(dim: usize, triplets: &[(usize, usize, f64)]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("operator dimension must be positive"));
        }
        let mut entries: std::collections::BTreeMap<(usize, usize), f64> =
            std::collections::BTreeMap::new();
        for &(r, c, v) in triplets {
            if r >= dim || c >= dim {
                return Err(Error::invalid(format!(
                    "entry ({r},{c}) out of range for dimension {dim}"
                )));
            }
            if !v.is_finite() {
                return Err(Error::invalid(format!("entry ({r},{c}) is not finite")));
            }
            if entries.insert((r, c), v).is_some() {
                return Err(Error::invalid(format!("duplicate entry at ({r},{c})")));
            }
        }
        // symmetry: mirror or match exactly as stored
        let keys: Vec<(usize, usize)> = entries.keys().copied().collect();
        for (r, c) in keys {
            let v = entries[&(r, c)];
            match entries.get(&(c, r)) {
                Some(&w) => {
                    if w.to_bits() != v.to_bits() {
                        return Err(Error::invalid(format!(
                            "asymmetric entries at ({r},{c}): {v} vs {w}"
                        )));
                    }
                }
                None => {
                    entries.insert((c, r), v);
                }
            }
        }

        let mut row_ptr = vec![0usize; dim + 1];
        for &(r, _) in entries.keys() {
            row_ptr[r + 1] += 1;
        }
        for i in 0..dim {
            row_ptr[i + 1] += row_ptr[i];
        }
        let nnz = entries.len();
        let mut col_idx = Vec::with_capacity(nnz);
        let mut values = Vec::with_capacity(nnz);
        // BTreeMap iterates (r,c) sorted, matching the CSR layout
        for ((_, c), v) in entries {
            col_idx.push(c);
            values.push(v);
        }

        let op = SparseOperator { dim, row_ptr, col_idx, values, nonneg_shift: 0.0 };
        op.check_nonnegative()?;
        Ok(op)
    }

    /// Diagonal operator.
    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        let triplets: Vec<(usize, usize, f64)> =
            diag.iter().enumerate().map(|(i, &v)| (i, i, v)).collect();
        SparseOperator::from_triplets(diag.len(), &triplets)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn nonneg_shift(&self) -> f64 {
        self.nonneg_shift
    }

    /// Iterates stored entries in CSR order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.dim).flat_map(move |r| {
            (self.row_ptr[r]..self.row_ptr[r + 1])
                .map(move |k| (r, self.col_idx[k], self.values[k]))
        })
    }

    /// y = H·x (real).
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dim);
        for r in 0..self.dim {
            let mut acc = 0.0;
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.values[k] * x[self.col_idx[k]];
            }
            y[r] = acc;
        }
    }

    /// y = H·x (complex input, real operator).
    pub fn apply_complex(&self, x: &[Complex64], y: &mut [Complex64]) {
        debug_assert_eq!(x.len(), self.dim);
        for r in 0..self.dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += x[self.col_idx[k]] * self.values[k];
            }
            y[r] = acc;
        }
    }

    /// Rayleigh quotient ⟨Hx,x⟩/⟨x,x⟩ of a real vector.
    pub fn rayleigh(&self, x: &[f64]) -> f64 {
        let mut hx = vec![0.0; self.dim];
        self.apply(x, &mut hx);
        let num: f64 = hx.iter().zip(x).map(|(a, b)| a * b).sum();
        let den: f64 = x.iter().map(|v| v * v).sum();
        num / den
    }

    /// Gershgorin bounds (lower, upper) on the spectrum.
    pub fn gershgorin_bounds(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for r in 0..self.dim {
            let mut diag = 0.0;
            let mut off = 0.0;
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                if self.col_idx[k] == r {
                    diag = self.values[k];
                } else {
                    off += self.values[k].abs();
                }
            }
            lo = lo.min(diag - off);
            hi = hi.max(diag + off);
        }
        if self.dim == 0 {
            (0.0, 0.0)
        } else {
            (lo, hi)
        }
    }

    /// Upper bound on ‖H‖₂ from the Gershgorin disks.
    pub fn norm_bound(&self) -> f64 {
        let (lo, hi) = self.gershgorin_bounds();
        lo.abs().max(hi.abs())
    }

    /// Build-time nonnegativity check: a short Lanczos run (full
    /// reorthogonalization) must not produce a Ritz value below
    /// −1e-9·‖H‖. Lanczos resolves spectrum edges first, so a genuinely
    /// negative operator is caught here.
    fn check_nonnegative(&self) -> Result<()> {
        let norm = self.norm_bound();
        if norm == 0.0 {
            return Ok(()); // zero operator
        }
        let theta = self.lanczos_smallest_ritz(60.min(self.dim));
        if theta < -1e-9 * norm {
            return Err(Error::invalid(format!(
                "operator is not nonnegative: Lanczos probe found eigenvalue ≈ {theta:.6e}"
            )));
        }
        Ok(())
    }

    /// Smallest Ritz value from an m-step Lanczos run with full
    /// reorthogonalization and a deterministic start vector.
    pub fn lanczos_smallest_ritz(&self, m: usize) -> f64 {
        let n = self.dim;
        let m = m.min(n).max(1);
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(m);
        let mut v = deterministic_unit_vector(n, 0x5eed);
        let mut alphas = Vec::with_capacity(m);
        let mut betas = Vec::with_capacity(m);
        let mut w = vec![0.0; n];
        for step in 0..m {
            self.apply(&v, &mut w);
            let alpha: f64 = w.iter().zip(&v).map(|(a, b)| a * b).sum();
            alphas.push(alpha);
            for (wi, vi) in w.iter_mut().zip(&v) {
                *wi -= alpha * vi;
            }
            if let Some(prev) = basis.last() {
                let beta_prev: f64 = *betas.last().unwrap();
                for (wi, pi) in w.iter_mut().zip(prev) {
                    *wi -= beta_prev * pi;
                }
            }
            // full reorthogonalization
            for b in &basis {
                let c: f64 = w.iter().zip(b).map(|(a, x)| a * x).sum();
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= c * bi;
                }
            }
            let c: f64 = w.iter().zip(&v).map(|(a, x)| a * x).sum();
            for (wi, vi) in w.iter_mut().zip(&v) {
                *wi -= c * vi;
            }
            basis.push(v.clone());
            let beta = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            if step + 1 == m || beta < 1e-300 {
                break;
            }
            betas.push(beta);
            for (vi, wi) in v.iter_mut().zip(&w) {
                *vi = wi / beta;
            }
        }
        let k = alphas.len();
        let mut t = nalgebra::DMatrix::<f64>::zeros(k, k);
        for i in 0..k {
            t[(i, i)] = alphas[i];
            if i + 1 < k {
                t[(i, i + 1)] = betas[i];
                t[(i + 1, i)] = betas[i];
            }
        }
        t.symmetric_eigen()
            .eigenvalues
            .iter()
            .fold(f64::INFINITY, |a, &b| a.min(b))
    }
}

/// Deterministic generic-direction unit vector (splitmix-style hashing),
/// used to seed iterative probes reproducibly.
pub fn deterministic_unit_vector(n: usize, seed: u64) -> Vec<f64> {
    let mut state = seed ^ 0x9e3779b97f4a7c15;
    let mut v: Vec<f64> = (0..n)
        .map(|_| {
            state = state.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z ^= z >> 31;
            (z as f64 / u64::MAX as f64) - 0.5
        })
        .collect();
    // bias toward the constant direction: low modes matter most below
    for x in v.iter_mut() {
        *x += 1.0;
    }
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in v.iter_mut() {
        *x /= norm;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetry_is_enforced_bit_exactly() {
        let ok = SparseOperator::from_triplets(
            2,
            &[(0, 0, 2.0), (1, 1, 2.0), (0, 1, 1.0), (1, 0, 1.0 + 1e-17)],
        );
        assert!(ok.is_ok()); // 1.0 + 1e-17 rounds to 1.0 in f64
        let err = SparseOperator::from_triplets(
            2,
            &[(0, 0, 2.0), (1, 1, 2.0), (0, 1, 1.0), (1, 0, 1.5)],
        );
        assert!(err.is_err());
    }

    #[test]
    fn one_triangle_is_mirrored() {
        let h = SparseOperator::from_triplets(2, &[(0, 0, 2.0), (0, 1, -1.0), (1, 1, 2.0)])
            .unwrap();
        let mut y = vec![0.0; 2];
        h.apply(&[1.0, 0.0], &mut y);
        assert_eq!(y, vec![2.0, -1.0]);
        h.apply(&[0.0, 1.0], &mut y);
        assert_eq!(y, vec![-1.0, 2.0]);
    }

    #[test]
    fn negative_operator_is_rejected() {
        let err = SparseOperator::from_diagonal(&[1.0, -0.5, 2.0]);
        assert!(err.is_err());
    }

    #[test]
    fn tiny_negative_noise_is_tolerated() {
        // within the -1e-9·norm allowance
        let h = SparseOperator::from_diagonal(&[1.0, -1e-12, 2.0]);
        assert!(h.is_ok());
    }

    #[test]
    fn gershgorin_bounds_bracket_diagonal() {
        let h = SparseOperator::from_diagonal(&[0.0, 3.0, 7.0]).unwrap();
        assert_eq!(h.gershgorin_bounds(), (0.0, 7.0));
        assert_eq!(h.norm_bound(), 7.0);
    }
}
