//! Shared oracle helpers for the integration suites.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use formspectra::weyl::SparseOperator;

/// Dense symmetric eigendecomposition with a reconstruction self-check.
/// The QR iteration occasionally stalls on unlucky matrices; a random
/// Givens similarity (an exact isospectral transform) reroutes it. Panics
/// if no attempt produces a verified decomposition.
pub fn checked_symmetric_eigen(m: &DMatrix<f64>, seed: u64) -> (Vec<f64>, DMatrix<f64>) {
    let n = m.nrows();
    let norm = m.norm().max(1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xE16E);
    let mut rot = DMatrix::<f64>::identity(n, n);
    for _attempt in 0..12 {
        let rotated = rot.transpose() * m * &rot;
        let eig = rotated.clone().symmetric_eigen();
        let recon = &eig.eigenvectors
            * DMatrix::from_diagonal(&eig.eigenvalues)
            * eig.eigenvectors.transpose();
        if (&recon - &rotated).norm() <= 1e-9 * norm {
            let vectors = &rot * &eig.eigenvectors;
            return (eig.eigenvalues.iter().copied().collect(), vectors);
        }
        let i = rng.gen_range(0..n);
        let j = (i + 1 + rng.gen_range(0..n - 1)) % n;
        let theta: f64 = rng.gen_range(0.1..1.4);
        let (c, s) = (theta.cos(), theta.sin());
        let mut g = DMatrix::<f64>::identity(n, n);
        g[(i, i)] = c;
        g[(j, j)] = c;
        g[(i, j)] = -s;
        g[(j, i)] = s;
        rot *= g;
    }
    panic!("dense eigen oracle failed a verified decomposition after retries");
}

/// Distance from λ to the verified dense spectrum of H.
pub fn true_distance(h: &SparseOperator, lambda: f64, seed: u64) -> f64 {
    let n = h.dim();
    let mut m = DMatrix::zeros(n, n);
    for (r, c, v) in h.entries() {
        m[(r, c)] = v;
    }
    let (values, _) = checked_symmetric_eigen(&m, seed);
    values
        .iter()
        .map(|&t| (t - lambda).abs())
        .fold(f64::INFINITY, f64::min)
}

/// Random symmetric diagonally dominant (hence nonnegative) sparse matrix.
pub fn random_sparse_spd(rng: &mut ChaCha8Rng, n: usize) -> SparseOperator {
    let mut diag: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..4.0)).collect();
    let mut off = Vec::new();
    let pairs = rng.gen_range(n / 2..2 * n);
    let mut used = std::collections::BTreeSet::new();
    for _ in 0..pairs {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let (a, b) = (i.min(j), i.max(j));
        if !used.insert((a, b)) {
            continue;
        }
        let v: f64 = rng.gen_range(-0.5..0.5);
        off.push((a, b, v));
        diag[a] += v.abs();
        diag[b] += v.abs();
    }
    let mut triplets: Vec<(usize, usize, f64)> =
        diag.into_iter().enumerate().map(|(i, v)| (i, i, v)).collect();
    triplets.extend(off);
    SparseOperator::from_triplets(n, &triplets).unwrap()
}

/// Random complex unit vector.
pub fn random_unit_complex(rng: &mut ChaCha8Rng, n: usize) -> Vec<num_complex::Complex64> {
    let mut v: Vec<num_complex::Complex64> = (0..n)
        .map(|_| num_complex::Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in v.iter_mut() {
        *z /= norm;
    }
    v
}
