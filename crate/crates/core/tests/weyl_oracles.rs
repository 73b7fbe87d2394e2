//! Dense-matrix oracles and property trials for the certification engine.

mod common;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{checked_symmetric_eigen, random_sparse_spd, random_unit_complex};
use formspectra::weyl::{
    annulus_certify, certify_distance, componentwise_operator, criterion_constants,
    evaluate_criterion, plane_wave_test_function, wedge_test_form, AnnulusConfig, GridDomain,
    SparseOperator, WeylConfig,
};

fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn dense_of(h: &SparseOperator) -> DMatrix<f64> {
    let n = h.dim();
    let mut m = DMatrix::zeros(n, n);
    for (r, c, v) in h.entries() {
        m[(r, c)] = v;
    }
    m
}

#[test]
fn pairings_match_dense_eigendecomposition() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for trial in 0..25 {
        let n = 50;
        let h = random_sparse_spd(&mut rng, n);
        let psi = random_unit_complex(&mut rng, n);
        let lambda: f64 = rng.gen_range(0.0..5.0);
        let alpha = 1.0;
        let eval = evaluate_criterion(&h, &psi, lambda, alpha, &WeylConfig::default()).unwrap();

        let dense = dense_of(&h);
        let (values, vectors) = checked_symmetric_eigen(&dense, trial as u64);
        // spectral sums over |⟨v_i, ψ⟩|²
        let mut q1 = 0.0;
        let mut q2 = 0.0;
        let mut f_pairing = 0.0;
        for (i, &theta) in values.iter().enumerate() {
            let mut proj = Complex64::new(0.0, 0.0);
            for r in 0..n {
                proj += c64(vectors[(r, i)]).conj() * psi[r];
            }
            let w = proj.norm_sqr();
            q1 += w * (theta - lambda) / (theta + alpha);
            q2 += w * (theta - lambda) / (theta + alpha).powi(2);
            f_pairing += w * ((theta - lambda) / (theta + alpha)).powi(2);
        }
        assert!((eval.q1 - q1).abs() < 1e-8, "trial {trial}: q1 {} vs {}", eval.q1, q1);
        assert!((eval.q2 - q2).abs() < 1e-8, "trial {trial}: q2 {} vs {}", eval.q2, q2);
        assert!(
            (eval.f_pairing - f_pairing).abs() < 1e-8,
            "trial {trial}: f {} vs {}",
            eval.f_pairing,
            f_pairing
        );
    }
}

#[test]
fn soundness_on_random_diagonals() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for trial in 0..300 {
        let n = rng.gen_range(2..40);
        let diag: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..10.0)).collect();
        let h = SparseOperator::from_diagonal(&diag).unwrap();
        let psi = random_unit_complex(&mut rng, n);
        let lambda: f64 = rng.gen_range(0.0..8.0);
        let alpha: f64 = [0.5, 1.0, 2.0][rng.gen_range(0..3)];
        let eval = evaluate_criterion(&h, &psi, lambda, alpha, &WeylConfig::default()).unwrap();
        let db = certify_distance(eval.q1, eval.q2, lambda, alpha).unwrap();
        if db.informative {
            let dist = diag
                .iter()
                .map(|&t| (t - lambda).abs())
                .fold(f64::INFINITY, f64::min);
            assert!(
                dist <= db.bound + 1e-9 * (1.0 + db.bound),
                "trial {trial}: dist {dist} exceeds bound {}",
                db.bound
            );
        }
    }
}

#[test]
fn forward_direction_near_eigenvalues() {
    // dist(λ, σ(H)) < δ/c₀ must give pairings within δ for the nearest
    // eigenvector
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let n = rng.gen_range(2..30);
        let diag: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..6.0)).collect();
        let h = SparseOperator::from_diagonal(&diag).unwrap();
        let alpha: f64 = [0.5, 1.0, 2.0][rng.gen_range(0..3)];
        let delta: f64 = rng.gen_range(1e-6..0.5);
        let idx = rng.gen_range(0..n);
        let theta = diag[idx];
        let c = criterion_constants(theta, alpha).unwrap();
        // place λ strictly inside the δ/c₀ window around θ (λ ≥ 0)
        let shift = rng.gen_range(-1.0..1.0) * 0.99 * delta / c.c0;
        let lambda = (theta + shift).max(0.0);
        let mut psi = vec![c64(0.0); n];
        psi[idx] = c64(1.0);
        let eval = evaluate_criterion(&h, &psi, lambda, alpha, &WeylConfig::default()).unwrap();
        assert!(
            eval.q1.abs() <= delta + 1e-10 && eval.q2.abs() <= delta + 1e-10,
            "θ = {theta}, λ = {lambda}: |q| = ({}, {}) vs δ = {delta}",
            eval.q1.abs(),
            eval.q2.abs()
        );
    }
}

#[test]
fn splitting_inequalities_and_equality_patterns() {
    let lambda = 1.5;
    let alpha = 1.0;
    let c = criterion_constants(lambda, alpha).unwrap();
    let cfg = WeylConfig::default();

    // two atoms straddling λ at distance ε, spectral mass x below
    for &eps in &[0.2, 0.5, 1.0] {
        for &x in &[0.0f64, 0.25, 0.5, 0.75, 1.0] {
            let h = SparseOperator::from_diagonal(&[lambda - eps, lambda + eps]).unwrap();
            let psi = vec![c64(x.sqrt()), c64((1.0 - x).sqrt())];
            let eval = evaluate_criterion(&h, &psi, lambda, alpha, &cfg).unwrap();
            assert!(
                eval.f_pairing >= c.c1 * eps * eps * x - 1e-9,
                "f-pairing splitting failed at ε = {eps}, x = {x}"
            );
            assert!(
                eval.q1 >= c.c2 * eps * (1.0 - x) - c.c3 * x - 1e-9,
                "g-pairing splitting failed at ε = {eps}, x = {x}"
            );
        }
    }

    // equality patterns: pure low atom at t = λ−ε makes the f-inequality
    // tight as ε → 0
    let mut prev_ratio = f64::INFINITY;
    for &eps in &[0.4, 0.2, 0.1, 0.05] {
        let h = SparseOperator::from_diagonal(&[lambda - eps, lambda + eps]).unwrap();
        let psi = vec![c64(1.0), c64(0.0)];
        let eval = evaluate_criterion(&h, &psi, lambda, alpha, &cfg).unwrap();
        let ratio = eval.f_pairing / (c.c1 * eps * eps);
        assert!(ratio >= 1.0 - 1e-9);
        assert!(ratio <= prev_ratio + 1e-12);
        prev_ratio = ratio;
    }
    assert!(prev_ratio < 1.2, "ratio should approach 1, got {prev_ratio}");

    // mass exactly at t = λ+1 realizes the c₂ bound with equality
    let h = SparseOperator::from_diagonal(&[lambda + 1.0, lambda + 5.0]).unwrap();
    let psi = vec![c64(1.0), c64(0.0)];
    let eval = evaluate_criterion(&h, &psi, lambda, alpha, &cfg).unwrap();
    assert!((eval.q1 - c.c2).abs() < 1e-9);

    // mass at t = 0 (x = 1, ε = λ) realizes the −c₃ extreme exactly
    let h = SparseOperator::from_diagonal(&[0.0, lambda + 1.0]).unwrap();
    let psi = vec![c64(1.0), c64(0.0)];
    let eval = evaluate_criterion(&h, &psi, lambda, alpha, &cfg).unwrap();
    assert!((eval.q1 + c.c3).abs() < 1e-9);
}

/// Frozen from a calibration sweep over 2000 seeded trials of this very
/// generator (max observed ratio 7.4); the margin covers generator drift.
const PERTURBATION_LIPSCHITZ: f64 = 12.0;

#[test]
fn perturbation_stability_with_frozen_constant() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let n = 100;
    // shifted 1D Laplacian keeps headroom for indefinite perturbations
    let mut triplets = Vec::new();
    for i in 0..n {
        triplets.push((i, i, 2.5));
        if i + 1 < n {
            triplets.push((i, i + 1, -1.0));
        }
    }
    let h = SparseOperator::from_triplets(n, &triplets).unwrap();
    let cfg = WeylConfig::default();
    for trial in 0..200 {
        let lambda: f64 = rng.gen_range(0.0..3.0);
        let psi = random_unit_complex(&mut rng, n);
        let eval = evaluate_criterion(&h, &psi, lambda, 1.0, &cfg).unwrap();

        // random symmetric perturbation with Gershgorin norm ≤ η
        let eta: f64 = rng.gen_range(1e-4..0.1);
        let mut pert = Vec::new();
        let mut row_abs = vec![0.0f64; n];
        for _ in 0..40 {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            if i >= j {
                continue;
            }
            let v: f64 = rng.gen_range(-1.0..1.0);
            pert.push((i, j, v));
            row_abs[i] += v.abs();
            row_abs[j] += v.abs();
        }
        let norm = row_abs.iter().fold(0.0f64, |a, &b| a.max(b)).max(1e-12);
        let scale = eta / norm;
        let mut perturbed: Vec<(usize, usize, f64)> = triplets.clone();
        for (i, j, v) in pert {
            perturbed.push((i, j, v * scale));
        }
        // merge duplicate coordinates (neighbors can collide with the stencil)
        let mut merged: std::collections::BTreeMap<(usize, usize), f64> =
            std::collections::BTreeMap::new();
        for (i, j, v) in perturbed {
            *merged.entry((i, j)).or_insert(0.0) += v;
        }
        let entries: Vec<(usize, usize, f64)> =
            merged.into_iter().map(|((i, j), v)| (i, j, v)).collect();
        let hp = SparseOperator::from_triplets(n, &entries).unwrap();

        let eval_p = evaluate_criterion(&hp, &psi, lambda, 1.0, &cfg).unwrap();
        let dq = (eval_p.q1 - eval.q1).abs().max((eval_p.q2 - eval.q2).abs());
        assert!(
            dq <= PERTURBATION_LIPSCHITZ * eta,
            "trial {trial}: |Δq| = {dq} exceeds L·η = {}",
            PERTURBATION_LIPSCHITZ * eta
        );
    }
}

#[test]
fn plane_wave_q_values_shrink_with_the_cutoff_radius() {
    // 1D free Laplacian at λ = 0: the q-pairings are O(1/inner_radius)
    let spacing = 0.05;
    let mut prev = f64::INFINITY;
    for &(extent, inner) in &[(25.0, 20.0), (50.0, 40.0), (100.0, 80.0)] {
        let grid = GridDomain::new(1, spacing, extent).unwrap();
        let h = grid.laplacian().unwrap();
        let psi = plane_wave_test_function(&grid, 0.0, inner).unwrap();
        let eval = evaluate_criterion(&h, &psi, 0.0, 1.0, &WeylConfig::default()).unwrap();
        let q = eval.q1.abs().max(eval.q2.abs());
        assert!(q <= 5.0 / inner, "inner = {inner}: q = {q}");
        assert!(q < prev);
        prev = q;
    }
}

/// Empirical constant for the classical residual of the discrete plane
/// wave: ‖(H−λ)ψ‖ ≤ C(h + 1/inner_radius) at λ = 1. Measured 2.47 on the
/// reference grid; frozen with margin.
const PLANE_WAVE_RESIDUAL_CONSTANT: f64 = 4.0;

#[test]
fn plane_wave_classical_residual_bound() {
    for &(spacing, extent, inner) in &[(0.05, 50.0, 40.0), (0.02, 50.0, 40.0), (0.05, 100.0, 80.0)]
    {
        let grid = GridDomain::new(1, spacing, extent).unwrap();
        let h = grid.laplacian().unwrap();
        let psi = plane_wave_test_function(&grid, 1.0, inner).unwrap();
        let eval = evaluate_criterion(&h, &psi, 1.0, 1.0, &WeylConfig::default()).unwrap();
        assert!(
            eval.classical_residual <= PLANE_WAVE_RESIDUAL_CONSTANT * (spacing + 1.0 / inner),
            "h = {spacing}, R = {extent}: residual {}",
            eval.classical_residual
        );
    }
}

#[test]
fn wedge_form_certificates_reduce_to_the_function_case() {
    let grid = GridDomain::new(2, 0.25, 10.0).unwrap();
    let lambda = 1.0;
    let form = wedge_test_form(&grid, lambda, 1, 8.0).unwrap();
    let op = componentwise_operator(&grid, 1).unwrap();
    let eval_form =
        evaluate_criterion(&op, &form.flatten(), lambda, 1.0, &WeylConfig::default()).unwrap();

    let wave = plane_wave_test_function(&grid, lambda, 8.0).unwrap();
    let scalar_op = grid.laplacian().unwrap();
    let eval_scalar =
        evaluate_criterion(&scalar_op, &wave, lambda, 1.0, &WeylConfig::default()).unwrap();

    assert!((eval_form.q1 - eval_scalar.q1).abs() < 1e-8);
    assert!((eval_form.q2 - eval_scalar.q2).abs() < 1e-8);
    assert!((eval_form.classical_residual - eval_scalar.classical_residual).abs() < 1e-10);
}

#[test]
fn annulus_bounds_decrease_across_the_reference_radii() {
    let spacing = 0.1;
    let mut bounds = Vec::new();
    for &r in &[50.0f64, 100.0, 200.0] {
        let grid = GridDomain::new(1, spacing, r).unwrap();
        let op = grid.laplacian().unwrap();
        let lam = (2.0 - 2.0 * spacing.cos()) / (spacing * spacing); // cos(x) symbol
        let omega: Vec<Complex64> = (0..grid.node_count())
            .map(|i| c64(grid.coordinate(i, 0).cos()))
            .collect();
        let cert = annulus_certify(&grid, &op, &omega, lam, r / 2.0, &AnnulusConfig::default())
            .unwrap();
        assert!(cert.hypothesis_ok);
        bounds.push(cert.certificate.distance_bound);
    }
    assert!(bounds[1] < bounds[0]);
    assert!(bounds[2] < bounds[1]);
}
