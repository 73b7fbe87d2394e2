//! Form spectra of compact flat manifolds by dual-lattice enumeration and
//! holonomy averaging.
//!
//! Eigenforms of the flat torus are `e^{2πi⟨w,x⟩}·ξ` with w a dual-lattice
//! vector and ξ a constant l-covector; the eigenvalue is `4π²|w|²/scale²`.
//! Passing to a Bieberbach quotient keeps exactly the holonomy-invariant
//! combinations, whose dimension per orbit is computed by the group
//! averaging projector below.

use std::collections::BTreeSet;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::Error;
use crate::flat::intmat::exterior_trace;
use crate::flat::lattice::Lattice;
use crate::flat::manifold::FlatManifold;
use crate::Result;

/// Relative tolerance when merging dual-vector norms into table rows. The
/// norms are exact quadratic forms of integers; this only absorbs floating
/// summation noise.
const EIGENVALUE_MERGE_REL_TOL: f64 = 1e-9;
/// The averaged trace must be this close to an integer, else we signal a
/// convention bug.
const TRACE_INTEGER_TOL: f64 = 1e-6;
/// Default cap on enumerated dual vectors.
pub const DEFAULT_VECTOR_BUDGET: usize = 10_000_000;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;
const FOUR_PI_SQ: f64 = 4.0 * std::f64::consts::PI * std::f64::consts::PI;

/// Per-degree table of (eigenvalue, multiplicity) rows, complete up to the
/// stated cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    pub degree: usize,
    /// Strictly increasing eigenvalues with positive multiplicities.
    pub rows: Vec<(f64, usize)>,
    /// Every eigenvalue ≤ cutoff is guaranteed present.
    pub cutoff: f64,
}

impl SpectrumTable {
    /// Multiplicity at eigenvalue 0, i.e. the Betti number in this degree.
    pub fn harmonic_multiplicity(&self) -> usize {
        match self.rows.first() {
            Some(&(ev, mult)) if ev == 0.0 => mult,
            _ => 0,
        }
    }

    /// Smallest listed eigenvalue, if any row exists.
    pub fn bottom(&self) -> Option<f64> {
        self.rows.first().map(|&(ev, _)| ev)
    }
}

/// Enumerates every dual-lattice vector w (integer dual coordinates) with
/// `4π²|w|² ≤ lambda_max`, each exactly once, including w = 0.
///
/// The integer search box is bounded rigorously: `|ζ| ≤ |B^{-T}ζ|·‖B‖₂`,
/// so coordinates range over `|ζ_i| ≤ √(lambda_max)/(2π)·‖B‖₂`.
pub fn enumerate_dual_vectors(
    lattice: &Lattice,
    lambda_max: f64,
    budget: usize,
) -> Result<Vec<Vec<i64>>> {
    if !(lambda_max >= 0.0) {
        return Err(Error::invalid("lambda_max must be nonnegative"));
    }
    let n = lattice.dimension();
    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    let radius_sq = lambda_max / FOUR_PI_SQ;
    let box_radius = (radius_sq.sqrt() * lattice.basis_norm()).floor() as i128;
    let side = 2 * box_radius as u128 + 1;
    let mut box_count: u128 = 1;
    for _ in 0..n {
        box_count = box_count.saturating_mul(side);
        if box_count > budget as u128 {
            return Err(Error::resource(format!(
                "dual-vector enumeration box of {side}^{n} points exceeds budget {budget}"
            )));
        }
    }

    let dual_gram = lattice.dual_gram();
    let r = box_radius as i64;
    let mut out: Vec<Vec<i64>> = Vec::new();
    let mut zeta = vec![-r; n];
    let bound = radius_sq * (1.0 + 1e-12) + 1e-300;
    'outer: loop {
        let q = lattice.dual_norm_sq(&zeta, &dual_gram);
        if q <= bound {
            out.push(zeta.clone());
            if out.len() > budget {
                return Err(Error::resource(format!(
                    "dual-vector count exceeds budget {budget}"
                )));
            }
        }
        // odometer increment
        for i in (0..n).rev() {
            if zeta[i] < r {
                zeta[i] += 1;
                continue 'outer;
            }
            zeta[i] = -r;
        }
        break;
    }
    // canonical order for deterministic downstream grouping
    out.sort();
    Ok(out)
}

/// A full holonomy orbit of dual vectors sharing one norm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualOrbit {
    pub vectors: Vec<Vec<i64>>,
}

fn act_on_dual(rotation: &nalgebra::DMatrix<i64>, zeta: &[i64]) -> Vec<i64> {
    // frequency pullback: ζ ↦ Mᵀ ζ in integer dual coordinates
    let n = zeta.len();
    (0..n)
        .map(|c| (0..n).map(|r| rotation[(r, c)] * zeta[r]).sum())
        .collect()
}

/// Partitions a set of dual vectors into holonomy orbits (deterministic:
/// orbits keyed by their lexicographically smallest member).
pub fn holonomy_orbits(manifold: &FlatManifold, vectors: &[Vec<i64>]) -> Vec<DualOrbit> {
    let mut remaining: BTreeSet<Vec<i64>> = vectors.iter().cloned().collect();
    let mut orbits = Vec::new();
    while let Some(seed) = remaining.iter().next().cloned() {
        let mut orbit: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut frontier = vec![seed];
        while let Some(z) = frontier.pop() {
            if !orbit.insert(z.clone()) {
                continue;
            }
            for g in manifold.holonomy() {
                let w = act_on_dual(g.rotation(), &z);
                if !orbit.contains(&w) {
                    frontier.push(w);
                }
            }
        }
        for z in &orbit {
            remaining.remove(z);
        }
        orbits.push(DualOrbit { vectors: orbit.into_iter().collect() });
    }
    orbits
}

/// Dimension of the holonomy-invariant subspace of
/// `span{ e^{2πi⟨w,x⟩}·ξ : w ∈ orbit, ξ ∈ Λ^l }`, by averaging the trace of
/// the group action:
///
/// `(1/|G|) · Σ_g tr(Λ^l M_g) · Σ_{ζ ∈ orbit, M_gᵀζ = ζ} e^{2πi ζ·τ_g}`.
///
/// Each element permutes the frequencies by ζ ↦ Mᵀζ and twists fixed ones
/// by the phase `e^{2πi⟨ζ, τ⟩}`; the coefficient action on Λ^l contributes
/// its exterior trace. The result must be a nonnegative integer up to
/// floating noise.
pub fn invariant_multiplicity(
    manifold: &FlatManifold,
    degree: usize,
    orbit: &DualOrbit,
) -> Result<usize> {
    let n = manifold.dimension();
    if degree > n {
        return Err(Error::invalid("form degree exceeds dimension"));
    }
    if orbit.vectors.is_empty() {
        return Err(Error::invalid("empty dual orbit"));
    }
    // the orbit must be closed under the holonomy action
    let members: BTreeSet<&Vec<i64>> = orbit.vectors.iter().collect();
    for z in &orbit.vectors {
        for g in manifold.holonomy() {
            if !members.contains(&act_on_dual(g.rotation(), z)) {
                return Err(Error::invalid("vector set is not a full holonomy orbit"));
            }
        }
    }

    let mut acc = Complex64::new(0.0, 0.0);
    for g in manifold.holonomy() {
        let chi = exterior_trace(g.rotation(), degree) as f64;
        if chi == 0.0 {
            continue;
        }
        let mut fixed_phase = Complex64::new(0.0, 0.0);
        for z in &orbit.vectors {
            if act_on_dual(g.rotation(), z) == *z {
                let angle: f64 = z
                    .iter()
                    .zip(g.translation().iter())
                    .map(|(&zi, &ti)| zi as f64 * ti)
                    .sum::<f64>()
                    * TWO_PI;
                fixed_phase += Complex64::from_polar(1.0, angle);
            }
        }
        acc += chi * fixed_phase;
    }
    acc /= manifold.holonomy().len() as f64;

    if acc.im.abs() > 1e-8 {
        return Err(Error::consistency(format!(
            "averaged trace has imaginary part {:.3e}",
            acc.im
        )));
    }
    let rounded = acc.re.round();
    if (acc.re - rounded).abs() > TRACE_INTEGER_TOL || rounded < -0.5 {
        return Err(Error::consistency(format!(
            "averaged trace {:.12} is not a nonnegative integer",
            acc.re
        )));
    }
    Ok(rounded.max(0.0) as usize)
}

/// Full l-form spectrum of the manifold up to the cutoff: eigenvalues are
/// `4π²|w|²/scale²` and multiplicities sum the invariant dimensions of the
/// holonomy orbits at each norm. Rows with multiplicity zero are dropped.
pub fn form_spectrum(
    manifold: &FlatManifold,
    degree: usize,
    lambda_max: f64,
) -> Result<SpectrumTable> {
    form_spectrum_with_budget(manifold, degree, lambda_max, DEFAULT_VECTOR_BUDGET)
}

pub fn form_spectrum_with_budget(
    manifold: &FlatManifold,
    degree: usize,
    lambda_max: f64,
    budget: usize,
) -> Result<SpectrumTable> {
    let n = manifold.dimension();
    if degree > n {
        return Err(Error::invalid(format!(
            "degree {degree} out of range for dimension {n}"
        )));
    }
    let scale_sq = manifold.scale() * manifold.scale();
    // enumerate in the unscaled lattice: the metric scale divides eigenvalues
    let vectors = enumerate_dual_vectors(manifold.lattice(), lambda_max * scale_sq, budget)?;

    // group vectors into norm shells (exact quadratic forms; relative
    // tolerance only absorbs summation noise)
    let dual_gram = manifold.lattice().dual_gram();
    let mut with_norms: Vec<(f64, Vec<i64>)> = vectors
        .into_iter()
        .map(|z| (manifold.lattice().dual_norm_sq(&z, &dual_gram), z))
        .collect();
    with_norms.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));

    let mut shells: Vec<(f64, Vec<Vec<i64>>)> = Vec::new();
    for (q, z) in with_norms {
        match shells.last_mut() {
            Some((q0, list)) if (q - *q0).abs() <= EIGENVALUE_MERGE_REL_TOL * q0.max(1e-300) => {
                list.push(z)
            }
            _ => shells.push((q, vec![z])),
        }
    }

    // per-shell orbit multiplicities; shells are independent tasks
    let rows: Result<Vec<(f64, usize)>> = shells
        .par_iter()
        .map(|(q, shell)| {
            let mut mult = 0usize;
            for orbit in holonomy_orbits(manifold, shell) {
                mult += invariant_multiplicity(manifold, degree, &orbit)?;
            }
            Ok((FOUR_PI_SQ * q / scale_sq, mult))
        })
        .collect();
    let rows: Vec<(f64, usize)> = rows?
        .into_iter()
        .filter(|&(_, mult)| mult > 0)
        .collect();

    Ok(SpectrumTable { degree, rows, cutoff: lambda_max })
}

/// Smallest eigenvalue of the Laplacian on l-forms.
///
/// Harmonic degrees (b_l > 0) return 0 immediately. Otherwise the cutoff
/// doubles from a lattice-scaled start until a row appears; any row found
/// below the running cutoff is a certified minimum because the table is
/// complete up to the cutoff.
pub fn lambda_o(manifold: &FlatManifold, degree: usize) -> Result<f64> {
    lambda_o_with_budget(manifold, degree, DEFAULT_VECTOR_BUDGET)
}

pub fn lambda_o_with_budget(
    manifold: &FlatManifold,
    degree: usize,
    budget: usize,
) -> Result<f64> {
    let n = manifold.dimension();
    if degree > n {
        return Err(Error::invalid(format!(
            "degree {degree} out of range for dimension {n}"
        )));
    }
    if manifold.betti(degree) > 0 {
        return Ok(0.0);
    }
    // first nonzero eigenvalue is ≥ 4π²·λ_min(G*)/scale²; start there
    let dual_gram = manifold.lattice().dual_gram();
    let min_dual = dual_gram
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .fold(f64::INFINITY, |a, &b| a.min(b))
        .max(1e-300);
    let mut cutoff = FOUR_PI_SQ * min_dual / (manifold.scale() * manifold.scale());
    loop {
        let table = form_spectrum_with_budget(manifold, degree, cutoff, budget)?;
        if let Some(bottom) = table.bottom() {
            return Ok(bottom);
        }
        cutoff *= 2.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flat::catalog;

    #[test]
    fn unit_line_enumeration_boundaries() {
        let lat = Lattice::cubic(1);
        let v = enumerate_dual_vectors(&lat, 0.0, 1000).unwrap();
        assert_eq!(v, vec![vec![0]]);
        let v = enumerate_dual_vectors(&lat, FOUR_PI_SQ, 1000).unwrap();
        assert_eq!(v, vec![vec![-1], vec![0], vec![1]]);
    }

    #[test]
    fn unit_square_shells() {
        let lat = Lattice::cubic(2);
        let v = enumerate_dual_vectors(&lat, 2.0 * FOUR_PI_SQ, 1000).unwrap();
        assert_eq!(v.len(), 9);
        let g = lat.dual_gram();
        let mut norm1 = 0;
        let mut norm2 = 0;
        for z in &v {
            let q = lat.dual_norm_sq(z, &g).round() as i64;
            match q {
                0 => {}
                1 => norm1 += 1,
                2 => norm2 += 1,
                other => panic!("unexpected shell {other}"),
            }
        }
        assert_eq!((norm1, norm2), (4, 4));
    }

    #[test]
    fn budget_is_enforced() {
        let lat = Lattice::cubic(3);
        let err = enumerate_dual_vectors(&lat, 1e9, 1000);
        assert!(matches!(err, Err(Error::Resource(_))));
    }

    #[test]
    fn torus_zero_orbit_multiplicity_is_binomial() {
        for n in 1..=4 {
            let t = catalog::torus(n).unwrap();
            let orbit = DualOrbit { vectors: vec![vec![0; n]] };
            for l in 0..=n {
                assert_eq!(
                    invariant_multiplicity(&t, l, &orbit).unwrap(),
                    crate::flat::intmat::binomial(n, l)
                );
            }
        }
    }

    #[test]
    fn hantzsche_wendt_zero_orbit_matches_betti() {
        let hw = catalog::hantzsche_wendt().unwrap();
        let orbit = DualOrbit { vectors: vec![vec![0, 0, 0]] };
        assert_eq!(invariant_multiplicity(&hw, 1, &orbit).unwrap(), 0);
        assert_eq!(invariant_multiplicity(&hw, 0, &orbit).unwrap(), 1);
        assert_eq!(invariant_multiplicity(&hw, 3, &orbit).unwrap(), 1);
    }

    #[test]
    fn partial_orbit_is_rejected() {
        let hw = catalog::hantzsche_wendt().unwrap();
        let orbit = DualOrbit { vectors: vec![vec![1, 0, 0]] }; // misses -e1
        assert!(invariant_multiplicity(&hw, 0, &orbit).is_err());
    }

    #[test]
    fn circle_function_spectrum() {
        let t1 = catalog::torus(1).unwrap();
        let table = form_spectrum(&t1, 0, FOUR_PI_SQ).unwrap();
        assert_eq!(table.rows.len(), 2);
        assert_eq!(table.rows[0], (0.0, 1));
        assert!((table.rows[1].0 - FOUR_PI_SQ).abs() < 1e-12);
        assert_eq!(table.rows[1].1, 2);
    }

    #[test]
    fn torus3_one_forms_at_zero_cutoff() {
        let t3 = catalog::torus(3).unwrap();
        let table = form_spectrum(&t3, 1, 0.0).unwrap();
        assert_eq!(table.rows, vec![(0.0, 3)]);
    }

    #[test]
    fn hantzsche_wendt_two_forms_have_no_zero_row() {
        let hw = catalog::hantzsche_wendt().unwrap();
        let table = form_spectrum(&hw, 2, 0.0).unwrap();
        assert!(table.rows.is_empty());
    }

    #[test]
    fn lambda_o_harmonic_degrees_are_zero() {
        let t3 = catalog::torus(3).unwrap();
        assert_eq!(lambda_o(&t3, 0).unwrap(), 0.0);
        assert_eq!(lambda_o(&t3, 2).unwrap(), 0.0);
        let hw = catalog::hantzsche_wendt().unwrap();
        assert_eq!(lambda_o(&hw, 0).unwrap(), 0.0);
    }

    #[test]
    fn hantzsche_wendt_one_form_gap() {
        let hw = catalog::hantzsche_wendt().unwrap();
        let v = lambda_o(&hw, 1).unwrap();
        assert!(v > 0.0);
        // duality: degree 2 sees the same bottom, exactly
        assert_eq!(v, lambda_o(&hw, 2).unwrap());
    }
}
