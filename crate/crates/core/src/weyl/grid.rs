//! Uniform Euclidean grids, their truncated finite-difference Laplacians,
//! and the plane-wave test vectors used for certification. These are the
//! exact-Euclidean stand-ins for harmonic coordinates: the grid axis
//! coordinates play that role verbatim.

use num_complex::Complex64;

use crate::error::Error;
use crate::flat::intmat::{binomial, subsets};
use crate::weyl::operator::SparseOperator;
use crate::Result;

/// A symmetric uniform grid [−R, R]^d with spacing h; node coordinates are
/// exact multiples of h and the node count per axis is 2⌊R/h⌋+1.
#[derive(Debug, Clone)]
pub struct GridDomain {
    dimension: usize,
    spacing: f64,
    extent: f64,
    half: usize,
}

impl GridDomain {
    pub fn new(dimension: usize, spacing: f64, extent: f64) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::invalid("grid dimension must be positive"));
        }
        if !(spacing > 0.0) || !(extent >= spacing) {
            return Err(Error::invalid("grid needs spacing > 0 and extent ≥ spacing"));
        }
        let half = (extent / spacing).floor() as usize;
        Ok(GridDomain { dimension, spacing, extent, half })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    pub fn nodes_per_axis(&self) -> usize {
        2 * self.half + 1
    }

    pub fn node_count(&self) -> usize {
        self.nodes_per_axis().pow(self.dimension as u32)
    }

    /// Coordinate of a flat node index along one axis.
    pub fn coordinate(&self, node: usize, axis: usize) -> f64 {
        let per = self.nodes_per_axis();
        let mut rest = node;
        for _ in 0..axis {
            rest /= per;
        }
        ((rest % per) as i64 - self.half as i64) as f64 * self.spacing
    }

    /// One whole coordinate function evaluated at every node (the discrete
    /// analogue of a harmonic coordinate on this exact Euclidean chart).
    pub fn coordinate_function(&self, axis: usize) -> Vec<f64> {
        (0..self.node_count()).map(|i| self.coordinate(i, axis)).collect()
    }

    /// Euclidean norm of a node's coordinate vector.
    pub fn radius(&self, node: usize) -> f64 {
        (0..self.dimension)
            .map(|a| self.coordinate(node, a).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// Truncated (Dirichlet) finite-difference Laplacian: diagonal 2d/h²,
    /// off-diagonal −1/h² per grid neighbor. Nonnegative by construction.
    pub fn laplacian(&self) -> Result<SparseOperator> {
        let per = self.nodes_per_axis();
        let n = self.node_count();
        let inv = 1.0 / (self.spacing * self.spacing);
        let mut triplets: Vec<(usize, usize, f64)> =
            Vec::with_capacity(n * (1 + self.dimension));
        let mut stride = 1usize;
        for node in 0..n {
            triplets.push((node, node, 2.0 * self.dimension as f64 * inv));
        }
        for _axis in 0..self.dimension {
            for node in 0..n {
                let pos = (node / stride) % per;
                if pos + 1 < per {
                    triplets.push((node, node + stride, -inv));
                }
            }
            stride *= per;
        }
        SparseOperator::from_triplets(n, &triplets)
    }

    /// L² norm (volume element h^d) of a node vector.
    pub fn l2_norm_sq(&self, v: &[Complex64]) -> f64 {
        let vol = self.spacing.powi(self.dimension as i32);
        v.iter().map(|z| z.norm_sqr()).sum::<f64>() * vol
    }
}

/// Cell-centered half-line grid: node i sits at (i + 1/2)·h. With the
/// natural Neumann row at the origin, even functions of the symbol (cos,
/// cosh) are exact generalized eigenvectors of the discrete operator away
/// from the far truncation.
#[derive(Debug, Clone)]
pub struct HalfLineGrid {
    pub spacing: f64,
    pub nodes: usize,
}

impl HalfLineGrid {
    pub fn new(spacing: f64, nodes: usize) -> Result<Self> {
        if !(spacing > 0.0) || nodes < 8 {
            return Err(Error::invalid("half-line grid needs spacing > 0 and ≥ 8 nodes"));
        }
        Ok(HalfLineGrid { spacing, nodes })
    }

    pub fn position(&self, node: usize) -> f64 {
        (node as f64 + 0.5) * self.spacing
    }

    pub fn extent(&self) -> f64 {
        self.position(self.nodes - 1)
    }

    /// Laplacian with a reflecting (Neumann) origin and Dirichlet far
    /// truncation: row 0 has diagonal 1/h², interior rows 2/h².
    pub fn laplacian(&self) -> Result<SparseOperator> {
        let inv = 1.0 / (self.spacing * self.spacing);
        let mut t = Vec::with_capacity(2 * self.nodes);
        for i in 0..self.nodes {
            let d = if i == 0 { inv } else { 2.0 * inv };
            t.push((i, i, d));
            if i + 1 < self.nodes {
                t.push((i, i + 1, -inv));
            }
        }
        SparseOperator::from_triplets(self.nodes, &t)
    }

    /// Generalized eigenvalue of `cos(freq·x)` for this discretization.
    pub fn cosine_symbol(&self, freq: f64) -> f64 {
        (2.0 - 2.0 * (freq * self.spacing).cos()) / (self.spacing * self.spacing)
    }
}

/// Smoothstep cutoff profile: 1 for r ≤ a, 0 for r ≥ b, cubic in between.
/// The maximum slope is 1.5/(b−a).
pub fn smoothstep_cutoff(r: f64, a: f64, b: f64) -> f64 {
    debug_assert!(b > a);
    if r <= a {
        1.0
    } else if r >= b {
        0.0
    } else {
        let u = (r - a) / (b - a);
        1.0 - u * u * (3.0 - 2.0 * u)
    }
}

/// Plane-wave test vector `e^{i√λ x₁}·χ(|x|)`, normalized, where χ falls
/// from 1 inside radius `inner_radius/2` to 0 at `inner_radius`. The ramp
/// slope 3/inner_radius respects the 4/inner_radius gradient budget of the
/// construction this mirrors.
pub fn plane_wave_test_function(
    grid: &GridDomain,
    lambda: f64,
    inner_radius: f64,
) -> Result<Vec<Complex64>> {
    if !(lambda >= 0.0) {
        return Err(Error::invalid("lambda must be nonnegative"));
    }
    if !(inner_radius > 0.0 && inner_radius < grid.extent()) {
        return Err(Error::invalid("inner_radius must lie inside the grid extent"));
    }
    let shoulder_nodes = (0.5 * inner_radius / grid.spacing()).floor() as usize;
    if shoulder_nodes < 8 {
        return Err(Error::invalid(format!(
            "grid too small: only {shoulder_nodes} nodes across the cutoff shoulder (need ≥ 8)"
        )));
    }
    let freq = lambda.sqrt();
    let a = 0.5 * inner_radius;
    let n = grid.node_count();
    let mut v = Vec::with_capacity(n);
    for node in 0..n {
        let chi = smoothstep_cutoff(grid.radius(node), a, inner_radius);
        if chi == 0.0 {
            v.push(Complex64::new(0.0, 0.0));
        } else {
            let x1 = grid.coordinate(node, 0);
            v.push(Complex64::from_polar(chi, freq * x1));
        }
    }
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::invalid("cutoff annihilated the grid"));
    }
    for z in v.iter_mut() {
        *z /= norm;
    }
    Ok(v)
}

/// A discrete k-form on a grid: one coefficient vector per coordinate
/// k-plane (lexicographic subsets of axes). On a flat grid the Hodge
/// Laplacian acts componentwise, so certification reduces to the scalar
/// case; the type exists to exercise the k-form data path.
#[derive(Debug, Clone)]
pub struct GridKForm {
    pub degree: usize,
    pub dimension: usize,
    /// C(d,k) coefficient vectors, in lexicographic subset order.
    pub components: Vec<Vec<Complex64>>,
}

impl GridKForm {
    /// Stacks all components into one vector, matching the layout of
    /// [`componentwise_operator`].
    pub fn flatten(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.components.len() * self.components[0].len());
        for c in &self.components {
            out.extend_from_slice(c);
        }
        out
    }

    /// Index of the subset {0,..,k-1} (dx₁∧⋯∧dx_k) in component order.
    pub fn leading_component(&self) -> &[Complex64] {
        &self.components[0]
    }

    /// L² norm² with the grid volume element.
    pub fn l2_norm_sq(&self, grid: &GridDomain) -> f64 {
        self.components.iter().map(|c| grid.l2_norm_sq(c)).sum()
    }
}

/// The flat k-form Laplacian on the grid: a block diagonal of C(d,k)
/// copies of the scalar Laplacian (constant-coefficient plane: no
/// curvature coupling).
pub fn componentwise_operator(grid: &GridDomain, degree: usize) -> Result<SparseOperator> {
    if degree > grid.dimension() {
        return Err(Error::invalid("form degree exceeds grid dimension"));
    }
    let blocks = binomial(grid.dimension(), degree);
    let scalar = grid.laplacian()?;
    let n = scalar.dim();
    let mut triplets = Vec::with_capacity(blocks * scalar.nnz());
    for b in 0..blocks {
        let off = b * n;
        for (r, c, v) in scalar.entries() {
            triplets.push((off + r, off + c, v));
        }
    }
    SparseOperator::from_triplets(blocks * n, &triplets)
}

/// The wedge test form `plane_wave · dx₁∧⋯∧dx_k`: a single constant
/// coefficient direction carrying the plane-wave profile. Its coefficient
/// field has pointwise unit frame norm, the exact-grid case of the frame
/// lower bound `≥ 1 − deviation`.
pub fn wedge_test_form(
    grid: &GridDomain,
    lambda: f64,
    degree: usize,
    inner_radius: f64,
) -> Result<GridKForm> {
    if degree > grid.dimension() {
        return Err(Error::invalid(format!(
            "form degree {degree} exceeds grid dimension {}",
            grid.dimension()
        )));
    }
    let wave = plane_wave_test_function(grid, lambda, inner_radius)?;
    let blocks = subsets(grid.dimension(), degree).len();
    let zero = vec![Complex64::new(0.0, 0.0); wave.len()];
    let mut components = vec![zero; blocks];
    components[0] = wave;
    Ok(GridKForm { degree, dimension: grid.dimension(), components })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_counts_and_coordinates() {
        let g = GridDomain::new(2, 0.5, 2.0).unwrap();
        assert_eq!(g.nodes_per_axis(), 9);
        assert_eq!(g.node_count(), 81);
        // center node has zero coordinates
        let c = g.node_count() / 2;
        assert_eq!(g.coordinate(c, 0), 0.0);
        assert_eq!(g.coordinate(c, 1), 0.0);
        // exact multiples of h
        for node in 0..g.node_count() {
            for axis in 0..2 {
                let x = g.coordinate(node, axis);
                assert_eq!(x, (x / 0.5).round() * 0.5);
            }
        }
    }

    #[test]
    fn laplacian_matches_stencil() {
        let g = GridDomain::new(1, 1.0, 3.0).unwrap();
        let h = g.laplacian().unwrap();
        let n = g.node_count();
        let mut y = vec![0.0; n];
        let mut x = vec![0.0; n];
        x[3] = 1.0; // center
        h.apply(&x, &mut y);
        assert_eq!(y[3], 2.0);
        assert_eq!(y[2], -1.0);
        assert_eq!(y[4], -1.0);
    }

    #[test]
    fn zero_frequency_wave_is_the_cutoff() {
        let g = GridDomain::new(1, 0.05, 10.0).unwrap();
        let v = plane_wave_test_function(&g, 0.0, 8.0).unwrap();
        assert!(v.iter().all(|z| z.im == 0.0 && z.re >= 0.0));
        let center = g.node_count() / 2;
        let norm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        assert!((norm_sq - 1.0).abs() < 1e-12);
        assert!(v[center].re > 0.0);
    }

    #[test]
    fn small_shoulder_is_rejected() {
        let g = GridDomain::new(1, 1.0, 12.0).unwrap();
        assert!(plane_wave_test_function(&g, 0.0, 10.0).is_err());
    }

    #[test]
    fn wedge_form_top_degree_norm() {
        let g = GridDomain::new(2, 0.25, 6.0).unwrap();
        let f = wedge_test_form(&g, 0.0, 2, 5.0).unwrap();
        assert_eq!(f.components.len(), 1);
        // norm² with the volume element equals h²·Σχ̂² for the normalized wave
        let n2 = f.l2_norm_sq(&g);
        assert!((n2 - 0.25 * 0.25).abs() < 1e-12);
    }

    #[test]
    fn one_dimensional_one_form_equals_function_case() {
        let g = GridDomain::new(1, 0.05, 10.0).unwrap();
        let f = wedge_test_form(&g, 0.0, 1, 8.0).unwrap();
        let w = plane_wave_test_function(&g, 0.0, 8.0).unwrap();
        assert_eq!(f.components.len(), 1);
        assert_eq!(f.leading_component(), &w[..]);
    }
}
