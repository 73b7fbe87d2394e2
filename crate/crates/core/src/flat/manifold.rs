//! Compact flat manifolds ℝ^n/Γ described by Bieberbach group data: a
//! translation lattice, a finite holonomy group acting by lattice-integer
//! rotations with fractional translations, and a metric scale.

use nalgebra::{DMatrix, DVector};

use crate::error::Error;
use crate::flat::intmat::{affine_congruence_solvable, det_i64, exterior_trace};
use crate::flat::lattice::Lattice;
use crate::Result;

/// Tolerance for comparing fractional translations mod the lattice.
const TRANSLATION_TOL: f64 = 1e-9;
/// Tolerance for the Gram-orthogonality check of rotations.
const ORTHOGONALITY_TOL: f64 = 1e-10;

/// One holonomy element: an integer rotation in lattice coordinates and a
/// fractional translation in [0,1)^n (also lattice coordinates).
#[derive(Debug, Clone)]
pub struct HolonomyElement {
    rotation: DMatrix<i64>,
    translation: DVector<f64>,
}

fn frac_unit(x: f64) -> f64 {
    let f = x - x.floor();
    // pull values like 0.9999999999 back to 0
    if (f - 1.0).abs() < TRANSLATION_TOL {
        0.0
    } else {
        f
    }
}

impl HolonomyElement {
    pub fn new(rotation: DMatrix<i64>, translation: Vec<f64>) -> Result<Self> {
        if rotation.nrows() != rotation.ncols() || rotation.nrows() != translation.len() {
            return Err(Error::invalid("holonomy element dimension mismatch"));
        }
        let translation = DVector::from_iterator(
            translation.len(),
            translation.into_iter().map(frac_unit),
        );
        Ok(HolonomyElement { rotation, translation })
    }

    pub fn identity(n: usize) -> Self {
        HolonomyElement {
            rotation: DMatrix::identity(n, n),
            translation: DVector::zeros(n),
        }
    }

    pub fn rotation(&self) -> &DMatrix<i64> {
        &self.rotation
    }

    pub fn translation(&self) -> &DVector<f64> {
        &self.translation
    }

    pub fn is_identity(&self) -> bool {
        self.rotation == DMatrix::identity(self.rotation.nrows(), self.rotation.ncols())
            && self.translation.iter().all(|&t| t.abs() < TRANSLATION_TOL)
    }

    /// Group law mod the lattice: (M₁,t₁)·(M₂,t₂) = (M₁M₂, t₁ + M₁t₂ mod 1).
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.rotation.nrows();
        let rotation = &self.rotation * &other.rotation;
        let mut translation = DVector::zeros(n);
        for i in 0..n {
            let mut v = self.translation[i];
            for j in 0..n {
                v += self.rotation[(i, j)] as f64 * other.translation[j];
            }
            translation[i] = frac_unit(v);
        }
        HolonomyElement { rotation, translation }
    }

    fn same_as(&self, other: &Self) -> bool {
        if self.rotation != other.rotation {
            return false;
        }
        self.translation
            .iter()
            .zip(other.translation.iter())
            .all(|(&a, &b)| {
                let d = a - b;
                (d - d.round()).abs() < TRANSLATION_TOL
            })
    }

    /// Deterministic ordering key: rotation entries row-major, then
    /// translation entries quantized at the comparison tolerance.
    fn sort_key(&self) -> (Vec<i64>, Vec<i64>) {
        let n = self.rotation.nrows();
        let rot: Vec<i64> = (0..n)
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .map(|(r, c)| self.rotation[(r, c)])
            .collect();
        let tr: Vec<i64> = self
            .translation
            .iter()
            .map(|&t| (t / TRANSLATION_TOL).round() as i64)
            .collect();
        (rot, tr)
    }

    /// Direct sum with another element (block-diagonal rotation,
    /// concatenated translation).
    fn direct_sum(&self, other: &Self) -> Self {
        let (n, m) = (self.rotation.nrows(), other.rotation.nrows());
        let mut rotation = DMatrix::zeros(n + m, n + m);
        rotation.view_mut((0, 0), (n, n)).copy_from(&self.rotation);
        rotation.view_mut((n, n), (m, m)).copy_from(&other.rotation);
        let mut translation = DVector::zeros(n + m);
        translation.rows_mut(0, n).copy_from(&self.translation);
        translation.rows_mut(n, m).copy_from(&other.translation);
        HolonomyElement { rotation, translation }
    }
}

/// Construction options; the group-order bound guards runaway closure.
#[derive(Debug, Clone)]
pub struct FlatManifoldOptions {
    pub group_order_bound: usize,
}

impl Default for FlatManifoldOptions {
    fn default() -> Self {
        FlatManifoldOptions { group_order_bound: 48 }
    }
}

/// A compact flat manifold with metric `scale² · (induced flat metric)`.
///
/// The holonomy list always stores the full finite group (identity
/// included) in a canonical order, so spectra computed from it are
/// deterministic.
#[derive(Debug, Clone)]
pub struct FlatManifold {
    lattice: Lattice,
    holonomy: Vec<HolonomyElement>,
    scale: f64,
    name: Option<String>,
}

impl FlatManifold {
    /// Builds the manifold from lattice, holonomy *generators* and scale.
    /// The group is closed under composition mod the lattice, then checked:
    /// Gram-orthogonality of rotations, finiteness under the configured
    /// order bound, and torsion-freeness (no nontrivial element fixes a
    /// point, tested by solvability of the affine fixed-point congruence).
    pub fn new(
        lattice: Lattice,
        generators: Vec<HolonomyElement>,
        scale: f64,
        options: &FlatManifoldOptions,
    ) -> Result<Self> {
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::invalid("scale must be a positive real"));
        }
        let n = lattice.dimension();
        for g in &generators {
            if g.rotation.nrows() != n {
                return Err(Error::invalid("holonomy element dimension mismatch with lattice"));
            }
        }

        // rotations must preserve the Gram matrix: Mᵀ G M = G
        let gram = lattice.gram();
        let gram_scale = gram.iter().fold(0.0f64, |a, &b| a.max(b.abs())).max(1.0);
        for g in &generators {
            let m = g.rotation.map(|v| v as f64);
            let check = m.transpose() * &gram * &m - &gram;
            let dev = check.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
            if dev > ORTHOGONALITY_TOL * gram_scale {
                return Err(Error::invalid(format!(
                    "holonomy rotation is not orthogonal for the lattice Gram matrix (deviation {dev:.3e})"
                )));
            }
        }

        // close the group
        let mut group: Vec<HolonomyElement> = vec![HolonomyElement::identity(n)];
        let mut frontier: Vec<HolonomyElement> = Vec::new();
        for g in &generators {
            if !group.iter().any(|h| h.same_as(g)) {
                group.push(g.clone());
                frontier.push(g.clone());
            }
        }
        while let Some(g) = frontier.pop() {
            for h in generators.iter() {
                let p = g.compose(h);
                if !group.iter().any(|e| e.same_as(&p)) {
                    if group.len() >= options.group_order_bound {
                        return Err(Error::invalid(format!(
                            "holonomy group order exceeds bound {}",
                            options.group_order_bound
                        )));
                    }
                    group.push(p.clone());
                    frontier.push(p);
                }
            }
        }

        // torsion-free: no nontrivial rotation part may fix a point
        let id = DMatrix::<i64>::identity(n, n);
        for g in &group {
            if g.rotation == id {
                if !g.translation.iter().all(|&t| t.abs() < TRANSLATION_TOL) {
                    return Err(Error::invalid(
                        "holonomy closure produced a nontrivial pure translation; \
                         generators are inconsistent with the lattice",
                    ));
                }
                continue;
            }
            let a = DMatrix::from_fn(n, n, |r, c| {
                (if r == c { 1 } else { 0 }) - g.rotation[(r, c)]
            });
            let t: Vec<f64> = g.translation.iter().copied().collect();
            if affine_congruence_solvable(&a, &t, TRANSLATION_TOL) {
                return Err(Error::invalid(
                    "group has torsion: a nontrivial element fixes a point",
                ));
            }
        }

        let mut group = group;
        group.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));

        Ok(FlatManifold { lattice, holonomy: group, scale, name: None })
    }

    /// Attaches a display name (catalog entries use this).
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// The trivial (zero-dimensional) compact factor.
    pub fn point() -> Self {
        FlatManifold {
            lattice: Lattice::trivial(),
            holonomy: vec![HolonomyElement::identity(0)],
            scale: 1.0,
            name: Some("point".to_string()),
        }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Full holonomy group, identity included, in canonical order.
    pub fn holonomy(&self) -> &[HolonomyElement] {
        &self.holonomy
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn dimension(&self) -> usize {
        self.lattice.dimension()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Returns a copy with a different metric scale.
    pub fn rescaled(&self, scale: f64) -> Result<Self> {
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::invalid("scale must be a positive real"));
        }
        let mut m = self.clone();
        m.scale = scale;
        Ok(m)
    }

    /// All rotation determinants +1; Poincaré duality then pairs the
    /// degree-l and degree-(n−l) spectra exactly.
    pub fn is_orientable(&self) -> bool {
        self.holonomy.iter().all(|g| det_i64(&g.rotation) == 1)
    }

    /// Betti number b_l: the dimension of holonomy-invariant constant
    /// l-forms, by character averaging (all phases are 1 at frequency 0).
    pub fn betti(&self, l: usize) -> usize {
        let n = self.dimension();
        if l > n {
            return 0;
        }
        let sum: i64 = self
            .holonomy
            .iter()
            .map(|g| exterior_trace(&g.rotation, l))
            .sum();
        debug_assert!(sum >= 0 && sum % self.holonomy.len() as i64 == 0);
        (sum / self.holonomy.len() as i64) as usize
    }

    /// Riemannian product: block lattice, direct-product holonomy. Both
    /// factors must carry the same metric scale. The holonomy order bound
    /// must accommodate |G₁|·|G₂|.
    pub fn product(&self, other: &FlatManifold, options: &FlatManifoldOptions) -> Result<Self> {
        if (self.scale - other.scale).abs() > 1e-12 * self.scale.abs() {
            return Err(Error::invalid("product factors must share one metric scale"));
        }
        let order = self.holonomy.len() * other.holonomy.len();
        if order > options.group_order_bound {
            return Err(Error::invalid(format!(
                "product holonomy order {} exceeds bound {}",
                order, options.group_order_bound
            )));
        }
        let (n, m) = (self.dimension(), other.dimension());
        let mut basis = DMatrix::zeros(n + m, n + m);
        basis
            .view_mut((0, 0), (n, n))
            .copy_from(self.lattice.basis());
        basis
            .view_mut((n, n), (m, m))
            .copy_from(other.lattice.basis());
        let lattice = Lattice::new(basis)?;
        let mut holonomy: Vec<HolonomyElement> = Vec::with_capacity(order);
        for g in &self.holonomy {
            for h in &other.holonomy {
                holonomy.push(g.direct_sum(h));
            }
        }
        holonomy.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        Ok(FlatManifold { lattice, holonomy, scale: self.scale, name: None })
    }

    /// Structural equality at the stored tolerance (used by file
    /// round-trip tests).
    pub fn same_as(&self, other: &FlatManifold) -> bool {
        if self.dimension() != other.dimension()
            || self.holonomy.len() != other.holonomy.len()
            || (self.scale - other.scale).abs() > 1e-12 * self.scale.max(other.scale)
        {
            return false;
        }
        let db = self.lattice.basis() - other.lattice.basis();
        if db.iter().any(|&v| v.abs() > 1e-12) {
            return false;
        }
        self.holonomy
            .iter()
            .zip(other.holonomy.iter())
            .all(|(a, b)| a.same_as(b))
    }
}
