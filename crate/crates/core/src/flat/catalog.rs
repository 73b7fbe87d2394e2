//! Built-in flat manifolds used throughout the tests and the CLI.
//!
//! The presentations are standard; none of them is trusted as-is — every
//! constructor goes through the full validation path (Gram orthogonality,
//! group closure, torsion-freeness).

use nalgebra::DMatrix;

use crate::error::Error;
use crate::flat::manifold::{FlatManifold, FlatManifoldOptions, HolonomyElement};
use crate::flat::lattice::Lattice;
use crate::Result;

/// Unit torus T^n = ℝ^n/ℤ^n.
pub fn torus(n: usize) -> Result<FlatManifold> {
    FlatManifold::new(
        Lattice::cubic(n),
        Vec::new(),
        1.0,
        &FlatManifoldOptions::default(),
    )
    .map(|m| m.with_name(format!("torus{n}")))
}

/// The Hantzsche–Wendt flat three-manifold: lattice ℤ³ and holonomy
/// ℤ/2 × ℤ/2 generated by diag(1,−1,−1) with translation (1/2,1/2,0) and
/// diag(−1,1,−1) with translation (0,1/2,1/2). First Betti number zero.
pub fn hantzsche_wendt() -> Result<FlatManifold> {
    let g1 = HolonomyElement::new(
        DMatrix::from_diagonal(&nalgebra::dvector![1i64, -1, -1]),
        vec![0.5, 0.5, 0.0],
    )?;
    let g2 = HolonomyElement::new(
        DMatrix::from_diagonal(&nalgebra::dvector![-1i64, 1, -1]),
        vec![0.0, 0.5, 0.5],
    )?;
    FlatManifold::new(
        Lattice::cubic(3),
        vec![g1, g2],
        1.0,
        &FlatManifoldOptions::default(),
    )
    .map(|m| m.with_name("hantzsche-wendt"))
}

/// The Klein bottle group on ℤ²: diag(1,−1) with translation (1/2,0).
pub fn klein_bottle() -> Result<FlatManifold> {
    let g = HolonomyElement::new(
        DMatrix::from_diagonal(&nalgebra::dvector![1i64, -1]),
        vec![0.5, 0.0],
    )?;
    FlatManifold::new(
        Lattice::cubic(2),
        vec![g],
        1.0,
        &FlatManifoldOptions::default(),
    )
    .map(|m| m.with_name("klein-bottle"))
}

/// Looks a manifold up by catalog name: `torus1`..`torus4`,
/// `hantzsche-wendt`, `klein-bottle`. A `^k` suffix builds the k-fold
/// Riemannian product (the holonomy order bound is widened accordingly).
pub fn by_name(name: &str) -> Result<FlatManifold> {
    let (base_name, power) = match name.split_once('^') {
        Some((b, p)) => {
            let power: usize = p
                .parse()
                .map_err(|_| Error::invalid(format!("bad product power in catalog name {name:?}")))?;
            if power == 0 || power > 4 {
                return Err(Error::invalid("catalog product power must be in 1..=4"));
            }
            (b, power)
        }
        None => (name, 1),
    };
    let base = match base_name {
        "torus1" => torus(1)?,
        "torus2" => torus(2)?,
        "torus3" => torus(3)?,
        "torus4" => torus(4)?,
        "hantzsche-wendt" => hantzsche_wendt()?,
        "klein-bottle" => klein_bottle()?,
        other => {
            return Err(Error::invalid(format!(
                "unknown catalog manifold {other:?} (known: torus1..torus4, hantzsche-wendt, klein-bottle)"
            )))
        }
    };
    if power == 1 {
        return Ok(base);
    }
    let order_bound = base.holonomy().len().pow(power as u32).max(48);
    let opts = FlatManifoldOptions { group_order_bound: order_bound };
    let mut out = base.clone();
    for _ in 1..power {
        out = out.product(&base, &opts)?;
    }
    Ok(out.with_name(format!("{base_name}^{power}")))
}

/// All base catalog entries, for sweep-style tests.
pub fn all() -> Vec<FlatManifold> {
    vec![
        torus(1).unwrap(),
        torus(2).unwrap(),
        torus(3).unwrap(),
        torus(4).unwrap(),
        hantzsche_wendt().unwrap(),
        klein_bottle().unwrap(),
    ]
}

/// The catalog's flat three-manifolds (used by the warped-product
/// regression over fibers of dimension 3).
pub fn three_manifolds() -> Vec<FlatManifold> {
    vec![torus(3).unwrap(), hantzsche_wendt().unwrap()]
}
