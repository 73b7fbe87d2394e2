//! Flat-manifold description files.
//!
//! ```text
//! format flat-manifold v1
//! dimension 3
//! scale 1
//! basis
//! 1 0 0
//! 0 1 0
//! 0 0 1
//! holonomy-element
//! rotation
//! 1 0 0
//! 0 -1 0
//! 0 0 -1
//! translation 1/2 1/2 0
//! ```
//!
//! Holonomy elements are generators; the group is closed and validated on
//! load. Emission writes every nonidentity group element in canonical
//! order, so emit∘parse∘emit is byte-stable.

use nalgebra::DMatrix;

use super::{content_lines, parse_f64, parse_i64, parse_usize};
use crate::error::Error;
use crate::flat::{catalog, FlatManifold, FlatManifoldOptions, HolonomyElement, Lattice};
use crate::Result;

pub fn parse_manifold(text: &str) -> Result<FlatManifold> {
    let lines = content_lines(text);
    let mut it = lines.iter().peekable();

    let (l0, first) = it
        .next()
        .ok_or_else(|| Error::parse(0, "empty manifold file"))?;
    if *first != "format flat-manifold v1" {
        return Err(Error::parse(*l0, "expected header `format flat-manifold v1`"));
    }

    let mut dimension: Option<usize> = None;
    let mut scale = 1.0f64;
    let mut basis: Option<DMatrix<f64>> = None;
    let mut generators: Vec<HolonomyElement> = Vec::new();
    let mut bound = FlatManifoldOptions::default().group_order_bound;

    while let Some((line, content)) = it.next() {
        let mut tokens = content.split_whitespace();
        let key = tokens.next().unwrap();
        match key {
            "dimension" => {
                let v = tokens
                    .next()
                    .ok_or_else(|| Error::parse(*line, "dimension needs a value"))?;
                dimension = Some(parse_usize(*line, v)?);
            }
            "scale" => {
                let v = tokens
                    .next()
                    .ok_or_else(|| Error::parse(*line, "scale needs a value"))?;
                scale = parse_f64(*line, v)?;
            }
            "group-order-bound" => {
                let v = tokens
                    .next()
                    .ok_or_else(|| Error::parse(*line, "group-order-bound needs a value"))?;
                bound = parse_usize(*line, v)?;
            }
            "basis" => {
                let n = dimension
                    .ok_or_else(|| Error::parse(*line, "dimension must precede basis"))?;
                let mut rows = Vec::with_capacity(n);
                for _ in 0..n {
                    let (rl, row) = it
                        .next()
                        .ok_or_else(|| Error::parse(*line, "basis rows truncated"))?;
                    let vals: Vec<f64> = row
                        .split_whitespace()
                        .map(|t| parse_f64(*rl, t))
                        .collect::<Result<_>>()?;
                    if vals.len() != n {
                        return Err(Error::parse(*rl, format!("basis row needs {n} entries")));
                    }
                    rows.push(vals);
                }
                basis = Some(DMatrix::from_fn(n, n, |r, c| rows[r][c]));
            }
            "holonomy-element" => {
                let n = dimension
                    .ok_or_else(|| Error::parse(*line, "dimension must precede holonomy"))?;
                let (rl, rot_kw) = it
                    .next()
                    .ok_or_else(|| Error::parse(*line, "holonomy element truncated"))?;
                if *rot_kw != "rotation" {
                    return Err(Error::parse(*rl, "holonomy element must start with `rotation`"));
                }
                let mut rows = Vec::with_capacity(n);
                for _ in 0..n {
                    let (el, row) = it
                        .next()
                        .ok_or_else(|| Error::parse(*rl, "rotation rows truncated"))?;
                    let vals: Vec<i64> = row
                        .split_whitespace()
                        .map(|t| parse_i64(*el, t))
                        .collect::<Result<_>>()?;
                    if vals.len() != n {
                        return Err(Error::parse(*el, format!("rotation row needs {n} entries")));
                    }
                    rows.push(vals);
                }
                let (tl, tr) = it
                    .next()
                    .ok_or_else(|| Error::parse(*rl, "holonomy element misses `translation`"))?;
                let mut ttok = tr.split_whitespace();
                if ttok.next() != Some("translation") {
                    return Err(Error::parse(*tl, "expected `translation`"));
                }
                let tvals: Vec<f64> =
                    ttok.map(|t| parse_f64(*tl, t)).collect::<Result<_>>()?;
                if tvals.len() != n {
                    return Err(Error::parse(*tl, format!("translation needs {n} entries")));
                }
                let rotation = DMatrix::from_fn(n, n, |r, c| rows[r][c]);
                generators.push(HolonomyElement::new(rotation, tvals)?);
            }
            other => {
                return Err(Error::parse(*line, format!("unknown field {other:?}")));
            }
        }
    }

    let n = dimension.ok_or_else(|| Error::parse(0, "missing dimension"))?;
    let basis = basis.unwrap_or_else(|| DMatrix::identity(n, n));
    let lattice = Lattice::new(basis)?;
    FlatManifold::new(
        lattice,
        generators,
        scale,
        &FlatManifoldOptions { group_order_bound: bound },
    )
}

/// Canonical emission: full nonidentity group element list, row-major
/// matrices, shortest-roundtrip float formatting.
pub fn emit_manifold(m: &FlatManifold) -> String {
    let n = m.dimension();
    let mut out = String::new();
    out.push_str("format flat-manifold v1\n");
    out.push_str(&format!("dimension {n}\n"));
    out.push_str(&format!("scale {}\n", m.scale()));
    let group_len = m.holonomy().len();
    if group_len > FlatManifoldOptions::default().group_order_bound {
        out.push_str(&format!("group-order-bound {group_len}\n"));
    }
    out.push_str("basis\n");
    for r in 0..n {
        let row: Vec<String> = (0..n).map(|c| format!("{}", m.lattice().basis()[(r, c)])).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    for g in m.holonomy() {
        if g.is_identity() {
            continue;
        }
        out.push_str("holonomy-element\n");
        out.push_str("rotation\n");
        for r in 0..n {
            let row: Vec<String> = (0..n).map(|c| format!("{}", g.rotation()[(r, c)])).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        let tr: Vec<String> = g.translation().iter().map(|&t| format!("{t}")).collect();
        out.push_str(&format!("translation {}\n", tr.join(" ")));
    }
    out
}

/// Resolves a manifold reference: `catalog:<name>` or a file path.
pub fn resolve_manifold(reference: &str) -> Result<FlatManifold> {
    if let Some(name) = reference.strip_prefix("catalog:") {
        return catalog::by_name(name);
    }
    let text = std::fs::read_to_string(reference)?;
    parse_manifold(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_byte_stable() {
        let hw = catalog::hantzsche_wendt().unwrap();
        let text = emit_manifold(&hw);
        let back = parse_manifold(&text).unwrap();
        assert!(back.same_as(&hw));
        assert_eq!(emit_manifold(&back), text);
    }

    #[test]
    fn fractions_are_accepted() {
        let text = "format flat-manifold v1\n\
                    dimension 2\n\
                    scale 1\n\
                    basis\n1 0\n0 1\n\
                    holonomy-element\nrotation\n1 0\n0 -1\ntranslation 1/2 0\n";
        let m = parse_manifold(text).unwrap();
        assert!(m.same_as(&catalog::klein_bottle().unwrap()));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "format flat-manifold v1\ndimension 2\nbasis\n1 0\n0 x\n";
        match parse_manifold(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }
}
