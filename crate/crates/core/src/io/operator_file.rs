//! Sparse-operator files: a header line with the dimension, then
//! coordinate triplets `row col value`.

use super::{content_lines, parse_f64, parse_usize};
use crate::error::Error;
use crate::weyl::SparseOperator;
use crate::Result;

pub fn parse_operator(text: &str) -> Result<SparseOperator> {
    let lines = content_lines(text);
    let mut it = lines.iter();
    let (l0, first) = it.next().ok_or_else(|| Error::parse(0, "empty operator file"))?;
    let mut head = first.split_whitespace();
    if head.next() != Some("dimension") {
        return Err(Error::parse(*l0, "expected header `dimension <N>`"));
    }
    let dim = parse_usize(
        *l0,
        head.next()
            .ok_or_else(|| Error::parse(*l0, "dimension needs a value"))?,
    )?;
    let mut triplets = Vec::new();
    for (line, content) in it {
        let toks: Vec<&str> = content.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(Error::parse(*line, "expected `row col value`"));
        }
        let r = parse_usize(*line, toks[0])?;
        let c = parse_usize(*line, toks[1])?;
        let v = parse_f64(*line, toks[2])?;
        triplets.push((r, c, v));
    }
    SparseOperator::from_triplets(dim, &triplets)
}

/// Upper triangle in CSR order; floats with shortest-roundtrip formatting.
pub fn emit_operator(h: &SparseOperator) -> String {
    let mut out = format!("dimension {}\n", h.dim());
    for (r, c, v) in h.entries() {
        if c >= r {
            out.push_str(&format!("{r} {c} {v}\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let h = SparseOperator::from_triplets(
            3,
            &[(0, 0, 2.0), (0, 1, -0.5), (1, 1, 2.0), (2, 2, 0.25)],
        )
        .unwrap();
        let text = emit_operator(&h);
        let back = parse_operator(&text).unwrap();
        assert_eq!(emit_operator(&back), text);
    }

    #[test]
    fn asymmetric_file_is_rejected_with_context() {
        let text = "dimension 2\n0 1 1.0\n1 0 2.0\n";
        assert!(parse_operator(text).is_err());
    }
}
