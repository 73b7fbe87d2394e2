//! Warped-model files.
//!
//! ```text
//! format warped-model v1
//! base line
//! factor
//! manifold catalog:hantzsche-wendt
//! warp powerlaw -1 1
//! factor
//! manifold catalog:hantzsche-wendt^3
//! warp constant 2
//! ```
//!
//! A factor manifold is a catalog reference, `sphere:<dim>`, or `inline`
//! followed by a flat-manifold block terminated by `end`.

use super::{content_lines, parse_f64, parse_usize};
use crate::error::Error;
use crate::flat::catalog;
use crate::io::manifold_file::{emit_manifold, parse_manifold};
use crate::warped::{
    BaseLine, CustomWarp, FactorSpace, WarpFunction, WarpedFactor, WarpedModel,
};
use crate::Result;

pub fn parse_model(text: &str) -> Result<WarpedModel> {
    let lines = content_lines(text);
    let mut it = lines.iter().peekable();
    let (l0, first) = it.next().ok_or_else(|| Error::parse(0, "empty model file"))?;
    if *first != "format warped-model v1" {
        return Err(Error::parse(*l0, "expected header `format warped-model v1`"));
    }

    let (lb, base_line) = it.next().ok_or_else(|| Error::parse(*l0, "missing base"))?;
    let base = match *base_line {
        "base line" => BaseLine::FullLine,
        "base halfline" => BaseLine::HalfLine,
        _ => return Err(Error::parse(*lb, "expected `base line` or `base halfline`")),
    };

    let mut factors = Vec::new();
    while let Some((lf, kw)) = it.next() {
        if *kw != "factor" {
            return Err(Error::parse(*lf, format!("expected `factor`, found {kw:?}")));
        }
        let (lm, mline) = it
            .next()
            .ok_or_else(|| Error::parse(*lf, "factor misses `manifold …`"))?;
        let mut mtok = mline.split_whitespace();
        if mtok.next() != Some("manifold") {
            return Err(Error::parse(*lm, "expected `manifold …`"));
        }
        let mref = mtok
            .next()
            .ok_or_else(|| Error::parse(*lm, "manifold needs a reference"))?;
        let space = if let Some(name) = mref.strip_prefix("catalog:") {
            FactorSpace::Flat(catalog::by_name(name)?)
        } else if let Some(d) = mref.strip_prefix("sphere:") {
            FactorSpace::Sphere(parse_usize(*lm, d)?)
        } else if mref == "inline" {
            // collect lines until `end`
            let mut block = String::new();
            loop {
                let (le, content) = it
                    .next()
                    .ok_or_else(|| Error::parse(*lm, "inline manifold not terminated by `end`"))?;
                if *content == "end" {
                    break;
                }
                let _ = le;
                block.push_str(content);
                block.push('\n');
            }
            FactorSpace::Flat(parse_manifold(&block)?)
        } else {
            return Err(Error::parse(
                *lm,
                format!("manifold reference must be catalog:<name>, sphere:<dim> or inline, found {mref:?}"),
            ));
        };

        let (lw, wline) = it
            .next()
            .ok_or_else(|| Error::parse(*lm, "factor misses `warp …`"))?;
        let mut wtok = wline.split_whitespace();
        if wtok.next() != Some("warp") {
            return Err(Error::parse(*lw, "expected `warp …`"));
        }
        let warp = match wtok.next() {
            Some("constant") => {
                let c = parse_f64(
                    *lw,
                    wtok.next().ok_or_else(|| Error::parse(*lw, "constant warp needs a value"))?,
                )?;
                WarpFunction::constant(c)?
            }
            Some("powerlaw") => {
                let p = parse_f64(
                    *lw,
                    wtok.next()
                        .ok_or_else(|| Error::parse(*lw, "powerlaw needs exponent and radius"))?,
                )?;
                let r0 = parse_f64(
                    *lw,
                    wtok.next()
                        .ok_or_else(|| Error::parse(*lw, "powerlaw needs a matching radius"))?,
                )?;
                WarpFunction::power_law(p, r0)?
            }
            Some("custom") => {
                let mut radii = Vec::new();
                let mut values = Vec::new();
                let mut first = Vec::new();
                let mut second = Vec::new();
                loop {
                    let (le, content) = it
                        .next()
                        .ok_or_else(|| Error::parse(*lw, "custom warp not terminated by `end`"))?;
                    if *content == "end" {
                        break;
                    }
                    let toks: Vec<&str> = content.split_whitespace().collect();
                    if toks.len() != 4 {
                        return Err(Error::parse(*le, "custom warp rows are `r phi dphi ddphi`"));
                    }
                    radii.push(parse_f64(*le, toks[0])?);
                    values.push(parse_f64(*le, toks[1])?);
                    first.push(parse_f64(*le, toks[2])?);
                    second.push(parse_f64(*le, toks[3])?);
                }
                WarpFunction::custom(CustomWarp { radii, values, first, second })?
            }
            other => {
                return Err(Error::parse(
                    *lw,
                    format!("warp kind must be constant, powerlaw or custom, found {other:?}"),
                ))
            }
        };
        factors.push(WarpedFactor { space, warp });
    }

    WarpedModel::new(base, factors)
}

pub fn emit_model(m: &WarpedModel) -> String {
    let mut out = String::from("format warped-model v1\n");
    out.push_str(match m.base {
        BaseLine::FullLine => "base line\n",
        BaseLine::HalfLine => "base halfline\n",
    });
    for f in &m.factors {
        out.push_str("factor\n");
        match &f.space {
            FactorSpace::Sphere(d) => out.push_str(&format!("manifold sphere:{d}\n")),
            FactorSpace::Flat(flat) => match flat.name() {
                Some(name) => out.push_str(&format!("manifold catalog:{name}\n")),
                None => {
                    out.push_str("manifold inline\n");
                    // strip the inner header: the block is re-parsed as one
                    let inner = emit_manifold(flat);
                    out.push_str(&inner);
                    out.push_str("end\n");
                }
            },
        }
        match &f.warp {
            WarpFunction::Constant(c) => out.push_str(&format!("warp constant {c}\n")),
            WarpFunction::PowerLaw { exponent, matching_radius } => {
                out.push_str(&format!("warp powerlaw {exponent} {matching_radius}\n"))
            }
            WarpFunction::Custom(data) => {
                out.push_str("warp custom\n");
                for i in 0..data.radii.len() {
                    out.push_str(&format!(
                        "{} {} {} {}\n",
                        data.radii[i], data.values[i], data.first[i], data.second[i]
                    ));
                }
                out.push_str("end\n");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_model_round_trip() {
        let text = "format warped-model v1\n\
                    base line\n\
                    factor\n\
                    manifold catalog:hantzsche-wendt\n\
                    warp powerlaw -1 1\n";
        let m = parse_model(text).unwrap();
        assert_eq!(m.total_dimension, 4);
        let emitted = emit_model(&m);
        let back = parse_model(&emitted).unwrap();
        assert_eq!(emit_model(&back), emitted);
    }

    #[test]
    fn doubly_warped_model_parses() {
        let text = "format warped-model v1\n\
                    base line\n\
                    factor\n\
                    manifold catalog:hantzsche-wendt\n\
                    warp constant 2\n\
                    factor\n\
                    manifold catalog:hantzsche-wendt^3\n\
                    warp powerlaw -1 1\n";
        let m = parse_model(text).unwrap();
        assert_eq!(m.total_dimension, 13);
    }

    #[test]
    fn inline_manifold_block() {
        let text = "format warped-model v1\n\
                    base line\n\
                    factor\n\
                    manifold inline\n\
                    format flat-manifold v1\n\
                    dimension 2\n\
                    scale 1\n\
                    basis\n1 0\n0 1\n\
                    holonomy-element\nrotation\n1 0\n0 -1\ntranslation 1/2 0\n\
                    end\n\
                    warp powerlaw -1 1\n";
        let m = parse_model(text).unwrap();
        assert_eq!(m.total_dimension, 3);
    }
}
