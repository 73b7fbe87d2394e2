//! Line-oriented file formats (flat manifolds, sparse operators, warped
//! models) and the CSV report emitters. Emission is canonical, so a
//! parse–emit round trip is byte-stable.

mod manifold_file;
mod model_file;
mod operator_file;
mod reports;

pub use manifold_file::{emit_manifold, parse_manifold, resolve_manifold};
pub use model_file::{emit_model, parse_model};
pub use operator_file::{emit_operator, parse_operator};
pub use reports::{
    alpha_csv, certificate_csv, channel_potential_csv, classification_csv, localization_csv,
    plot_certificates_csv, spectrum_csv, LocalizationRow,
};

use crate::error::Error;
use crate::Result;

/// Splits source text into (1-based line number, trimmed content) pairs,
/// dropping blank lines and `#` comments.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

fn parse_f64(line: usize, token: &str) -> Result<f64> {
    // fractions like 1/2 are accepted anywhere a real is
    if let Some((num, den)) = token.split_once('/') {
        let n: f64 = num
            .trim()
            .parse()
            .map_err(|_| Error::parse(line, format!("bad numerator in {token:?}")))?;
        let d: f64 = den
            .trim()
            .parse()
            .map_err(|_| Error::parse(line, format!("bad denominator in {token:?}")))?;
        if d == 0.0 {
            return Err(Error::parse(line, "zero denominator"));
        }
        return Ok(n / d);
    }
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("expected a real number, found {token:?}")))
}

fn parse_usize(line: usize, token: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("expected a nonnegative integer, found {token:?}")))
}

fn parse_i64(line: usize, token: &str) -> Result<i64> {
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("expected an integer, found {token:?}")))
}
