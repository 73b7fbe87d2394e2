//! Bottom of the k-form spectrum of flat products K^{n−m} × ℝ^m, and
//! Künneth composition of bottom eigenvalues across product fibers.

mod alpha;
mod kunneth;

pub use alpha::{alpha, alpha_with_branch, product_spectrum, AlphaBranch, ProductModel};
pub use kunneth::{kunneth_lambda_o, Bottom, KunnethFactor};

/// Classified bottom of an (essential) spectrum.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectrumVerdict {
    /// No essential spectrum.
    Empty,
    /// The interval [bottom, ∞).
    Interval(f64),
    /// Not determined by this model; carries the reason.
    Unknown(String),
}

impl SpectrumVerdict {
    pub fn is_unknown(&self) -> bool {
        matches!(self, SpectrumVerdict::Unknown(_))
    }

    /// Compact CSV form: `empty`, `interval:<bottom>`, `unknown:<reason>`.
    pub fn csv_cell(&self) -> String {
        match self {
            SpectrumVerdict::Empty => "empty".to_string(),
            SpectrumVerdict::Interval(b) => format!("interval:{b}"),
            SpectrumVerdict::Unknown(r) => format!("unknown:{}", r.replace(',', ";")),
        }
    }
}
