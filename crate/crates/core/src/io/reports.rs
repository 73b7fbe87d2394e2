//! CSV report emitters. Plain text, header row first, shortest-roundtrip
//! float formatting; row order is canonical so identical jobs produce
//! byte-identical reports.

use crate::flat::SpectrumTable;
use crate::localize::Localized;
use crate::product::AlphaBranch;
use crate::warped::{ChannelOperator, ChannelTag, DegreeClassification};
use crate::weyl::WeylCertificate;

/// `degree,eigenvalue,multiplicity` rows for a batch of spectrum tables.
pub fn spectrum_csv(tables: &[SpectrumTable]) -> String {
    let mut out = String::from("degree,eigenvalue,multiplicity\n");
    for t in tables {
        for &(ev, mult) in &t.rows {
            out.push_str(&format!("{},{},{}\n", t.degree, ev, mult));
        }
    }
    out
}

/// `k,alpha,branch` rows.
pub fn alpha_csv(rows: &[(usize, f64, AlphaBranch)]) -> String {
    let mut out = String::from("k,alpha,branch\n");
    for (k, a, b) in rows {
        out.push_str(&format!("{},{},{}\n", k, a, b.as_str()));
    }
    out
}

/// Certificate batch:
/// `lambda,alpha,q1,q2,delta,distance_bound,classical_residual,verdict`.
pub fn certificate_csv(certs: &[WeylCertificate]) -> String {
    let mut out =
        String::from("lambda,alpha,q1,q2,delta,distance_bound,classical_residual,verdict\n");
    for c in certs {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            c.lambda,
            c.alpha,
            c.q1,
            c.q2,
            c.delta,
            c.distance_bound,
            c.classical_residual,
            c.verdict.as_str()
        ));
    }
    out
}

/// Plot-ready projection of a certificate batch: `lambda,delta,distance_bound`.
pub fn plot_certificates_csv(certs: &[WeylCertificate]) -> String {
    let mut out = String::from("lambda,delta,distance_bound\n");
    for c in certs {
        out.push_str(&format!("{},{},{}\n", c.lambda, c.delta, c.distance_bound));
    }
    out
}

/// Classification report:
/// `k,verdict,bottom,witness,paper_verdict,discrepancy`.
pub fn classification_csv(rows: &[DegreeClassification]) -> String {
    let mut out = String::from("k,verdict,bottom,witness,paper_verdict,discrepancy\n");
    for r in rows {
        let bottom = match &r.verdict {
            crate::product::SpectrumVerdict::Interval(b) => format!("{b}"),
            _ => String::new(),
        };
        let witness = r
            .witness
            .as_ref()
            .map(|(a, degs)| {
                let degs: Vec<String> = degs.iter().map(|d| d.to_string()).collect();
                format!("a={a};c={}", degs.join("+"))
            })
            .unwrap_or_default();
        let paper = r
            .paper_stated
            .as_ref()
            .map(|v| v.csv_cell())
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.degree,
            r.verdict.csv_cell(),
            bottom,
            witness,
            paper,
            r.discrepancy
        ));
    }
    out
}

/// Potential profiles of assembled channels: `channel,r,potential`.
pub fn channel_potential_csv(channels: &[ChannelOperator]) -> String {
    let mut out = String::from("channel,r,potential\n");
    for ch in channels {
        let degs: Vec<String> = ch.label.degrees.iter().map(|d| d.to_string()).collect();
        let evs: Vec<String> =
            ch.label.eigenvalues.iter().map(|e| format!("{e:.6}")).collect();
        let tag = match ch.tag {
            ChannelTag::Free => "free".to_string(),
            ChannelTag::FreePlusShift(l) => format!("shift {l:.6}"),
            ChannelTag::Divergent => "divergent".to_string(),
        };
        let name = format!(
            "a={};c={};mu={};{}",
            ch.label.dr_part,
            degs.join("+"),
            evs.join("+"),
            tag
        );
        for (i, &v) in ch.potential.iter().enumerate() {
            out.push_str(&format!("{},{},{}\n", name, ch.grid.position(i), v));
        }
    }
    out
}

/// One localization trial row for the CSV report.
#[derive(Debug, Clone)]
pub struct LocalizationRow {
    pub radius: f64,
    pub localized: Localized,
    pub bottom_eigenvalue: f64,
}

/// `radius,center,bottom_eigenvalue,localized_quotient,c_measured`.
pub fn localization_csv(rows: &[LocalizationRow]) -> String {
    let mut out = String::from("radius,center,bottom_eigenvalue,localized_quotient,c_measured\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.radius,
            r.localized.best_center_node,
            r.bottom_eigenvalue,
            r.localized.localized_quotient,
            r.localized.c_measured
        ));
    }
    out
}
