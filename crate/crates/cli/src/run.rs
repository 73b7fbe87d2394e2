//! Subcommand dispatch: ingest model/operator files, run the requested
//! computation, emit CSV reports. Outputs are deterministic: identical
//! inputs produce byte-identical files.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use formspectra::flat::form_spectrum;
use formspectra::io;
use formspectra::localize::{gromov_cover, localize_eigenvalue, DiscreteDomain};
use formspectra::product::alpha_with_branch;
use formspectra::warped::{channel_operators, classify_all, ChannelGrid};
use formspectra::weyl::{
    certify_batch, plane_wave_test_function, smallest_eigenpair, GridDomain, WeylConfig,
};

#[derive(Parser)]
#[command(
    name = "formspectra",
    about = "Form spectra of flat manifolds, spectral certification, warped-product classification"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOut {
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Exit with code 2 when any emitted verdict is Unknown.
    #[arg(long)]
    strict: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Form spectra of a flat manifold (catalog:<name> or a file).
    Flat {
        /// Manifold reference: catalog:<name> or a flat-manifold file.
        #[arg(long)]
        input: String,
        /// Degree range `lo..hi` (inclusive) or a single degree.
        #[arg(long, default_value = "0..0")]
        degrees: String,
        /// Spectral cutoff.
        #[arg(long = "lambda-max", default_value_t = 0.0)]
        lambda_max: f64,
        #[command(flatten)]
        common: CommonOut,
    },
    /// Bottom of the form spectrum of K × ℝ^m across all degrees.
    Alpha {
        #[arg(long)]
        input: String,
        /// Euclidean rank m.
        #[arg(long = "euclidean-rank")]
        euclidean_rank: usize,
        #[command(flatten)]
        common: CommonOut,
    },
    /// Classify the essential spectrum of a warped-product model file.
    Warped {
        #[arg(long)]
        input: String,
        /// Also emit channel potentials for this degree.
        #[arg(long)]
        channels: Option<PathBuf>,
        /// Degree for --channels.
        #[arg(long)]
        degree: Option<usize>,
        /// Channel grid as `start,spacing,nodes`.
        #[arg(long)]
        grid: Option<String>,
        /// Fiber spectral cutoff for channel enumeration.
        #[arg(long, default_value_t = 100.0)]
        cutoff: f64,
        #[command(flatten)]
        common: CommonOut,
    },
    /// Certify spectral points of a sparse operator with plane-wave tests.
    Certify {
        /// Sparse-operator file.
        #[arg(long)]
        input: String,
        /// Comma-separated λ list.
        #[arg(long = "lambda")]
        lambdas: String,
        /// Resolvent shift α.
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Interpret the operator as the 1D grid `spacing,extent`.
        #[arg(long)]
        grid: Option<String>,
        /// Cutoff inner radius (defaults to 0.8 × extent).
        #[arg(long = "inner-radius")]
        inner_radius: Option<f64>,
        #[command(flatten)]
        common: CommonOut,
    },
    /// Gromov cover and eigenvalue localization on a discrete domain.
    Localize {
        /// Domain file.
        #[arg(long)]
        input: String,
        /// Packing radius R'.
        #[arg(long = "r-prime")]
        r_prime: f64,
        #[command(flatten)]
        common: CommonOut,
    },
    /// Re-emit a report CSV as plot-ready series.
    Plot {
        #[arg(long)]
        input: String,
        /// `certificates` (lambda,delta,distance_bound) or `channels` (r,potential).
        #[arg(long)]
        kind: String,
        #[command(flatten)]
        common: CommonOut,
    },
}

fn write_out(common: &CommonOut, text: &str) -> anyhow::Result<()> {
    match &common.out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn parse_degree_range(spec: &str) -> anyhow::Result<Vec<usize>> {
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo: usize = lo.parse().context("bad degree range")?;
        let hi: usize = hi.parse().context("bad degree range")?;
        if hi < lo {
            bail!("degree range is empty");
        }
        Ok((lo..=hi).collect())
    } else {
        Ok(vec![spec.parse().context("bad degree")?])
    }
}

fn parse_list(spec: &str) -> anyhow::Result<Vec<f64>> {
    spec.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| anyhow::anyhow!("bad number {t:?}: {e}")))
        .collect()
}

pub fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Flat { input, degrees, lambda_max, common } => {
            let manifold = io::resolve_manifold(&input)?;
            let degrees = parse_degree_range(&degrees)?;
            let mut tables = Vec::new();
            for l in degrees {
                tables.push(form_spectrum(&manifold, l, lambda_max)?);
            }
            write_out(&common, &io::spectrum_csv(&tables))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Alpha { input, euclidean_rank, common } => {
            let manifold = io::resolve_manifold(&input)?;
            let n = manifold.dimension() + euclidean_rank;
            let mut rows = Vec::new();
            for k in 0..=n {
                let (a, branch) = alpha_with_branch(&manifold, euclidean_rank, n, k)?;
                rows.push((k, a, branch));
            }
            write_out(&common, &io::alpha_csv(&rows))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Warped { input, channels, degree, grid, cutoff, common } => {
            let text = std::fs::read_to_string(&input)
                .with_context(|| format!("reading {input}"))?;
            let model = io::parse_model(&text)?;
            let report = classify_all(&model)?;
            let any_unknown = report.iter().any(|r| r.verdict.is_unknown());
            write_out(&common, &io::classification_csv(&report))?;
            if let Some(channel_path) = channels {
                let degree =
                    degree.ok_or_else(|| anyhow::anyhow!("--channels needs --degree"))?;
                let grid_spec =
                    grid.ok_or_else(|| anyhow::anyhow!("--channels needs --grid start,spacing,nodes"))?;
                let parts = parse_list(&grid_spec)?;
                if parts.len() != 3 {
                    bail!("--grid must be start,spacing,nodes");
                }
                let grid = ChannelGrid::new(parts[0], parts[1], parts[2] as usize)?;
                let chans = channel_operators(&model, degree, grid, cutoff)?;
                std::fs::write(&channel_path, io::channel_potential_csv(&chans))
                    .with_context(|| format!("writing {}", channel_path.display()))?;
            }
            if common.strict && any_unknown {
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Certify { input, lambdas, alpha, grid, inner_radius, common } => {
            let text = std::fs::read_to_string(&input)
                .with_context(|| format!("reading {input}"))?;
            let operator = io::parse_operator(&text)?;
            let lambdas = parse_list(&lambdas)?;
            if lambdas.iter().any(|&l| l < 0.0) {
                bail!("lambda list must be nonnegative");
            }
            let grid = match grid {
                Some(spec) => {
                    let parts = parse_list(&spec)?;
                    if parts.len() != 2 {
                        bail!("--grid must be spacing,extent");
                    }
                    GridDomain::new(1, parts[0], parts[1])?
                }
                None => {
                    // index coordinates: unit spacing centered on the chain
                    let half = (operator.dim() - 1) / 2;
                    GridDomain::new(1, 1.0, half as f64)?
                }
            };
            if grid.node_count() != operator.dim() {
                bail!(
                    "grid has {} nodes but the operator has dimension {}",
                    grid.node_count(),
                    operator.dim()
                );
            }
            let ir = inner_radius.unwrap_or(0.8 * grid.extent());
            let jobs = lambdas
                .iter()
                .map(|&l| Ok((l, plane_wave_test_function(&grid, l, ir)?)))
                .collect::<formspectra::Result<Vec<_>>>()?;
            let certs = certify_batch(&operator, jobs, alpha, &WeylConfig::default())?;
            let any_unknown = certs
                .iter()
                .any(|c| c.verdict == formspectra::weyl::CertificateVerdict::Unknown);
            write_out(&common, &io::certificate_csv(&certs))?;
            if common.strict && any_unknown {
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Localize { input, r_prime, common } => {
            let text = std::fs::read_to_string(&input)
                .with_context(|| format!("reading {input}"))?;
            let domain = parse_domain(&text)?;
            let cover = gromov_cover(&domain, r_prime)?;
            let (bottom, ground) = smallest_eigenpair(domain.laplacian(), 1e-9, 400)?;
            let localized = localize_eigenvalue(&domain, &cover, &ground)?;
            let rows = vec![io::LocalizationRow { radius: r_prime, localized, bottom_eigenvalue: bottom }];
            write_out(&common, &io::localization_csv(&rows))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Plot { input, kind, common } => {
            let text = std::fs::read_to_string(&input)
                .with_context(|| format!("reading {input}"))?;
            let out = match kind.as_str() {
                "certificates" => project_csv(&text, &["lambda", "delta", "distance_bound"])?,
                "channels" => project_csv(&text, &["r", "potential"])?,
                other => bail!("unknown plot kind {other:?}"),
            };
            write_out(&common, &out)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Minimal domain file: `format domain v1` then one of
/// `interval <length> <spacing>` or `star <branches> <arm-nodes> <spacing>`.
fn parse_domain(text: &str) -> anyhow::Result<DiscreteDomain> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().unwrap_or_default();
    if header != "format domain v1" {
        bail!("expected header `format domain v1`");
    }
    let spec = lines.next().unwrap_or_default();
    let toks: Vec<&str> = spec.split_whitespace().collect();
    match toks.as_slice() {
        ["interval", length, spacing] => {
            Ok(DiscreteDomain::interval(length.parse()?, spacing.parse()?)?)
        }
        ["star", branches, arm, spacing] => {
            Ok(DiscreteDomain::star(branches.parse()?, arm.parse()?, spacing.parse()?)?)
        }
        _ => bail!("domain must be `interval <length> <spacing>` or `star <b> <arm> <h>`"),
    }
}

/// Projects named columns out of a simple comma-separated report.
fn project_csv(text: &str, columns: &[&str]) -> anyhow::Result<String> {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or_default();
    let names: Vec<&str> = header.split(',').collect();
    let idx: Vec<usize> = columns
        .iter()
        .map(|c| {
            names
                .iter()
                .position(|n| n == c)
                .ok_or_else(|| anyhow::anyhow!("input lacks column {c:?}"))
        })
        .collect::<anyhow::Result<_>>()?;
    let mut out = String::from(&columns.join(","));
    out.push('\n');
    for line in lines {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let row: Vec<&str> = idx.iter().map(|&i| fields.get(i).copied().unwrap_or("")).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    Ok(out)
}
