//! `tp` — build fixed-point models of truth and paradoxicality, classify
//! sentences, check sequent proofs, and compare the two jump variants.

mod commands;
mod report;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use tp_core::jump::Variant;
use tp_core::zoo::ZooSpec;

#[derive(Parser)]
#[command(
    name = "tp",
    about = "Fixed-point models and proof checking for a theory of truth and paradoxicality"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the least fixed point for a definition file and report
    /// classifications and invariants.
    Model {
        #[arg(long)]
        defs: PathBuf,
        /// Override the file's #domain directive.
        #[arg(long)]
        domain: Option<u64>,
        #[arg(long, default_value = "tp")]
        variant: String,
        /// Write the JSON report here in addition to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Classify the named sentences of a definition file.
    Classify {
        #[arg(long)]
        defs: PathBuf,
        #[arg(long)]
        domain: Option<u64>,
        #[arg(long, default_value = "tp")]
        variant: String,
        /// Restrict output to these names.
        #[arg(long)]
        sentence: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check proof scripts and cross-validate them against a model.
    Check {
        /// Proof script files (JSON).
        #[arg(long, required = true, num_args = 1..)]
        proof: Vec<PathBuf>,
        #[arg(long, default_value = "tp")]
        system: String,
        /// Admit the contrapositive interaction schema (negative control).
        #[arg(long)]
        allow_extra_axiom: bool,
        /// Definition file for the cross-validation model; defaults to the
        /// bundled zoo.
        #[arg(long)]
        defs: Option<PathBuf>,
        #[arg(long)]
        domain: Option<u64>,
        #[arg(long, default_value = "tp")]
        variant: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Write the bundled zoo definition file and proof corpus.
    Zoo {
        #[arg(long)]
        out: PathBuf,
        /// Iterated-ascription bound for the McGee chain.
        #[arg(long, default_value_t = 5)]
        k: u32,
        #[arg(long, default_value_t = 400)]
        domain: u64,
    },
    /// Run both variants and report classification differences.
    Compare {
        #[arg(long)]
        defs: PathBuf,
        #[arg(long)]
        domain: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn read_defs(path: &PathBuf) -> Result<(String, String)> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok((path.display().to_string(), text))
}

fn write_json<T: serde::Serialize>(out: &Option<PathBuf>, value: &T) -> Result<()> {
    if let Some(path) = out {
        let mut s = serde_json::to_string_pretty(value)?;
        s.push('\n');
        std::fs::write(path, s).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn emit<T: serde::Serialize>(format: Format, value: &T, text: String) -> Result<()> {
    match format {
        Format::Text => print!("{text}"),
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(value)?);
        }
    }
    Ok(())
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Model {
            defs,
            domain,
            variant,
            out,
            format,
        } => {
            let variant: Variant = variant.parse().map_err(anyhow::Error::msg)?;
            let (label, text) = read_defs(&defs)?;
            let report = commands::cmd_model(&label, &text, domain, variant, true)?;
            write_json(&out, &report)?;
            emit(format, &report, report.render_text())?;
            Ok(report.all_pass())
        }
        Cmd::Classify {
            defs,
            domain,
            variant,
            sentence,
            format,
        } => {
            let variant: Variant = variant.parse().map_err(anyhow::Error::msg)?;
            let (label, text) = read_defs(&defs)?;
            let mut report = commands::cmd_model(&label, &text, domain, variant, false)?;
            if !sentence.is_empty() {
                report.classifications.retain(|k, _| sentence.contains(k));
                report.ranks.retain(|k, _| sentence.contains(k));
            }
            emit(format, &report, report.render_text())?;
            Ok(true)
        }
        Cmd::Check {
            proof,
            system,
            allow_extra_axiom,
            defs,
            domain,
            variant,
            out,
            format,
        } => {
            let system = system.parse().map_err(anyhow::Error::msg)?;
            let variant: Variant = variant.parse().map_err(anyhow::Error::msg)?;
            let (label, text) = match &defs {
                Some(path) => read_defs(path)?,
                None => ("<bundled zoo>".to_string(), commands::default_defs()?),
            };
            let mut scripts = Vec::new();
            for path in &proof {
                let content = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                scripts.push((path.display().to_string(), content));
            }
            let report = commands::cmd_check(
                &label,
                &text,
                domain,
                variant,
                system,
                allow_extra_axiom,
                &scripts,
            )?;
            write_json(&out, &report)?;
            emit(format, &report, report.render_text())?;
            Ok(report
                .proofs
                .iter()
                .all(|p| p.accepted && p.cross_valid.unwrap_or(true)))
        }
        Cmd::Zoo { out, k, domain } => {
            let spec = ZooSpec {
                mcgee_iterations: k,
                domain_bound: domain,
            };
            for path in commands::cmd_zoo(&out, &spec)? {
                println!("wrote {path}");
            }
            Ok(true)
        }
        Cmd::Compare {
            defs,
            domain,
            out,
            format,
        } => {
            let (label, text) = read_defs(&defs)?;
            let report = commands::cmd_compare(&label, &text, domain)?;
            write_json(&out, &report)?;
            emit(format, &report, report.render_text())?;
            Ok(report.tp.all_pass() && report.tp_plus.all_pass())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
