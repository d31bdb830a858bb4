use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tiltver::extbounds::rank2_ext_report;
use tiltver::verify::{character_report, emit_report, levi_consistency, ph2_region_check, tmc_check, Case, CaseConfig, CharKind, Format};
use tiltver::{Error, Result, Weight};

#[derive(Parser)]
#[command(name = "tiltver", version, about = "Tilting module and baby Verma character checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Root system type, e.g. A2, B2, G2.
    #[arg(long = "type")]
    label: String,
    #[arg(long)]
    p: i64,
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Extra rows `type p : T=w : chi=w mult=n`.
    #[arg(long = "tilting-table")]
    tilting_table: Vec<PathBuf>,
    /// Extra rows `type p : nabla=w : L=w mult=n`.
    #[arg(long = "decomp-table")]
    decomp_table: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Stop at sum-formula ambiguities instead of computing form ranks.
    #[arg(long)]
    no_form_rank: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Weyl,
    Simple,
    Babyverma,
    Qhat,
    Tilting,
}

#[derive(Subcommand)]
enum Command {
    /// Compare a and b coefficients over X₁.
    Tmc {
        #[command(flatten)]
        common: Common,
        /// Restrict the sweep to these weights.
        #[arg(long)]
        lambda: Vec<String>,
    },
    /// Ext-weight candidates over X₁ × X₁.
    Ext {
        #[command(flatten)]
        common: Common,
    },
    /// Compare a with its Levi counterpart.
    Levi {
        #[command(flatten)]
        common: Common,
        /// Comma-separated 1-based simple root indices; empty for the torus.
        #[arg(long = "J", default_value = "")]
        j: String,
    },
    /// a = b on the region ⟨λ, α₀∨⟩ ≤ p(h−2).
    Ph2 {
        #[command(flatten)]
        common: Common,
    },
    /// Print one character.
    Char {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        weight: String,
        #[arg(long, value_enum)]
        kind: Kind,
    },
}

fn config(c: &Common) -> CaseConfig {
    CaseConfig {
        label: c.label.clone(),
        p: c.p,
        r: c.r,
        lambdas: None,
        tilting_tables: c.tilting_table.clone(),
        decomp_tables: c.decomp_table.clone(),
        format: format(c),
        form_resolution: !c.no_form_rank,
    }
}

fn format(c: &Common) -> Format {
    match c.format {
        OutFormat::Text => Format::Text,
        OutFormat::Json => Format::Json,
    }
}

fn write_out(c: &Common, text: &str) -> Result<()> {
    match &c.out {
        Some(path) => Ok(std::fs::write(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_weight(s: &str, rank: usize) -> Result<Weight> {
    let w = Weight::parse_coords(s)?;
    if w.rank() != rank {
        return Err(Error::Config(format!("weight {s} has rank {}, expected {rank}", w.rank())));
    }
    Ok(w)
}

fn parse_j(s: &str, rank: usize) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| match x.parse::<usize>() {
            Ok(i) if (1..=rank).contains(&i) => Ok(i - 1),
            _ => Err(Error::Config(format!("invalid simple root index {x}"))),
        })
        .collect()
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Tmc { common, lambda } => {
            let mut cfg = config(&common);
            if !lambda.is_empty() {
                let rank = tiltver::RootDatum::from_label(&common.label)?.rank();
                cfg.lambdas = Some(lambda.iter().map(|s| parse_weight(s, rank)).collect::<Result<_>>()?);
            }
            let case = Case::build(&cfg)?;
            let report = tmc_check(&case);
            write_out(&common, &emit_report(&report, cfg.format))?;
            Ok(report.has_refutation())
        }
        Command::Ext { common } => {
            let case = Case::build(&config(&common))?;
            let report = rank2_ext_report(&case.simples)?;
            write_out(&common, &emit_report(&report, format(&common)))?;
            Ok(false)
        }
        Command::Levi { common, j } => {
            let case = Case::build(&config(&common))?;
            let j = parse_j(&j, case.datum().rank())?;
            let report = levi_consistency(&case, &j)?;
            write_out(&common, &emit_report(&report, format(&common)))?;
            Ok(false)
        }
        Command::Ph2 { common } => {
            let case = Case::build(&config(&common))?;
            let report = ph2_region_check(&case)?;
            write_out(&common, &emit_report(&report, format(&common)))?;
            Ok(false)
        }
        Command::Char { common, weight, kind } => {
            let case = Case::build(&config(&common))?;
            let w = parse_weight(&weight, case.datum().rank())?;
            let kind = match kind {
                Kind::Weyl => CharKind::Weyl,
                Kind::Simple => CharKind::Simple,
                Kind::Babyverma => CharKind::Babyverma,
                Kind::Qhat => CharKind::Qhat,
                Kind::Tilting => CharKind::Tilting,
            };
            let report = character_report(&case, kind, &w)?;
            write_out(&common, &emit_report(&report, format(&common)))?;
            Ok(false)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
