//! `catgeo`: formula tables, theorem checks on sampled spaces, and exports.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod range;
mod table;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use range::Range;
use table::TableKind;
use verify::{ScenarioArgs, VerifyArgs};

#[derive(Debug, Parser)]
#[command(
    name = "catgeo",
    version,
    about = "Comparison geometry in constant-curvature model planes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate k-curve formulas with exact and series columns.
    ///
    /// Ranges are `lo:hi:step` (from lo while below hi + step/2), `lo:hi`
    /// (ten steps) or a single value.
    Table {
        kind: TableKind,
        #[arg(long = "K", default_value = "0", allow_hyphen_values = true)]
        big_k: Range,
        #[arg(long, default_value = "1")]
        k: Range,
        /// Arclength grid.
        #[arg(long, default_value = "0.05:0.5:0.05")]
        s: Range,
        /// Distance grid for the Lipschitz table.
        #[arg(long, default_value = "0:0.2:0.02")]
        d: Range,
        #[command(flatten)]
        output: Output,
    },
    /// Run a theorem check; the exit status is 0 exactly when it passes.
    Verify {
        #[command(flatten)]
        args: VerifyArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Write a scenario's points and metrics as JSON.
    Export {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
struct Output {
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

impl Output {
    fn write(&self, text: &str) -> anyhow::Result<()> {
        match &self.out {
            Some(path) => {
                std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
            }
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                Ok(out.flush()?)
            }
        }
    }
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("CATGEO_THREADS") {
        let n: usize = v
            .parse()
            .with_context(|| format!("CATGEO_THREADS={v} is not a count"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    configure_threads()?;
    match cli.command {
        Command::Table {
            kind,
            big_k,
            k,
            s,
            d,
            output,
        } => {
            let grids = table::Grids {
                big_k: &big_k,
                k: &k,
                s: &s,
                d: &d,
            };
            let profile = table::build(kind, &grids)?;
            let text = match output.format.unwrap_or(Format::Csv) {
                Format::Csv => profile.to_csv(),
                Format::Json => serde_json::to_string_pretty(&profile)? + "\n",
            };
            output.write(&text)?;
            Ok(true)
        }
        Command::Verify { args, output } => {
            let report = verify::run(&args)?;
            let text = match output.format.unwrap_or(Format::Json) {
                Format::Json => report.to_json()? + "\n",
                Format::Csv => report.to_csv(),
            };
            output.write(&text)?;
            eprintln!(
                "{} {}: value {} tolerance {}",
                report.quantity.as_str(),
                if report.pass { "pass" } else { "FAIL" },
                report.value,
                report.tolerance
            );
            Ok(report.pass)
        }
        Command::Export { scenario, output } => {
            if output.format == Some(Format::Csv) {
                anyhow::bail!("export writes JSON only");
            }
            let name = scenario
                .scenario
                .clone()
                .context("--scenario is required")?;
            let kind = catgeo::scenarios::ScenarioKind::parse(&name)?;
            let sc = scenario.generate(kind, 500)?;
            output.write(&(sc.space.to_json(Some(kind.name()))? + "\n"))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
