//! `stratkit`: batch analysis of polynomial maps read from map files.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};
use stratkit::fixtures;
use stratkit::parse::{parse_map_with, MapFileOptions};
use stratkit::{MonomialOrder, PolyMap};

use report::{Input, Report};

#[derive(Parser, Debug)]
#[command(name = "stratkit", version, about = "Critical values, asymptotic sets and stratifications of polynomial maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    opts: Options,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Options {
    /// Map file, or the name of a bundled fixture. Reads standard input when absent.
    #[arg(short = 'i', long = "input", global = true)]
    input: Option<PathBuf>,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Monomial order of the source ring.
    #[arg(long, value_enum, default_value_t = Order::Grevlex, global = true)]
    order: Order,

    /// Reduction-step cap per Gröbner computation. Defaults to STRATKIT_BUDGET or 10^7.
    #[arg(long, global = true)]
    budget: Option<u64>,

    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    /// Accept maps whose component count differs from the variable count.
    #[arg(long, global = true)]
    rectangular: bool,

    /// Record wall-clock time per stage.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Order {
    Lex,
    Grevlex,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Jacobian matrix and determinant.
    Jacobian,
    /// Ideal of the singular locus.
    SingularLocus,
    /// Closure and exact pieces of the critical values K₀(F).
    CriticalValues,
    /// Ideal of the asymptotic set S_F.
    AsymptoticSet,
    /// Whether the image is dense.
    Dominant,
    /// Whether the map is proper.
    Proper,
    /// Leading forms, their generic rank and the dimension of their common zeros.
    LeadingForms,
    /// Thom's rank partition of the critical values.
    ThomPartition,
    /// Stratification of K₀(F) ∪ S_F.
    Stratify,
    /// Closedness, frontier, Jelonek and transversality checks.
    Verify,
    /// Dominance and purity of K₀(F) ∪ S_F.
    Conjecture,
    /// Analyse and verify every bundled fixture.
    Corpus,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Jacobian => "jacobian",
            Command::SingularLocus => "singular-locus",
            Command::CriticalValues => "critical-values",
            Command::AsymptoticSet => "asymptotic-set",
            Command::Dominant => "dominant",
            Command::Proper => "proper",
            Command::LeadingForms => "leading-forms",
            Command::ThomPartition => "thom-partition",
            Command::Stratify => "stratify",
            Command::Verify => "verify",
            Command::Conjecture => "conjecture",
            Command::Corpus => "corpus",
        }
    }
}

fn read_input(opts: &Options) -> Result<(String, String), String> {
    match &opts.input {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => Ok((path.display().to_string(), text)),
            Err(e) => {
                let name = path.to_string_lossy();
                let stem = name.strip_suffix(".map").unwrap_or(&name);
                fixtures::map_text(stem)
                    .map(|t| (stem.to_string(), t))
                    .ok_or_else(|| format!("cannot read {}: {e}", path.display()))
            }
        },
        None => {
            let mut text = String::new();
            std::io::Read::read_to_string(&mut std::io::stdin(), &mut text)
                .map_err(|e| format!("cannot read standard input: {e}"))?;
            Ok(("-".to_string(), text))
        }
    }
}

fn load_map(opts: &Options) -> Result<(Input, PolyMap), String> {
    let (source, text) = read_input(opts)?;
    let digest = hex::encode(Sha256::digest(text.as_bytes()));
    let order = match opts.order {
        Order::Lex => MonomialOrder::Lex,
        Order::Grevlex => MonomialOrder::GrevLex,
    };
    let map_opts = MapFileOptions {
        rectangular: opts.rectangular,
        order,
    };
    let map = parse_map_with(&text, &map_opts).map_err(|e| format!("{source}: {e}"))?;
    Ok((
        Input {
            source,
            name: map.name().map(str::to_string),
            sha256: digest,
        },
        map,
    ))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = cli.opts;
    let budget = opts.budget.unwrap_or_else(stratkit::ideal::budget::default_budget);
    stratkit::ideal::budget::set_step_budget(budget);

    let mut report = Report::new(cli.command.name(), budget, opts.timings);
    if cli.command == Command::Corpus {
        commands::corpus(&mut report, &opts, budget);
    } else {
        match load_map(&opts) {
            Ok((input, map)) => {
                report.input = Some(input);
                commands::run(cli.command, &mut report, &map, &opts);
            }
            Err(msg) => report.fail(msg),
        }
    }

    if opts.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if let Some(e) = &report.error {
        eprintln!("error: {e}");
    }
    ExitCode::from(report.exit_code())
}
