use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod parse;
mod report;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "dualskel", version, about = "Finite duality data for Higgs-bundle moduli of reductive groups")]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Seed for the randomized checks.
    #[arg(long, default_value_t = 20240917, global = true)]
    seed: u64,
    /// Upper bound on enumerated subgroups.
    #[arg(long, default_value_t = 65536, global = true)]
    cap: u64,
    #[arg(long, global = true)]
    genus: Option<usize>,
    /// Semisimple algebra, e.g. `A1`, `B2`, `A1xA1`.
    #[arg(long, global = true)]
    algebra: Option<String>,
    /// Subgroup generators as rows of digits: `1,0;0,1`.
    #[arg(long, global = true)]
    gamma: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone)]
pub struct GroupArg {
    /// Named group such as `SL(5)`, `SO(8)`, `GSp(4)` or `E6_sc`.
    #[arg(value_name = "GROUP")]
    positional: Option<String>,
    #[arg(long = "group", value_name = "GROUP")]
    flag: Option<String>,
}

impl GroupArg {
    fn name(&self) -> Result<&str, commands::CliError> {
        self.flag
            .as_deref()
            .or(self.positional.as_deref())
            .ok_or_else(|| commands::CliError("a group name is required".into()))
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum HeisMode {
    Partition,
    Absolve,
    Maslov,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Center of a named group.
    Center(GroupArg),
    /// Langlands dual of a named group.
    Dual(GroupArg),
    /// Dual of the extended group against the extended dual, per central embedding.
    GtauVerify {
        #[command(flatten)]
        group: GroupArg,
        /// Check every general embedding instead of the standard one.
        #[arg(long)]
        all_embeddings: bool,
    },
    /// Component group of the torus quotient, compared with the center.
    Components {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        all_embeddings: bool,
    },
    /// Torus points fixed by the Weyl group.
    WeylInvariants(GroupArg),
    /// Global sections of the regular centralizer scheme for a ramification pattern.
    JSections {
        #[command(flatten)]
        group: GroupArg,
        /// `all`, `none` or `orbit:<root index>`.
        #[arg(long, default_value = "none")]
        ramified: String,
    },
    /// Lagrangian subgroups of the first cohomology with central coefficients.
    Lagrangians {
        #[arg(long)]
        count_only: bool,
    },
    /// Annihilator of a subgroup.
    Annihilator,
    /// Whether the skeleton of a subgroup is self-dual.
    SelfDual,
    /// Dual skeleton with the swap checks.
    Dualize,
    /// Finite Heisenberg group computations.
    Heisenberg {
        #[arg(value_enum)]
        mode: HeisMode,
        /// Coefficient group such as `Z/2 x Z/2`; defaults to the center of `--algebra`.
        #[arg(long)]
        coefficient: Option<String>,
        #[arg(long)]
        lagrangian: Option<String>,
        #[arg(long)]
        l1: Option<String>,
        #[arg(long)]
        l2: Option<String>,
        #[arg(long)]
        l3: Option<String>,
    },
    /// Fourier-Mukai rotation of graded dimensions, and the label exchange.
    FmMap {
        /// Graded dimensions as `m,n,count;...`.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        dims: String,
    },
    /// Bundled regression corpus.
    Regressions {
        /// Run against a zeroed pairing; every item should then fail.
        #[arg(long)]
        corrupt_pairing: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = commands::run(&cli);
    match result {
        Err(e) => {
            eprintln!("error: {}", e.0);
            ExitCode::from(2)
        }
        Ok(mut report) => {
            report.timing.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
            let text = match cli.format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_text(),
            };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
