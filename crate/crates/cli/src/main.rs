use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use pvk_cli::commands::{self, CliError, Options, RankMethod, SpecSource, Suite};
use pvk_cli::report::{Format, ReportDocument};
use pvk_cli::suites::DEFAULT_SEED;

#[derive(Parser)]
#[command(
    name = "pvk",
    version,
    about = "K-theory of crossed products by affine maps of tori"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format: md, json or csv.
    #[arg(long, global = true, default_value = "md")]
    format: Format,

    /// Cap on Smith elimination steps per block.
    #[arg(long, global = true)]
    budget: Option<u64>,

    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// K-groups of the crossed product for one linearization.
    Kgroups(SpecArgs),
    /// The Anzai table for n = 1..max-n, checked against the published rows.
    Table {
        #[arg(long, default_value_t = 11)]
        max_n: usize,
    },
    /// Common rank of K0 and K1 for the Anzai flow on T^n.
    Rank {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
    },
    /// Decide isomorphism of two simple quotients given as JSON files.
    Classify { first: PathBuf, second: PathBuf },
    /// Run a seeded verification suite.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SpecArgs {
    /// Anzai matrix on T^N.
    #[arg(long, value_name = "N")]
    anzai: Option<usize>,
    /// Ascending exponents k1,k2,... (each at least 1).
    #[arg(
        long,
        value_name = "K",
        value_delimiter = ',',
        allow_negative_numbers = true
    )]
    ascending: Option<Vec<BigInt>>,
    /// JSON file with Furstenberg exponents.
    #[arg(long, value_name = "FILE")]
    furstenberg: Option<PathBuf>,
    /// JSON file with an integer matrix.
    #[arg(long, value_name = "FILE")]
    general: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Snf,
    Partition,
    Genfun,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Identities,
    Duality,
    Oracle,
    UnipotentRank,
    OddSymmetry,
    All,
}

fn run(cli: &Cli) -> Result<ReportDocument, CliError> {
    let opts = Options {
        budget: cli.budget,
        timings: cli.timings,
    };
    match &cli.command {
        Command::Kgroups(s) => {
            let source = if let Some(n) = s.anzai {
                SpecSource::Anzai(n)
            } else if let Some(k) = &s.ascending {
                SpecSource::Ascending(k.clone())
            } else if let Some(p) = &s.furstenberg {
                SpecSource::Furstenberg(p)
            } else if let Some(p) = &s.general {
                SpecSource::General(p)
            } else {
                return Err(CliError::input("no linearization given"));
            };
            commands::cmd_kgroups(&commands::load_spec(source)?, opts)
        }
        Command::Table { max_n } => commands::cmd_table(*max_n, opts),
        Command::Rank { n, method } => {
            let method = match method {
                MethodArg::Snf => RankMethod::Snf,
                MethodArg::Partition => RankMethod::Partition,
                MethodArg::Genfun => RankMethod::Genfun,
                MethodArg::All => RankMethod::All,
            };
            commands::cmd_rank(*n, method, opts)
        }
        Command::Classify { first, second } => {
            let s = commands::load_quotient(first)?;
            let t = commands::load_quotient(second)?;
            commands::cmd_classify(&s, &t)
        }
        Command::Verify { suite, seed } => {
            let suite = match suite {
                SuiteArg::Identities => Suite::Identities,
                SuiteArg::Duality => Suite::Duality,
                SuiteArg::Oracle => Suite::Oracle,
                SuiteArg::UnipotentRank => Suite::Unipotent,
                SuiteArg::OddSymmetry => Suite::Symmetry,
                SuiteArg::All => Suite::All,
            };
            Ok(commands::cmd_verify(suite, *seed, opts))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(doc) => {
            print!("{}", doc.render(cli.format));
            ExitCode::from(doc.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.code as u8)
        }
    }
}
