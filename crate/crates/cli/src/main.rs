use clap::{Parser, ValueEnum};
use gwmirror_cli::{cmd_run, parse_config, CliError, ResultDocument};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "gwmirror", version, about = "Genus-zero invariants of concavex bundles on toric manifolds")]
struct Args {
    /// Run configuration (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Overrides run.d_max.
    #[arg(long)]
    dmax: Option<u32>,
    /// Overrides run.weight_seed.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the document here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also run the degree-two graph-sum oracle.
    #[arg(long)]
    long_tests: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn run(args: &Args) -> Result<ResultDocument, CliError> {
    let text = std::fs::read_to_string(&args.config)?;
    let mut cfg = parse_config(&text)?;
    if let Some(d) = args.dmax {
        cfg.run.d_max = d;
    }
    if let Some(s) = args.seed {
        cfg.run.weight_seed = s;
    }
    cfg.validate()?;
    cmd_run(&cfg, args.long_tests)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let doc = match run(&args) {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!("gwmirror: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let body = match args.format {
        Format::Json => doc.to_json(),
        Format::Csv => doc.to_csv(),
    };
    let written = match &args.out {
        Some(path) => std::fs::write(path, body),
        None => {
            println!("{body}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("gwmirror: {e}");
        return ExitCode::from(1);
    }
    if doc.any_failed() {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}
