//! `linmap` command-line tool.
//!
//! Exit codes: 0 when the checked property holds or the requested object was
//! produced, 1 when the property is violated or no witness exists, 2 for
//! usage and input errors, 3 when a search exceeds `--max-candidates`.

mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use linmap::field::{find_irreducible, FieldDescriptor};
use linmap::maps::{
    char2_indicator, check_additive, check_homogeneous, check_linear, rational_proof_trace, ratio_map,
    theorem1_counterexample, DEFAULT_SAMPLES, DEFAULT_SEED,
};
use linmap::search::{
    search_homogeneous_nonadditive, verify_theorem1_prime, SearchConfig, SearchMode, DEFAULT_MAX_CANDIDATES,
};
use linmap::{Error, Field, MapSpec, Strategy};

#[derive(Parser)]
#[command(name = "linmap", version, about = "Exact additivity and homogeneity checks for maps between vector spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Field utilities.
    Field {
        #[command(subcommand)]
        action: FieldCommand,
    },
    /// Check a map-spec file for additivity, homogeneity or linearity.
    Check(CheckArgs),
    /// Write one of the built-in counterexample maps to a file.
    Counterexample(CounterexampleArgs),
    /// Evaluate the identities showing that additive maps over Q are homogeneous.
    Trace(TraceArgs),
    /// Search all homogeneous maps F^D -> F^C for non-additive ones.
    Search(SearchArgs),
    /// Verify that every additive table map between Z_p spaces is homogeneous.
    #[command(name = "verify-theorem1")]
    VerifyTheorem1(VerifyArgs),
}

#[derive(Subcommand)]
enum FieldCommand {
    /// Print the first monic irreducible polynomial of a degree over Z_p.
    FindIrreducible {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PropertyArg {
    Additive,
    Homogeneous,
    Linear,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Exhaustive,
    Sampled,
}

#[derive(clap::Args)]
struct CheckArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    property: PropertyArg,
    /// Defaults to exhaustive over finite fields and sampled otherwise.
    #[arg(long, value_enum)]
    strategy: Option<StrategyArg>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum CounterexampleKind {
    Theorem1,
    Ratio,
    #[value(name = "char2-indicator")]
    Char2Indicator,
}

#[derive(clap::Args)]
struct CounterexampleArgs {
    #[arg(value_enum)]
    kind: CounterexampleKind,
    /// Field descriptor such as Q, Fp:5, Fq:2:1,1,1 or Qext:-2,0,1.
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(clap::Args)]
struct TraceArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    m: String,
    #[arg(long, allow_hyphen_values = true)]
    n: String,
    /// Domain vector, for example "(1,-2)".
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Count,
    Witness,
    All,
}

#[derive(clap::Args)]
struct SearchArgs {
    #[arg(long)]
    field: String,
    #[arg(long)]
    domain_dim: usize,
    #[arg(long)]
    codomain_dim: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Witness)]
    mode: ModeArg,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_CANDIDATES)]
    max_candidates: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    domain_dim: usize,
    #[arg(long)]
    codomain_dim: usize,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_CANDIDATES)]
    max_candidates: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

enum Failure {
    Input(String),
    Guard(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SearchSpaceTooLarge { .. } => Failure::Guard(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

/// `Ok(true)` for exit 0, `Ok(false)` for exit 1.
type Outcome = Result<bool, Failure>;

/// Writes to stdout, ignoring a closed pipe.
fn out(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit(format: Format, text: String, json: serde_json::Value) {
    match format {
        Format::Text => out(&text),
        Format::Json => out(&(serde_json::to_string_pretty(&json).expect("json value") + "\n")),
    }
}

fn load_map(path: &PathBuf) -> Result<MapSpec, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(MapSpec::from_json(&text)?)
}

fn parse_field(desc: &str) -> Result<Field, Failure> {
    Ok(desc.parse::<Field>()?)
}

fn find_irreducible_cmd(p: u64, degree: usize, format: Format) -> Outcome {
    let base = Field::prime(p)?;
    let poly = find_irreducible(&base, degree)?;
    let field = FieldDescriptor::Extension {
        base: Box::new(FieldDescriptor::Prime(p)),
        modulus: poly.clone(),
    };
    let text = format!("{}\nfield: {field}\n", poly.pretty());
    let json = serde_json::json!({
        "p": p,
        "degree": degree,
        "polynomial": poly.pretty(),
        "coefficients": poly.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "field": field.to_string(),
    });
    emit(format, text, json);
    Ok(true)
}

fn check_cmd(args: &CheckArgs) -> Outcome {
    let map = load_map(&args.input)?;
    let strategy = match args.strategy {
        None => match Strategy::default_for(&map) {
            Strategy::Exhaustive => Strategy::Exhaustive,
            Strategy::Sampled { .. } => Strategy::Sampled {
                seed: args.seed,
                samples: args.samples,
            },
        },
        Some(StrategyArg::Exhaustive) => Strategy::Exhaustive,
        Some(StrategyArg::Sampled) => Strategy::Sampled {
            seed: args.seed,
            samples: args.samples,
        },
    };
    let report = match args.property {
        PropertyArg::Additive => check_additive(&map, strategy)?,
        PropertyArg::Homogeneous => check_homogeneous(&map, strategy)?,
        PropertyArg::Linear => check_linear(&map, strategy)?,
    };
    let json = serde_json::to_value(&report).expect("report serializes");
    emit(args.format, render::report(&report), json);
    Ok(report.holds())
}

fn counterexample_cmd(args: &CounterexampleArgs) -> Outcome {
    let field = args.field.as_deref().map(parse_field).transpose()?;
    let map = match (args.kind, field) {
        (CounterexampleKind::Theorem1, Some(f)) => theorem1_counterexample(&f)?,
        (CounterexampleKind::Theorem1, None) => {
            return Err(Failure::Input("theorem1 needs --field with an extension field".into()))
        }
        (CounterexampleKind::Ratio, f) => ratio_map(&f.unwrap_or_else(Field::rationals))?,
        (CounterexampleKind::Char2Indicator, f) => {
            let map = char2_indicator();
            if f.is_some_and(|f| f != *map.field()) {
                return Err(Failure::Input("char2-indicator is defined over Fp:2".into()));
            }
            map
        }
    };
    std::fs::write(&args.out, map.to_json() + "\n")
        .map_err(|e| Failure::Input(format!("{}: {e}", args.out.display())))?;
    out(&format!("wrote {} map over {} to {}\n", map.body().kind(), map.field(), args.out.display()));
    Ok(true)
}

fn trace_cmd(args: &TraceArgs) -> Outcome {
    let map = load_map(&args.input)?;
    let int = |s: &str| {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| Failure::Input(format!("not an integer: {s}")))
    };
    let (m, n) = (int(&args.m)?, int(&args.n)?);
    let x = map.domain().parse_vector(&args.x)?;
    let trace = rational_proof_trace(&map, &m, &n, &x)?;
    emit(args.format, render::trace(&trace), render::trace_json(&trace));
    Ok(trace.all_equal())
}

fn search_cmd(args: &SearchArgs) -> Outcome {
    let field: FieldDescriptor = args.field.parse()?;
    let config = SearchConfig {
        field,
        domain_dim: args.domain_dim,
        codomain_dim: args.codomain_dim,
        mode: match args.mode {
            ModeArg::Count => SearchMode::CountOnly,
            ModeArg::Witness => SearchMode::FirstWitness,
            ModeArg::All => SearchMode::EnumerateAll,
        },
        max_candidates: args.max_candidates,
        jobs: args.jobs as usize,
    };
    let result = search_homogeneous_nonadditive(&config)?;
    emit(args.format, render::search(&result), result.to_json());
    Ok(result.non_additive_count() > 0u32.into())
}

fn verify_cmd(args: &VerifyArgs) -> Outcome {
    let field = Field::prime(args.p)?;
    let report = verify_theorem1_prime(
        &field,
        args.domain_dim,
        args.codomain_dim,
        args.max_candidates,
        args.jobs as usize,
    )?;
    emit(args.format, render::theorem1(&report), report.to_json());
    Ok(report.holds())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Field {
            action: FieldCommand::FindIrreducible { p, degree, format },
        } => find_irreducible_cmd(p, degree, format),
        Command::Check(args) => check_cmd(&args),
        Command::Counterexample(args) => counterexample_cmd(&args),
        Command::Trace(args) => trace_cmd(&args),
        Command::Search(args) => search_cmd(&args),
        Command::VerifyTheorem1(args) => verify_cmd(&args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
