//! `catkit`: compute the Catalan transform, enumerate constrained-sequence
//! families, run the path/sequence bijection, verify the counting identities
//! exhaustively, and look sequences up in the OEIS.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 network error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use catkit_core::bijection::{dyck_to_seq, seq_to_dyck};
use catkit_core::dyckpath::parse_path;
use catkit_core::exactnum::catalan_prefix;
use catkit_core::families::{count_family, enumerate_family, ConstrainedSeq, FamilySpec};
use catkit_core::oeis::{FixtureStore, NetworkClient, Oeis, Source};
use catkit_core::seqio::{self, Format};
use catkit_core::transform::{catalan_transform, shifted_catalan, TransformMode};
use catkit_core::verify::{parse_selection, run_suites, Status};
use catkit_core::{Error, IntSeq};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "catkit",
    version,
    about = "Catalan transform verification workbench"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print b_0..b_N of the Catalan transform of an input sequence.
    Transform(TransformArgs),
    /// List the members of a family, or count them.
    Enumerate(EnumerateArgs),
    /// Map a Dyck path to its sequence, or a sequence back to its path.
    Biject(BijectArgs),
    /// Run exhaustive verification suites.
    Verify(VerifyArgs),
    /// Look up sequences in the OEIS (fixtures by default).
    Oeis(OeisArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Direct,
    Reversed,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SourceArg {
    Fixtures,
    Network,
}

#[derive(Args)]
struct TransformArgs {
    /// `catalan`, `shifted:K` or `file:PATH`.
    #[arg(long, default_value = "catalan")]
    input: String,
    /// Last index to print.
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "direct")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
}

#[derive(Args)]
struct EnumerateArgs {
    /// `A:n`, `B:n:k`, `D:n:s`, `F:n:k` or `R:m:bound`.
    #[arg(long)]
    family: String,
    #[arg(long)]
    count_only: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
}

#[derive(Args)]
#[command(group(ArgGroup::new("input").required(true).args(["dyck", "seq"])))]
struct BijectArgs {
    /// Dyck path as a U/D string.
    #[arg(long)]
    dyck: Option<String>,
    /// Comma-separated sequence.
    #[arg(long)]
    seq: Option<String>,
    /// Number of forced leading upsteps.
    #[arg(long, default_value_t = 0)]
    k: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// theorem1, prop2, prop4, prop5, theorem5, theorem6, identities, remark or all.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Size cap; defaults per suite.
    #[arg(long)]
    max_n: Option<usize>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("query").required(true).args(["terms", "fetch"])))]
struct OeisArgs {
    /// Comma-separated terms to search for.
    #[arg(long)]
    terms: Option<String>,
    /// A-number to fetch.
    #[arg(long)]
    fetch: Option<String>,
    #[arg(long, value_enum, default_value = "fixtures")]
    source: SourceArg,
    /// Fixture directory; overrides $CATKIT_FIXTURES.
    #[arg(long)]
    fixtures: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Network(_)) { 3 } else { 2 };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Transform(args) => cmd_transform(args),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Biject(args) => cmd_biject(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Oeis(args) => cmd_oeis(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn input_sequence(spec: &str, len: usize) -> Result<IntSeq, Error> {
    if spec == "catalan" {
        return Ok(catalan_prefix(len));
    }
    if let Some(k) = spec.strip_prefix("shifted:") {
        let k = k
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad shift `{k}`")))?;
        return Ok(shifted_catalan(k, len));
    }
    if let Some(path) = spec.strip_prefix("file:") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {path}: {e}")))?;
        let seq = seqio::parse_sequence(&text)?;
        if seq.len() < len {
            return Err(Error::InvalidInput(format!(
                "{path} has {} terms, {len} needed",
                seq.len()
            )));
        }
        return Ok(seq.resized(len));
    }
    Err(Error::InvalidInput(format!(
        "unknown input `{spec}` (expected catalan, shifted:K or file:PATH)"
    )))
}

fn cmd_transform(args: TransformArgs) -> CmdResult {
    let a = input_sequence(&args.input, args.n + 1)?;
    let mode = match args.mode {
        ModeArg::Direct => TransformMode::Direct,
        ModeArg::Reversed => TransformMode::Reversed,
    };
    let b = catalan_transform(&a, mode)?;
    println!("{}", seqio::write_sequence(&b, args.format.into()));
    Ok(())
}

fn cmd_enumerate(args: EnumerateArgs) -> CmdResult {
    let spec: FamilySpec = args.family.parse()?;
    let format: Format = args.format.into();
    if args.count_only {
        let count = count_family(&spec);
        match format {
            Format::Json => println!("\"{count}\""),
            Format::Csv => println!("{count}"),
        }
        return Ok(());
    }
    let mut out = std::io::BufWriter::new(std::io::stdout().lock());
    for member in enumerate_family(&spec) {
        let line = match format {
            Format::Json => serde_json::to_string(member.entries()).expect("u32 arrays serialize"),
            Format::Csv => member.to_string(),
        };
        if writeln!(out, "{line}").is_err() {
            break;
        }
    }
    Ok(())
}

fn cmd_biject(args: BijectArgs) -> CmdResult {
    if let Some(text) = args.dyck {
        let path = parse_path(&text)?;
        println!("{}", dyck_to_seq(&path, args.k)?);
    } else if let Some(text) = args.seq {
        let seq: ConstrainedSeq = text.parse()?;
        println!("{}", seq_to_dyck(&seq, args.k)?);
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let suites = parse_selection(&args.suite)?;
    let reports = run_suites(&suites, args.max_n)?;
    let passed = reports.iter().all(|r| r.passed());
    let json = if args.suite == "all" {
        serde_json::json!({
            "suite": "all",
            "status": if passed { Status::Pass } else { Status::Fail },
            "reports": reports,
        })
    } else {
        serde_json::to_value(&reports[0]).expect("reports serialize")
    };
    let doc = serde_json::to_string_pretty(&json).expect("reports serialize");
    let _ = writeln!(std::io::stdout().lock(), "{doc}");
    for r in &reports {
        eprintln!("{}", r.summary());
    }
    if passed {
        Ok(())
    } else {
        Err(Failure {
            code: 1,
            message: "verification failed".into(),
        })
    }
}

fn cmd_oeis(args: OeisArgs) -> CmdResult {
    let source = match args.source {
        SourceArg::Fixtures => Source::Fixtures,
        SourceArg::Network => Source::Network,
    };
    let store = match args.fixtures {
        Some(dir) => FixtureStore::with_dir(dir)?,
        None => FixtureStore::from_env()?,
    };
    let oeis = Oeis::new(store, NetworkClient::from_env());
    let entries = if let Some(terms) = args.terms {
        oeis.search_by_terms(&seqio::parse_csv(&terms)?, source)?
    } else {
        let a_number = args.fetch.expect("clap enforces one of --terms/--fetch");
        vec![oeis.fetch(&a_number, source)?]
    };
    for e in entries {
        println!("{}", serde_json::to_string(&e).expect("entries serialize"));
    }
    Ok(())
}
