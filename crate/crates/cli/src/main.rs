//! Command line front end: compile LegalRuleML to defeasible theories,
//! reason over them, and benchmark the pipeline.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use normforge::dl::{ConclusionTag, ProofLevel, Sign, Theory};
use normforge::lrml::parse_document;
use normforge::reasoner::{compute_extension, ground};
use normforge::render::{parse_dfl, render_dfl, render_lrml};
use normforge::transform::{reduct, transform, TransformOptions};
use normforge_cli::bench::{run_bench, CSV_HEADER};
use normforge_cli::synthetic::base_document;

const EXIT_TRANSFORM: u8 = 1;
const EXIT_IO: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "normforge", version, about = "Compile and reason over legal norms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a document into a defeasible theory
    Transform(TransformArgs),
    /// Compute an extension or answer tagged queries
    Reason(ReasonArgs),
    /// Time parse/transform/render over duplicated synthetic documents
    Bench(BenchArgs),
}

#[derive(Args)]
struct TransformArgs {
    /// Input document (.lrml/.xml or .dfl)
    input: PathBuf,
    /// Keep only this jurisdiction (plus universal rules)
    #[arg(long)]
    jurisdiction: Option<String>,
    /// Leave reparation chains unexpanded
    #[arg(long)]
    no_reduct: bool,
    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Dfl)]
    format: OutputFormat,
    /// Override input format sniffing
    #[arg(long, value_enum)]
    input_format: Option<InputFormat>,
    /// Write to a file instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ReasonArgs {
    /// Input document or theory
    input: PathBuf,
    /// Tagged query such as "+d -Discount(g1)"; repeatable. +d/-d query
    /// defeasible conclusions, +D/-D definite ones.
    #[arg(long = "query", allow_hyphen_values = true)]
    queries: Vec<String>,
    /// Extra facts merged before grounding (DFL `>> literal` lines)
    #[arg(long)]
    facts: Option<PathBuf>,
    /// Override input format sniffing
    #[arg(long, value_enum)]
    input_format: Option<InputFormat>,
}

#[derive(Args)]
struct BenchArgs {
    /// Base document; defaults to the built-in synthetic contract corpus
    #[arg(long)]
    base: Option<PathBuf>,
    /// Duplication factors to run (k = 1..=N)
    #[arg(long, default_value_t = 10)]
    duplications: usize,
    /// Executions averaged per stage
    #[arg(long, default_value_t = 5)]
    runs: usize,
    /// Write CSV to a file instead of stdout
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum OutputFormat {
    Dfl,
    Lrml,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum InputFormat {
    Lrml,
    Dfl,
}

enum CliError {
    /// Pipeline errors: bad documents, bad theories, failed preconditions.
    Transform(String),
    Io(String),
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Transform(_) => EXIT_TRANSFORM,
            CliError::Io(_) => EXIT_IO,
            CliError::Usage(_) => EXIT_USAGE,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Transform(m) | CliError::Io(m) | CliError::Usage(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Transform(args) => cmd_transform(args),
        Command::Reason(args) => cmd_reason(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("normforge: error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

fn sniff_format(path: &Path, requested: Option<InputFormat>) -> Result<InputFormat, CliError> {
    if let Some(f) = requested {
        return Ok(f);
    }
    match path.extension().and_then(|e| e.to_str()) {
        Some("dfl") => Ok(InputFormat::Dfl),
        Some("lrml") | Some("xml") => Ok(InputFormat::Lrml),
        other => Err(CliError::Usage(format!(
            "cannot tell the input format from extension {other:?}; pass --input-format"
        ))),
    }
}

/// Loads a theory from either format. Warnings go to stderr.
fn load_theory(path: &Path, requested: Option<InputFormat>, options: &TransformOptions) -> Result<Theory, CliError> {
    let text = read_input(path)?;
    match sniff_format(path, requested)? {
        InputFormat::Dfl => parse_dfl(&text).map_err(|e| CliError::Transform(e.to_string())),
        InputFormat::Lrml => {
            let doc = parse_document(&text).map_err(|e| CliError::Transform(e.to_string()))?;
            let out = transform(&doc, options).map_err(|e| CliError::Transform(e.to_string()))?;
            for w in &out.warnings {
                eprintln!("normforge: warning: {w}");
            }
            Ok(out.theory)
        }
    }
}

fn write_output(target: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match target {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            std::io::stdout()
                .flush()
                .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))
        }
    }
}

fn cmd_transform(args: TransformArgs) -> Result<(), CliError> {
    let options = TransformOptions {
        jurisdiction: args.jurisdiction.clone(),
        apply_reduct: !args.no_reduct,
        apply_verify_rules: true,
    };
    let theory = load_theory(&args.input, args.input_format, &options)?;
    let rendered = match args.format {
        OutputFormat::Dfl => render_dfl(&theory),
        OutputFormat::Lrml => render_lrml(&theory),
    };
    write_output(&args.output, &rendered)
}

fn parse_query(raw: &str) -> Result<ConclusionTag, CliError> {
    let usage = || {
        CliError::Usage(format!(
            "malformed query '{raw}': expected \"+d LITERAL\" with tag one of +d, -d, +D, -D"
        ))
    };
    let (tag, literal) = raw.trim().split_once(' ').ok_or_else(usage)?;
    let (sign, level) = match tag {
        "+d" => (Sign::Plus, ProofLevel::Defeasible),
        "-d" => (Sign::Minus, ProofLevel::Defeasible),
        "+D" => (Sign::Plus, ProofLevel::Definite),
        "-D" => (Sign::Minus, ProofLevel::Definite),
        _ => return Err(usage()),
    };
    let literal = normforge::dl::syntax::parse_literal(literal.trim()).map_err(|_| usage())?;
    Ok(ConclusionTag { sign, level, literal })
}

fn cmd_reason(args: ReasonArgs) -> Result<(), CliError> {
    let queries = args
        .queries
        .iter()
        .map(|q| parse_query(q).map(|tag| (q.clone(), tag)))
        .collect::<Result<Vec<_>, _>>()?;

    let mut theory = load_theory(&args.input, args.input_format, &TransformOptions::default())?;

    if let Some(facts_path) = &args.facts {
        let text = read_input(facts_path)?;
        let extra = parse_dfl(&text).map_err(|e| CliError::Transform(e.to_string()))?;
        if !extra.rules().is_empty() || !extra.superiority.is_empty() {
            return Err(CliError::Transform(format!(
                "facts file {} must contain only facts",
                facts_path.display()
            )));
        }
        let mut facts = theory.facts.clone();
        facts.extend(extra.facts);
        theory = Theory::new(facts, theory.rules().to_vec(), theory.superiority.clone());
    }

    let theory = reduct(&theory).map_err(|e| CliError::Transform(e.to_string()))?;
    let theory = ground(&theory).map_err(|e| CliError::Transform(e.to_string()))?;
    let extension = compute_extension(&theory).map_err(|e| CliError::Transform(e.to_string()))?;

    if queries.is_empty() {
        print!("{extension}");
        return Ok(());
    }
    let language = theory.literals();
    for (raw, tag) in queries {
        let answer = extension.contains(&tag)
            || (tag.sign == Sign::Minus && !language.contains(&tag.literal));
        println!("{raw}: {answer}");
    }
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<(), CliError> {
    let base = match &args.base {
        Some(path) => {
            let text = read_input(path)?;
            parse_document(&text).map_err(|e| CliError::Transform(e.to_string()))?
        }
        None => base_document(),
    };
    if args.duplications == 0 {
        return Err(CliError::Usage("--duplications must be at least 1".into()));
    }
    let rows = run_bench(&base, args.duplications, args.runs).map_err(CliError::Transform)?;
    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for row in &rows {
        csv.push_str(&row.csv());
        csv.push('\n');
    }
    write_output(&args.csv.clone(), &csv)
}
