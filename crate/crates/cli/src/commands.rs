use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use gca_core::complementarity::{gca_check_polynomial, is_gca_set, is_gca_set_padded, spectrum_flatness};
use gca_core::constructions::GcaSet;
use gca_core::formats::{Role, SetDoc};
use gca_core::planner::{self, CoverageKind, CoverageReport, FeasibilityReport, Recipe};
use gca_core::seeds::{search_base_sequences, search_golay_pair, SeedRegistry, SeedSearch};
use gca_core::{Alphabet, Error, Shape};

pub const EXIT_EXHAUSTED: u8 = 1;
pub const EXIT_INFEASIBLE: u8 = 2;
pub const EXIT_MISSING_SEED: u8 = 3;
pub const EXIT_VERIFICATION: u8 = 4;
pub const EXIT_BUDGET: u8 = 5;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_PARSE: u8 = 65;
const EXIT_IO: u8 = 74;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

/// Maps library errors onto the exit-code contract.
impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.root() {
            Error::MissingSeed(_) => EXIT_MISSING_SEED,
            Error::Parse(_) | Error::EmptySet | Error::InvalidShape(_) | Error::EntryCount { .. } => EXIT_PARSE,
            Error::AlphabetViolation { .. } => EXIT_PARSE,
            Error::Io(_) => EXIT_IO,
            _ => EXIT_VERIFICATION,
        };
        Failure::new(code, e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

#[derive(Parser, Debug)]
#[command(name = "gca", version, about = "Golay complementary array planner, generator and verifier")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide feasibility of a size and emit a construction recipe.
    Plan(PlanArgs),
    /// Execute a recipe (or plan one) and write the verified set.
    Generate(GenerateArgs),
    /// Check a set file with both oracles and report spectrum flatness.
    Verify(VerifyArgs),
    /// Exhaustive seed searches.
    Seed {
        #[command(subcommand)]
        command: SeedCommand,
    },
    /// Golay-number counts and quad sum coverage.
    Coverage(CoverageArgs),
    /// Spectrum flatness of a set file on a frequency grid.
    Spectrum(SpectrumArgs),
}

#[derive(Subcommand, Debug)]
enum SeedCommand {
    /// Search for a Golay pair or base sequences.
    Search(SeedSearchArgs),
}

#[derive(Args, Debug)]
struct Target {
    #[arg(long, value_parser = parse_alphabet)]
    alphabet: Alphabet,
    #[arg(long, value_parser = parse_role, default_value = "pair")]
    role: Role,
    /// Size as positive integers joined by 'x', e.g. 9x10.
    #[arg(long, value_parser = parse_shape)]
    shape: Shape,
}

#[derive(Args, Debug)]
struct PlanArgs {
    #[command(flatten)]
    target: Target,
    /// Seed table to plan against (default: bundled).
    #[arg(long)]
    seeds: Option<PathBuf>,
    /// Where to write the recipe.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    /// A gca-recipe/1 file. Without it, plan from --alphabet/--role/--shape.
    #[arg(long, conflicts_with_all = ["alphabet", "shape"])]
    recipe: Option<PathBuf>,
    #[arg(long, value_parser = parse_alphabet, requires = "shape")]
    alphabet: Option<Alphabet>,
    #[arg(long, value_parser = parse_role, default_value = "pair")]
    role: Role,
    #[arg(long, value_parser = parse_shape, requires = "alphabet")]
    shape: Option<Shape>,
    #[arg(long)]
    seeds: Option<PathBuf>,
    /// Where to write the set (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// A gca-set/1 file.
    input: PathBuf,
    /// Frequency grid points per dimension for the flatness check.
    #[arg(long, default_value_t = 16)]
    grid: usize,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    input: PathBuf,
    #[arg(long, default_value_t = 16)]
    grid: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SeedKindArg {
    Pair,
    BaseSequences,
}

#[derive(Args, Debug)]
struct SeedSearchArgs {
    #[arg(long, value_enum, default_value = "pair")]
    kind: SeedKindArg,
    #[arg(long, value_parser = parse_alphabet, default_value = "binary")]
    alphabet: Alphabet,
    /// Pair shape (kind pair).
    #[arg(long, value_parser = parse_shape, required_if_eq("kind", "pair"))]
    shape: Option<Shape>,
    /// Base-sequence order m, for BS(m+1, m).
    #[arg(long, required_if_eq("kind", "base-sequences"))]
    m: Option<usize>,
    /// Node budget.
    #[arg(long, default_value_t = 1_000_000_000)]
    budget: u64,
    /// Write the found seed as a one-record seed table.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CoverageArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: CoverageKind,
    #[arg(long, value_parser = parse_alphabet, default_value = "quaternary")]
    alphabet: Alphabet,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    limit: u64,
}

fn parse_alphabet(s: &str) -> Result<Alphabet, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_role(s: &str) -> Result<Role, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_shape(s: &str) -> Result<Shape, String> {
    Shape::parse(s).map_err(|e| e.to_string())
}

fn parse_kind(s: &str) -> Result<CoverageKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Plan(a) => plan(a),
        Command::Generate(a) => generate(a),
        Command::Verify(a) => verify(a),
        Command::Seed {
            command: SeedCommand::Search(a),
        } => seed_search(a),
        Command::Coverage(a) => coverage(a),
        Command::Spectrum(a) => spectrum(a),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))
}

fn print_json(value: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn registry(path: Option<&Path>) -> Result<SeedRegistry, Failure> {
    let Some(path) = path else {
        return Ok(SeedRegistry::bundled());
    };
    let (reg, report) = SeedRegistry::from_json(&read(path)?).map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
    for r in &report.rejected {
        eprintln!("warning: {}: record {} rejected: {}", path.display(), r.index, r.reason);
    }
    Ok(reg)
}

fn infeasible_code(report: &FeasibilityReport) -> u8 {
    if report.missing_seeds.is_empty() {
        EXIT_INFEASIBLE
    } else {
        EXIT_MISSING_SEED
    }
}

fn summarize(report: &FeasibilityReport) {
    let shape = report.shape.iter().map(usize::to_string).collect::<Vec<_>>().join("x");
    let what = format!("{} {:?} {shape}", report.alphabet, report.role).to_lowercase();
    if report.feasible {
        let strategy = report.strategy.as_deref().unwrap_or("-");
        let nodes = report.recipe.as_ref().map_or(0, Recipe::node_count);
        eprintln!("{what}: feasible via {strategy} ({nodes} recipe nodes)");
    } else {
        let known = if report.known_nonexistent { " (known not to exist)" } else { "" };
        eprintln!("{what}: infeasible{known}: {}", report.reason.as_deref().unwrap_or("-"));
    }
}

fn plan(a: PlanArgs) -> Outcome {
    let reg = registry(a.seeds.as_deref())?;
    let report = planner::plan(a.target.alphabet, a.target.role, &a.target.shape, &reg);
    summarize(&report);
    if let (Some(out), Some(recipe)) = (&a.out, &report.recipe) {
        write(out, &recipe.to_json())?;
    }
    print_json(&report);
    Ok(if report.feasible { 0 } else { infeasible_code(&report) })
}

fn generate(a: GenerateArgs) -> Outcome {
    let reg = registry(a.seeds.as_deref())?;
    let recipe = match (&a.recipe, a.alphabet, &a.shape) {
        (Some(path), _, _) => Recipe::parse(&read(path)?).map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?,
        (None, Some(alphabet), Some(shape)) => {
            let report = planner::plan(alphabet, a.role, shape, &reg);
            summarize(&report);
            match report.recipe {
                Some(r) if report.feasible || !report.missing_seeds.is_empty() => r,
                _ => return Err(Failure::new(EXIT_INFEASIBLE, report.reason.unwrap_or_default())),
            }
        }
        _ => return Err(Failure::new(EXIT_USAGE, "give --recipe, or --alphabet with --shape")),
    };
    let set = planner::execute(&recipe, &reg)?;
    let verdict = is_gca_set(set.arrays())?;
    eprintln!(
        "generated {} {} array(s) of shape {}: complementary, weight {}",
        set.len(),
        set.alphabet(),
        set.shape(),
        verdict.total_weight
    );
    let text = set.to_doc().to_json() + "\n";
    match &a.out {
        Some(out) => write(out, &text)?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn load_set(path: &Path) -> Result<(SetDoc, Vec<gca_core::Tensor>), Failure> {
    let parse = |e: Error| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display()));
    let doc = SetDoc::parse(&read(path)?).map_err(parse)?;
    let tensors = doc.tensors().map_err(parse)?;
    Ok((doc, tensors))
}

fn verify(a: VerifyArgs) -> Outcome {
    let (doc, tensors) = load_set(&a.input)?;
    let same_shape = tensors.iter().all(|t| t.shape() == tensors[0].shape());
    let verdict = if same_shape { is_gca_set(&tensors) } else { is_gca_set_padded(&tensors) }
        .map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
    let polynomial = if same_shape { Some(gca_check_polynomial(&tensors)?) } else { None };
    let deviation = if same_shape { Some(spectrum_flatness(&tensors, a.grid)?) } else { None };
    let structure = (!doc.structure.is_empty()).then(|| doc.structure.check(&tensors).is_ok());
    // Re-verifying through the constructor catches any disagreement between oracles.
    let accepted = same_shape && GcaSet::from_doc(&doc).is_ok();
    print_json(&json!({
        "verdict": verdict,
        "polynomial_check": polynomial,
        "spectrum_deviation": deviation,
        "grid": a.grid,
        "structure_ok": structure,
        "padded": !same_shape,
    }));
    if verdict.is_complementary {
        eprintln!("complementary, total weight {}", verdict.total_weight);
    } else {
        eprintln!("not complementary, largest sidelobe norm {}", verdict.max_sidelobe_norm);
    }
    Ok(if verdict.is_complementary && (accepted || !same_shape) { 0 } else { EXIT_VERIFICATION })
}

fn spectrum(a: SpectrumArgs) -> Outcome {
    let (_, tensors) = load_set(&a.input)?;
    let deviation = spectrum_flatness(&tensors, a.grid)?;
    eprintln!("largest relative deviation from flat on a {} grid: {deviation:.3e}", a.grid);
    print_json(&json!({ "grid": a.grid, "max_relative_deviation": deviation }));
    Ok(0)
}

fn seed_search(a: SeedSearchArgs) -> Outcome {
    let result = match a.kind {
        SeedKindArg::Pair => {
            let shape = a.shape.ok_or_else(|| Failure::new(EXIT_USAGE, "--shape is required"))?;
            search_golay_pair(a.alphabet, &shape, a.budget)
        }
        SeedKindArg::BaseSequences => {
            let m = a.m.ok_or_else(|| Failure::new(EXIT_USAGE, "--m is required"))?;
            search_base_sequences(m, a.budget)
        }
    }
    .map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    match result {
        SeedSearch::Found { record, nodes } => {
            eprintln!("found {} after {nodes} nodes", record.key());
            if let Some(out) = &a.out {
                let mut reg = SeedRegistry::empty();
                reg.insert(record.clone());
                write(out, &reg.to_json())?;
            }
            print_json(&json!({ "outcome": "found", "nodes": nodes, "seed": record.to_doc() }));
            Ok(0)
        }
        SeedSearch::Exhausted { nodes } => {
            eprintln!("exhausted after {nodes} nodes: no such seed exists");
            print_json(&json!({ "outcome": "exhausted", "nodes": nodes }));
            Ok(EXIT_EXHAUSTED)
        }
        SeedSearch::BudgetExceeded { nodes } => {
            eprintln!("budget of {nodes} nodes exceeded");
            print_json(&json!({ "outcome": "budget-exceeded", "nodes": nodes }));
            Ok(EXIT_BUDGET)
        }
    }
}

fn coverage(a: CoverageArgs) -> Outcome {
    let report = planner::coverage_scan(a.kind, a.alphabet, a.limit);
    match &report {
        CoverageReport::QuadSumCoverage { uncovered, limit, .. } => {
            let list = uncovered.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
            eprintln!("uncovered within {limit}: {{{list}}}");
        }
        CoverageReport::GolayCount { alphabet, limit, count, .. } => {
            eprintln!("{count} {alphabet} Golay numbers within {limit}");
        }
    }
    print_json(&report);
    Ok(0)
}
