//! Command-line front end.
//!
//! Exit codes: 0 success, 1 computation-level error (bad input, unsupported
//! eigenvalue field), 2 cross-check disagreement, 3 usage error. Diagnostics
//! go to stderr only; stdout carries the results and is byte-stable for a
//! given input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use skewpencil::aid::{cross_check, solve_aid, CrossCheckReport, FieldMode};
use skewpencil::corpus::corpus;
use skewpencil::json::{
    to_json_string, AidResultJson, CanonicalSpecJson, InvariantsJson, PencilJson,
    PencilOrAlgebraJson,
};
use skewpencil::lie::Genus2Algebra;
use skewpencil::pencil::Pencil;
use skewpencil::Error;

#[derive(Parser)]
#[command(
    name = "skewpencil",
    about = "Exact invariants of skew matrix pencils and almost inner derivations \
             of the associated 2-step nilpotent Lie algebras",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum FieldArg {
    /// Base field ℝ
    Real,
    /// Algebraically closed base field
    Closed,
}

impl From<FieldArg> for FieldMode {
    fn from(f: FieldArg) -> FieldMode {
        match f {
            FieldArg::Real => FieldMode::Real,
            FieldArg::Closed => FieldMode::AlgebraicallyClosed,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Elementary divisor pairs and minimal indices of a pencil file
    Invariants { file: PathBuf },
    /// Almost inner derivations of a pencil or algebra file
    Aid {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = FieldArg::Real)]
        field: FieldArg,
    },
    /// Closed-form dimensions from an invariants file
    Formula {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = FieldArg::Real)]
        field: FieldArg,
    },
    /// Canonical pencil from a block-spec or invariants file
    Canonical { file: PathBuf },
    /// Strict congruence test for two pencil files
    Congruent { file1: PathBuf, file2: PathBuf },
    /// Apply a seeded pseudo-random congruence transform
    Randomize {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Formula-vs-solver cross-check, repeated on seeded congruence copies
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = FieldArg::Real)]
        field: FieldArg,
        /// Number of random congruence copies to verify
        #[arg(long, default_value_t = 3)]
        seeds: u64,
    },
    /// Cross-check the built-in corpus and print a summary table
    Corpus {
        #[arg(long, value_enum, default_value_t = FieldArg::Real)]
        field: FieldArg,
        /// Directory for per-case JSON reports
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            return ExitCode::from(3);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Invariants { file } => cmd_invariants(&file),
        Command::Aid { file, field } => cmd_aid(&file, field.into()),
        Command::Formula { file, field } => cmd_formula(&file, field.into()),
        Command::Canonical { file } => cmd_canonical(&file),
        Command::Congruent { file1, file2 } => cmd_congruent(&file1, &file2),
        Command::Randomize { file, seed } => cmd_randomize(&file, seed),
        Command::Check { file, field, seeds } => cmd_check(&file, field.into(), seeds),
        Command::Corpus { field, out } => cmd_corpus(field.into(), out.as_deref()),
    }
}

fn read_file(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str, path: &Path) -> Result<T, Error> {
    serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("malformed JSON in {}: {e}", path.display())))
}

fn load_pencil(path: &Path) -> Result<Pencil, Error> {
    let text = read_file(path)?;
    let json: PencilJson = parse_json(&text, path)?;
    json.to_pencil()
}

fn load_pencil_or_algebra(path: &Path) -> Result<Pencil, Error> {
    let text = read_file(path)?;
    let json: PencilOrAlgebraJson = parse_json(&text, path)?;
    json.to_pencil()
}

/// `check` additionally accepts a canonical block-spec file and verifies
/// the pencil it builds.
#[derive(Deserialize)]
#[serde(untagged)]
enum CheckInput {
    Direct(PencilOrAlgebraJson),
    Spec(CanonicalSpecJson),
}

fn load_check_input(path: &Path) -> Result<Pencil, Error> {
    let text = read_file(path)?;
    let json: CheckInput = parse_json(&text, path)?;
    match json {
        CheckInput::Direct(direct) => direct.to_pencil(),
        CheckInput::Spec(spec) => spec.to_spec()?.build(),
    }
}

fn cmd_invariants(path: &Path) -> Result<u8, Error> {
    let pencil = load_pencil(path)?;
    let inv = pencil.invariants()?;
    print!("{}", to_json_string(&InvariantsJson::from_invariants(&inv)));
    Ok(0)
}

fn cmd_aid(path: &Path, mode: FieldMode) -> Result<u8, Error> {
    let pencil = load_pencil_or_algebra(path)?;
    let algebra = Genus2Algebra::from_pencil(pencil)?;
    let result = solve_aid(&algebra, mode)?;
    print!("{}", to_json_string(&AidResultJson::from_result(&result)));
    Ok(0)
}

#[derive(Serialize)]
struct FormulaJson {
    mode: String,
    dim_inn: usize,
    dim_aid: usize,
}

fn cmd_formula(path: &Path, mode: FieldMode) -> Result<u8, Error> {
    let text = read_file(path)?;
    let json: InvariantsJson = parse_json(&text, path)?;
    let inv = json.to_invariants()?;
    let (dim_inn, dim_aid) = skewpencil::aid::formula_dimension(&inv, mode)?;
    print!(
        "{}",
        to_json_string(&FormulaJson {
            mode: mode.to_string(),
            dim_inn,
            dim_aid,
        })
    );
    Ok(0)
}

/// `canonical` accepts either a block spec (`blocks`) or invariants
/// (`pairs` + `minimal_indices`).
#[derive(Deserialize)]
#[serde(untagged)]
enum CanonicalInput {
    Spec(CanonicalSpecJson),
    Invariants(InvariantsJson),
}

fn cmd_canonical(path: &Path) -> Result<u8, Error> {
    let text = read_file(path)?;
    let input: CanonicalInput = parse_json(&text, path)?;
    let pencil = match input {
        CanonicalInput::Spec(spec) => spec.to_spec()?.build()?,
        CanonicalInput::Invariants(inv) => {
            skewpencil::canonical::canonical_from_invariants(&inv.to_invariants()?)?
        }
    };
    print!("{}", to_json_string(&PencilJson::from_pencil(&pencil)));
    Ok(0)
}

#[derive(Serialize)]
struct CongruentJson {
    congruent: bool,
}

fn cmd_congruent(path1: &Path, path2: &Path) -> Result<u8, Error> {
    let p = load_pencil(path1)?;
    let q = load_pencil(path2)?;
    let congruent = p.strictly_congruent(&q)?;
    print!("{}", to_json_string(&CongruentJson { congruent }));
    Ok(0)
}

fn cmd_randomize(path: &Path, seed: u64) -> Result<u8, Error> {
    let pencil = load_pencil(path)?;
    let transformed = pencil.random_congruence(seed);
    print!("{}", to_json_string(&PencilJson::from_pencil(&transformed)));
    Ok(0)
}

fn report_line(label: &str, report: &CrossCheckReport) -> String {
    let mark = if report.agree { "ok" } else { "DISAGREE" };
    format!(
        "{label}: formula (inn {}, aid {}), solver (inn {}, aid {}) {mark}",
        report.formula.0, report.formula.1, report.solver.0, report.solver.1
    )
}

fn cmd_check(path: &Path, mode: FieldMode, seeds: u64) -> Result<u8, Error> {
    let pencil = load_check_input(path)?;
    // reject inputs whose commutator ideal is not 2-dimensional
    Genus2Algebra::from_pencil(pencil.clone())?;
    let mut all_agree = true;
    let base = cross_check(&pencil, mode)?;
    println!("{}", report_line("base", &base));
    all_agree &= base.agree;
    for seed in 1..=seeds {
        let transformed = pencil.random_congruence(seed);
        let report = cross_check(&transformed, mode)?;
        println!("{}", report_line(&format!("seed {seed}"), &report));
        all_agree &= report.agree;
    }
    if all_agree {
        println!("check passed: {} of {} agree", seeds + 1, seeds + 1);
        Ok(0)
    } else {
        println!("check failed: disagreement found");
        Ok(2)
    }
}

#[derive(Serialize)]
struct CorpusCaseJson {
    case: String,
    mode: String,
    n: usize,
    invariants: InvariantsJson,
    formula_inn: usize,
    formula_aid: usize,
    solver_inn: usize,
    solver_aid: usize,
    agree: bool,
}

fn cmd_corpus(mode: FieldMode, out: Option<&Path>) -> Result<u8, Error> {
    if let Some(dir) = out {
        fs::create_dir_all(dir)
            .map_err(|e| Error::Parse(format!("cannot create {}: {e}", dir.display())))?;
    }
    let cases = corpus()?;
    let mut disagreements = 0usize;
    println!(
        "{:<28} {:>3} {:>5} {:>12} {:>11}  agree",
        "case", "n", "inn", "aid(formula)", "aid(solver)"
    );
    for case in &cases {
        let report = cross_check(&case.pencil, mode)?;
        if !report.agree {
            disagreements += 1;
        }
        println!(
            "{:<28} {:>3} {:>5} {:>12} {:>11}  {}",
            case.name,
            case.pencil.n(),
            report.solver.0,
            report.formula.1,
            report.solver.1,
            if report.agree { "yes" } else { "NO" }
        );
        if let Some(dir) = out {
            let payload = CorpusCaseJson {
                case: case.name.clone(),
                mode: mode.to_string(),
                n: case.pencil.n(),
                invariants: InvariantsJson::from_invariants(&report.invariants),
                formula_inn: report.formula.0,
                formula_aid: report.formula.1,
                solver_inn: report.solver.0,
                solver_aid: report.solver.1,
                agree: report.agree,
            };
            let file = dir.join(format!("{}.json", case.name));
            fs::write(&file, to_json_string(&payload))
                .map_err(|e| Error::Parse(format!("cannot write {}: {e}", file.display())))?;
        }
    }
    if disagreements == 0 {
        println!("summary: {} of {} cases agree", cases.len(), cases.len());
        Ok(0)
    } else {
        println!("summary: {disagreements} of {} cases DISAGREE", cases.len());
        Ok(2)
    }
}
