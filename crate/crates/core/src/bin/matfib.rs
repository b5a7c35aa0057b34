//! Command-line interface over the matrix-fibring library.
//!
//! Matrices are given as spec files or builtin names (see `list-builtins`);
//! fibring pairs as pair-spec files or the word `identity`. Exit codes
//! follow one contract everywhere: 0 when the queried property holds (or
//! every check passes), 1 when it is refuted (a counterexample is printed),
//! 2 for usage, file, or parse errors.

use std::fs;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use matfib::catalog;
use matfib::clones::{clone_upto, same_presentation};
use matfib::conservativity::{check_strong_conservative, check_weak_conservative};
use matfib::identification::{identifies, theorem_sufficient, IdentificationMode};
use matfib::parse::{parse_formula, parse_pair, parse_sequent, parse_spec, SpecFile};
use matfib::render::{
    export_fibred_spec, export_matrix, export_pair, load_matrix_or_builtin, machine_matrix,
    render_matrix, render_pair,
};
use matfib::verification;
use matfib::{
    count_admissible_pairs, enumerate_admissible_pairs, fibre, is_admissible,
    FibringPair, Matrix, Side,
};

#[derive(Parser)]
#[command(
    name = "matfib",
    version,
    about = "Finite logical matrices, fibring by functions, and connective sharing",
    long_about = "Builds fibred matrices from two finite logical matrices and a fibring pair, \
                  decides entailment and tautologyhood by exhaustive valuation, checks \
                  admissibility and bounded conservativity, and decides bounded-depth \
                  connective identification.\n\nExit codes: 0 = holds / all pass, \
                  1 = refuted (counterexample printed), 2 = usage or parse error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a sequent in one matrix, or in every matrix of a list
    Entails(EntailsArgs),
    /// Decide tautologyhood in one matrix, or in every matrix of a list
    Taut(TautArgs),
    /// Build a fibred matrix and print it
    Fibre(FibreArgs),
    /// Print a matrix: carrier, designated values, and tables
    Table(TableArgs),
    /// Count or list the admissible fibring pairs between two matrices
    AdmissiblePairs(AdmissiblePairsArgs),
    /// Check bounded conservativity of a fibring over one component
    Conserve(ConserveArgs),
    /// Decide bounded identification of two connectives in a fibred matrix
    Identify(IdentifyArgs),
    /// Check the sufficient condition for connective identification
    CheckTheorem(CheckTheoremArgs),
    /// List the term functions a matrix defines at an arity
    Clone(CloneArgs),
    /// Compare the presentations (definable term functions) of two matrices
    SamePresentation(SamePresentationArgs),
    /// List the built-in matrices
    ListBuiltins(ListBuiltinsArgs),
    /// Run the bundled verification checks
    VerifyPaper(VerifyPaperArgs),
}

#[derive(Args)]
struct EntailsArgs {
    /// Sequent "premise, premise |- conclusion" (the left side may be empty)
    sequent: String,
    /// Matrices (spec files or builtin names); with several, the sequent
    /// must hold in every one
    #[arg(required = true)]
    matrices: Vec<String>,
    /// Stable tab-separated key=value output
    #[arg(long)]
    machine: bool,
}

#[derive(Args)]
struct TautArgs {
    /// Formula to test
    formula: String,
    /// Matrices (spec files or builtin names); with several, the formula
    /// must be a tautology of every one
    #[arg(required = true)]
    matrices: Vec<String>,
    /// Stable tab-separated key=value output
    #[arg(long)]
    machine: bool,
}

#[derive(Args)]
struct FibreArgs {
    /// One fibred spec file, or three inputs: <m1> <m2> <pair-file|identity>
    #[arg(required = true, num_args = 1..=3, value_name = "INPUT")]
    inputs: Vec<String>,
    /// Emit a spec file for the fibred matrix (reusable as identify input)
    #[arg(long)]
    export: bool,
    /// Stable machine-readable table listing
    #[arg(long, conflicts_with = "export")]
    machine: bool,
}

#[derive(Args)]
struct TableArgs {
    /// Matrix (spec file or builtin name)
    matrix: String,
    /// Emit the matrix in spec-file form
    #[arg(long)]
    export: bool,
    /// Stable machine-readable table listing
    #[arg(long, conflicts_with = "export")]
    machine: bool,
}

#[derive(Args)]
struct AdmissiblePairsArgs {
    /// First matrix (spec file or builtin name)
    m1: String,
    /// Second matrix (spec file or builtin name)
    m2: String,
    /// Print every pair instead of only the count
    #[arg(long)]
    list: bool,
    /// With --list, print pairs as pair-spec blocks ready for a file
    #[arg(long, requires = "list")]
    export: bool,
    /// Stable tab-separated key=value output
    #[arg(long, conflicts_with = "export")]
    machine: bool,
}

#[derive(Args)]
struct ConserveArgs {
    /// First component (spec file or builtin name)
    m1: String,
    /// Second component (spec file or builtin name)
    m2: String,
    /// Fibring pair (pair-spec file, or the word "identity")
    pair: String,
    /// Component to compare against: 1 or 2
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    side: u8,
    /// Which extension notion to check
    #[arg(long, value_enum, default_value_t = KindArg::Strong)]
    kind: KindArg,
    /// Maximum formula depth to search
    #[arg(long, default_value_t = 2)]
    depth: usize,
    /// Maximum premise-set size (strong only)
    #[arg(long, default_value_t = 2)]
    premises: usize,
    /// Number of variables in the searched formulas
    #[arg(long, default_value_t = 2)]
    vars: usize,
    /// Stable tab-separated key=value output
    #[arg(long)]
    machine: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Weak,
    Strong,
}

#[derive(Args)]
struct IdentifyArgs {
    /// Fibred spec file: two matrix blocks and one pair block
    spec: String,
    /// First connective (fibred name, e.g. conj@1)
    #[arg(long)]
    c1: String,
    /// Second connective (fibred name, e.g. conj@2)
    #[arg(long)]
    c2: String,
    /// Maximum formula depth to search
    #[arg(long, default_value_t = 3)]
    depth: usize,
    /// Number of variables in the searched formulas
    #[arg(long, default_value_t = 2)]
    vars: usize,
    /// Search by explicit association chains instead of swap pairs
    #[arg(long)]
    chains: bool,
    /// Stable tab-separated key=value output
    #[arg(long)]
    machine: bool,
}

#[derive(Args)]
struct CheckTheoremArgs {
    /// First component (spec file or builtin name)
    m1: String,
    /// Second component (spec file or builtin name)
    m2: String,
    /// Fibring pair (pair-spec file, or the word "identity")
    pair: String,
    /// Connective of the first component
    #[arg(long)]
    c1: String,
    /// Connective of the second component
    #[arg(long)]
    c2: String,
    /// Stable tab-separated key=value output
    #[arg(long)]
    machine: bool,
}

#[derive(Args)]
struct CloneArgs {
    /// Matrix (spec file or builtin name)
    matrix: String,
    /// Arity of the listed term functions
    #[arg(long, default_value_t = 2)]
    arity: usize,
    /// Stable tab-separated key=value output
    #[arg(long)]
    machine: bool,
}

#[derive(Args)]
struct SamePresentationArgs {
    /// First matrix (spec file or builtin name)
    m1: String,
    /// Second matrix (spec file or builtin name)
    m2: String,
    /// Largest arity to compare
    #[arg(long, default_value_t = 2)]
    arity: usize,
    /// Stable tab-separated key=value output
    #[arg(long)]
    machine: bool,
}

#[derive(Args)]
struct ListBuiltinsArgs {
    /// Stable tab-separated name and summary lines
    #[arg(long)]
    machine: bool,
}

#[derive(Args)]
struct VerifyPaperArgs {
    /// Stable tab-separated key=value output
    #[arg(long)]
    machine: bool,
}

fn main() -> ExitCode {
    // Die quietly when stdout is a closed pipe (e.g. piped through `head`),
    // matching the standard Unix text tools.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(error) => {
            eprintln!("error: {error:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Entails(args) => run_entails(args),
        Command::Taut(args) => run_taut(args),
        Command::Fibre(args) => run_fibre(args),
        Command::Table(args) => run_table(args),
        Command::AdmissiblePairs(args) => run_admissible_pairs(args),
        Command::Conserve(args) => run_conserve(args),
        Command::Identify(args) => run_identify(args),
        Command::CheckTheorem(args) => run_check_theorem(args),
        Command::Clone(args) => run_clone(args),
        Command::SamePresentation(args) => run_same_presentation(args),
        Command::ListBuiltins(args) => run_list_builtins(args),
        Command::VerifyPaper(args) => run_verify_paper(args),
    }
}

fn verdict_code(holds: bool) -> ExitCode {
    if holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// Loads a matrix from a builtin name, a single-matrix spec file, or a
/// fibred spec file — in the last case the constructed fibred matrix is
/// returned, so every matrix position accepts a fibring (and fibrings can
/// be iterated).
fn load_any_matrix(name: &str) -> anyhow::Result<Matrix> {
    if std::path::Path::new(name).exists() {
        let text = fs::read_to_string(name).with_context(|| format!("cannot read {name}"))?;
        return Ok(match parse_spec(&text)? {
            SpecFile::Single(m) => m,
            SpecFile::Fibred { m1, m2, pair } => fibre(&m1, &m2, &pair)?.matrix().clone(),
        });
    }
    Ok(load_matrix_or_builtin(name)?)
}

/// Loads a fibring pair argument: a pair-spec file, or the word "identity".
fn load_pair(m1: &Matrix, m2: &Matrix, arg: &str) -> anyhow::Result<FibringPair> {
    if arg == "identity" {
        if m1.value_count() != m2.value_count() {
            bail!(
                "identity pair needs equally sized carriers, got {} and {}",
                m1.value_count(),
                m2.value_count()
            );
        }
        return Ok(FibringPair::identity(m1));
    }
    let text = fs::read_to_string(arg).with_context(|| format!("cannot read {arg}"))?;
    Ok(parse_pair(&text, m1, m2)?)
}

/// Loads the fibring described by one spec file or an (m1, m2, pair) triple.
fn load_fibring(inputs: &[String]) -> anyhow::Result<(Matrix, Matrix, FibringPair)> {
    match inputs {
        [spec] => {
            let text =
                fs::read_to_string(spec).with_context(|| format!("cannot read {spec}"))?;
            match parse_spec(&text)? {
                SpecFile::Fibred { m1, m2, pair } => Ok((m1, m2, pair)),
                SpecFile::Single(_) => bail!(
                    "{spec} holds a single matrix; a fibred spec needs two matrices and a pair"
                ),
            }
        }
        [first, second, pair] => {
            let m1 = load_any_matrix(first)?;
            let m2 = load_any_matrix(second)?;
            let pair = load_pair(&m1, &m2, pair)?;
            Ok((m1, m2, pair))
        }
        _ => bail!("give one fibred spec file, or <m1> <m2> <pair>"),
    }
}

/// One deterministic line for a valuation, for machine output.
fn machine_valuation(valuation: &matfib::Valuation) -> String {
    valuation
        .iter()
        .map(|(var, value)| format!("{var}={value}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn run_entails(args: EntailsArgs) -> anyhow::Result<ExitCode> {
    let mut all_hold = true;
    for name in &args.matrices {
        let m = load_any_matrix(name)?;
        let (premises, conclusion) = parse_sequent(&args.sequent, m.signature())
            .with_context(|| format!("sequent for {}", m.name()))?;
        let verdict = m.entails(&premises, &conclusion)?;
        match verdict.counterexample() {
            None => {
                if args.machine {
                    println!("matrix={}\tverdict=holds", m.name());
                } else {
                    println!("{}: holds", m.name());
                }
            }
            Some(witness) => {
                all_hold = false;
                if args.machine {
                    println!(
                        "matrix={}\tverdict=refuted\twitness={}",
                        m.name(),
                        machine_valuation(witness)
                    );
                } else {
                    println!("{}: refuted by [{witness}]", m.name());
                }
            }
        }
    }
    if args.matrices.len() > 1 && !args.machine {
        println!(
            "class verdict: {}",
            if all_hold { "holds in every matrix" } else { "refuted" }
        );
    }
    Ok(verdict_code(all_hold))
}

fn run_taut(args: TautArgs) -> anyhow::Result<ExitCode> {
    let mut all_hold = true;
    for name in &args.matrices {
        let m = load_any_matrix(name)?;
        let formula = parse_formula(&args.formula, m.signature())
            .with_context(|| format!("formula for {}", m.name()))?;
        let verdict = m.entails(&[], &formula)?;
        match verdict.counterexample() {
            None => {
                if args.machine {
                    println!("matrix={}\tverdict=tautology", m.name());
                } else {
                    println!("{}: tautology", m.name());
                }
            }
            Some(witness) => {
                all_hold = false;
                if args.machine {
                    println!(
                        "matrix={}\tverdict=refuted\twitness={}",
                        m.name(),
                        machine_valuation(witness)
                    );
                } else {
                    println!("{}: refuted by [{witness}]", m.name());
                }
            }
        }
    }
    if args.matrices.len() > 1 && !args.machine {
        println!(
            "class verdict: {}",
            if all_hold { "tautology of every matrix" } else { "refuted" }
        );
    }
    Ok(verdict_code(all_hold))
}

fn run_fibre(args: FibreArgs) -> anyhow::Result<ExitCode> {
    let (m1, m2, pair) = load_fibring(&args.inputs)?;
    let fibred = fibre(&m1, &m2, &pair)?;
    if !is_admissible(&m1, &m2, &pair) {
        eprintln!("note: the pair is not admissible; designation may not be preserved");
    }
    if args.export {
        print!("{}", export_fibred_spec(&fibred));
    } else if args.machine {
        print!("{}", machine_matrix(fibred.matrix()));
    } else {
        print!("{}", render_pair(&m1, &m2, &pair));
        println!();
        print!("{}", render_matrix(fibred.matrix()));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_table(args: TableArgs) -> anyhow::Result<ExitCode> {
    let m = load_any_matrix(&args.matrix)?;
    if args.export {
        print!("{}", export_matrix(&m));
    } else if args.machine {
        print!("{}", machine_matrix(&m));
    } else {
        print!("{}", render_matrix(&m));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_admissible_pairs(args: AdmissiblePairsArgs) -> anyhow::Result<ExitCode> {
    let m1 = load_any_matrix(&args.m1)?;
    let m2 = load_any_matrix(&args.m2)?;
    let count = count_admissible_pairs(&m1, &m2);
    if args.machine {
        println!("count={count}");
    } else {
        println!(
            "{count} admissible pair{} between {} and {}",
            if count == 1 { "" } else { "s" },
            m1.name(),
            m2.name()
        );
    }
    if args.list {
        for (index, pair) in enumerate_admissible_pairs(&m1, &m2).iter().enumerate() {
            if args.export {
                println!();
                print!("{}", export_pair(&format!("pair{index}"), &m1, &m2, pair));
            } else if args.machine {
                let lambda: Vec<String> = m1
                    .values()
                    .iter()
                    .enumerate()
                    .map(|(i, v)| format!("{v}->{}", m2.value_name(pair.lambda_index(i))))
                    .collect();
                let mu: Vec<String> = m2
                    .values()
                    .iter()
                    .enumerate()
                    .map(|(j, v)| format!("{v}->{}", m1.value_name(pair.mu_index(j))))
                    .collect();
                println!(
                    "pair={index}\tlambda={}\tmu={}",
                    lambda.join(","),
                    mu.join(",")
                );
            } else {
                println!();
                println!("pair {index}:");
                print!("{}", render_pair(&m1, &m2, pair));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_conserve(args: ConserveArgs) -> anyhow::Result<ExitCode> {
    let m1 = load_any_matrix(&args.m1)?;
    let m2 = load_any_matrix(&args.m2)?;
    let pair = load_pair(&m1, &m2, &args.pair)?;
    let fibred = fibre(&m1, &m2, &pair)?;
    let (component, side) = match args.side {
        1 => (&m1, Side::One),
        _ => (&m2, Side::Two),
    };
    if component.signature().is_empty() {
        eprintln!(
            "note: {} declares no connectives; only variables are searched and the check is vacuous",
            component.name()
        );
    }
    let report = match args.kind {
        KindArg::Weak => {
            check_weak_conservative(component, &fibred, side, args.depth, args.vars)
        }
        KindArg::Strong => check_strong_conservative(
            component,
            &fibred,
            side,
            args.depth,
            args.premises,
            args.vars,
        ),
    };
    if args.machine {
        let mut line = format!(
            "conservative={}\tkind={}\tside={}\tdepth={}\tpremises={}\tvars={}\tbehaviours={}",
            report.conservative,
            match args.kind {
                KindArg::Weak => "weak",
                KindArg::Strong => "strong",
            },
            args.side,
            report.checked_depth,
            report.checked_premises,
            report.checked_vars,
            report.behaviours
        );
        if let Some(counterexample) = &report.counterexample {
            let premises: Vec<String> =
                counterexample.premises.iter().map(|f| f.to_string()).collect();
            line.push_str(&format!(
                "\tsequent={}|-{}\twitness={}",
                premises.join(","),
                counterexample.conclusion,
                machine_valuation(&counterexample.valuation)
            ));
        }
        println!("{line}");
    } else {
        println!("{}", format!("{report}").trim_end());
    }
    Ok(verdict_code(report.conservative))
}

fn run_identify(args: IdentifyArgs) -> anyhow::Result<ExitCode> {
    let text =
        fs::read_to_string(&args.spec).with_context(|| format!("cannot read {}", args.spec))?;
    let (m1, m2, pair) = match parse_spec(&text)? {
        SpecFile::Fibred { m1, m2, pair } => (m1, m2, pair),
        SpecFile::Single(_) => bail!(
            "{} holds a single matrix; identify needs a fibred spec (two matrices and a pair)",
            args.spec
        ),
    };
    let fibred = fibre(&m1, &m2, &pair)?;
    let mode = if args.chains {
        IdentificationMode::Chains
    } else {
        IdentificationMode::Close
    };
    let report = identifies(&fibred, &args.c1, &args.c2, args.depth, args.vars, mode)?;
    if args.machine {
        let mut line = format!(
            "identified={}\tdepth={}\tvars={}\tpairs={}",
            report.identified, report.checked_depth, report.checked_vars, report.pairs_checked
        );
        if let Some(counterexample) = &report.counterexample {
            line.push_str(&format!(
                "\tfirst={}\tsecond={}\twitness={}\tvalues={}|{}",
                counterexample.first,
                counterexample.second,
                machine_valuation(&counterexample.valuation),
                counterexample.first_value,
                counterexample.second_value
            ));
        }
        println!("{line}");
    } else {
        println!("{}", format!("{report}").trim_end());
    }
    Ok(verdict_code(report.identified))
}

fn run_check_theorem(args: CheckTheoremArgs) -> anyhow::Result<ExitCode> {
    let m1 = load_any_matrix(&args.m1)?;
    let m2 = load_any_matrix(&args.m2)?;
    let pair = load_pair(&m1, &m2, &args.pair)?;
    let sufficient = theorem_sufficient(&m1, &m2, &pair, &args.c1, &args.c2)?;
    if args.machine {
        println!("sufficient={sufficient}");
    } else if sufficient {
        println!(
            "the pair is admissible, mutually inverse, and an isomorphism of the {} / {} fragments; \
             the fibring identifies the two connectives",
            args.c1, args.c2
        );
    } else {
        println!(
            "the sufficient condition does not hold for ({}, {}); identification may still \
             hold at bounded depth (see identify)",
            args.c1, args.c2
        );
    }
    Ok(verdict_code(sufficient))
}

fn run_clone(args: CloneArgs) -> anyhow::Result<ExitCode> {
    let m = load_any_matrix(&args.matrix)?;
    let functions = clone_upto(&m, args.arity);
    if args.machine {
        for function in &functions {
            println!(
                "arity={}\ttable={}\tformula={}",
                args.arity,
                function.outputs(&m).join(","),
                function.formula
            );
        }
    } else {
        println!(
            "{} term function{} of arity {} over {}",
            functions.len(),
            if functions.len() == 1 { "" } else { "s" },
            args.arity,
            m.name()
        );
        for function in &functions {
            println!("  [{}]  defined by {}", function.outputs(&m).join(", "), function.formula);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_same_presentation(args: SamePresentationArgs) -> anyhow::Result<ExitCode> {
    let m1 = load_any_matrix(&args.m1)?;
    let m2 = load_any_matrix(&args.m2)?;
    let report = same_presentation(&m1, &m2, args.arity)?;
    if args.machine {
        let mut line = format!("same={}\tarity={}", report.same, report.checked_arity);
        if let Some(arity) = report.differing_arity {
            line.push_str(&format!("\tdiffers_at={arity}"));
        }
        println!("{line}");
    } else {
        println!("{}", format!("{report}").trim_end());
    }
    Ok(verdict_code(report.same))
}

fn run_list_builtins(args: ListBuiltinsArgs) -> anyhow::Result<ExitCode> {
    for entry in catalog::list() {
        if args.machine {
            println!("{}\t{}", entry.name, entry.summary);
        } else {
            println!("{:<12} {}", entry.name, entry.summary);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify_paper(args: VerifyPaperArgs) -> anyhow::Result<ExitCode> {
    let results = verification::run_all();
    let mut passed = 0;
    for result in &results {
        if result.passed {
            passed += 1;
        }
        if args.machine {
            println!(
                "check={}\tresult={}\tdetails={}",
                result.label,
                if result.passed { "pass" } else { "fail" },
                result.details
            );
        } else {
            println!("{result}");
        }
    }
    if !args.machine {
        println!("{passed} of {} checks passed", results.len());
    }
    Ok(verdict_code(passed == results.len()))
}
