use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use neutrabelian::analysis::{
    analyze, cm_status, maltsev_term_exists, method_for, verify_equivalence, AnalysisOptions,
    MaltsevStatus, SplitMode,
};
use neutrabelian::harness::campaign::{run_fuzz_campaign, CampaignOptions};
use neutrabelian::harness::dot::{export_lattice_dot, DotAnnotations};
use neutrabelian::harness::fixtures;
use neutrabelian::harness::format::{parse_algebra, serialize_algebra};
use neutrabelian::harness::fuzz::FuzzConfig;
use neutrabelian::{CommutatorTable, Error, FiniteAlgebra, Limits};

const EXIT_USAGE: u8 = 1;
const EXIT_RESOURCE: u8 = 2;
const EXIT_VIOLATION: u8 = 3;

/// Congruence lattices, modular commutators and the neutrabelian / split
/// centralizer conditions of finite algebras.
///
/// ALGEBRA arguments are a file path, `-` for stdin, or `@NAME` for a
/// built-in fixture. Caps come from NEUTRABELIAN_MAX_CON,
/// NEUTRABELIAN_MAX_CLOSURE and NEUTRABELIAN_TIME_BUDGET_MS.
#[derive(Parser)]
#[command(name = "neutrabelian", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: CM status, Con(A), both conditions, lemma checks.
    Analyze {
        algebra: String,
        /// Treat the algebra as congruence modular without a Maltsev witness.
        #[arg(long)]
        assert_cm: bool,
        /// Also check every subalgebra and give a dualizability verdict.
        #[arg(long)]
        hereditary: bool,
        #[arg(long, default_value = "exhaustive")]
        mode: SplitMode,
        /// One JSON record instead of the table.
        #[arg(long)]
        json: bool,
    },
    /// Compare the neutrabelian and split conditions in both split modes.
    Verify {
        algebra: String,
        #[arg(long)]
        assert_cm: bool,
    },
    /// Random Maltsev algebras checked against every invariant.
    Fuzz {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        size_min: usize,
        #[arg(long, default_value_t = 4)]
        size_max: usize,
        #[arg(long, default_value_t = 1)]
        extra_ops: usize,
        #[arg(long, default_value_t = 2)]
        extra_arity: usize,
        /// Write offending algebras here.
        #[arg(long)]
        dump_dir: Option<PathBuf>,
        /// Skip the term-condition cross-check.
        #[arg(long)]
        no_oracle: bool,
        /// Keep a random equivalence as a congruence in every algebra.
        #[arg(long)]
        planted: bool,
    },
    /// Search for a Maltsev term.
    Maltsev { algebra: String },
    /// List all nonempty subuniverses.
    Subalgebras { algebra: String },
    /// Hasse diagram of Con(A) in DOT syntax.
    LatticeDot {
        algebra: String,
        /// Omit the monolith, radical and shading annotations.
        #[arg(long)]
        plain: bool,
    },
    /// List the built-in algebras, or write them as files.
    Fixtures {
        #[arg(long)]
        write: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Algebra(Error),
    Resource(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Algebra(e)
    }
}

fn load(spec: &str) -> Result<FiniteAlgebra, Failure> {
    if let Some(name) = spec.strip_prefix('@') {
        return fixtures::fixture(name).ok_or_else(|| Failure::Usage(format!("no fixture named `{name}`")));
    }
    let text = if spec == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(spec).map_err(|e| Failure::Usage(format!("{spec}: {e}")))?
    };
    Ok(parse_algebra(&text)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let limits = Limits::from_env();
    match cli.command {
        Command::Analyze {
            algebra,
            assert_cm,
            hereditary,
            mode,
            json,
        } => {
            let a = load(&algebra)?;
            let opts = AnalysisOptions {
                assert_cm,
                hereditary,
                mode,
            };
            let report = analyze(&a, opts, &limits.start())?;
            if json {
                println!("{}", report.to_json_line());
            } else {
                println!("{report}");
            }
            if report.theorem_violation() {
                return Err(Failure::Violation(format!("{}: conditions disagree", report.algebra)));
            }
            if report.lemma_violation() {
                return Err(Failure::Violation(format!("{}: lemma checks failed", report.algebra)));
            }
        }
        Command::Verify { algebra, assert_cm } => {
            let a = load(&algebra)?;
            let budget = limits.start();
            let cm = cm_status(&a, assert_cm, &budget);
            let table = CommutatorTable::build(a, method_for(&cm), &budget)?;
            let mut bad = false;
            for mode in [SplitMode::Exhaustive, SplitMode::Guided] {
                let e = verify_equivalence(&table, cm.certified, mode, &budget)?;
                let tag = match (cm.certified, e.agree) {
                    (true, true) => "agree",
                    (true, false) => "disagree",
                    (false, true) => "uncertified-agree",
                    (false, false) => "uncertified-disagree",
                };
                println!(
                    "{:?}: {tag} (neutrabelian {}, split {})",
                    mode, e.neutrabelian.holds, e.split.holds
                );
                if let Some(dump) = &e.dump {
                    println!("{}", serde_json::to_string(&e.neutrabelian).unwrap());
                    println!("{}", serde_json::to_string(&e.split).unwrap());
                    print!("{dump}");
                }
                bad |= e.violation();
            }
            if bad {
                return Err(Failure::Violation(format!("{}: conditions disagree", table.algebra().name())));
            }
        }
        Command::Fuzz {
            seed,
            count,
            size_min,
            size_max,
            extra_ops,
            extra_arity,
            dump_dir,
            no_oracle,
            planted,
        } => {
            let cfg = FuzzConfig {
                seed,
                size_min,
                size_max,
                extra_ops,
                extra_arity,
                count,
                planted,
            };
            cfg.validate().map_err(Failure::Usage)?;
            let opts = CampaignOptions {
                limits,
                cross_oracle: !no_oracle,
                dump_dir,
                ..Default::default()
            };
            let s = run_fuzz_campaign(&cfg, &opts)?;
            println!("{}", s.to_json_line());
            eprintln!(
                "{} algebras, {} neutrabelian, {} split, {} gated, {} skipped, {} offending, {} ms",
                s.algebras,
                s.neutrabelian,
                s.split,
                s.gated,
                s.skipped.len(),
                s.offending.len(),
                s.total_ms
            );
            if !s.passed() {
                return Err(Failure::Violation(format!(
                    "{} theorem violations, {} mode disagreements, {} oracle mismatches, \
                     {} homomorphism mismatches, {} lemma failures",
                    s.theorem_violations,
                    s.mode_disagreements,
                    s.oracle_mismatches,
                    s.homomorphism_mismatches,
                    s.lemma_failures
                )));
            }
        }
        Command::Maltsev { algebra } => {
            let a = load(&algebra)?;
            match maltsev_term_exists(&a, &limits.start()) {
                MaltsevStatus::Exists { term } => println!("{term}"),
                MaltsevStatus::Absent => println!("none"),
                MaltsevStatus::Unknown { reason } => {
                    println!("unknown");
                    return Err(Failure::Resource(reason));
                }
            }
        }
        Command::Subalgebras { algebra } => {
            let a = load(&algebra)?;
            for s in a.enumerate_subuniverses() {
                let items: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                println!("{{{}}}", items.join(","));
            }
        }
        Command::LatticeDot { algebra, plain } => {
            let a = load(&algebra)?;
            let budget = limits.start();
            let cm = cm_status(&a, false, &budget);
            let table = CommutatorTable::build(a, method_for(&cm), &budget)?;
            let ann = if plain { DotAnnotations::none() } else { DotAnnotations::default() };
            print!("{}", export_lattice_dot(&table, ann)?);
        }
        Command::Fixtures { write } => {
            for a in fixtures::builtin_fixtures() {
                match &write {
                    Some(dir) => {
                        std::fs::create_dir_all(dir).map_err(|e| Failure::Usage(e.to_string()))?;
                        let path = dir.join(format!("{}.alg", a.name()));
                        std::fs::write(&path, serialize_algebra(&a)).map_err(|e| Failure::Usage(e.to_string()))?;
                        println!("{}", path.display());
                    }
                    None => println!("{:<6} size {}  ops {}", a.name(), a.size(), op_list(&a)),
                }
            }
        }
    }
    Ok(())
}

fn op_list(a: &FiniteAlgebra) -> String {
    let ops: Vec<String> = a
        .operations()
        .iter()
        .map(|o| format!("{}/{}", o.name(), o.arity()))
        .collect();
    if ops.is_empty() {
        "-".into()
    } else {
        ops.join(" ")
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Algebra(e)) if e.is_resource() => {
            eprintln!("resource cap: {e}");
            ExitCode::from(EXIT_RESOURCE)
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("resource cap: {msg}");
            ExitCode::from(EXIT_RESOURCE)
        }
        Err(Failure::Algebra(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Violation(msg)) => {
            eprintln!("THEOREM-VIOLATION: {msg}");
            ExitCode::from(EXIT_VIOLATION)
        }
    }
}
