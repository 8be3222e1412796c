use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use consfree::analysis::{check_cons_free, check_left_linear, check_orthogonal, compute_b, CheckReport, Violation};
use consfree::encoding::{encode_term, encode_trs, SymbolTable};
use consfree::engine::{Normalizer, DEFAULT_FUEL};
use consfree::harness::{difftest_with, DiffOptions, Execution, GenParams, DEFAULT_FUEL_INTERP, DEFAULT_FUEL_ORACLE};
use consfree::interpreter::{build_q, interpret_with, simulate_term, Answer, InterpretOptions};
use consfree::syntax::{parse_term, parse_trs, print_term, SourceFile};
use consfree::{Term, Trs};

#[derive(Parser)]
#[command(name = "consfree", version, about = "Cons-free rewriting and a rewriting interpreter for it")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report cons-freeness, left-linearity, orthogonality and type order.
    Check {
        file: PathBuf,
        /// Print violations as JSON lines.
        #[arg(long)]
        json: bool,
    },
    /// Normalize a term with the weak-innermost strategy.
    Run {
        file: PathBuf,
        term: String,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
        /// Print every step.
        #[arg(long)]
        trace: bool,
        /// Check B-safety after every step.
        #[arg(long)]
        assert_bsafe: bool,
    },
    /// Print the encoded rules, or normalform(rules, term) when a term is given.
    Encode { file: PathBuf, term: Option<String> },
    /// Normalize a term through the interpreter program.
    Interpret {
        file: PathBuf,
        term: String,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
        #[arg(long)]
        assert_bsafe: bool,
    },
    /// Write the interpreter program as a .trs file.
    ExportQ { out: PathBuf },
    /// Compare direct and interpreted normalization on random systems.
    Difftest {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = DEFAULT_FUEL_ORACLE)]
        fuel_oracle: u64,
        #[arg(long, default_value_t = DEFAULT_FUEL_INTERP)]
        fuel_interp: u64,
        /// Also write the report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Skip the golden corpus.
        #[arg(long)]
        no_corpus: bool,
        /// Skip the B-safety assertions.
        #[arg(long)]
        no_bsafe: bool,
        /// Run cases one at a time.
        #[arg(long)]
        sequential: bool,
        #[arg(long, default_value_t = GenParams::default().max_symbols)]
        max_symbols: usize,
        #[arg(long, default_value_t = GenParams::default().max_rules)]
        max_rules: usize,
        #[arg(long, default_value_t = GenParams::default().max_depth)]
        max_depth: usize,
        #[arg(long, default_value_t = GenParams::default().max_arity)]
        max_arity: usize,
    },
}

/// Input problems: unreadable files and parse errors.
const EXIT_USAGE: u8 = 2;
const EXIT_FAIL: u8 = 1;

fn load(path: &Path) -> Result<Trs, ExitCode> {
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("{}: {e}", path.display());
        ExitCode::from(EXIT_USAGE)
    })?;
    parse_trs(&SourceFile::new(path.display().to_string(), text)).map_err(|diags| {
        for d in diags {
            eprintln!("{d}");
        }
        ExitCode::from(EXIT_USAGE)
    })
}

fn term(src: &str, trs: &Trs) -> Result<Term, ExitCode> {
    parse_term(src, trs).map_err(|diags| {
        for d in diags {
            eprintln!("{d}");
        }
        ExitCode::from(EXIT_USAGE)
    })
}

fn print_check(name: &str, report: &CheckReport, json: bool) {
    println!("{name}: {}", if report.passed { "pass" } else { "fail" });
    if json {
        print!("{}", report.to_json_lines());
    } else {
        for v in &report.violations {
            println!("  {v}");
        }
    }
}

fn check(path: &Path, json: bool) -> Result<ExitCode, ExitCode> {
    let trs = load(path)?;
    let cons_free = check_cons_free(&trs);
    let linear_violations: Vec<Violation> = trs
        .rules()
        .iter()
        .filter(|r| !check_left_linear(r))
        .map(|r| Violation {
            rule_index: r.index(),
            subterm: r.lhs().clone(),
            reason: "left-hand side is not linear".into(),
        })
        .collect();
    let left_linear = CheckReport {
        passed: linear_violations.is_empty(),
        violations: linear_violations,
    };
    let orthogonal = check_orthogonal(&trs);
    print_check("cons-free", &cons_free, json);
    print_check("left-linear", &left_linear, json);
    print_check("orthogonal", &orthogonal, json);
    println!("type order: {}", trs.type_order());
    let ok = cons_free.passed && left_linear.passed && orthogonal.passed;
    Ok(ExitCode::from(if ok { 0 } else { EXIT_FAIL }))
}

fn run(path: &Path, src: &str, fuel: u64, trace: bool, assert_bsafe: bool) -> Result<ExitCode, ExitCode> {
    let trs = load(path)?;
    let t = term(src, &trs)?;
    let b = assert_bsafe.then(|| compute_b(&t, &trs));
    let mut normalizer = Normalizer::new(&trs).fuel(fuel).b_check(b.as_ref());
    if trace {
        normalizer = normalizer.record_trace(true);
    }
    let (steps, result) = normalizer.run_traced(&t);
    if trace {
        print!("{}", steps.to_text());
    }
    match result {
        Ok(n) => {
            println!("{}", print_term(&n.term));
            eprintln!("{} steps", n.steps);
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            eprintln!("{e}");
            Ok(ExitCode::from(EXIT_FAIL))
        }
    }
}

fn encode(path: &Path, src: Option<&str>) -> Result<ExitCode, ExitCode> {
    let trs = load(path)?;
    let out = match src {
        None => encode_trs(&trs).map(|t| print_term(&t)),
        Some(src) => {
            let t = term(src, &trs)?;
            if encode_term(&t, &SymbolTable::new(&trs)).is_err() || !t.is_closed() {
                eprintln!("start term must be ground and first-order");
                return Err(ExitCode::from(EXIT_USAGE));
            }
            return match simulate_term(&trs, &t) {
                Ok(q) => {
                    println!("{}", print_term(&q));
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    eprintln!("{e}");
                    Ok(ExitCode::from(EXIT_FAIL))
                }
            };
        }
    };
    match out {
        Ok(s) => {
            println!("{s}");
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            eprintln!("{e}");
            Ok(ExitCode::from(EXIT_FAIL))
        }
    }
}

fn interpret(path: &Path, src: &str, fuel: u64, assert_b_safe: bool) -> Result<ExitCode, ExitCode> {
    let trs = load(path)?;
    let t = term(src, &trs)?;
    match interpret_with(&trs, &t, &InterpretOptions { fuel, assert_b_safe }) {
        Ok(i) => {
            match i.answer {
                Answer::Data(d) => println!("{}", print_term(&d)),
                Answer::Bottom => println!("bot"),
            }
            eprintln!("{} steps", i.steps);
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            eprintln!("{e}");
            Ok(ExitCode::from(EXIT_FAIL))
        }
    }
}

fn export_q(out: &Path) -> Result<ExitCode, ExitCode> {
    fs::write(out, build_q().source()).map_err(|e| {
        eprintln!("{}: {e}", out.display());
        ExitCode::from(EXIT_FAIL)
    })?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { file, json } => check(&file, json),
        Command::Run {
            file,
            term,
            fuel,
            trace,
            assert_bsafe,
        } => run(&file, &term, fuel, trace, assert_bsafe),
        Command::Encode { file, term } => encode(&file, term.as_deref()),
        Command::Interpret {
            file,
            term,
            fuel,
            assert_bsafe,
        } => interpret(&file, &term, fuel, assert_bsafe),
        Command::ExportQ { out } => export_q(&out),
        Command::Difftest {
            seed,
            cases,
            fuel_oracle,
            fuel_interp,
            report,
            no_corpus,
            no_bsafe,
            sequential,
            max_symbols,
            max_rules,
            max_depth,
            max_arity,
        } => {
            if [max_symbols, max_rules, max_depth, max_arity].contains(&0) {
                eprintln!("generator bounds must be at least 1");
                return ExitCode::from(EXIT_USAGE);
            }
            let p = GenParams {
                seed,
                max_symbols,
                max_rules,
                max_depth,
                max_arity,
            };
            let opts = DiffOptions {
                fuel_oracle,
                fuel_interp,
                assert_b_safe: !no_bsafe,
            };
            let exec = if sequential {
                Execution::Sequential
            } else {
                Execution::Parallel
            };
            let r = difftest_with(&p, cases, &opts, !no_corpus, exec);
            let text = r.to_text();
            print!("{text}");
            if let Some(path) = report {
                if let Err(e) = fs::write(&path, &text) {
                    eprintln!("{}: {e}", path.display());
                    return ExitCode::from(EXIT_FAIL);
                }
            }
            Ok(ExitCode::from(
                if r.disagreements() > 0 || r.b_safety_violations() > 0 {
                    EXIT_FAIL
                } else {
                    0
                },
            ))
        }
    };
    result.unwrap_or_else(|code| code)
}
