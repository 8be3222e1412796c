//! Random object systems, the differential test loop and the golden corpus.
//!
//! A differential case runs a start term twice: directly on the object
//! system, and through the interpreter program on the encoded system. The
//! two answers must agree whenever both runs finish within their budgets.

use std::fmt::Write as _;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{check_cons_free, check_orthogonal, compute_b};
use crate::engine::{normalize_traced, EngineError, Normalizer};
use crate::interpreter::{build_q, interpret_with, simulate_term, Answer, InterpretError, InterpretOptions};
use crate::syntax::{parse_term, parse_trs, print_term, print_trs, SourceFile};
use crate::term::{Name, Symbol, SymbolKind, Term};
use crate::trs::{Rule, Trs};
use crate::types::{SimpleType, Sort, TypeDecl};

pub const DEFAULT_FUEL_ORACLE: u64 = 100_000;
pub const DEFAULT_FUEL_INTERP: u64 = 10_000_000;

/// Interpreter steps shown for a disagreeing case.
const INTERP_TRACE_LIMIT: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenParams {
    pub seed: u64,
    /// Upper bound on defined symbols; constructors are bounded separately.
    pub max_symbols: usize,
    pub max_rules: usize,
    pub max_depth: usize,
    pub max_arity: usize,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            seed: 42,
            max_symbols: 4,
            max_rules: 10,
            max_depth: 4,
            max_arity: 2,
        }
    }
}

impl GenParams {
    fn validate(&self) {
        assert!(
            self.max_symbols >= 1 && self.max_rules >= 1 && self.max_depth >= 1 && self.max_arity >= 1,
            "generator bounds must be at least 1: {self:?}"
        );
    }
}

/// A random data term of sort `sort` and depth at most `depth`.
fn gen_data(rng: &mut ChaCha8Rng, trs: &Trs, sort: &SimpleType, depth: usize) -> Term {
    // Below the depth bound, prefer growing the term.
    let grow = depth > 0 && rng.gen_bool(0.7);
    let of_sort = |nullary: bool| -> Vec<&Symbol> {
        trs.constructors()
            .filter(|c| &c.decl().result_type == sort && (c.arity() == 0) == nullary)
            .collect()
    };
    let mut candidates = if grow { of_sort(false) } else { Vec::new() };
    if candidates.is_empty() {
        candidates = of_sort(true);
    }
    let c = candidates
        .choose(rng)
        .copied()
        .unwrap_or_else(|| panic!("sort {sort} has no nullary constructor"));
    let args = c
        .decl()
        .arg_types
        .iter()
        .map(|ty| gen_data(rng, trs, ty, depth - 1))
        .collect();
    Term::fun(c.clone(), args)
}

struct Signature {
    sorts: Vec<Sort>,
    constructors: Vec<Symbol>,
    defined: Vec<Symbol>,
}

fn gen_signature(rng: &mut ChaCha8Rng, p: &GenParams) -> Signature {
    let n_sorts = rng.gen_range(1..=2);
    let sorts: Vec<Sort> = (0..n_sorts).map(|i| Arc::from(format!("s{i}").as_str())).collect();
    let sort_ty = |s: &Sort| SimpleType::Base(s.clone());
    let mut index = 0;
    let mut next = || {
        index += 1;
        index
    };
    let mut constructors = Vec::new();
    for s in &sorts {
        constructors.push(Symbol::new(
            &format!("c{}", constructors.len()),
            TypeDecl::constant(sort_ty(s)),
            SymbolKind::Constructor,
            next(),
        ));
        for k in 0..rng.gen_range(1..=2) {
            // The first extra constructor is never a constant, so every sort
            // has data to recurse on.
            let arity = rng.gen_range(usize::from(k == 0)..=p.max_arity);
            let args = (0..arity).map(|_| sort_ty(sorts.choose(rng).unwrap())).collect();
            constructors.push(Symbol::new(
                &format!("c{}", constructors.len()),
                TypeDecl::new(args, sort_ty(s)),
                SymbolKind::Constructor,
                next(),
            ));
        }
    }
    let n_defined = rng.gen_range(p.max_symbols.min(2)..=p.max_symbols);
    let defined = (0..n_defined)
        .map(|i| {
            let arity = if rng.gen_bool(0.1) { 0 } else { rng.gen_range(1..=p.max_arity) };
            let args = (0..arity).map(|_| sort_ty(sorts.choose(rng).unwrap())).collect();
            Symbol::new(
                &format!("f{i}"),
                TypeDecl::new(args, sort_ty(sorts.choose(rng).unwrap())),
                SymbolKind::Defined,
                next(),
            )
        })
        .collect();
    Signature {
        sorts,
        constructors,
        defined,
    }
}

/// What a right-hand side may be built from.
struct RhsContext<'a> {
    variables: Vec<Term>,
    /// Constructor-headed subterms of the lhs.
    lhs_subterms: Vec<Term>,
    /// Defined symbols that may be called freely.
    callees: &'a [Symbol],
    /// The symbol being defined, its split slot, and the variables strictly
    /// below the pattern in that slot.
    recursion: Option<(&'a Symbol, usize, Vec<Term>)>,
    top_depth: usize,
}

fn gen_rhs(rng: &mut ChaCha8Rng, partial: &Trs, ctx: &RhsContext<'_>, sort: &SimpleType, depth: usize) -> Term {
    let of_sort = |ts: &[Term]| -> Vec<Term> {
        ts.iter()
            .filter(|t| t.type_of().ok().as_ref() == Some(sort))
            .cloned()
            .collect()
    };
    let vars = of_sort(&ctx.variables);
    let subterms = of_sort(&ctx.lhs_subterms);
    let callees: Vec<&Symbol> = ctx
        .callees
        .iter()
        .filter(|f| &f.decl().result_type == sort)
        .collect();
    let recursion = ctx.recursion.as_ref().and_then(|(f, slot, below)| {
        let slot_ty = &f.decl().arg_types[*slot];
        let below: Vec<&Term> = below
            .iter()
            .filter(|t| t.type_of().ok().as_ref() == Some(slot_ty))
            .collect();
        (&f.decl().result_type == sort && !below.is_empty()).then_some((*f, *slot, below))
    });
    // At the root, lean towards calls so that evaluation goes somewhere.
    let calls_possible = depth > 0 && (!callees.is_empty() || recursion.is_some());
    let lean = calls_possible && ctx.top_depth == depth && rng.gen_bool(0.7);
    loop {
        let choice = if lean { rng.gen_range(4..12) } else { rng.gen_range(0..12) };
        match choice {
            0 | 1 if !vars.is_empty() => return vars.choose(rng).unwrap().clone(),
            2 if !subterms.is_empty() => return subterms.choose(rng).unwrap().clone(),
            3 => {
                let depth = rng.gen_range(0..=1);
                return gen_data(rng, partial, sort, depth);
            }
            4..=7 if depth > 0 && !callees.is_empty() => {
                let f = *callees.choose(rng).unwrap();
                let args = f
                    .decl()
                    .arg_types
                    .iter()
                    .map(|ty| gen_rhs(rng, partial, ctx, ty, depth - 1))
                    .collect();
                return Term::fun(f.clone(), args);
            }
            8..=11 if depth > 0 => {
                if let Some((f, slot, below)) = &recursion {
                    let args = f
                        .decl()
                        .arg_types
                        .iter()
                        .enumerate()
                        .map(|(i, ty)| {
                            if i == *slot {
                                (*below.choose(rng).unwrap()).clone()
                            } else {
                                gen_rhs(rng, partial, ctx, ty, depth - 1)
                            }
                        })
                        .collect();
                    return Term::fun((*f).clone(), args);
                }
            }
            _ => {}
        }
    }
}

/// A fresh pattern variable of type `ty`.
fn fresh_var(counter: &mut usize, ty: &SimpleType) -> Term {
    *counter += 1;
    Term::var_named(Name::from(format!("x{counter}").as_str()), ty.clone())
}

fn gen_candidate(rng: &mut ChaCha8Rng, p: &GenParams) -> Trs {
    let sig = gen_signature(rng, p);
    let mut symbols = sig.constructors.clone();
    symbols.extend(sig.defined.iter().cloned());
    // Constructors only, for data generation while rules are built.
    let partial = Trs::new(sig.sorts.clone(), symbols.clone(), Vec::new()).expect("generated signature is valid");
    let mut rules = Vec::new();
    for (i, f) in sig.defined.iter().enumerate() {
        let callees = &sig.defined[..i];
        let mut counter = 0;
        let arg_types = &f.decl().arg_types;
        let split = if arg_types.is_empty() || rng.gen_bool(0.25) {
            None
        } else {
            Some(rng.gen_range(0..arg_types.len()))
        };
        let heads: Vec<Option<Symbol>> = match split {
            None => vec![None],
            Some(slot) => sig
                .constructors
                .iter()
                .filter(|c| c.decl().result_type == arg_types[slot])
                // Leave some cases out, so some calls get stuck.
                .filter(|_| rng.gen_bool(0.85))
                .cloned()
                .map(Some)
                .collect(),
        };
        for head in heads {
            if rules.len() >= p.max_rules {
                break;
            }
            let mut below = Vec::new();
            let mut lhs_subterms = Vec::new();
            let args: Vec<Term> = arg_types
                .iter()
                .enumerate()
                .map(|(slot, ty)| match (&head, Some(slot) == split) {
                    (Some(c), true) => {
                        let inner: Vec<Term> = c.decl().arg_types.iter().map(|t| fresh_var(&mut counter, t)).collect();
                        below.extend(inner.iter().cloned());
                        let pattern = Term::fun(c.clone(), inner);
                        lhs_subterms.push(pattern.clone());
                        pattern
                    }
                    _ => fresh_var(&mut counter, ty),
                })
                .collect();
            let lhs = Term::fun(f.clone(), args);
            let mut variables = Vec::new();
            lhs.for_each_subterm(&mut |t| {
                if t.is_var() {
                    variables.push(t.clone());
                }
            });
            let ctx = RhsContext {
                variables,
                lhs_subterms,
                callees,
                recursion: split.map(|slot| (f, slot, below)),
                top_depth: p.max_depth,
            };
            let rhs = gen_rhs(rng, &partial, &ctx, &f.decl().result_type, p.max_depth);
            rules.push(Rule::new(lhs, rhs, 0).expect("generated rule is well-formed"));
        }
    }
    Trs::new(sig.sorts, symbols, rules).expect("generated system is valid")
}

/// A random first-order constructor system that is cons-free and orthogonal.
///
/// Defined symbols are ordered. A rule for `f_i` calls `f_j` only for
/// `j < i`, or `f_i` itself on a variable strictly below the pattern it
/// splits on, so every generated system terminates. Some constructor cases
/// are left out on purpose, which produces stuck, non-data normal forms.
pub fn gen_object_trs(p: &GenParams) -> Trs {
    p.validate();
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    for _ in 0..16 {
        let trs = gen_candidate(&mut rng, p);
        if check_cons_free(&trs).passed && check_orthogonal(&trs).passed {
            return trs;
        }
    }
    panic!("generator failed to produce a cons-free orthogonal system for {p:?}")
}

/// A basic start term `f(d1,…,dn)`, preferring symbols that have rules.
pub fn gen_start_term(trs: &Trs, p: &GenParams) -> Term {
    p.validate();
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed ^ 0x5eed_5eed_5eed_5eed);
    let defined: Vec<&Symbol> = trs.defined_symbols().collect();
    assert!(!defined.is_empty(), "start terms need a defined symbol");
    let with_rules: Vec<&Symbol> = defined
        .iter()
        .copied()
        .filter(|f| trs.rules_for(f).next().is_some())
        .collect();
    let pool = if with_rules.is_empty() { &defined } else { &with_rules };
    // Later symbols call earlier ones, so they make more interesting starts.
    let f = if rng.gen_bool(0.8) {
        *pool.last().unwrap()
    } else {
        *pool.choose(&mut rng).unwrap()
    };
    let args = f
        .decl()
        .arg_types
        .iter()
        .map(|ty| {
            let depth = rng.gen_range(0..=p.max_depth);
            gen_data(&mut rng, trs, ty, depth)
        })
        .collect();
    Term::fun(f.clone(), args)
}

/// One object system and start term to run both ways.
#[derive(Clone)]
pub struct DiffCase {
    pub id: String,
    pub trs: Arc<Trs>,
    pub start: Term,
}

/// Random cases `0..cases`, each generated from its own seed drawn from
/// `p.seed`.
pub fn random_cases(p: &GenParams, cases: usize) -> Vec<DiffCase> {
    let mut master = ChaCha8Rng::seed_from_u64(p.seed);
    (0..cases)
        .map(|i| {
            let case_params = GenParams {
                seed: master.gen(),
                ..*p
            };
            let trs = gen_object_trs(&case_params);
            let start = gen_start_term(&trs, &case_params);
            DiffCase {
                id: format!("random-{i:04}"),
                trs: Arc::new(trs),
                start,
            }
        })
        .collect()
}

/// A corpus file and its start terms, listed in `-- start:` comments.
pub struct CorpusEntry {
    pub name: &'static str,
    pub source: &'static str,
}

impl CorpusEntry {
    pub fn trs(&self) -> Trs {
        parse_trs(&SourceFile::new(self.name, self.source)).unwrap_or_else(|diags| {
            let msgs: Vec<String> = diags.iter().map(ToString::to_string).collect();
            panic!("corpus file does not parse:\n{}", msgs.join("\n"))
        })
    }

    pub fn start_terms(&self) -> Vec<String> {
        start_comments(self.source)
    }

    pub fn cases(&self) -> Vec<DiffCase> {
        let trs = Arc::new(self.trs());
        self.start_terms()
            .iter()
            .enumerate()
            .map(|(i, src)| DiffCase {
                id: format!("{}#{}", self.name, i + 1),
                trs: trs.clone(),
                start: parse_term(src, &trs).unwrap_or_else(|d| panic!("bad start term `{src}`: {}", d[0])),
            })
            .collect()
    }
}

/// Start terms listed in `-- start: t` lines of a `.trs` file.
pub fn start_comments(source: &str) -> Vec<String> {
    source
        .lines()
        .filter_map(|l| l.trim().strip_prefix("-- start:"))
        .map(|s| s.trim().to_string())
        .collect()
}

macro_rules! corpus_entry {
    ($path:literal) => {
        CorpusEntry {
            name: $path,
            source: include_str!(concat!("../corpus/", $path)),
        }
    };
}

/// The five golden systems.
pub fn golden_corpus() -> Vec<CorpusEntry> {
    vec![
        corpus_entry!("booleans.trs"),
        corpus_entry!("bitstring_eq.trs"),
        corpus_entry!("member.trs"),
        corpus_entry!("parity.trs"),
        corpus_entry!("constant.trs"),
    ]
}

/// Five systems whose normal forms from the listed start terms are not data.
pub fn bottom_corpus() -> Vec<CorpusEntry> {
    vec![
        corpus_entry!("bottom/ruleless.trs"),
        corpus_entry!("bottom/partial_not.trs"),
        corpus_entry!("bottom/stuck_argument.trs"),
        corpus_entry!("bottom/unmatched_pair.trs"),
        corpus_entry!("bottom/lazy_and.trs"),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Agree,
    Disagree,
    BothFuelExhausted,
    OracleOnlyExhausted,
    InterpOnlyExhausted,
}

impl Verdict {
    pub fn is_inconclusive(self) -> bool {
        !matches!(self, Verdict::Agree | Verdict::Disagree)
    }

    fn label(self) -> &'static str {
        match self {
            Verdict::Agree => "agree",
            Verdict::Disagree => "DISAGREE",
            Verdict::BothFuelExhausted => "both-exhausted",
            Verdict::OracleOnlyExhausted => "oracle-only-exhausted",
            Verdict::InterpOnlyExhausted => "interp-only-exhausted",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleResult {
    Data(Term),
    NonData(Term),
    FuelExhausted,
    Error(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InterpResult {
    Data(Term),
    Bottom,
    FuelExhausted,
    Error(String),
}

fn show_oracle(r: &OracleResult) -> String {
    match r {
        OracleResult::Data(t) => print_term(t),
        OracleResult::NonData(t) => format!("non-data {}", print_term(t)),
        OracleResult::FuelExhausted => "fuel-exhausted".into(),
        OracleResult::Error(e) => format!("error: {e}"),
    }
}

fn show_interp(r: &InterpResult) -> String {
    match r {
        InterpResult::Data(t) => print_term(t),
        InterpResult::Bottom => "bot".into(),
        InterpResult::FuelExhausted => "fuel-exhausted".into(),
        InterpResult::Error(e) => format!("error: {e}"),
    }
}

#[derive(Debug, Clone)]
pub struct CaseResult {
    pub id: String,
    pub start: Term,
    pub oracle: OracleResult,
    pub interp: InterpResult,
    pub verdict: Verdict,
    pub oracle_steps: u64,
    pub interp_steps: u64,
    /// B-safety violations seen in either run.
    pub b_safety_violations: usize,
    /// System and traces, kept for disagreeing cases only.
    pub details: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiffOptions {
    pub fuel_oracle: u64,
    pub fuel_interp: u64,
    /// Check B-safety after every step of both runs.
    pub assert_b_safe: bool,
}

impl Default for DiffOptions {
    fn default() -> Self {
        DiffOptions {
            fuel_oracle: DEFAULT_FUEL_ORACLE,
            fuel_interp: DEFAULT_FUEL_INTERP,
            assert_b_safe: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Cases run on the rayon pool when the `parallel` feature is enabled,
    /// sequentially otherwise.
    #[default]
    Parallel,
}

fn map_cases<T, R>(items: &[T], exec: Execution, f: impl Fn(&T) -> R + Sync + Send) -> Vec<R>
where
    T: Sync,
    R: Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Runs `f` over `items`, in parallel if requested. Results keep input
/// order.
pub fn run_batch<T, R>(items: &[T], exec: Execution, f: impl Fn(&T) -> R + Sync + Send) -> Vec<R>
where
    T: Sync,
    R: Send,
{
    map_cases(items, exec, f)
}

/// Runs one case both ways.
pub fn run_case(case: &DiffCase, opts: &DiffOptions) -> CaseResult {
    let trs = &*case.trs;
    let b = opts.assert_b_safe.then(|| compute_b(&case.start, trs));
    let mut violations = 0;
    let (oracle, oracle_steps) = match Normalizer::new(trs).fuel(opts.fuel_oracle).b_check(b.as_ref()).run(&case.start) {
        Ok(n) if n.term.is_data() => (OracleResult::Data(n.term), n.steps),
        Ok(n) => (OracleResult::NonData(n.term), n.steps),
        Err(EngineError::FuelExhausted { steps }) => (OracleResult::FuelExhausted, steps),
        Err(e @ EngineError::BSafetyViolation { .. }) => {
            violations += 1;
            (OracleResult::Error(e.to_string()), 0)
        }
    };
    let iopts = InterpretOptions {
        fuel: opts.fuel_interp,
        assert_b_safe: opts.assert_b_safe,
    };
    let (interp, interp_steps) = match interpret_with(trs, &case.start, &iopts) {
        Ok(i) => (
            match i.answer {
                Answer::Data(t) => InterpResult::Data(t),
                Answer::Bottom => InterpResult::Bottom,
            },
            i.steps,
        ),
        Err(InterpretError::FuelExhausted { steps }) => (InterpResult::FuelExhausted, steps),
        Err(e) => {
            if matches!(e, InterpretError::BSafetyViolation { .. }) {
                violations += 1;
            }
            (InterpResult::Error(e.to_string()), 0)
        }
    };
    let verdict = match (&oracle, &interp) {
        (OracleResult::FuelExhausted, InterpResult::FuelExhausted) => Verdict::BothFuelExhausted,
        (OracleResult::FuelExhausted, InterpResult::Data(_) | InterpResult::Bottom) => Verdict::OracleOnlyExhausted,
        (OracleResult::Data(_) | OracleResult::NonData(_), InterpResult::FuelExhausted) => {
            Verdict::InterpOnlyExhausted
        }
        (OracleResult::Data(d), InterpResult::Data(e)) if d == e => Verdict::Agree,
        (OracleResult::NonData(_), InterpResult::Bottom) => Verdict::Agree,
        _ => Verdict::Disagree,
    };
    let details = (verdict == Verdict::Disagree).then(|| disagreement_details(case, opts));
    CaseResult {
        id: case.id.clone(),
        start: case.start.clone(),
        oracle,
        interp,
        verdict,
        oracle_steps,
        interp_steps,
        b_safety_violations: violations,
        details,
    }
}

fn disagreement_details(case: &DiffCase, opts: &DiffOptions) -> String {
    let mut out = String::new();
    out.push_str("  system:\n");
    for line in print_trs(&case.trs).lines() {
        let _ = writeln!(out, "    {line}");
    }
    out.push_str("  oracle trace:\n");
    let (trace, _) = normalize_traced(&case.trs, &case.start, opts.fuel_oracle, None);
    for line in trace.to_text().lines() {
        let _ = writeln!(out, "    {line}");
    }
    if let Ok(input) = simulate_term(&case.trs, &case.start) {
        let _ = writeln!(out, "  interpreter trace (first {INTERP_TRACE_LIMIT} steps):");
        let (trace, _) = normalize_traced(build_q().trs(), &input, INTERP_TRACE_LIMIT as u64, None);
        for line in trace.to_text().lines() {
            let _ = writeln!(out, "    {line}");
        }
    }
    out
}

/// Outcome of a differential run, in case order.
#[derive(Debug, Clone)]
pub struct DiffReport {
    pub header: Vec<String>,
    pub cases: Vec<CaseResult>,
}

impl DiffReport {
    pub fn count(&self, v: Verdict) -> usize {
        self.cases.iter().filter(|c| c.verdict == v).count()
    }

    pub fn disagreements(&self) -> usize {
        self.count(Verdict::Disagree)
    }

    pub fn inconclusive(&self) -> usize {
        self.cases.iter().filter(|c| c.verdict.is_inconclusive()).count()
    }

    pub fn b_safety_violations(&self) -> usize {
        self.cases.iter().map(|c| c.b_safety_violations).sum()
    }

    /// Deterministic text: no timings, no thread-dependent ordering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for h in &self.header {
            let _ = writeln!(out, "# {h}");
        }
        for (i, c) in self.cases.iter().enumerate() {
            let _ = writeln!(
                out,
                "{:>4}  {}  start={}  oracle={}  interp={}  verdict={}  steps={}/{}",
                i + 1,
                c.id,
                print_term(&c.start),
                show_oracle(&c.oracle),
                show_interp(&c.interp),
                c.verdict.label(),
                c.oracle_steps,
                c.interp_steps
            );
            if let Some(d) = &c.details {
                out.push_str(d);
            }
        }
        let _ = writeln!(
            out,
            "summary: cases={} agree={} disagree={} both-exhausted={} oracle-only-exhausted={} interp-only-exhausted={} b-safety-violations={}",
            self.cases.len(),
            self.count(Verdict::Agree),
            self.count(Verdict::Disagree),
            self.count(Verdict::BothFuelExhausted),
            self.count(Verdict::OracleOnlyExhausted),
            self.count(Verdict::InterpOnlyExhausted),
            self.b_safety_violations()
        );
        out
    }
}

const WEAKENING: &str = "only normal forms are compared: agree means the interpreter returns the encoded data normal form, or bot when the normal form is not data";

/// Runs arbitrary cases both ways.
pub fn run_cases(cases: &[DiffCase], opts: &DiffOptions, exec: Execution, header: Vec<String>) -> DiffReport {
    let results = map_cases(cases, exec, |c| run_case(c, opts));
    let mut full_header = header;
    full_header.push(format!(
        "fuel-oracle={} fuel-interp={} assert-bsafe={}",
        opts.fuel_oracle, opts.fuel_interp, opts.assert_b_safe
    ));
    full_header.push(WEAKENING.into());
    DiffReport {
        header: full_header,
        cases: results,
    }
}

/// `cases` random systems from `p.seed`, with default options otherwise.
pub fn difftest(p: &GenParams, cases: usize, fuel_oracle: u64, fuel_interp: u64) -> DiffReport {
    let opts = DiffOptions {
        fuel_oracle,
        fuel_interp,
        assert_b_safe: true,
    };
    difftest_with(p, cases, &opts, true, Execution::default())
}

/// Random cases, optionally preceded by the golden corpus.
pub fn difftest_with(p: &GenParams, cases: usize, opts: &DiffOptions, corpus: bool, exec: Execution) -> DiffReport {
    let mut all = Vec::new();
    if corpus {
        for entry in golden_corpus() {
            all.extend(entry.cases());
        }
    }
    all.extend(random_cases(p, cases));
    let header = vec![
        "consfree difftest".into(),
        format!(
            "seed={} cases={} corpus={} max-symbols={} max-rules={} max-depth={} max-arity={}",
            p.seed, cases, corpus, p.max_symbols, p.max_rules, p.max_depth, p.max_arity
        ),
    ];
    run_cases(&all, opts, exec, header)
}
