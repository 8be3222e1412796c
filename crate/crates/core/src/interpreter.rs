//! The interpreter program: a second-order cons-free system that normalizes
//! encoded first-order cons-free systems.
//!
//! The program never builds an intermediate object term. It works on pairs
//! of an encoded subterm `w` of the start term or of some right-hand side,
//! and a function `γ : bitstring ⇒ term` sending variable codes to encoded
//! data terms or `bot`.

use std::sync::OnceLock;

use thiserror::Error;

use crate::analysis::{check_cons_free, check_orthogonal, compute_b};
use crate::encoding::{decode_term, encode_term, encode_trs, Decoded, EncodingError, InterpreterSignature, SymbolTable};
use crate::engine::{EngineError, Normalizer};
use crate::syntax::{parse_trs, print_term, SourceFile};
use crate::term::{Symbol, Term};
use crate::trs::Trs;

const Q_SOURCE: &str = include_str!("q.trs");

/// The interpreter program together with its source text.
pub struct QProgram {
    trs: Trs,
    source: String,
}

impl QProgram {
    pub fn trs(&self) -> &Trs {
        &self.trs
    }

    /// The program as `.trs` text, eqbits rules included.
    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn symbol(&self, name: &str) -> &Symbol {
        self.trs
            .symbol(name)
            .unwrap_or_else(|| panic!("interpreter program has no symbol `{name}`"))
    }

    /// `normalform(rules, start)` over already encoded arguments.
    pub fn normalform(&self, rules: Term, start: Term) -> Term {
        Term::fun(self.symbol("normalform").clone(), vec![rules, start])
    }

    /// `eqbits(u, v)`.
    pub fn eqbits(&self, u: Term, v: Term) -> Term {
        Term::fun(self.symbol("eqbits").clone(), vec![u, v])
    }
}

/// Expands the eqbits schemas over the bits `0` and `1`.
fn eqbits_rules() -> String {
    let mut out = String::from("\n-- eqbits, expanded over a, b in {0, 1}\n");
    out.push_str("rule eqbits(eps, eps) -> true;\n");
    for b in ["0", "1"] {
        out.push_str(&format!("rule eqbits(eps, {b}(ys)) -> false;\n"));
    }
    for a in ["0", "1"] {
        out.push_str(&format!("rule eqbits({a}(xs), eps) -> false;\n"));
    }
    for a in ["0", "1"] {
        out.push_str(&format!("rule eqbits({a}(xs), {a}(ys)) -> eqbits(xs, ys);\n"));
    }
    for a in ["0", "1"] {
        for b in ["0", "1"] {
            if a != b {
                out.push_str(&format!("rule eqbits({a}(xs), {b}(ys)) -> false;\n"));
            }
        }
    }
    out
}

/// The interpreter program, built once.
pub fn build_q() -> &'static QProgram {
    static Q: OnceLock<QProgram> = OnceLock::new();
    Q.get_or_init(|| {
        let source = format!("{Q_SOURCE}{}", eqbits_rules());
        let trs = match parse_trs(&SourceFile::new("q.trs", source.as_str())) {
            Ok(trs) => trs,
            Err(diags) => {
                let msgs: Vec<String> = diags.iter().map(ToString::to_string).collect();
                panic!("interpreter program does not parse:\n{}", msgs.join("\n"))
            }
        };
        let sig = InterpreterSignature::get();
        for s in sig.symbols() {
            assert_eq!(trs.symbol(s.name()), Some(s), "signature mismatch for `{}`", s.name());
        }
        QProgram { trs, source }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Answer {
    Data(Term),
    /// The normal form exists but is not a data term.
    Bottom,
}

#[derive(Debug, Clone)]
pub struct Interpretation {
    pub answer: Answer,
    /// Steps taken by the interpreter program.
    pub steps: u64,
    /// The interpreter program's normal form before decoding.
    pub raw: Term,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpretError {
    #[error("precondition failed: {0}")]
    PreconditionFailure(String),
    #[error("interpreter produced a malformed answer {raw}: {error}")]
    MalformedOutput { raw: String, error: EncodingError },
    #[error("interpreter ran out of fuel after {steps} steps")]
    FuelExhausted { steps: u64 },
    #[error("B-safety violated in the interpreter program after step {step}: {subterm}")]
    BSafetyViolation { step: u64, subterm: String },
}

#[derive(Debug, Clone, Copy)]
pub struct InterpretOptions {
    pub fuel: u64,
    /// Check every intermediate interpreter term for B-safety.
    pub assert_b_safe: bool,
}

impl Default for InterpretOptions {
    fn default() -> Self {
        InterpretOptions {
            fuel: crate::engine::DEFAULT_FUEL,
            assert_b_safe: false,
        }
    }
}

/// Object systems must be first-order, cons-free and orthogonal; the start
/// term must be a defined symbol applied to data terms.
pub fn check_preconditions(obj: &Trs, start: &Term) -> Result<(), InterpretError> {
    let fail = |msg: String| Err(InterpretError::PreconditionFailure(msg));
    if !obj.is_first_order() {
        return fail("object system is not first-order".into());
    }
    let cons_free = check_cons_free(obj);
    if !cons_free.passed {
        return fail(format!("object system is not cons-free: {cons_free}"));
    }
    let orthogonal = check_orthogonal(obj);
    if !orthogonal.passed {
        return fail(format!("object system is not orthogonal: {orthogonal}"));
    }
    match start.head_symbol() {
        Some(f) if !f.is_constructor() && start.args().iter().all(Term::is_data) => Ok(()),
        _ => fail(format!("start term {} is not a defined symbol applied to data", print_term(start))),
    }
}

/// `normalform(⟨R⟩, ⟨start⟩)`.
pub fn simulate_term(obj: &Trs, start: &Term) -> Result<Term, InterpretError> {
    let malformed = |error| InterpretError::PreconditionFailure(format!("cannot encode: {error}"));
    let rules = encode_trs(obj).map_err(malformed)?;
    let start = encode_term(start, &SymbolTable::new(obj)).map_err(malformed)?;
    Ok(build_q().normalform(rules, start))
}

/// Runs the interpreter program on `obj` and `start` and decodes its answer.
pub fn interpret(obj: &Trs, start: &Term, fuel: u64) -> Result<Interpretation, InterpretError> {
    interpret_with(
        obj,
        start,
        &InterpretOptions {
            fuel,
            assert_b_safe: false,
        },
    )
}

pub fn interpret_with(obj: &Trs, start: &Term, opts: &InterpretOptions) -> Result<Interpretation, InterpretError> {
    check_preconditions(obj, start)?;
    let q = build_q();
    let input = simulate_term(obj, start)?;
    let b = opts.assert_b_safe.then(|| compute_b(&input, q.trs()));
    let result = Normalizer::new(q.trs())
        .fuel(opts.fuel)
        .b_check(b.as_ref())
        .run(&input)
        .map_err(|e| match e {
            EngineError::FuelExhausted { steps } => InterpretError::FuelExhausted { steps },
            EngineError::BSafetyViolation { step, subterm } => InterpretError::BSafetyViolation {
                step,
                subterm: print_term(&subterm),
            },
        })?;
    let answer = decode_answer(obj, &result.term)?;
    Ok(Interpretation {
        answer,
        steps: result.steps,
        raw: result.term,
    })
}

/// Decodes an interpreter result. A decoded term that still mentions a
/// defined symbol is reported as [`Answer::Bottom`]: the encoding only
/// records rules, so a defined symbol without rules looks like a
/// constructor to the interpreter program, and the term it found is the
/// object normal form, which is not data.
pub fn decode_answer(obj: &Trs, raw: &Term) -> Result<Answer, InterpretError> {
    let malformed = |error| InterpretError::MalformedOutput {
        raw: print_term(raw),
        error,
    };
    match decode_term(raw, &SymbolTable::new(obj)).map_err(malformed)? {
        Decoded::Bottom => Ok(Answer::Bottom),
        Decoded::Term(t) if t.is_data() => Ok(Answer::Data(t)),
        Decoded::Term(t) if t.is_closed() => Ok(Answer::Bottom),
        Decoded::Term(t) => Err(malformed(EncodingError::Malformed(format!(
            "open answer {}",
            print_term(&t)
        )))),
    }
}
