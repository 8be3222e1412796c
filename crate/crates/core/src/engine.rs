//! Deterministic, fuel-bounded weak-innermost rewriting.
//!
//! Reduction never happens below an abstraction. A function application
//! `f(s1,…,sn)` may be contracted only once every `si` is an abstraction or
//! a weak normal form; a β-redex `(λx.s) u` only once `u` is. Among the
//! permitted redexes the leftmost-innermost one is contracted, with the
//! first matching rule in rule-list order.
//!
//! Two implementations are provided. [`pick_redex`] and [`rewrite_step`]
//! follow the definition literally on whole terms. [`Normalizer`] performs
//! the same sequence of steps with an explicit evaluation stack and lazily
//! instantiated right-hand sides, so a step costs time proportional to the
//! rule, not to the whole term.

use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::analysis::{first_unsafe_subterm, BSet};
use crate::syntax::print_term;
use crate::term::{alpha_eq, substitute, Name, Position, Subst, Symbol, Term, TermKind};
use crate::trs::{Rule, Trs};

/// Step budget used when none is given.
pub const DEFAULT_FUEL: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchResult {
    NoMatch,
    Bindings(Subst),
}

impl MatchResult {
    pub fn into_option(self) -> Option<Subst> {
        match self {
            MatchResult::NoMatch => None,
            MatchResult::Bindings(s) => Some(s),
        }
    }
}

/// Syntactic matching: `subject = pattern·σ`. Variables of any type bind
/// whole subterms; repeated variables must bind α-equal subterms.
pub fn match_pattern(pattern: &Term, subject: &Term) -> MatchResult {
    let mut sigma = Subst::new();
    if match_into(pattern, subject, &mut sigma) {
        MatchResult::Bindings(sigma)
    } else {
        MatchResult::NoMatch
    }
}

fn match_into(pattern: &Term, subject: &Term, sigma: &mut Subst) -> bool {
    match (pattern.kind(), subject.kind()) {
        (TermKind::Var { name, .. }, _) => match sigma.get(name) {
            Some(bound) => alpha_eq(bound, subject),
            None => {
                sigma.insert(name.clone(), subject.clone());
                true
            }
        },
        (TermKind::Fun(f, ps), TermKind::Fun(g, ss)) => {
            f == g
                && ps.len() == ss.len()
                && ps.iter().zip(ss).all(|(p, s)| match_into(p, s, sigma))
        }
        _ => pattern.is_closed() && alpha_eq(pattern, subject),
    }
}

/// The first rule, in rule-list order, whose lhs matches `t` at the root.
pub fn first_matching_rule<'a>(trs: &'a Trs, t: &Term) -> Option<(&'a Rule, Subst)> {
    let f = t.head_symbol()?;
    trs.rules_for(f)
        .find_map(|rule| match_pattern(rule.lhs(), t).into_option().map(|s| (rule, s)))
}

/// Position of the leftmost-innermost permitted redex, or `None` when `t` is
/// a weak normal form.
pub fn pick_redex(t: &Term, trs: &Trs) -> Option<Position> {
    fn go(t: &Term, trs: &Trs, path: &mut Vec<usize>) -> bool {
        match t.kind() {
            TermKind::Var { .. } | TermKind::Abs { .. } => false,
            TermKind::Fun(_, args) => {
                for (i, a) in args.iter().enumerate() {
                    path.push(i);
                    if go(a, trs, path) {
                        return true;
                    }
                    path.pop();
                }
                first_matching_rule(trs, t).is_some()
            }
            TermKind::App(s, u) => {
                path.push(0);
                if go(s, trs, path) {
                    return true;
                }
                path.pop();
                path.push(1);
                if go(u, trs, path) {
                    return true;
                }
                path.pop();
                s.is_abs()
            }
        }
    }
    if t.is_data() {
        return None;
    }
    let mut path = Vec::new();
    go(t, trs, &mut path).then_some(path)
}

pub fn is_weak_normal_form(t: &Term, trs: &Trs) -> bool {
    pick_redex(t, trs).is_none()
}

/// Which rule fired in a step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepRule {
    Rule(usize),
    Beta,
}

impl fmt::Display for StepRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepRule::Rule(i) => write!(f, "{i}"),
            StepRule::Beta => f.write_str("beta"),
        }
    }
}

/// Contracts the redex at `t` itself, returning the reduct.
fn contract(trs: &Trs, t: &Term) -> Option<(Term, StepRule)> {
    match t.kind() {
        TermKind::App(fun, arg) => match fun.kind() {
            TermKind::Abs { binder, body, .. } => Some((
                substitute(body, &Subst::singleton(binder.clone(), arg.clone())),
                StepRule::Beta,
            )),
            _ => None,
        },
        TermKind::Fun(..) => {
            let (rule, sigma) = first_matching_rule(trs, t)?;
            Some((substitute(rule.rhs(), &sigma), StepRule::Rule(rule.index())))
        }
        _ => None,
    }
}

/// One weak-innermost step with its position and rule.
pub fn rewrite_step_at(trs: &Trs, t: &Term) -> Option<(Term, Position, StepRule)> {
    let pos = pick_redex(t, trs)?;
    let redex = t.subterm_at(&pos)?;
    let (reduct, rule) = contract(trs, redex)?;
    Some((t.replace_at(&pos, reduct), pos, rule))
}

/// One weak-innermost step, or `None` if `t` is a weak normal form.
pub fn rewrite_step(trs: &Trs, t: &Term) -> Option<Term> {
    rewrite_step_at(trs, t).map(|(t, _, _)| t)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    /// The budget ran out; this says nothing about termination.
    #[error("fuel exhausted after {steps} steps")]
    FuelExhausted { steps: u64 },
    /// A reachable term has a constructor subterm outside the B-set. For a
    /// cons-free system and a B-safe start term this indicates a bug.
    #[error("B-safety violated after step {step}: {subterm}")]
    BSafetyViolation { step: u64, subterm: Term },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    NormalForm,
    FuelExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    /// Step number, starting at 1.
    pub number: u64,
    pub position: Position,
    pub rule: StepRule,
    /// The whole term after the step.
    pub term: Term,
}

/// The steps of one normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub start: Term,
    pub steps: Vec<TraceStep>,
    pub status: Status,
}

pub fn format_position(pos: &[usize]) -> String {
    if pos.is_empty() {
        return "ε".into();
    }
    pos.iter().map(usize::to_string).collect::<Vec<_>>().join(".")
}

impl Trace {
    /// One line per step: `step#  rule=<idx|beta>  pos=<path>  term=<printed>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&format!(
                "{}  rule={}  pos={}  term={}\n",
                s.number,
                s.rule,
                format_position(&s.position),
                print_term(&s.term)
            ));
        }
        out
    }
}

/// A finished normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub term: Term,
    pub steps: u64,
}

/// What an observer sees for each step, before it is taken.
pub struct StepEvent<'a> {
    pub number: u64,
    pub position: &'a [usize],
    pub rule: StepRule,
    /// The contracted redex. For β-steps this is the application node.
    pub redex: &'a Term,
}

type Env = Option<Rc<Subst>>;
type Observer<'a> = Box<dyn FnMut(&StepEvent<'_>) + 'a>;

enum Frame {
    Args {
        symbol: Symbol,
        skeleton: Term,
        env: Env,
        done: Vec<Term>,
        next: usize,
    },
    AppFun {
        arg: Term,
        env: Env,
    },
    AppArg {
        fun: Term,
    },
}

enum Mode {
    Eval(Term, Env),
    Return(Term),
}

fn instantiate(t: &Term, env: &Env) -> Term {
    match env {
        Some(e) => substitute(t, e),
        None => t.clone(),
    }
}

/// Fuel-bounded weak-innermost normalizer with optional B-safety
/// instrumentation, trace recording and step observation.
pub struct Normalizer<'a> {
    trs: &'a Trs,
    fuel: u64,
    b_check: Option<&'a BSet>,
    record: bool,
    observer: Option<Observer<'a>>,
}

impl<'a> Normalizer<'a> {
    pub fn new(trs: &'a Trs) -> Self {
        Normalizer {
            trs,
            fuel: DEFAULT_FUEL,
            b_check: None,
            record: false,
            observer: None,
        }
    }

    pub fn fuel(mut self, fuel: u64) -> Self {
        self.fuel = fuel;
        self
    }

    /// Asserts B-safety of the start term and after every step.
    pub fn b_check(mut self, b: Option<&'a BSet>) -> Self {
        self.b_check = b;
        self
    }

    /// Keeps every intermediate term. Only sensible for short runs.
    pub fn record_trace(mut self, record: bool) -> Self {
        self.record = record;
        self
    }

    pub fn observe(mut self, observer: impl FnMut(&StepEvent<'_>) + 'a) -> Self {
        self.observer = Some(Box::new(observer));
        self
    }

    pub fn run(self, start: &Term) -> Result<Normalized, EngineError> {
        self.run_traced(start).1
    }

    pub fn run_traced(mut self, start: &Term) -> (Trace, Result<Normalized, EngineError>) {
        let mut machine = Machine {
            trs: self.trs,
            fuel: self.fuel,
            b_check: self.b_check,
            observer: self.observer.as_deref_mut(),
            stack: Vec::new(),
            steps: 0,
            trace: if self.record { Some(Vec::new()) } else { None },
        };
        let result = machine.run(start);
        let status = match &result {
            Err(EngineError::FuelExhausted { .. }) => Status::FuelExhausted,
            _ => Status::NormalForm,
        };
        let trace = Trace {
            start: start.clone(),
            steps: machine.trace.take().unwrap_or_default(),
            status,
        };
        (trace, result)
    }
}

struct Machine<'a, 'o> {
    trs: &'a Trs,
    fuel: u64,
    b_check: Option<&'a BSet>,
    observer: Option<&'o mut (dyn FnMut(&StepEvent<'_>) + 'a)>,
    stack: Vec<Frame>,
    steps: u64,
    trace: Option<Vec<TraceStep>>,
}

impl<'a, 'o> Machine<'a, 'o> {
    fn run(&mut self, start: &Term) -> Result<Normalized, EngineError> {
        if let Some(b) = self.b_check {
            if let Some(bad) = first_unsafe_subterm(start, b) {
                return Err(EngineError::BSafetyViolation {
                    step: 0,
                    subterm: bad,
                });
            }
        }
        let mut mode = Mode::Eval(start.clone(), None);
        loop {
            mode = match mode {
                Mode::Eval(t, env) => self.eval(t, env)?,
                Mode::Return(v) => match self.stack.pop() {
                    None => {
                        return Ok(Normalized {
                            term: v,
                            steps: self.steps,
                        })
                    }
                    Some(frame) => self.resume(frame, v)?,
                },
            };
        }
    }

    fn eval(&mut self, t: Term, env: Env) -> Result<Mode, EngineError> {
        if t.is_data() {
            return Ok(Mode::Return(t));
        }
        let env = env.filter(|e| t.free_vars().iter().any(|n| e.contains(n)));
        Ok(match t.kind() {
            TermKind::Var { name, .. } => match env.as_ref().and_then(|e| e.get(name)) {
                Some(v) => Mode::Return(v.clone()),
                None => Mode::Return(t),
            },
            TermKind::Abs { .. } => Mode::Return(instantiate(&t, &env)),
            TermKind::App(fun, arg) => {
                let fun = fun.clone();
                self.stack.push(Frame::AppFun {
                    arg: arg.clone(),
                    env: env.clone(),
                });
                Mode::Eval(fun, env)
            }
            TermKind::Fun(f, args) => {
                if args.is_empty() {
                    return self.complete(t);
                }
                let first = args[0].clone();
                self.stack.push(Frame::Args {
                    symbol: f.clone(),
                    skeleton: t.clone(),
                    env: env.clone(),
                    done: Vec::with_capacity(args.len()),
                    next: 1,
                });
                Mode::Eval(first, env)
            }
        })
    }

    fn resume(&mut self, frame: Frame, value: Term) -> Result<Mode, EngineError> {
        match frame {
            Frame::Args {
                symbol,
                skeleton,
                env,
                mut done,
                next,
            } => {
                done.push(value);
                let args = skeleton.args();
                if next < args.len() {
                    let arg = args[next].clone();
                    self.stack.push(Frame::Args {
                        symbol,
                        skeleton,
                        env: env.clone(),
                        done,
                        next: next + 1,
                    });
                    return Ok(Mode::Eval(arg, env));
                }
                let unchanged = done.iter().zip(args).all(|(d, a)| d.ptr_eq(a));
                let term = if unchanged {
                    skeleton
                } else {
                    Term::fun(symbol, done)
                };
                self.complete(term)
            }
            Frame::AppFun { arg, env } => {
                self.stack.push(Frame::AppArg { fun: value });
                Ok(Mode::Eval(arg, env))
            }
            Frame::AppArg { fun } => match fun.kind() {
                TermKind::Abs { binder, body, .. } => {
                    let (binder, body) = (binder.clone(), body.clone());
                    let env = Subst::singleton(binder.clone(), value.clone());
                    let redex = Term::app(fun, value);
                    self.step(StepRule::Beta, &redex, &body, &env, Some(&binder))?;
                    Ok(Mode::Eval(body, Some(Rc::new(env))))
                }
                _ => Ok(Mode::Return(Term::app(fun, value))),
            },
        }
    }

    /// `term` is a function application whose arguments are all values.
    fn complete(&mut self, term: Term) -> Result<Mode, EngineError> {
        let trs = self.trs;
        let Some((rule, sigma)) = first_matching_rule(trs, &term) else {
            return Ok(Mode::Return(term));
        };
        self.step(StepRule::Rule(rule.index()), &term, rule.rhs(), &sigma, None)?;
        Ok(Mode::Eval(rule.rhs().clone(), Some(Rc::new(sigma))))
    }

    fn position(&self) -> Position {
        self.stack
            .iter()
            .map(|f| match f {
                Frame::Args { next, .. } => next - 1,
                Frame::AppFun { .. } => 0,
                Frame::AppArg { .. } => 1,
            })
            .collect()
    }

    fn plug(&self, focus: Term) -> Term {
        self.stack.iter().rev().fold(focus, |hole, frame| match frame {
            Frame::Args {
                symbol,
                skeleton,
                env,
                done,
                next,
            } => {
                let mut args = done.clone();
                args.push(hole);
                args.extend(skeleton.args()[*next..].iter().map(|a| instantiate(a, env)));
                Term::fun(symbol.clone(), args)
            }
            Frame::AppFun { arg, env } => Term::app(hole, instantiate(arg, env)),
            Frame::AppArg { fun } => Term::app(fun.clone(), hole),
        })
    }

    /// Accounts for one step contracting `redex` to `skeleton·env`.
    /// `fresh_only` names the β-bound variable: only subterms mentioning it
    /// are new, everything else was already part of the previous term.
    fn step(
        &mut self,
        rule: StepRule,
        redex: &Term,
        skeleton: &Term,
        env: &Subst,
        fresh_only: Option<&Name>,
    ) -> Result<(), EngineError> {
        if self.steps >= self.fuel {
            return Err(EngineError::FuelExhausted { steps: self.steps });
        }
        self.steps += 1;
        if self.observer.is_some() || self.trace.is_some() {
            let position = self.position();
            if let Some(obs) = self.observer.as_mut() {
                obs(&StepEvent {
                    number: self.steps,
                    position: &position,
                    rule,
                    redex,
                });
            }
            if self.trace.is_some() {
                let term = self.plug(substitute(skeleton, env));
                let number = self.steps;
                if let Some(trace) = self.trace.as_mut() {
                    trace.push(TraceStep {
                        number,
                        position,
                        rule,
                        term,
                    });
                }
            }
        }
        if let Some(b) = self.b_check {
            if let Some(bad) = introduced_unsafe(skeleton, env, b, fresh_only) {
                return Err(EngineError::BSafetyViolation {
                    step: self.steps,
                    subterm: bad,
                });
            }
        }
        Ok(())
    }
}

/// Constructor-headed subterms created by instantiating `skeleton` with
/// `env`, checked against `b`.
///
/// If the term before a step is B-safe, no constructor-headed ancestor of
/// the redex exists (it would contain the redex, hence not be a data term,
/// hence not be in B), the context is unchanged, and the substituted values
/// are subterms of the previous term. So the new term is B-safe iff these
/// subterms are in `b`.
fn introduced_unsafe(skeleton: &Term, env: &Subst, b: &BSet, fresh_only: Option<&Name>) -> Option<Term> {
    fn go(t: &Term, env: &Subst, b: &BSet, fresh_only: Option<&Name>) -> Option<Term> {
        if let Some(x) = fresh_only {
            if !t.free_vars().contains(x) {
                return None;
            }
        }
        if t.is_var() {
            return None;
        }
        if t.is_constructor_headed() {
            let inst = substitute(t, env);
            if !b.contains(&inst) {
                return Some(inst);
            }
        }
        if t.is_data() {
            return None;
        }
        t.children().into_iter().find_map(|c| go(c, env, b, fresh_only))
    }
    go(skeleton, env, b, fresh_only)
}

/// Normalizes `t`, optionally asserting B-safety after every step.
pub fn normalize(trs: &Trs, t: &Term, fuel: u64, b_check: Option<&BSet>) -> Result<Normalized, EngineError> {
    Normalizer::new(trs).fuel(fuel).b_check(b_check).run(t)
}

/// Like [`normalize`] but keeps the full trace.
pub fn normalize_traced(
    trs: &Trs,
    t: &Term,
    fuel: u64,
    b_check: Option<&BSet>,
) -> (Trace, Result<Normalized, EngineError>) {
    Normalizer::new(trs)
        .fuel(fuel)
        .b_check(b_check)
        .record_trace(true)
        .run_traced(t)
}

/// Reference normalization by repeated [`rewrite_step_at`] on whole terms,
/// with a full B-safety check of every intermediate term.
pub fn normalize_stepwise(
    trs: &Trs,
    t: &Term,
    fuel: u64,
    b_check: Option<&BSet>,
) -> (Trace, Result<Normalized, EngineError>) {
    let mut steps = Vec::new();
    let mut cur = t.clone();
    let check = |term: &Term, step: u64| -> Result<(), EngineError> {
        match b_check.and_then(|b| first_unsafe_subterm(term, b)) {
            Some(bad) => Err(EngineError::BSafetyViolation { step, subterm: bad }),
            None => Ok(()),
        }
    };
    let finish = |steps: Vec<TraceStep>, status, result| {
        (
            Trace {
                start: t.clone(),
                steps,
                status,
            },
            result,
        )
    };
    if let Err(e) = check(&cur, 0) {
        return finish(steps, Status::NormalForm, Err(e));
    }
    let mut count = 0u64;
    loop {
        let Some((next, position, rule)) = rewrite_step_at(trs, &cur) else {
            return finish(
                steps,
                Status::NormalForm,
                Ok(Normalized {
                    term: cur,
                    steps: count,
                }),
            );
        };
        if count >= fuel {
            return finish(steps, Status::FuelExhausted, Err(EngineError::FuelExhausted { steps: count }));
        }
        count += 1;
        steps.push(TraceStep {
            number: count,
            position,
            rule,
            term: next.clone(),
        });
        if let Err(e) = check(&next, count) {
            return finish(steps, Status::NormalForm, Err(e));
        }
        cur = next;
    }
}
