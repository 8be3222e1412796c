//! Static checks: cons-freeness, left-linearity, orthogonality, and the
//! B-set / B-safety machinery that bounds the data reachable from a start
//! term.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::syntax::print_term;
use crate::term::{Name, Term, TermKind};
use crate::trs::{Rule, Trs};

/// One failed condition, attributed to a rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule_index: usize,
    pub subterm: Term,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

#[derive(Serialize)]
struct ViolationRecord<'a> {
    rule: usize,
    reason: &'a str,
    subterm: String,
}

impl CheckReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        CheckReport {
            passed: violations.is_empty(),
            violations,
        }
    }

    /// One JSON object per line: `{"rule":…,"reason":…,"subterm":…}`.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for v in &self.violations {
            let record = ViolationRecord {
                rule: v.rule_index,
                reason: &v.reason,
                subterm: print_term(&v.subterm),
            };
            out.push_str(&serde_json::to_string(&record).expect("violation serializes"));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            return f.write_str("pass");
        }
        writeln!(f, "fail ({} violations)", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule {}: {}: {}", self.rule_index, self.reason, print_term(&self.subterm))
    }
}

/// True iff no variable occurs twice in the lhs.
pub fn check_left_linear(rule: &Rule) -> bool {
    let mut seen: Vec<&Name> = Vec::new();
    let mut linear = true;
    rule.lhs().for_each_subterm(&mut |t| {
        if let TermKind::Var { name, .. } = t.kind() {
            if seen.contains(&name) {
                linear = false;
            } else {
                seen.push(name);
            }
        }
    });
    linear
}

fn left_linearity_violations(trs: &Trs) -> Vec<Violation> {
    trs.rules()
        .iter()
        .filter(|r| !check_left_linear(r))
        .map(|r| Violation {
            rule_index: r.index(),
            subterm: r.lhs().clone(),
            reason: "lhs is not left-linear".into(),
        })
        .collect()
}

/// Every constructor-headed subterm of a rhs must be a subterm of its lhs or
/// a data term; every lhs must be left-linear.
pub fn check_cons_free(trs: &Trs) -> CheckReport {
    let mut violations = left_linearity_violations(trs);
    for rule in trs.rules() {
        let mut lhs_subterms = HashSet::new();
        rule.lhs().for_each_subterm(&mut |t| {
            lhs_subterms.insert(t.clone());
        });
        rule.rhs().for_each_subterm(&mut |s| {
            if s.is_constructor_headed() && !s.is_data() && !lhs_subterms.contains(s) {
                violations.push(Violation {
                    rule_index: rule.index(),
                    subterm: s.clone(),
                    reason: "constructor subterm is neither a subterm of the lhs nor a data term".into(),
                });
            }
        });
    }
    violations.sort_by_key(|v| v.rule_index);
    CheckReport::from_violations(violations)
}

/// Left-linear and no two distinct rules have unifiable left-hand sides.
pub fn check_orthogonal(trs: &Trs) -> CheckReport {
    let mut violations = left_linearity_violations(trs);
    let rules = trs.rules();
    for (j, later) in rules.iter().enumerate() {
        let renamed = rename_vars(later.lhs(), "#2");
        for earlier in &rules[..j] {
            if earlier.head() != later.head() {
                continue;
            }
            if unify(earlier.lhs(), &renamed).is_some() {
                violations.push(Violation {
                    rule_index: later.index(),
                    subterm: later.lhs().clone(),
                    reason: format!("lhs overlaps with rule {}", earlier.index()),
                });
            }
        }
    }
    violations.sort_by_key(|v| v.rule_index);
    CheckReport::from_violations(violations)
}

fn rename_vars(t: &Term, suffix: &str) -> Term {
    match t.kind() {
        TermKind::Var { name, ty } => Term::var(&format!("{name}{suffix}"), ty.clone()),
        TermKind::Fun(f, args) => Term::fun(
            f.clone(),
            args.iter().map(|a| rename_vars(a, suffix)).collect(),
        ),
        TermKind::App(s, u) => Term::app(rename_vars(s, suffix), rename_vars(u, suffix)),
        TermKind::Abs { .. } => t.clone(),
    }
}

/// Syntactic first-order unification over patterns; functional-type
/// variables are ordinary variables.
pub fn unify(s: &Term, t: &Term) -> Option<HashMap<Name, Term>> {
    fn resolve(t: &Term, sub: &HashMap<Name, Term>) -> Term {
        let mut cur = t.clone();
        while let TermKind::Var { name, .. } = cur.kind() {
            match sub.get(name) {
                Some(next) => cur = next.clone(),
                None => break,
            }
        }
        cur
    }
    fn occurs(name: &Name, t: &Term, sub: &HashMap<Name, Term>) -> bool {
        let t = resolve(t, sub);
        match t.kind() {
            TermKind::Var { name: other, .. } => other == name,
            _ => t.children().into_iter().any(|c| occurs(name, c, sub)),
        }
    }
    let mut sub: HashMap<Name, Term> = HashMap::new();
    let mut stack = vec![(s.clone(), t.clone())];
    while let Some((a, b)) = stack.pop() {
        let a = resolve(&a, &sub);
        let b = resolve(&b, &sub);
        match (a.kind(), b.kind()) {
            (TermKind::Var { name: x, .. }, TermKind::Var { name: y, .. }) if x == y => {}
            (TermKind::Var { name, .. }, _) => {
                if occurs(name, &b, &sub) {
                    return None;
                }
                sub.insert(name.clone(), b.clone());
            }
            (_, TermKind::Var { name, .. }) => {
                if occurs(name, &a, &sub) {
                    return None;
                }
                sub.insert(name.clone(), a.clone());
            }
            (TermKind::Fun(f, xs), TermKind::Fun(g, ys)) => {
                if f != g || xs.len() != ys.len() {
                    return None;
                }
                stack.extend(xs.iter().cloned().zip(ys.iter().cloned()));
            }
            (TermKind::App(a1, a2), TermKind::App(b1, b2)) => {
                stack.push((a1.clone(), b1.clone()));
                stack.push((a2.clone(), b2.clone()));
            }
            _ => {
                if !crate::term::alpha_eq(&a, &b) {
                    return None;
                }
            }
        }
    }
    Some(sub)
}

/// A set of data terms, closed under subterms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BSet {
    elements: HashSet<Term>,
}

impl BSet {
    pub fn new() -> Self {
        BSet::default()
    }

    /// Adds every data subterm of `t` (including under binders).
    pub fn add_data_subterms(&mut self, t: &Term) {
        if t.is_data() {
            if self.elements.insert(t.clone()) {
                for c in t.args() {
                    self.add_data_subterms(c);
                }
            }
            return;
        }
        for c in t.children() {
            self.add_data_subterms(c);
        }
    }

    pub fn contains(&self, t: &Term) -> bool {
        t.is_data() && self.elements.contains(t)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Term> {
        self.elements.iter()
    }

    pub fn is_subterm_closed(&self) -> bool {
        self.elements
            .iter()
            .all(|t| t.args().iter().all(|c| self.elements.contains(c)))
    }

    pub fn into_shared(self) -> Arc<BSet> {
        Arc::new(self)
    }
}

/// Data terms occurring in the right-hand side of some rule.
pub fn rhs_data(trs: &Trs) -> BSet {
    let mut b = BSet::new();
    for rule in trs.rules() {
        b.add_data_subterms(rule.rhs());
    }
    b
}

/// All data subterms of `start` together with all data subterms of rule
/// right-hand sides.
pub fn compute_b(start: &Term, trs: &Trs) -> BSet {
    let mut b = rhs_data(trs);
    b.add_data_subterms(start);
    b
}

/// Every constructor-headed subterm of `t` belongs to `b`.
pub fn check_b_safe(t: &Term, b: &BSet) -> bool {
    first_unsafe_subterm(t, b).is_none()
}

/// The first constructor-headed subterm of `t` outside `b`, depth-first.
pub fn first_unsafe_subterm(t: &Term, b: &BSet) -> Option<Term> {
    if t.is_data() {
        return if b.contains(t) { None } else { Some(t.clone()) };
    }
    if t.is_constructor_headed() {
        return Some(t.clone());
    }
    t.children()
        .into_iter()
        .find_map(|c| first_unsafe_subterm(c, b))
}
