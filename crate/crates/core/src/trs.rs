//! Rules and term rewriting systems.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::term::{fresh_name, substitute, Name, Subst, Symbol, SymbolKind, Term, TermKind, TypeError};
use crate::types::{Sort, SimpleType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("left-hand side must be headed by a defined symbol")]
    LhsNotDefinedHead,
    #[error("lhs argument not a constructor term: {0}")]
    LhsArgNotConstructor(String),
    #[error("unbound rhs variable `{0}`")]
    UnboundRhsVariable(String),
    #[error("ill-typed rule: {0}")]
    IllTyped(#[from] TypeError),
    #[error("lhs has type {lhs} but rhs has type {rhs}")]
    SideTypes { lhs: SimpleType, rhs: SimpleType },
}

/// A rule `f(ℓ1,…,ℓn) → r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    lhs: Term,
    rhs: Term,
    index: usize,
}

impl Rule {
    /// Validates the rule shape. Binders in the rhs that clash with a lhs
    /// variable are renamed.
    pub fn new(lhs: Term, rhs: Term, index: usize) -> Result<Rule, RuleError> {
        let args = match lhs.kind() {
            TermKind::Fun(f, args) if f.kind() == SymbolKind::Defined => args,
            _ => return Err(RuleError::LhsNotDefinedHead),
        };
        for arg in args {
            if !is_constructor_pattern(arg) {
                return Err(RuleError::LhsArgNotConstructor(arg.to_string()));
            }
        }
        let lhs_ty = lhs.type_of()?;
        let rhs_ty = rhs.type_of()?;
        if lhs_ty != rhs_ty {
            return Err(RuleError::SideTypes {
                lhs: lhs_ty,
                rhs: rhs_ty,
            });
        }
        if let Some(v) = rhs
            .free_vars()
            .iter()
            .find(|v| !lhs.free_vars().contains(v))
        {
            return Err(RuleError::UnboundRhsVariable(v.to_string()));
        }
        let rhs = rename_binders_apart(&rhs, lhs.free_vars());
        Ok(Rule { lhs, rhs, index })
    }

    pub fn lhs(&self) -> &Term {
        &self.lhs
    }

    pub fn rhs(&self) -> &Term {
        &self.rhs
    }

    /// Position in the rule list, starting at 1.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn head(&self) -> &Symbol {
        self.lhs.head_symbol().expect("rule lhs is a function application")
    }

    /// Variables of the lhs in order of first occurrence.
    pub fn lhs_variables(&self) -> Vec<(Name, SimpleType)> {
        let mut out: Vec<(Name, SimpleType)> = Vec::new();
        self.lhs.for_each_subterm(&mut |t| {
            if let TermKind::Var { name, ty } = t.kind() {
                if !out.iter().any(|(n, _)| n == name) {
                    out.push((name.clone(), ty.clone()));
                }
            }
        });
        out
    }

    pub fn is_first_order(&self) -> bool {
        self.lhs.is_first_order() && self.rhs.is_first_order()
    }

    pub(crate) fn with_index(mut self, index: usize) -> Rule {
        self.index = index;
        self
    }
}

/// Variables and constructor applications only.
pub fn is_constructor_pattern(t: &Term) -> bool {
    match t.kind() {
        TermKind::Var { .. } => true,
        TermKind::Fun(f, args) => f.is_constructor() && args.iter().all(is_constructor_pattern),
        TermKind::Abs { .. } | TermKind::App(..) => false,
    }
}

fn rename_binders_apart(t: &Term, avoid: &[Name]) -> Term {
    match t.kind() {
        TermKind::Var { .. } => t.clone(),
        TermKind::App(s, u) => Term::app(rename_binders_apart(s, avoid), rename_binders_apart(u, avoid)),
        TermKind::Fun(f, args) => Term::fun(
            f.clone(),
            args.iter().map(|a| rename_binders_apart(a, avoid)).collect(),
        ),
        TermKind::Abs { binder, ty, body } => {
            let body = rename_binders_apart(body, avoid);
            if !avoid.contains(binder) {
                return Term::abs_named(binder.clone(), ty.clone(), body);
            }
            let mut taken: Vec<Name> = avoid.to_vec();
            taken.extend(body.free_vars().iter().cloned());
            let fresh = fresh_name(binder, &taken);
            let body = substitute(
                &body,
                &Subst::singleton(binder.clone(), Term::var_named(fresh.clone(), ty.clone())),
            );
            Term::abs_named(fresh, ty.clone(), body)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrsError {
    #[error("symbol `{0}` declared twice")]
    DuplicateSymbol(String),
    #[error("symbol `{name}` has index {index}, expected {expected}")]
    BadIndex {
        name: String,
        index: usize,
        expected: usize,
    },
    #[error("unknown sort `{0}`")]
    UnknownSort(String),
    #[error("rule {0} uses a symbol outside the signature: `{1}`")]
    ForeignSymbol(usize, String),
}

/// A signature (sorts and symbols) together with an ordered rule list.
#[derive(Clone, Debug)]
pub struct Trs {
    sorts: Vec<Sort>,
    symbols: Vec<Symbol>,
    rules: Vec<Rule>,
    by_name: HashMap<Name, usize>,
    by_head: Vec<Vec<usize>>,
}

impl Trs {
    /// Symbols must be indexed `1..=n` in the order given. Rules are
    /// re-indexed `1..=m` in list order.
    pub fn new(sorts: Vec<Sort>, symbols: Vec<Symbol>, rules: Vec<Rule>) -> Result<Trs, TrsError> {
        let mut by_name = HashMap::new();
        for (pos, sym) in symbols.iter().enumerate() {
            if sym.index() != pos + 1 {
                return Err(TrsError::BadIndex {
                    name: sym.name().to_string(),
                    index: sym.index(),
                    expected: pos + 1,
                });
            }
            if by_name.insert(Arc::from(sym.name()), pos).is_some() {
                return Err(TrsError::DuplicateSymbol(sym.name().to_string()));
            }
            let decl = sym.decl();
            for ty in decl.arg_types.iter().chain(std::iter::once(&decl.result_type)) {
                if let Some(s) = ty.sorts().into_iter().find(|s| !sorts.contains(s)) {
                    return Err(TrsError::UnknownSort(s.to_string()));
                }
            }
        }
        let rules: Vec<Rule> = rules
            .into_iter()
            .enumerate()
            .map(|(i, r)| r.with_index(i + 1))
            .collect();
        let mut by_head = vec![Vec::new(); symbols.len() + 1];
        for (pos, rule) in rules.iter().enumerate() {
            for side in [rule.lhs(), rule.rhs()] {
                let mut foreign = None;
                side.for_each_subterm(&mut |t| {
                    if let Some(f) = t.head_symbol() {
                        let known = by_name
                            .get(f.name())
                            .map(|&i| symbols[i] == *f)
                            .unwrap_or(false);
                        if !known && foreign.is_none() {
                            foreign = Some(f.name().to_string());
                        }
                    }
                });
                if let Some(name) = foreign {
                    return Err(TrsError::ForeignSymbol(rule.index(), name));
                }
            }
            by_head[rule.head().index()].push(pos);
        }
        Ok(Trs {
            sorts,
            symbols,
            rules,
            by_name,
            by_head,
        })
    }

    pub fn sorts(&self) -> &[Sort] {
        &self.sorts
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn symbol(&self, name: &str) -> Option<&Symbol> {
        self.by_name.get(name).map(|&i| &self.symbols[i])
    }

    /// Symbol with the given 1-based index.
    pub fn symbol_by_index(&self, index: usize) -> Option<&Symbol> {
        index.checked_sub(1).and_then(|i| self.symbols.get(i))
    }

    /// Rules headed by `f`, in rule-list order.
    pub fn rules_for<'a>(&'a self, f: &Symbol) -> impl Iterator<Item = &'a Rule> + 'a {
        self.by_head
            .get(f.index())
            .filter(|_| self.symbol_by_index(f.index()) == Some(f))
            .into_iter()
            .flatten()
            .map(move |&i| &self.rules[i])
    }

    pub fn constructors(&self) -> impl Iterator<Item = &Symbol> {
        self.symbols.iter().filter(|s| s.is_constructor())
    }

    pub fn defined_symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.symbols.iter().filter(|s| !s.is_constructor())
    }

    /// Maximum type order over all symbol declarations.
    pub fn type_order(&self) -> usize {
        self.symbols
            .iter()
            .map(|s| s.decl().order())
            .max()
            .unwrap_or(0)
    }

    /// No abstractions or applications in any rule, and every declaration is
    /// first-order.
    pub fn is_first_order(&self) -> bool {
        self.type_order() <= 1 && self.rules.iter().all(Rule::is_first_order)
    }
}
