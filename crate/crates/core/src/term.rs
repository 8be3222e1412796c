//! Function symbols, terms, substitutions and the structural queries the
//! rest of the crate is built on.
//!
//! Terms are immutable and reference counted, so sharing a subterm between
//! many larger terms is free. Every node caches its structural hash, its set
//! of free variables and whether it is a data term.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

use crate::types::{SimpleType, TypeDecl};

/// Variable and binder names.
pub type Name = Arc<str>;

/// A path from the root: argument index for `f(…)`, `0`/`1` for the function
/// and argument of an application, `0` for the body of an abstraction.
pub type Position = Vec<usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    Constructor,
    Defined,
}

#[derive(Debug)]
pub struct SymbolInfo {
    pub name: Name,
    pub decl: TypeDecl,
    pub kind: SymbolKind,
    /// Position in the signature, starting at 1.
    pub index: usize,
}

/// A function symbol with its declaration. Cheap to clone.
#[derive(Clone)]
pub struct Symbol(Arc<SymbolInfo>);

impl Symbol {
    pub fn new(name: &str, decl: TypeDecl, kind: SymbolKind, index: usize) -> Self {
        Symbol(Arc::new(SymbolInfo {
            name: Arc::from(name),
            decl,
            kind,
            index,
        }))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn decl(&self) -> &TypeDecl {
        &self.0.decl
    }

    pub fn kind(&self) -> SymbolKind {
        self.0.kind
    }

    pub fn index(&self) -> usize {
        self.0.index
    }

    pub fn arity(&self) -> usize {
        self.0.decl.arity()
    }

    pub fn is_constructor(&self) -> bool {
        self.0.kind == SymbolKind::Constructor
    }
}

impl PartialEq for Symbol {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.index == other.0.index
                && self.0.kind == other.0.kind
                && self.0.name == other.0.name)
    }
}

impl Eq for Symbol {}

impl Hash for Symbol {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.index.hash(state);
        self.0.name.hash(state);
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.0.name, self.0.index)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub enum TermKind {
    Var {
        name: Name,
        ty: SimpleType,
    },
    Abs {
        binder: Name,
        ty: SimpleType,
        body: Term,
    },
    App(Term, Term),
    Fun(Symbol, Vec<Term>),
}

struct Node {
    kind: TermKind,
    hash: u64,
    free: Arc<[Name]>,
    data: bool,
}

/// A term. Equality is syntactic; see [`alpha_eq`] for equality modulo
/// renaming of bound variables.
#[derive(Clone)]
pub struct Term(Arc<Node>);

fn empty_names() -> Arc<[Name]> {
    Arc::from(Vec::new())
}

fn union_names<'a>(sets: impl Iterator<Item = &'a Arc<[Name]>>) -> Arc<[Name]> {
    let mut out: Vec<Name> = Vec::new();
    let mut single: Option<&Arc<[Name]>> = None;
    let mut count = 0;
    for set in sets {
        if set.is_empty() {
            continue;
        }
        count += 1;
        if count == 1 {
            single = Some(set);
        }
        for n in set.iter() {
            if !out.contains(n) {
                out.push(n.clone());
            }
        }
    }
    match (count, single) {
        (0, _) => empty_names(),
        (1, Some(set)) => set.clone(),
        _ => {
            out.sort();
            Arc::from(out)
        }
    }
}

impl Term {
    fn from_kind(kind: TermKind) -> Term {
        let mut h = DefaultHasher::new();
        let (free, data) = match &kind {
            TermKind::Var { name, .. } => {
                0u8.hash(&mut h);
                name.hash(&mut h);
                (Arc::from(vec![name.clone()]), false)
            }
            TermKind::Abs { binder, ty, body } => {
                1u8.hash(&mut h);
                binder.hash(&mut h);
                ty.hash(&mut h);
                body.0.hash.hash(&mut h);
                let free = if body.0.free.contains(binder) {
                    let rest: Vec<Name> = body
                        .0
                        .free
                        .iter()
                        .filter(|n| *n != binder)
                        .cloned()
                        .collect();
                    Arc::from(rest)
                } else {
                    body.0.free.clone()
                };
                (free, false)
            }
            TermKind::App(s, u) => {
                2u8.hash(&mut h);
                s.0.hash.hash(&mut h);
                u.0.hash.hash(&mut h);
                (union_names([&s.0.free, &u.0.free].into_iter()), false)
            }
            TermKind::Fun(f, args) => {
                3u8.hash(&mut h);
                f.hash(&mut h);
                for a in args {
                    a.0.hash.hash(&mut h);
                }
                let data = f.is_constructor() && args.iter().all(|a| a.0.data);
                let free = if data {
                    empty_names()
                } else {
                    union_names(args.iter().map(|a| &a.0.free))
                };
                (free, data)
            }
        };
        Term(Arc::new(Node {
            kind,
            hash: h.finish(),
            free,
            data,
        }))
    }

    pub fn var(name: &str, ty: SimpleType) -> Term {
        Term::from_kind(TermKind::Var {
            name: Arc::from(name),
            ty,
        })
    }

    pub fn var_named(name: Name, ty: SimpleType) -> Term {
        Term::from_kind(TermKind::Var { name, ty })
    }

    pub fn abs(binder: &str, ty: SimpleType, body: Term) -> Term {
        Term::abs_named(Arc::from(binder), ty, body)
    }

    pub fn abs_named(binder: Name, ty: SimpleType, body: Term) -> Term {
        Term::from_kind(TermKind::Abs { binder, ty, body })
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term::from_kind(TermKind::App(fun, arg))
    }

    /// Builds `f(args)` without checking arity or types; see [`Term::type_of`].
    pub fn fun(symbol: Symbol, args: Vec<Term>) -> Term {
        Term::from_kind(TermKind::Fun(symbol, args))
    }

    pub fn constant(symbol: Symbol) -> Term {
        Term::fun(symbol, Vec::new())
    }

    pub fn kind(&self) -> &TermKind {
        &self.0.kind
    }

    pub fn ptr_eq(&self, other: &Term) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Free variables, sorted by name.
    pub fn free_vars(&self) -> &[Name] {
        &self.0.free
    }

    pub fn is_closed(&self) -> bool {
        self.0.free.is_empty()
    }

    /// Ground constructor term without abstractions or applications.
    pub fn is_data(&self) -> bool {
        self.0.data
    }

    pub fn head_symbol(&self) -> Option<&Symbol> {
        match &self.0.kind {
            TermKind::Fun(f, _) => Some(f),
            _ => None,
        }
    }

    pub fn args(&self) -> &[Term] {
        match &self.0.kind {
            TermKind::Fun(_, args) => args,
            _ => &[],
        }
    }

    pub fn is_abs(&self) -> bool {
        matches!(self.0.kind, TermKind::Abs { .. })
    }

    pub fn is_var(&self) -> bool {
        matches!(self.0.kind, TermKind::Var { .. })
    }

    pub fn is_constructor_headed(&self) -> bool {
        matches!(&self.0.kind, TermKind::Fun(f, _) if f.is_constructor())
    }

    /// First-order: no abstractions and no applications anywhere.
    pub fn is_first_order(&self) -> bool {
        match &self.0.kind {
            TermKind::Var { .. } => true,
            TermKind::Fun(_, args) => args.iter().all(Term::is_first_order),
            TermKind::Abs { .. } | TermKind::App(..) => false,
        }
    }

    pub fn children(&self) -> Vec<&Term> {
        match &self.0.kind {
            TermKind::Var { .. } => Vec::new(),
            TermKind::Abs { body, .. } => vec![body],
            TermKind::App(s, u) => vec![s, u],
            TermKind::Fun(_, args) => args.iter().collect(),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Term::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self
            .children()
            .into_iter()
            .map(Term::depth)
            .max()
            .unwrap_or(0)
    }

    pub fn subterm_at(&self, pos: &[usize]) -> Option<&Term> {
        let mut cur = self;
        for &i in pos {
            cur = match &cur.0.kind {
                TermKind::Abs { body, .. } if i == 0 => body,
                TermKind::App(s, _) if i == 0 => s,
                TermKind::App(_, u) if i == 1 => u,
                TermKind::Fun(_, args) => args.get(i)?,
                _ => return None,
            };
        }
        Some(cur)
    }

    /// Replaces the subterm at `pos`. Panics if `pos` is not a position of `self`.
    pub fn replace_at(&self, pos: &[usize], new: Term) -> Term {
        let Some((&i, rest)) = pos.split_first() else {
            return new;
        };
        match &self.0.kind {
            TermKind::Abs { binder, ty, body } if i == 0 => {
                Term::abs_named(binder.clone(), ty.clone(), body.replace_at(rest, new))
            }
            TermKind::App(s, u) if i == 0 => Term::app(s.replace_at(rest, new), u.clone()),
            TermKind::App(s, u) if i == 1 => Term::app(s.clone(), u.replace_at(rest, new)),
            TermKind::Fun(f, args) if i < args.len() => {
                let mut args = args.clone();
                args[i] = args[i].replace_at(rest, new);
                Term::fun(f.clone(), args)
            }
            _ => panic!("invalid position {pos:?}"),
        }
    }

    /// Visits `self` and every nested subterm, depth-first, left to right,
    /// entering abstraction bodies.
    pub fn for_each_subterm<'a>(&'a self, visit: &mut impl FnMut(&'a Term)) {
        visit(self);
        match &self.0.kind {
            TermKind::Var { .. } => {}
            TermKind::Abs { body, .. } => body.for_each_subterm(visit),
            TermKind::App(s, u) => {
                s.for_each_subterm(visit);
                u.for_each_subterm(visit);
            }
            TermKind::Fun(_, args) => {
                for a in args {
                    a.for_each_subterm(visit);
                }
            }
        }
    }

    /// The unique simple type of the term.
    pub fn type_of(&self) -> Result<SimpleType, TypeError> {
        match &self.0.kind {
            TermKind::Var { ty, .. } => Ok(ty.clone()),
            TermKind::Abs { ty, body, .. } => Ok(SimpleType::arrow(ty.clone(), body.type_of()?)),
            TermKind::App(s, u) => {
                let fun_ty = s.type_of()?;
                let arg_ty = u.type_of()?;
                match fun_ty.as_arrow() {
                    Some((dom, cod)) if *dom == arg_ty => Ok(cod.clone()),
                    Some((dom, _)) => Err(TypeError::Mismatch {
                        expected: dom.clone(),
                        found: arg_ty,
                    }),
                    None => Err(TypeError::NotAFunction(fun_ty)),
                }
            }
            TermKind::Fun(f, args) => {
                let decl = f.decl();
                if decl.arity() != args.len() {
                    return Err(TypeError::Arity {
                        symbol: f.name().to_string(),
                        expected: decl.arity(),
                        found: args.len(),
                    });
                }
                for (arg, expected) in args.iter().zip(&decl.arg_types) {
                    let found = arg.type_of()?;
                    if found != *expected {
                        return Err(TypeError::Mismatch {
                            expected: expected.clone(),
                            found,
                        });
                    }
                }
                Ok(decl.result_type.clone())
            }
        }
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.hash == other.0.hash && self.0.kind == other.0.kind)
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_term(self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("type mismatch: expected {expected}, found {found}")]
    Mismatch {
        expected: SimpleType,
        found: SimpleType,
    },
    #[error("applying a term of non-functional type {0}")]
    NotAFunction(SimpleType),
    #[error("symbol `{symbol}` expects {expected} arguments, found {found}")]
    Arity {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("variable `{name}` has type {var_type} but is mapped to a term of type {image_type}")]
    SubstitutionType {
        name: String,
        var_type: SimpleType,
        image_type: SimpleType,
    },
}

/// A finite mapping from variable names to terms.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Subst {
    bindings: Vec<(Name, Term)>,
}

impl Subst {
    pub fn new() -> Self {
        Subst::default()
    }

    pub fn singleton(name: Name, value: Term) -> Self {
        Subst {
            bindings: vec![(name, value)],
        }
    }

    pub fn get(&self, name: &str) -> Option<&Term> {
        self.bindings
            .iter()
            .find(|(n, _)| &**n == name)
            .map(|(_, t)| t)
    }

    /// Inserts or overwrites a binding.
    pub fn insert(&mut self, name: Name, value: Term) {
        if let Some(slot) = self.bindings.iter_mut().find(|(n, _)| *n == name) {
            slot.1 = value;
        } else {
            self.bindings.push((name, value));
        }
    }

    pub fn contains(&self, name: &str) -> bool {
        self.get(name).is_some()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &Term)> {
        self.bindings.iter().map(|(n, t)| (n, t))
    }

    fn without(&self, name: &str) -> Subst {
        Subst {
            bindings: self
                .bindings
                .iter()
                .filter(|(n, _)| &**n != name)
                .cloned()
                .collect(),
        }
    }

    fn touches(&self, free: &[Name]) -> bool {
        !free.is_empty() && self.bindings.iter().any(|(n, _)| free.contains(n))
    }
}

impl fmt::Debug for Subst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter()).finish()
    }
}

impl FromIterator<(Name, Term)> for Subst {
    fn from_iter<I: IntoIterator<Item = (Name, Term)>>(iter: I) -> Self {
        let mut s = Subst::new();
        for (n, t) in iter {
            s.insert(n, t);
        }
        s
    }
}

/// `t` and all of its nested subterms, including under binders, depth-first
/// left to right.
pub fn subterms(t: &Term) -> Vec<Term> {
    let mut out = Vec::new();
    t.for_each_subterm(&mut |s| out.push(s.clone()));
    out
}

pub fn is_data_term(t: &Term) -> bool {
    t.is_data()
}

/// Capture-avoiding simultaneous substitution. Rejects mappings whose images
/// do not have the type of the variable they replace.
pub fn apply_subst(t: &Term, m: &Subst) -> Result<Term, TypeError> {
    for (name, image) in m.iter() {
        let image_type = image.type_of()?;
        if let Some(var_type) = free_var_type(t, name) {
            if var_type != image_type {
                return Err(TypeError::SubstitutionType {
                    name: name.to_string(),
                    var_type,
                    image_type,
                });
            }
        }
    }
    Ok(substitute(t, m))
}

fn free_var_type(t: &Term, name: &str) -> Option<SimpleType> {
    if !t.free_vars().iter().any(|n| &**n == name) {
        return None;
    }
    match t.kind() {
        TermKind::Var { ty, .. } => Some(ty.clone()),
        TermKind::Abs { body, .. } => free_var_type(body, name),
        TermKind::App(s, u) => free_var_type(s, name).or_else(|| free_var_type(u, name)),
        TermKind::Fun(_, args) => args.iter().find_map(|a| free_var_type(a, name)),
    }
}

/// Capture-avoiding substitution without type checks. Subterms that mention
/// none of the substituted variables are shared, not copied.
pub fn substitute(t: &Term, m: &Subst) -> Term {
    if !m.touches(t.free_vars()) {
        return t.clone();
    }
    match t.kind() {
        TermKind::Var { name, .. } => m.get(name).cloned().unwrap_or_else(|| t.clone()),
        TermKind::App(s, u) => Term::app(substitute(s, m), substitute(u, m)),
        TermKind::Fun(f, args) => {
            Term::fun(f.clone(), args.iter().map(|a| substitute(a, m)).collect())
        }
        TermKind::Abs { binder, ty, body } => {
            let inner = m.without(binder);
            if !inner.touches(body.free_vars()) {
                return t.clone();
            }
            let captures = inner.iter().any(|(n, image)| {
                body.free_vars().contains(n) && image.free_vars().contains(binder)
            });
            if !captures {
                return Term::abs_named(binder.clone(), ty.clone(), substitute(body, &inner));
            }
            let mut avoid: Vec<Name> = body.free_vars().to_vec();
            for (n, image) in inner.iter() {
                avoid.push(n.clone());
                avoid.extend(image.free_vars().iter().cloned());
            }
            let fresh = fresh_name(binder, &avoid);
            let renamed = substitute(
                body,
                &Subst::singleton(binder.clone(), Term::var_named(fresh.clone(), ty.clone())),
            );
            Term::abs_named(fresh, ty.clone(), substitute(&renamed, &inner))
        }
    }
}

/// `base` with primes appended until it avoids every name in `avoid`.
pub fn fresh_name(base: &str, avoid: &[Name]) -> Name {
    let mut candidate = format!("{base}'");
    while avoid.iter().any(|n| **n == *candidate) {
        candidate.push('\'');
    }
    Arc::from(candidate)
}

/// Equality up to consistent renaming of bound variables.
pub fn alpha_eq(s: &Term, t: &Term) -> bool {
    fn go(s: &Term, t: &Term, left: &mut Vec<Name>, right: &mut Vec<Name>) -> bool {
        if s == t && (left.is_empty() || s.is_closed()) {
            return true;
        }
        match (s.kind(), t.kind()) {
            (TermKind::Var { name: x, ty: tx }, TermKind::Var { name: y, ty: ty_ }) => {
                let bx = left.iter().rposition(|n| n == x);
                let by = right.iter().rposition(|n| n == y);
                match (bx, by) {
                    (Some(i), Some(j)) => i == j,
                    (None, None) => x == y && tx == ty_,
                    _ => false,
                }
            }
            (
                TermKind::Abs {
                    binder: x,
                    ty: tx,
                    body: bs,
                },
                TermKind::Abs {
                    binder: y,
                    ty: ty_,
                    body: bt,
                },
            ) => {
                if tx != ty_ {
                    return false;
                }
                left.push(x.clone());
                right.push(y.clone());
                let eq = go(bs, bt, left, right);
                left.pop();
                right.pop();
                eq
            }
            (TermKind::App(s1, s2), TermKind::App(t1, t2)) => {
                go(s1, t1, left, right) && go(s2, t2, left, right)
            }
            (TermKind::Fun(f, xs), TermKind::Fun(g, ys)) => {
                f == g
                    && xs.len() == ys.len()
                    && xs.iter().zip(ys).all(|(a, b)| go(a, b, left, right))
            }
            _ => false,
        }
    }
    go(s, t, &mut Vec::new(), &mut Vec::new())
}
