//! Concrete text format for rewriting systems and terms.
//!
//! ```text
//! -- line comment
//! sort bool;
//! cons true : bool;
//! cons false : bool;
//! fun not : [bool] => bool;
//! rule not(true) -> false;
//! rule not(false) -> true;
//! ```
//!
//! Terms: `f(a, b)` for symbol applications (nullary symbols may drop the
//! parentheses), `s t` for application, `\x:type. s` for abstraction and an
//! infix, right-associative `::` when a binary symbol of that name is
//! declared. Symbol indices follow declaration order.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::term::{Name, Symbol, SymbolKind, Term, TermKind};
use crate::trs::{Rule, Trs};
use crate::types::{SimpleType, Sort, TypeDecl};

/// Source text together with the path used in diagnostics.
#[derive(Debug, Clone)]
pub struct SourceFile {
    pub path: String,
    pub text: String,
}

impl SourceFile {
    pub fn new(path: impl Into<String>, text: impl Into<String>) -> Self {
        SourceFile {
            path: path.into(),
            text: text.into(),
        }
    }
}

/// A located error message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub path: String,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}: {}", self.path, self.line, self.col, self.message)
    }
}

impl std::error::Error for Diagnostic {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Loc {
    line: usize,
    col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nil,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    ColonColon,
    Arrow,
    FatArrow,
    Star,
    Backslash,
    Dot,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Nil => f.write_str("`[]`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::ColonColon => f.write_str("`::`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::FatArrow => f.write_str("`=>`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Backslash => f.write_str("`\\`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<(Tok, Loc)>, (Loc, String)> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let loc = Loc { line, col };
        let next = chars.get(i + 1).copied();
        let (tok, width) = match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
                continue;
            }
            '-' if next == Some('-') => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '-' if next == Some('>') => (Tok::Arrow, 2),
            '=' if next == Some('>') => (Tok::FatArrow, 2),
            ':' if next == Some(':') => (Tok::ColonColon, 2),
            '[' if next == Some(']') => (Tok::Nil, 2),
            ':' => (Tok::Colon, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '[' => (Tok::LBracket, 1),
            ']' => (Tok::RBracket, 1),
            ',' => (Tok::Comma, 1),
            ';' => (Tok::Semi, 1),
            '*' => (Tok::Star, 1),
            '\\' => (Tok::Backslash, 1),
            '.' => (Tok::Dot, 1),
            c if is_ident_char(c) => {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                col += i - start;
                toks.push((Tok::Ident(word), loc));
                continue;
            }
            other => return Err((loc, format!("unexpected character `{other}`"))),
        };
        toks.push((tok, loc));
        i += width;
        col += width;
    }
    toks.push((Tok::Eof, Loc { line, col }));
    Ok(toks)
}

#[derive(Debug, Clone)]
enum Ast {
    Ident(String, Loc),
    Call(String, Vec<Ast>, Loc),
    App(Box<Ast>, Box<Ast>, Loc),
    Lam(String, SimpleType, Box<Ast>, Loc),
    Cons(Box<Ast>, Box<Ast>, Loc),
}

impl Ast {
    fn loc(&self) -> Loc {
        match self {
            Ast::Ident(_, l) | Ast::Call(_, _, l) | Ast::App(_, _, l) | Ast::Lam(_, _, _, l) | Ast::Cons(_, _, l) => *l,
        }
    }
}

enum Item {
    Sort(String, Loc),
    Symbol(String, TypeDecl, SymbolKind, Loc),
    Rule(Ast, Ast, Loc),
}

struct Parser {
    toks: Vec<(Tok, Loc)>,
    pos: usize,
}

type PResult<T> = Result<T, (Loc, String)>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn loc(&self) -> Loc {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err((self.loc(), format!("expected {tok}, found {}", self.peek())))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.bump() {
            Tok::Ident(s) => Ok(s),
            other => {
                self.pos -= 1;
                Err((self.loc(), format!("expected identifier, found {other}")))
            }
        }
    }

    fn symbol_name(&mut self) -> PResult<String> {
        match self.peek() {
            Tok::Nil => {
                self.bump();
                Ok("[]".into())
            }
            Tok::ColonColon => {
                self.bump();
                Ok("::".into())
            }
            _ => self.ident(),
        }
    }

    /// Skips to just past the next `;` after an error.
    fn recover(&mut self) {
        while !matches!(self.peek(), Tok::Semi | Tok::Eof) {
            self.bump();
        }
        if *self.peek() == Tok::Semi {
            self.bump();
        }
    }

    fn item(&mut self) -> PResult<Item> {
        let loc = self.loc();
        let kw = self.ident()?;
        let item = match kw.as_str() {
            "sort" => Item::Sort(self.ident()?, loc),
            "cons" | "fun" => {
                let name = self.symbol_name()?;
                self.expect(Tok::Colon)?;
                let decl = self.decl()?;
                let kind = if kw == "cons" {
                    SymbolKind::Constructor
                } else {
                    SymbolKind::Defined
                };
                Item::Symbol(name, decl, kind, loc)
            }
            "rule" => {
                let lhs = self.term()?;
                self.expect(Tok::Arrow)?;
                let rhs = self.term()?;
                Item::Rule(lhs, rhs, loc)
            }
            other => {
                return Err((
                    loc,
                    format!("expected `sort`, `cons`, `fun` or `rule`, found `{other}`"),
                ))
            }
        };
        self.expect(Tok::Semi)?;
        Ok(item)
    }

    fn decl(&mut self) -> PResult<TypeDecl> {
        if *self.peek() != Tok::LBracket {
            return Ok(TypeDecl::constant(self.ty()?));
        }
        self.bump();
        let mut args = vec![self.ty()?];
        while *self.peek() == Tok::Star {
            self.bump();
            args.push(self.ty()?);
        }
        self.expect(Tok::RBracket)?;
        self.expect(Tok::FatArrow)?;
        Ok(TypeDecl::new(args, self.ty()?))
    }

    fn ty(&mut self) -> PResult<SimpleType> {
        let dom = if *self.peek() == Tok::LParen {
            self.bump();
            let t = self.ty()?;
            self.expect(Tok::RParen)?;
            t
        } else {
            SimpleType::base(&self.ident()?)
        };
        if *self.peek() == Tok::FatArrow {
            self.bump();
            Ok(SimpleType::arrow(dom, self.ty()?))
        } else {
            Ok(dom)
        }
    }

    fn term(&mut self) -> PResult<Ast> {
        if *self.peek() == Tok::Backslash {
            return self.lambda();
        }
        let loc = self.loc();
        let head = self.application()?;
        if *self.peek() == Tok::ColonColon {
            self.bump();
            let tail = self.term()?;
            return Ok(Ast::Cons(Box::new(head), Box::new(tail), loc));
        }
        Ok(head)
    }

    fn lambda(&mut self) -> PResult<Ast> {
        let loc = self.loc();
        self.expect(Tok::Backslash)?;
        let binder = self.ident()?;
        self.expect(Tok::Colon)?;
        let ty = self.ty()?;
        self.expect(Tok::Dot)?;
        let body = self.term()?;
        Ok(Ast::Lam(binder, ty, Box::new(body), loc))
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::Nil | Tok::LParen | Tok::Backslash)
    }

    fn application(&mut self) -> PResult<Ast> {
        let loc = self.loc();
        let mut acc = self.atom()?;
        while self.starts_atom() {
            let arg = if *self.peek() == Tok::Backslash {
                self.lambda()?
            } else {
                self.atom()?
            };
            acc = Ast::App(Box::new(acc), Box::new(arg), loc);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> PResult<Ast> {
        let loc = self.loc();
        match self.peek().clone() {
            Tok::Nil => {
                self.bump();
                Ok(Ast::Ident("[]".into(), loc))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() != Tok::LParen {
                    return Ok(Ast::Ident(name, loc));
                }
                self.bump();
                let mut args = Vec::new();
                if *self.peek() != Tok::RParen {
                    args.push(self.term()?);
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        args.push(self.term()?);
                    }
                }
                self.expect(Tok::RParen)?;
                Ok(Ast::Call(name, args, loc))
            }
            Tok::ColonColon if *self.peek_at(1) == Tok::LParen => {
                self.bump();
                self.bump();
                let a = self.term()?;
                self.expect(Tok::Comma)?;
                let b = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(Ast::Call("::".into(), vec![a, b], loc))
            }
            other => Err((loc, format!("expected a term, found {other}"))),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Unknown identifiers become pattern variables typed by position.
    Pattern,
    /// Unknown identifiers must already be in the variable environment.
    Bound,
}

struct Elaborator<'a> {
    symbols: &'a HashMap<String, Symbol>,
    vars: HashMap<String, SimpleType>,
    scope: Vec<(String, SimpleType)>,
    mode: Mode,
    unbound_message: &'static str,
}

impl<'a> Elaborator<'a> {
    fn elab(&mut self, ast: &Ast, expected: Option<&SimpleType>) -> PResult<Term> {
        let t = self.elab_inner(ast, expected)?;
        if let Some(exp) = expected {
            let found = t.type_of().map_err(|e| (ast.loc(), e.to_string()))?;
            if found != *exp {
                return Err((
                    ast.loc(),
                    format!("type mismatch: expected {exp}, found {found}"),
                ));
            }
        }
        Ok(t)
    }

    fn variable(&mut self, name: &str, expected: Option<&SimpleType>, loc: Loc) -> PResult<Term> {
        if let Some((_, ty)) = self.scope.iter().rev().find(|(n, _)| n == name) {
            return Ok(Term::var(name, ty.clone()));
        }
        if let Some(ty) = self.vars.get(name) {
            return Ok(Term::var(name, ty.clone()));
        }
        match (self.mode, expected) {
            (Mode::Pattern, Some(ty)) => {
                self.vars.insert(name.to_string(), ty.clone());
                Ok(Term::var(name, ty.clone()))
            }
            (Mode::Pattern, None) => Err((loc, format!("cannot infer the type of variable `{name}`"))),
            (Mode::Bound, _) => Err((loc, format!("{} `{name}`", self.unbound_message))),
        }
    }

    fn elab_inner(&mut self, ast: &Ast, expected: Option<&SimpleType>) -> PResult<Term> {
        match ast {
            Ast::Ident(name, loc) => {
                let shadowed = self.scope.iter().any(|(n, _)| n == name);
                match self.symbols.get(name) {
                    Some(sym) if !shadowed => {
                        if sym.arity() != 0 {
                            return Err((
                                *loc,
                                format!("arity mismatch: `{name}` expects {} arguments, found 0", sym.arity()),
                            ));
                        }
                        Ok(Term::constant(sym.clone()))
                    }
                    _ => self.variable(name, expected, *loc),
                }
            }
            Ast::Call(name, args, loc) => {
                let shadowed = self.scope.iter().any(|(n, _)| n == name);
                match self.symbols.get(name) {
                    Some(sym) if !shadowed => {
                        if sym.arity() != args.len() {
                            return Err((
                                *loc,
                                format!(
                                    "arity mismatch: `{name}` expects {} arguments, found {}",
                                    sym.arity(),
                                    args.len()
                                ),
                            ));
                        }
                        let sym = sym.clone();
                        let mut out = Vec::with_capacity(args.len());
                        for (arg, ty) in args.iter().zip(&sym.decl().arg_types) {
                            out.push(self.elab(arg, Some(ty))?);
                        }
                        Ok(Term::fun(sym, out))
                    }
                    _ => {
                        let mut acc = self.variable(name, None, *loc)?;
                        for arg in args {
                            acc = self.apply(acc, arg, *loc)?;
                        }
                        Ok(acc)
                    }
                }
            }
            Ast::App(fun, arg, loc) => {
                let fun = self.elab(fun, None)?;
                self.apply(fun, arg, *loc)
            }
            Ast::Cons(head, tail, loc) => {
                let call = Ast::Call("::".into(), vec![(**head).clone(), (**tail).clone()], *loc);
                if !self.symbols.contains_key("::") {
                    return Err((*loc, "unknown symbol `::`".into()));
                }
                self.elab_inner(&call, expected)
            }
            Ast::Lam(binder, ty, body, loc) => {
                let body_expected = match expected.and_then(|e| e.as_arrow()) {
                    Some((dom, cod)) if dom == ty => Some(cod.clone()),
                    Some((dom, _)) => {
                        return Err((*loc, format!("binder type {ty} does not match expected {dom}")))
                    }
                    None => None,
                };
                self.scope.push((binder.clone(), ty.clone()));
                let body = self.elab(body, body_expected.as_ref());
                self.scope.pop();
                Ok(Term::abs(binder, ty.clone(), body?))
            }
        }
    }

    fn apply(&mut self, fun: Term, arg: &Ast, loc: Loc) -> PResult<Term> {
        let fun_ty = fun.type_of().map_err(|e| (loc, e.to_string()))?;
        let Some((dom, _)) = fun_ty.as_arrow() else {
            return Err((loc, format!("applying a term of non-functional type {fun_ty}")));
        };
        let dom = dom.clone();
        let arg = self.elab(arg, Some(&dom))?;
        Ok(Term::app(fun, arg))
    }
}

fn diag(path: &str, (loc, message): (Loc, String)) -> Diagnostic {
    Diagnostic {
        path: path.to_string(),
        line: loc.line,
        col: loc.col,
        message,
    }
}

/// Parses a `.trs` file. All item-level errors are collected.
pub fn parse_trs(src: &SourceFile) -> Result<Trs, Vec<Diagnostic>> {
    let path = src.path.as_str();
    let toks = lex(&src.text).map_err(|e| vec![diag(path, e)])?;
    let mut parser = Parser { toks, pos: 0 };
    let mut items = Vec::new();
    let mut errors = Vec::new();
    while *parser.peek() != Tok::Eof {
        match parser.item() {
            Ok(item) => items.push(item),
            Err(e) => {
                errors.push(diag(path, e));
                parser.recover();
            }
        }
    }

    let mut sorts: Vec<Sort> = Vec::new();
    let mut symbols: Vec<Symbol> = Vec::new();
    let mut by_name: HashMap<String, Symbol> = HashMap::new();
    for item in &items {
        match item {
            Item::Sort(name, loc) => {
                if sorts.iter().any(|s| **s == **name) {
                    errors.push(diag(path, (*loc, format!("sort `{name}` declared twice"))));
                } else {
                    sorts.push(Arc::from(name.as_str()));
                }
            }
            Item::Symbol(..) | Item::Rule(..) => {}
        }
    }
    for item in &items {
        if let Item::Symbol(name, decl, kind, loc) = item {
            let decl_types = decl.arg_types.iter().chain(std::iter::once(&decl.result_type));
            let unknown = decl_types
                .flat_map(|t| t.sorts())
                .find(|s| !sorts.contains(s))
                .cloned();
            if let Some(s) = unknown {
                errors.push(diag(path, (*loc, format!("unknown sort `{s}`"))));
                continue;
            }
            if by_name.contains_key(name) {
                errors.push(diag(path, (*loc, format!("symbol `{name}` declared twice"))));
                continue;
            }
            let sym = Symbol::new(name, decl.clone(), *kind, symbols.len() + 1);
            by_name.insert(name.clone(), sym.clone());
            symbols.push(sym);
        }
    }

    let mut rules = Vec::new();
    for item in &items {
        let Item::Rule(lhs, rhs, loc) = item else {
            continue;
        };
        match elaborate_rule(&by_name, lhs, rhs, *loc, rules.len() + 1) {
            Ok(rule) => rules.push(rule),
            Err(e) => errors.push(diag(path, e)),
        }
    }
    if !errors.is_empty() {
        return Err(errors);
    }
    Trs::new(sorts, symbols, rules).map_err(|e| {
        vec![Diagnostic {
            path: path.to_string(),
            line: 1,
            col: 1,
            message: e.to_string(),
        }]
    })
}

fn elaborate_rule(
    symbols: &HashMap<String, Symbol>,
    lhs: &Ast,
    rhs: &Ast,
    loc: Loc,
    index: usize,
) -> PResult<Rule> {
    let head = match lhs {
        Ast::Call(name, _, _) | Ast::Ident(name, _) => symbols.get(name),
        _ => None,
    };
    match head {
        Some(sym) if sym.kind() == SymbolKind::Defined => {}
        Some(sym) => {
            return Err((
                lhs.loc(),
                format!("lhs must be headed by a defined symbol, `{}` is a constructor", sym.name()),
            ))
        }
        None => return Err((lhs.loc(), "lhs must be headed by a defined symbol".into())),
    }
    let mut el = Elaborator {
        symbols,
        vars: HashMap::new(),
        scope: Vec::new(),
        mode: Mode::Pattern,
        unbound_message: "unbound variable",
    };
    let lhs_term = el.elab(lhs, None)?;
    if let Some(arg) = lhs_term
        .args()
        .iter()
        .find(|a| !crate::trs::is_constructor_pattern(a))
    {
        return Err((lhs.loc(), format!("lhs argument not a constructor term: {arg}")));
    }
    el.mode = Mode::Bound;
    el.unbound_message = "unbound rhs variable";
    let lhs_ty = lhs_term.type_of().map_err(|e| (loc, e.to_string()))?;
    let rhs_term = el.elab(rhs, Some(&lhs_ty))?;
    Rule::new(lhs_term, rhs_term, index).map_err(|e| (loc, e.to_string()))
}

/// Parses a closed term over the signature of `trs`. Free variables are
/// rejected.
pub fn parse_term(src: &str, trs: &Trs) -> Result<Term, Vec<Diagnostic>> {
    parse_term_in(src, trs, &[])
}

/// Parses a term whose free variables must be among `vars`.
pub fn parse_term_in(
    src: &str,
    trs: &Trs,
    vars: &[(Name, SimpleType)],
) -> Result<Term, Vec<Diagnostic>> {
    let path = "<term>";
    let toks = lex(src).map_err(|e| vec![diag(path, e)])?;
    let mut parser = Parser { toks, pos: 0 };
    let ast = parser.term().map_err(|e| vec![diag(path, e)])?;
    if *parser.peek() != Tok::Eof {
        let loc = parser.loc();
        return Err(vec![diag(
            path,
            (loc, format!("unexpected {} after term", parser.peek())),
        )]);
    }
    let symbols: HashMap<String, Symbol> = trs
        .symbols()
        .iter()
        .map(|s| (s.name().to_string(), s.clone()))
        .collect();
    let mut el = Elaborator {
        symbols: &symbols,
        vars: vars.iter().map(|(n, t)| (n.to_string(), t.clone())).collect(),
        scope: Vec::new(),
        mode: Mode::Bound,
        unbound_message: "free variable in ground term:",
    };
    el.elab(&ast, None).map_err(|e| vec![diag(path, e)])
}

fn is_infix_cons(f: &Symbol) -> bool {
    f.name() == "::" && f.arity() == 2
}

/// Prints a term in the concrete syntax. Parsing the output yields an
/// α-equal term.
pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    write_term(t, &mut out);
    out
}

fn write_term(t: &Term, out: &mut String) {
    match t.kind() {
        TermKind::Var { name, .. } => out.push_str(name),
        TermKind::Abs { binder, ty, body } => {
            out.push('\\');
            out.push_str(binder);
            out.push(':');
            out.push_str(&ty.to_string());
            out.push_str(". ");
            write_term(body, out);
        }
        TermKind::App(fun, arg) => {
            let wrap_fun = match fun.kind() {
                TermKind::Abs { .. } => true,
                TermKind::Fun(f, args) => args.is_empty() || is_infix_cons(f),
                _ => false,
            };
            write_wrapped(fun, wrap_fun, out);
            out.push(' ');
            let wrap_arg = match arg.kind() {
                TermKind::Abs { .. } | TermKind::App(..) => true,
                TermKind::Fun(f, _) => is_infix_cons(f),
                TermKind::Var { .. } => false,
            };
            write_wrapped(arg, wrap_arg, out);
        }
        TermKind::Fun(f, args) if is_infix_cons(f) => {
            let wrap_head = match args[0].kind() {
                TermKind::Abs { .. } => true,
                TermKind::Fun(g, _) => is_infix_cons(g),
                _ => false,
            };
            write_wrapped(&args[0], wrap_head, out);
            out.push_str(" :: ");
            write_term(&args[1], out);
        }
        TermKind::Fun(f, args) => {
            out.push_str(f.name());
            if !args.is_empty() {
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_term(a, out);
                }
                out.push(')');
            }
        }
    }
}

fn write_wrapped(t: &Term, wrap: bool, out: &mut String) {
    if wrap {
        out.push('(');
        write_term(t, out);
        out.push(')');
    } else {
        write_term(t, out);
    }
}

/// Prints a whole system: sorts, symbol declarations in index order, rules.
pub fn print_trs(trs: &Trs) -> String {
    let mut out = String::new();
    for sort in trs.sorts() {
        out.push_str(&format!("sort {sort};\n"));
    }
    out.push('\n');
    for sym in trs.symbols() {
        let kw = if sym.is_constructor() { "cons" } else { "fun" };
        out.push_str(&format!("{kw} {} : {};\n", sym.name(), sym.decl()));
    }
    out.push('\n');
    for rule in trs.rules() {
        out.push_str(&format!(
            "rule {} -> {};\n",
            print_term(rule.lhs()),
            print_term(rule.rhs())
        ));
    }
    out
}
