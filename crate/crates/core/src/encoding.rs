//! Encoding first-order terms and rule lists as data over a fixed signature.
//!
//! Numbers are bitstrings, most significant bit outermost, without leading
//! zeros, so `6` is `1(1(0(eps)))`. Index 0 is never used: the bare `eps`
//! is reserved as a marker that is not the code of any variable. A variable
//! `x_i` becomes `Var(⟨i⟩)`, a symbol application `f_i(s1,…,sn)` becomes
//! `Fun(⟨i⟩, ⟨s1⟩ :: … :: ⟨sn⟩ :: [])`, and a rule list becomes nested
//! `Rule(⟨ℓ⟩, ⟨r⟩, …)` ending in `empty`.

use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::syntax::print_term;
use crate::term::{Name, Symbol, SymbolKind, Term, TermKind};
use crate::trs::Trs;
use crate::types::{SimpleType, Sort, TypeDecl};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodingError {
    #[error("0 has no bitstring code")]
    ZeroIndex,
    #[error("cannot encode higher-order term {0}")]
    HigherOrder(String),
    #[error("variable `{0}` is not in the symbol table")]
    UnknownVariable(String),
    #[error("symbol `{0}` is not in the object signature")]
    ForeignSymbol(String),
    #[error("malformed encoding: {0}")]
    Malformed(String),
}

/// The constructors that encodings are built from. Their indices are 1 to 10
/// in field order, which is also the order the interpreter program declares
/// them in.
#[derive(Debug)]
pub struct InterpreterSignature {
    pub sorts: Vec<Sort>,
    pub zero: Symbol,
    pub one: Symbol,
    pub eps: Symbol,
    pub nil: Symbol,
    pub cons: Symbol,
    pub var: Symbol,
    pub fun: Symbol,
    pub bot: Symbol,
    pub empty: Symbol,
    pub rule: Symbol,
}

impl InterpreterSignature {
    pub fn get() -> &'static InterpreterSignature {
        static SIG: OnceLock<InterpreterSignature> = OnceLock::new();
        SIG.get_or_init(|| {
            let bits = SimpleType::base("bitstring");
            let term = SimpleType::base("term");
            let list = SimpleType::base("termlist");
            let rules = SimpleType::base("rules");
            let mut next = 0;
            let mut cons = |name: &str, args: Vec<&SimpleType>, res: &SimpleType| {
                next += 1;
                Symbol::new(
                    name,
                    TypeDecl::new(args.into_iter().cloned().collect(), res.clone()),
                    SymbolKind::Constructor,
                    next,
                )
            };
            InterpreterSignature {
                zero: cons("0", vec![&bits], &bits),
                one: cons("1", vec![&bits], &bits),
                eps: cons("eps", vec![], &bits),
                nil: cons("[]", vec![], &list),
                cons: cons("::", vec![&term, &list], &list),
                var: cons("Var", vec![&bits], &term),
                fun: cons("Fun", vec![&bits, &list], &term),
                bot: cons("bot", vec![], &term),
                empty: cons("empty", vec![], &rules),
                rule: cons("Rule", vec![&term, &term, &rules], &rules),
                sorts: ["bitstring", "term", "termlist", "rules"]
                    .into_iter()
                    .map(Arc::from)
                    .collect(),
            }
        })
    }

    /// All ten constructors in index order.
    pub fn symbols(&self) -> [&Symbol; 10] {
        [
            &self.zero, &self.one, &self.eps, &self.nil, &self.cons, &self.var, &self.fun, &self.bot,
            &self.empty, &self.rule,
        ]
    }

    pub fn bottom(&self) -> Term {
        Term::constant(self.bot.clone())
    }

    /// `t1 :: … :: tn :: []`.
    pub fn list(&self, items: Vec<Term>) -> Term {
        items
            .into_iter()
            .rev()
            .fold(Term::constant(self.nil.clone()), |tail, head| {
                Term::fun(self.cons.clone(), vec![head, tail])
            })
    }
}

/// Object symbols are coded by their signature index; variables by their
/// position in an explicit list.
#[derive(Clone)]
pub struct SymbolTable<'a> {
    trs: &'a Trs,
    vars: Vec<(Name, SimpleType)>,
}

impl<'a> SymbolTable<'a> {
    /// A table for ground terms.
    pub fn new(trs: &'a Trs) -> Self {
        SymbolTable { trs, vars: Vec::new() }
    }

    /// A table where `vars[i]` is coded as `i + 1`.
    pub fn with_variables(trs: &'a Trs, vars: Vec<(Name, SimpleType)>) -> Self {
        SymbolTable { trs, vars }
    }

    pub fn symbol_code(&self, f: &Symbol) -> Option<usize> {
        (self.trs.symbol_by_index(f.index()) == Some(f)).then(|| f.index())
    }

    pub fn variable_code(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|(n, _)| &**n == name).map(|i| i + 1)
    }

    pub fn symbol(&self, code: usize) -> Option<&Symbol> {
        self.trs.symbol_by_index(code)
    }

    pub fn variable(&self, code: usize) -> Option<&(Name, SimpleType)> {
        code.checked_sub(1).and_then(|i| self.vars.get(i))
    }
}

/// The bitstring code of `i ≥ 1`.
pub fn bit_encode(i: u64) -> Result<Term, EncodingError> {
    if i == 0 {
        return Err(EncodingError::ZeroIndex);
    }
    let sig = InterpreterSignature::get();
    let mut out = Term::constant(sig.eps.clone());
    let mut rest = i;
    while rest > 0 {
        let bit = if rest & 1 == 1 { &sig.one } else { &sig.zero };
        out = Term::fun(bit.clone(), vec![out]);
        rest >>= 1;
    }
    Ok(out)
}

/// Inverse of [`bit_encode`].
pub fn bit_decode(t: &Term) -> Result<u64, EncodingError> {
    let sig = InterpreterSignature::get();
    let malformed = |why: &str| EncodingError::Malformed(format!("{why}: {}", print_term(t)));
    let mut value: u64 = 0;
    let mut cur = t;
    let mut first = true;
    loop {
        let Some(f) = cur.head_symbol() else {
            return Err(malformed("not a bitstring"));
        };
        let bit = if *f == sig.eps {
            break;
        } else if *f == sig.one {
            1
        } else if *f == sig.zero {
            if first {
                return Err(malformed("leading zero"));
            }
            0
        } else {
            return Err(malformed("not a bitstring"));
        };
        value = value
            .checked_mul(2)
            .and_then(|v| v.checked_add(bit))
            .ok_or_else(|| malformed("bitstring too long"))?;
        first = false;
        cur = &cur.args()[0];
    }
    if first {
        return Err(malformed("empty bitstring"));
    }
    Ok(value)
}

/// `⟨s⟩`. Variables must be listed in `table`.
pub fn encode_term(s: &Term, table: &SymbolTable<'_>) -> Result<Term, EncodingError> {
    let sig = InterpreterSignature::get();
    match s.kind() {
        TermKind::Var { name, .. } => {
            let code = table
                .variable_code(name)
                .ok_or_else(|| EncodingError::UnknownVariable(name.to_string()))?;
            Ok(Term::fun(sig.var.clone(), vec![bit_encode(code as u64)?]))
        }
        TermKind::Fun(f, args) => {
            let code = table
                .symbol_code(f)
                .ok_or_else(|| EncodingError::ForeignSymbol(f.name().to_string()))?;
            let args = args
                .iter()
                .map(|a| encode_term(a, table))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Term::fun(
                sig.fun.clone(),
                vec![bit_encode(code as u64)?, sig.list(args)],
            ))
        }
        TermKind::Abs { .. } | TermKind::App(..) => Err(EncodingError::HigherOrder(print_term(s))),
    }
}

/// Result of decoding an interpreter answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decoded {
    Term(Term),
    /// The answer `bot`: the normal form exists but is not a data term.
    Bottom,
}

/// Inverse of [`encode_term`]; `bot` at the root decodes to
/// [`Decoded::Bottom`].
pub fn decode_term(t: &Term, table: &SymbolTable<'_>) -> Result<Decoded, EncodingError> {
    let sig = InterpreterSignature::get();
    if t.head_symbol() == Some(&sig.bot) {
        return Ok(Decoded::Bottom);
    }
    decode_inner(t, table).map(Decoded::Term)
}

fn decode_inner(t: &Term, table: &SymbolTable<'_>) -> Result<Term, EncodingError> {
    let sig = InterpreterSignature::get();
    let malformed = |why: String| EncodingError::Malformed(why);
    let head = t
        .head_symbol()
        .ok_or_else(|| malformed(format!("not a term encoding: {}", print_term(t))))?;
    if *head == sig.var {
        let code = bit_decode(&t.args()[0])?;
        let (name, ty) = usize::try_from(code)
            .ok()
            .and_then(|c| table.variable(c))
            .ok_or_else(|| malformed(format!("unknown variable index {code}")))?;
        return Ok(Term::var_named(name.clone(), ty.clone()));
    }
    if *head != sig.fun {
        return Err(malformed(format!("not a term encoding: {}", print_term(t))));
    }
    let code = bit_decode(&t.args()[0])?;
    let f = usize::try_from(code)
        .ok()
        .and_then(|c| table.symbol(c))
        .ok_or_else(|| malformed(format!("unknown symbol index {code}")))?;
    let items = decode_list(&t.args()[1])?;
    if items.len() != f.arity() {
        return Err(malformed(format!(
            "`{}` expects {} arguments, found {}",
            f.name(),
            f.arity(),
            items.len()
        )));
    }
    let mut args = Vec::with_capacity(items.len());
    for (item, expected) in items.iter().zip(&f.decl().arg_types) {
        let arg = decode_inner(item, table)?;
        match arg.type_of() {
            Ok(ty) if &ty == expected => args.push(arg),
            _ => {
                return Err(malformed(format!(
                    "argument of `{}` has the wrong sort: {}",
                    f.name(),
                    print_term(&arg)
                )))
            }
        }
    }
    Ok(Term::fun(f.clone(), args))
}

fn decode_list(t: &Term) -> Result<Vec<&Term>, EncodingError> {
    let sig = InterpreterSignature::get();
    let mut out = Vec::new();
    let mut cur = t;
    loop {
        match cur.head_symbol() {
            Some(f) if *f == sig.nil => return Ok(out),
            Some(f) if *f == sig.cons => {
                out.push(&cur.args()[0]);
                cur = &cur.args()[1];
            }
            _ => {
                return Err(EncodingError::Malformed(format!(
                    "not a list: {}",
                    print_term(cur)
                )))
            }
        }
    }
}

/// `Rule(⟨ℓ1⟩, ⟨r1⟩, Rule(…, empty))`, numbering each rule's variables by
/// first occurrence in its lhs.
pub fn encode_trs(trs: &Trs) -> Result<Term, EncodingError> {
    let sig = InterpreterSignature::get();
    let mut encoded = Vec::with_capacity(trs.rules().len());
    for rule in trs.rules() {
        if !rule.is_first_order() {
            return Err(EncodingError::HigherOrder(format!(
                "{} -> {}",
                print_term(rule.lhs()),
                print_term(rule.rhs())
            )));
        }
        let table = SymbolTable::with_variables(trs, rule.lhs_variables());
        encoded.push((encode_term(rule.lhs(), &table)?, encode_term(rule.rhs(), &table)?));
    }
    Ok(encoded
        .into_iter()
        .rev()
        .fold(Term::constant(sig.empty.clone()), |tail, (l, r)| {
            Term::fun(sig.rule.clone(), vec![l, r, tail])
        }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_term, parse_trs, SourceFile};

    fn trs(src: &str) -> Trs {
        parse_trs(&SourceFile::new("t.trs", src)).unwrap()
    }

    #[test]
    fn bit_examples() {
        assert_eq!(print_term(&bit_encode(1).unwrap()), "1(eps)");
        assert_eq!(print_term(&bit_encode(6).unwrap()), "1(1(0(eps)))");
        assert_eq!(print_term(&bit_encode(5).unwrap()), "1(0(1(eps)))");
        assert_eq!(bit_encode(0), Err(EncodingError::ZeroIndex));
        assert_eq!(bit_decode(&bit_encode(6).unwrap()), Ok(6));
        assert_eq!(bit_decode(&bit_encode(u64::MAX).unwrap()), Ok(u64::MAX));
        let sig = InterpreterSignature::get();
        let leading = Term::fun(sig.zero.clone(), vec![Term::constant(sig.eps.clone())]);
        assert!(bit_decode(&leading).is_err());
        assert!(bit_decode(&Term::constant(sig.eps.clone())).is_err());
    }

    #[test]
    fn term_examples() {
        let r = trs("sort o; cons c : o; fun f : [o] => o; rule f(x) -> x;");
        let rule = &r.rules()[0];
        let table = SymbolTable::with_variables(&r, vec![rule.lhs_variables()[0].clone(), (Name::from("y"), SimpleType::base("o"))]);
        let y = Term::var("y", SimpleType::base("o"));
        assert_eq!(print_term(&encode_term(&y, &table).unwrap()), "Var(1(0(eps)))");
        let c = parse_term("c", &r).unwrap();
        assert_eq!(print_term(&encode_term(&c, &table).unwrap()), "Fun(1(eps), [])");
        assert_eq!(
            print_term(&encode_trs(&r).unwrap()),
            "Rule(Fun(1(0(eps)), Var(1(eps)) :: []), Var(1(eps)), empty)"
        );
    }

    #[test]
    fn decode_inverts_encode() {
        let r = trs("sort o; cons c : o; cons d : [o * o] => o; fun f : [o] => o;");
        let table = SymbolTable::new(&r);
        let t = parse_term("f(d(c, d(c, c)))", &r).unwrap();
        let enc = encode_term(&t, &table).unwrap();
        assert_eq!(decode_term(&enc, &table), Ok(Decoded::Term(t)));
        let sig = InterpreterSignature::get();
        assert_eq!(decode_term(&sig.bottom(), &table), Ok(Decoded::Bottom));
        let var_eps = Term::fun(sig.var.clone(), vec![Term::constant(sig.eps.clone())]);
        assert!(decode_term(&var_eps, &table).is_err());
        let unknown = Term::fun(sig.fun.clone(), vec![bit_encode(9).unwrap(), sig.list(vec![])]);
        assert!(decode_term(&unknown, &table).is_err());
        let arity = Term::fun(sig.fun.clone(), vec![bit_encode(1).unwrap(), sig.list(vec![enc])]);
        assert!(decode_term(&arity, &table).is_err());
    }

    #[test]
    fn empty_and_nested_rule_lists() {
        let r = trs("sort o; cons c : o; fun f : [o] => o;");
        assert_eq!(print_term(&encode_trs(&r).unwrap()), "empty");
        let r = trs("sort o; cons c : o; fun f : [o] => o; rule f(c) -> c; rule f(x) -> f(x);");
        let enc = print_term(&encode_trs(&r).unwrap());
        assert!(enc.starts_with("Rule(") && enc.contains(", Rule(") && enc.ends_with(", empty))"));
    }

    #[test]
    fn encodings_of_data_are_data() {
        let r = trs("sort o; cons c : o; cons d : [o] => o;");
        let t = parse_term("d(d(c))", &r).unwrap();
        assert!(encode_term(&t, &SymbolTable::new(&r)).unwrap().is_data());
    }
}
