//! Simple types, symbol declarations and type order.

use std::fmt;
use std::sync::Arc;

/// Name of a base sort.
pub type Sort = Arc<str>;

/// A simple type: either a base sort or an arrow `σ ⇒ τ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum SimpleType {
    Base(Sort),
    Arrow(Arc<SimpleType>, Arc<SimpleType>),
}

impl SimpleType {
    pub fn base(name: &str) -> Self {
        SimpleType::Base(Arc::from(name))
    }

    pub fn arrow(domain: SimpleType, codomain: SimpleType) -> Self {
        SimpleType::Arrow(Arc::new(domain), Arc::new(codomain))
    }

    pub fn is_base(&self) -> bool {
        matches!(self, SimpleType::Base(_))
    }

    /// Order 0 for base types, `max(order(σ) + 1, order(τ))` for `σ ⇒ τ`.
    pub fn order(&self) -> usize {
        match self {
            SimpleType::Base(_) => 0,
            SimpleType::Arrow(dom, cod) => (dom.order() + 1).max(cod.order()),
        }
    }

    /// Splits off the domain and codomain of an arrow.
    pub fn as_arrow(&self) -> Option<(&SimpleType, &SimpleType)> {
        match self {
            SimpleType::Arrow(dom, cod) => Some((dom, cod)),
            SimpleType::Base(_) => None,
        }
    }

    /// Every sort name mentioned in the type, left to right.
    pub fn sorts(&self) -> Vec<&Sort> {
        let mut out = Vec::new();
        self.collect_sorts(&mut out);
        out
    }

    fn collect_sorts<'a>(&'a self, out: &mut Vec<&'a Sort>) {
        match self {
            SimpleType::Base(s) => out.push(s),
            SimpleType::Arrow(dom, cod) => {
                dom.collect_sorts(out);
                cod.collect_sorts(out);
            }
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleType::Base(s) => f.write_str(s),
            SimpleType::Arrow(dom, cod) => {
                if dom.is_base() {
                    write!(f, "{dom} => {cod}")
                } else {
                    write!(f, "({dom}) => {cod}")
                }
            }
        }
    }
}

impl fmt::Debug for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Type order of a simple type.
pub fn type_order(ty: &SimpleType) -> usize {
    ty.order()
}

/// A declaration `[σ1 × … × σn] ⇒ τ`. The result type may itself be an arrow.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TypeDecl {
    pub arg_types: Vec<SimpleType>,
    pub result_type: SimpleType,
}

impl TypeDecl {
    pub fn new(arg_types: Vec<SimpleType>, result_type: SimpleType) -> Self {
        TypeDecl {
            arg_types,
            result_type,
        }
    }

    pub fn constant(result_type: SimpleType) -> Self {
        TypeDecl::new(Vec::new(), result_type)
    }

    pub fn arity(&self) -> usize {
        self.arg_types.len()
    }

    /// The curried type `σ1 ⇒ … ⇒ σn ⇒ τ`.
    pub fn curried(&self) -> SimpleType {
        self.arg_types
            .iter()
            .rev()
            .fold(self.result_type.clone(), |acc, arg| {
                SimpleType::arrow(arg.clone(), acc)
            })
    }

    pub fn order(&self) -> usize {
        self.curried().order()
    }
}

impl fmt::Display for TypeDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arg_types.is_empty() {
            return write!(f, "{}", self.result_type);
        }
        f.write_str("[")?;
        for (i, ty) in self.arg_types.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "{ty}")?;
        }
        write!(f, "] => {}", self.result_type)
    }
}

impl fmt::Debug for TypeDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
