//! Higher-order cons-free constructor term rewriting.
//!
//! The crate provides a weak-innermost rewriting engine, the cons-freeness
//! and B-safety analyses, an encoding of first-order systems as terms, and a
//! second-order cons-free rewriting system that interprets encoded
//! first-order systems. A differential harness checks the interpreter
//! against direct evaluation.

pub mod analysis;
pub mod encoding;
pub mod engine;
pub mod harness;
pub mod interpreter;
pub mod syntax;
pub mod term;
pub mod trs;
pub mod types;

pub use term::{alpha_eq, apply_subst, is_data_term, subterms, Name, Position, Subst, Symbol, SymbolKind, Term, TermKind};
pub use trs::{Rule, Trs};
pub use types::{type_order, SimpleType, TypeDecl};
