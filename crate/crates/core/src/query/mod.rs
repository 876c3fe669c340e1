//! A small textual algebra over named relations.
//!
//! `&` is natural join and binds tighter than `|`, generalized union; both
//! associate to the left. Printing an [`Expr`] yields text that parses back
//! to the same tree.

mod ast;
mod eval;
mod parser;

pub use ast::{Expr, Operand, Pred, KEYWORDS};
pub use eval::{eval, is_relation_name, Env, EvalError, EvalErrorKind};
pub use parser::{parse, ParseError};
