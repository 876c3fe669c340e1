use std::fmt;

use crate::derived::RenameSpec;
use crate::relation::{Header, Relation};
use crate::symbolic::RelOp;
use crate::value::{Attr, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Name(String),
    Literal(Relation),
    Join(Box<Expr>, Box<Expr>),
    Union(Box<Expr>, Box<Expr>),
    Project(Box<Expr>, Header),
    Select(Box<Expr>, Vec<Pred>),
    Rename(Box<Expr>, RenameSpec),
    Minus(Box<Expr>, Box<Expr>),
    MinusLiteral(Box<Expr>, Box<Expr>),
    Tc(Box<Expr>, Attr, Attr),
    Tensor(Box<Expr>, Box<Expr>),
    Dee,
    Dum,
    Empty(Header),
}

/// A selection atom: `attr op attr` or `attr op literal`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pred {
    pub lhs: Attr,
    pub op: RelOp,
    pub rhs: Operand,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Operand {
    Attr(Attr),
    Value(Value),
}

/// Words that start a builtin and so cannot name a relation.
pub const KEYWORDS: [&str; 11] = [
    "project",
    "select",
    "rename",
    "minus",
    "minus_literal",
    "tc",
    "tensor",
    "dee",
    "dum",
    "empty",
    "rel",
];

impl Expr {
    pub fn join(l: Expr, r: Expr) -> Expr {
        Expr::Join(Box::new(l), Box::new(r))
    }

    pub fn union(l: Expr, r: Expr) -> Expr {
        Expr::Union(Box::new(l), Box::new(r))
    }

    pub fn name(n: &str) -> Expr {
        Expr::Name(n.to_string())
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Union(..) => 1,
            Expr::Join(..) => 2,
            _ => 3,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.fmt_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Expr::Union(l, r) => {
                l.fmt_at(f, 1)?;
                f.write_str(" | ")?;
                r.fmt_at(f, 2)
            }
            Expr::Join(l, r) => {
                l.fmt_at(f, 2)?;
                f.write_str(" & ")?;
                r.fmt_at(f, 3)
            }
            Expr::Name(n) => f.write_str(n),
            Expr::Literal(rel) => {
                f.write_str("rel")?;
                write_attrs(f, rel.header().iter())?;
                f.write_str("{")?;
                for (i, row) in rel.rows().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    f.write_str("(")?;
                    for (k, v) in row.iter().enumerate() {
                        if k > 0 {
                            f.write_str(", ")?;
                        }
                        write_value(f, v)?;
                    }
                    f.write_str(")")?;
                }
                f.write_str("}")
            }
            Expr::Project(e, attrs) => {
                f.write_str("project")?;
                write_attrs(f, attrs.iter())?;
                write!(f, "({e})")
            }
            Expr::Select(e, preds) => {
                f.write_str("select[")?;
                for (i, p) in preds.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, "]({e})")
            }
            Expr::Rename(e, spec) => {
                f.write_str("rename[")?;
                for (i, (old, new)) in spec.pairs().iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{old} -> {new}")?;
                }
                write!(f, "]({e})")
            }
            Expr::Minus(l, r) => write!(f, "minus({l}, {r})"),
            Expr::MinusLiteral(l, r) => write!(f, "minus_literal({l}, {r})"),
            Expr::Tc(e, x, y) => write!(f, "tc[{x}, {y}]({e})"),
            Expr::Tensor(l, r) => write!(f, "tensor({l}, {r})"),
            Expr::Dee => f.write_str("dee"),
            Expr::Dum => f.write_str("dum"),
            Expr::Empty(attrs) => {
                f.write_str("empty")?;
                write_attrs(f, attrs.iter())
            }
        }
    }
}

fn write_attrs<'a>(f: &mut fmt::Formatter<'_>, attrs: impl Iterator<Item = &'a Attr>) -> fmt::Result {
    f.write_str("[")?;
    for (i, a) in attrs.enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str("]")
}

/// Query-syntax literal: integers and booleans bare, text always quoted
/// with backslash escapes.
pub(crate) fn write_value(f: &mut impl fmt::Write, v: &Value) -> fmt::Result {
    match v {
        Value::Int(i) => write!(f, "{i}"),
        Value::Bool(b) => write!(f, "{b}"),
        Value::Text(t) => {
            f.write_char('"')?;
            for c in t.chars() {
                match c {
                    '"' => f.write_str("\\\"")?,
                    '\\' => f.write_str("\\\\")?,
                    '\n' => f.write_str("\\n")?,
                    c => f.write_char(c)?,
                }
            }
            f.write_char('"')
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

impl fmt::Display for Pred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} ", self.lhs, self.op)?;
        match &self.rhs {
            Operand::Attr(a) => write!(f, "{a}"),
            Operand::Value(v) => write_value(f, v),
        }
    }
}
