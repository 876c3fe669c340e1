//! Intensional relations such as `EQ(x, y)`, `NEQ(x, y)` or `x > 1`.
//!
//! These are usually infinite, so they never exist as [`Relation`] values.
//! They can only be joined onto a finite relation, where each row is probed
//! with [`restrict`] until every symbolic relation is decided.
//!
//! Ordering comparisons range over the integers; text and boolean values
//! only support `=` and `!=`, and any other comparison involving them fails.
//!
//! A symbolic relation may mention attributes the finite relation lacks.
//! Joining then extends the header, as any natural join would.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::relation::{tuple_to_string, Header, Relation, Tuple};
use crate::value::{Attr, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelOp {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
}

impl RelOp {
    pub const ALL: [RelOp; 6] = [RelOp::Lt, RelOp::Le, RelOp::Gt, RelOp::Ge, RelOp::Eq, RelOp::Ne];

    pub fn symbol(self) -> &'static str {
        match self {
            RelOp::Lt => "<",
            RelOp::Le => "<=",
            RelOp::Gt => ">",
            RelOp::Ge => ">=",
            RelOp::Eq => "=",
            RelOp::Ne => "!=",
        }
    }

    /// `lhs op rhs`. Ordering operators are false unless both sides are
    /// integers.
    pub fn apply(self, lhs: &Value, rhs: &Value) -> bool {
        match self {
            RelOp::Eq => lhs == rhs,
            RelOp::Ne => lhs != rhs,
            _ => match (lhs.as_int(), rhs.as_int()) {
                (Some(l), Some(r)) => match self {
                    RelOp::Lt => l < r,
                    RelOp::Le => l <= r,
                    RelOp::Gt => l > r,
                    RelOp::Ge => l >= r,
                    RelOp::Eq | RelOp::Ne => unreachable!(),
                },
                _ => false,
            },
        }
    }
}

impl fmt::Display for RelOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SymbolicKind {
    Eq(Attr, Attr),
    Neq(Attr, Attr),
    Cmp(Attr, RelOp, Attr),
    ConstCmp(Attr, RelOp, Value),
}

/// A possibly infinite relation over one or two attributes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolicRelation {
    kind: SymbolicKind,
}

/// How a symbolic relation constrains a partial binding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RestrictResult {
    /// The unbound attributes have finitely many satisfying values; each
    /// extension binds exactly those attributes.
    Extend(Vec<Tuple>),
    /// Fully bound and satisfied.
    Pass,
    /// No extension satisfies the relation.
    Fail,
    /// Infinitely many extensions satisfy the relation.
    Infinite,
}

fn distinct(a: &Attr, b: &Attr) -> Result<()> {
    if a == b {
        Err(Error::SameAttribute(a.clone()))
    } else {
        Ok(())
    }
}

/// `{(a, b) | a = b}`
pub fn eq_rel(a: Attr, b: Attr) -> Result<SymbolicRelation> {
    distinct(&a, &b)?;
    Ok(SymbolicRelation {
        kind: SymbolicKind::Eq(a, b),
    })
}

/// `{(a, b) | a ≠ b}`
pub fn neq_rel(a: Attr, b: Attr) -> Result<SymbolicRelation> {
    distinct(&a, &b)?;
    Ok(SymbolicRelation {
        kind: SymbolicKind::Neq(a, b),
    })
}

/// `{(a, b) | a op b}`
pub fn cmp_rel(a: Attr, op: RelOp, b: Attr) -> Result<SymbolicRelation> {
    distinct(&a, &b)?;
    Ok(SymbolicRelation {
        kind: SymbolicKind::Cmp(a, op, b),
    })
}

/// `{(a) | a op v}`
pub fn const_cmp_rel(a: Attr, op: RelOp, v: Value) -> SymbolicRelation {
    SymbolicRelation {
        kind: SymbolicKind::ConstCmp(a, op, v),
    }
}

impl SymbolicRelation {
    pub fn kind(&self) -> &SymbolicKind {
        &self.kind
    }

    pub fn header(&self) -> Header {
        match &self.kind {
            SymbolicKind::Eq(a, b) | SymbolicKind::Neq(a, b) | SymbolicKind::Cmp(a, _, b) => {
                [a.clone(), b.clone()].into_iter().collect()
            }
            SymbolicKind::ConstCmp(a, _, _) => [a.clone()].into_iter().collect(),
        }
    }

    /// The literal mentioned by a constant comparison.
    pub fn literal(&self) -> Option<&Value> {
        match &self.kind {
            SymbolicKind::ConstCmp(_, _, v) => Some(v),
            _ => None,
        }
    }

    /// Membership of a fully bound pair or single value.
    pub fn satisfied_by(&self, first: &Value, second: Option<&Value>) -> bool {
        match (&self.kind, second) {
            (SymbolicKind::Eq(..), Some(s)) => first == s,
            (SymbolicKind::Neq(..), Some(s)) => first != s,
            (SymbolicKind::Cmp(_, op, _), Some(s)) => op.apply(first, s),
            (SymbolicKind::ConstCmp(_, op, v), None) => op.apply(first, v),
            _ => panic!("arity mismatch for {self}"),
        }
    }
}

impl fmt::Display for SymbolicRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            SymbolicKind::Eq(a, b) => write!(f, "EQ({a}, {b})"),
            SymbolicKind::Neq(a, b) => write!(f, "NEQ({a}, {b})"),
            SymbolicKind::Cmp(a, op, b) => write!(f, "{a} {op} {b}"),
            SymbolicKind::ConstCmp(a, op, v) => write!(f, "{a} {op} {v}"),
        }
    }
}

/// Probes `sym` with a partial binding. Attributes of the probe outside the
/// symbolic header are ignored.
pub fn restrict(sym: &SymbolicRelation, probe: &Tuple) -> RestrictResult {
    let pass_or_fail = |ok: bool| {
        if ok {
            RestrictResult::Pass
        } else {
            RestrictResult::Fail
        }
    };
    let extend = |a: &Attr, v: &Value| RestrictResult::Extend(vec![Tuple::from([(a.clone(), v.clone())])]);
    match &sym.kind {
        SymbolicKind::ConstCmp(a, op, v) => match probe.get(a) {
            Some(bound) => pass_or_fail(op.apply(bound, v)),
            None if *op == RelOp::Eq => extend(a, v),
            None => RestrictResult::Infinite,
        },
        SymbolicKind::Eq(a, b) | SymbolicKind::Neq(a, b) | SymbolicKind::Cmp(a, _, b) => {
            let op = match &sym.kind {
                SymbolicKind::Eq(..) => RelOp::Eq,
                SymbolicKind::Neq(..) => RelOp::Ne,
                SymbolicKind::Cmp(_, op, _) => *op,
                SymbolicKind::ConstCmp(..) => unreachable!(),
            };
            match (probe.get(a), probe.get(b)) {
                (Some(l), Some(r)) => pass_or_fail(op.apply(l, r)),
                (Some(l), None) if op == RelOp::Eq => extend(b, l),
                (None, Some(r)) if op == RelOp::Eq => extend(a, r),
                _ => RestrictResult::Infinite,
            }
        }
    }
}

/// Joins a finite relation with symbolic relations.
///
/// Every row is extended to a fixpoint: decided symbolic relations are
/// dropped (or drop the row on failure) and extensions grow the binding,
/// which may in turn decide relations that were infinite before. A row that
/// leaves some relation infinite makes the whole join unmaterializable.
pub fn join_with_symbolic(a: &Relation, syms: &[SymbolicRelation]) -> Result<Relation> {
    let header = syms
        .iter()
        .fold(a.header().clone(), |h, s| h.union(&s.header()));
    let mut body = BTreeSet::new();
    for tuple in a.tuples() {
        let pending: Vec<&SymbolicRelation> = syms.iter().collect();
        for solved in solve(tuple, pending)? {
            body.insert(solved.into_values().collect::<Vec<_>>());
        }
    }
    Ok(Relation::from_parts(header, body))
}

fn solve(binding: Tuple, pending: Vec<&SymbolicRelation>) -> Result<Vec<Tuple>> {
    if pending.is_empty() {
        return Ok(vec![binding]);
    }
    for (i, sym) in pending.iter().enumerate() {
        let rest = || {
            let mut rest = pending.clone();
            rest.remove(i);
            rest
        };
        match restrict(sym, &binding) {
            RestrictResult::Infinite => continue,
            RestrictResult::Fail => return Ok(Vec::new()),
            RestrictResult::Pass => return solve(binding, rest()),
            RestrictResult::Extend(extensions) => {
                let mut out = Vec::new();
                for ext in extensions {
                    let mut grown = binding.clone();
                    grown.extend(ext);
                    out.extend(solve(grown, rest())?);
                }
                return Ok(out);
            }
        }
    }
    let stuck = pending[0];
    let unbound: Header = stuck
        .header()
        .iter()
        .filter(|a| !binding.contains_key(*a))
        .cloned()
        .collect();
    Err(Error::NotMaterializable {
        relation: format!("{stuck} at {}", tuple_to_string(&binding)),
        unbound: unbound.to_string(),
    })
}
