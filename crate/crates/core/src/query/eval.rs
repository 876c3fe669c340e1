use std::collections::BTreeMap;

use thiserror::Error;

use super::ast::{Expr, Operand, Pred, KEYWORDS};
use crate::derived;
use crate::error::Error;
use crate::kernel::{generalized_union, natural_join};
use crate::relation::{dee, dum, empty, Relation};
use crate::symbolic::{cmp_rel, const_cmp_rel, eq_rel, neq_rel, RelOp, SymbolicRelation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalErrorKind {
    #[error("unbound relation name {0}")]
    UnboundName(String),
    #[error("{0:?} is not a valid relation name")]
    InvalidName(String),
    #[error(transparent)]
    Op(#[from] Error),
}

/// An evaluation failure together with the sub-expression that raised it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("in `{context}`: {kind}")]
pub struct EvalError {
    pub context: String,
    pub kind: EvalErrorKind,
}

/// Named relations visible to queries.
#[derive(Debug, Clone, Default)]
pub struct Env {
    relations: BTreeMap<String, Relation>,
}

/// True for identifiers that can name a relation in a query.
pub fn is_relation_name(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !KEYWORDS.contains(&name)
}

impl Env {
    pub fn new() -> Self {
        Self::default()
    }

    /// An environment holding the fixtures `A`, `B` and `C`.
    pub fn with_fixtures() -> Self {
        let mut env = Env::new();
        for (name, rel) in crate::fixtures::named() {
            env.relations.insert(name.to_string(), rel);
        }
        env
    }

    pub fn insert(&mut self, name: &str, rel: Relation) -> Result<(), EvalError> {
        if !is_relation_name(name) {
            return Err(EvalError {
                context: name.to_string(),
                kind: EvalErrorKind::InvalidName(name.to_string()),
            });
        }
        self.relations.insert(name.to_string(), rel);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Relation> {
        self.relations.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> + '_ {
        self.relations.keys().map(String::as_str)
    }
}

fn symbolic(p: &Pred) -> Result<SymbolicRelation, Error> {
    match &p.rhs {
        Operand::Attr(b) => match p.op {
            RelOp::Eq => eq_rel(p.lhs.clone(), b.clone()),
            RelOp::Ne => neq_rel(p.lhs.clone(), b.clone()),
            op => cmp_rel(p.lhs.clone(), op, b.clone()),
        },
        Operand::Value(v) => Ok(const_cmp_rel(p.lhs.clone(), p.op, v.clone())),
    }
}

/// Evaluates `e` against `env`.
pub fn eval(e: &Expr, env: &Env) -> Result<Relation, EvalError> {
    let fail = |err: Error| EvalError {
        context: e.to_string(),
        kind: EvalErrorKind::Op(err),
    };
    Ok(match e {
        Expr::Name(n) => env.get(n).cloned().ok_or_else(|| EvalError {
            context: e.to_string(),
            kind: EvalErrorKind::UnboundName(n.clone()),
        })?,
        Expr::Literal(r) => r.clone(),
        Expr::Join(l, r) => natural_join(&eval(l, env)?, &eval(r, env)?),
        Expr::Union(l, r) => generalized_union(&eval(l, env)?, &eval(r, env)?),
        Expr::Project(inner, attrs) => derived::projection(&eval(inner, env)?, attrs).map_err(fail)?,
        Expr::Select(inner, preds) => {
            let syms = preds.iter().map(symbolic).collect::<Result<Vec<_>, _>>().map_err(fail)?;
            derived::select(&eval(inner, env)?, &syms).map_err(fail)?
        }
        Expr::Rename(inner, spec) => derived::rename(&eval(inner, env)?, spec).map_err(fail)?,
        Expr::Minus(l, r) => derived::difference(&eval(l, env)?, &eval(r, env)?).map_err(fail)?,
        Expr::MinusLiteral(l, r) => {
            derived::difference_literal(&eval(l, env)?, &eval(r, env)?).map_err(fail)?
        }
        Expr::Tc(inner, x, y) => derived::transitive_closure(&eval(inner, env)?, x, y).map_err(fail)?,
        Expr::Tensor(l, r) => derived::tensor_product(&eval(l, env)?, &eval(r, env)?).map_err(fail)?,
        Expr::Dee => dee(),
        Expr::Dum => dum(),
        Expr::Empty(attrs) => empty(attrs.clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::query::parse;

    fn run(q: &str) -> Result<Relation, EvalError> {
        eval(&parse(q).unwrap(), &Env::with_fixtures())
    }

    #[test]
    fn fixture_queries() {
        assert_eq!(
            run("A & B").unwrap(),
            Relation::from_table(&["x", "y", "z"], [[1, 2, 4]]).unwrap()
        );
        assert_eq!(
            run("A | B").unwrap(),
            Relation::from_table(&["y"], [[1], [2], [3]]).unwrap()
        );
        assert!(run("select[x > 1](A)").unwrap().is_empty());
    }

    #[test]
    fn errors_name_the_failing_subexpression() {
        let err = run("A & Q").unwrap_err();
        assert_eq!(err.context, "Q");
        assert_eq!(err.kind, EvalErrorKind::UnboundName("Q".into()));
        let err = run("A | project[q](B)").unwrap_err();
        assert_eq!(err.context, "project[q](B)");
        let err = run("select[x != q](A)").unwrap_err();
        assert!(matches!(err.kind, EvalErrorKind::Op(Error::NotMaterializable { .. })));
        let err = run("select[x = x](A)").unwrap_err();
        assert!(matches!(err.kind, EvalErrorKind::Op(Error::SameAttribute(_))));
    }

    #[test]
    fn relation_names() {
        assert!(is_relation_name("Edges_2"));
        assert!(!is_relation_name("dee"));
        assert!(!is_relation_name("2x"));
        assert!(Env::new().insert("rel", crate::dee()).is_err());
    }
}
