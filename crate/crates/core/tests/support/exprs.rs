//! Generators for query ASTs shared by the property and acceptance suites.

use proptest::prelude::*;
use relattice::query::{Expr, Operand, Pred};
use relattice::*;

pub fn attr_name() -> impl Strategy<Value = Attr> {
    prop::sample::select(vec!["x", "y", "z", "w"]).prop_map(attr)
}

pub fn header() -> impl Strategy<Value = Header> {
    prop::sample::subsequence(vec!["x", "y", "z", "w"], 0..=3).prop_map(|n| Header::of(&n))
}

pub fn value() -> impl Strategy<Value = Value> {
    prop_oneof![
        (-5i64..20).prop_map(Value::Int),
        any::<bool>().prop_map(Value::Bool),
        "[a-z\"\\\\ ,|]{0,5}".prop_map(Value::Text),
    ]
}

pub fn literal() -> impl Strategy<Value = Relation> {
    header().prop_flat_map(|h| {
        let width = h.len();
        prop::collection::vec(prop::collection::vec(value(), width), 0..4).prop_map(move |rows| {
            let attrs: Vec<Attr> = h.iter().cloned().collect();
            Relation::from_positional(&attrs, rows).unwrap()
        })
    })
}

pub fn pred() -> impl Strategy<Value = Pred> {
    let op = prop::sample::select(RelOp::ALL.to_vec());
    (
        attr_name(),
        op,
        prop_oneof![attr_name().prop_map(Operand::Attr), value().prop_map(Operand::Value)],
    )
        .prop_map(|(lhs, op, rhs)| Pred { lhs, op, rhs })
}

pub fn rename_spec() -> impl Strategy<Value = RenameSpec> {
    (
        prop::sample::subsequence(vec!["x", "y", "z", "w"], 1..=2),
        prop::sample::subsequence(vec!["a", "b", "c"], 2),
    )
        .prop_map(|(olds, news)| RenameSpec::new(olds.into_iter().map(attr).zip(news.into_iter().map(attr)).collect()).unwrap())
}

pub fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["A", "B", "C", "Edges_2"]).prop_map(Expr::name),
        Just(Expr::Dee),
        Just(Expr::Dum),
        header().prop_map(Expr::Empty),
        literal().prop_map(Expr::Literal),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        let b = |e: Expr| Box::new(e);
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::join(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::union(l, r)),
            (inner.clone(), header()).prop_map(move |(e, h)| Expr::Project(b(e), h)),
            (inner.clone(), prop::collection::vec(pred(), 1..3)).prop_map(move |(e, p)| Expr::Select(b(e), p)),
            (inner.clone(), rename_spec()).prop_map(move |(e, s)| Expr::Rename(b(e), s)),
            (inner.clone(), inner.clone()).prop_map(move |(l, r)| Expr::Minus(b(l), b(r))),
            (inner.clone(), inner.clone()).prop_map(move |(l, r)| Expr::MinusLiteral(b(l), b(r))),
            (inner.clone(), attr_name(), attr_name()).prop_map(move |(e, x, y)| Expr::Tc(b(e), x, y)),
            (inner.clone(), inner).prop_map(move |(l, r)| Expr::Tensor(b(l), b(r))),
        ]
    })
}
