use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use relattice::symbolic::SymbolicKind;
use relattice::*;

const POOL: [&str; 4] = ["w", "x", "y", "z"];

fn header_strategy() -> impl Strategy<Value = Header> {
    prop::sample::subsequence(POOL.to_vec(), 0..=POOL.len()).prop_map(|names| Header::of(&names))
}

fn relation_over(header: Header) -> impl Strategy<Value = Relation> {
    let width = header.len();
    prop::collection::vec(prop::collection::vec(0i64..5, width), 0..7).prop_map(move |rows| {
        let attrs: Vec<Attr> = header.iter().cloned().collect();
        Relation::from_positional(&attrs, rows.into_iter().map(|r| r.into_iter().map(Value::Int).collect()))
            .unwrap()
    })
}

fn relation() -> impl Strategy<Value = Relation> {
    header_strategy().prop_flat_map(relation_over)
}

fn binary() -> impl Strategy<Value = Relation> {
    relation_over(Header::of(&["x", "y"]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn construction_is_canonical(r in relation()) {
        let rows: Vec<Tuple> = r.tuples().collect();
        let doubled = make_relation(r.header().clone(), rows.iter().chain(&rows).cloned()).unwrap();
        prop_assert_eq!(&doubled, &r);
        let reversed = make_relation(r.header().clone(), rows.into_iter().rev()).unwrap();
        prop_assert_eq!(reversed, r);
    }

    #[test]
    fn projection_composes(r in relation(), keep_a in any::<u8>(), keep_b in any::<u8>()) {
        prop_assert_eq!(kernel_project(&r, r.header()).unwrap(), r.clone());
        let a: Header = r.header().iter().enumerate().filter(|(i, _)| keep_a & (1 << i) != 0).map(|(_, x)| x.clone()).collect();
        let b: Header = a.iter().enumerate().filter(|(i, _)| keep_b & (1 << i) != 0).map(|(_, x)| x.clone()).collect();
        let twice = kernel_project(&kernel_project(&r, &a).unwrap(), &b).unwrap();
        prop_assert_eq!(twice, kernel_project(&r, &b).unwrap());
    }

    #[test]
    fn header_laws(a in relation(), b in relation()) {
        prop_assert_eq!(natural_join(&a, &b).header().clone(), a.header().union(b.header()));
        prop_assert_eq!(generalized_union(&a, &b).header().clone(), a.header().intersection(b.header()));
    }

    #[test]
    fn lattice_identities(a in relation(), b in relation(), c in relation()) {
        let ops = [a, b, c];
        for law in Law::LATTICE {
            let (lhs, rhs) = law.sides(&ops);
            prop_assert_eq!(lhs, rhs, "{}", law);
        }
    }

    #[test]
    fn both_orders_agree(a in relation(), b in relation()) {
        prop_assert_eq!(leq_by_join(&a, &b), leq_by_union(&a, &b));
    }

    #[test]
    fn dee_is_least_and_join_identity(a in relation()) {
        prop_assert!(leq_by_union(&dee(), &a));
        prop_assert!(leq_by_join(&dee(), &a));
        prop_assert_eq!(natural_join(&a, &dee()), a);
    }

    #[test]
    fn disjoint_join_is_a_product(a in relation_over(Header::of(&["w", "x"])), b in relation_over(Header::of(&["y"]))) {
        let j = natural_join(&a, &b);
        prop_assert_eq!(j.len(), a.len() * b.len());
        prop_assert_eq!(cartesian(&a, &b).unwrap(), j);
    }

    #[test]
    fn union_on_equal_headers_is_set_union(h in header_strategy(), seed in any::<u64>()) {
        let mut g = RandomRelations::new(seed);
        let (a, b) = (g.over(&h), g.over(&h));
        let u = generalized_union(&a, &b);
        let mut rows: BTreeSet<Vec<Value>> = a.rows().cloned().collect();
        rows.extend(b.rows().cloned());
        prop_assert_eq!(u.rows().cloned().collect::<BTreeSet<_>>(), rows);
    }

    #[test]
    fn projection_via_union_is_exact(r in relation(), keep in any::<u8>()) {
        let attrs: Header = r.header().iter().enumerate().filter(|(i, _)| keep & (1 << i) != 0).map(|(_, x)| x.clone()).collect();
        prop_assert_eq!(projection(&r, &attrs).unwrap(), kernel_project(&r, &attrs).unwrap());
    }
}

// ---------------------------------------------------------------------------
// symbolic relations

fn sym_attr() -> impl Strategy<Value = Attr> {
    prop::sample::select(vec!["w", "x", "y", "z", "p", "q"]).prop_map(attr)
}

fn relop() -> impl Strategy<Value = RelOp> {
    prop::sample::select(RelOp::ALL.to_vec())
}

fn symbolic() -> impl Strategy<Value = SymbolicRelation> {
    prop_oneof![
        (sym_attr(), sym_attr()).prop_filter_map("distinct", |(a, b)| eq_rel(a, b).ok()),
        (sym_attr(), sym_attr()).prop_filter_map("distinct", |(a, b)| neq_rel(a, b).ok()),
        (sym_attr(), relop(), sym_attr()).prop_filter_map("distinct", |(a, o, b)| cmp_rel(a, o, b).ok()),
        (sym_attr(), relop(), 0i64..6).prop_map(|(a, o, v)| const_cmp_rel(a, o, Value::Int(v))),
    ]
}

/// Materializes a symbolic relation over a finite domain.
fn materialize(sym: &SymbolicRelation, domain: &BTreeSet<Value>) -> Relation {
    let attrs: Vec<Attr> = sym.header().iter().cloned().collect();
    let mut rows = Vec::new();
    match (&sym.kind(), attrs.len()) {
        (SymbolicKind::ConstCmp(..), 1) => {
            for v in domain {
                if sym.satisfied_by(v, None) {
                    rows.push(vec![v.clone()]);
                }
            }
        }
        (kind, 2) => {
            // header order is sorted; the relation reads (first, second) as written
            let (first, second) = match kind {
                SymbolicKind::Eq(a, b) | SymbolicKind::Neq(a, b) | SymbolicKind::Cmp(a, _, b) => (a, b),
                SymbolicKind::ConstCmp(..) => unreachable!(),
            };
            for u in domain {
                for v in domain {
                    if sym.satisfied_by(u, Some(v)) {
                        let mut row = BTreeMap::new();
                        row.insert(first.clone(), u.clone());
                        row.insert(second.clone(), v.clone());
                        rows.push(attrs.iter().map(|a| row[a].clone()).collect());
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    Relation::from_positional(&attrs, rows).unwrap()
}


proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn symbolic_join_matches_materialized_join(r in relation(), syms in prop::collection::vec(symbolic(), 0..4)) {
        let Ok(result) = join_with_symbolic(&r, &syms) else {
            return Ok(());
        };
        let mut domain: BTreeSet<Value> = r.rows().flatten().cloned().collect();
        domain.extend(syms.iter().filter_map(|s| s.literal().cloned()));
        let oracle = syms
            .iter()
            .fold(r.clone(), |acc, s| natural_join(&acc, &materialize(s, &domain)));
        prop_assert_eq!(result, oracle);
    }

    #[test]
    fn symbolic_join_ignores_order(r in relation(), syms in prop::collection::vec(symbolic(), 0..4), rot in 0usize..4) {
        let mut permuted = syms.clone();
        permuted.reverse();
        let n = permuted.len().max(1);
        permuted.rotate_left(rot % n);
        prop_assert_eq!(join_with_symbolic(&r, &syms).ok(), join_with_symbolic(&r, &permuted).ok());
    }

    #[test]
    fn restrict_is_monotone(sym in symbolic(), base in prop::collection::btree_map(sym_attr(), 0i64..5, 0..3), extra in prop::collection::btree_map(sym_attr(), 0i64..5, 0..3)) {
        let probe: Tuple = base.iter().map(|(a, v)| (a.clone(), Value::Int(*v))).collect();
        let mut bigger = probe.clone();
        for (a, v) in extra {
            bigger.entry(a).or_insert(Value::Int(v));
        }
        match restrict(&sym, &probe) {
            RestrictResult::Pass => prop_assert_eq!(restrict(&sym, &bigger), RestrictResult::Pass),
            RestrictResult::Fail => prop_assert_eq!(restrict(&sym, &bigger), RestrictResult::Fail),
            RestrictResult::Extend(exts) => {
                for e in &exts {
                    prop_assert!(e.keys().all(|k| sym.header().contains(k) && !probe.contains_key(k)));
                }
            }
            RestrictResult::Infinite => {}
        }
    }

    #[test]
    fn selection_stays_inside(r in relation(), syms in prop::collection::vec(symbolic(), 0..3)) {
        let local: Vec<SymbolicRelation> = syms.into_iter().filter(|s| s.header().is_subset(r.header())).collect();
        let selected = select(&r, &local).unwrap();
        prop_assert!(selected.is_subset(&r));
    }
}

// ---------------------------------------------------------------------------
// derived operators

fn relabel(r: &Relation, pairs: &[(Attr, Attr)]) -> Relation {
    let map: BTreeMap<&Attr, &Attr> = pairs.iter().map(|(o, n)| (o, n)).collect();
    let header: Header = r.header().iter().map(|a| (*map.get(a).unwrap_or(&a)).clone()).collect();
    let rows = r.tuples().map(|t| {
        t.into_iter()
            .map(|(a, v)| ((*map.get(&a).unwrap_or(&&a)).clone(), v))
            .collect::<Tuple>()
    });
    make_relation(header, rows).unwrap()
}

fn rename_case() -> impl Strategy<Value = (Relation, Vec<(Attr, Attr)>)> {
    relation().prop_flat_map(|r| {
        let olds: Vec<Attr> = r.header().iter().cloned().collect();
        let n = olds.len();
        (
            Just(r),
            prop::sample::subsequence(olds, 0..=n),
            prop::sample::subsequence(vec!["a", "b", "c", "d"], 4),
        )
            .prop_map(|(r, olds, news)| {
                let pairs = olds.into_iter().zip(news.into_iter().map(attr)).collect();
                (r, pairs)
            })
    })
}

fn warshall(r: &Relation) -> BTreeSet<(i64, i64)> {
    let mut reach = [[false; 8]; 8];
    for row in r.rows() {
        reach[row[0].as_int().unwrap() as usize][row[1].as_int().unwrap() as usize] = true;
    }
    for k in 0..8 {
        for i in 0..8 {
            for j in 0..8 {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    for (i, row) in reach.iter().enumerate() {
        for (j, &hit) in row.iter().enumerate() {
            if hit {
                out.insert((i as i64, j as i64));
            }
        }
    }
    out
}

fn pairs_of(r: &Relation) -> BTreeSet<(i64, i64)> {
    r.rows().map(|row| (row[0].as_int().unwrap(), row[1].as_int().unwrap())).collect()
}

fn digraph() -> impl Strategy<Value = Relation> {
    prop::collection::vec((0i64..8, 0i64..8), 0..14).prop_map(|edges| {
        Relation::from_table(&["x", "y"], edges.into_iter().map(|(a, b)| [a, b])).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rename_matches_relabeling((r, pairs) in rename_case()) {
        let spec = RenameSpec::new(pairs.clone()).unwrap();
        let renamed = rename(&r, &spec).unwrap();
        prop_assert_eq!(&renamed, &relabel(&r, &pairs));
        prop_assert_eq!(rename(&renamed, &spec.inverse()).unwrap(), r);
    }

    #[test]
    fn closure_matches_warshall(g in digraph()) {
        let (x, y) = (attr("x"), attr("y"));
        let tc = transitive_closure(&g, &x, &y).unwrap();
        prop_assert_eq!(pairs_of(&tc), warshall(&g));
        prop_assert_eq!(transitive_closure(&tc, &x, &y).unwrap(), tc);
    }

    #[test]
    fn literal_difference_keeps_rows_with_a_differing_partner(a in binary(), b in binary()) {
        let literal = difference_literal(&a, &b).unwrap();
        let oracle: BTreeSet<Vec<Value>> = a
            .rows()
            .filter(|t| b.rows().any(|s| s != *t))
            .cloned()
            .collect();
        prop_assert_eq!(literal.rows().cloned().collect::<BTreeSet<_>>(), oracle);

        // agrees with true difference exactly when b is non-empty (or a is
        // empty) and every shared row is b's only row
        let exact = difference(&a, &b).unwrap();
        let shared_ok = a.rows().filter(|t| b.rows().any(|s| s == *t)).all(|_| b.len() == 1);
        let agrees = (a.is_empty() || !b.is_empty()) && shared_ok;
        prop_assert_eq!(literal == exact, agrees);
    }

    #[test]
    fn composition_matches_pairs(r in binary(), s in binary()) {
        let (x, y) = (attr("x"), attr("y"));
        let composed = compose(&r, &s, &x, &y).unwrap();
        let mut oracle = BTreeSet::new();
        for (a, b) in pairs_of(&r) {
            for (c, d) in pairs_of(&s) {
                if b == c {
                    oracle.insert((a, d));
                }
            }
        }
        prop_assert_eq!(pairs_of(&composed), oracle);
    }

    #[test]
    fn tensor_matches_pair_oracle(a in binary(), b in binary()) {
        let product = tensor_product(&a, &b).unwrap();
        let mut oracle = BTreeSet::new();
        for (p, q) in pairs_of(&a) {
            oracle.insert(vec![p, p, q, q]);
        }
        for (p, q) in pairs_of(&b) {
            oracle.insert(vec![p, q, p, q]);
        }
        let got: BTreeSet<Vec<i64>> = product.rows().map(|r| r.iter().map(|v| v.as_int().unwrap()).collect()).collect();
        prop_assert_eq!(got, oracle);
    }

    #[test]
    fn cartesian_cardinality(a in relation_over(Header::of(&["x"])), b in relation_over(Header::of(&["y", "z"]))) {
        prop_assert_eq!(cartesian(&a, &b).unwrap().len(), a.len() * b.len());
    }
}

/// Every relation over `header` with values drawn from {0, 1}.
fn all_relations(header: &[&str]) -> Vec<Relation> {
    let tuples: Vec<Vec<i64>> = (0..1usize << header.len())
        .map(|bits| (0..header.len()).map(|i| ((bits >> i) & 1) as i64).collect())
        .collect();
    (0..1usize << tuples.len())
        .map(|mask| {
            let rows = tuples.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, t)| t.clone());
            Relation::from_table(header, rows).unwrap()
        })
        .collect()
}

#[test]
fn difference_is_exhaustively_correct_on_small_domains() {
    for header in [&[][..], &["x"][..], &["x", "y"][..]] {
        let all = all_relations(header);
        for a in &all {
            for b in &all {
                let d = difference(a, b).unwrap();
                let oracle: Vec<Tuple> = a.tuples().filter(|t| !b.contains(t)).collect();
                assert_eq!(d, make_relation(a.header().clone(), oracle).unwrap());
            }
        }
    }
}
