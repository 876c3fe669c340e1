use std::collections::BTreeSet;

use proptest::prelude::*;
use relattice::fca::*;
use relattice::fixtures::FAMOUS_ANIMALS;

const OBJECTS: [&str; 6] = ["o1", "o2", "o3", "o4", "o5", "o6"];
const ATTRIBUTES: [&str; 5] = ["a", "b", "c", "d", "e"];

fn names(s: &[&str]) -> Vec<String> {
    s.iter().map(|x| x.to_string()).collect()
}

fn context() -> impl Strategy<Value = FormalContext> {
    (1usize..=6, 1usize..=5).prop_flat_map(|(n, m)| {
        prop::collection::vec(any::<bool>(), n * m).prop_map(move |bits| {
            let pairs: Vec<(&str, &str)> = (0..n)
                .flat_map(|o| (0..m).map(move |a| (o, a)))
                .filter(|&(o, a)| bits[o * m + a])
                .map(|(o, a)| (OBJECTS[o], ATTRIBUTES[a]))
                .collect();
            FormalContext::new(names(&OBJECTS[..n]), names(&ATTRIBUTES[..m]), pairs).unwrap()
        })
    })
}

fn refs(s: &BTreeSet<String>) -> Vec<&str> {
    s.iter().map(String::as_str).collect()
}

fn subsets<'a>(items: &[&'a str]) -> Vec<Vec<&'a str>> {
    (0..1usize << items.len())
        .map(|mask| items.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, s)| *s).collect())
        .collect()
}

/// Concepts found by closing every object subset, independent of the
/// attribute-subset enumeration.
fn concepts_by_objects(ctx: &FormalContext) -> BTreeSet<Concept> {
    let objects: Vec<&str> = ctx.objects().iter().map(String::as_str).collect();
    subsets(&objects)
        .into_iter()
        .map(|g| {
            let intent = derive_intent(ctx, &g).unwrap();
            let extent = derive_extent(ctx, &refs(&intent)).unwrap();
            Concept { extent, intent }
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn derivations_form_a_galois_connection(ctx in context(), gm in any::<u32>(), mm in any::<u32>()) {
        let objs: Vec<&str> = ctx.objects().iter().enumerate().filter(|(i, _)| gm & (1 << i) != 0).map(|(_, s)| s.as_str()).collect();
        let attrs: Vec<&str> = ctx.attributes().iter().enumerate().filter(|(i, _)| mm & (1 << i) != 0).map(|(_, s)| s.as_str()).collect();
        let g: BTreeSet<String> = objs.iter().map(|s| s.to_string()).collect();
        let m: BTreeSet<String> = attrs.iter().map(|s| s.to_string()).collect();
        let left = m.is_subset(&derive_intent(&ctx, &objs).unwrap());
        let right = g.is_subset(&derive_extent(&ctx, &attrs).unwrap());
        prop_assert_eq!(left, right);

        // closure operators: extensive and idempotent
        let gp = derive_intent(&ctx, &objs).unwrap();
        let gpp = derive_extent(&ctx, &refs(&gp)).unwrap();
        prop_assert!(g.is_subset(&gpp));
        let gppp = derive_intent(&ctx, &refs(&gpp)).unwrap();
        prop_assert_eq!(&gppp, &gp);
    }

    #[test]
    fn concepts_are_closed_and_complete(ctx in context()) {
        let lattice = enumerate_concepts(&ctx).unwrap();
        for c in &lattice.concepts {
            prop_assert_eq!(&derive_intent(&ctx, &refs(&c.extent)).unwrap(), &c.intent);
            prop_assert_eq!(&derive_extent(&ctx, &refs(&c.intent)).unwrap(), &c.extent);
        }
        let found: BTreeSet<Concept> = lattice.concepts.iter().cloned().collect();
        prop_assert_eq!(found.len(), lattice.len());
        prop_assert_eq!(found, concepts_by_objects(&ctx));
    }

    #[test]
    fn hasse_edges_are_covers(ctx in context()) {
        let lattice = enumerate_concepts(&ctx).unwrap();
        let n = lattice.len();
        let lt = |i: usize, j: usize| {
            let (a, b) = (&lattice.concepts[i].extent, &lattice.concepts[j].extent);
            a.len() < b.len() && a.is_subset(b)
        };
        let mut covers = BTreeSet::new();
        for i in 0..n {
            for j in 0..n {
                if lt(i, j) && (0..n).all(|k| !(lt(i, k) && lt(k, j))) {
                    covers.insert((i, j));
                }
            }
        }
        prop_assert_eq!(lattice.hasse.iter().copied().collect::<BTreeSet<_>>(), covers);
    }

    #[test]
    fn concept_relations_are_distinct(ctx in context()) {
        let lattice = enumerate_concepts(&ctx).unwrap();
        let rels: BTreeSet<_> = lattice.concepts.iter().map(concept_to_relation).collect();
        prop_assert_eq!(rels.len(), lattice.len());
    }

    #[test]
    fn bridge_holds(ctx in context()) {
        let report = check_bridge(&ctx).unwrap();
        let n = enumerate_concepts(&ctx).unwrap().len();
        prop_assert!(report.holds);
        prop_assert_eq!(report.cases, n * (n + 1) / 2);
    }
}

#[test]
fn animal_concepts_match_object_closure() {
    let ctx = parse_context(FAMOUS_ANIMALS).unwrap();
    assert_eq!(concepts_by_objects(&ctx).len(), 13);
    let lattice = enumerate_concepts(&ctx).unwrap();
    assert_eq!(lattice.concepts.iter().cloned().collect::<BTreeSet<_>>(), concepts_by_objects(&ctx));
}
