//! The two primitive operators.
//!
//! Natural join plays the role of lattice *join* and generalized union the
//! role of lattice *meet*; every other operator in the crate is built from
//! these two.

use std::collections::{BTreeSet, HashMap};

use crate::relation::{kernel_project, Relation};
use crate::value::Value;

/// Header union; rows are all pairs of rows that agree on the shared
/// attributes, with the shared columns merged.
pub fn natural_join(a: &Relation, b: &Relation) -> Relation {
    let header = a.header().union(b.header());
    let common = a.header().intersection(b.header());
    let a_key = a.positions_of(&common).expect("common attrs are in a");
    let b_key = b.positions_of(&common).expect("common attrs are in b");

    // where each output column comes from: (false, i) = a[i], (true, i) = b[i]
    let sources: Vec<(bool, usize)> = header
        .iter()
        .map(|attr| match a.header().position(attr) {
            Some(i) => (false, i),
            None => (true, b.header().position(attr).expect("attr from b")),
        })
        .collect();

    let mut index: HashMap<Vec<&Value>, Vec<&Vec<Value>>> = HashMap::new();
    for row in b.rows() {
        let key = b_key.iter().map(|&i| &row[i]).collect();
        index.entry(key).or_default().push(row);
    }

    let mut body = BTreeSet::new();
    for left in a.rows() {
        let key: Vec<&Value> = a_key.iter().map(|&i| &left[i]).collect();
        let Some(matches) = index.get(&key) else {
            continue;
        };
        for right in matches {
            let row = sources
                .iter()
                .map(|&(from_b, i)| if from_b { right[i].clone() } else { left[i].clone() })
                .collect();
            body.insert(row);
        }
    }
    Relation::from_parts(header, body)
}

/// Header intersection; the body is the union of both operands projected
/// onto the shared attributes.
pub fn generalized_union(a: &Relation, b: &Relation) -> Relation {
    let header = a.header().intersection(b.header());
    let left = kernel_project(a, &header).expect("shared attrs are in a");
    let right = kernel_project(b, &header).expect("shared attrs are in b");
    let body = left.body().union(right.body()).cloned().collect();
    Relation::from_parts(header, body)
}

/// `a ≤ b` iff `b = a ⋈ b`.
pub fn leq_by_join(a: &Relation, b: &Relation) -> bool {
    natural_join(a, b) == *b
}

/// `a ≤ b` iff `a = a ∪̄ b`.
pub fn leq_by_union(a: &Relation, b: &Relation) -> bool {
    generalized_union(a, b) == *a
}
