//! Finite sublattices generated by a set of relations, and searches inside
//! them for non-distributive and non-modular configurations.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::kernel::{generalized_union, natural_join};
use crate::laws::{check_distributivity, check_modularity, LawReport};
use crate::relation::Relation;

/// The relations reachable from `generators` by repeated join and union.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeClosure {
    /// Elements in discovery order; generators come first.
    pub elements: Vec<Relation>,
    pub generators: Vec<Relation>,
    /// Set when the cap was exceeded before reaching a fixpoint.
    pub truncated: bool,
}

impl LatticeClosure {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, r: &Relation) -> bool {
        self.elements.contains(r)
    }
}

/// Closes `generators` under both operators. Stops with `truncated = true`
/// as soon as the element count exceeds `cap`.
pub fn lattice_closure(generators: &[Relation], cap: usize) -> Result<LatticeClosure> {
    let mut seen = BTreeSet::new();
    let mut elements = Vec::new();
    for g in generators {
        if seen.insert(g.clone()) {
            elements.push(g.clone());
        }
    }
    if cap < elements.len() {
        return Err(Error::CapTooSmall {
            cap,
            generators: elements.len(),
        });
    }
    let mut truncated = false;
    let mut k = 0;
    'outer: while k < elements.len() {
        for i in 0..=k {
            for r in [
                natural_join(&elements[i], &elements[k]),
                generalized_union(&elements[i], &elements[k]),
            ] {
                if seen.insert(r.clone()) {
                    elements.push(r);
                    if elements.len() > cap {
                        truncated = true;
                        break 'outer;
                    }
                }
            }
        }
        k += 1;
    }
    Ok(LatticeClosure {
        elements,
        generators: generators.to_vec(),
        truncated,
    })
}

/// Operation tables over a closed element set, by index.
struct Tables {
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
}

impl Tables {
    fn build(closure: &LatticeClosure) -> Result<Tables> {
        if closure.truncated {
            return Err(Error::TruncatedClosure(closure.len()));
        }
        let els = &closure.elements;
        let index: HashMap<&Relation, usize> = els.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let lookup = |r: Relation| *index.get(&r).expect("closure is closed");
        let n = els.len();
        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        for i in 0..n {
            for k in i..n {
                let j = lookup(natural_join(&els[i], &els[k]));
                let m = lookup(generalized_union(&els[i], &els[k]));
                join[i][k] = j;
                join[k][i] = j;
                meet[i][k] = m;
                meet[k][i] = m;
            }
        }
        Ok(Tables { join, meet })
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        self.join[a][b] == b
    }

    fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }
}

/// A pentagon sublattice: `bottom < a < b < top`, `bottom < x < top`, with
/// `x` incomparable to `a` and `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pentagon {
    pub bottom: Relation,
    pub top: Relation,
    pub x: Relation,
    pub a: Relation,
    pub b: Relation,
}

/// Searches a complete closure for a pentagon. The pentagon is fixed by its
/// chain `a < b` and the side element `x`, so the search runs over those
/// three and derives `top = x ⋈ a` and `bottom = x ∪̄ b`.
pub fn find_n5(closure: &LatticeClosure) -> Result<Option<Pentagon>> {
    let t = Tables::build(closure)?;
    let n = closure.len();
    for a in 0..n {
        for b in 0..n {
            if a == b || !t.leq(a, b) {
                continue;
            }
            for x in 0..n {
                if t.comparable(x, a) || t.comparable(x, b) {
                    continue;
                }
                let top = t.join[x][a];
                let bottom = t.meet[x][b];
                if t.join[x][b] == top && t.meet[x][a] == bottom {
                    let el = |i: usize| closure.elements[i].clone();
                    return Ok(Some(Pentagon {
                        bottom: el(bottom),
                        top: el(top),
                        x: el(x),
                        a: el(a),
                        b: el(b),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// First triple of the closure (in index order) violating the modular law.
pub fn find_modularity_violation(closure: &LatticeClosure) -> Result<Option<LawReport>> {
    let t = Tables::build(closure)?;
    let n = closure.len();
    for a in 0..n {
        for c in 0..n {
            if a == c || !t.leq(a, c) {
                continue;
            }
            for b in 0..n {
                if t.join[a][t.meet[b][c]] != t.meet[t.join[a][b]][c] {
                    let el = &closure.elements;
                    return Ok(Some(check_modularity(&el[a], &el[b], &el[c])));
                }
            }
        }
    }
    Ok(None)
}

/// First triple of the closure violating either distributive law.
pub fn find_distributivity_violation(closure: &LatticeClosure) -> Result<Option<LawReport>> {
    let t = Tables::build(closure)?;
    let n = closure.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let join_over_union = t.join[a][t.meet[b][c]] == t.meet[t.join[a][b]][t.join[a][c]];
                let union_over_join = t.meet[a][t.join[b][c]] == t.join[t.meet[a][b]][t.meet[a][c]];
                if !join_over_union || !union_over_join {
                    let el = &closure.elements;
                    let (jou, uoj) = check_distributivity(&el[a], &el[b], &el[c]);
                    return Ok(Some(if join_over_union { uoj } else { jou }));
                }
            }
        }
    }
    Ok(None)
}
