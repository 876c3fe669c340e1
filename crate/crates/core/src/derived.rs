//! Classical relational operators rebuilt from natural join, generalized
//! union and symbolic relations.
//!
//! Intermediate attributes (primed copies, composition pivots) are produced
//! by [`Attr::fresh`], whose reserved suffix cannot occur in user names.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::kernel::{generalized_union, natural_join};
use crate::relation::{empty, Header, Relation};
use crate::symbolic::{eq_rel, join_with_symbolic, neq_rel, SymbolicRelation};
use crate::value::{attr, Attr};

/// Pairs of `old → new` attribute names.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct RenameSpec {
    pairs: Vec<(Attr, Attr)>,
}

impl RenameSpec {
    /// Rejects repeated old or new names.
    pub fn new(pairs: Vec<(Attr, Attr)>) -> Result<Self> {
        let mut olds = BTreeSet::new();
        let mut news = BTreeSet::new();
        for (old, new) in &pairs {
            if !olds.insert(old) {
                return Err(Error::DuplicateAttribute(old.clone()));
            }
            if !news.insert(new) {
                return Err(Error::DuplicateAttribute(new.clone()));
            }
        }
        Ok(RenameSpec { pairs })
    }

    pub fn single(old: Attr, new: Attr) -> Self {
        RenameSpec {
            pairs: vec![(old, new)],
        }
    }

    pub fn pairs(&self) -> &[(Attr, Attr)] {
        &self.pairs
    }

    pub fn inverse(&self) -> RenameSpec {
        RenameSpec {
            pairs: self.pairs.iter().map(|(o, n)| (n.clone(), o.clone())).collect(),
        }
    }
}

/// Natural join of relations with disjoint headers.
pub fn cartesian(a: &Relation, b: &Relation) -> Result<Relation> {
    let shared = a.header().intersection(b.header());
    if !shared.is_empty() {
        return Err(Error::HeadersNotDisjoint(shared.to_string()));
    }
    Ok(natural_join(a, b))
}

/// Joins with the predicates, then projects back onto `a`'s header.
pub fn select(a: &Relation, preds: &[SymbolicRelation]) -> Result<Relation> {
    let joined = join_with_symbolic(a, preds)?;
    projection(&joined, a.header())
}

/// Generalized union with the empty relation over `attrs`.
pub fn projection(a: &Relation, attrs: &Header) -> Result<Relation> {
    if let Some(missing) = attrs.iter().find(|x| !a.header().contains(x)) {
        return Err(Error::AttrNotInHeader {
            attr: missing.clone(),
            header: a.header().to_string(),
        });
    }
    Ok(generalized_union(a, &empty(attrs.clone())))
}

/// Join with `EQ(old, new)` for every pair, then project away the old names.
pub fn rename(a: &Relation, spec: &RenameSpec) -> Result<Relation> {
    let mut eqs = Vec::with_capacity(spec.pairs.len());
    for (old, new) in &spec.pairs {
        if !a.header().contains(old) {
            return Err(Error::AttrNotInHeader {
                attr: old.clone(),
                header: a.header().to_string(),
            });
        }
        if a.header().contains(new) {
            return Err(Error::RenameCollision {
                old: old.clone(),
                new: new.clone(),
            });
        }
        eqs.push(eq_rel(old.clone(), new.clone())?);
    }
    let olds: Header = spec.pairs.iter().map(|(o, _)| o.clone()).collect();
    let news: Header = spec.pairs.iter().map(|(_, n)| n.clone()).collect();
    let target = a.header().difference(&olds).union(&news);
    projection(&join_with_symbolic(a, &eqs)?, &target)
}

fn binary_check(r: &Relation, x: &Attr, y: &Attr) -> Result<()> {
    if x == y || r.header() != &[x.clone(), y.clone()].into_iter().collect::<Header>() {
        return Err(Error::HeaderNotBinary(r.header().to_string()));
    }
    Ok(())
}

/// The two attributes of a binary header in sorted order.
fn binary_attrs(r: &Relation) -> Result<(Attr, Attr)> {
    let mut it = r.header().iter().cloned();
    match (it.next(), it.next(), it.next()) {
        (Some(x), Some(y), None) => Ok((x, y)),
        _ => Err(Error::HeaderNotBinary(r.header().to_string())),
    }
}

/// Relational composition of two relations over `{x, y}`: pairs `(x, y)`
/// with some `s` such that `(x, s) ∈ r` and `(s, y) ∈ s_rel`.
pub fn compose(r: &Relation, s_rel: &Relation, x: &Attr, y: &Attr) -> Result<Relation> {
    binary_check(r, x, y)?;
    binary_check(s_rel, x, y)?;
    let pivot = Attr::fresh(&attr("s"), |a| a == x || a == y);
    let left = rename(r, &RenameSpec::single(y.clone(), pivot.clone()))?;
    let right = rename(s_rel, &RenameSpec::single(x.clone(), pivot))?;
    projection(&natural_join(&left, &right), r.header())
}

/// Least fixpoint of `A ∪̄ A² ∪̄ A³ ∪̄ …`.
pub fn transitive_closure(a: &Relation, x: &Attr, y: &Attr) -> Result<Relation> {
    binary_check(a, x, y)?;
    let mut acc = a.clone();
    let mut power = a.clone();
    loop {
        power = compose(&power, a, x, y)?;
        let next = generalized_union(&acc, &power);
        if next == acc {
            return Ok(acc);
        }
        acc = next;
    }
}

/// The anti-join construction for binary relations, evaluated literally:
///
/// ```text
/// A'  = π_{x,y}(A ⋈ ρ(B → B(x', y')) ⋈ NEQ(x, x'))
/// A'' = π_{x,y}(A ⋈ ρ(B → B(x', y')) ⋈ NEQ(y, y'))
/// A'  ∪̄ A''
/// ```
///
/// This keeps the rows of `a` that differ from *some* row of `b`, which is
/// not set difference: a row present in `b` survives whenever `b` holds
/// another row, and an empty `b` yields an empty result. [`difference`]
/// is the exact operator.
pub fn difference_literal(a: &Relation, b: &Relation) -> Result<Relation> {
    if a.header() != b.header() {
        return Err(Error::HeaderMismatch {
            row: b.header().to_string(),
            header: a.header().to_string(),
            detail: "difference needs equal headers".into(),
        });
    }
    let (x, y) = binary_attrs(a)?;
    let taken = |c: &Attr| c == &x || c == &y;
    let x1 = Attr::fresh(&x, taken);
    let y1 = Attr::fresh(&y, taken);
    let primed = rename(
        b,
        &RenameSpec::new(vec![(x.clone(), x1.clone()), (y.clone(), y1.clone())])?,
    )?;
    let joined = natural_join(a, &primed);
    let differs_in_x = projection(
        &join_with_symbolic(&joined, &[neq_rel(x.clone(), x1)?])?,
        a.header(),
    )?;
    let differs_in_y = projection(
        &join_with_symbolic(&joined, &[neq_rel(y.clone(), y1)?])?,
        a.header(),
    )?;
    Ok(generalized_union(&differs_in_x, &differs_in_y))
}

/// Rows of `a` absent from `b`.
pub fn difference(a: &Relation, b: &Relation) -> Result<Relation> {
    if a.header() != b.header() {
        return Err(Error::HeaderMismatch {
            row: b.header().to_string(),
            header: a.header().to_string(),
            detail: "difference needs equal headers".into(),
        });
    }
    let body = a.body().difference(b.body()).cloned().collect();
    Ok(Relation::from_parts(a.header().clone(), body))
}

/// Output attribute names of [`tensor_product`].
pub const TENSOR_ATTRS: [&str; 4] = ["xx", "xy", "yx", "yy"];

/// Tensor product of two relations over the same binary header, using its
/// attributes in sorted order as `x` and `y`.
pub fn tensor_product(a: &Relation, b: &Relation) -> Result<Relation> {
    let (x, y) = binary_attrs(a)?;
    tensor_product_on(a, b, &x, &y)
}

/// Three-step tensor product over `{x, y}`:
///
/// ```text
/// A' = A ⋈ EQ(x,xx) ⋈ EQ(x,xy) ⋈ EQ(y,yx) ⋈ EQ(y,yy)
/// B' = B ⋈ EQ(x,xx) ⋈ EQ(y,xy) ⋈ EQ(x,yx) ⋈ EQ(y,yy)
/// π_{xx,xy,yx,yy}(A' ∪̄ B')
/// ```
///
/// The copies are built under fresh names and renamed to
/// [`TENSOR_ATTRS`] at the end, so `x` and `y` may be called anything.
pub fn tensor_product_on(a: &Relation, b: &Relation, x: &Attr, y: &Attr) -> Result<Relation> {
    binary_check(a, x, y)?;
    binary_check(b, x, y)?;
    let outputs: Vec<Attr> = TENSOR_ATTRS.iter().map(|n| attr(n)).collect();
    let copies: Vec<Attr> = outputs
        .iter()
        .map(|o| Attr::fresh(o, |c| c == x || c == y))
        .collect();
    let [xx, xy, yx, yy] = [&copies[0], &copies[1], &copies[2], &copies[3]];
    let chain = |sources: [&Attr; 4]| -> Result<Vec<SymbolicRelation>> {
        sources
            .iter()
            .zip([xx, xy, yx, yy])
            .map(|(src, dst)| eq_rel((*src).clone(), dst.clone()))
            .collect()
    };
    let a_copy = join_with_symbolic(a, &chain([x, x, y, y])?)?;
    let b_copy = join_with_symbolic(b, &chain([x, y, x, y])?)?;
    let copy_header: Header = copies.iter().cloned().collect();
    let product = projection(&generalized_union(&a_copy, &b_copy), &copy_header)?;
    rename(
        &product,
        &RenameSpec::new(copies.into_iter().zip(outputs).collect())?,
    )
}
