//! Headers, tuples and finite relations with set semantics.
//!
//! A [`Relation`] stores its body positionally: every row is a vector of
//! values aligned with the header's sorted attribute order. Two relations are
//! equal exactly when their headers and bodies are equal as sets, so the
//! derived `Eq` is the structural equality used throughout the crate.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::value::{Attr, Value};

/// A finite set of attribute names.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Header(BTreeSet<Attr>);

impl Header {
    pub fn new() -> Self {
        Header(BTreeSet::new())
    }

    /// Builds a header, rejecting repeated names.
    pub fn try_from_attrs(attrs: impl IntoIterator<Item = Attr>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for a in attrs {
            if let Some(dup) = set.replace(a) {
                return Err(Error::DuplicateAttribute(dup));
            }
        }
        Ok(Header(set))
    }

    /// Builds a header from names known to be valid and distinct.
    ///
    /// # Panics
    ///
    /// Panics on an invalid or repeated name.
    pub fn of(names: &[&str]) -> Self {
        Self::try_from_attrs(names.iter().map(|n| crate::value::attr(n)))
            .unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, a: &Attr) -> bool {
        self.0.contains(a)
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &Attr> + '_ {
        self.0.iter()
    }

    /// Position of `a` in the sorted attribute order.
    pub fn position(&self, a: &Attr) -> Option<usize> {
        self.0.iter().position(|b| b == a)
    }

    pub fn is_subset(&self, other: &Header) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &Header) -> Header {
        Header(self.0.union(&other.0).cloned().collect())
    }

    pub fn intersection(&self, other: &Header) -> Header {
        Header(self.0.intersection(&other.0).cloned().collect())
    }

    pub fn difference(&self, other: &Header) -> Header {
        Header(self.0.difference(&other.0).cloned().collect())
    }

    pub fn insert(&mut self, a: Attr) -> bool {
        self.0.insert(a)
    }
}

impl FromIterator<Attr> for Header {
    fn from_iter<I: IntoIterator<Item = Attr>>(iter: I) -> Self {
        Header(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Header {
    type Item = &'a Attr;
    type IntoIter = std::collections::btree_set::Iter<'a, Attr>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for Header {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

/// A row as an attribute → value mapping.
pub type Tuple = BTreeMap<Attr, Value>;

pub(crate) fn tuple_to_string(t: &Tuple) -> String {
    let cells: Vec<String> = t.iter().map(|(a, v)| format!("{a}={v}")).collect();
    format!("({})", cells.join(", "))
}

/// A finite relation: a header plus a set of rows over exactly that header.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relation {
    header: Header,
    body: BTreeSet<Vec<Value>>,
}

/// Builds a relation from mapping-style rows, merging duplicates.
pub fn make_relation(header: Header, rows: impl IntoIterator<Item = Tuple>) -> Result<Relation> {
    let mut body = BTreeSet::new();
    for row in rows {
        if row.len() != header.len() || !row.keys().all(|k| header.contains(k)) {
            let keys: Header = row.keys().cloned().collect();
            return Err(Error::HeaderMismatch {
                row: tuple_to_string(&row),
                header: header.to_string(),
                detail: format!("row binds {keys}"),
            });
        }
        body.insert(row.into_values().collect());
    }
    Ok(Relation { header, body })
}

/// The relation with no attributes and one empty row.
pub fn dee() -> Relation {
    Relation {
        header: Header::new(),
        body: BTreeSet::from([Vec::new()]),
    }
}

/// The relation with no attributes and no rows.
pub fn dum() -> Relation {
    empty(Header::new())
}

/// The relation over `header` with no rows.
pub fn empty(header: Header) -> Relation {
    Relation {
        header,
        body: BTreeSet::new(),
    }
}

/// Restricts every row to `attrs`, merging duplicates. Projecting onto the
/// empty header gives `dee()` for a non-empty relation and `dum()` otherwise.
pub fn kernel_project(rel: &Relation, attrs: &Header) -> Result<Relation> {
    let positions = rel.positions_of(attrs)?;
    let body = rel
        .body
        .iter()
        .map(|row| positions.iter().map(|&i| row[i].clone()).collect())
        .collect();
    Ok(Relation {
        header: attrs.clone(),
        body,
    })
}

/// Set equality of headers and bodies.
pub fn relation_equal(a: &Relation, b: &Relation) -> bool {
    a == b
}

impl Relation {
    /// Builds a relation from rows given positionally in the order of
    /// `attrs` (which need not be sorted).
    pub fn from_table<R, V>(attrs: &[&str], rows: impl IntoIterator<Item = R>) -> Result<Relation>
    where
        R: IntoIterator<Item = V>,
        V: Into<Value>,
    {
        let names = attrs
            .iter()
            .map(|a| Attr::new(*a))
            .collect::<Result<Vec<_>>>()?;
        Self::from_positional(&names, rows.into_iter().map(|r| r.into_iter().map(Into::into).collect()))
    }

    /// Builds a relation from rows whose values line up with `attrs`.
    pub fn from_positional(
        attrs: &[Attr],
        rows: impl IntoIterator<Item = Vec<Value>>,
    ) -> Result<Relation> {
        let header = Header::try_from_attrs(attrs.iter().cloned())?;
        // permutation from the caller's order to the sorted header order
        let order: Vec<usize> = header
            .iter()
            .map(|a| attrs.iter().position(|b| b == a).expect("attribute present"))
            .collect();
        let mut body = BTreeSet::new();
        for row in rows {
            if row.len() != attrs.len() {
                return Err(Error::HeaderMismatch {
                    row: format!("{row:?}"),
                    header: header.to_string(),
                    detail: format!("expected {} values, got {}", attrs.len(), row.len()),
                });
            }
            body.insert(order.iter().map(|&i| row[i].clone()).collect());
        }
        Ok(Relation { header, body })
    }

    pub(crate) fn from_parts(header: Header, body: BTreeSet<Vec<Value>>) -> Relation {
        debug_assert!(body.iter().all(|r| r.len() == header.len()));
        Relation { header, body }
    }

    pub fn header(&self) -> &Header {
        &self.header
    }

    /// Rows in canonical order, aligned with the sorted header.
    pub fn rows(&self) -> impl ExactSizeIterator<Item = &Vec<Value>> + '_ {
        self.body.iter()
    }

    pub(crate) fn body(&self) -> &BTreeSet<Vec<Value>> {
        &self.body
    }

    pub fn tuples(&self) -> impl Iterator<Item = Tuple> + '_ {
        self.body
            .iter()
            .map(|row| self.header.iter().cloned().zip(row.iter().cloned()).collect())
    }

    pub fn len(&self) -> usize {
        self.body.len()
    }

    pub fn is_empty(&self) -> bool {
        self.body.is_empty()
    }

    pub fn contains(&self, t: &Tuple) -> bool {
        if t.len() != self.header.len() || !t.keys().all(|k| self.header.contains(k)) {
            return false;
        }
        let row: Vec<Value> = t.values().cloned().collect();
        self.body.contains(&row)
    }

    /// True when every row of `self` is a row of `other` and the headers match.
    pub fn is_subset(&self, other: &Relation) -> bool {
        self.header == other.header && self.body.is_subset(&other.body)
    }

    /// Column positions of `attrs` within this relation's rows.
    pub(crate) fn positions_of(&self, attrs: &Header) -> Result<Vec<usize>> {
        attrs
            .iter()
            .map(|a| {
                self.header.position(a).ok_or_else(|| Error::AttrNotInHeader {
                    attr: a.clone(),
                    header: self.header.to_string(),
                })
            })
            .collect()
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::format_relation(self))
    }
}
