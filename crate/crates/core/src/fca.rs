//! Formal contexts, their concept lattices, and the reading of concepts as
//! relations.
//!
//! A concept becomes a relation with a `Name` column plus one boolean column
//! `is<Attribute>` per intent attribute, and one all-`true` row per extent
//! object. Joining two such relations keeps exactly the objects shared by
//! both extents, which is the extent of the concept meet.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::io::{csv_lines, split_csv_line};
use crate::kernel::natural_join;
use crate::laws::{LawReport, Witness};
use crate::relation::{kernel_project, Header, Relation};
use crate::value::{Attr, Value};

/// Largest attribute count accepted by [`enumerate_concepts`].
pub const MAX_ATTRIBUTES: usize = 20;

/// Column holding object names in concept relations.
pub const NAME_COLUMN: &str = "Name";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FcaError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("unknown attribute {0}")]
    UnknownAttribute(String),
    #[error("duplicate name {0}")]
    Duplicate(String),
    #[error("{0} attributes exceed the enumeration limit of {MAX_ATTRIBUTES}")]
    TooLarge(usize),
}

/// Objects, attributes and the incidence between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    /// Attribute indices per object.
    rows: Vec<BTreeSet<usize>>,
}

/// `is` followed by the attribute with its first letter upper-cased.
pub fn column_name(attribute: &str) -> String {
    let mut chars = attribute.chars();
    match chars.next() {
        Some(first) => format!("is{}{}", first.to_uppercase(), chars.as_str()),
        None => "is".to_string(),
    }
}

impl FormalContext {
    pub fn new<'a>(
        objects: Vec<String>,
        attributes: Vec<String>,
        incidence: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self, FcaError> {
        let mut seen = BTreeSet::new();
        for name in objects.iter().chain(&attributes) {
            if name.trim().is_empty() || name.trim() != name {
                return Err(FcaError::Duplicate(format!("{name:?} (blank or padded)")));
            }
        }
        for o in &objects {
            if !seen.insert(o) {
                return Err(FcaError::Duplicate(o.clone()));
            }
        }
        let mut columns = BTreeSet::new();
        for a in &attributes {
            if !columns.insert(column_name(a)) {
                return Err(FcaError::Duplicate(a.clone()));
            }
        }
        let mut ctx = FormalContext {
            rows: vec![BTreeSet::new(); objects.len()],
            objects,
            attributes,
        };
        for (o, a) in incidence {
            let oi = ctx.object_index(o)?;
            let ai = ctx.attribute_index(a)?;
            ctx.rows[oi].insert(ai);
        }
        Ok(ctx)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn incidence(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.rows.iter().enumerate().flat_map(move |(o, attrs)| {
            attrs
                .iter()
                .map(move |&a| (self.objects[o].as_str(), self.attributes[a].as_str()))
        })
    }

    pub fn has(&self, object: &str, attribute: &str) -> bool {
        match (self.object_index(object), self.attribute_index(attribute)) {
            (Ok(o), Ok(a)) => self.rows[o].contains(&a),
            _ => false,
        }
    }

    fn object_index(&self, o: &str) -> Result<usize, FcaError> {
        self.objects
            .iter()
            .position(|x| x == o)
            .ok_or_else(|| FcaError::UnknownObject(o.to_string()))
    }

    fn attribute_index(&self, a: &str) -> Result<usize, FcaError> {
        self.attributes
            .iter()
            .position(|x| x == a)
            .ok_or_else(|| FcaError::UnknownAttribute(a.to_string()))
    }

    fn intent_of(&self, objects: &BTreeSet<usize>) -> BTreeSet<usize> {
        (0..self.attributes.len())
            .filter(|a| objects.iter().all(|&o| self.rows[o].contains(a)))
            .collect()
    }

    fn extent_of(&self, attributes: &BTreeSet<usize>) -> BTreeSet<usize> {
        (0..self.objects.len())
            .filter(|&o| attributes.is_subset(&self.rows[o]))
            .collect()
    }

    fn object_names(&self, idx: &BTreeSet<usize>) -> BTreeSet<String> {
        idx.iter().map(|&o| self.objects[o].clone()).collect()
    }

    fn attribute_names(&self, idx: &BTreeSet<usize>) -> BTreeSet<String> {
        idx.iter().map(|&a| self.attributes[a].clone()).collect()
    }
}

/// Reads a cross table: the header row lists attributes after an empty
/// first cell, each further row an object name followed by `x` or empty
/// cells.
pub fn parse_context(text: &str) -> Result<FormalContext, FcaError> {
    let parse_err = |line, message: String| FcaError::Parse { line, message };
    let mut lines = csv_lines(text);
    let Some((line, head)) = lines.next() else {
        return FormalContext::new(Vec::new(), Vec::new(), []);
    };
    let head = split_csv_line(head).map_err(|m| parse_err(line, m))?;
    if !head[0].text.is_empty() {
        return Err(parse_err(line, "the first header cell must be empty".into()));
    }
    let attributes: Vec<String> = head[1..].iter().map(|c| c.text.clone()).collect();
    let mut objects = Vec::new();
    let mut marks = Vec::new();
    for (line, l) in lines {
        let cells = split_csv_line(l).map_err(|m| parse_err(line, m))?;
        if cells.len() != head.len() {
            return Err(parse_err(
                line,
                format!("expected {} cells, found {}", head.len(), cells.len()),
            ));
        }
        let object = cells[0].text.clone();
        for (cell, attribute) in cells[1..].iter().zip(&attributes) {
            match cell.text.as_str() {
                "x" | "X" => marks.push((object.clone(), attribute.clone())),
                "" => {}
                other => {
                    return Err(parse_err(line, format!("cell {other:?} is neither `x` nor empty")))
                }
            }
        }
        objects.push(object);
    }
    FormalContext::new(
        objects,
        attributes,
        marks.iter().map(|(o, a)| (o.as_str(), a.as_str())),
    )
}

/// Attributes shared by all given objects; all attributes for no objects.
pub fn derive_intent(ctx: &FormalContext, objects: &[&str]) -> Result<BTreeSet<String>, FcaError> {
    let idx = objects
        .iter()
        .map(|o| ctx.object_index(o))
        .collect::<Result<BTreeSet<_>, _>>()?;
    Ok(ctx.attribute_names(&ctx.intent_of(&idx)))
}

/// Objects having all given attributes; all objects for no attributes.
pub fn derive_extent(ctx: &FormalContext, attributes: &[&str]) -> Result<BTreeSet<String>, FcaError> {
    let idx = attributes
        .iter()
        .map(|a| ctx.attribute_index(a))
        .collect::<Result<BTreeSet<_>, _>>()?;
    Ok(ctx.object_names(&ctx.extent_of(&idx)))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Concept {
    pub extent: BTreeSet<String>,
    pub intent: BTreeSet<String>,
}

/// All concepts of a context ordered by extent inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptLattice {
    /// Sorted by descending extent size, so the top concept comes first.
    pub concepts: Vec<Concept>,
    /// Covering pairs `(lower, upper)` as indices into `concepts`.
    pub hasse: Vec<(usize, usize)>,
    /// For each attribute, the largest concept whose intent contains it.
    pub attribute_concepts: Vec<(String, usize)>,
    /// For each object, the smallest concept whose extent contains it.
    pub object_concepts: Vec<(String, usize)>,
}

impl ConceptLattice {
    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.concepts[i].extent.is_subset(&self.concepts[j].extent)
    }

    pub fn find_extent(&self, extent: &BTreeSet<String>) -> Option<usize> {
        self.concepts.iter().position(|c| &c.extent == extent)
    }

    /// The concept whose extent is the intersection of both extents.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        let ext = self.concepts[i]
            .extent
            .intersection(&self.concepts[j].extent)
            .cloned()
            .collect();
        self.find_extent(&ext).expect("extents are closed under intersection")
    }
}

/// Closes every attribute subset. Exponential in the attribute count, so
/// contexts above [`MAX_ATTRIBUTES`] attributes are refused.
pub fn enumerate_concepts(ctx: &FormalContext) -> Result<ConceptLattice, FcaError> {
    let m = ctx.attributes.len();
    if m > MAX_ATTRIBUTES {
        return Err(FcaError::TooLarge(m));
    }
    let mut closed: BTreeMap<BTreeSet<usize>, BTreeSet<usize>> = BTreeMap::new();
    for mask in 0u32..(1 << m) {
        let subset: BTreeSet<usize> = (0..m).filter(|a| mask & (1 << a) != 0).collect();
        let extent = ctx.extent_of(&subset);
        if let std::collections::btree_map::Entry::Vacant(slot) = closed.entry(extent) {
            let intent = ctx.intent_of(slot.key());
            slot.insert(intent);
        }
    }
    let mut concepts: Vec<Concept> = closed
        .iter()
        .map(|(e, i)| Concept {
            extent: ctx.object_names(e),
            intent: ctx.attribute_names(i),
        })
        .collect();
    concepts.sort_by(|a, b| b.extent.len().cmp(&a.extent.len()).then_with(|| a.cmp(b)));

    let n = concepts.len();
    let below = |i: usize, j: usize| i != j && concepts[i].extent.is_subset(&concepts[j].extent);
    let mut hasse = Vec::new();
    for lower in 0..n {
        for upper in 0..n {
            if below(lower, upper) && !(0..n).any(|k| below(lower, k) && below(k, upper)) {
                hasse.push((lower, upper));
            }
        }
    }
    hasse.sort_unstable();

    let position = |extent: &BTreeSet<String>| {
        concepts
            .iter()
            .position(|c| &c.extent == extent)
            .expect("closed extent")
    };
    let attribute_concepts = (0..m)
        .map(|a| {
            let ext = ctx.object_names(&ctx.extent_of(&BTreeSet::from([a])));
            (ctx.attributes[a].clone(), position(&ext))
        })
        .collect();
    let object_concepts = (0..ctx.objects.len())
        .map(|o| {
            let intent = ctx.intent_of(&BTreeSet::from([o]));
            let ext = ctx.object_names(&ctx.extent_of(&intent));
            (ctx.objects[o].clone(), position(&ext))
        })
        .collect();

    Ok(ConceptLattice {
        concepts,
        hasse,
        attribute_concepts,
        object_concepts,
    })
}

/// Header `{Name} ∪ {is<A> : A in intent}`, one all-true row per extent
/// object.
pub fn concept_to_relation(c: &Concept) -> Relation {
    let mut attrs = vec![Attr::new(NAME_COLUMN).expect("valid")];
    attrs.extend(
        c.intent
            .iter()
            .map(|a| Attr::new(column_name(a)).expect("context names are trimmed and non-empty")),
    );
    let rows = c.extent.iter().map(|o| {
        let mut row = vec![Value::Text(o.clone())];
        row.extend(c.intent.iter().map(|_| Value::Bool(true)));
        row
    });
    Relation::from_positional(&attrs, rows).expect("column names are distinct per context")
}

fn extent_relation(extent: &BTreeSet<String>) -> Relation {
    Relation::from_positional(
        &[Attr::new(NAME_COLUMN).expect("valid")],
        extent.iter().map(|o| vec![Value::Text(o.clone())]),
    )
    .expect("unary")
}

/// Checks, for every pair of concepts, that the `Name` column of the join of
/// their relations equals the extent of their meet.
///
/// Only extents are compared. The join's header is the union of the two
/// intents while the meet's intent is the closure of that union, so headers
/// can differ; the number of such pairs is reported in the notes.
pub fn check_bridge(ctx: &FormalContext) -> Result<LawReport, FcaError> {
    let lattice = enumerate_concepts(ctx)?;
    let relations: Vec<Relation> = lattice.concepts.iter().map(concept_to_relation).collect();
    let name_header: Header = [Attr::new(NAME_COLUMN).expect("valid")].into_iter().collect();
    let mut report = LawReport {
        law: "fca-bridge".to_string(),
        cases: 0,
        holds: true,
        witness: None,
        notes: Vec::new(),
    };
    let mut header_mismatches = 0;
    for i in 0..lattice.len() {
        for j in i..lattice.len() {
            report.cases += 1;
            let joined = natural_join(&relations[i], &relations[j]);
            let names = kernel_project(&joined, &name_header).expect("Name column present");
            let meet = lattice.meet(i, j);
            let shared: BTreeSet<String> = lattice.concepts[i]
                .extent
                .intersection(&lattice.concepts[j].extent)
                .cloned()
                .collect();
            let expected = extent_relation(&lattice.concepts[meet].extent);
            if joined.header() != relations[meet].header() {
                header_mismatches += 1;
            }
            if report.holds && (names != expected || extent_relation(&shared) != expected) {
                report.holds = false;
                report.witness = Some(Witness {
                    operands: vec![relations[i].clone(), relations[j].clone()],
                    lhs: names,
                    rhs: expected,
                });
            }
        }
    }
    report.notes.push(format!(
        "{header_mismatches} of {} pairs: join header differs from the meet concept's relation header",
        report.cases
    ));
    Ok(report)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz document for the Hasse diagram with reduced labelling: each
/// attribute at its largest concept, each object at its smallest.
pub fn emit_dot(lattice: &ConceptLattice) -> String {
    let mut out = String::new();
    out.push_str("digraph concepts {\n  rankdir=BT;\n  node [shape=box];\n");
    for i in 0..lattice.len() {
        let labels = |pairs: &[(String, usize)]| -> Vec<String> {
            let mut v: Vec<String> = pairs
                .iter()
                .filter(|(_, c)| *c == i)
                .map(|(n, _)| dot_escape(n))
                .collect();
            v.sort();
            v
        };
        let attrs = labels(&lattice.attribute_concepts).join(", ");
        let objs = labels(&lattice.object_concepts).join(", ");
        let label = match (attrs.is_empty(), objs.is_empty()) {
            (true, true) => String::new(),
            (false, true) => attrs,
            (true, false) => objs,
            (false, false) => format!("{attrs}\\n{objs}"),
        };
        writeln!(out, "  c{i} [label=\"{label}\"];").expect("writing to a String");
    }
    for (lower, upper) in &lattice.hasse {
        writeln!(out, "  c{lower} -> c{upper};").expect("writing to a String");
    }
    out.push_str("}\n");
    out
}
