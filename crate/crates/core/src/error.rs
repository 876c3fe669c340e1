use thiserror::Error;

use crate::value::Attr;

/// Errors raised by the relational operators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid attribute name {0:?}")]
    InvalidAttribute(String),
    #[error("attribute {0} is reserved for internal use")]
    ReservedAttribute(String),
    #[error("duplicate attribute {0}")]
    DuplicateAttribute(Attr),
    #[error("row {row} does not match header {header}: {detail}")]
    HeaderMismatch {
        row: String,
        header: String,
        detail: String,
    },
    #[error("attribute {attr} is not in header {header}")]
    AttrNotInHeader { attr: Attr, header: String },
    #[error("a symbolic relation needs two distinct attributes, got {0} twice")]
    SameAttribute(Attr),
    #[error("cannot materialize {relation}: attributes {unbound} stay unbound")]
    NotMaterializable { relation: String, unbound: String },
    #[error("cartesian product needs disjoint headers, both contain {0}")]
    HeadersNotDisjoint(String),
    #[error("rename of {old} to {new} collides with an existing attribute")]
    RenameCollision { old: Attr, new: Attr },
    #[error("operator needs a binary header {{x, y}}, got {0}")]
    HeaderNotBinary(String),
    #[error("lattice closure cap {cap} is below the {generators} generators")]
    CapTooSmall { cap: usize, generators: usize },
    #[error("lattice closure was truncated at {0} elements")]
    TruncatedClosure(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
