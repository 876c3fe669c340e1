use std::fmt;

use crate::error::{Error, Result};

/// Character reserved for attribute names generated by the derived operators.
/// User-supplied names (files, queries) may not contain it.
pub const RESERVED_CHAR: char = '\'';

/// A column label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Attr(String);

impl Attr {
    /// Validates a name: non-empty, no surrounding whitespace.
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() || name.trim() != name {
            return Err(Error::InvalidAttribute(name));
        }
        Ok(Attr(name))
    }

    /// Like [`Attr::new`], additionally rejecting the reserved character.
    pub fn user(name: impl Into<String>) -> Result<Self> {
        let attr = Self::new(name)?;
        if attr.0.contains(RESERVED_CHAR) {
            return Err(Error::ReservedAttribute(attr.0));
        }
        Ok(attr)
    }

    /// Returns `base` with reserved suffixes appended until it avoids every
    /// name for which `taken` answers true.
    pub fn fresh(base: &Attr, mut taken: impl FnMut(&Attr) -> bool) -> Attr {
        let mut name = format!("{}{}", base.0, RESERVED_CHAR);
        loop {
            let candidate = Attr(name.clone());
            if !taken(&candidate) {
                return candidate;
            }
            name.push(RESERVED_CHAR);
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Attr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Shorthand for building attributes from literals known to be valid.
///
/// # Panics
///
/// Panics if `name` is not a valid attribute name.
pub fn attr(name: &str) -> Attr {
    Attr::new(name).unwrap_or_else(|e| panic!("{e}"))
}

/// A typed scalar cell. Values with different tags are never equal.
///
/// The derived order (integers, then texts, then booleans) is only used for
/// canonical display.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Int(i64),
    Text(String),
    Bool(bool),
}

impl Value {
    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Int(i) => Some(*i),
            _ => None,
        }
    }

    /// Parses an unquoted cell: an optional `-` followed by digits is an
    /// integer, `true`/`false` are booleans, anything else is text.
    pub fn parse_bare(cell: &str) -> Value {
        if looks_like_int(cell) {
            if let Ok(i) = cell.parse() {
                return Value::Int(i);
            }
        }
        match cell {
            "true" => Value::Bool(true),
            "false" => Value::Bool(false),
            _ => Value::Text(cell.to_string()),
        }
    }

    /// True when a text value would be misread by [`Value::parse_bare`] or
    /// is otherwise ambiguous without quotes.
    pub(crate) fn text_needs_quotes(text: &str) -> bool {
        text.is_empty()
            || text.trim() != text
            || looks_like_int(text)
            || text == "true"
            || text == "false"
            || text.contains(['"', ',', '|', '\n', '\r'])
    }
}

fn looks_like_int(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

/// Writes `text` between double quotes, doubling embedded quotes.
pub(crate) fn write_quoted(f: &mut impl fmt::Write, text: &str) -> fmt::Result {
    f.write_char('"')?;
    for c in text.chars() {
        if c == '"' {
            f.write_char('"')?;
        }
        f.write_char(c)?;
    }
    f.write_char('"')
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Text(t) if Value::text_needs_quotes(t) => write_quoted(f, t),
            Value::Text(t) => f.write_str(t),
        }
    }
}

impl From<i64> for Value {
    fn from(i: i64) -> Self {
        Value::Int(i)
    }
}

impl From<i32> for Value {
    fn from(i: i32) -> Self {
        Value::Int(i.into())
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}
