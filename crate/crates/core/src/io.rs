//! Relation files: CSV and JSON.
//!
//! CSV: the first line holds attribute names, every following line one row.
//! Unquoted cells that are an optional `-` plus digits become integers,
//! `true`/`false` become booleans and everything else (including any
//! double-quoted cell) is text. JSON: `{"header": [...], "rows": [[...]]}`
//! with row values matched positionally to the header.

use std::path::Path;

use serde_json::json;
use thiserror::Error;

use crate::error::Error;
use crate::relation::Relation;
use crate::value::{write_quoted, Attr, Value};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Csv { line: usize, message: String },
    #[error("json: {0}")]
    Json(String),
    #[error(transparent)]
    Relation(#[from] Error),
}

/// One CSV cell: its text and whether it was double-quoted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Cell {
    pub text: String,
    pub quoted: bool,
}

/// Splits one CSV line on commas, honouring double quotes (`""` escapes a
/// quote inside a quoted cell). Unquoted cells are trimmed.
pub(crate) fn split_csv_line(line: &str) -> Result<Vec<Cell>, String> {
    let mut cells = Vec::new();
    let mut chars = line.chars().peekable();
    loop {
        while chars.peek().is_some_and(|c| *c == ' ' || *c == '\t') {
            chars.next();
        }
        if chars.peek() == Some(&'"') {
            chars.next();
            let mut text = String::new();
            loop {
                match chars.next() {
                    Some('"') if chars.peek() == Some(&'"') => {
                        chars.next();
                        text.push('"');
                    }
                    Some('"') => break,
                    Some(c) => text.push(c),
                    None => return Err("unterminated quoted cell".into()),
                }
            }
            while chars.peek().is_some_and(|c| *c == ' ' || *c == '\t') {
                chars.next();
            }
            match chars.next() {
                None => {
                    cells.push(Cell { text, quoted: true });
                    return Ok(cells);
                }
                Some(',') => cells.push(Cell { text, quoted: true }),
                Some(c) => return Err(format!("unexpected {c:?} after quoted cell")),
            }
        } else {
            let mut text = String::new();
            let mut ended = true;
            for c in chars.by_ref() {
                if c == ',' {
                    ended = false;
                    break;
                }
                text.push(c);
            }
            cells.push(Cell {
                text: text.trim().to_string(),
                quoted: false,
            });
            if ended {
                return Ok(cells);
            }
        }
    }
}

/// Non-blank lines with 1-based line numbers.
pub(crate) fn csv_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty())
}

pub fn relation_from_csv(text: &str) -> Result<Relation, LoadError> {
    let mut lines = csv_lines(text);
    let Some((line, head)) = lines.next() else {
        return Err(LoadError::Csv {
            line: 1,
            message: "missing header line".into(),
        });
    };
    let csv_err = |line, message| LoadError::Csv { line, message };
    let names = split_csv_line(head).map_err(|m| csv_err(line, m))?;
    let attrs: Vec<Attr> = names
        .into_iter()
        .map(|c| Attr::user(c.text))
        .collect::<Result<_, _>>()?;
    let mut rows = Vec::new();
    for (line, l) in lines {
        let cells = split_csv_line(l).map_err(|m| csv_err(line, m))?;
        if cells.len() != attrs.len() {
            return Err(csv_err(
                line,
                format!("expected {} cells, found {}", attrs.len(), cells.len()),
            ));
        }
        rows.push(
            cells
                .into_iter()
                .map(|c| {
                    if c.quoted {
                        Value::Text(c.text)
                    } else {
                        Value::parse_bare(&c.text)
                    }
                })
                .collect(),
        );
    }
    Ok(Relation::from_positional(&attrs, rows)?)
}

/// Writes a relation as CSV in canonical order; text that would otherwise be
/// read back as another type is quoted.
pub fn relation_to_csv(r: &Relation) -> String {
    let mut out = String::new();
    let names: Vec<&str> = r.header().iter().map(|a| a.as_str()).collect();
    out.push_str(&names.join(","));
    out.push('\n');
    for row in r.rows() {
        for (i, v) in row.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            match v {
                Value::Text(t) if Value::text_needs_quotes(t) => {
                    write_quoted(&mut out, t).expect("writing to a String");
                }
                other => out.push_str(&other.to_string()),
            }
        }
        out.push('\n');
    }
    out
}

pub fn relation_from_json(text: &str) -> Result<Relation, LoadError> {
    let doc: serde_json::Value =
        serde_json::from_str(text).map_err(|e| LoadError::Json(e.to_string()))?;
    let header = doc
        .get("header")
        .and_then(|h| h.as_array())
        .ok_or_else(|| LoadError::Json("missing \"header\" array".into()))?;
    let attrs = header
        .iter()
        .map(|h| {
            h.as_str()
                .ok_or_else(|| LoadError::Json(format!("header entry {h} is not a string")))
                .and_then(|s| Attr::user(s).map_err(LoadError::from))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let rows = doc
        .get("rows")
        .and_then(|r| r.as_array())
        .ok_or_else(|| LoadError::Json("missing \"rows\" array".into()))?;
    let mut body = Vec::with_capacity(rows.len());
    for row in rows {
        let cells = row
            .as_array()
            .ok_or_else(|| LoadError::Json(format!("row {row} is not an array")))?;
        body.push(cells.iter().map(json_value).collect::<Result<Vec<_>, _>>()?);
    }
    Ok(Relation::from_positional(&attrs, body)?)
}

fn json_value(v: &serde_json::Value) -> Result<Value, LoadError> {
    match v {
        serde_json::Value::Bool(b) => Ok(Value::Bool(*b)),
        serde_json::Value::String(s) => Ok(Value::Text(s.clone())),
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(Value::Int)
            .ok_or_else(|| LoadError::Json(format!("{n} is not a 64-bit integer"))),
        other => Err(LoadError::Json(format!("unsupported value {other}"))),
    }
}

pub fn relation_to_json(r: &Relation) -> String {
    let header: Vec<&str> = r.header().iter().map(|a| a.as_str()).collect();
    let rows: Vec<serde_json::Value> = r
        .rows()
        .map(|row| {
            row.iter()
                .map(|v| match v {
                    Value::Int(i) => json!(i),
                    Value::Text(t) => json!(t),
                    Value::Bool(b) => json!(b),
                })
                .collect()
        })
        .collect();
    json!({ "header": header, "rows": rows }).to_string()
}

/// Loads a relation file, choosing JSON for a `.json` extension and CSV
/// otherwise.
pub fn load_relation(path: &Path) -> Result<Relation, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        relation_from_json(&text)
    } else {
        relation_from_csv(&text)
    }
}
