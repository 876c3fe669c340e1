//! Deterministic text tables.

use crate::relation::Relation;

/// Renders a relation as an aligned table with columns in attribute order
/// and rows in canonical value order. The two nullary relations print as
/// `DEE` and `DUM` markers.
///
/// Text cells that could be confused with other values are quoted, so two
/// relations format identically exactly when they are equal.
pub fn format_relation(r: &Relation) -> String {
    if r.header().is_empty() {
        return if r.is_empty() {
            "DUM (0 columns, 0 rows)\n".to_string()
        } else {
            "DEE (0 columns, 1 row)\n".to_string()
        };
    }
    let names: Vec<String> = r.header().iter().map(|a| a.to_string()).collect();
    let cells: Vec<Vec<String>> = r
        .rows()
        .map(|row| row.iter().map(|v| v.to_string()).collect())
        .collect();
    let widths: Vec<usize> = names
        .iter()
        .enumerate()
        .map(|(i, n)| {
            cells
                .iter()
                .map(|row| row[i].chars().count())
                .chain([n.chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();

    let mut out = String::new();
    push_line(&mut out, &names, &widths);
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    out.push_str(&rule.join("-+-"));
    out.push('\n');
    for row in &cells {
        push_line(&mut out, row, &widths);
    }
    let n = r.len();
    out.push_str(&format!("({n} row{})\n", if n == 1 { "" } else { "s" }));
    out
}

fn push_line(out: &mut String, cells: &[String], widths: &[usize]) {
    let padded: Vec<String> = cells
        .iter()
        .zip(widths)
        .map(|(c, w)| format!("{c:<w$}"))
        .collect();
    out.push_str(padded.join(" | ").trim_end());
    out.push('\n');
}
