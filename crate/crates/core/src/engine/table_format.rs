//! Line-oriented table text format:
//!
//! ```text
//! elements: e a b
//! row e: e a b
//! row a: a b e
//! row b: b e a
//! unary a: b
//! generators: a
//! ```
//!
//! `#` starts a comment. `unary` lines are all-or-nothing.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{EngineError, FiniteSemigroup};

fn perr(line: usize, message: impl Into<String>) -> EngineError {
    EngineError::Parse { line, message: message.into() }
}

pub fn parse_table(text: &str) -> Result<FiniteSemigroup, EngineError> {
    let mut labels: Option<Vec<String>> = None;
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut rows: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut unary: HashMap<usize, usize> = HashMap::new();
    let mut generators: Vec<usize> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) =
            line.split_once(':').ok_or_else(|| perr(lineno, "expected `key: values`"))?;
        let mut head_parts = head.split_whitespace();
        let keyword = head_parts.next().unwrap_or("");
        let subject = head_parts.next();
        if head_parts.next().is_some() {
            return Err(perr(lineno, "too many words before `:`"));
        }
        let values: Vec<&str> = rest.split_whitespace().collect();

        let lookup = |name: &str, index: &HashMap<String, usize>| {
            index.get(name).copied().ok_or_else(|| perr(lineno, format!("unknown element `{name}`")))
        };

        match (keyword, subject) {
            ("elements", None) => {
                if labels.is_some() {
                    return Err(perr(lineno, "duplicate `elements` line"));
                }
                if values.is_empty() {
                    return Err(perr(lineno, "no elements"));
                }
                for (i, v) in values.iter().enumerate() {
                    if index.insert(v.to_string(), i).is_some() {
                        return Err(perr(lineno, format!("duplicate element `{v}`")));
                    }
                }
                labels = Some(values.iter().map(|s| s.to_string()).collect());
            }
            ("row", Some(x)) => {
                let n = labels.as_ref().ok_or_else(|| perr(lineno, "`row` before `elements`"))?.len();
                let x = lookup(x, &index)?;
                if values.len() != n {
                    return Err(perr(lineno, format!("expected {n} entries, found {}", values.len())));
                }
                let row = values.iter().map(|v| lookup(v, &index)).collect::<Result<Vec<_>, _>>()?;
                if rows.insert(x, row).is_some() {
                    return Err(perr(lineno, "duplicate row"));
                }
            }
            ("unary", Some(x)) => {
                if labels.is_none() {
                    return Err(perr(lineno, "`unary` before `elements`"));
                }
                let x = lookup(x, &index)?;
                let [y] = values.as_slice() else {
                    return Err(perr(lineno, "expected one unary image"));
                };
                unary.insert(x, lookup(y, &index)?);
            }
            ("generators", None) => {
                if labels.is_none() {
                    return Err(perr(lineno, "`generators` before `elements`"));
                }
                for v in values {
                    generators.push(lookup(v, &index)?);
                }
            }
            _ => return Err(perr(lineno, format!("unrecognised line `{head}`"))),
        }
    }

    let labels = labels.ok_or_else(|| perr(0, "missing `elements` line"))?;
    let n = labels.len();
    let mut table = Vec::with_capacity(n * n);
    for (x, label) in labels.iter().enumerate() {
        let row = rows.get(&x).ok_or_else(|| perr(0, format!("missing row for `{label}`")))?;
        table.extend_from_slice(row);
    }
    let unary = if unary.is_empty() {
        None
    } else if unary.len() == n {
        Some((0..n).map(|x| unary[&x]).collect())
    } else {
        return Err(perr(0, "unary map must be given for every element or none"));
    };
    FiniteSemigroup::new(labels, table, unary, generators)
}

pub fn write_table(fs: &FiniteSemigroup) -> String {
    let mut out = String::new();
    let n = fs.len();
    let _ = writeln!(out, "elements: {}", fs.labels().join(" "));
    for x in 0..n {
        let row: Vec<&str> = (0..n).map(|y| fs.label(fs.mul(x, y))).collect();
        let _ = writeln!(out, "row {}: {}", fs.label(x), row.join(" "));
    }
    if let Some(u) = fs.unary_map() {
        for (x, &ux) in u.iter().enumerate() {
            let _ = writeln!(out, "unary {}: {}", fs.label(x), fs.label(ux));
        }
    }
    let gens: Vec<&str> = fs.generators().iter().map(|&g| fs.label(g)).collect();
    let _ = writeln!(out, "generators: {}", gens.join(" "));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z3: &str = "\
elements: e a b
row e: e a b
row a: a b e
row b: b e a   # cyclic group of order 3
unary e: e
unary a: b
unary b: a
generators: a
";

    #[test]
    fn parses_cyclic_group() {
        let fs = parse_table(Z3).unwrap();
        assert_eq!(fs.len(), 3);
        assert_eq!(fs.identity(), Some(0));
        assert_eq!(fs.generators(), &[1]);
        assert!(fs.is_completely_regular());
        assert_eq!(parse_table(&write_table(&fs)).unwrap(), fs);
    }

    #[test]
    fn rejects_non_associative_table() {
        let text = "elements: x y\nrow x: y x\nrow y: x x\n";
        assert!(matches!(parse_table(text), Err(EngineError::NotAssociative(..))));
    }

    #[test]
    fn reports_line_numbers() {
        let text = "elements: x y\nrow x: x x\nrow z: x x\n";
        match parse_table(text) {
            Err(EngineError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_table("row x: x\n").is_err());
        assert!(parse_table("elements: x y\nrow x: x x\n").is_err());
    }
}
