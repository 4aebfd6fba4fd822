//! Plain-text input formats.
//!
//! All formats ignore blank lines and everything after a `#`.
//!
//! * generator matrix: one row per line, whitespace-separated element ids;
//! * binary code: one word per line, a string of `0`/`1` (spaces allowed);
//! * array: a header line `f=<alphabet size>`, then one row per line of
//!   whitespace-separated symbols.

use crate::error::{Error, Result};
use crate::gray::{BinaryCode, BinaryWord};
use crate::oa::Array;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn int_row(line: usize, s: &str) -> Result<Vec<u8>> {
    s.split_whitespace()
        .map(|tok| tok.parse::<u8>().map_err(|_| Error::parse(line, format!("{tok:?} is not a symbol in 0..=255"))))
        .collect()
}

/// Rows of a generator matrix, checked to share a common length.
pub fn parse_generators(text: &str) -> Result<(usize, Vec<Vec<u8>>)> {
    let mut rows = Vec::new();
    let mut n = None;
    for (line, s) in content_lines(text) {
        let row = int_row(line, s)?;
        match n {
            None => n = Some(row.len()),
            Some(len) if len != row.len() => {
                return Err(Error::parse(line, format!("row has {} entries, expected {len}", row.len())))
            }
            _ => {}
        }
        rows.push(row);
    }
    n.map(|n| (n, rows)).ok_or_else(|| Error::parse(0, "no generator rows"))
}

pub fn parse_binary_code(text: &str) -> Result<BinaryCode> {
    let mut words = Vec::new();
    for (line, s) in content_lines(text) {
        words.push(s.parse::<BinaryWord>().map_err(|e| Error::parse(line, e.to_string()))?);
    }
    let m = words.first().map(BinaryWord::len).ok_or_else(|| Error::parse(0, "no codewords"))?;
    if let Some(pos) = words.iter().position(|w| w.len() != m) {
        return Err(Error::parse(0, format!("word {} has length {}, expected {m}", pos + 1, words[pos].len())));
    }
    BinaryCode::new(m, &words)
}

pub fn parse_array(text: &str) -> Result<Array> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or_else(|| Error::parse(0, "empty array file"))?;
    let f = header
        .strip_prefix("f=")
        .and_then(|v| v.trim().parse::<usize>().ok())
        .ok_or_else(|| Error::parse(line, "expected header f=<alphabet size>"))?;
    let mut rows = Vec::new();
    let mut k = None;
    for (line, s) in lines {
        let row = int_row(line, s)?;
        if let Some(&bad) = row.iter().find(|&&x| x as usize >= f) {
            return Err(Error::parse(line, format!("symbol {bad} outside alphabet of size {f}")));
        }
        match k {
            None => k = Some(row.len()),
            Some(len) if len != row.len() => {
                return Err(Error::parse(line, format!("row has {} entries, expected {len}", row.len())))
            }
            _ => {}
        }
        rows.push(row);
    }
    let k = k.ok_or_else(|| Error::parse(0, "array has no rows"))?;
    Array::new(f, k, rows)
}

/// Tab-separated table with a header row.
pub fn tsv<S: AsRef<str>>(header: &[&str], rows: impl IntoIterator<Item = Vec<S>>) -> String {
    let mut out = header.join("\t");
    out.push('\n');
    for row in rows {
        let cells: Vec<&str> = row.iter().map(AsRef::as_ref).collect();
        out.push_str(&cells.join("\t"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators() {
        let (n, rows) = parse_generators("# code\n1 1 0\n\n0 2 2  # second\n").unwrap();
        assert_eq!(n, 3);
        assert_eq!(rows, vec![vec![1, 1, 0], vec![0, 2, 2]]);
        assert!(matches!(parse_generators("1 1\n1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_generators("1 x\n"), Err(Error::Parse { line: 1, .. })));
        assert!(parse_generators("# nothing\n").is_err());
    }

    #[test]
    fn binary() {
        let c = parse_binary_code("0000\n0101\n1111\n10 10\n").unwrap();
        assert_eq!((c.length(), c.size()), (4, 4));
        assert!(parse_binary_code("01\n012\n").is_err());
        assert!(parse_binary_code("01\n011\n").is_err());
    }

    #[test]
    fn arrays() {
        let a = parse_array("f=3\n0 1\n1 2\n2 0\n").unwrap();
        assert_eq!((a.alphabet(), a.columns(), a.rows()), (3, 2, 3));
        assert!(parse_array("0 1\n").is_err());
        assert!(matches!(parse_array("f=2\n0 2\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn tsv_layout() {
        assert_eq!(tsv(&["a", "b"], vec![vec!["1", "2"]]), "a\tb\n1\t2\n");
    }
}
