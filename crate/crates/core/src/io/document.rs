//! Packing documents.
//!
//! ```text
//! format: 1
//! instance: t01
//! capacity: 10
//! bin_count: 2
//! probes: 1
//! bin 0
//!   load: 10
//!   items: 0 1
//!   weights: 5 5
//! bin 1
//!   load: 4
//!   items: 2
//!   weights: 4
//! ```
//!
//! Several documents may be concatenated; each starts with its `format`
//! line.

use std::fmt::Write;

use thiserror::Error;

use crate::model::{Bin, Instance, Packing};
use crate::weight::Weight;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("line {line}: expected `{expected}`")]
    Expected { line: usize, expected: String },
    #[error("line {line}: bad number `{token}`")]
    BadNumber { line: usize, token: String },
    #[error("unsupported format version {0}")]
    Version(String),
    #[error("document is for instance `{found}`, not `{expected}`")]
    WrongInstance { expected: String, found: String },
    #[error("declared {declared} bins but found {found}")]
    BinCount { declared: usize, found: usize },
}

pub fn write_packing<W: Weight>(packing: &Packing<W>, instance: &Instance<W>) -> String {
    let mut out = String::new();
    writeln!(out, "format: {FORMAT_VERSION}").unwrap();
    writeln!(out, "instance: {}", instance.name()).unwrap();
    writeln!(out, "capacity: {}", instance.capacity()).unwrap();
    writeln!(out, "bin_count: {}", packing.bin_count()).unwrap();
    writeln!(out, "probes: {}", packing.probes()).unwrap();
    for (b, bin) in packing.bins().iter().enumerate() {
        writeln!(out, "bin {b}").unwrap();
        writeln!(out, "  load: {}", bin.load).unwrap();
        writeln!(out, "  items:{}", join(bin.items.iter())).unwrap();
        let weights = bin.items.iter().map(|&i| instance.weights().get(i));
        writeln!(out, "  weights:{}", join(weights.flatten())).unwrap();
    }
    out
}

fn join<T: std::fmt::Display>(xs: impl Iterator<Item = T>) -> String {
    xs.map(|x| format!(" {x}")).collect()
}

/// Splits concatenated documents at each `format:` line.
pub fn split_documents(text: &str) -> Vec<&str> {
    let mut starts: Vec<usize> = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        if line.starts_with("format:") {
            starts.push(offset);
        }
        offset += line.len();
    }
    starts
        .iter()
        .enumerate()
        .map(|(k, &s)| &text[s..starts.get(k + 1).copied().unwrap_or(text.len())])
        .collect()
}

/// Reads one document back into a [`Packing`] of `instance`. Loads are
/// taken as written, so a tampered document fails validation rather than
/// being silently repaired.
pub fn read_packing<W: Weight>(
    text: &str,
    instance: &Instance<W>,
) -> Result<Packing<W>, DocumentError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));

    let version = field(&mut lines, "format")?;
    if version.1 != FORMAT_VERSION.to_string() {
        return Err(DocumentError::Version(version.1.to_owned()));
    }
    let name = field(&mut lines, "instance")?.1;
    if name != instance.name() {
        return Err(DocumentError::WrongInstance {
            expected: instance.name().to_owned(),
            found: name.to_owned(),
        });
    }
    field(&mut lines, "capacity")?;
    let declared: usize = number(field(&mut lines, "bin_count")?)?;
    let probes: u64 = number(field(&mut lines, "probes")?)?;

    let mut bins = Vec::with_capacity(declared);
    let mut rest = lines.filter(|(_, l)| !l.is_empty()).peekable();
    while let Some((line, header)) = rest.next() {
        if !header.starts_with("bin ") {
            return Err(DocumentError::Expected {
                line,
                expected: format!("bin {}", bins.len()),
            });
        }
        let load: W = number(field(&mut rest, "load")?)?;
        let (line, items) = field(&mut rest, "items")?;
        let items = items
            .split_whitespace()
            .map(|t| number((line, t)))
            .collect::<Result<Vec<usize>, _>>()?;
        field(&mut rest, "weights")?;
        bins.push(Bin { items, load });
    }
    if bins.len() != declared {
        return Err(DocumentError::BinCount {
            declared,
            found: bins.len(),
        });
    }
    Ok(Packing::from_parts(instance, bins, probes))
}

fn field<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    key: &str,
) -> Result<(usize, &'a str), DocumentError> {
    let (line, text) = lines.next().ok_or_else(|| DocumentError::Expected {
        line: 0,
        expected: format!("{key}:"),
    })?;
    text.strip_prefix(key)
        .and_then(|t| t.strip_prefix(':'))
        .map(|v| (line, v.trim()))
        .ok_or_else(|| DocumentError::Expected {
            line,
            expected: format!("{key}:"),
        })
}

fn number<T: std::str::FromStr>((line, token): (usize, &str)) -> Result<T, DocumentError> {
    token.parse().map_err(|_| DocumentError::BadNumber {
        line,
        token: token.to_owned(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heuristics::a1_pack;
    use crate::model::validate_packing;

    #[test]
    fn a1_example_document() {
        let inst = Instance::new("ex", 20u64, vec![16, 12, 7, 6, 5, 1]).unwrap();
        let p = a1_pack(&inst);
        let doc = write_packing(&p, &inst);
        assert_eq!(doc.matches("\nbin ").count(), 3);
        let loads: Vec<&str> = doc
            .lines()
            .filter_map(|l| l.trim().strip_prefix("load: "))
            .collect();
        assert_eq!(loads, vec!["16", "19", "12"]);
        assert_eq!(read_packing(&doc, &inst).unwrap(), p);
    }

    #[test]
    fn empty_and_single() {
        let inst = Instance::new("e", 10u64, vec![]).unwrap();
        let doc = write_packing(&a1_pack(&inst), &inst);
        assert!(doc.contains("bin_count: 0\n"));
        assert_eq!(read_packing(&doc, &inst).unwrap().bin_count(), 0);

        let inst = Instance::new("one", 10u64, vec![4]).unwrap();
        let doc = write_packing(&a1_pack(&inst), &inst);
        assert_eq!(doc.matches("bin 0\n").count(), 1);
        assert!(!doc.contains("bin 1\n"));
    }

    #[test]
    fn tampered_load_fails_validation() {
        let inst = Instance::new("t", 10u64, vec![5, 4]).unwrap();
        let doc = write_packing(&a1_pack(&inst), &inst).replace("load: 9", "load: 8");
        let p = read_packing(&doc, &inst).unwrap();
        assert!(!validate_packing(&inst, &p).unwrap().is_valid());
    }

    #[test]
    fn malformed_documents() {
        let inst = Instance::new("t", 10u64, vec![5]).unwrap();
        let doc = write_packing(&a1_pack(&inst), &inst);
        assert!(matches!(
            read_packing(&doc.replace("format: 1", "format: 2"), &inst),
            Err(DocumentError::Version(_))
        ));
        assert!(matches!(
            read_packing(&doc.replace("bin_count: 1", "bin_count: 2"), &inst),
            Err(DocumentError::BinCount { .. })
        ));
        let other = Instance::new("u", 10u64, vec![5]).unwrap();
        assert!(matches!(
            read_packing(&doc, &other),
            Err(DocumentError::WrongInstance { .. })
        ));
        assert!(read_packing("", &inst).is_err());
    }

    #[test]
    fn split_concatenated() {
        let a = Instance::new("a", 10u64, vec![5]).unwrap();
        let b = Instance::new("b", 10u64, vec![6, 6]).unwrap();
        let text = write_packing(&a1_pack(&a), &a) + &write_packing(&a1_pack(&b), &b);
        let docs = split_documents(&text);
        assert_eq!(docs.len(), 2);
        assert_eq!(read_packing(docs[1], &b).unwrap().bin_count(), 2);
    }
}
