use std::fmt::Write;

use super::{ParseError, Tokens};
use crate::model::Instance;
use crate::weight::Weight;

/// Parses the plain layout: capacity, item count, then one weight per line.
pub fn parse_plain<W: Weight>(name: &str, text: &str) -> Result<Instance<W>, ParseError> {
    let mut tokens = Tokens::new(text);
    let capacity: W = tokens.capacity()?;
    let n: usize = tokens.next_parsed("item count")?;
    let weights = tokens.weights(n, capacity)?;
    tokens.finish()?;
    Ok(Instance::new(name, capacity, weights).expect("weights validated while parsing"))
}

pub fn write_plain<W: Weight>(instance: &Instance<W>) -> String {
    let mut out = String::new();
    writeln!(out, "{}", instance.capacity()).unwrap();
    writeln!(out, "{}", instance.len()).unwrap();
    for w in instance.weights() {
        writeln!(out, "{w}").unwrap();
    }
    out
}
