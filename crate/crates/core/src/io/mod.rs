//! Instance formats, instance generation and result serialization.

mod document;
mod generate;
mod orlib;
mod plain;
mod report;

use std::collections::HashSet;

use thiserror::Error;

pub use document::{read_packing, split_documents, write_packing, DocumentError, FORMAT_VERSION};
pub use generate::{generate_uniform, GenerateError};
pub use orlib::{parse_orlib, write_orlib};
pub use plain::{parse_plain, write_plain};
pub use report::{write_csv, BenchRecord, CSV_HEADER};

use crate::model::Instance;
use crate::weight::Weight;

/// Error while reading an instance file. Token positions are 1-based and
/// count whitespace-separated tokens from the start of the stream.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("problem {problem}: input ended at token {position}, expected {expected}")]
    UnexpectedEnd {
        problem: usize,
        position: usize,
        expected: &'static str,
    },
    #[error("problem {problem}, token {position}: `{token}` is not a valid {expected}")]
    NotAnInteger {
        problem: usize,
        position: usize,
        token: String,
        expected: &'static str,
    },
    #[error(
        "problem {problem}, token {position}: weight exceeds capacity ({weight} > {capacity})"
    )]
    WeightExceedsCapacity {
        problem: usize,
        position: usize,
        weight: String,
        capacity: String,
    },
    #[error("problem {problem}, token {position}: weight must be positive")]
    ZeroWeight { problem: usize, position: usize },
    #[error("problem {problem}, token {position}: capacity must be positive")]
    ZeroCapacity { problem: usize, position: usize },
    #[error("token {position}: unexpected trailing token `{token}`")]
    TrailingTokens { position: usize, token: String },
    #[error("instance set is empty")]
    EmptySet,
    #[error("problem {problem}: duplicate instance name `{name}`")]
    DuplicateName { problem: usize, name: String },
}

/// A named group of instances, such as one OR-Library data file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceSet<W> {
    set_name: String,
    instances: Vec<Instance<W>>,
}

impl<W: Weight> InstanceSet<W> {
    pub fn new(
        set_name: impl Into<String>,
        instances: Vec<Instance<W>>,
    ) -> Result<Self, ParseError> {
        if instances.is_empty() {
            return Err(ParseError::EmptySet);
        }
        let mut names = HashSet::new();
        for (problem, inst) in instances.iter().enumerate() {
            if !names.insert(inst.name()) {
                return Err(ParseError::DuplicateName {
                    problem,
                    name: inst.name().to_owned(),
                });
            }
        }
        Ok(Self {
            set_name: set_name.into(),
            instances,
        })
    }

    pub fn set_name(&self) -> &str {
        &self.set_name
    }

    pub fn instances(&self) -> &[Instance<W>] {
        &self.instances
    }

    pub fn into_instances(self) -> Vec<Instance<W>> {
        self.instances
    }

    pub fn renamed(mut self, set_name: impl Into<String>) -> Self {
        self.set_name = set_name.into();
        self
    }
}

/// Whitespace tokenizer that remembers positions for error messages.
struct Tokens<'a> {
    inner: std::str::SplitWhitespace<'a>,
    position: usize,
    problem: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            inner: text.split_whitespace(),
            position: 0,
            problem: 0,
        }
    }

    fn next_raw(&mut self, expected: &'static str) -> Result<&'a str, ParseError> {
        self.position += 1;
        self.inner.next().ok_or(ParseError::UnexpectedEnd {
            problem: self.problem,
            position: self.position,
            expected,
        })
    }

    fn next_parsed<T: std::str::FromStr>(
        &mut self,
        expected: &'static str,
    ) -> Result<T, ParseError> {
        let token = self.next_raw(expected)?;
        token.parse().map_err(|_| ParseError::NotAnInteger {
            problem: self.problem,
            position: self.position,
            token: token.to_owned(),
            expected,
        })
    }

    fn capacity<W: Weight>(&mut self) -> Result<W, ParseError> {
        let c: W = self.next_parsed("capacity")?;
        if c.is_zero() {
            return Err(ParseError::ZeroCapacity {
                problem: self.problem,
                position: self.position,
            });
        }
        Ok(c)
    }

    fn weights<W: Weight>(&mut self, n: usize, capacity: W) -> Result<Vec<W>, ParseError> {
        let mut weights = Vec::with_capacity(n.min(1 << 20));
        for _ in 0..n {
            let w: W = self.next_parsed("weight")?;
            if w.is_zero() {
                return Err(ParseError::ZeroWeight {
                    problem: self.problem,
                    position: self.position,
                });
            }
            if w > capacity {
                return Err(ParseError::WeightExceedsCapacity {
                    problem: self.problem,
                    position: self.position,
                    weight: w.to_string(),
                    capacity: capacity.to_string(),
                });
            }
            weights.push(w);
        }
        Ok(weights)
    }

    fn finish(mut self) -> Result<(), ParseError> {
        match self.inner.next() {
            None => Ok(()),
            Some(token) => Err(ParseError::TrailingTokens {
                position: self.position + 1,
                token: token.to_owned(),
            }),
        }
    }
}
