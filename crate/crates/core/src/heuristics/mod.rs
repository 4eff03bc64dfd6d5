//! Packing heuristics.
//!
//! [`a1_pack`] and [`a2_pack`] are the range-matching and bucketed
//! first-fit algorithms; [`ffd_pack`], [`ff_pack`] and [`bf_pack`] are the
//! classical baselines they are measured against. Every function returns a
//! feasible [`Packing`](crate::model::Packing) and is deterministic in its
//! inputs (for `a2_pack`, the instance together with the [`A2Config`]).

mod a1;
mod a2;
mod fit;
mod pool;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use a1::{a1_pack, a1_pack_traced, A1Trace, BinTag};
pub use a2::{a2_pack, a2_pack_audited, A2AuditError, A2Config};
pub use fit::{bf_pack, ff_pack, ffd_pack};

use crate::model::{Instance, Packing};
use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeuristicError {
    #[error("scale parameter r must be at least 1")]
    ZeroScale,
    #[error("unknown algorithm `{0}` (expected one of a1, a2, ffd, ff, bf)")]
    UnknownAlgorithm(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    A1,
    A2,
    Ffd,
    Ff,
    Bf,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::A1,
        Algorithm::A2,
        Algorithm::Ffd,
        Algorithm::Ff,
        Algorithm::Bf,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::A1 => "a1",
            Algorithm::A2 => "a2",
            Algorithm::Ffd => "ffd",
            Algorithm::Ff => "ff",
            Algorithm::Bf => "bf",
        }
    }

    /// Runs this algorithm. `a2` is only consulted by [`Algorithm::A2`].
    pub fn pack<W: Weight>(self, instance: &Instance<W>, a2: &A2Config) -> Packing<W> {
        match self {
            Algorithm::A1 => a1_pack(instance),
            Algorithm::A2 => a2_pack(instance, a2),
            Algorithm::Ffd => ffd_pack(instance),
            Algorithm::Ff => ff_pack(instance),
            Algorithm::Bf => bf_pack(instance),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Algorithm {
    type Err = HeuristicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.tag() == s)
            .ok_or_else(|| HeuristicError::UnknownAlgorithm(s.to_owned()))
    }
}
