//! One-dimensional bin packing.
//!
//! Items carry positive integer weights and are packed into bins of a common
//! integer capacity. The crate provides:
//!
//! * [`heuristics`]: the four-range matching heuristic ([`heuristics::a1_pack`]),
//!   the bucketed linear-time first-fit variant ([`heuristics::a2_pack`]) and the
//!   classical first-fit, best-fit and first-fit-decreasing baselines;
//! * [`bounds`]: the continuous lower bound, an exact branch-and-bound solver
//!   for small instances and the ratio used to score heuristics;
//! * [`io`]: OR-Library and plain instance formats, a seeded generator,
//!   packing documents and CSV benchmark records;
//! * [`cli`]: the `binpack` command line.
//!
//! Everything is generic over the [`Weight`] type. The aliases below fix it
//! to `u64`, which is what the command line uses.

pub mod bounds;
pub mod cli;
pub mod heuristics;
pub mod io;
pub mod model;
mod weight;

pub use weight::Weight;

pub use heuristics::{A2Config, Algorithm};
pub use model::{RangeClass, Ratio, Verdict, Violation};

/// Instance with `u64` weights.
pub type Instance = model::Instance<u64>;
/// Packing with `u64` weights.
pub type Packing = model::Packing<u64>;
/// Bin with `u64` weights.
pub type Bin = model::Bin<u64>;
/// Instance set with `u64` weights.
pub type InstanceSet = io::InstanceSet<u64>;
