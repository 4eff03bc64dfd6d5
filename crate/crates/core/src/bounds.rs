//! Reference bin counts: the continuous lower bound and an exact solver
//! for small instances.

use std::cmp::Reverse;

use crate::heuristics::ffd_pack;
use crate::model::{Instance, ModelError, Ratio};
use crate::weight::{ceil_div, Weight};

/// `ceil(total weight / capacity)`; 0 only for the empty instance.
pub fn lower_bound_l1<W: Weight>(instance: &Instance<W>) -> usize {
    ceil_div(instance.total_weight(), instance.capacity().widen()) as usize
}

/// `algorithm_bins / reference_bins`.
pub fn ratio(algorithm_bins: usize, reference_bins: usize) -> Result<Ratio, ModelError> {
    Ratio::new(algorithm_bins, reference_bins)
}

pub const DEFAULT_NODE_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactStatus {
    Solved { optimum: usize },
    Timeout,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactResult {
    pub status: ExactStatus,
    pub nodes: u64,
}

impl ExactResult {
    pub fn optimum(&self) -> Option<usize> {
        match self.status {
            ExactStatus::Solved { optimum } => Some(optimum),
            ExactStatus::Timeout => None,
        }
    }
}

/// Minimum bin count by depth-first branch and bound.
///
/// Items are placed heaviest first, each into every open bin with room
/// (bins of equal free space are tried once) or into a new bin. A node is
/// cut when its bins plus the bins needed for weight that cannot fit into
/// the usable free space reach the incumbent, which starts at first fit
/// decreasing. An item that completes a bin exactly is placed there without
/// branching. The search stops at the L1 bound. Exceeding `node_limit`
/// nodes yields [`ExactStatus::Timeout`].
pub fn exact_min_bins<W: Weight>(instance: &Instance<W>, node_limit: u64) -> ExactResult {
    let lower = lower_bound_l1(instance);
    let incumbent = ffd_pack(instance).bin_count();
    if incumbent == lower {
        return ExactResult {
            status: ExactStatus::Solved { optimum: incumbent },
            nodes: 0,
        };
    }

    let mut items: Vec<u128> = instance.weights().iter().map(|w| w.widen()).collect();
    items.sort_unstable_by_key(|&w| Reverse(w));
    let mut suffix = vec![0u128; items.len() + 1];
    for i in (0..items.len()).rev() {
        suffix[i] = suffix[i + 1] + items[i];
    }

    let mut search = Search {
        capacity: instance.capacity().widen(),
        items,
        suffix,
        loads: Vec::new(),
        incumbent,
        lower,
        nodes: 0,
        node_limit,
    };
    let status = match search.descend(0) {
        Ok(()) => ExactStatus::Solved {
            optimum: search.incumbent,
        },
        Err(OutOfNodes) => ExactStatus::Timeout,
    };
    ExactResult {
        status,
        nodes: search.nodes,
    }
}

struct OutOfNodes;

struct Search {
    capacity: u128,
    items: Vec<u128>,
    suffix: Vec<u128>,
    loads: Vec<u128>,
    incumbent: usize,
    lower: usize,
    nodes: u64,
    node_limit: u64,
}

impl Search {
    fn done(&self) -> bool {
        self.incumbent == self.lower
    }

    fn descend(&mut self, depth: usize) -> Result<(), OutOfNodes> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(OutOfNodes);
        }
        if depth == self.items.len() {
            self.incumbent = self.incumbent.min(self.loads.len());
            return Ok(());
        }

        let open = self.loads.len();
        // Free space below the lightest remaining item can never be used.
        let smallest = *self.items.last().expect("depth < len");
        let usable: u128 = self
            .loads
            .iter()
            .map(|&l| self.capacity - l)
            .filter(|&f| f >= smallest)
            .sum();
        let overflow = self.suffix[depth].saturating_sub(usable);
        if open + ceil_div(overflow, self.capacity) as usize >= self.incumbent {
            return Ok(());
        }

        let w = self.items[depth];
        // Completing a bin exactly dominates every other choice for `w`.
        if let Some(b) = self.loads.iter().position(|&l| l + w == self.capacity) {
            self.loads[b] += w;
            let r = self.descend(depth + 1);
            self.loads[b] -= w;
            return r;
        }
        let mut tried: Vec<u128> = Vec::with_capacity(open);
        for b in 0..open {
            let load = self.loads[b];
            if load + w > self.capacity || tried.contains(&load) {
                continue;
            }
            tried.push(load);
            self.loads[b] += w;
            let r = self.descend(depth + 1);
            self.loads[b] -= w;
            r?;
            if self.done() {
                return Ok(());
            }
        }
        if open + 1 < self.incumbent {
            self.loads.push(w);
            let r = self.descend(depth + 1);
            self.loads.pop();
            r?;
        }
        Ok(())
    }
}
