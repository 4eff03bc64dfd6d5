use std::collections::{BTreeMap, VecDeque};

use crate::weight::Weight;

/// Multiset of not-yet-packed items keyed by weight. Equal weights are
/// handed out in ascending input index.
#[derive(Debug, Default)]
pub(super) struct ItemPool<W> {
    by_weight: BTreeMap<W, VecDeque<usize>>,
    len: usize,
}

impl<W: Weight> ItemPool<W> {
    pub fn new() -> Self {
        Self {
            by_weight: BTreeMap::new(),
            len: 0,
        }
    }

    /// Items must be inserted in ascending index order.
    pub fn insert(&mut self, item: usize, weight: W) {
        let slot = self.by_weight.entry(weight).or_default();
        debug_assert!(slot.back().is_none_or(|&last| last < item));
        slot.push_back(item);
        self.len += 1;
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Removes and returns the heaviest item with weight `<= limit`.
    pub fn take_largest_fitting(&mut self, limit: W) -> Option<(usize, W)> {
        let (&weight, slot) = self.by_weight.range_mut(..=limit).next_back()?;
        let item = slot.pop_front().expect("empty slots are removed");
        if slot.is_empty() {
            self.by_weight.remove(&weight);
        }
        self.len -= 1;
        Some((item, weight))
    }

    pub fn take_largest(&mut self) -> Option<(usize, W)> {
        let limit = *self.by_weight.keys().next_back()?;
        self.take_largest_fitting(limit)
    }

    /// Remaining items from heaviest to lightest, ties by index.
    pub fn drain_descending(self) -> impl Iterator<Item = (usize, W)> {
        self.by_weight
            .into_iter()
            .rev()
            .flat_map(|(w, items)| items.into_iter().map(move |i| (i, w)))
    }
}
