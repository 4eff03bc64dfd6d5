use crate::model::{classify_unchecked, Instance, Packing, PackingBuilder, RangeClass};
use crate::weight::Weight;

use super::pool::ItemPool;

/// How a bin came to be filled by [`a1_pack`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinTag {
    /// A single `L` item.
    Large,
    /// An `M2` item matched with an `M1` item.
    MatchedPair,
    /// Two `M1` items.
    M1Pair,
    /// The unpaired `M1` item left when their count is odd.
    M1Leftover,
    /// One `M2` item plus zero or more `S` items.
    M2WithSmall,
    /// Only `S` items; closed because no remaining `S` item fit.
    Small,
    /// The last `S`-only bin, closed because `S` ran out.
    FinalSmall,
}

/// Construction record of an [`a1_pack`] run.
#[derive(Debug, Clone, Default)]
pub struct A1Trace {
    /// One tag per output bin.
    pub tags: Vec<BinTag>,
    /// `(m2_item, m1_item)` pairs formed while matching.
    pub matched: Vec<(usize, usize)>,
    /// `M1` items that were still unmatched once matching finished.
    pub unmatched_m1: Vec<usize>,
}

/// Packs by size range: `L` items alone, each `M2` item with the heaviest
/// `M1` item it fits with, leftover `M1` items two by two, leftover `M2`
/// items topped up with `S` items, then the remaining `S` items.
///
/// Topping up always takes the heaviest remaining `S` item that fits, so a
/// bin is closed exactly when no `S` item fits any more.
pub fn a1_pack<W: Weight>(instance: &Instance<W>) -> Packing<W> {
    a1_pack_traced(instance).0
}

pub fn a1_pack_traced<W: Weight>(instance: &Instance<W>) -> (Packing<W>, A1Trace) {
    let capacity = instance.capacity();
    let mut out = PackingBuilder::new(instance);
    let mut trace = A1Trace::default();

    let mut small = ItemPool::new();
    let mut m1 = ItemPool::new();
    let mut m2 = Vec::new();
    for (item, &w) in instance.weights().iter().enumerate() {
        match classify_unchecked(w, capacity) {
            RangeClass::L => {
                out.open(item, w);
                trace.tags.push(BinTag::Large);
            }
            RangeClass::M2 => m2.push(item),
            RangeClass::M1 => m1.insert(item, w),
            RangeClass::S => small.insert(item, w),
        }
    }
    // Stable: equal weights keep input order.
    m2.sort_by_key(|&i| std::cmp::Reverse(instance.weight(i)));

    let mut unmatched_m2 = Vec::new();
    for &a in &m2 {
        let wa = instance.weight(a);
        if m1.is_empty() {
            unmatched_m2.push(a);
            continue;
        }
        out.count_probe();
        match m1.take_largest_fitting(capacity - wa) {
            Some((b, wb)) => {
                let bin = out.open(a, wa);
                out.add(bin, b, wb);
                trace.tags.push(BinTag::MatchedPair);
                trace.matched.push((a, b));
            }
            None => unmatched_m2.push(a),
        }
    }

    let mut rest_m1 = m1.drain_descending();
    while let Some((first, w1)) = rest_m1.next() {
        trace.unmatched_m1.push(first);
        let bin = out.open(first, w1);
        match rest_m1.next() {
            Some((second, w2)) => {
                trace.unmatched_m1.push(second);
                out.add(bin, second, w2);
                trace.tags.push(BinTag::M1Pair);
            }
            None => trace.tags.push(BinTag::M1Leftover),
        }
    }

    for &a in &unmatched_m2 {
        let bin = out.open(a, instance.weight(a));
        top_up(&mut out, bin, &mut small);
        trace.tags.push(BinTag::M2WithSmall);
    }

    while let Some((item, w)) = small.take_largest() {
        let bin = out.open(item, w);
        top_up(&mut out, bin, &mut small);
        trace.tags.push(if small.is_empty() {
            BinTag::FinalSmall
        } else {
            BinTag::Small
        });
    }

    (out.finish(), trace)
}

fn top_up<W: Weight>(out: &mut PackingBuilder<W>, bin: usize, small: &mut ItemPool<W>) {
    while !small.is_empty() {
        out.count_probe();
        match small.take_largest_fitting(out.free(bin)) {
            Some((item, w)) => out.add(bin, item, w),
            None => break,
        }
    }
}
