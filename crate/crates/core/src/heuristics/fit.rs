use std::cmp::Reverse;
use std::collections::BTreeSet;

use crate::model::{Instance, Packing, PackingBuilder};
use crate::weight::Weight;

/// First fit decreasing: items by non-increasing weight (ties in input
/// order), each into the lowest-index bin with room.
pub fn ffd_pack<W: Weight>(instance: &Instance<W>) -> Packing<W> {
    let mut order: Vec<usize> = (0..instance.len()).collect();
    order.sort_by_key(|&i| Reverse(instance.weight(i)));
    first_fit(instance, order)
}

/// First fit in input order.
pub fn ff_pack<W: Weight>(instance: &Instance<W>) -> Packing<W> {
    first_fit(instance, 0..instance.len())
}

fn first_fit<W: Weight>(
    instance: &Instance<W>,
    order: impl IntoIterator<Item = usize>,
) -> Packing<W> {
    let mut out = PackingBuilder::new(instance);
    for item in order {
        let w = instance.weight(item);
        match (0..out.bin_count()).find(|&b| out.fits(b, w)) {
            Some(b) => out.add(b, item, w),
            None => {
                out.open(item, w);
            }
        }
    }
    out.finish()
}

/// Best fit in input order: each item into the bin with the least free
/// space that still holds it, lowest index on ties.
pub fn bf_pack<W: Weight>(instance: &Instance<W>) -> Packing<W> {
    let mut out = PackingBuilder::new(instance);
    // (free, bin); full bins are dropped.
    let mut open: BTreeSet<(W, usize)> = BTreeSet::new();
    for (item, &w) in instance.weights().iter().enumerate() {
        out.count_probe();
        let bin = match open.range((w, 0)..).next().copied() {
            Some(key) => {
                open.remove(&key);
                out.add(key.1, item, w);
                key.1
            }
            None => out.open(item, w),
        };
        let free = out.free(bin);
        if !free.is_zero() {
            open.insert((free, bin));
        }
    }
    out.finish()
}
