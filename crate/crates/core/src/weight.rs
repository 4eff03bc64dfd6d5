//! Integer weight types.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{PrimInt, Unsigned};
use rand::distributions::uniform::SampleUniform;

/// An unsigned integer type usable as an item weight or bin capacity.
///
/// All arithmetic that can exceed a single capacity (sums over many items,
/// products with the scale parameter) is carried out after widening to
/// `u128`, so every implementor is safe up to its own `MAX`.
pub trait Weight:
    PrimInt + Unsigned + FromStr + Display + Debug + Hash + SampleUniform + Send + Sync + 'static
{
    /// Lossless widening used for overflow-free comparisons.
    #[inline]
    fn widen(self) -> u128 {
        // PrimInt guarantees ToPrimitive; every unsigned primitive fits in u128.
        self.to_u128().expect("unsigned primitive fits in u128")
    }
}

impl<T> Weight for T where
    T: PrimInt
        + Unsigned
        + FromStr
        + Display
        + Debug
        + Hash
        + SampleUniform
        + Send
        + Sync
        + 'static
{
}

/// `ceil(numer / denom)` for `denom > 0`.
#[inline]
pub(crate) fn ceil_div(numer: u128, denom: u128) -> u128 {
    debug_assert!(denom > 0);
    numer.div_ceil(denom)
}

/// Index of the size class `(j·C/r, (j+1)·C/r]` containing `value`, i.e.
/// `ceil(value·r/C) − 1`. Requires `1 ≤ value ≤ capacity`.
#[inline]
pub(crate) fn scaled_class<W: Weight>(value: W, capacity: W, r: usize) -> usize {
    let v = value.widen();
    let c = capacity.widen();
    debug_assert!(v >= 1 && v <= c);
    (ceil_div(v * r as u128, c) - 1) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaled_class_boundaries() {
        // C=20, r=10: classes have width 2, upper end inclusive.
        assert_eq!(scaled_class(1u32, 20, 10), 0);
        assert_eq!(scaled_class(2u32, 20, 10), 0);
        assert_eq!(scaled_class(3u32, 20, 10), 1);
        assert_eq!(scaled_class(20u32, 20, 10), 9);
        assert_eq!(scaled_class(17u32, 20, 10), 8);
        assert_eq!(scaled_class(u64::MAX, u64::MAX, 1000), 999);
    }

    #[test]
    fn scaled_class_single_class() {
        for v in 1..=37u16 {
            assert_eq!(scaled_class(v, 37, 1), 0);
        }
    }
}
