//! Problem and solution types shared by every algorithm.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("capacity must be at least 1")]
    ZeroCapacity,
    #[error("item {index}: weight {weight} outside [1, {capacity}]")]
    WeightOutOfRange {
        index: usize,
        weight: String,
        capacity: String,
    },
    #[error("packing belongs to a different instance")]
    InstanceMismatch,
    #[error("ratio reference must be at least 1")]
    ZeroReference,
}

/// Opaque identity of an [`Instance`], derived from its name, capacity and
/// weights. Only meaningful within one process.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InstanceId(u64);

/// A bin packing instance: a capacity and a list of item weights in
/// `[1, capacity]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance<W> {
    name: String,
    capacity: W,
    weights: Vec<W>,
    best_known: Option<usize>,
    id: InstanceId,
}

impl<W: Weight> Instance<W> {
    pub fn new(name: impl Into<String>, capacity: W, weights: Vec<W>) -> Result<Self, ModelError> {
        if capacity.is_zero() {
            return Err(ModelError::ZeroCapacity);
        }
        if let Some((index, &weight)) = weights
            .iter()
            .enumerate()
            .find(|(_, &w)| w.is_zero() || w > capacity)
        {
            return Err(ModelError::WeightOutOfRange {
                index,
                weight: weight.to_string(),
                capacity: capacity.to_string(),
            });
        }
        let name = name.into();
        let id = Self::fingerprint(&name, capacity, &weights);
        Ok(Self {
            name,
            capacity,
            weights,
            best_known: None,
            id,
        })
    }

    /// Attaches the reference bin count shipped with the data source.
    pub fn with_best_known(mut self, best_known: Option<usize>) -> Self {
        self.best_known = best_known;
        self
    }

    fn fingerprint(name: &str, capacity: W, weights: &[W]) -> InstanceId {
        let mut h = DefaultHasher::new();
        name.hash(&mut h);
        capacity.hash(&mut h);
        weights.hash(&mut h);
        InstanceId(h.finish())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn capacity(&self) -> W {
        self.capacity
    }

    pub fn weights(&self) -> &[W] {
        &self.weights
    }

    pub fn weight(&self, item: usize) -> W {
        self.weights[item]
    }

    pub fn best_known(&self) -> Option<usize> {
        self.best_known
    }

    pub fn id(&self) -> InstanceId {
        self.id
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn total_weight(&self) -> u128 {
        self.weights.iter().map(|w| w.widen()).sum()
    }
}

/// One bin of a packing: the item indices it holds and their total weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bin<W> {
    pub items: Vec<usize>,
    pub load: W,
}

/// The result of packing an instance.
///
/// `probes` counts the capacity tests an algorithm performed against
/// candidate bins; it is instrumentation, not part of the solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Packing<W> {
    instance: InstanceId,
    item_count: usize,
    bins: Vec<Bin<W>>,
    probes: u64,
}

impl<W: Weight> Packing<W> {
    /// Assembles a packing without checking it. Use [`validate_packing`] to
    /// verify the result.
    pub fn from_parts(instance: &Instance<W>, bins: Vec<Bin<W>>, probes: u64) -> Self {
        Self {
            instance: instance.id(),
            item_count: instance.len(),
            bins,
            probes,
        }
    }

    pub fn instance_id(&self) -> InstanceId {
        self.instance
    }

    pub fn bins(&self) -> &[Bin<W>] {
        &self.bins
    }

    pub fn bin_count(&self) -> usize {
        self.bins.len()
    }

    pub fn loads(&self) -> impl Iterator<Item = W> + '_ {
        self.bins.iter().map(|b| b.load)
    }

    pub fn probes(&self) -> u64 {
        self.probes
    }

    /// Bin index of every item, or `None` if some item is missing or packed
    /// more than once.
    pub fn assignment(&self) -> Option<Vec<usize>> {
        let mut out = vec![usize::MAX; self.item_count];
        for (b, bin) in self.bins.iter().enumerate() {
            for &item in &bin.items {
                let slot = out.get_mut(item)?;
                if *slot != usize::MAX {
                    return None;
                }
                *slot = b;
            }
        }
        out.iter().all(|&b| b != usize::MAX).then_some(out)
    }
}

/// Incremental construction of a [`Packing`], tracking loads and probes.
#[derive(Debug)]
pub(crate) struct PackingBuilder<W> {
    instance: InstanceId,
    item_count: usize,
    capacity: W,
    bins: Vec<Bin<W>>,
    probes: u64,
}

impl<W: Weight> PackingBuilder<W> {
    pub fn new(instance: &Instance<W>) -> Self {
        Self {
            instance: instance.id(),
            item_count: instance.len(),
            capacity: instance.capacity(),
            bins: Vec::new(),
            probes: 0,
        }
    }

    pub fn open(&mut self, item: usize, weight: W) -> usize {
        self.bins.push(Bin {
            items: vec![item],
            load: weight,
        });
        self.bins.len() - 1
    }

    pub fn add(&mut self, bin: usize, item: usize, weight: W) {
        let b = &mut self.bins[bin];
        debug_assert!(b.load + weight <= self.capacity);
        b.items.push(item);
        b.load = b.load + weight;
    }

    pub fn free(&self, bin: usize) -> W {
        self.capacity - self.bins[bin].load
    }

    /// Capacity test that counts as one probe.
    pub fn fits(&mut self, bin: usize, weight: W) -> bool {
        self.probes += 1;
        self.free(bin) >= weight
    }

    pub fn count_probe(&mut self) {
        self.probes += 1;
    }

    pub fn bin_count(&self) -> usize {
        self.bins.len()
    }

    pub fn finish(self) -> Packing<W> {
        Packing {
            instance: self.instance,
            item_count: self.item_count,
            bins: self.bins,
            probes: self.probes,
        }
    }
}

/// A reason a packing is infeasible for its instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Overfull {
        bin: usize,
        load: String,
    },
    LoadMismatch {
        bin: usize,
        stored: String,
        actual: String,
    },
    EmptyBin {
        bin: usize,
    },
    UnknownItem {
        bin: usize,
        item: usize,
    },
    DuplicateItem {
        item: usize,
    },
    MissingItem {
        item: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Overfull { bin, load } => write!(f, "bin {bin} overfull (load {load})"),
            Violation::LoadMismatch {
                bin,
                stored,
                actual,
            } => write!(
                f,
                "bin {bin} load mismatch (stored {stored}, actual {actual})"
            ),
            Violation::EmptyBin { bin } => write!(f, "bin {bin} empty"),
            Violation::UnknownItem { bin, item } => {
                write!(f, "bin {bin} holds unknown item {item}")
            }
            Violation::DuplicateItem { item } => write!(f, "duplicate item {item}"),
            Violation::MissingItem { item } => write!(f, "missing item {item}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Vec<Violation>),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn violations(&self) -> &[Violation] {
        match self {
            Verdict::Valid => &[],
            Verdict::Invalid(v) => v,
        }
    }
}

/// Checks every feasibility condition of `packing` against `instance`.
///
/// Returns an error only if the packing was built for another instance; an
/// infeasible packing yields [`Verdict::Invalid`] listing each violation.
pub fn validate_packing<W: Weight>(
    instance: &Instance<W>,
    packing: &Packing<W>,
) -> Result<Verdict, ModelError> {
    if packing.instance != instance.id() || packing.item_count != instance.len() {
        return Err(ModelError::InstanceMismatch);
    }
    let capacity = instance.capacity().widen();
    let mut seen = vec![0usize; instance.len()];
    let mut violations = Vec::new();

    for (b, bin) in packing.bins.iter().enumerate() {
        if bin.items.is_empty() {
            violations.push(Violation::EmptyBin { bin: b });
        }
        let mut actual: u128 = 0;
        for &item in &bin.items {
            match seen.get_mut(item) {
                Some(count) => {
                    *count += 1;
                    actual += instance.weight(item).widen();
                }
                None => violations.push(Violation::UnknownItem { bin: b, item }),
            }
        }
        if actual != bin.load.widen() {
            violations.push(Violation::LoadMismatch {
                bin: b,
                stored: bin.load.to_string(),
                actual: actual.to_string(),
            });
        }
        if actual > capacity || bin.load.widen() > capacity {
            violations.push(Violation::Overfull {
                bin: b,
                load: actual.max(bin.load.widen()).to_string(),
            });
        }
    }
    for (item, &count) in seen.iter().enumerate() {
        match count {
            0 => violations.push(Violation::MissingItem { item }),
            1 => {}
            _ => violations.push(Violation::DuplicateItem { item }),
        }
    }

    Ok(if violations.is_empty() {
        Verdict::Valid
    } else {
        Verdict::Invalid(violations)
    })
}

/// Size range of an item relative to the capacity: `S` below a third, `M1`
/// in `[1/3, 1/2]`, `M2` in `(1/2, 2/3)`, `L` from two thirds up.
///
/// Any two `M1` items fit in one bin and no two `M2` items do.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RangeClass {
    S,
    M1,
    M2,
    L,
}

pub fn classify<W: Weight>(weight: W, capacity: W) -> Result<RangeClass, ModelError> {
    if capacity.is_zero() {
        return Err(ModelError::ZeroCapacity);
    }
    if weight.is_zero() || weight > capacity {
        return Err(ModelError::WeightOutOfRange {
            index: 0,
            weight: weight.to_string(),
            capacity: capacity.to_string(),
        });
    }
    Ok(classify_unchecked(weight, capacity))
}

#[inline]
pub(crate) fn classify_unchecked<W: Weight>(weight: W, capacity: W) -> RangeClass {
    let w = weight.widen();
    let c = capacity.widen();
    if 3 * w < c {
        RangeClass::S
    } else if 2 * w <= c {
        RangeClass::M1
    } else if 3 * w < 2 * c {
        RangeClass::M2
    } else {
        RangeClass::L
    }
}

/// Bins used by an algorithm over a reference bin count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    numerator: usize,
    denominator: usize,
}

impl Ratio {
    pub fn new(numerator: usize, denominator: usize) -> Result<Self, ModelError> {
        if denominator == 0 {
            return Err(ModelError::ZeroReference);
        }
        Ok(Self {
            numerator,
            denominator,
        })
    }

    pub fn numerator(&self) -> usize {
        self.numerator
    }

    pub fn denominator(&self) -> usize {
        self.denominator
    }

    /// Exact value in lowest terms.
    pub fn value(&self) -> num_rational::Ratio<u64> {
        num_rational::Ratio::new(self.numerator as u64, self.denominator as u64)
    }

    pub fn to_f64(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }

    pub fn is_below_one(&self) -> bool {
        self.numerator < self.denominator
    }
}

impl fmt::Display for Ratio {
    /// Four decimal places, rounded half up from the exact value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.numerator as u128;
        let d = self.denominator as u128;
        let scaled = (n * 20_000 + d) / (2 * d);
        write!(f, "{}.{:04}", scaled / 10_000, scaled % 10_000)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn inst(c: u32, w: &[u32]) -> Instance<u32> {
        Instance::new("t", c, w.to_vec()).unwrap()
    }

    fn bin(items: &[usize], load: u32) -> Bin<u32> {
        Bin {
            items: items.to_vec(),
            load,
        }
    }

    #[test]
    fn exact_fill_is_valid() {
        let i = inst(10, &[5, 5]);
        let p = Packing::from_parts(&i, vec![bin(&[0, 1], 10)], 0);
        assert_eq!(validate_packing(&i, &p).unwrap(), Verdict::Valid);
        assert_eq!(p.assignment(), Some(vec![0, 0]));
    }

    #[test]
    fn overfull_bin() {
        let i = inst(10, &[6, 5]);
        let p = Packing::from_parts(&i, vec![bin(&[0, 1], 11)], 0);
        let v = validate_packing(&i, &p).unwrap();
        let msgs: Vec<String> = v.violations().iter().map(ToString::to_string).collect();
        assert_eq!(msgs.len(), 1);
        assert!(msgs[0].starts_with("bin 0 overfull"), "{msgs:?}");
    }

    #[test]
    fn duplicate_and_missing() {
        let i = inst(10, &[6, 5]);
        let p = Packing::from_parts(&i, vec![bin(&[0], 6), bin(&[0], 6)], 0);
        let v = validate_packing(&i, &p).unwrap();
        assert_eq!(
            v.violations(),
            &[
                Violation::DuplicateItem { item: 0 },
                Violation::MissingItem { item: 1 }
            ]
        );
        assert_eq!(p.assignment(), None);
    }

    #[test]
    fn empty_bin_and_load_mismatch() {
        let i = inst(10, &[3]);
        let p = Packing::from_parts(&i, vec![bin(&[0], 4), bin(&[], 0)], 0);
        let v = validate_packing(&i, &p).unwrap();
        assert!(v.violations().contains(&Violation::EmptyBin { bin: 1 }));
        assert!(matches!(
            v.violations()[0],
            Violation::LoadMismatch { bin: 0, .. }
        ));
    }

    #[test]
    fn unknown_item_is_reported() {
        let i = inst(10, &[3]);
        let p = Packing::from_parts(&i, vec![bin(&[0, 7], 3)], 0);
        let v = validate_packing(&i, &p).unwrap();
        assert_eq!(
            v.violations(),
            &[Violation::UnknownItem { bin: 0, item: 7 }]
        );
    }

    #[test]
    fn mismatched_instance_is_structural() {
        let a = inst(10, &[5, 5]);
        let b = inst(10, &[5, 4]);
        let p = Packing::from_parts(&a, vec![bin(&[0, 1], 10)], 0);
        assert_eq!(validate_packing(&b, &p), Err(ModelError::InstanceMismatch));
    }

    #[test]
    fn instance_rejects_bad_weights() {
        assert_eq!(
            Instance::<u32>::new("x", 0, vec![]),
            Err(ModelError::ZeroCapacity)
        );
        assert!(matches!(
            Instance::<u32>::new("x", 10, vec![3, 11]),
            Err(ModelError::WeightOutOfRange { index: 1, .. })
        ));
        assert!(Instance::<u32>::new("x", 10, vec![0]).is_err());
        let empty = Instance::<u32>::new("x", 10, vec![]).unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn classify_examples() {
        use RangeClass::*;
        assert_eq!(classify(3u32, 12).unwrap(), S);
        assert_eq!(classify(4u32, 12).unwrap(), M1);
        assert_eq!(classify(6u32, 12).unwrap(), M1);
        assert_eq!(classify(7u32, 12).unwrap(), M2);
        assert_eq!(classify(8u32, 12).unwrap(), L);
        assert_eq!(classify(12u32, 12).unwrap(), L);
        assert!(classify(13u32, 12).is_err());
        assert!(classify(0u32, 12).is_err());
    }

    #[test]
    fn classify_is_a_partition() {
        for c in 1..=200u32 {
            for w in 1..=c {
                let (w3, w2, c2) = (3 * w, 2 * w, 2 * c);
                let preds = [w3 < c, w3 >= c && w2 <= c, w2 > c && w3 < c2, w3 >= c2];
                assert_eq!(preds.iter().filter(|&&p| p).count(), 1, "w={w} c={c}");
                let expected = [RangeClass::S, RangeClass::M1, RangeClass::M2, RangeClass::L]
                    [preds.iter().position(|&p| p).unwrap()];
                assert_eq!(classify(w, c).unwrap(), expected);
            }
        }
    }

    #[test]
    fn ratio_display() {
        assert_eq!(Ratio::new(6, 4).unwrap().to_string(), "1.5000");
        assert_eq!(Ratio::new(48, 48).unwrap().to_string(), "1.0000");
        assert_eq!(Ratio::new(49, 48).unwrap().to_string(), "1.0208");
        assert_eq!(Ratio::new(2, 3).unwrap().to_string(), "0.6667");
        assert_eq!(
            Ratio::new(6, 4).unwrap().value(),
            num_rational::Ratio::new(3, 2)
        );
        assert_eq!(Ratio::new(1, 0), Err(ModelError::ZeroReference));
    }

    proptest! {
        #[test]
        fn classify_scale_invariant(c in 1u64..5_000, frac in 0.0f64..1.0, k in 1u64..1_000) {
            let w = ((frac * c as f64) as u64).clamp(1, c);
            prop_assert_eq!(classify(w, c).unwrap(), classify(k * w, k * c).unwrap());
        }
    }
}
