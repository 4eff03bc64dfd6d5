use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::{Instance, Packing, PackingBuilder};
use crate::weight::{scaled_class, Weight};

use super::HeuristicError;

/// Parameters of [`a2_pack`].
///
/// `r` is the number of item ranges and of free-space bin classes. `seed`
/// selects how the two free choices of the algorithm are made: with seed 0
/// items of a range are taken in input order and each class is represented
/// by its most recently updated bin; any other seed drives a ChaCha8 stream
/// that shuffles every range and picks a uniformly random bin per class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct A2Config {
    r: usize,
    seed: u64,
}

impl A2Config {
    pub const DEFAULT_R: usize = 10;

    pub fn new(r: usize, seed: u64) -> Result<Self, HeuristicError> {
        if r == 0 {
            return Err(HeuristicError::ZeroScale);
        }
        Ok(Self { r, seed })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

impl Default for A2Config {
    fn default() -> Self {
        Self {
            r: Self::DEFAULT_R,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("after placing item {item}: bin {bin} has free space {free} but is filed under class {stored:?}, expected {expected:?}")]
pub struct A2AuditError {
    pub item: usize,
    pub bin: usize,
    pub free: String,
    pub stored: Option<usize>,
    pub expected: Option<usize>,
}

/// Bucketed first fit in `O(r·n)`.
///
/// Items are bucketed by size into `r` ranges and processed from the
/// heaviest range down. Open bins are filed into `r` classes by free space;
/// each item tests one bin from every nonempty class, emptiest-last, and
/// goes into the first that fits or else into a new bin. A full bin leaves
/// the class structure for good.
pub fn a2_pack<W: Weight>(instance: &Instance<W>, config: &A2Config) -> Packing<W> {
    match run(instance, config, false) {
        Ok(p) => p,
        Err(_) => unreachable!("audit disabled"),
    }
}

/// [`a2_pack`] that re-checks the class of every open bin after each
/// placement. Quadratic; meant for tests.
pub fn a2_pack_audited<W: Weight>(
    instance: &Instance<W>,
    config: &A2Config,
) -> Result<Packing<W>, A2AuditError> {
    run(instance, config, true)
}

fn run<W: Weight>(
    instance: &Instance<W>,
    config: &A2Config,
    audit: bool,
) -> Result<Packing<W>, A2AuditError> {
    let r = config.r;
    let capacity = instance.capacity();
    let mut rng = (config.seed != 0).then(|| ChaCha8Rng::seed_from_u64(config.seed));

    let mut ranges: Vec<Vec<usize>> = vec![Vec::new(); r];
    for (item, &w) in instance.weights().iter().enumerate() {
        ranges[scaled_class(w, capacity, r)].push(item);
    }

    let mut out = PackingBuilder::new(instance);
    let mut classes = BinClasses::new(r, rng.is_some());

    for range in ranges.iter_mut().rev() {
        if let Some(rng) = rng.as_mut() {
            range.shuffle(rng);
        }
        for &item in range.iter() {
            let w = instance.weight(item);
            let mut target = None;
            for class in 0..r {
                let Some(bin) = classes.pick(class, rng.as_mut()) else {
                    continue;
                };
                if out.fits(bin, w) {
                    target = Some(bin);
                    break;
                }
            }
            let bin = match target {
                Some(bin) => {
                    out.add(bin, item, w);
                    bin
                }
                None => out.open(item, w),
            };
            let free = out.free(bin);
            let class = (!free.is_zero()).then(|| scaled_class(free, capacity, r));
            classes.file(bin, class);

            if audit {
                for b in 0..out.bin_count() {
                    let free = out.free(b);
                    let expected = (!free.is_zero()).then(|| scaled_class(free, capacity, r));
                    let stored = classes.class_of(b);
                    if stored != expected || !classes.is_filed(b) {
                        return Err(A2AuditError {
                            item,
                            bin: b,
                            free: free.to_string(),
                            stored,
                            expected,
                        });
                    }
                }
            }
        }
    }
    Ok(out.finish())
}

/// Open bins grouped by free-space class.
///
/// In recency mode every class is a stack of `(bin, stamp)` entries; an
/// entry is live while the bin still sits in that class with that stamp,
/// so the live top is the most recently updated bin. Free space only
/// shrinks, so each push is popped at most once. In random mode every class
/// is an indexed set supporting removal and uniform sampling in O(1).
struct BinClasses {
    random: bool,
    class: Vec<Option<usize>>,
    stamp: Vec<u64>,
    stacks: Vec<Vec<(usize, u64)>>,
    members: Vec<Vec<usize>>,
    position: Vec<usize>,
}

impl BinClasses {
    fn new(r: usize, random: bool) -> Self {
        Self {
            random,
            class: Vec::new(),
            stamp: Vec::new(),
            stacks: if random {
                Vec::new()
            } else {
                vec![Vec::new(); r]
            },
            members: if random {
                vec![Vec::new(); r]
            } else {
                Vec::new()
            },
            position: Vec::new(),
        }
    }

    fn class_of(&self, bin: usize) -> Option<usize> {
        self.class.get(bin).copied().flatten()
    }

    /// Whether the internal structure agrees with `class_of(bin)`.
    fn is_filed(&self, bin: usize) -> bool {
        let Some(c) = self.class_of(bin) else {
            return true;
        };
        if self.random {
            self.members[c].get(self.position[bin]) == Some(&bin)
        } else {
            self.stacks[c].contains(&(bin, self.stamp[bin]))
        }
    }

    fn pick(&mut self, class: usize, rng: Option<&mut ChaCha8Rng>) -> Option<usize> {
        if self.random {
            let members = &self.members[class];
            if members.is_empty() {
                return None;
            }
            let rng = rng.expect("random mode has an rng");
            Some(members[rng.gen_range(0..members.len())])
        } else {
            let stack = &mut self.stacks[class];
            while let Some(&(bin, stamp)) = stack.last() {
                if self.class[bin] == Some(class) && self.stamp[bin] == stamp {
                    return Some(bin);
                }
                stack.pop();
            }
            None
        }
    }

    /// Records that `bin` was just updated and now belongs to `class`
    /// (`None` for a full bin).
    fn file(&mut self, bin: usize, class: Option<usize>) {
        if bin == self.class.len() {
            self.class.push(None);
            self.stamp.push(0);
            self.position.push(usize::MAX);
        }
        let old = self.class[bin];
        self.class[bin] = class;
        self.stamp[bin] += 1;
        if self.random {
            if old != class {
                if let Some(old) = old {
                    let members = &mut self.members[old];
                    let pos = self.position[bin];
                    members.swap_remove(pos);
                    if let Some(&moved) = members.get(pos) {
                        self.position[moved] = pos;
                    }
                }
                if let Some(c) = class {
                    self.position[bin] = self.members[c].len();
                    self.members[c].push(bin);
                }
            }
        } else if let Some(c) = class {
            self.stacks[c].push((bin, self.stamp[bin]));
        }
    }
}
