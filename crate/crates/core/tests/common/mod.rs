//! Test-only oracles and instance generators. Nothing here calls into the
//! algorithms under test.

#![allow(dead_code)]

use binpack::io::InstanceSet;
use binpack::model::Instance;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Minimum number of bins by enumerating every set partition of the items
/// (restricted growth strings), keeping only feasible ones.
pub fn brute_force_min_bins(capacity: u64, weights: &[u64]) -> usize {
    fn go(i: usize, weights: &[u64], capacity: u64, loads: &mut Vec<u64>, best: &mut usize) {
        if i == weights.len() {
            *best = (*best).min(loads.len());
            return;
        }
        for b in 0..loads.len() {
            if loads[b] + weights[i] <= capacity {
                loads[b] += weights[i];
                go(i + 1, weights, capacity, loads, best);
                loads[b] -= weights[i];
            }
        }
        loads.push(weights[i]);
        go(i + 1, weights, capacity, loads, best);
        loads.pop();
    }
    let mut best = weights.len();
    go(0, weights, capacity, &mut Vec::new(), &mut best);
    best
}

/// Random instance with up to `max_n` items and capacity up to
/// `max_capacity`. Weight distributions alternate between uniform on the
/// whole range and clusters around the 1/3, 1/2 and 2/3 thresholds.
pub fn random_instance(
    rng: &mut ChaCha8Rng,
    max_n: usize,
    max_capacity: u64,
    tag: usize,
) -> Instance<u64> {
    let capacity = rng.gen_range(1..=max_capacity);
    let n = rng.gen_range(0..=max_n);
    let mode = rng.gen_range(0..4);
    let weights = (0..n)
        .map(|_| match mode {
            0 => rng.gen_range(1..=capacity),
            1 => {
                let anchor = [capacity / 3, capacity / 2, 2 * capacity / 3][rng.gen_range(0..3)];
                let spread = (capacity / 20).max(1);
                anchor
                    .saturating_add(rng.gen_range(0..=2 * spread))
                    .saturating_sub(spread)
                    .clamp(1, capacity)
            }
            2 => rng.gen_range(1..=(capacity / 3).max(1)),
            _ => rng.gen_range((capacity / 4).max(1)..=capacity),
        })
        .collect();
    Instance::new(format!("fuzz{tag}"), capacity, weights).unwrap()
}

/// Uniform instance like the OR-Library `u` sets: capacity 150, weights in
/// [20, 100]. The reference is the L1 bound, which never exceeds OPT.
pub fn uniform_analogue(rng: &mut ChaCha8Rng, name: String, n: usize) -> Instance<u64> {
    let weights: Vec<u64> = (0..n).map(|_| rng.gen_range(20..=100)).collect();
    let l1 = weights.iter().sum::<u64>().div_ceil(150) as usize;
    Instance::new(name, 150, weights)
        .unwrap()
        .with_best_known(Some(l1))
}

/// Triplet instance like the OR-Library `t` sets: capacity 1000 and
/// `bins` groups of three items in [250, 500] that fill a bin exactly, so
/// the optimum is `bins`.
pub fn triplet_analogue(rng: &mut ChaCha8Rng, name: String, bins: usize) -> Instance<u64> {
    let mut weights = Vec::with_capacity(3 * bins);
    for _ in 0..bins {
        let a = rng.gen_range(250..=500u64);
        let b = rng.gen_range((500 - a).max(250)..=(750 - a).min(500));
        weights.extend([a, b, 1000 - a - b]);
    }
    weights.shuffle(rng);
    Instance::new(name, 1000, weights)
        .unwrap()
        .with_best_known(Some(bins))
}

/// Eight sets of 20 instances shaped like binpack1..binpack8.
pub fn orlib_analogues(seed: u64) -> Vec<InstanceSet<u64>> {
    let mut rng = rng(seed);
    let mut sets = Vec::new();
    for (k, n) in [120usize, 250, 500, 1000].into_iter().enumerate() {
        let instances = (0..20)
            .map(|i| uniform_analogue(&mut rng, format!("u{n}_{i:02}"), n))
            .collect();
        sets.push(InstanceSet::new(format!("bp{}", k + 1), instances).unwrap());
    }
    for (k, bins) in [20usize, 40, 83, 167].into_iter().enumerate() {
        let instances = (0..20)
            .map(|i| triplet_analogue(&mut rng, format!("t{}_{i:02}", 3 * bins), bins))
            .collect();
        sets.push(InstanceSet::new(format!("bp{}", k + 5), instances).unwrap());
    }
    sets
}

/// Writes `sets` as OR-Library files plus a `sets.toml` mapping.
pub fn write_data_dir(dir: &std::path::Path, sets: &[InstanceSet<u64>]) {
    let mut mapping = String::new();
    for (k, set) in sets.iter().enumerate() {
        let file = format!("binpack{}.txt", k + 1);
        std::fs::write(dir.join(&file), binpack::io::write_orlib(set)).unwrap();
        mapping.push_str(&format!(
            "[[set]]\nname = \"{}\"\nfile = \"{file}\"\n\n",
            set.set_name()
        ));
    }
    std::fs::write(dir.join("sets.toml"), mapping).unwrap();
}

/// Straightforward replay of the bucketed first fit with deterministic
/// choices: ranges from heaviest down, input order inside a range, one probe
/// per nonempty free-space class (emptiest class first), the probed bin
/// being the class member updated last. Returns the bins as item lists and
/// the probe count.
pub fn naive_bucketed_first_fit(
    capacity: u64,
    weights: &[u64],
    r: usize,
) -> (Vec<Vec<usize>>, u64) {
    let class = |v: u64| ((v as u128 * r as u128).div_ceil(capacity as u128) - 1) as usize;
    let mut bins: Vec<(Vec<usize>, u64, u64)> = Vec::new(); // items, free, last update
    let mut clock = 0u64;
    let mut probes = 0u64;
    for range in (0..r).rev() {
        for (item, &w) in weights.iter().enumerate() {
            if class(w) != range {
                continue;
            }
            clock += 1;
            let mut placed = false;
            for j in 0..r {
                let candidate = (0..bins.len())
                    .filter(|&b| bins[b].1 > 0 && class(bins[b].1) == j)
                    .max_by_key(|&b| bins[b].2);
                if let Some(b) = candidate {
                    probes += 1;
                    if bins[b].1 >= w {
                        bins[b].0.push(item);
                        bins[b].1 -= w;
                        bins[b].2 = clock;
                        placed = true;
                        break;
                    }
                }
            }
            if !placed {
                bins.push((vec![item], capacity - w, clock));
            }
        }
    }
    (bins.into_iter().map(|b| b.0).collect(), probes)
}
