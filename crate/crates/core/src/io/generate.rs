use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::Instance;
use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("weight bounds must satisfy 1 <= min <= max <= capacity (got min {min}, max {max}, capacity {capacity})")]
    Bounds {
        min: String,
        max: String,
        capacity: String,
    },
}

/// `n` weights drawn independently and uniformly from `[w_min, w_max]`.
///
/// The stream is ChaCha8 seeded with `seed` through `SeedableRng::seed_from_u64`,
/// sampled with `rand`'s uniform integer distribution. Both are portable, so
/// equal arguments give equal instances on every platform.
pub fn generate_uniform<W: Weight>(
    n: usize,
    capacity: W,
    w_min: W,
    w_max: W,
    seed: u64,
) -> Result<Instance<W>, GenerateError> {
    if w_min.is_zero() || w_min > w_max || w_max > capacity {
        return Err(GenerateError::Bounds {
            min: w_min.to_string(),
            max: w_max.to_string(),
            capacity: capacity.to_string(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights = (0..n).map(|_| rng.gen_range(w_min..=w_max)).collect();
    let name = format!("uniform_n{n}_c{capacity}_{w_min}-{w_max}_s{seed}");
    Ok(Instance::new(name, capacity, weights).expect("bounds checked"))
}
