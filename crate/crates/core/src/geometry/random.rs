use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{general_position_report, q, PlMap, Point, Q};
use crate::simplicial::Complex;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct RandomMapOptions {
    /// Denominators are drawn from `1..=denominator_bound`.
    pub denominator_bound: i64,
    /// Numerators are drawn from `-numerator_bound..=numerator_bound`.
    pub numerator_bound: i64,
    pub max_attempts: usize,
}

impl Default for RandomMapOptions {
    fn default() -> Self {
        RandomMapOptions { denominator_bound: 4, numerator_bound: 1000, max_attempts: 64 }
    }
}

/// A linear map with random rational vertex coordinates, redrawn until all
/// general-position predicates hold. Deterministic in `seed`.
pub fn random_rational_map(k: &Complex, d: usize, seed: u64, opts: RandomMapOptions) -> Result<PlMap> {
    if opts.denominator_bound < 1 || opts.numerator_bound < 1 {
        return Err(Error::Precondition("bounds must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..opts.max_attempts {
        let coords: BTreeMap<u32, Point> = k
            .vertices()
            .iter()
            .map(|&v| {
                let p = (0..d)
                    .map(|_| {
                        let den = rng.gen_range(1..=opts.denominator_bound);
                        let num = rng.gen_range(-opts.numerator_bound..=opts.numerator_bound);
                        q(num) / q(den)
                    })
                    .collect::<Vec<Q>>();
                (v, Point(p))
            })
            .collect();
        let map = PlMap::linear(k.clone(), d, coords)?;
        if general_position_report(&map).is_empty() {
            return Ok(map);
        }
    }
    Err(Error::RetryBudget(format!("no general-position map after {} draws", opts.max_attempts)))
}
