//! Helpers shared by the integration tests: desk-scale block sweeps and
//! random generators.

#![allow(dead_code)]

use std::collections::BTreeMap;

use akblocks::betaset::Partition;
use akblocks::blocks::{block_of, BlockDescriptor};
use akblocks::multipartition::{all_multipartitions, ChargedMultipartition};
use rand::Rng;

/// The `(e, ℓ)` pairs of the desk-scale sweep.
pub const SWEEP_PAIRS: [(usize, usize); 3] = [(2, 2), (3, 2), (2, 3)];

/// Largest size in the desk-scale sweep.
pub const SWEEP_N_MAX: usize = 6;

/// All charges in `[0, e]^ℓ`.
pub fn charge_window(e: usize, l: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..l {
        out = out
            .into_iter()
            .flat_map(|c: Vec<i64>| {
                (0..=e as i64).map(move |x| {
                    let mut c = c.clone();
                    c.push(x);
                    c
                })
            })
            .collect();
    }
    out
}

/// One descriptor per block of size `≤ n_max` at each charge of the window,
/// keyed by `(charge, block key)`.
pub fn sweep(e: usize, l: usize, n_max: usize) -> Vec<BlockDescriptor> {
    let mut found: BTreeMap<String, BlockDescriptor> = BTreeMap::new();
    for charge in charge_window(e, l) {
        for n in 0..=n_max {
            for mp in all_multipartitions(l, n) {
                let lm = ChargedMultipartition::new(mp, charge.clone(), e).unwrap();
                let b = block_of(&lm).unwrap();
                let key = format!("{charge:?}|{:?}", b.key());
                found.entry(key).or_insert(b);
            }
        }
    }
    found.into_values().collect()
}

/// The full desk-scale sweep over every pair in [`SWEEP_PAIRS`].
pub fn full_sweep() -> Vec<BlockDescriptor> {
    SWEEP_PAIRS
        .iter()
        .flat_map(|&(e, l)| sweep(e, l, SWEEP_N_MAX))
        .collect()
}

/// `⌊ℓ/2⌋⌈ℓ/2⌉e`.
pub fn weight_bound(e: usize, l: usize) -> usize {
    (l / 2) * l.div_ceil(2) * e
}

/// A random partition of size at most `max_size`.
pub fn random_partition<R: Rng>(rng: &mut R, max_size: usize) -> Partition {
    let n = rng.gen_range(0..=max_size);
    let mut parts = Vec::new();
    let mut left = n;
    while left > 0 {
        let cap = parts.last().copied().unwrap_or(left).min(left);
        let p = rng.gen_range(1..=cap);
        parts.push(p);
        left -= p;
    }
    Partition::from_parts(&parts)
}

/// A random charged multipartition with the given shape parameters.
pub fn random_charged<R: Rng>(
    rng: &mut R,
    e: usize,
    l: usize,
    max_size: usize,
    charge_range: i64,
) -> ChargedMultipartition {
    let comps = (0..l).map(|_| random_partition(rng, max_size)).collect();
    let charge = (0..l)
        .map(|_| rng.gen_range(-charge_range..=charge_range))
        .collect();
    ChargedMultipartition::new(comps, charge, e).unwrap()
}

/// Core blocks of the sweep together with their images under seeded random
/// words in the `s_j`, keeping sizes at most `max_size`.
pub fn core_family(seed: u64, words_per_block: usize, max_size: usize) -> Vec<BlockDescriptor> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for b in full_sweep().into_iter().filter(|b| b.is_core_block()) {
        for _ in 0..words_per_block {
            let mut cur = b.clone();
            for _ in 0..rng.gen_range(0..=6) {
                let next = cur.s_action(rng.gen_range(0..cur.e())).unwrap();
                if next.size() <= max_size {
                    cur = next;
                }
            }
            out.push(cur);
        }
        out.push(b);
    }
    out
}
