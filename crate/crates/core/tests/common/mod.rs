#![allow(dead_code)]

use pmedian_core::{Chromosome, Cost, Instance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const EXAMPLE_ONE: &str = "5 4 2\n7 10 16 11\n15 17 7 7\n10 4 6 6\n7 11 18 12\n10 22 14 8\n";

pub fn example_one() -> Instance {
    pmedian_core::bench::parse_dense(EXAMPLE_ONE).unwrap()
}

/// Square instance with costs uniform in `0..=max_cost`.
pub fn random_instance(seed: u64, m: usize, p: usize, max_cost: Cost) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let costs = (0..m * m).map(|_| rng.random_range(0..=max_cost)).collect();
    Instance::new(m, m, p, costs).unwrap()
}

/// Every p-subset of `0..m` as a chromosome, by brute-force bitmask filtering.
pub fn all_chromosomes(m: usize, p: usize) -> Vec<Chromosome> {
    (0u32..1 << m)
        .filter(|mask| mask.count_ones() as usize == p)
        .map(|mask| Chromosome::from_bits((0..m).map(|j| mask >> j & 1 == 1).collect()))
        .collect()
}

/// Nearest-open-site total computed without any library evaluator.
pub fn brute_cost(instance: &Instance, c: &Chromosome) -> Cost {
    instance.rows().map(|row| row.iter().zip(c.bits()).filter(|(_, &open)| open).map(|(&d, _)| d).min().unwrap()).sum()
}
