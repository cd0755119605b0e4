//! One block of `NT` logical threads evolving together.
//!
//! The block is emulated sequentially with barrier semantics: every couple in
//! a crossover round reads its partner as it stood at the start of the round.

use rand::Rng;

use crate::formulation::OrderingTables;
use crate::ga::config::GaConfig;
use crate::ga::operators::{crossover, Mutation};
use crate::instance::{Chromosome, Cost};
use crate::rng::{self, Stream};

/// Identifies a block within a run, for keying shared couple streams.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockKey {
    pub seed: u64,
    pub kernel: u64,
    pub block: u64,
}

/// Couple index of every thread in every round of one crossover cycle.
///
/// Follows the relative-index bookkeeping of the cycle: the stride starts at
/// `nt / 2` and halves; a thread in the upper half of its current sub-block
/// pairs downwards, otherwise upwards.
pub fn crossover_partners(nt: usize) -> Vec<Vec<usize>> {
    assert!(nt.is_power_of_two() && nt >= 2);
    let mut rtx: Vec<usize> = (0..nt).collect();
    let mut rb_size = nt;
    let mut rounds = Vec::new();
    let mut cstride = nt / 2;
    while cstride > 0 {
        let round = (0..nt).map(|t| if rtx[t] >= rb_size / 2 { t - cstride } else { t + cstride }).collect();
        rounds.push(round);
        rb_size /= 2;
        for r in rtx.iter_mut() {
            *r %= rb_size;
        }
        cstride /= 2;
    }
    rounds
}

/// Stride-halving min reduction over thread costs. Ties go to the lower index.
pub fn block_min(costs: &[Cost]) -> (Cost, usize) {
    assert!(costs.len().is_power_of_two());
    let mut cost = costs.to_vec();
    let mut idx: Vec<usize> = (0..costs.len()).collect();
    let mut stride = costs.len() / 2;
    while stride > 0 {
        for tx in 0..stride {
            if (cost[tx + stride], idx[tx + stride]) < (cost[tx], idx[tx]) {
                cost[tx] = cost[tx + stride];
                idx[tx] = idx[tx + stride];
            }
        }
        stride /= 2;
    }
    (cost[0], idx[0])
}

/// Best chromosome of a block after one evolve pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockBest {
    pub chromosome: Chromosome,
    pub cost: Cost,
    pub thread: usize,
}

/// Evolves `block` in place and returns its best member.
///
/// `streams` are the per-thread random streams of this block (one per
/// chromosome); they drive the mutation cycle. Crossover parameters come from a
/// stream shared by each couple, keyed by `key`, the round and the lower thread
/// index of the pair. A chromosome is only ever replaced by a strictly fitter one.
pub fn evolve_block(
    block: &mut [Chromosome],
    tables: &OrderingTables,
    cfg: &GaConfig,
    key: BlockKey,
    streams: &mut [Stream],
) -> BlockBest {
    let nt = block.len();
    assert_eq!(nt, cfg.nt, "block size must equal NT");
    assert_eq!(streams.len(), nt);
    let (m, p) = (tables.sites(), tables.open_count());
    let fitness = |c: &Chromosome| tables.fitness(c).expect("chromosome keeps exactly p open sites");

    let mut costs: Vec<Cost> = block.iter().map(fitness).collect();

    if p >= 2 {
        let schedule = crossover_partners(nt);
        let rounds = cfg.crossover_rounds();
        let mut snapshot = block.to_vec();
        for round in 0..rounds {
            let partners = &schedule[round % schedule.len()];
            snapshot.clone_from_slice(block);
            for t in 0..nt {
                let mate = partners[t];
                let mut shared =
                    rng::stream(&[key.seed, rng::COUPLE, key.kernel, key.block, round as u64, t.min(mate) as u64]);
                let start = shared.random_range(0..m);
                let exchanges = 2 * shared.random_range(1..=p / 2);
                if let Some(child) = crossover(&snapshot[t], &snapshot[mate], start, exchanges) {
                    let cost = fitness(&child);
                    if cost < costs[t] {
                        block[t] = child;
                        costs[t] = cost;
                    }
                }
            }
        }
    }

    let attempts = cfg.mutation_attempts();
    for t in 0..nt {
        let rng = &mut streams[t];
        for _ in 0..attempts {
            let child = Mutation::random(m, rng).apply(&block[t]);
            let cost = fitness(&child);
            if cost < costs[t] {
                block[t] = child;
                costs[t] = cost;
                break;
            }
        }
    }

    let (cost, thread) = block_min(&costs);
    BlockBest { chromosome: block[thread].clone(), cost, thread }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulation::build_ordering;
    use crate::instance::tests::example_one;

    #[test]
    fn partners_form_involutions() {
        for log in 1..=10 {
            let nt = 1usize << log;
            let schedule = crossover_partners(nt);
            assert_eq!(schedule.len(), log);
            for (r, round) in schedule.iter().enumerate() {
                let stride = nt >> (r + 1);
                for t in 0..nt {
                    assert_eq!(round[round[t]], t);
                    assert_eq!(round[t], t ^ stride, "nt={nt} round={r} t={t}");
                }
            }
        }
    }

    #[test]
    fn reduction_matches_sequential_scan() {
        let costs = [5, 3, 9, 3, 7, 3, 1, 1];
        assert_eq!(block_min(&costs), (1, 6));
        let ties = [4, 4, 4, 4];
        assert_eq!(block_min(&ties), (4, 0));
        let later = [9, 2, 8, 2, 2, 2, 9, 9];
        assert_eq!(block_min(&later), (2, 1));
    }

    fn streams(n: usize, seed: u64) -> Vec<Stream> {
        (0..n as u64).map(|t| rng::stream(&[seed, t])).collect()
    }

    #[test]
    fn block_keeps_known_optimum() {
        let tables = build_ordering(&example_one());
        let cfg = GaConfig { nb: 1, nt: 4, ..GaConfig::default() };
        let mut block: Vec<Chromosome> = ["1001", "0110", "1100", "0011"].iter().map(|s| s.parse().unwrap()).collect();
        let key = BlockKey { seed: 1, kernel: 0, block: 0 };
        let best = evolve_block(&mut block, &tables, &cfg, key, &mut streams(4, 1));
        assert_eq!(best.cost, 35);
        assert_eq!(best.chromosome.to_string(), "1001");
    }

    #[test]
    fn identical_pair_never_gets_worse() {
        let tables = build_ordering(&example_one());
        let cfg = GaConfig { nb: 1, nt: 2, ..GaConfig::default() };
        let start: Chromosome = "0110".parse().unwrap();
        let mut block = vec![start.clone(), start.clone()];
        let key = BlockKey { seed: 3, kernel: 0, block: 0 };
        let best = evolve_block(&mut block, &tables, &cfg, key, &mut streams(2, 3));
        assert!(best.cost <= 46);
        assert!(block.iter().all(|c| c.popcount() == 2));
    }

    #[test]
    fn block_evolution_is_deterministic() {
        let tables = build_ordering(&example_one());
        let cfg = GaConfig { nb: 1, nt: 4, ..GaConfig::default() };
        let init: Vec<Chromosome> = ["0110", "0101", "0110", "0011"].iter().map(|s| s.parse().unwrap()).collect();
        let key = BlockKey { seed: 8, kernel: 2, block: 5 };
        let mut a = init.clone();
        let mut b = init;
        let ra = evolve_block(&mut a, &tables, &cfg, key, &mut streams(4, 8));
        let rb = evolve_block(&mut b, &tables, &cfg, key, &mut streams(4, 8));
        assert_eq!(ra, rb);
        assert_eq!(a, b);
    }
}
