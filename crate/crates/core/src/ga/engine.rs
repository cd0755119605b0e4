//! Host loop: initial population, evolve kernels over all blocks, overlapping
//! generation of the next population, migration and termination.

use std::time::Duration;

use crate::combinatorics::ChromosomeSampler;
use crate::error::Result;
use crate::formulation::{build_ordering, OrderingTables};
use crate::ga::block::{evolve_block, BlockBest, BlockKey};
use crate::ga::config::{GaConfig, Migration};
use crate::instance::{Chromosome, Cost, Instance};
use crate::rng::{self, Stream};

/// Outcome of a full run.
#[derive(Clone, Debug)]
pub struct RunResult {
    pub best: Chromosome,
    pub best_cost: Cost,
    pub kernels_executed: usize,
    /// 1-based kernel in which `best_cost` was first reached.
    pub kernel_of_best: usize,
    /// Global best cost after each kernel.
    pub per_kernel_best_costs: Vec<Cost>,
    pub wall_time: Duration,
}

impl RunResult {
    /// Canonical encoding of everything except wall time, for reproducibility checks.
    pub fn outcome_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(self.best.to_string().as_bytes());
        out.push(b'\n');
        for v in [self.best_cost, self.kernels_executed as u64, self.kernel_of_best as u64] {
            out.extend_from_slice(&v.to_le_bytes());
        }
        for v in &self.per_kernel_best_costs {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }
}

/// Population of `nb × nt` chromosomes, block-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Population {
    nt: usize,
    members: Vec<Chromosome>,
}

impl Population {
    pub fn random(sampler: &ChromosomeSampler, cfg: &GaConfig, host: &mut Stream) -> Self {
        let members = (0..cfg.population_size()).map(|_| sampler.sample(host)).collect();
        Self { nt: cfg.nt, members }
    }

    pub fn blocks(&self) -> impl Iterator<Item = &[Chromosome]> {
        self.members.chunks(self.nt)
    }

    pub fn members(&self) -> &[Chromosome] {
        &self.members
    }

    fn migrate(&mut self, bests: &[BlockBest], rule: Migration) {
        match rule {
            Migration::SameBlock => {
                for (b, best) in bests.iter().enumerate() {
                    self.members[b * self.nt] = best.chromosome.clone();
                }
            }
            Migration::SingleBlock => {
                for (slot, best) in bests.iter().enumerate() {
                    self.members[slot] = best.chromosome.clone();
                }
            }
        }
    }
}

struct Stopwatch {
    #[cfg(not(target_arch = "wasm32"))]
    start: std::time::Instant,
}

impl Stopwatch {
    fn start() -> Self {
        Self {
            #[cfg(not(target_arch = "wasm32"))]
            start: std::time::Instant::now(),
        }
    }

    fn elapsed(&self) -> Duration {
        #[cfg(not(target_arch = "wasm32"))]
        {
            self.start.elapsed()
        }
        #[cfg(target_arch = "wasm32")]
        {
            Duration::ZERO
        }
    }
}

/// Runs the genetic algorithm on `instance`.
pub fn run_ga(instance: &Instance, cfg: &GaConfig) -> Result<RunResult> {
    cfg.validate()?;
    let tables = build_ordering(instance);
    run_with_tables(&tables, cfg)
}

/// Same as [`run_ga`] with prebuilt ordering tables.
pub fn run_with_tables(tables: &OrderingTables, cfg: &GaConfig) -> Result<RunResult> {
    cfg.validate()?;
    #[cfg(feature = "parallel")]
    if cfg.workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| crate::Error::InvalidConfig(format!("worker pool: {e}")))?;
        return pool.install(|| host_loop(tables, cfg, true));
    }
    host_loop(tables, cfg, cfg.workers != 1)
}

fn host_loop(tables: &OrderingTables, cfg: &GaConfig, parallel: bool) -> Result<RunResult> {
    let clock = Stopwatch::start();
    let sampler = ChromosomeSampler::new(tables.sites(), tables.open_count())?;
    let mut host = rng::stream(&[cfg.seed, rng::HOST]);
    // One persistent stream per global thread id.
    let mut streams: Vec<Stream> =
        (0..cfg.population_size() as u64).map(|tid| rng::stream(&[cfg.seed, rng::THREAD, tid])).collect();

    let mut population = Population::random(&sampler, cfg, &mut host);
    let mut best: Option<(Chromosome, Cost)> = None;
    let mut kernel_of_best = 0;
    let mut trace = Vec::new();
    let mut stalled = 0;

    for kernel in 0..cfg.evolve_limit {
        let (bests, mut next) = overlap(
            parallel,
            || evolve_all(&mut population, tables, cfg, kernel as u64, &mut streams, parallel),
            || Population::random(&sampler, cfg, &mut host),
        );

        let leader = bests.iter().min_by_key(|b| b.cost).expect("at least one block");
        match &best {
            Some((_, cost)) if leader.cost >= *cost => stalled += 1,
            _ => {
                best = Some((leader.chromosome.clone(), leader.cost));
                kernel_of_best = kernel + 1;
                stalled = 0;
            }
        }
        let best_cost = best.as_ref().map(|b| b.1).expect("set after first kernel");
        trace.push(best_cost);

        if stalled >= cfg.saturation || kernel + 1 >= cfg.evolve_limit {
            break;
        }
        next.migrate(&bests, cfg.migration);
        population = next;
    }

    let (best, best_cost) = best.expect("evolve limit is at least one");
    Ok(RunResult {
        best,
        best_cost,
        kernels_executed: trace.len(),
        kernel_of_best,
        per_kernel_best_costs: trace,
        wall_time: clock.elapsed(),
    })
}

fn overlap<A, B, FA, FB>(parallel: bool, device: FA, host: FB) -> (A, B)
where
    A: Send,
    B: Send,
    FA: FnOnce() -> A + Send,
    FB: FnOnce() -> B + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return rayon::join(device, host);
    }
    let _ = parallel;
    (device(), host())
}

fn evolve_all(
    population: &mut Population,
    tables: &OrderingTables,
    cfg: &GaConfig,
    kernel: u64,
    streams: &mut [Stream],
    parallel: bool,
) -> Vec<BlockBest> {
    let nt = cfg.nt;
    let key = |b: usize| BlockKey { seed: cfg.seed, kernel, block: b as u64 };
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return population
            .members
            .par_chunks_mut(nt)
            .zip(streams.par_chunks_mut(nt))
            .enumerate()
            .map(|(b, (block, s))| evolve_block(block, tables, cfg, key(b), s))
            .collect();
    }
    let _ = parallel;
    population
        .members
        .chunks_mut(nt)
        .zip(streams.chunks_mut(nt))
        .enumerate()
        .map(|(b, (block, s))| evolve_block(block, tables, cfg, key(b), s))
        .collect()
}
