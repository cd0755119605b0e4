use crate::error::{Error, Result};

/// Where each block's best chromosome lands in the next population.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Migration {
    /// Block `b`'s best overwrites slot 0 of block `b`.
    #[default]
    SameBlock,
    /// All block bests are packed into the leading slots of the population,
    /// block 0 first.
    SingleBlock,
}

/// Grid shape, stopping rules and seed for [`run_ga`](crate::ga::run_ga).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaConfig {
    /// Number of blocks (NB).
    pub nb: usize,
    /// Threads, and chromosomes, per block (NT). Must be a power of two.
    pub nt: usize,
    /// Maximum number of evolve kernels.
    pub evolve_limit: usize,
    /// Consecutive kernels without a strict improvement before stopping.
    pub saturation: usize,
    pub seed: u64,
    /// Crossover rounds per kernel; defaults to one full cycle of `lg(NT)` rounds.
    pub crossover_iters: Option<usize>,
    /// Mutation attempts per thread per kernel; defaults to `lg(NT)`.
    pub mutation_iters: Option<usize>,
    pub migration: Migration,
    /// Worker threads for block evolution. 0 uses every available core.
    /// Has no effect on results.
    pub workers: usize,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            nb: 4,
            nt: 32,
            evolve_limit: 100,
            saturation: 10,
            seed: 0,
            crossover_iters: None,
            mutation_iters: None,
            migration: Migration::SameBlock,
            workers: 0,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.nb == 0 {
            return Err(Error::InvalidConfig("nb must be at least 1".into()));
        }
        if self.nt < 2 || !self.nt.is_power_of_two() {
            return Err(Error::InvalidConfig(format!("nt must be a power of two >= 2, got {}", self.nt)));
        }
        if self.evolve_limit == 0 {
            return Err(Error::InvalidConfig("evolve limit must be at least 1".into()));
        }
        if self.saturation == 0 {
            return Err(Error::InvalidConfig("saturation must be at least 1".into()));
        }
        if self.crossover_iters == Some(0) || self.mutation_iters == Some(0) {
            return Err(Error::InvalidConfig("iteration overrides must be at least 1".into()));
        }
        Ok(())
    }

    pub(crate) fn log_nt(&self) -> usize {
        self.nt.trailing_zeros() as usize
    }

    pub(crate) fn crossover_rounds(&self) -> usize {
        self.crossover_iters.unwrap_or_else(|| self.log_nt())
    }

    pub(crate) fn mutation_attempts(&self) -> usize {
        self.mutation_iters.unwrap_or_else(|| self.log_nt())
    }

    pub fn population_size(&self) -> usize {
        self.nb * self.nt
    }
}
