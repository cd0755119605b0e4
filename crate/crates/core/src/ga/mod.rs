//! Block/thread structured genetic algorithm.
//!
//! A run is a grid of `nb` blocks of `nt` logical threads, each thread owning
//! one chromosome. Every kernel evolves all blocks independently (crossover
//! cycle, mutation cycle, in-block min reduction); the host meanwhile draws the
//! next random population, then migrates block bests into it.

mod block;
mod config;
mod engine;
mod operators;

pub use block::{block_min, crossover_partners, evolve_block, BlockBest, BlockKey};
pub use config::{GaConfig, Migration};
pub use engine::{run_ga, run_with_tables, Population, RunResult};
pub use operators::{block_shift, circular_shift, crossover, Direction, Mutation};
