//! p-median solver built on the Hammer–Beresnev pseudo-Boolean formulation.
//!
//! - [`instance`]: cost matrix, chromosomes and the direct reference evaluator.
//! - [`formulation`] / [`polynomial`]: truncated ordering and increment tables,
//!   the scan-based fitness, and the reduced pseudo-Boolean polynomial.
//! - [`combinatorics`]: exact binomials and lexicographic unranking.
//! - [`ga`]: the block-structured genetic algorithm.
//! - [`bench`]: instance ingestion and benchmark reporting.

pub mod bench;
pub mod combinatorics;
pub mod error;
pub mod formulation;
pub mod ga;
pub mod instance;
pub mod polynomial;
pub mod rng;

pub use combinatorics::{binomial, random_chromosome, rank_combination, unrank_combination, CombinationRank};
pub use error::{Error, Result};
pub use formulation::{build_ordering, OrderingTables};
pub use ga::{run_ga, GaConfig, Migration, RunResult};
pub use instance::{direct_cost, exact_optimum_small, exact_optimum_with_budget, Chromosome, Cost, Instance};
pub use polynomial::{build_hbp, evaluate_hbp, reduce_hbp, PseudoBooleanPolynomial, Term};
