use std::path::{Path, PathBuf};
use std::time::Duration;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::bench::parse::{parse_instance, InstanceFormat};
use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::ga::{run_ga, GaConfig, RunResult};
use crate::instance::{Cost, Instance};

/// One benchmark row: instance shape, search-space size, solution quality,
/// kernel count and time.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkRecord {
    pub instance_code: String,
    pub n: usize,
    pub m: usize,
    pub p: usize,
    #[serde(with = "decimal")]
    pub search_space: BigUint,
    pub best_cost: Cost,
    pub reference_cost: Option<Cost>,
    /// `reference_cost / best_cost`; exactly 1.0 when the reference is matched.
    pub approximation_ratio: Option<f64>,
    pub kernel_calls: usize,
    pub wall_time: Duration,
    pub seed: u64,
}

impl BenchmarkRecord {
    /// Summarises repeated runs: best cost over all runs, lower-median kernel
    /// count (kernel in which each run first hit its best) and lower-median time.
    pub fn from_runs(
        instance_code: &str,
        instance: &Instance,
        runs: &[RunResult],
        reference_cost: Option<Cost>,
        seed: u64,
    ) -> Result<Self> {
        let best_cost = runs
            .iter()
            .map(|r| r.best_cost)
            .min()
            .ok_or_else(|| Error::InvalidConfig("at least one run is required".into()))?;
        let kernel_calls = lower_median(runs.iter().map(|r| r.kernel_of_best).collect());
        let wall_time = lower_median(runs.iter().map(|r| r.wall_time).collect());
        let approximation_ratio = reference_cost.map(|reference| {
            if reference == best_cost {
                1.0
            } else if best_cost == 0 {
                f64::INFINITY
            } else {
                reference as f64 / best_cost as f64
            }
        });
        Ok(Self {
            instance_code: instance_code.to_string(),
            n: instance.clients(),
            m: instance.sites(),
            p: instance.open_count(),
            search_space: binomial(instance.sites(), instance.open_count())?,
            best_cost,
            reference_cost,
            approximation_ratio,
            kernel_calls,
            wall_time,
            seed,
        })
    }
}

fn lower_median<T: Ord + Copy>(mut values: Vec<T>) -> T {
    values.sort_unstable();
    values[(values.len() - 1) / 2]
}

/// Reads a file, attaching the path to I/O errors.
pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

/// Reads a reference optimum: a single non-negative integer.
pub fn read_reference(path: &Path) -> Result<Cost> {
    let text = read_text(path)?;
    let mut tokens = text.split_whitespace();
    match (tokens.next().map(str::parse::<Cost>), tokens.next()) {
        (Some(Ok(v)), None) => Ok(v),
        _ => Err(Error::Parse { line: 1, message: format!("{}: expected a single integer", path.display()) }),
    }
}

/// Sidecar holding the reference optimum for `instance`: same name, `.opt` extension.
pub fn sidecar_path(instance: &Path) -> PathBuf {
    instance.with_extension("opt")
}

/// Runs the genetic algorithm `repeats` times on the instance at `path`.
///
/// Repeat `r` uses seed `cfg.seed + r`.
pub fn run_benchmark(
    path: &Path,
    format: InstanceFormat,
    p_override: Option<usize>,
    cfg: &GaConfig,
    repeats: usize,
    reference_cost: Option<Cost>,
) -> Result<BenchmarkRecord> {
    if repeats == 0 {
        return Err(Error::InvalidConfig("repeats must be at least 1".into()));
    }
    let instance = parse_instance(&read_text(path)?, format, p_override)?;
    let runs = (0..repeats as u64)
        .map(|r| run_ga(&instance, &GaConfig { seed: cfg.seed.wrapping_add(r), ..cfg.clone() }))
        .collect::<Result<Vec<_>>>()?;
    let code = path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
    BenchmarkRecord::from_runs(&code, &instance, &runs, reference_cost, cfg.seed)
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}
