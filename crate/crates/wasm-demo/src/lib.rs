//! Browser bindings for the p-median solver.
//!
//! Every exported function takes plain strings and numbers and returns a JSON
//! string; errors are thrown as JS strings. The `*_json` functions hold the
//! logic so it can be tested natively.

use pmedian_core::bench::{parse_dense, scientific};
use pmedian_core::{
    binomial, build_hbp, build_ordering, exact_optimum_with_budget, rank_combination, run_ga, unrank_combination,
    Chromosome, CombinationRank, GaConfig, Instance,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Instances with more candidate subsets than this are not solved exactly.
const EXACT_BUDGET: u64 = 200_000;

#[derive(Serialize)]
struct Formulation {
    n: usize,
    m: usize,
    p: usize,
    /// Site order per client, 1-based.
    order: Vec<Vec<u32>>,
    delta: Vec<Vec<u64>>,
    unreduced_entries: usize,
    polynomial: String,
    terms: usize,
}

#[derive(Serialize)]
struct Solution {
    open: Vec<usize>,
    bits: String,
    best_cost: u64,
    kernels: usize,
    kernel_of_best: usize,
    trace: Vec<u64>,
    search_space: String,
    exact_cost: Option<u64>,
}

#[derive(Serialize)]
struct Unranked {
    open: Vec<usize>,
    bits: String,
    rank: String,
    total: String,
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

fn one_based(c: &Chromosome) -> Vec<usize> {
    c.open_sites().iter().map(|j| j + 1).collect()
}

fn instance(text: &str) -> Result<Instance, String> {
    parse_dense(text).map_err(|e| e.to_string())
}

/// Ordering tables and reduced polynomial of a dense instance.
pub fn formulate_json(text: &str) -> Result<String, String> {
    let inst = instance(text)?;
    let tables = build_ordering(&inst);
    let raw = build_hbp(&tables);
    let reduced = raw.reduce();
    to_json(&Formulation {
        n: inst.clients(),
        m: inst.sites(),
        p: inst.open_count(),
        order: (0..inst.clients()).map(|i| tables.order(i).iter().map(|j| j + 1).collect()).collect(),
        delta: (0..inst.clients()).map(|i| tables.delta(i).to_vec()).collect(),
        unreduced_entries: raw.entry_count(),
        polynomial: reduced.to_algebraic(),
        terms: reduced.terms().len(),
    })
}

/// Runs the genetic algorithm; small instances are also solved exactly.
pub fn solve_json(
    text: &str,
    nb: usize,
    nt: usize,
    evolve_limit: usize,
    saturation: usize,
    seed: u64,
) -> Result<String, String> {
    let inst = instance(text)?;
    let cfg = GaConfig { nb, nt, evolve_limit, saturation, seed, workers: 1, ..GaConfig::default() };
    let r = run_ga(&inst, &cfg).map_err(|e| e.to_string())?;
    let exact_cost = exact_optimum_with_budget(&inst, EXACT_BUDGET).ok().map(|(_, cost)| cost);
    let space = binomial(inst.sites(), inst.open_count()).map_err(|e| e.to_string())?;
    to_json(&Solution {
        open: one_based(&r.best),
        bits: r.best.to_string(),
        best_cost: r.best_cost,
        kernels: r.kernels_executed,
        kernel_of_best: r.kernel_of_best,
        trace: r.per_kernel_best_costs,
        search_space: scientific(&space, 3),
        exact_cost,
    })
}

/// The p-subset of `0..m` at lexicographic position `rank` (decimal text).
pub fn unrank_json(m: usize, p: usize, rank: &str) -> Result<String, String> {
    let rank: CombinationRank = rank.parse().map_err(|e: pmedian_core::Error| e.to_string())?;
    let c = unrank_combination(m, p, &rank).map_err(|e| e.to_string())?;
    let total = binomial(m, p).map_err(|e| e.to_string())?;
    to_json(&Unranked {
        open: one_based(&c),
        bits: c.to_string(),
        rank: rank_combination(&c).to_string(),
        total: total.to_string(),
    })
}

#[wasm_bindgen]
pub fn formulate(text: &str) -> Result<String, JsValue> {
    formulate_json(text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn solve(
    text: &str,
    nb: usize,
    nt: usize,
    evolve_limit: usize,
    saturation: usize,
    seed: u64,
) -> Result<String, JsValue> {
    solve_json(text, nb, nt, evolve_limit, saturation, seed).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn unrank(m: usize, p: usize, rank: &str) -> Result<String, JsValue> {
    unrank_json(m, p, rank).map_err(|e| JsValue::from_str(&e))
}
