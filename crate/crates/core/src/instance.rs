//! Problem data: the client-by-site cost matrix, candidate solutions, and the
//! reference evaluator every faster path is checked against.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};

/// Distance / cost unit. Costs are non-negative integers.
pub type Cost = u64;

/// Default number of subsets [`exact_optimum_small`] is willing to enumerate.
pub const DEFAULT_EXACT_BUDGET: u64 = 10_000_000;

/// A p-median instance: `n` clients, `m` candidate sites, `p` sites to open.
///
/// Indices are 0-based in the API; reports and file formats use 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    n: usize,
    m: usize,
    p: usize,
    costs: Vec<Cost>,
}

impl Instance {
    /// Builds an instance from a row-major `n × m` cost vector.
    pub fn new(n: usize, m: usize, p: usize, costs: Vec<Cost>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInstance("instance needs at least one client".into()));
        }
        if m < 2 {
            return Err(Error::InvalidInstance(format!("need at least two sites, got m = {m}")));
        }
        if p == 0 {
            return Err(Error::InvalidInstance("p must be at least 1".into()));
        }
        if p >= m {
            return Err(Error::InvalidInstance(format!("p must be < m (p = {p}, m = {m})")));
        }
        let cells =
            n.checked_mul(m).ok_or_else(|| Error::InvalidInstance(format!("{n} × {m} cost matrix is too large")))?;
        if costs.len() != cells {
            return Err(Error::DimensionMismatch { expected: cells, found: costs.len() });
        }
        let max = costs.iter().copied().max().unwrap_or(0);
        // Every accumulated total (and every polynomial coefficient) stays below n·max.
        match (n as u64).checked_mul(max) {
            Some(total) if total <= i64::MAX as u64 => {}
            _ => {
                return Err(Error::InvalidInstance(format!(
                    "n · max cost overflows the cost accumulator (n = {n}, max = {max})"
                )))
            }
        }
        Ok(Self { n, m, p, costs })
    }

    /// Builds an instance from explicit rows.
    pub fn from_rows(rows: &[Vec<Cost>], p: usize) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        let mut costs = Vec::with_capacity(n * m);
        for row in rows {
            if row.len() != m {
                return Err(Error::DimensionMismatch { expected: m, found: row.len() });
            }
            costs.extend_from_slice(row);
        }
        Self::new(n, m, p, costs)
    }

    /// Same cost matrix with a different number of open facilities.
    pub fn with_p(&self, p: usize) -> Result<Self> {
        Self::new(self.n, self.m, p, self.costs.clone())
    }

    pub fn clients(&self) -> usize {
        self.n
    }

    pub fn sites(&self) -> usize {
        self.m
    }

    pub fn open_count(&self) -> usize {
        self.p
    }

    /// Cost between client `i` and site `j` (0-based).
    #[inline]
    pub fn cost(&self, i: usize, j: usize) -> Cost {
        self.costs[i * self.m + j]
    }

    /// The cost row of client `i`.
    #[inline]
    pub fn row(&self, i: usize) -> &[Cost] {
        &self.costs[i * self.m..(i + 1) * self.m]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Cost]> {
        self.costs.chunks_exact(self.m)
    }

    pub fn max_cost(&self) -> Cost {
        self.costs.iter().copied().max().unwrap_or(0)
    }
}

/// An `m`-bit open/closed vector. `true` marks an open site.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chromosome {
    bits: Vec<bool>,
}

impl Chromosome {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// Chromosome of length `m` with the given 0-based sites open.
    pub fn from_open(m: usize, open: &[usize]) -> Result<Self> {
        let mut bits = vec![false; m];
        for &j in open {
            if j >= m {
                return Err(Error::DimensionMismatch { expected: m, found: j + 1 });
            }
            bits[j] = true;
        }
        Ok(Self { bits })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    #[inline]
    pub fn is_open(&self, j: usize) -> bool {
        self.bits[j]
    }

    #[inline]
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub(crate) fn bits_mut(&mut self) -> &mut [bool] {
        &mut self.bits
    }

    pub fn popcount(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// 0-based indices of the open sites, ascending.
    pub fn open_sites(&self) -> Vec<usize> {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(j, _)| j).collect()
    }

    pub fn hamming(&self, other: &Chromosome) -> usize {
        self.bits.iter().zip(&other.bits).filter(|(a, b)| a != b).count()
    }
}

impl fmt::Display for Chromosome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Chromosome {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '1' => Ok(true),
                '0' => Ok(false),
                other => Err(Error::Domain(format!("unexpected character {other:?} in bit string"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Chromosome::from_bits)
    }
}

/// Sum over clients of the distance to the nearest open site. Only the length is checked.
pub(crate) fn nearest_open_total(instance: &Instance, c: &Chromosome) -> Result<Cost> {
    if c.len() != instance.m {
        return Err(Error::DimensionMismatch { expected: instance.m, found: c.len() });
    }
    let open = c.open_sites();
    if open.is_empty() {
        return Err(Error::OpenCount { expected: instance.p, found: 0 });
    }
    Ok(instance.rows().map(|row| open.iter().map(|&j| row[j]).min().unwrap_or(0)).sum())
}

/// Reference objective: each client is served by its nearest open site.
pub fn direct_cost(instance: &Instance, c: &Chromosome) -> Result<Cost> {
    if c.len() != instance.m {
        return Err(Error::DimensionMismatch { expected: instance.m, found: c.len() });
    }
    let open = c.popcount();
    if open != instance.p {
        return Err(Error::OpenCount { expected: instance.p, found: open });
    }
    nearest_open_total(instance, c)
}

/// Minimum over all p-subsets, with the default enumeration budget.
pub fn exact_optimum_small(instance: &Instance) -> Result<(Chromosome, Cost)> {
    exact_optimum_with_budget(instance, DEFAULT_EXACT_BUDGET)
}

/// Enumerates every p-subset in lexicographic order and keeps the first minimum.
pub fn exact_optimum_with_budget(instance: &Instance, budget: u64) -> Result<(Chromosome, Cost)> {
    let (m, p) = (instance.m, instance.p);
    let subsets: BigUint = binomial(m, p)?;
    if subsets.to_u64().is_none_or(|s| s > budget) {
        return Err(Error::TooLargeForExact { subsets: subsets.to_string(), budget });
    }

    let mut idx: Vec<usize> = (0..p).collect();
    let mut best_cost = Cost::MAX;
    let mut best_set = idx.clone();
    loop {
        let total: Cost = instance.rows().map(|row| idx.iter().map(|&j| row[j]).min().unwrap_or(0)).sum();
        if total < best_cost {
            best_cost = total;
            best_set.copy_from_slice(&idx);
        }
        if !next_combination(&mut idx, m) {
            break;
        }
    }
    Ok((Chromosome::from_open(m, &best_set)?, best_cost))
}

/// Advances a sorted index tuple to its lexicographic successor.
fn next_combination(idx: &mut [usize], m: usize) -> bool {
    let p = idx.len();
    let mut i = p;
    while i > 0 {
        i -= 1;
        if idx[i] < m - p + i {
            idx[i] += 1;
            for k in i + 1..p {
                idx[k] = idx[k - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn example_one() -> Instance {
        Instance::from_rows(
            &[vec![7, 10, 16, 11], vec![15, 17, 7, 7], vec![10, 4, 6, 6], vec![7, 11, 18, 12], vec![10, 22, 14, 8]],
            2,
        )
        .unwrap()
    }

    fn open(m: usize, one_based: &[usize]) -> Chromosome {
        let zero: Vec<usize> = one_based.iter().map(|j| j - 1).collect();
        Chromosome::from_open(m, &zero).unwrap()
    }

    /// Brute force over explicit column pairs, written without the library helpers.
    fn example_one_pair_costs() -> Vec<((usize, usize), Cost)> {
        let c = [[7u64, 10, 16, 11], [15, 17, 7, 7], [10, 4, 6, 6], [7, 11, 18, 12], [10, 22, 14, 8]];
        let mut out = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                let total = c.iter().map(|r| r[a].min(r[b])).sum();
                out.push(((a + 1, b + 1), total));
            }
        }
        out
    }

    #[test]
    fn example_one_pair_table() {
        let golden = example_one_pair_costs();
        let frozen = [((1, 2), 43), ((1, 3), 37), ((1, 4), 35), ((2, 3), 46), ((2, 4), 40), ((3, 4), 44)];
        assert_eq!(golden, frozen);
        let inst = example_one();
        for ((a, b), cost) in frozen {
            assert_eq!(direct_cost(&inst, &open(4, &[a, b])).unwrap(), cost);
        }
    }

    #[test]
    fn zero_cost_nearest() {
        let inst = Instance::from_rows(&[vec![0, 9]], 1).unwrap();
        assert_eq!(direct_cost(&inst, &open(2, &[1])).unwrap(), 0);
    }

    #[test]
    fn direct_cost_contract_errors() {
        let inst = example_one();
        assert!(matches!(direct_cost(&inst, &open(4, &[1])), Err(Error::OpenCount { expected: 2, found: 1 })));
        assert!(matches!(
            direct_cost(&inst, &Chromosome::from_open(5, &[0, 1]).unwrap()),
            Err(Error::DimensionMismatch { expected: 4, found: 5 })
        ));
    }

    #[test]
    fn instance_invariants() {
        assert!(Instance::from_rows(&[vec![1, 2]], 2).is_err());
        assert!(Instance::from_rows(&[vec![1, 2]], 0).is_err());
        assert!(Instance::from_rows(&[vec![1, 2], vec![3]], 1).is_err());
        assert!(Instance::new(2, 2, 1, vec![1, 2, 3]).is_err());
        let huge = Instance::new(4, 2, 1, vec![u64::MAX / 2; 8]);
        assert!(matches!(huge, Err(Error::InvalidInstance(_))));
    }

    #[test]
    fn exact_oracle_examples() {
        let (c, cost) = exact_optimum_small(&example_one()).unwrap();
        assert_eq!(cost, 35);
        assert_eq!(c.open_sites(), vec![0, 3]);

        let single = Instance::from_rows(&[vec![5, 2, 7]], 1).unwrap();
        let (c, cost) = exact_optimum_small(&single).unwrap();
        assert_eq!((c.open_sites(), cost), (vec![1], 2));

        let flat = Instance::new(3, 5, 2, vec![4; 15]).unwrap();
        let (c, cost) = exact_optimum_small(&flat).unwrap();
        assert_eq!((c.open_sites(), cost), (vec![0, 1], 12));
    }

    #[test]
    fn exact_oracle_refuses_large() {
        let big = Instance::new(1, 60, 30, vec![1; 60]).unwrap();
        assert!(matches!(exact_optimum_small(&big), Err(Error::TooLargeForExact { .. })));
        assert!(exact_optimum_with_budget(&example_one(), 5).is_err());
        assert!(exact_optimum_with_budget(&example_one(), 6).is_ok());
    }

    #[test]
    fn opening_more_never_costs_more() {
        let inst = example_one();
        for a in 0..4 {
            for b in 0..4 {
                if a == b {
                    continue;
                }
                let one = Chromosome::from_open(4, &[a]).unwrap();
                let two = Chromosome::from_open(4, &[a, b]).unwrap();
                assert!(nearest_open_total(&inst, &two).unwrap() <= nearest_open_total(&inst, &one).unwrap());
            }
        }
    }

    #[test]
    fn lexicographic_successor() {
        let mut idx = vec![0, 1];
        let mut seen = vec![idx.clone()];
        while next_combination(&mut idx, 4) {
            seen.push(idx.clone());
        }
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn bit_string_round_trip() {
        let c: Chromosome = "0110".parse().unwrap();
        assert_eq!(c.open_sites(), vec![1, 2]);
        assert_eq!(c.to_string(), "0110");
        assert!("01x0".parse::<Chromosome>().is_err());
    }
}
