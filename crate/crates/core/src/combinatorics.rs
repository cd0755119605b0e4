//! Exact binomial coefficients, lexicographic unranking of p-subsets and
//! single-draw random chromosomes.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::RngCore;

use crate::error::{Error, Result};
use crate::instance::Chromosome;

/// Position of a p-subset in the lexicographic order of sorted index tuples.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CombinationRank(BigUint);

impl CombinationRank {
    pub fn new(value: BigUint) -> Self {
        Self(value)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }
}

impl From<u64> for CombinationRank {
    fn from(v: u64) -> Self {
        Self(BigUint::from(v))
    }
}

impl fmt::Display for CombinationRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for CombinationRank {
    type Err = Error;

    /// Parses a non-negative decimal integer of any size.
    fn from_str(s: &str) -> Result<Self> {
        s.trim().parse().map(Self).map_err(|_| Error::Domain(format!("rank {s:?} is not a non-negative integer")))
    }
}

/// `C(m, p)` exactly.
pub fn binomial(m: usize, p: usize) -> Result<BigUint> {
    if p > m {
        return Err(Error::Domain(format!("C({m}, {p}) is undefined for p > m")));
    }
    let k = p.min(m - p);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc = C(m - k + i + 1, i + 1) after this step; the division is exact.
        acc *= m - k + i + 1;
        acc /= i + 1;
    }
    Ok(acc)
}

/// Builds the `rank`-th p-subset of `{0..m}` in lexicographic order.
///
/// Walks the sites once, carrying `C(remaining sites, remaining picks)` with
/// exact ratio updates, so the cost is O(m) big-integer steps.
pub fn unrank_combination(m: usize, p: usize, rank: &CombinationRank) -> Result<Chromosome> {
    let total = binomial(m, p)?;
    if rank.0 >= total {
        return Err(Error::Domain(format!("rank {} is out of range for C({m}, {p}) = {total}", rank.0)));
    }
    let mut bits = vec![false; m];
    if p == 0 {
        return Ok(Chromosome::from_bits(bits));
    }
    let mut rank = rank.0.clone();
    let mut left = p;
    // Number of subsets whose smallest remaining element is the current site.
    let mut count = binomial(m - 1, p - 1)?;
    for (j, bit) in bits.iter_mut().enumerate() {
        let rest = m - j - 1;
        if rank < count {
            *bit = true;
            left -= 1;
            if left == 0 {
                break;
            }
            // C(rest - 1, left - 1) = C(rest, left) · left / rest
            count *= left;
            count /= rest;
        } else {
            rank -= &count;
            if rest == 0 {
                break;
            }
            // C(rest - 1, left - 1) = C(rest, left - 1) · (rest - left + 1) / rest
            count *= rest + 1 - left;
            count /= rest;
        }
    }
    Ok(Chromosome::from_bits(bits))
}

/// Inverse of [`unrank_combination`] via the combinatorial number system.
pub fn rank_combination(c: &Chromosome) -> CombinationRank {
    let m = c.len();
    let open = c.open_sites();
    let p = open.len();
    let mut rank = BigUint::zero();
    let mut start = 0;
    for (i, &site) in open.iter().enumerate() {
        for skipped in start..site {
            rank += binomial(m - skipped - 1, p - i - 1).expect("p - i - 1 <= m - skipped - 1");
        }
        start = site + 1;
    }
    CombinationRank(rank)
}

/// Uniform value in `[0, bound)`, assembled from as many 64-bit draws as the
/// bound needs and rejected when it lands at or above `bound`.
pub fn random_below<R: RngCore + ?Sized>(bound: &BigUint, rng: &mut R) -> BigUint {
    assert!(!bound.is_zero(), "empty range");
    let bits = bound.bits();
    let words = bits.div_ceil(64) as usize;
    let top_bits = bits - 64 * (words as u64 - 1);
    let top_mask = if top_bits == 64 { u64::MAX } else { (1u64 << top_bits) - 1 };
    let mut digits = vec![0u64; words];
    loop {
        for d in digits.iter_mut() {
            *d = rng.next_u64();
        }
        digits[words - 1] &= top_mask;
        let candidate =
            BigUint::from_slice(&digits.iter().flat_map(|d| [*d as u32, (*d >> 32) as u32]).collect::<Vec<_>>());
        if &candidate < bound {
            return candidate;
        }
    }
}

/// Draws chromosomes uniformly over all p-subsets, one logical draw each.
#[derive(Clone, Debug)]
pub struct ChromosomeSampler {
    m: usize,
    p: usize,
    count: BigUint,
}

impl ChromosomeSampler {
    pub fn new(m: usize, p: usize) -> Result<Self> {
        Ok(Self { m, p, count: binomial(m, p)? })
    }

    pub fn search_space(&self) -> &BigUint {
        &self.count
    }

    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> Chromosome {
        let rank = CombinationRank(random_below(&self.count, rng));
        unrank_combination(self.m, self.p, &rank).expect("rank drawn below C(m, p)")
    }
}

/// One uniform rank in `[0, C(m, p))`, unranked into a chromosome.
pub fn random_chromosome<R: RngCore + ?Sized>(m: usize, p: usize, rng: &mut R) -> Result<Chromosome> {
    if p >= m {
        return Err(Error::Domain(format!("random chromosome needs p < m (p = {p}, m = {m})")));
    }
    Ok(ChromosomeSampler::new(m, p)?.sample(rng))
}
