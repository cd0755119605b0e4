//! Count-preserving crossover and shift mutations.

use rand::Rng;

use crate::instance::Chromosome;

/// Balanced gene exchange between `a` and its couple `b`.
///
/// Starting at `start` and wrapping once around the chromosome, positions where
/// the parents differ adopt `b`'s gene while quota remains for that direction:
/// `exchanges / 2` genes go 0→1 and the same number go 1→0. Returns `None` when
/// a full cycle cannot fill both quotas, in which case no offspring exists.
///
/// Panics if `exchanges` is zero or odd, or the parents differ in length.
pub fn crossover(a: &Chromosome, b: &Chromosome, start: usize, exchanges: usize) -> Option<Chromosome> {
    assert!(exchanges > 0 && exchanges.is_multiple_of(2), "exchange count must be positive and even");
    assert_eq!(a.len(), b.len());
    let m = a.len();
    let mut child = a.clone();
    let mut open_quota = exchanges / 2;
    let mut close_quota = exchanges / 2;
    let (pa, pb) = (a.bits(), b.bits());
    let bits = child.bits_mut();
    for step in 0..m {
        let j = (start + step) % m;
        match (pa[j], pb[j]) {
            (false, true) if open_quota > 0 => {
                bits[j] = true;
                open_quota -= 1;
            }
            (true, false) if close_quota > 0 => {
                bits[j] = false;
                close_quota -= 1;
            }
            _ => {}
        }
        if open_quota == 0 && close_quota == 0 {
            return Some(child);
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

/// Rotates the whole chromosome by `k` positions.
///
/// A right shift moves the gene at `j` to `(j + k) mod m`.
pub fn circular_shift(c: &Chromosome, k: usize, dir: Direction) -> Chromosome {
    block_shift(c, 0, c.len() - 1, k % c.len().max(1), dir)
}

/// Rotates the inclusive subsequence `lo..=hi` by `k` positions, leaving the
/// rest untouched.
pub fn block_shift(c: &Chromosome, lo: usize, hi: usize, k: usize, dir: Direction) -> Chromosome {
    assert!(lo <= hi && hi < c.len(), "block {lo}..={hi} outside chromosome of length {}", c.len());
    let mut out = c.clone();
    let span = &mut out.bits_mut()[lo..=hi];
    let k = k % span.len();
    match dir {
        Direction::Left => span.rotate_left(k),
        Direction::Right => span.rotate_right(k),
    }
    out
}

/// A randomly parameterised shift mutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    Circular { k: usize, dir: Direction },
    Block { lo: usize, hi: usize, k: usize, dir: Direction },
}

impl Mutation {
    /// Fair coin between the two shift kinds and between directions. Circular
    /// shifts move `1..m` positions; blocks span two distinct sites and shift
    /// by `0..=hi-lo`.
    pub fn random<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Self {
        debug_assert!(m >= 2);
        let circular = rng.random_bool(0.5);
        let dir = if rng.random_bool(0.5) { Direction::Left } else { Direction::Right };
        if circular {
            Mutation::Circular { k: rng.random_range(1..m), dir }
        } else {
            let a = rng.random_range(0..m);
            let mut b = rng.random_range(0..m - 1);
            if b >= a {
                b += 1;
            }
            let (lo, hi) = (a.min(b), a.max(b));
            Mutation::Block { lo, hi, k: rng.random_range(0..=hi - lo), dir }
        }
    }

    pub fn apply(&self, c: &Chromosome) -> Chromosome {
        match *self {
            Mutation::Circular { k, dir } => circular_shift(c, k, dir),
            Mutation::Block { lo, hi, k, dir } => block_shift(c, lo, hi, k, dir),
        }
    }
}
