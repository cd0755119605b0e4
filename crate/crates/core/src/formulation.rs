//! Per-client site orderings and distance increments, truncated to the
//! `m - p + 1` columns that can ever contribute, plus the scan-based fitness
//! used by the genetic algorithm.

use crate::error::{Error, Result};
use crate::instance::{Chromosome, Cost, Instance};

/// Truncated ordering matrix and increment matrix, stored row-major.
///
/// Row `i` of `order` lists the sites by ascending distance from client `i`
/// (ties broken by site index). Row `i` of `delta` holds the first differences
/// of those sorted distances, so the prefix sum through column `t` equals the
/// distance to `order[i][t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderingTables {
    n: usize,
    m: usize,
    p: usize,
    width: usize,
    order: Vec<u32>,
    delta: Vec<Cost>,
}

impl OrderingTables {
    pub fn new(instance: &Instance) -> Self {
        build_ordering(instance)
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

    /// Number of retained columns, `m - p + 1`.
    pub fn width(&self) -> usize {
        self.width
    }

    /// 0-based site indices for client `i`, nearest first.
    pub fn order(&self, i: usize) -> &[u32] {
        &self.order[i * self.width..(i + 1) * self.width]
    }

    pub fn delta(&self, i: usize) -> &[Cost] {
        &self.delta[i * self.width..(i + 1) * self.width]
    }

    /// Accumulates each client's increments until its first open site.
    ///
    /// The increment at the stopping column is included. A chromosome with
    /// exactly `p` open sites always stops within the retained columns; one with
    /// fewer may not, which is reported as [`Error::NoOpenFacility`].
    pub fn fitness(&self, c: &Chromosome) -> Result<Cost> {
        if c.len() != self.m {
            return Err(Error::DimensionMismatch { expected: self.m, found: c.len() });
        }
        self.scan(c.bits())
    }

    #[inline]
    pub(crate) fn scan(&self, bits: &[bool]) -> Result<Cost> {
        let mut total: Cost = 0;
        for (i, (order, delta)) in
            self.order.chunks_exact(self.width).zip(self.delta.chunks_exact(self.width)).enumerate()
        {
            let mut acc = 0;
            let mut found = false;
            for (&site, &step) in order.iter().zip(delta) {
                acc += step;
                if bits[site as usize] {
                    found = true;
                    break;
                }
            }
            if !found {
                return Err(Error::NoOpenFacility { client: i, width: self.width });
            }
            total += acc;
        }
        Ok(total)
    }
}

/// Sorts every client's sites by distance (stable on site index) and keeps the
/// first `m - p + 1` columns of the ordering and increment matrices.
pub fn build_ordering(instance: &Instance) -> OrderingTables {
    let (n, m, p) = (instance.clients(), instance.sites(), instance.open_count());
    let width = m - p + 1;
    let mut order = Vec::with_capacity(n * width);
    let mut delta = Vec::with_capacity(n * width);
    let mut sites: Vec<u32> = Vec::with_capacity(m);
    for row in instance.rows() {
        sites.clear();
        sites.extend(0..m as u32);
        sites.sort_by_key(|&j| row[j as usize]);
        let mut prev = 0;
        for &j in &sites[..width] {
            let d = row[j as usize];
            order.push(j);
            delta.push(d - prev);
            prev = d;
        }
    }
    OrderingTables { n, m, p, width, order, delta }
}
