//! Pseudo-Boolean polynomial in closure variables `z_j` (1 iff site `j` is
//! closed) whose value equals the total assignment cost.
//!
//! The polynomial path exists for verification and export. The genetic
//! algorithm evaluates chromosomes with [`OrderingTables::fitness`] instead.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::formulation::OrderingTables;
use crate::instance::Chromosome;

/// A coefficient times the product of a set of closure variables.
///
/// Variables are 0-based site indices, kept sorted and deduplicated since
/// `z·z = z`. An empty set is a constant entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    vars: Vec<usize>,
    coeff: i64,
}

impl Term {
    pub fn new(mut vars: Vec<usize>, coeff: i64) -> Self {
        vars.sort_unstable();
        vars.dedup();
        Self { vars, coeff }
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn coeff(&self) -> i64 {
        self.coeff
    }

    pub fn degree(&self) -> usize {
        self.vars.len()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PseudoBooleanPolynomial {
    constant: i64,
    terms: Vec<Term>,
}

impl PseudoBooleanPolynomial {
    pub fn new(constant: i64, terms: Vec<Term>) -> Self {
        Self { constant, terms }
    }

    /// Value at `z = 0`: the explicit constant plus any degree-0 entries.
    pub fn constant(&self) -> i64 {
        self.constant + self.terms.iter().filter(|t| t.vars.is_empty()).map(|t| t.coeff).sum::<i64>()
    }

    /// Stored entries, including degree-0 entries of an unreduced polynomial.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn entry_count(&self) -> usize {
        self.terms.len()
    }

    /// Merges like terms, drops zero coefficients, folds degree-0 entries into
    /// the constant, and orders terms by degree then variable set.
    pub fn reduce(&self) -> Self {
        let mut constant = self.constant;
        let mut merged: BTreeMap<(usize, Vec<usize>), i64> = BTreeMap::new();
        for t in &self.terms {
            if t.vars.is_empty() {
                constant += t.coeff;
            } else {
                *merged.entry((t.vars.len(), t.vars.clone())).or_insert(0) += t.coeff;
            }
        }
        let terms =
            merged.into_iter().filter(|(_, c)| *c != 0).map(|((_, vars), coeff)| Term { vars, coeff }).collect();
        Self { constant, terms }
    }

    /// Evaluates with `z_j = 1` exactly when site `j` is closed in `c`.
    pub fn evaluate(&self, c: &Chromosome) -> Result<i64> {
        let m = c.len();
        let mut total = self.constant;
        for t in &self.terms {
            if let Some(&v) = t.vars.iter().find(|&&v| v >= m) {
                return Err(Error::VariableOutOfRange { var: v + 1, m });
            }
            if t.vars.iter().all(|&v| !c.is_open(v)) {
                total += t.coeff;
            }
        }
        Ok(total)
    }

    /// Human-readable form, e.g. `33 + 7z1 + 2z1z2`.
    pub fn to_algebraic(&self) -> String {
        let mut out = self.constant().to_string();
        for t in self.terms.iter().filter(|t| !t.vars.is_empty()) {
            let (sign, mag) = if t.coeff < 0 { (" - ", -t.coeff) } else { (" + ", t.coeff) };
            out.push_str(sign);
            out.push_str(&mag.to_string());
            for v in &t.vars {
                out.push_str(&format!("z{}", v + 1));
            }
        }
        out
    }
}

/// Expands every client row into its `m - p + 1` entries, without reduction.
pub fn build_hbp(tables: &OrderingTables) -> PseudoBooleanPolynomial {
    let mut terms = Vec::with_capacity(tables.clients() * tables.width());
    for i in 0..tables.clients() {
        let order = tables.order(i);
        for (k, &step) in tables.delta(i).iter().enumerate() {
            let vars = order[..k].iter().map(|&j| j as usize).collect();
            terms.push(Term::new(vars, step as i64));
        }
    }
    PseudoBooleanPolynomial { constant: 0, terms }
}

pub fn reduce_hbp(poly: &PseudoBooleanPolynomial) -> PseudoBooleanPolynomial {
    poly.reduce()
}

pub fn evaluate_hbp(poly: &PseudoBooleanPolynomial, c: &Chromosome) -> Result<i64> {
    poly.evaluate(c)
}

/// Text export: `constant <c>` then one `<coeff> z<i> z<j> ...` line per term (1-based).
impl fmt::Display for PseudoBooleanPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "constant {}", self.constant())?;
        for t in self.terms.iter().filter(|t| !t.vars.is_empty()) {
            write!(f, "{}", t.coeff)?;
            for v in &t.vars {
                write!(f, " z{}", v + 1)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for PseudoBooleanPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let parse_err = |line: usize, message: String| Error::Parse { line: line + 1, message };
        let (ln, header) = lines.next().ok_or_else(|| parse_err(0, "empty polynomial".into()))?;
        let constant = header
            .trim()
            .strip_prefix("constant")
            .and_then(|rest| rest.trim().parse::<i64>().ok())
            .ok_or_else(|| parse_err(ln, format!("expected `constant <int>`, got {header:?}")))?;
        let mut terms = Vec::new();
        for (ln, line) in lines {
            let mut tokens = line.split_whitespace();
            let coeff = tokens
                .next()
                .and_then(|t| t.parse::<i64>().ok())
                .ok_or_else(|| parse_err(ln, format!("bad coefficient in {line:?}")))?;
            let vars = tokens
                .map(|t| {
                    t.strip_prefix('z')
                        .and_then(|v| v.parse::<usize>().ok())
                        .filter(|&v| v >= 1)
                        .map(|v| v - 1)
                        .ok_or_else(|| parse_err(ln, format!("bad variable {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            terms.push(Term::new(vars, coeff));
        }
        Ok(Self { constant, terms })
    }
}
