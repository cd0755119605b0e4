use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::instance::{Cost, Instance};

/// On-disk instance encodings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceFormat {
    /// `n m p` header, then `n` rows of `m` costs.
    Dense,
    /// OR-Library pmed graph: `n edges p` header, then `u v cost` edges.
    Orlib,
}

impl FromStr for InstanceFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense" => Ok(Self::Dense),
            "orlib" => Ok(Self::Orlib),
            other => Err(Error::Domain(format!("unknown instance format {other:?}"))),
        }
    }
}

impl fmt::Display for InstanceFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Dense => "dense",
            Self::Orlib => "orlib",
        })
    }
}

/// Parses `text` in `format`, optionally replacing the header's `p`.
pub fn parse_instance(text: &str, format: InstanceFormat, p_override: Option<usize>) -> Result<Instance> {
    match format {
        InstanceFormat::Dense => dense(text, p_override),
        InstanceFormat::Orlib => orlib(text, p_override),
    }
}

pub fn parse_dense(text: &str) -> Result<Instance> {
    dense(text, None)
}

pub fn parse_orlib(text: &str) -> Result<Instance> {
    orlib(text, None)
}

/// Non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty())
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, what: &str) -> Result<[usize; 3]> {
    let (ln, line) = lines.next().ok_or_else(|| parse_err(1, format!("missing `{what}` header")))?;
    let fields: Vec<&str> = line.split_whitespace().collect();
    let values: Option<Vec<usize>> = fields.iter().map(|f| f.parse().ok()).collect();
    match values {
        Some(v) if v.len() == 3 => Ok([v[0], v[1], v[2]]),
        _ => Err(parse_err(ln, format!("malformed header {line:?}, expected `{what}`"))),
    }
}

fn cost_token(ln: usize, token: &str) -> Result<Cost> {
    token.parse::<Cost>().map_err(|_| {
        if token.parse::<i64>().is_ok_and(|v| v < 0) {
            parse_err(ln, format!("negative cost {token}"))
        } else {
            parse_err(ln, format!("invalid cost {token:?}"))
        }
    })
}

fn dense(text: &str, p_override: Option<usize>) -> Result<Instance> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let mut it = lines.iter().copied();
    let [n, m, p] = header(&mut it, "n m p")?;
    let mut costs = Vec::with_capacity(n.saturating_mul(m).min(1 << 24));
    let mut rows = 0;
    for (ln, line) in it {
        if rows == n {
            return Err(parse_err(ln, format!("expected {n} cost rows, found more")));
        }
        let before = costs.len();
        for token in line.split_whitespace() {
            costs.push(cost_token(ln, token)?);
        }
        let width = costs.len() - before;
        if width != m {
            return Err(parse_err(ln, format!("row {} has {width} costs, expected {m}", rows + 1)));
        }
        rows += 1;
    }
    if rows != n {
        let last = lines.last().map_or(1, |l| l.0);
        return Err(parse_err(last, format!("expected {n} cost rows, found {rows}")));
    }
    Instance::new(n, m, p_override.unwrap_or(p), costs)
}

fn orlib(text: &str, p_override: Option<usize>) -> Result<Instance> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let mut it = lines.iter().copied();
    let [n, edge_count, p] = header(&mut it, "n edges p")?;
    if n < 2 {
        return Err(parse_err(1, format!("graph needs at least two vertices, got {n}")));
    }
    let mut edges = Vec::with_capacity(edge_count);
    for (ln, line) in it {
        if edges.len() == edge_count {
            return Err(parse_err(ln, format!("expected {edge_count} edges, found more")));
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(parse_err(ln, format!("edge line {line:?} must be `u v cost`")));
        }
        let vertex = |s: &str| -> Result<usize> {
            match s.parse::<usize>() {
                Ok(v) if (1..=n).contains(&v) => Ok(v - 1),
                _ => Err(parse_err(ln, format!("vertex {s:?} out of range 1..={n}"))),
            }
        };
        edges.push((vertex(fields[0])?, vertex(fields[1])?, cost_token(ln, fields[2])?));
    }
    if edges.len() != edge_count {
        let last = lines.last().map_or(1, |l| l.0);
        return Err(parse_err(last, format!("expected {edge_count} edges, found {}", edges.len())));
    }
    let dist = floyd_warshall(n, &edges);
    let mut costs = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            costs.push(dist[i * n + j].ok_or(Error::DisconnectedGraph { from: i + 1, to: j + 1 })?);
        }
    }
    Instance::new(n, n, p_override.unwrap_or(p), costs)
}

/// All-pairs shortest paths on an undirected graph with 0-based vertices.
///
/// Repeated edges keep the cost of their last occurrence. Unreachable pairs
/// are `None`. The result is row-major `n × n`.
pub fn floyd_warshall(n: usize, edges: &[(usize, usize, Cost)]) -> Vec<Option<Cost>> {
    let mut d: Vec<Option<Cost>> = vec![None; n * n];
    for i in 0..n {
        d[i * n + i] = Some(0);
    }
    for &(u, v, c) in edges {
        if u != v {
            d[u * n + v] = Some(c);
            d[v * n + u] = Some(c);
        }
    }
    for k in 0..n {
        for i in 0..n {
            let Some(ik) = d[i * n + k] else { continue };
            for j in 0..n {
                if let Some(kj) = d[k * n + j] {
                    let via = ik.saturating_add(kj);
                    let cell = &mut d[i * n + j];
                    if cell.is_none_or(|cur| via < cur) {
                        *cell = Some(via);
                    }
                }
            }
        }
    }
    d
}
