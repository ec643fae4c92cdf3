//! Text formats read and written by the command-line tool.
//!
//! * Edge lists: one `u v` pair per line, whitespace separated, `#` starts a
//!   comment. Labels are arbitrary tokens; they are numbered in numeric order
//!   when every label is an integer and in lexicographic order otherwise, so
//!   the coin ordering follows the labels.
//! * Walk specs: JSON with a `mode` (`homogeneous`, `sequence`, `generator`),
//!   the matching `matrix`, `matrices` or `generator` field, and an `initial`
//!   distribution. Matrices are column-major, either flat (`n * n` numbers) or
//!   as a list of `n` columns.
//! * Trajectories: CSV with columns `t,vertex,pi,mu,abs_diff`.
//! * Operator dumps: JSON with the shift permutation and per-vertex coin
//!   blocks as nested `[re, im]` pairs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::classical::{ProbabilityVector, StochasticSchedule, TransitionMatrix};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::quantum::{CoinOperator, ShiftPermutation};
use crate::verifier::MatchReport;

/// Parses an edge list, returning the graph and the label of every vertex id.
pub fn parse_edge_list(text: &str) -> Result<(Graph, Vec<String>)> {
    let mut pairs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            [u, v] => pairs.push((u.to_string(), v.to_string())),
            _ => {
                return Err(Error::Parse(format!(
                    "line {}: expected two vertex labels, found {}",
                    lineno + 1,
                    tokens.len()
                )))
            }
        }
    }

    let numeric = pairs
        .iter()
        .all(|(u, v)| u.parse::<u64>().is_ok() && v.parse::<u64>().is_ok());
    if numeric {
        let canonical = |l: &str| l.parse::<u64>().unwrap().to_string();
        pairs = pairs.iter().map(|(u, v)| (canonical(u), canonical(v))).collect();
    }
    let mut labels: Vec<String> = pairs
        .iter()
        .flat_map(|(u, v)| [u.clone(), v.clone()])
        .collect();
    if numeric {
        labels.sort_by_key(|l| l.parse::<u64>().unwrap());
    } else {
        labels.sort();
    }
    labels.dedup();
    let ids: BTreeMap<&str, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let edges: Vec<(usize, usize)> = pairs
        .iter()
        .map(|(u, v)| (ids[u.as_str()], ids[v.as_str()]))
        .collect();
    let graph = Graph::with_vertex_count(labels.len().max(1), &edges)?;
    Ok((graph, labels))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixSpec {
    Flat(Vec<f64>),
    Columns(Vec<Vec<f64>>),
}

impl MatrixSpec {
    pub fn to_matrix(&self, n: usize) -> Result<TransitionMatrix> {
        match self {
            Self::Flat(data) => TransitionMatrix::new(n, data.clone()),
            Self::Columns(cols) => {
                if cols.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: cols.len(),
                    });
                }
                TransitionMatrix::from_columns(cols)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GeneratorSpec {
    Random { seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WalkSpec {
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<MatrixSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorSpec>,
    pub initial: Vec<f64>,
}

impl WalkSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("walk spec: {e}")))
    }

    /// Builds the schedule and initial distribution for a graph on `n` vertices.
    pub fn resolve(&self, n: usize) -> Result<(StochasticSchedule, ProbabilityVector)> {
        let missing = |field: &str| Error::Parse(format!("mode {} requires `{field}`", self.mode));
        let schedule = match self.mode.as_str() {
            "homogeneous" => StochasticSchedule::Homogeneous(
                self.matrix.as_ref().ok_or_else(|| missing("matrix"))?.to_matrix(n)?,
            ),
            "sequence" => StochasticSchedule::Sequence(
                self.matrices
                    .as_ref()
                    .ok_or_else(|| missing("matrices"))?
                    .iter()
                    .map(|m| m.to_matrix(n))
                    .collect::<Result<_>>()?,
            ),
            "generator" => match self.generator.as_ref().ok_or_else(|| missing("generator"))? {
                GeneratorSpec::Random { seed } => StochasticSchedule::Random { seed: *seed },
            },
            other => return Err(Error::Parse(format!("unknown walk mode `{other}`"))),
        };
        if self.initial.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.initial.len(),
            });
        }
        Ok((schedule, ProbabilityVector::new(self.initial.clone())?))
    }
}

/// Trajectory CSV; numbers carry 17 significant digits.
pub fn trajectory_csv(report: &MatchReport, labels: &[String]) -> String {
    let mut out = String::from("t,vertex,pi,mu,abs_diff\n");
    for (t, (pi, mu)) in report.classical.iter().zip(&report.quantum).enumerate() {
        for (v, (p, m)) in pi.iter().zip(mu).enumerate() {
            out.push_str(&format!(
                "{t},{},{p:.16e},{m:.16e},{:.16e}\n",
                labels[v],
                (p - m).abs()
            ));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorDump {
    pub t: usize,
    pub shift: Vec<usize>,
    /// `coins[v][row][col] = [re, im]`.
    pub coins: Vec<Vec<Vec<[f64; 2]>>>,
}

impl OperatorDump {
    pub fn new(t: usize, shift: &ShiftPermutation, coin: &CoinOperator) -> Self {
        let coins = coin
            .blocks()
            .iter()
            .map(|b| {
                (0..b.rows())
                    .map(|i| b.row(i).iter().map(|z| [z.re, z.im]).collect())
                    .collect()
            })
            .collect();
        Self {
            t,
            shift: shift.as_slice().to_vec(),
            coins,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("operator dump serializes")
    }
}
