//! Classical random walks `pi(t + 1) = P(t) pi(t)` on a [`Graph`].
//!
//! Transition matrices are dense and column-major: entry `(v, u)` is the
//! probability of moving from `u` to `v`, so every column must sum to one and
//! may only be supported on the neighbors of its vertex.

use std::borrow::Cow;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Tolerance for column sums and probability-vector totals.
pub const STOCHASTIC_TOLERANCE: f64 = 1e-12;

/// Per-vertex probabilities, nonnegative and summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidDistribution("empty vector".into()));
        }
        if let Some((v, p)) = entries
            .iter()
            .enumerate()
            .find(|(_, p)| !p.is_finite() || **p < 0.0)
        {
            return Err(Error::InvalidDistribution(format!(
                "entry {v} is {p}, expected a nonnegative number"
            )));
        }
        let total: f64 = entries.iter().sum();
        if (total - 1.0).abs() > STOCHASTIC_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "entries sum to {total}"
            )));
        }
        Ok(Self(entries))
    }

    pub fn point_mass(n: usize, v: usize) -> Self {
        let mut entries = vec![0.0; n];
        entries[v] = 1.0;
        Self(entries)
    }

    pub fn uniform(n: usize) -> Self {
        Self(vec![1.0 / n as f64; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn l1_distance(&self, other: &[f64]) -> f64 {
        self.0.iter().zip(other).map(|(a, b)| (a - b).abs()).sum()
    }

    pub fn max_abs_diff(&self, other: &[f64]) -> f64 {
        self.0
            .iter()
            .zip(other)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<usize> for ProbabilityVector {
    type Output = f64;

    fn index(&self, v: usize) -> &f64 {
        &self.0[v]
    }
}

/// Dense column-major `n x n` transition matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    n: usize,
    data: Vec<f64>,
}

impl TransitionMatrix {
    /// Wraps column-major data of length `n * n`.
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: data.len(),
            });
        }
        Ok(Self { n, data })
    }

    pub fn from_columns(columns: &[Vec<f64>]) -> Result<Self> {
        let n = columns.len();
        let mut data = Vec::with_capacity(n * n);
        for col in columns {
            if col.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: col.len(),
                });
            }
            data.extend_from_slice(col);
        }
        Self::new(n, data)
    }

    /// The walk that moves to each neighbor with equal probability.
    pub fn uniform(g: &Graph) -> Self {
        Self::from_weights(g, |_, _| 1.0)
    }

    /// Normalizes nonnegative per-edge weights `weight(from, to)` column by column.
    pub fn from_weights(g: &Graph, mut weight: impl FnMut(usize, usize) -> f64) -> Self {
        let n = g.vertex_count();
        let mut data = vec![0.0; n * n];
        for u in 0..n {
            let col = &mut data[u * n..(u + 1) * n];
            for &v in g.neighbors(u) {
                col[v] = weight(u, v);
            }
            let total: f64 = col.iter().sum();
            col.iter_mut().for_each(|p| *p /= total);
        }
        Self { n, data }
    }

    /// Random column-stochastic matrix supported exactly on the edges of `g`.
    ///
    /// Each column is a flat Dirichlet draw over the neighbors of its vertex.
    pub fn random<R: rand::Rng>(g: &Graph, rng: &mut R) -> Self {
        Self::from_weights(g, |_, _| {
            let w: f64 = Exp1.sample(rng);
            w.max(f64::MIN_POSITIVE)
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Probability `p_{to, from}` of moving from `from` to `to`.
    pub fn get(&self, to: usize, from: usize) -> f64 {
        self.data[from * self.n + to]
    }

    pub fn column(&self, from: usize) -> &[f64] {
        &self.data[from * self.n..(from + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }
}

/// Time-indexed transition matrices `P(t)`.
#[derive(Debug, Clone, PartialEq)]
pub enum StochasticSchedule {
    /// One matrix reused at every step.
    Homogeneous(TransitionMatrix),
    /// An explicit finite sequence; step `t` uses entry `t`.
    Sequence(Vec<TransitionMatrix>),
    /// Seeded random matrices regenerated per step.
    Random { seed: u64 },
}

impl StochasticSchedule {
    pub fn mode_name(&self) -> &'static str {
        match self {
            Self::Homogeneous(_) => "homogeneous",
            Self::Sequence(_) => "sequence",
            Self::Random { .. } => "generator",
        }
    }

    /// The matrix used at step `t`.
    pub fn matrix_at(&self, g: &Graph, t: usize) -> Result<Cow<'_, TransitionMatrix>> {
        match self {
            Self::Homogeneous(m) => Ok(Cow::Borrowed(m)),
            Self::Sequence(ms) => ms.get(t).map(Cow::Borrowed).ok_or(Error::ScheduleExhausted {
                step: t,
                available: ms.len(),
            }),
            Self::Random { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                rng.set_stream(t as u64);
                Ok(Cow::Owned(TransitionMatrix::random(g, &mut rng)))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ViolationKind {
    /// Column sums to `1 - deficit`.
    ColumnSum { deficit: f64 },
    /// Positive probability between non-adjacent vertices.
    Support { row: usize, value: f64 },
    /// Entry outside `[0, 1]`.
    Range { row: usize, value: f64 },
    /// No matrix is available for this step.
    Missing,
    /// Matrix size differs from the vertex count.
    Dimension { found: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub t: usize,
    pub column: usize,
    #[serde(flatten)]
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// Converts a non-empty report into an error.
    pub fn into_result(self) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidSchedule(format!(
                "{} violation(s), first at t={} column {}: {:?}",
                self.violations.len(),
                v.t,
                v.column,
                v.kind
            ))),
        }
    }
}

/// Checks stochasticity and adjacency support of `P(t)` for `t < horizon`.
pub fn validate_schedule(s: &StochasticSchedule, g: &Graph, horizon: usize) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = g.vertex_count();
    // A homogeneous schedule only needs checking once.
    let steps = match s {
        StochasticSchedule::Homogeneous(_) => horizon.min(1),
        _ => horizon,
    };
    for t in 0..steps {
        let m = match s.matrix_at(g, t) {
            Ok(m) => m,
            Err(_) => {
                report.violations.push(Violation {
                    t,
                    column: 0,
                    kind: ViolationKind::Missing,
                });
                continue;
            }
        };
        if m.dim() != n {
            report.violations.push(Violation {
                t,
                column: 0,
                kind: ViolationKind::Dimension { found: m.dim() },
            });
            continue;
        }
        for u in 0..n {
            let col = m.column(u);
            for (v, &p) in col.iter().enumerate() {
                if !(0.0..=1.0).contains(&p) {
                    report.violations.push(Violation {
                        t,
                        column: u,
                        kind: ViolationKind::Range { row: v, value: p },
                    });
                } else if p > 0.0 && !g.contains_edge(u, v) {
                    report.violations.push(Violation {
                        t,
                        column: u,
                        kind: ViolationKind::Support { row: v, value: p },
                    });
                }
            }
            let deficit = 1.0 - col.iter().sum::<f64>();
            if deficit.abs() > STOCHASTIC_TOLERANCE || deficit.is_nan() {
                report.violations.push(Violation {
                    t,
                    column: u,
                    kind: ViolationKind::ColumnSum { deficit },
                });
            }
        }
    }
    report
}

/// One step of the walk: `pi'_v = sum_{u in N(v)} p_vu pi_u`.
pub fn step(g: &Graph, p: &TransitionMatrix, pi: &ProbabilityVector) -> Result<ProbabilityVector> {
    let n = g.vertex_count();
    for found in [p.dim(), pi.len()] {
        if found != n {
            return Err(Error::DimensionMismatch { expected: n, found });
        }
    }
    let next = (0..n)
        .map(|v| g.neighbors(v).iter().map(|&u| p.get(v, u) * pi[u]).sum())
        .collect();
    Ok(ProbabilityVector(next))
}

/// Trajectory `[pi(0), ..., pi(steps)]`.
pub fn evolve(
    g: &Graph,
    s: &StochasticSchedule,
    pi0: &ProbabilityVector,
    steps: usize,
) -> Result<Vec<ProbabilityVector>> {
    let mut trajectory = Vec::with_capacity(steps + 1);
    trajectory.push(pi0.clone());
    for t in 0..steps {
        let p = s.matrix_at(g, t)?;
        let next = step(g, &p, &trajectory[t])?;
        trajectory.push(next);
    }
    Ok(trajectory)
}
