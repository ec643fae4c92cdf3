//! Seeded random instances and the built-in demos.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

use crate::classical::{ProbabilityVector, StochasticSchedule, TransitionMatrix};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A graph, a schedule on it, and a starting distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub graph: Graph,
    pub schedule: StochasticSchedule,
    pub initial: ProbabilityVector,
    /// External vertex labels, indexed by vertex id.
    pub labels: Vec<String>,
}

impl Instance {
    pub fn new(graph: Graph, schedule: StochasticSchedule, initial: ProbabilityVector) -> Self {
        let labels = (0..graph.vertex_count()).map(|v| v.to_string()).collect();
        Self {
            graph,
            schedule,
            initial,
            labels,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum ScheduleMode {
    Homogeneous,
    #[default]
    Nonhomogeneous,
}

pub const DEMOS: [&str; 3] = ["cycle4", "k3", "path5-lazy"];

/// Random connected instance, fully determined by `seed`.
///
/// The graph is a uniform random labeled spanning tree (decoded from a random
/// Prüfer sequence) plus every other pair with a per-instance probability
/// below one half. Columns of the transition matrices are flat Dirichlet
/// draws over each vertex's neighbors, and the initial distribution is a flat
/// Dirichlet draw over all vertices.
pub fn generate_instance(seed: u64, n: usize, mode: ScheduleMode) -> Result<Instance> {
    if n < 2 {
        return Err(Error::Parse(format!("random instances need n >= 2, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut edges = random_tree(n, &mut rng);
    let density: f64 = rng.gen_range(0.0..0.5);
    let mut in_tree = vec![false; n * n];
    for &(u, v) in &edges {
        in_tree[u * n + v] = true;
        in_tree[v * n + u] = true;
    }
    for u in 0..n {
        for v in u + 1..n {
            if !in_tree[u * n + v] && rng.gen::<f64>() < density {
                edges.push((u, v));
            }
        }
    }
    let graph = Graph::with_vertex_count(n, &edges)?;

    let schedule = match mode {
        ScheduleMode::Homogeneous => {
            StochasticSchedule::Homogeneous(TransitionMatrix::random(&graph, &mut rng))
        }
        ScheduleMode::Nonhomogeneous => StochasticSchedule::Random { seed: rng.gen() },
    };

    let weights: Vec<f64> = (0..n).map(|_| Exp1.sample(&mut rng)).collect();
    let total: f64 = weights.iter().sum();
    let initial = ProbabilityVector::new(weights.iter().map(|w| w / total).collect())?;

    Ok(Instance::new(graph, schedule, initial))
}

/// Edges of a uniformly random labeled tree on `n >= 2` vertices.
fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Vec<(usize, usize)> {
    let code: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf always exists");
        edges.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let mut last = (0..n).filter(|&v| degree[v] == 1);
    let (u, v) = (last.next().unwrap(), last.next().unwrap());
    edges.push((u, v));
    edges
}

/// One of the named [`DEMOS`].
pub fn demo(name: &str) -> Option<Instance> {
    let instance = match name {
        "cycle4" => {
            let g = Graph::from_edges(&[(0, 1), (1, 2), (2, 3), (3, 0)]).ok()?;
            let p = TransitionMatrix::uniform(&g);
            Instance::new(g, StochasticSchedule::Homogeneous(p), ProbabilityVector::point_mass(4, 0))
        }
        "k3" => {
            let g = Graph::from_edges(&[(0, 1), (1, 2), (0, 2)]).ok()?;
            let p = TransitionMatrix::uniform(&g);
            Instance::new(g, StochasticSchedule::Homogeneous(p), ProbabilityVector::point_mass(3, 0))
        }
        "path5-lazy" => {
            // 0.7 towards the higher label, 0.3 towards the lower; endpoints are forced
            let g = Graph::from_edges(&[(0, 1), (1, 2), (2, 3), (3, 4)]).ok()?;
            let p = TransitionMatrix::from_weights(&g, |from, to| if to > from { 0.7 } else { 0.3 });
            Instance::new(g, StochasticSchedule::Homogeneous(p), ProbabilityVector::point_mass(5, 0))
        }
        _ => return None,
    };
    Some(instance)
}
