//! Strategies and independent dense oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use proptest::prelude::*;
use walkmatch::quantum::CMatrix;
use walkmatch::{Graph, ProbabilityVector, TransitionMatrix};

/// Simple graphs on `2..=max_n` vertices with no isolated vertex.
pub fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..3 * n)))
        .prop_map(|(n, pairs)| {
            let mut set: BTreeSet<(usize, usize)> = pairs
                .into_iter()
                .filter(|(a, b)| a != b)
                .map(|(a, b)| (a.min(b), a.max(b)))
                .collect();
            for v in 0..n {
                if !set.iter().any(|&(a, b)| a == v || b == v) {
                    let w = (v + 1) % n;
                    set.insert((v.min(w), v.max(w)));
                }
            }
            let edges: Vec<_> = set.into_iter().collect();
            Graph::with_vertex_count(n, &edges).unwrap()
        })
}

/// Column-stochastic matrix on `g` from raw weights, cycled over edges.
/// Zero weights are kept so columns may be sparse; every column keeps at
/// least one positive entry.
pub fn matrix_from_weights(g: &Graph, weights: &[f64]) -> TransitionMatrix {
    let mut k = 0;
    let mut next = || {
        let w = weights[k % weights.len()];
        k += 1;
        w
    };
    let n = g.vertex_count();
    let mut columns = Vec::with_capacity(n);
    for u in 0..n {
        let mut col = vec![0.0; n];
        for &v in g.neighbors(u) {
            col[v] = next();
        }
        if col.iter().all(|&w| w == 0.0) {
            col[g.neighbors(u)[0]] = 1.0;
        }
        let total: f64 = col.iter().sum();
        col.iter_mut().for_each(|w| *w /= total);
        columns.push(col);
    }
    TransitionMatrix::from_columns(&columns).unwrap()
}

/// Probability vector from weights; zero weights give zero mass.
pub fn distribution_from_weights(n: usize, weights: &[f64]) -> ProbabilityVector {
    let mut w: Vec<f64> = (0..n).map(|i| weights[i % weights.len()]).collect();
    if w.iter().all(|&x| x == 0.0) {
        w[0] = 1.0;
    }
    let total: f64 = w.iter().sum();
    ProbabilityVector::new(w.into_iter().map(|x| x / total).collect()).unwrap()
}

/// Weights in `[0, 1]`, roughly a third of them exactly zero.
pub fn sparse_weights(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(prop_oneof![1 => Just(0.0), 2 => 0.01f64..1.0], 1..len)
}

pub fn to_dense(p: &TransitionMatrix) -> DMatrix<f64> {
    let n = p.dim();
    DMatrix::from_fn(n, n, |to, from| p.column(from)[to])
}

pub fn classical_oracle(p: &TransitionMatrix, pi: &[f64]) -> Vec<f64> {
    (to_dense(p) * DVector::from_column_slice(pi)).iter().copied().collect()
}

pub fn to_nalgebra(m: &CMatrix) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

/// Flat index of `(v, c)` from the prefix sums of degrees.
pub fn flat_index(g: &Graph, v: usize, c: usize) -> usize {
    (0..v).map(|w| g.neighbors(w).len()).sum::<usize>() + c
}

/// Flip-flop shift from its definition: `|u, c> -> |v, pos(u in N(v))>` with
/// `v` the `c`-th smallest neighbor of `u`.
pub fn shift_oracle(g: &Graph) -> DMatrix<Complex64> {
    let m = g.dimension();
    let mut s = DMatrix::zeros(m, m);
    for u in 0..g.vertex_count() {
        let mut nbrs = g.neighbors(u).to_vec();
        nbrs.sort_unstable();
        for (c, &v) in nbrs.iter().enumerate() {
            let back = g.neighbors(v).iter().position(|&x| x == u).unwrap();
            s[(flat_index(g, v, back), flat_index(g, u, c))] = Complex64::new(1.0, 0.0);
        }
    }
    s
}

/// Block-diagonal coin assembled from its per-vertex blocks.
pub fn coin_oracle(g: &Graph, blocks: &[CMatrix]) -> DMatrix<Complex64> {
    let m = g.dimension();
    let mut w = DMatrix::zeros(m, m);
    for (v, b) in blocks.iter().enumerate() {
        let o = flat_index(g, v, 0);
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                w[(o + i, o + j)] = b[(i, j)];
            }
        }
    }
    w
}

/// `max(|U^H U - I|, |U U^H - I|)` entrywise.
pub fn unitarity_residual(u: &DMatrix<Complex64>) -> f64 {
    let id = DMatrix::<Complex64>::identity(u.nrows(), u.ncols());
    let a = (u.adjoint() * u - &id).iter().map(|z| z.norm()).fold(0.0, f64::max);
    let b = (u * u.adjoint() - &id).iter().map(|z| z.norm()).fold(0.0, f64::max);
    a.max(b)
}

/// Amplitude `sqrt(p_vu) sqrt(pi_u)` on `|v, c>` with `u` the `c`-th neighbor of `v`.
pub fn closed_form_oracle(g: &Graph, p: &TransitionMatrix, pi: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(g.dimension());
    for v in 0..g.vertex_count() {
        for &u in g.neighbors(v) {
            out.push((p.column(u)[v] * pi[u]).sqrt());
        }
    }
    out
}

pub fn mu(g: &Graph, amplitudes: &[Complex64]) -> Vec<f64> {
    (0..g.vertex_count())
        .map(|v| {
            let o = flat_index(g, v, 0);
            amplitudes[o..o + g.neighbors(v).len()].iter().map(|z| z.norm_sqr()).sum()
        })
        .collect()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
