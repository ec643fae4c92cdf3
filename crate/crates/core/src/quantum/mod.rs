//! Coined quantum walks that track a classical random walk.
//!
//! The walker lives on the directed edges of a [`Graph`]: amplitude
//! `psi(v, c)` sits on the edge from `v` to its `c`-th neighbor. A step is
//! `S W`, a block-diagonal coin `W(t)` followed by the flip-flop shift `S`
//! that reverses every edge.
//!
//! With all phases fixed to zero, the state after step `t` has amplitude
//! `sqrt(p_vu(t) pi_u(t))` on `|v, c>` where `u = eta(v, c)`, so the vertex
//! marginals equal `pi(t + 1)`. The coin for step `t` rotates each vertex
//! block of the current state onto `sqrt(p_uv(t) pi_v(t))`, which the shift
//! then carries into that closed form.

mod coin;
mod linalg;
mod walk;

use num_complex::Complex64;

use crate::classical::{ProbabilityVector, TransitionMatrix};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub use coin::{build_coin, coin_block, CoinOperator};
pub use linalg::{gram_schmidt, inner, li_set, norm, CMatrix};
pub use walk::{MatchedWalk, StepRecord};

/// Complex amplitudes over the flat edge-state layout of a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct Wavefunction {
    amplitudes: Vec<Complex64>,
}

impl Wavefunction {
    pub fn new(amplitudes: Vec<Complex64>) -> Self {
        Self { amplitudes }
    }

    pub fn from_real(amplitudes: &[f64]) -> Self {
        Self::new(amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amplitudes)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Wavefunction) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Phase attached to each amplitude of the walker state.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum PhaseConvention {
    /// All phases zero; amplitudes stay real and nonnegative.
    #[default]
    FixedZero,
}

/// Coin block used for a vertex carrying no probability.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum DegeneratePolicy {
    #[default]
    IdentityCoin,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuildConfig {
    pub phase_convention: PhaseConvention,
    /// Threshold below which a vector or overlap counts as zero.
    pub gs_tolerance: f64,
    /// Allowed gap between `|psi_v|^2` and `|phi_v|^2` in a coin block.
    pub norm_tolerance: f64,
    pub degenerate_policy: DegeneratePolicy,
}

impl Default for BuildConfig {
    fn default() -> Self {
        Self {
            phase_convention: PhaseConvention::FixedZero,
            gs_tolerance: 1e-12,
            norm_tolerance: 1e-10,
            degenerate_policy: DegeneratePolicy::IdentityCoin,
        }
    }
}

impl BuildConfig {
    pub fn validate(&self) -> Result<()> {
        if self.gs_tolerance > 0.0 && self.norm_tolerance > 0.0 {
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "tolerances must be positive (gs {}, norm {})",
                self.gs_tolerance, self.norm_tolerance
            )))
        }
    }
}

/// The flip-flop shift as a permutation of flat edge-state indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftPermutation {
    permutation: Vec<usize>,
}

impl ShiftPermutation {
    /// Sends `|u, c>` to `|v, sigma(u, v)>` with `v = eta(u, c)`.
    pub fn flip_flop(g: &Graph) -> Self {
        let mut permutation = Vec::with_capacity(g.dimension());
        for u in 0..g.vertex_count() {
            for &v in g.neighbors(u) {
                let back = g.sigma(u, v).expect("neighbor lists are symmetric");
                permutation.push(g.offset(v) + back);
            }
        }
        Self { permutation }
    }

    /// Image of flat index `i`.
    pub fn image(&self, i: usize) -> usize {
        self.permutation[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.permutation
    }

    pub fn len(&self) -> usize {
        self.permutation.len()
    }

    pub fn is_empty(&self) -> bool {
        self.permutation.is_empty()
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.permutation.len()];
        self.permutation
            .iter()
            .all(|&j| j < seen.len() && !std::mem::replace(&mut seen[j], true))
    }

    pub fn is_involution(&self) -> bool {
        self.permutation
            .iter()
            .enumerate()
            .all(|(i, &j)| self.permutation.get(j) == Some(&i))
    }

    /// Moves amplitude at `i` to `image(i)`.
    pub fn apply(&self, psi: &Wavefunction) -> Wavefunction {
        let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
        for (i, &amp) in psi.amplitudes.iter().enumerate() {
            out[self.permutation[i]] = amp;
        }
        Wavefunction::new(out)
    }
}

/// `psi(v, c) = sqrt(pi_v / d(v))`: each vertex spreads its weight evenly over its coins.
pub fn initial_state(g: &Graph, pi0: &ProbabilityVector) -> Wavefunction {
    assert_eq!(pi0.len(), g.vertex_count(), "distribution size");
    let mut amps = Vec::with_capacity(g.dimension());
    for v in 0..g.vertex_count() {
        let d = g.degree(v);
        let a = (pi0[v] / d as f64).sqrt();
        amps.extend(std::iter::repeat_n(Complex64::new(a, 0.0), d));
    }
    Wavefunction::new(amps)
}

/// Closed-form state after a step driven by `p_prev` from `pi_prev`.
///
/// Amplitude on `|v, c>` is `sqrt(p_vu) sqrt(pi_u)` with `u = eta(v, c)`.
pub fn closed_form_state(g: &Graph, p_prev: &TransitionMatrix, pi_prev: &ProbabilityVector) -> Wavefunction {
    assert_eq!(pi_prev.len(), g.vertex_count(), "distribution size");
    assert_eq!(p_prev.dim(), g.vertex_count(), "matrix size");
    let mut amps = Vec::with_capacity(g.dimension());
    for v in 0..g.vertex_count() {
        for &u in g.neighbors(v) {
            let a = p_prev.get(v, u).sqrt() * pi_prev[u].sqrt();
            amps.push(Complex64::new(a, 0.0));
        }
    }
    Wavefunction::new(amps)
}

/// Target block of vertex `v` for the coin at step `t`.
///
/// Entry `c` is `sqrt(p_uv(t)) sqrt(pi_v(t))` with `u = eta(v, c)`: the
/// weight `v` sends towards each neighbor.
pub fn target_phi(
    g: &Graph,
    v: usize,
    p_t: &TransitionMatrix,
    pi_t: &ProbabilityVector,
) -> Vec<Complex64> {
    let mass = pi_t[v].sqrt();
    g.neighbors(v)
        .iter()
        .map(|&u| Complex64::new(p_t.get(u, v).sqrt() * mass, 0.0))
        .collect()
}

/// The `d(v)` amplitudes of `psi` belonging to vertex `v`.
pub fn extract_vertex_block<'a>(psi: &'a Wavefunction, g: &Graph, v: usize) -> &'a [Complex64] {
    &psi.amplitudes[g.offset(v)..g.offset(v + 1)]
}

/// `mu_v = sum_c |psi(v, c)|^2`.
pub fn vertex_probabilities(psi: &Wavefunction, g: &Graph) -> Vec<f64> {
    (0..g.vertex_count())
        .map(|v| {
            extract_vertex_block(psi, g, v)
                .iter()
                .map(Complex64::norm_sqr)
                .sum()
        })
        .collect()
}

/// One walk step: coin blocks, then the shift.
pub fn qw_step(
    g: &Graph,
    psi: &Wavefunction,
    shift: &ShiftPermutation,
    coin: &CoinOperator,
) -> Wavefunction {
    shift.apply(&coin.apply(g, psi))
}
