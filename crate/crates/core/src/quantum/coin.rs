use num_complex::Complex64;

use super::linalg::{gram_schmidt, li_set, norm, CMatrix};
use super::{extract_vertex_block, target_phi, BuildConfig, DegeneratePolicy, Wavefunction};
use crate::classical::{ProbabilityVector, TransitionMatrix};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Block-diagonal coin `W = sum_v |v><v| (x) W_v`, one `d(v) x d(v)` block per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinOperator {
    blocks: Vec<CMatrix>,
}

impl CoinOperator {
    pub fn new(blocks: Vec<CMatrix>) -> Self {
        Self { blocks }
    }

    pub fn identity(g: &Graph) -> Self {
        Self::new(
            (0..g.vertex_count())
                .map(|v| CMatrix::identity(g.degree(v)))
                .collect(),
        )
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    pub fn block(&self, v: usize) -> &CMatrix {
        &self.blocks[v]
    }

    /// Applies each block to its vertex's slice of `psi`.
    pub fn apply(&self, g: &Graph, psi: &Wavefunction) -> Wavefunction {
        let mut out = Vec::with_capacity(psi.len());
        for (v, block) in self.blocks.iter().enumerate() {
            out.extend(block.mul_vec(extract_vertex_block(psi, g, v)));
        }
        Wavefunction::new(out)
    }
}

/// Unitary on one coin space sending `psi_v` to `phi_v`.
///
/// Both vectors are completed to orthonormal bases (`beta` from `psi_v`,
/// `alpha` from `phi_v`) and the block is `sum_k |alpha_k><beta_k|`. Blocks
/// where both vectors vanish get the degenerate policy.
pub fn coin_block(psi_v: &[Complex64], phi_v: &[Complex64], cfg: &BuildConfig) -> Result<CMatrix> {
    let dim = psi_v.len();
    if phi_v.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: phi_v.len(),
        });
    }
    let (psi_norm, phi_norm) = (norm(psi_v), norm(phi_v));
    let tol = cfg.gs_tolerance;
    if psi_norm <= tol && phi_norm <= tol {
        return Ok(match cfg.degenerate_policy {
            DegeneratePolicy::IdentityCoin => CMatrix::identity(dim),
        });
    }
    let (psi_sq, phi_sq) = (psi_norm * psi_norm, phi_norm * phi_norm);
    if psi_norm <= tol || phi_norm <= tol || (psi_sq - phi_sq).abs() > cfg.norm_tolerance {
        return Err(Error::NormMismatch {
            psi: psi_sq,
            phi: phi_sq,
        });
    }

    let unit = |x: &[Complex64], n: f64| x.iter().map(|a| a / n).collect::<Vec<_>>();
    let beta = gram_schmidt(&li_set(&unit(psi_v, psi_norm), tol)?, tol)?;
    let alpha = gram_schmidt(&li_set(&unit(phi_v, phi_norm), tol)?, tol)?;
    Ok(CMatrix::outer_sum(&alpha, &beta))
}

/// Coin for one step: each vertex block of `psi` is rotated onto [`target_phi`].
pub fn build_coin(
    g: &Graph,
    psi: &Wavefunction,
    p_t: &TransitionMatrix,
    pi_t: &ProbabilityVector,
    cfg: &BuildConfig,
) -> Result<CoinOperator> {
    let n = g.vertex_count();
    for (expected, found) in [(g.dimension(), psi.len()), (n, p_t.dim()), (n, pi_t.len())] {
        if expected != found {
            return Err(Error::DimensionMismatch { expected, found });
        }
    }
    let blocks = (0..n)
        .map(|v| {
            let phi = target_phi(g, v, p_t, pi_t);
            coin_block(extract_vertex_block(psi, g, v), &phi, cfg).map_err(|e| Error::AtVertex {
                vertex: v,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CoinOperator::new(blocks))
}
