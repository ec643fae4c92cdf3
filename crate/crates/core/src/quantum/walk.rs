use super::{build_coin, initial_state, qw_step, BuildConfig, CoinOperator, ShiftPermutation, Wavefunction};
use crate::classical::{self, ProbabilityVector, StochasticSchedule, TransitionMatrix};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Operators and inputs of one constructed step.
#[derive(Debug, Clone)]
pub struct StepRecord {
    /// Step index; the record maps the state at `t` to the state at `t + 1`.
    pub t: usize,
    pub matrix: TransitionMatrix,
    pub pi_before: ProbabilityVector,
    pub psi_before: Wavefunction,
    pub coin: CoinOperator,
}

/// Co-evolves a classical walk and the quantum walk that matches it.
///
/// Each call to [`MatchedWalk::step`] reads `P(t)`, builds the coin `W(t)`
/// from the current wavefunction and `pi(t)`, applies `S W(t)`, and advances
/// `pi` classically.
#[derive(Debug, Clone)]
pub struct MatchedWalk {
    graph: Graph,
    schedule: StochasticSchedule,
    config: BuildConfig,
    shift: ShiftPermutation,
    t: usize,
    pi: ProbabilityVector,
    psi: Wavefunction,
}

impl MatchedWalk {
    pub fn new(
        graph: Graph,
        schedule: StochasticSchedule,
        pi0: ProbabilityVector,
        config: BuildConfig,
    ) -> Result<Self> {
        config.validate()?;
        if pi0.len() != graph.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: graph.vertex_count(),
                found: pi0.len(),
            });
        }
        let shift = ShiftPermutation::flip_flop(&graph);
        let psi = initial_state(&graph, &pi0);
        Ok(Self {
            graph,
            schedule,
            config,
            shift,
            t: 0,
            pi: pi0,
            psi,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn schedule(&self) -> &StochasticSchedule {
        &self.schedule
    }

    pub fn shift(&self) -> &ShiftPermutation {
        &self.shift
    }

    pub fn time(&self) -> usize {
        self.t
    }

    /// Classical distribution `pi(t)`.
    pub fn classical(&self) -> &ProbabilityVector {
        &self.pi
    }

    pub fn state(&self) -> &Wavefunction {
        &self.psi
    }

    pub fn vertex_probabilities(&self) -> Vec<f64> {
        super::vertex_probabilities(&self.psi, &self.graph)
    }

    pub fn step(&mut self) -> Result<StepRecord> {
        let matrix = self.schedule.matrix_at(&self.graph, self.t)?.into_owned();
        let coin = build_coin(&self.graph, &self.psi, &matrix, &self.pi, &self.config)?;
        let next_psi = qw_step(&self.graph, &self.psi, &self.shift, &coin);
        let next_pi = classical::step(&self.graph, &matrix, &self.pi)?;

        let record = StepRecord {
            t: self.t,
            matrix,
            pi_before: std::mem::replace(&mut self.pi, next_pi),
            psi_before: std::mem::replace(&mut self.psi, next_psi),
            coin,
        };
        self.t += 1;
        Ok(record)
    }
}
