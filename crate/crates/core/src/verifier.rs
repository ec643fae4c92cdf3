//! Independent numerical checks of the matched construction.
//!
//! [`run_matched`] drives a [`MatchedWalk`] and, at every step, compares the
//! quantum marginals with the classical distribution, checks every coin block
//! for unitarity, compares the state with the closed form built directly
//! from `P(t)` and `pi(t)`, and replays the step with dense `S` and `W`.

use num_complex::Complex64;
use serde::Serialize;

use crate::classical::{validate_schedule, ProbabilityVector, StochasticSchedule};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::quantum::{
    closed_form_state, BuildConfig, CMatrix, CoinOperator, MatchedWalk, ShiftPermutation, StepRecord,
    Wavefunction,
};

/// Largest flat dimension for which dense operators are materialized.
pub const DENSE_ORACLE_LIMIT: usize = 512;

/// Worst entrywise deviation of `M^dagger M` and `M M^dagger` from the identity.
pub fn check_unitary(m: &CMatrix) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let adj = m.adjoint();
    Ok(adj
        .matmul(m)
        .identity_deviation()
        .max(m.matmul(&adj).identity_deviation()))
}

/// Dense 0/1 matrix of the shift: column `i` has its single one in row `image(i)`.
pub fn dense_shift(shift: &ShiftPermutation) -> CMatrix {
    let m = shift.len();
    let mut s = CMatrix::zeros(m, m);
    for i in 0..m {
        s[(shift.image(i), i)] = Complex64::new(1.0, 0.0);
    }
    s
}

/// Dense block-diagonal coin over the full walker space.
pub fn dense_coin(g: &Graph, coin: &CoinOperator) -> CMatrix {
    let m = g.dimension();
    let mut w = CMatrix::zeros(m, m);
    for (v, block) in coin.blocks().iter().enumerate() {
        let off = g.offset(v);
        for i in 0..block.rows() {
            for j in 0..block.cols() {
                w[(off + i, off + j)] = block[(i, j)];
            }
        }
    }
    w
}

/// `S (W psi)` by explicit dense matrix-vector products.
pub fn dense_oracle(
    g: &Graph,
    shift: &ShiftPermutation,
    coin: &CoinOperator,
    psi: &Wavefunction,
) -> Wavefunction {
    let s = dense_shift(shift);
    let w = dense_coin(g, coin);
    Wavefunction::new(s.mul_vec(&w.mul_vec(psi.amplitudes())))
}

/// Thresholds a [`MatchReport`] is judged against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatchTolerances {
    /// `max |mu(v, t) - pi_v(t)|`.
    pub deviation: f64,
    pub unitarity: f64,
    /// `| |psi(t)| - 1 |`.
    pub norm: f64,
    pub closed_form: f64,
    pub oracle: f64,
}

impl Default for MatchTolerances {
    fn default() -> Self {
        Self {
            deviation: 1e-9,
            unitarity: 1e-12,
            norm: 1e-10,
            closed_form: 1e-10,
            oracle: 1e-12,
        }
    }
}

impl MatchTolerances {
    pub fn with_deviation(deviation: f64) -> Self {
        Self {
            deviation,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchReport {
    pub horizon: usize,
    pub max_abs_deviation: f64,
    /// `max_v |mu(v, t) - pi_v(t)|` for `t = 0..=horizon`.
    pub per_step_deviation: Vec<f64>,
    pub unitarity_worst: f64,
    pub norm_worst: f64,
    pub closed_form_worst: f64,
    /// `None` when the walker space exceeds [`DENSE_ORACLE_LIMIT`].
    pub oracle_worst: Option<f64>,
    pub shift_involution: bool,
    pub coin_blocks_checked: usize,
    pub tolerances: MatchTolerances,
    pub failures: Vec<String>,
    pub passed: bool,
    /// `pi(t)` for every completed step.
    #[serde(skip)]
    pub classical: Vec<Vec<f64>>,
    /// `mu(t)` for every completed step.
    #[serde(skip)]
    pub quantum: Vec<Vec<f64>>,
}

impl MatchReport {
    fn new(horizon: usize, tolerances: MatchTolerances) -> Self {
        Self {
            horizon,
            max_abs_deviation: 0.0,
            per_step_deviation: Vec::with_capacity(horizon + 1),
            unitarity_worst: 0.0,
            norm_worst: 0.0,
            closed_form_worst: 0.0,
            oracle_worst: None,
            shift_involution: false,
            coin_blocks_checked: 0,
            tolerances,
            failures: Vec::new(),
            passed: false,
            classical: Vec::with_capacity(horizon + 1),
            quantum: Vec::with_capacity(horizon + 1),
        }
    }

    fn record_state(&mut self, walk: &MatchedWalk) {
        let mu = walk.vertex_probabilities();
        let pi = walk.classical();
        let dev = pi.max_abs_diff(&mu);
        self.per_step_deviation.push(dev);
        self.max_abs_deviation = self.max_abs_deviation.max(dev);
        self.norm_worst = self.norm_worst.max((walk.state().norm() - 1.0).abs());
        self.classical.push(pi.as_slice().to_vec());
        self.quantum.push(mu);
    }

    fn record_step(&mut self, walk: &MatchedWalk, rec: &StepRecord) -> Result<()> {
        let g = walk.graph();
        for block in rec.coin.blocks() {
            self.unitarity_worst = self.unitarity_worst.max(check_unitary(block)?);
            self.coin_blocks_checked += 1;
        }
        let closed = closed_form_state(g, &rec.matrix, &rec.pi_before);
        self.closed_form_worst = self.closed_form_worst.max(walk.state().max_abs_diff(&closed));
        if g.dimension() <= DENSE_ORACLE_LIMIT {
            let dense = dense_oracle(g, walk.shift(), &rec.coin, &rec.psi_before);
            let diff = walk.state().max_abs_diff(&dense);
            self.oracle_worst = Some(self.oracle_worst.map_or(diff, |w| w.max(diff)));
        }
        Ok(())
    }

    fn finish(&mut self) {
        let tol = self.tolerances;
        let checks = [
            ("vertex probability deviation", self.max_abs_deviation, tol.deviation),
            ("coin unitarity", self.unitarity_worst, tol.unitarity),
            ("state norm", self.norm_worst, tol.norm),
            ("closed-form state", self.closed_form_worst, tol.closed_form),
            ("dense oracle", self.oracle_worst.unwrap_or(0.0), tol.oracle),
        ];
        for (name, value, limit) in checks {
            if value.is_nan() || value > limit {
                self.failures
                    .push(format!("{name} {value:e} exceeds tolerance {limit:e}"));
            }
        }
        if !self.shift_involution {
            self.failures.push("shift is not an involution".into());
        }
        self.passed = self.failures.is_empty();
    }
}

/// Runs the matched construction for `horizon` steps and certifies it.
pub fn run_matched(
    g: &Graph,
    schedule: &StochasticSchedule,
    pi0: &ProbabilityVector,
    horizon: usize,
    cfg: &BuildConfig,
    tolerances: MatchTolerances,
) -> Result<MatchReport> {
    run_matched_observed(g, schedule, pi0, horizon, cfg, tolerances, |_, _| {})
}

/// Like [`run_matched`], calling `observe` with the walk and record after each step.
pub fn run_matched_observed(
    g: &Graph,
    schedule: &StochasticSchedule,
    pi0: &ProbabilityVector,
    horizon: usize,
    cfg: &BuildConfig,
    tolerances: MatchTolerances,
    mut observe: impl FnMut(&MatchedWalk, &StepRecord),
) -> Result<MatchReport> {
    validate_schedule(schedule, g, horizon).into_result()?;
    let mut walk = MatchedWalk::new(g.clone(), schedule.clone(), pi0.clone(), *cfg)?;

    let mut report = MatchReport::new(horizon, tolerances);
    report.shift_involution = walk.shift().is_permutation() && walk.shift().is_involution();
    report.record_state(&walk);
    for _ in 0..horizon {
        let rec = match walk.step() {
            Ok(rec) => rec,
            Err(e) => {
                report
                    .failures
                    .push(format!("step {} construction failed: {e}", walk.time()));
                break;
            }
        };
        report.record_step(&walk, &rec)?;
        report.record_state(&walk);
        observe(&walk, &rec);
    }
    report.finish();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::TransitionMatrix;
    use crate::quantum::{initial_state, qw_step};

    fn c4() -> Graph {
        Graph::from_edges(&[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn unitary_checks() {
        assert_eq!(check_unitary(&CMatrix::identity(4)).unwrap(), 0.0);
        let mut m = CMatrix::identity(3);
        m[(1, 1)] = Complex64::new(0.0, 0.0);
        assert!(check_unitary(&m).unwrap() >= 1.0);
        assert!(matches!(
            check_unitary(&CMatrix::zeros(2, 3)),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn dense_shift_is_a_permutation_matrix() {
        let s = dense_shift(&ShiftPermutation::flip_flop(&c4()));
        for i in 0..s.rows() {
            let ones = (0..s.cols()).filter(|&j| s[(i, j)] == Complex64::new(1.0, 0.0)).count();
            let zeros = (0..s.cols()).filter(|&j| s[(i, j)] == Complex64::new(0.0, 0.0)).count();
            assert_eq!((ones, zeros), (1, s.cols() - 1));
            let col_ones = (0..s.rows()).filter(|&j| s[(j, i)].re == 1.0).count();
            assert_eq!(col_ones, 1);
        }
    }

    #[test]
    fn dense_oracle_with_identity_coin_permutes() {
        let g = c4();
        let shift = ShiftPermutation::flip_flop(&g);
        let psi = initial_state(&g, &ProbabilityVector::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap());
        let dense = dense_oracle(&g, &shift, &CoinOperator::identity(&g), &psi);
        assert_eq!(dense, shift.apply(&psi));
    }

    #[test]
    fn dense_oracle_agrees_on_triangle() {
        let g = Graph::from_edges(&[(0, 1), (1, 2), (0, 2)]).unwrap();
        let p = TransitionMatrix::uniform(&g);
        let pi = ProbabilityVector::point_mass(3, 0);
        let psi = initial_state(&g, &pi);
        let shift = ShiftPermutation::flip_flop(&g);
        let coin = crate::quantum::build_coin(&g, &psi, &p, &pi, &BuildConfig::default()).unwrap();
        let fast = qw_step(&g, &psi, &shift, &coin);
        assert!(fast.max_abs_diff(&dense_oracle(&g, &shift, &coin, &psi)) <= 1e-12);
    }

    #[test]
    fn run_matched_on_cycle() {
        let g = c4();
        let s = StochasticSchedule::Homogeneous(TransitionMatrix::uniform(&g));
        let report = run_matched(
            &g,
            &s,
            &ProbabilityVector::point_mass(4, 0),
            10,
            &BuildConfig::default(),
            MatchTolerances::default(),
        )
        .unwrap();
        assert!(report.passed, "{:?}", report.failures);
        assert!(report.max_abs_deviation <= 1e-10);
        assert_eq!(report.per_step_deviation.len(), 11);
        assert_eq!(report.classical.len(), 11);
        assert_eq!(report.coin_blocks_checked, 40);
    }

    #[test]
    fn zero_horizon_has_zero_deviation() {
        let g = c4();
        let s = StochasticSchedule::Homogeneous(TransitionMatrix::uniform(&g));
        let pi0 = ProbabilityVector::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let report = run_matched(&g, &s, &pi0, 0, &BuildConfig::default(), MatchTolerances::default())
            .unwrap();
        assert!(report.passed);
        assert_eq!(report.per_step_deviation.len(), 1);
        assert!(report.per_step_deviation[0] < 1e-15);
        assert_eq!(report.oracle_worst, None);
    }

    #[test]
    fn invalid_schedule_is_an_error() {
        let g = c4();
        let s = StochasticSchedule::Sequence(vec![TransitionMatrix::uniform(&g)]);
        let err = run_matched(
            &g,
            &s,
            &ProbabilityVector::uniform(4),
            3,
            &BuildConfig::default(),
            MatchTolerances::default(),
        );
        assert!(matches!(err, Err(Error::InvalidSchedule(_))));
    }

    #[test]
    fn breach_flips_passed() {
        let g = c4();
        let s = StochasticSchedule::Homogeneous(TransitionMatrix::uniform(&g));
        let tight = MatchTolerances {
            deviation: -1.0,
            ..MatchTolerances::default()
        };
        let report =
            run_matched(&g, &s, &ProbabilityVector::uniform(4), 2, &BuildConfig::default(), tight)
                .unwrap();
        assert!(!report.passed);
        assert_eq!(report.failures.len(), 1);
    }
}
