//! Coined quantum walks whose vertex probabilities follow a given random walk.
//!
//! For any random walk `pi(t + 1) = P(t) pi(t)` on a finite graph, this crate
//! builds a time-dependent walk `psi(t + 1) = S W(t) psi(t)` on the directed
//! edges of the same graph whose vertex marginals equal `pi(t)` at every
//! step. `S` is the flip-flop shift and `W(t)` is a block-diagonal coin
//! assembled per vertex from two Gram-Schmidt bases.
//!
//! ```
//! use walkmatch::{run_matched, BuildConfig, Graph, MatchTolerances, ProbabilityVector,
//!     StochasticSchedule, TransitionMatrix};
//!
//! let g = Graph::from_edges(&[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
//! let schedule = StochasticSchedule::Homogeneous(TransitionMatrix::uniform(&g));
//! let pi0 = ProbabilityVector::point_mass(4, 0);
//! let report = run_matched(&g, &schedule, &pi0, 10, &BuildConfig::default(),
//!     MatchTolerances::default()).unwrap();
//! assert!(report.passed);
//! ```

pub mod classical;
pub mod cli;
pub mod error;
pub mod formats;
pub mod graph;
pub mod instance;
pub mod quantum;
pub mod verifier;

pub use classical::{evolve, step, validate_schedule, ProbabilityVector, StochasticSchedule, TransitionMatrix};
pub use error::{Error, Result};
pub use graph::{EdgeState, Graph};
pub use instance::{generate_instance, Instance, ScheduleMode};
pub use quantum::{BuildConfig, CoinOperator, MatchedWalk, ShiftPermutation, Wavefunction};
pub use verifier::{run_matched, MatchReport, MatchTolerances};
