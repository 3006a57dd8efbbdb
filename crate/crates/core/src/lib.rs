//! Expected cycle statistics of the interchange process on the complete graph.
//!
//! Every transposition `(i, j)` of `{0, …, n−1}` rings at rate 1, so the walk
//! jumps at total rate `n(n−1)/2`. The crate computes `E(s_k(t))`, the expected
//! number of `k`-cycles at time `t`, by three independent routes:
//!
//! * [`closed_form`]: the incomplete-beta formula, in floating point and in
//!   exact rational arithmetic;
//! * [`rep_theory`]: the sum over irreducible characters of `S_n`, evaluated
//!   with exact coefficients and certified fixed-point exponentials;
//! * [`oracle`] and [`simulator`]: the class-level Markov chain for `n ≤ 8`,
//!   and Monte Carlo simulation of the walk itself.
//!
//! [`transition`] quantifies the jump of `E(s_k)` from 0 to `1/k`.

pub mod closed_form;
pub mod error;
pub mod numeric;
pub mod oracle;
pub mod rep_theory;
pub mod simulator;
pub mod transition;

pub use closed_form::{expected_cycles, expected_cycles_at_x, ModelParams};
pub use error::{Error, Result};
pub use rep_theory::{cycle_basis, spectral_expected_cycles, CycleBasis, RepTerm, YoungDiagram};
pub use simulator::{monte_carlo, CycleState, Estimate, McConfig};
pub use transition::{critical_time, measure_window, TransitionParams, TransitionProfile};
