//! Accelerated extra-gradient descent (AXGD) and friends.
//!
//! The crate is organized bottom-up:
//!
//! - [`oracle`]: first-order oracles (value + gradient), the benchmark
//!   instances, and a seeded Gaussian gradient-noise wrapper.
//! - [`mirror`]: prox setups (Euclidean, entropy on the simplex) with their
//!   conjugates and Bregman divergences, plus Euclidean simplex projection.
//! - [`schedule`]: step weights `a_k` for smooth, Hölder and Lipschitz
//!   objectives.
//! - [`solver`]: AXGD, AGD, GD, the implicit-Euler reference stepper and a
//!   forward-Euler integrator for the continuous accelerated dynamics.
//! - [`gap`]: the primal-dual approximate optimality gap and the
//!   discretization-error monitor.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod gap;
pub mod mirror;
pub mod oracle;
pub mod schedule;
pub mod solver;

pub use error::{Error, Result};
pub use gap::{GapAccumulator, GapMode, GapMonitor, GapRow};
pub use mirror::{project_simplex, Domain, Geometry, ProxSetup};
pub use oracle::{
    eval_gradient, eval_value, Constants, NoiseSpec, Noisy, Optimum, Oracle, Provenance, Vector,
};
pub use schedule::StepSchedule;
pub use solver::{run, IterationView, Method, RunOutcome, SolverState};
