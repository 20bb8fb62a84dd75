//! AXGD, AGD, GD, the implicit-Euler reference stepper, and a driver.
//!
//! All accelerated steppers share the same state layout and the initial
//! conditions `z⁰ = ∇ψ(x̂⁰)`, `A_0 = 0`.

mod agd;
mod axgd;
mod flow;

pub use agd::{agd_step, gd_run, grad_step};
pub use axgd::{axgd_step, implicit_euler_step, InnerReport};
pub use flow::{flow_diagnostics, integrate_amd_flow, AlphaSpec, FlowDiagnostics, FlowSample};

use crate::error::{Error, Result};
use crate::mirror::ProxSetup;
use crate::oracle::{eval_gradient, eval_value, Oracle, Vector};
use crate::schedule::StepSchedule;

/// Default stopping tolerance of the implicit-Euler inner loop.
pub const IMPLICIT_TOL: f64 = 1e-12;
/// Default sweep budget of the implicit-Euler inner loop.
pub const IMPLICIT_MAX_INNER: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub struct SolverState {
    /// Primal iterate `x^{(k)}`.
    pub x: Vector,
    /// Dual accumulator `z^{(k)}`.
    pub z: Vector,
    /// AXGD predictor `x̂^{(k−1)}` from the latest step.
    pub x_hat: Vector,
    /// AXGD dual predictor `ẑ^{(k−1)}` from the latest step.
    pub z_hat: Vector,
    /// AGD's gradient-step output.
    pub x_grad_point: Vector,
    /// Point whose gradient entered the latest `z` update.
    pub probe: Vector,
    /// Gradient used in the latest `z` update.
    pub probe_gradient: Vector,
    /// Gradient at `x_hat` from the latest AXGD step.
    pub hat_gradient: Vector,
    /// Latest weight `a_k` (0 before the first step).
    pub weight: f64,
    /// Running sum `A_k`.
    pub a_sum: f64,
    pub k: usize,
}

pub fn init_state(x0: &Vector, setup: &ProxSetup) -> Result<SolverState> {
    if !setup.domain().contains(x0, 1e-12) {
        return Err(Error::usage("initial point lies outside the prox domain"));
    }
    let z = setup.grad_psi(x0)?;
    let n = x0.len();
    Ok(SolverState {
        x: x0.clone(),
        x_hat: x0.clone(),
        z_hat: z.clone(),
        z,
        x_grad_point: x0.clone(),
        probe: x0.clone(),
        probe_gradient: Vector::zeros(n),
        hat_gradient: Vector::zeros(n),
        weight: 0.0,
        a_sum: 0.0,
        k: 0,
    })
}

/// `(A/A⁺)·x + (a/A⁺)·y`.
pub(crate) fn combine(a_sum: f64, a: f64, a_next: f64, x: &Vector, y: &Vector) -> Vector {
    x * (a_sum / a_next) + y * (a / a_next)
}

pub(crate) fn next_weight(schedule: &StepSchedule, state: &SolverState) -> Result<(f64, f64)> {
    let k = state.k + 1;
    let a = schedule.weight(k);
    if !(a > 0.0) || !a.is_finite() {
        return Err(
            Error::numeric(format!("step weight a_{k} = {a} is not positive")).at_iteration(k),
        );
    }
    Ok((a, state.a_sum + a))
}

pub(crate) fn ensure_finite(v: &Vector, what: &str, k: usize) -> Result<()> {
    if v.iter().all(|t| t.is_finite()) {
        Ok(())
    } else {
        Err(Error::numeric(format!("{what} became non-finite")).at_iteration(k))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    Axgd,
    /// AGD with an ℓ2 gradient step of length `1/L`.
    Agd {
        smoothness: f64,
    },
    /// Projected gradient descent with step `1/L`.
    Gd {
        smoothness: f64,
    },
    Implicit {
        tol: f64,
        max_inner: usize,
    },
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Axgd => "axgd",
            Method::Agd { .. } => "agd",
            Method::Gd { .. } => "gd",
            Method::Implicit { .. } => "implicit",
        }
    }
}

/// What the observer sees after each iteration.
#[derive(Debug)]
pub struct IterationView<'a> {
    pub k: usize,
    /// Point whose value is the upper bound `U_k`.
    pub point: &'a Vector,
    pub value: f64,
    /// Linearization point fed to the lower bound, with its value and the
    /// gradient the method actually used there.
    pub probe: &'a Vector,
    pub probe_value: f64,
    pub probe_gradient: &'a Vector,
    pub weight: f64,
    pub a_sum: f64,
    /// Cumulative gradient queries.
    pub grad_queries: usize,
    pub inner: Option<InnerReport>,
    pub state: &'a SolverState,
    pub previous: &'a SolverState,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationRecord {
    pub k: usize,
    pub value: f64,
    pub weight: f64,
    pub a_sum: f64,
    pub grad_queries: usize,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub state: SolverState,
    pub records: Vec<IterationRecord>,
}

/// Drive `method` for `steps` iterations from `x0`, calling `observer` once
/// per iteration.
pub fn run<O, F>(
    method: &Method,
    oracle: &O,
    setup: &ProxSetup,
    schedule: &StepSchedule,
    x0: &Vector,
    steps: usize,
    mut observer: F,
) -> Result<RunOutcome>
where
    O: Oracle + ?Sized,
    F: FnMut(&IterationView<'_>) -> Result<()>,
{
    if steps == 0 {
        return Err(Error::usage("steps must be at least 1"));
    }
    let mut state = init_state(x0, setup)?;
    let mut records = Vec::with_capacity(steps);
    let mut queries = 0usize;
    for _ in 0..steps {
        let (next, used, inner) = match *method {
            Method::Axgd => (axgd_step(&state, oracle, setup, schedule)?, 2, None),
            Method::Agd { smoothness } => (
                agd_step(&state, oracle, setup, schedule, smoothness)?,
                2,
                None,
            ),
            Method::Gd { smoothness } => (
                gd_step(&state, oracle, setup, schedule, smoothness)?,
                1,
                None,
            ),
            Method::Implicit { tol, max_inner } => {
                let (s, report) =
                    implicit_euler_step(&state, oracle, setup, schedule, tol, max_inner)?;
                (s, report.sweeps, Some(report))
            }
        };
        queries += used;
        let point = match method {
            Method::Agd { .. } => &next.x_grad_point,
            _ => &next.x,
        };
        let value = eval_value(oracle, point).map_err(|e| e.at_iteration(next.k))?;
        let probe_value = eval_value(oracle, &next.probe).map_err(|e| e.at_iteration(next.k))?;
        let view = IterationView {
            k: next.k,
            point,
            value,
            probe: &next.probe,
            probe_value,
            probe_gradient: &next.probe_gradient,
            weight: next.weight,
            a_sum: next.a_sum,
            grad_queries: queries,
            inner,
            state: &next,
            previous: &state,
        };
        observer(&view)?;
        records.push(IterationRecord {
            k: next.k,
            value,
            weight: next.weight,
            a_sum: next.a_sum,
            grad_queries: queries,
        });
        state = next;
    }
    Ok(RunOutcome { state, records })
}

/// One projected-gradient step; the certificate bookkeeping (`z`, `A`)
/// advances with the schedule weight at the point where the gradient was
/// taken.
fn gd_step<O: Oracle + ?Sized>(
    state: &SolverState,
    oracle: &O,
    setup: &ProxSetup,
    schedule: &StepSchedule,
    smoothness: f64,
) -> Result<SolverState> {
    let k = state.k + 1;
    let (a, a_next) = next_weight(schedule, state)?;
    let g = eval_gradient(oracle, &state.x).map_err(|e| e.at_iteration(k))?;
    let x_next = setup.domain().project(&(&state.x - &g / smoothness));
    ensure_finite(&x_next, "gradient step", k)?;
    let z = &state.z - &g * a;
    Ok(SolverState {
        probe: state.x.clone(),
        x_hat: state.x.clone(),
        z_hat: z.clone(),
        z,
        x_grad_point: x_next.clone(),
        x: x_next,
        hat_gradient: g.clone(),
        probe_gradient: g,
        weight: a,
        a_sum: a_next,
        k,
    })
}
