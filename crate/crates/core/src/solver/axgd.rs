use super::{combine, ensure_finite, next_weight, SolverState};
use crate::error::{Error, Result};
use crate::mirror::ProxSetup;
use crate::oracle::{eval_gradient, Oracle};
use crate::schedule::StepSchedule;

/// One AXGD iteration:
///
/// ```text
/// x̂ = (A/A⁺)·x + (a/A⁺)·∇ψ*(z)
/// ẑ = z − a·∇f(x̂)
/// x⁺ = (A/A⁺)·x + (a/A⁺)·∇ψ*(ẑ)
/// z⁺ = z − a·∇f(x⁺)
/// ```
pub fn axgd_step<O: Oracle + ?Sized>(
    state: &SolverState,
    oracle: &O,
    setup: &ProxSetup,
    schedule: &StepSchedule,
) -> Result<SolverState> {
    let k = state.k + 1;
    let (a, a_next) = next_weight(schedule, state)?;

    let x_hat = combine(
        state.a_sum,
        a,
        a_next,
        &state.x,
        &setup.grad_psi_star(&state.z),
    );
    let g_hat = eval_gradient(oracle, &x_hat).map_err(|e| e.at_iteration(k))?;
    let z_hat = &state.z - &g_hat * a;
    let x = combine(
        state.a_sum,
        a,
        a_next,
        &state.x,
        &setup.grad_psi_star(&z_hat),
    );
    let g = eval_gradient(oracle, &x).map_err(|e| e.at_iteration(k))?;
    let z = &state.z - &g * a;

    ensure_finite(&z_hat, "dual predictor", k)?;
    ensure_finite(&x, "primal iterate", k)?;
    ensure_finite(&z, "dual iterate", k)?;
    Ok(SolverState {
        probe: x.clone(),
        x_grad_point: x.clone(),
        x,
        z,
        x_hat,
        z_hat,
        probe_gradient: g,
        hat_gradient: g_hat,
        weight: a,
        a_sum: a_next,
        k,
    })
}

/// Outcome of the implicit-Euler fixed-point loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerReport {
    /// Number of primal sweeps, counting the predictor as the first.
    pub sweeps: usize,
    /// Primal-norm distance between the last two sweeps.
    pub residual: f64,
    pub converged: bool,
}

/// Solve `x⁺ = (A/A⁺)·x + (a/A⁺)·∇ψ*(z − a·∇f(x⁺))` by fixed-point iteration
/// from the AXGD predictor, then set `z⁺ = z − a·∇f(x⁺)`.
///
/// With `max_inner = 2` the result is bitwise identical to [`axgd_step`].
/// Hitting `max_inner` before `tol` is reported, not an error.
pub fn implicit_euler_step<O: Oracle + ?Sized>(
    state: &SolverState,
    oracle: &O,
    setup: &ProxSetup,
    schedule: &StepSchedule,
    tol: f64,
    max_inner: usize,
) -> Result<(SolverState, InnerReport)> {
    if max_inner < 2 {
        return Err(Error::usage(format!(
            "max_inner must be at least 2, got {max_inner}"
        )));
    }
    if !(tol >= 0.0) {
        return Err(Error::usage(format!(
            "tolerance must be nonnegative, got {tol}"
        )));
    }
    let k = state.k + 1;
    let (a, a_next) = next_weight(schedule, state)?;

    let x_hat = combine(
        state.a_sum,
        a,
        a_next,
        &state.x,
        &setup.grad_psi_star(&state.z),
    );
    let mut current = x_hat.clone();
    let mut sweeps = 1;
    let mut residual;
    let mut first: Option<(crate::oracle::Vector, crate::oracle::Vector)> = None;
    loop {
        let g = eval_gradient(oracle, &current).map_err(|e| e.at_iteration(k))?;
        let z_trial = &state.z - &g * a;
        let next = combine(
            state.a_sum,
            a,
            a_next,
            &state.x,
            &setup.grad_psi_star(&z_trial),
        );
        ensure_finite(&next, "implicit iterate", k)?;
        sweeps += 1;
        residual = setup.norm(&(&next - &current));
        if first.is_none() {
            first = Some((g, z_trial));
        }
        current = next;
        if residual <= tol || sweeps >= max_inner {
            break;
        }
    }
    let (g_hat, z_hat) = first.expect("at least one corrector sweep");
    let g = eval_gradient(oracle, &current).map_err(|e| e.at_iteration(k))?;
    let z = &state.z - &g * a;
    ensure_finite(&z, "dual iterate", k)?;

    let report = InnerReport {
        sweeps,
        residual,
        converged: residual <= tol,
    };
    Ok((
        SolverState {
            probe: current.clone(),
            x_grad_point: current.clone(),
            x: current,
            z,
            x_hat,
            z_hat,
            probe_gradient: g,
            hat_gradient: g_hat,
            weight: a,
            a_sum: a_next,
            k,
        },
        report,
    ))
}
