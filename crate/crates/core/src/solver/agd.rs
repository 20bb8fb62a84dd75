use super::{combine, ensure_finite, next_weight, SolverState};
use crate::error::{Error, Result};
use crate::mirror::{Domain, ProxSetup};
use crate::oracle::{eval_gradient, Oracle, Vector};
use crate::schedule::StepSchedule;

/// `argmin_{x̂ ∈ X} ⟨∇f(x), x̂ − x⟩ + (L/2)‖x̂ − x‖₂²`, i.e. the ℓ2 projection
/// of `x − ∇f(x)/L`. The norm is ℓ2 whatever the prox geometry.
pub fn grad_step<O: Oracle + ?Sized>(
    oracle: &O,
    smoothness: f64,
    x: &Vector,
    domain: &Domain,
) -> Result<Vector> {
    if !(smoothness > 0.0) || !smoothness.is_finite() {
        return Err(Error::usage(format!(
            "L must be positive, got {smoothness}"
        )));
    }
    let g = eval_gradient(oracle, x)?;
    Ok(domain.project(&(x - g / smoothness)))
}

/// One AGD iteration:
///
/// ```text
/// x⁺ = (A/A⁺)·x̂ + (a/A⁺)·∇ψ*(z)
/// z⁺ = z − a·∇f(x⁺)
/// x̂⁺ = Grad(x⁺)
/// ```
///
/// `x̂` is `state.x_grad_point`; the gradient step issues its own query.
pub fn agd_step<O: Oracle + ?Sized>(
    state: &SolverState,
    oracle: &O,
    setup: &ProxSetup,
    schedule: &StepSchedule,
    smoothness: f64,
) -> Result<SolverState> {
    let k = state.k + 1;
    let (a, a_next) = next_weight(schedule, state)?;
    let x = combine(
        state.a_sum,
        a,
        a_next,
        &state.x_grad_point,
        &setup.grad_psi_star(&state.z),
    );
    let g = eval_gradient(oracle, &x).map_err(|e| e.at_iteration(k))?;
    let z = &state.z - &g * a;
    let x_grad_point =
        grad_step(oracle, smoothness, &x, setup.domain()).map_err(|e| e.at_iteration(k))?;
    ensure_finite(&x, "primal iterate", k)?;
    ensure_finite(&z, "dual iterate", k)?;
    ensure_finite(&x_grad_point, "gradient step", k)?;
    Ok(SolverState {
        probe: x.clone(),
        x_hat: x.clone(),
        z_hat: z.clone(),
        x,
        z,
        x_grad_point,
        hat_gradient: g.clone(),
        probe_gradient: g,
        weight: a,
        a_sum: a_next,
        k,
    })
}

/// Gradient descent with fixed step `1/L`. Returns `x_0, …, x_steps`.
pub fn gd_run<O: Oracle + ?Sized>(
    oracle: &O,
    smoothness: f64,
    x0: &Vector,
    domain: &Domain,
    steps: usize,
) -> Result<Vec<Vector>> {
    if steps == 0 {
        return Err(Error::usage("steps must be at least 1"));
    }
    let mut iterates = Vec::with_capacity(steps + 1);
    iterates.push(x0.clone());
    let mut x = x0.clone();
    for k in 1..=steps {
        x = grad_step(oracle, smoothness, &x, domain).map_err(|e| e.at_iteration(k))?;
        iterates.push(x.clone());
    }
    Ok(iterates)
}
