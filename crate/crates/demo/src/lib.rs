//! Three interactive operations over the cycle-Laplacian benchmark, exposed
//! to JavaScript through `wasm-bindgen`. Every series comes back as one flat
//! `Float64Array`; the layout is documented per function.
//!
//! The plain functions in this crate are ordinary Rust and are what the
//! tests exercise; the `#[wasm_bindgen]` wrappers in [`web`] only convert
//! errors.

use axgd_core::oracle::{cycle_quadratic, wrap_noisy, CycleVariant, NoiseSpec};
use axgd_core::schedule::{hoelder_schedule, lipschitz_schedule, smooth_schedule};
use axgd_core::{
    run, Domain, GapMode, GapMonitor, Method, Oracle, ProxSetup, StepSchedule, Vector,
};

pub mod web;

/// Smoothness and strong-convexity constant used for the cycle instances.
pub const CYCLE_L: f64 = 4.0;
/// Upper bound on `steps` accepted from the page.
pub const MAX_STEPS: usize = 20_000;
/// Upper bound on the problem dimension accepted from the page.
pub const MAX_DIM: usize = 2_000;

pub type Result<T> = std::result::Result<T, String>;

fn check_size(n: usize, steps: usize) -> Result<()> {
    if !(3..=MAX_DIM).contains(&n) {
        return Err(format!("n must lie in [3, {MAX_DIM}], got {n}"));
    }
    if !(1..=MAX_STEPS).contains(&steps) {
        return Err(format!("steps must lie in [1, {MAX_STEPS}], got {steps}"));
    }
    Ok(())
}

fn setup_for(domain: &str, n: usize) -> Result<(CycleVariant, ProxSetup, Vector)> {
    let err = |e: axgd_core::Error| e.to_string();
    match domain {
        "simplex" => Ok((
            CycleVariant::Simplex,
            ProxSetup::entropy_simplex(CYCLE_L).map_err(err)?,
            Vector::from_element(n, 1.0 / n as f64),
        )),
        "unconstrained" => Ok((
            CycleVariant::Drift,
            ProxSetup::euclidean(CYCLE_L, Domain::Unconstrained).map_err(err)?,
            Vector::zeros(n),
        )),
        other => Err(format!(
            "unknown domain {other:?}; use simplex or unconstrained"
        )),
    }
}

/// Exact gap `f(x_k) − f*` of AXGD, AGD and GD on the `n`-node cycle
/// quadratic. On the unconstrained domain the objective drifts along the
/// all-ones direction, so the gap is measured with that component removed.
///
/// Layout: `[axgd_1..axgd_steps, agd_1.., gd_1..]`, `3·steps` values.
pub fn compare_methods(domain: &str, n: usize, steps: usize) -> Result<Vec<f64>> {
    check_size(n, steps)?;
    let (variant, setup, x0) = setup_for(domain, n)?;
    let q = cycle_quadratic(n, variant).map_err(|e| e.to_string())?;
    let schedule = smooth_schedule(CYCLE_L, CYCLE_L).map_err(|e| e.to_string())?;
    let mut out = Vec::with_capacity(3 * steps);
    for method in [
        Method::Axgd,
        Method::Agd {
            smoothness: CYCLE_L,
        },
        Method::Gd {
            smoothness: CYCLE_L,
        },
    ] {
        run(&method, &q, &setup, &schedule, &x0, steps, |v| {
            out.push(q.excess(v.point).unwrap_or(f64::NAN));
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    }
    Ok(out)
}

/// AXGD on the simplex instance with additive Gaussian gradient noise of
/// variance `noise` per coordinate.
///
/// Layout: `[exact_1.., approx_1.., e_1..]`, `3·steps` values, where
/// `approx` is the certified gap `U_k − L_k` and `e` the per-step change of
/// `A_k·G_k` (`NaN` at `k = 1`).
pub fn gap_trace(n: usize, steps: usize, noise: f64, seed: u64) -> Result<Vec<f64>> {
    check_size(n, steps)?;
    let (variant, setup, x0) = setup_for("simplex", n)?;
    let q = cycle_quadratic(n, variant).map_err(|e| e.to_string())?;
    let opt = q
        .optimum()
        .expect("simplex instance carries an optimum")
        .clone();
    let oracle = wrap_noisy(
        &q,
        NoiseSpec {
            epsilon_eta: noise,
            seed,
        },
    )
    .map_err(|e| e.to_string())?;
    let schedule = smooth_schedule(CYCLE_L, CYCLE_L).map_err(|e| e.to_string())?;
    let mode = GapMode::OracleOptimum {
        x_star: opt.x,
        f_star: opt.value,
    };
    let mut monitor = GapMonitor::new(&x0, &setup, mode).map_err(|e| e.to_string())?;
    let mut exact = Vec::with_capacity(steps);
    let mut approx = Vec::with_capacity(steps);
    let mut errors = Vec::with_capacity(steps);
    run(&Method::Axgd, &oracle, &setup, &schedule, &x0, steps, |v| {
        let row = monitor.observe(v)?;
        exact.push(v.value - opt.value);
        approx.push(row.gap);
        errors.push(row.discretization_error.unwrap_or(f64::NAN));
        Ok(())
    })
    .map_err(|e| e.to_string())?;
    exact.extend(approx);
    exact.extend(errors);
    Ok(exact)
}

/// Step weights `a_k` and their running sums `A_k` for `k = 1..=steps`.
///
/// `kind` is `smooth` (uses `constant` as `L`), `hoelder` (`constant` is
/// `L_ν`, with `nu` and diameter `radius`) or `lipschitz` (`constant` is the
/// Lipschitz constant, `radius` bounds the initial divergence).
///
/// Layout: `[a_1.., A_1..]`, `2·steps` values.
pub fn schedule_weights(
    kind: &str,
    steps: usize,
    sigma: f64,
    constant: f64,
    nu: f64,
    radius: f64,
) -> Result<Vec<f64>> {
    if !(1..=MAX_STEPS).contains(&steps) {
        return Err(format!("steps must lie in [1, {MAX_STEPS}], got {steps}"));
    }
    let schedule: StepSchedule = match kind {
        "smooth" => smooth_schedule(sigma, constant),
        "hoelder" => hoelder_schedule(sigma, constant, nu, radius, None),
        "lipschitz" => lipschitz_schedule(sigma, constant, radius),
        other => return Err(format!("unknown schedule {other:?}")),
    }
    .map_err(|e| e.to_string())?;
    let mut out: Vec<f64> = (1..=steps).map(|k| schedule.weight(k)).collect();
    out.extend(schedule.running_sums(steps));
    Ok(out)
}
