//! Primal-dual gap certificate.
//!
//! The upper bound is `U_k = f(x_k)`. The lower bound averages the
//! linearizations `f(xᵢ) + ⟨∇f(xᵢ), u − xᵢ⟩` with weights `aᵢ`, adds the
//! regularizer `D_ψ(u, x̂⁰)`, minimizes over `u`, and subtracts a penalty
//! that dominates `D_ψ(x*, x̂⁰)`:
//!
//! ```text
//! A_k·L_k = min_u { Σ aᵢ[f(xᵢ) + ⟨∇f(xᵢ), u − xᵢ⟩] + D_ψ(u, x̂⁰) } − penalty
//! ```
//!
//! The minimizer is `u* = ∇ψ*(∇ψ(x̂⁰) − Σ aᵢ∇f(xᵢ))`, so every evaluation is
//! O(n) from running sums.

use crate::error::{Error, Result};
use crate::mirror::ProxSetup;
use crate::oracle::Vector;
use crate::solver::{IterationView, SolverState};

/// Compensated (Neumaier) scalar sum.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GapMode {
    /// Penalty `D_ψ(x*, x̂⁰)` from a known minimizer.
    OracleOptimum { x_star: Vector, f_star: f64 },
    /// Penalty `R`, any upper bound on `D_ψ(x*, x̂⁰)`.
    RadiusBound { radius: f64 },
}

impl GapMode {
    pub fn radius(radius: f64) -> Result<Self> {
        if !(radius >= 0.0) || !radius.is_finite() {
            return Err(Error::usage(format!(
                "radius must be nonnegative, got {radius}"
            )));
        }
        Ok(GapMode::RadiusBound { radius })
    }

    fn penalty(&self, setup: &ProxSetup, anchor: &Vector) -> Result<f64> {
        match self {
            GapMode::OracleOptimum { x_star, .. } => setup.bregman(x_star, anchor),
            GapMode::RadiusBound { radius } => Ok(*radius),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapAccumulator {
    sum_af: KahanSum,
    grad_sum: Vector,
    sum_a_gx: KahanSum,
    a_sum: f64,
    x_anchor: Vector,
    z_anchor: Vector,
}

impl GapAccumulator {
    pub fn new(x_anchor: &Vector, setup: &ProxSetup) -> Result<Self> {
        Ok(GapAccumulator {
            sum_af: KahanSum::default(),
            grad_sum: Vector::zeros(x_anchor.len()),
            sum_a_gx: KahanSum::default(),
            a_sum: 0.0,
            x_anchor: x_anchor.clone(),
            z_anchor: setup.grad_psi(x_anchor)?,
        })
    }

    /// Add the linearization of `f` at `x` with weight `a`.
    pub fn update(&mut self, a: f64, x: &Vector, g: &Vector, fx: f64) {
        debug_assert!(a > 0.0);
        self.sum_af.add(a * fx);
        self.sum_a_gx.add(a * g.dot(x));
        self.grad_sum.axpy(a, g, 1.0);
        self.a_sum += a;
    }

    pub fn a_sum(&self) -> f64 {
        self.a_sum
    }

    pub fn sum_af(&self) -> f64 {
        self.sum_af.value()
    }

    pub fn sum_a_gx(&self) -> f64 {
        self.sum_a_gx.value()
    }

    pub fn grad_sum(&self) -> &Vector {
        &self.grad_sum
    }

    pub fn anchor(&self) -> &Vector {
        &self.x_anchor
    }

    /// `∇ψ(x̂⁰) − Σ aᵢ∇f(xᵢ)`; equals the solver's `z_k`.
    pub fn dual_point(&self) -> Vector {
        &self.z_anchor - &self.grad_sum
    }

    /// The minimizer `u*` of the regularized lower model.
    pub fn minimizer(&self, setup: &ProxSetup) -> Vector {
        setup.grad_psi_star(&self.dual_point())
    }

    /// `A_k·L_k`.
    pub fn scaled_lower_bound(&self, setup: &ProxSetup, mode: &GapMode) -> Result<f64> {
        if !(self.a_sum > 0.0) {
            return Err(Error::usage("lower bound needs at least one update"));
        }
        let u = self.minimizer(setup);
        let linear = self.grad_sum.dot(&u) - self.sum_a_gx();
        let reg = setup.bregman(&u, &self.x_anchor)?;
        Ok(self.sum_af() + linear + reg - mode.penalty(setup, &self.x_anchor)?)
    }

    pub fn lower_bound(&self, setup: &ProxSetup, mode: &GapMode) -> Result<f64> {
        Ok(self.scaled_lower_bound(setup, mode)? / self.a_sum)
    }
}

pub fn upper_bound(fx: f64) -> f64 {
    fx
}

pub fn gap(upper: f64, lower: f64) -> f64 {
    upper - lower
}

/// `E_{k+1} = A_{k+1}G_{k+1} − A_kG_k`.
pub fn discretization_error(a_prev: f64, g_prev: f64, a_next: f64, g_next: f64) -> f64 {
    a_next * g_next - a_prev * g_prev
}

/// Whether `A_{k+1}G_{k+1} ≤ A_kG_k + tol·|A_kG_k|` along the series.
pub fn check_invariance(series: &[(f64, f64)], tolerance: f64) -> Result<bool> {
    if series.len() < 2 {
        return Err(Error::usage("invariance check needs at least two entries"));
    }
    Ok(series.windows(2).all(|w| {
        let prev = w[0].0 * w[0].1;
        let next = w[1].0 * w[1].1;
        next <= prev + tolerance * prev.abs()
    }))
}

/// Upper bound on `E_{k+1}` for one extra-gradient step, from its internals:
///
/// ```text
/// a⟨∇f(x⁺) − ∇f(x̂), ∇ψ*(ẑ) − ∇ψ*(z⁺)⟩ − D_ψ*(ẑ, z⁺) − D_ψ*(z, ẑ)
/// ```
pub fn extra_gradient_error_bound(
    previous: &SolverState,
    next: &SolverState,
    setup: &ProxSetup,
) -> f64 {
    let dg = &next.probe_gradient - &next.hat_gradient;
    let dx = setup.grad_psi_star(&next.z_hat) - setup.grad_psi_star(&next.z);
    next.weight * dg.dot(&dx)
        - setup.bregman_conjugate(&next.z_hat, &next.z)
        - setup.bregman_conjugate(&previous.z, &next.z_hat)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapRow {
    pub k: usize,
    pub a_sum: f64,
    pub upper: f64,
    pub lower: f64,
    pub gap: f64,
    /// `A_k·G_k`, computed without dividing by `A_k`.
    pub scaled_gap: f64,
    /// `E_k`; undefined at `k = 1` because `A_0G_0` is.
    pub discretization_error: Option<f64>,
}

/// Feeds solver iterations into a [`GapAccumulator`] and produces one
/// [`GapRow`] per iteration.
#[derive(Debug, Clone)]
pub struct GapMonitor {
    accumulator: GapAccumulator,
    setup: ProxSetup,
    mode: GapMode,
    previous_scaled: Option<f64>,
}

impl GapMonitor {
    pub fn new(x_anchor: &Vector, setup: &ProxSetup, mode: GapMode) -> Result<Self> {
        Ok(GapMonitor {
            accumulator: GapAccumulator::new(x_anchor, setup)?,
            setup: setup.clone(),
            mode,
            previous_scaled: None,
        })
    }

    pub fn accumulator(&self) -> &GapAccumulator {
        &self.accumulator
    }

    pub fn observe(&mut self, view: &IterationView<'_>) -> Result<GapRow> {
        self.accumulator.update(
            view.weight,
            view.probe,
            view.probe_gradient,
            view.probe_value,
        );
        let a_sum = self.accumulator.a_sum();
        let scaled_lower = self
            .accumulator
            .scaled_lower_bound(&self.setup, &self.mode)
            .map_err(|e| e.at_iteration(view.k))?;
        let upper = upper_bound(view.value);
        let scaled_gap = a_sum * upper - scaled_lower;
        let error = self.previous_scaled.map(|prev| scaled_gap - prev);
        self.previous_scaled = Some(scaled_gap);
        Ok(GapRow {
            k: view.k,
            a_sum,
            upper,
            lower: scaled_lower / a_sum,
            gap: scaled_gap / a_sum,
            scaled_gap,
            discretization_error: error,
        })
    }
}
