//! Step weights `a_k` (k ≥ 1) and their running sums `A_k`, with `A_0 = 0`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScheduleKind {
    Smooth,
    Hoelder,
    Lipschitz,
    Custom,
}

#[derive(Clone)]
pub enum StepSchedule {
    /// `a_k = (k+1)/2 · σ/L`.
    Smooth {
        sigma: f64,
        smoothness: f64,
    },
    /// `a_k = c · σ/L_ν · D^{1−ν} · k^{(3ν−1)/2}`.
    Hoelder {
        sigma: f64,
        hoelder_constant: f64,
        nu: f64,
        diameter: f64,
        c: f64,
    },
    /// `a_k = √σ / (2√2·L) · √(R/k)`.
    Lipschitz {
        sigma: f64,
        lipschitz: f64,
        radius: f64,
    },
    Custom(Arc<dyn Fn(usize) -> f64 + Send + Sync>),
}

impl fmt::Debug for StepSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepSchedule::Smooth { sigma, smoothness } => f
                .debug_struct("Smooth")
                .field("sigma", sigma)
                .field("smoothness", smoothness)
                .finish(),
            StepSchedule::Hoelder {
                sigma,
                hoelder_constant,
                nu,
                diameter,
                c,
            } => f
                .debug_struct("Hoelder")
                .field("sigma", sigma)
                .field("hoelder_constant", hoelder_constant)
                .field("nu", nu)
                .field("diameter", diameter)
                .field("c", c)
                .finish(),
            StepSchedule::Lipschitz {
                sigma,
                lipschitz,
                radius,
            } => f
                .debug_struct("Lipschitz")
                .field("sigma", sigma)
                .field("lipschitz", lipschitz)
                .field("radius", radius)
                .finish(),
            StepSchedule::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::usage(format!(
            "{name} must be positive and finite, got {v}"
        )));
    }
    Ok(())
}

pub fn smooth_schedule(sigma: f64, smoothness: f64) -> Result<StepSchedule> {
    positive("sigma", sigma)?;
    positive("L", smoothness)?;
    Ok(StepSchedule::Smooth { sigma, smoothness })
}

/// The constant `2^{(3ν(ν+1)−1)/2}` as stated alongside the Hölder rate.
pub fn stated_hoelder_constant(nu: f64) -> f64 {
    2f64.powf((3.0 * nu * (nu + 1.0) - 1.0) / 2.0)
}

/// `2^{−(3ν(ν+1)+1)/2}`: the largest power of two with
/// `c²·2^{3ν(ν+1)} ≤ 1/2`, the condition the rate argument needs.
pub fn default_hoelder_constant(nu: f64) -> f64 {
    2f64.powf(-(3.0 * nu * (nu + 1.0) + 1.0) / 2.0)
}

pub fn hoelder_schedule(
    sigma: f64,
    hoelder_constant: f64,
    nu: f64,
    diameter: f64,
    c_override: Option<f64>,
) -> Result<StepSchedule> {
    positive("sigma", sigma)?;
    positive("L_nu", hoelder_constant)?;
    positive("D", diameter)?;
    if !(nu > 0.0 && nu <= 1.0) {
        return Err(Error::usage(format!("nu must lie in (0, 1], got {nu}")));
    }
    let c = match c_override {
        Some(c) => {
            positive("c", c)?;
            c
        }
        None => default_hoelder_constant(nu),
    };
    Ok(StepSchedule::Hoelder {
        sigma,
        hoelder_constant,
        nu,
        diameter,
        c,
    })
}

/// Horizon-free schedule for Lipschitz objectives. `radius` must bound
/// `D_ψ(x*, x̂⁰)`. The accompanying rate is stated for `σ ≥ L`, which is not
/// enforced here.
pub fn lipschitz_schedule(sigma: f64, lipschitz: f64, radius: f64) -> Result<StepSchedule> {
    positive("sigma", sigma)?;
    positive("L", lipschitz)?;
    positive("R", radius)?;
    Ok(StepSchedule::Lipschitz {
        sigma,
        lipschitz,
        radius,
    })
}

pub fn custom_schedule(weight: impl Fn(usize) -> f64 + Send + Sync + 'static) -> StepSchedule {
    StepSchedule::Custom(Arc::new(weight))
}

impl StepSchedule {
    pub fn kind(&self) -> ScheduleKind {
        match self {
            StepSchedule::Smooth { .. } => ScheduleKind::Smooth,
            StepSchedule::Hoelder { .. } => ScheduleKind::Hoelder,
            StepSchedule::Lipschitz { .. } => ScheduleKind::Lipschitz,
            StepSchedule::Custom(_) => ScheduleKind::Custom,
        }
    }

    /// `a_k` for `k ≥ 1`.
    pub fn weight(&self, k: usize) -> f64 {
        debug_assert!(k >= 1, "weights are indexed from 1");
        let kf = k as f64;
        match self {
            StepSchedule::Smooth { sigma, smoothness } => (kf + 1.0) / 2.0 * (sigma / smoothness),
            StepSchedule::Hoelder {
                sigma,
                hoelder_constant,
                nu,
                diameter,
                c,
            } => {
                c * (sigma / hoelder_constant)
                    * diameter.powf(1.0 - nu)
                    * kf.powf((3.0 * nu - 1.0) / 2.0)
            }
            StepSchedule::Lipschitz {
                sigma,
                lipschitz,
                radius,
            } => sigma.sqrt() / (2.0 * 2f64.sqrt() * lipschitz) * (radius / kf).sqrt(),
            StepSchedule::Custom(f) => f(k),
        }
    }

    /// `[A_1, …, A_{k_max}]` as literal running sums.
    pub fn running_sums(&self, k_max: usize) -> Vec<f64> {
        let mut acc = 0.0;
        (1..=k_max)
            .map(|k| {
                acc += self.weight(k);
                acc
            })
            .collect()
    }
}

/// Whether `a_k²/A_k ≤ σ/L` (up to 1e-12) for every `1 ≤ k ≤ k_max`.
pub fn validate_smooth_condition(
    schedule: &StepSchedule,
    k_max: usize,
    sigma: f64,
    smoothness: f64,
) -> bool {
    let bound = sigma / smoothness + 1e-12;
    let mut acc = 0.0;
    for k in 1..=k_max {
        let a = schedule.weight(k);
        acc += a;
        if !(a > 0.0) || a * a / acc > bound {
            return false;
        }
    }
    true
}
