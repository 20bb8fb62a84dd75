//! Problem assembly and the (method × ε_η × seed) cell runner.

use std::time::Instant;

use axgd_core::gap::GapMonitor;
use axgd_core::oracle::{
    cycle_quadratic, make_holder_power, make_lipschitz_norm, make_quadratic, simplex_qp_minimizer,
    wrap_noisy, CycleVariant, NoiseSpec, Quadratic,
};
use axgd_core::schedule::{hoelder_schedule, lipschitz_schedule, smooth_schedule};
use axgd_core::{
    run, Domain, GapMode, IterationView, Method, Oracle, ProxSetup, StepSchedule, Vector,
};
use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::config::{
    CycleVariantChoice, DomainKind, ExperimentConfig, GapModeKind, GeometryKind, MethodKind,
    ProblemKind, ScheduleChoice, StartPoint, DEFAULT_NU,
};
use crate::error::{BenchError, Result};

/// SplitMix64 finalizer.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// `base_seed ⊕ hash(method, ε index, seed index)`, stable across platforms
/// and releases.
pub fn cell_seed(base_seed: u64, method: MethodKind, eps_index: usize, seed_index: usize) -> u64 {
    let mut h = 0u64;
    for b in method.name().bytes() {
        h = splitmix64(h ^ u64::from(b));
    }
    h = splitmix64(h ^ eps_index as u64);
    h = splitmix64(h ^ seed_index as u64);
    base_seed ^ h
}

/// Entries uniform in `[-1, 1)` from a SplitMix64 stream.
fn uniform_vector(n: usize, seed: u64) -> Vector {
    let mut state = seed;
    Vector::from_fn(n, |_, _| {
        let out = splitmix64(state);
        state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        2.0 * ((out >> 11) as f64 / (1u64 << 53) as f64) - 1.0
    })
}

/// Everything a cell needs besides its noise stream.
pub struct Instance {
    pub oracle: Box<dyn Oracle + Send + Sync>,
    pub setup: ProxSetup,
    pub x0: Vector,
    pub x_star: Vector,
    pub f_star: f64,
    /// Kernel part of the linear term on the unconstrained drift instance.
    /// Adding `⟨drift, x⟩` to `f` gives the drift-free objective that both
    /// gaps are measured on; Euclidean iterates split linearly along it.
    pub drift: Option<Vector>,
    pub schedule: StepSchedule,
    pub gap_mode: GapMode,
    /// Smoothness for AGD/GD, when known.
    pub smoothness: Option<f64>,
}

impl Instance {
    pub fn exact_gap(&self, x: &Vector, value: f64) -> f64 {
        self.drift_free(x, value) - self.f_star
    }

    fn drift_free(&self, x: &Vector, value: f64) -> f64 {
        match &self.drift {
            Some(d) => value + d.dot(x),
            None => value,
        }
    }

    pub fn method(&self, kind: MethodKind, cfg: &ExperimentConfig) -> Result<Method> {
        let need_l = || {
            self.smoothness
                .ok_or_else(|| BenchError::config(format!("methods: {} needs L", kind.name())))
        };
        Ok(match kind {
            MethodKind::Axgd => Method::Axgd,
            MethodKind::Agd => Method::Agd {
                smoothness: need_l()?,
            },
            MethodKind::Gd => Method::Gd {
                smoothness: need_l()?,
            },
            MethodKind::Implicit => Method::Implicit {
                tol: cfg.implicit_tol,
                max_inner: cfg.implicit_max_inner,
            },
        })
    }
}

fn core_err(e: axgd_core::Error) -> BenchError {
    BenchError::config(e.to_string())
}

fn domain_of(cfg: &ExperimentConfig) -> Domain {
    match cfg.domain {
        DomainKind::Unconstrained => Domain::Unconstrained,
        DomainKind::Box => Domain::Box {
            lower: Vector::from_element(cfg.n, cfg.box_lower),
            upper: Vector::from_element(cfg.n, cfg.box_upper),
        },
        DomainKind::Simplex => Domain::Simplex,
    }
}

/// Minimizer of a quadratic over a box by accelerated projected gradient.
fn box_qp_minimizer(q: &Quadratic, domain: &Domain) -> Vector {
    let l = q.constants().smoothness.unwrap_or(1.0).max(1e-12);
    let n = q.dim();
    let mut x = domain.project(&Vector::zeros(n));
    let mut y = x.clone();
    let mut t = 1.0_f64;
    for _ in 0..20_000 {
        let next = domain.project(&(&y - q.gradient(&y) / l));
        let t_next = 0.5 * (1.0 + (1.0 + 4.0 * t * t).sqrt());
        y = &next + (&next - &x) * ((t - 1.0) / t_next);
        x = next;
        t = t_next;
    }
    x
}

fn quadratic_reference(q: &Quadratic, domain: &Domain) -> Result<Vector> {
    Ok(match domain {
        Domain::Simplex => simplex_qp_minimizer(q.matrix(), q.linear_term()).map_err(core_err)?,
        Domain::Box { .. } => box_qp_minimizer(q, domain),
        Domain::Unconstrained => q
            .matrix()
            .clone()
            .cholesky()
            .ok_or_else(|| {
                BenchError::config(
                    "problem: quadratic is not strictly convex, so it has no unique minimizer",
                )
            })?
            .solve(q.linear_term()),
    })
}

pub fn build_instance(cfg: &ExperimentConfig) -> Result<Instance> {
    let n = cfg.n;
    let domain = domain_of(cfg);
    let noisy = cfg.eps_eta.iter().any(|e| *e > 0.0);
    let mut drift = None;

    let (oracle, x_star): (Box<dyn Oracle + Send + Sync>, Vector) = match cfg.problem {
        ProblemKind::CycleQuadratic => {
            let variant = match (cfg.cycle_variant, cfg.domain) {
                (CycleVariantChoice::Auto, DomainKind::Simplex)
                | (CycleVariantChoice::Simplex, _) => CycleVariant::Simplex,
                (CycleVariantChoice::Auto, DomainKind::Unconstrained) if !noisy => {
                    CycleVariant::Drift
                }
                (CycleVariantChoice::Drift, _) => CycleVariant::Drift,
                _ => CycleVariant::Regularized { mu: cfg.mu },
            };
            let q = cycle_quadratic(n, variant).map_err(core_err)?;
            let x_star = match (&domain, variant) {
                (Domain::Box { .. }, _) => box_qp_minimizer(&q, &domain),
                _ => q
                    .optimum()
                    .expect("cycle instances carry an optimum")
                    .x
                    .clone(),
            };
            if variant == CycleVariant::Drift && domain == Domain::Unconstrained {
                drift = Some(Vector::from_element(n, q.linear_term().sum() / n as f64));
            }
            (Box::new(q), x_star)
        }
        ProblemKind::CustomQuadratic => {
            let d: Vec<f64> = cfg
                .diagonal
                .clone()
                .unwrap_or_else(|| (1..=n).map(|i| i as f64).collect());
            let b = cfg
                .linear
                .clone()
                .map(Vector::from_vec)
                .unwrap_or_else(|| Vector::from_element(n, 1.0));
            let q = make_quadratic(DMatrix::from_diagonal(&Vector::from_vec(d)), b, None)
                .map_err(core_err)?;
            let x_star = quadratic_reference(&q, &domain)?;
            (Box::new(q), x_star)
        }
        ProblemKind::LipschitzNorm => {
            let center = uniform_vector(n, cfg.problem_seed);
            let o =
                make_lipschitz_norm(center.clone(), cfg.function_lipschitz).map_err(core_err)?;
            // Nearest feasible point to the center.
            (Box::new(o), domain.project(&center))
        }
        ProblemKind::HolderPower => {
            let o = make_holder_power(cfg.nu.unwrap_or(DEFAULT_NU), n).map_err(core_err)?;
            (Box::new(o), domain.project(&Vector::zeros(n)))
        }
    };
    let f_star = oracle.value(&x_star);
    let constants = oracle.constants();

    let x0 = match &cfg.x0 {
        StartPoint::Explicit(v) => Vector::from_column_slice(v),
        StartPoint::Zero => Vector::zeros(n),
        StartPoint::Uniform => Vector::from_element(n, 1.0 / n as f64),
        StartPoint::Default => match domain {
            Domain::Simplex => Vector::from_element(n, 1.0 / n as f64),
            _ => domain.project(&Vector::zeros(n)),
        },
    };
    if !domain.contains(&x0, 1e-12) {
        return Err(BenchError::config("x0: outside the domain"));
    }

    let smoothness = cfg.smoothness.or(constants.smoothness);
    let setup_with = |sigma: f64| -> Result<ProxSetup> {
        match cfg.geometry {
            GeometryKind::Euclidean => ProxSetup::euclidean(sigma, domain.clone()),
            GeometryKind::Entropy => ProxSetup::entropy_simplex(sigma),
        }
        .map_err(core_err)
    };

    let (setup, schedule) = match cfg.schedule {
        ScheduleChoice::Smooth => {
            let l = smoothness.ok_or_else(|| BenchError::config("schedule: smooth needs L"))?;
            let sigma = cfg.sigma.unwrap_or(l);
            (
                setup_with(sigma)?,
                smooth_schedule(sigma, l).map_err(core_err)?,
            )
        }
        ScheduleChoice::Hoelder => {
            let nu = cfg
                .nu
                .or(constants.hoelder_exponent)
                .ok_or_else(|| BenchError::config("schedule: hoelder needs nu"))?;
            let l_nu = cfg
                .hoelder_constant
                .or(constants.hoelder_constant)
                .or((nu == 1.0).then_some(smoothness).flatten())
                .ok_or_else(|| BenchError::config("schedule: hoelder needs L_nu"))?;
            let sigma = cfg.sigma.unwrap_or(1.0);
            let setup = setup_with(sigma)?;
            let diameter = match cfg.diameter {
                Some(d) => d,
                None => default_diameter(&setup, &x0, &x_star),
            };
            let s =
                hoelder_schedule(sigma, l_nu, nu, diameter, cfg.c_override).map_err(core_err)?;
            (setup, s)
        }
        ScheduleChoice::Lipschitz => {
            let l = cfg
                .smoothness
                .or(constants.lipschitz)
                .ok_or_else(|| BenchError::config("schedule: lipschitz needs L"))?;
            let sigma = cfg.sigma.unwrap_or(l);
            let setup = setup_with(sigma)?;
            let radius = match cfg.radius {
                Some(r) => r,
                None => setup
                    .bregman(&x_star, &x0)
                    .map_err(core_err)?
                    .max(f64::MIN_POSITIVE),
            };
            let s = lipschitz_schedule(sigma, l, radius).map_err(core_err)?;
            (setup, s)
        }
    };

    let gap_mode = match cfg.gap_mode {
        GapModeKind::OracleOptimum => GapMode::OracleOptimum {
            x_star: x_star.clone(),
            f_star,
        },
        GapModeKind::RadiusBound => {
            GapMode::radius(cfg.gap_radius.unwrap_or(0.0)).map_err(core_err)?
        }
    };

    Ok(Instance {
        oracle,
        setup,
        x0,
        x_star,
        f_star,
        drift,
        schedule,
        gap_mode,
        smoothness,
    })
}

/// Diameter used by the Hölder schedule when `D` is not configured: the
/// true diameter of a bounded domain, else the initial distance to the
/// reference optimum (floored at 1).
fn default_diameter(setup: &ProxSetup, x0: &Vector, x_star: &Vector) -> f64 {
    match setup.domain() {
        Domain::Simplex => 2.0,
        Domain::Box { lower, upper } => setup.norm(&(upper - lower)).max(f64::MIN_POSITIVE),
        Domain::Unconstrained => setup.norm(&(x0 - x_star)).max(1.0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellSpec {
    pub method: MethodKind,
    pub eps_index: usize,
    pub eps_eta: f64,
    pub seed_index: usize,
    pub seed: u64,
}

/// One CSV row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunRecord {
    pub k: usize,
    pub a_k: f64,
    pub a_sum: f64,
    pub f_upper: f64,
    pub exact_gap: f64,
    pub approx_gap: f64,
    pub lower_bound: f64,
    /// NaN at `k = 1`.
    pub e_k: f64,
    pub grad_queries: usize,
    pub wall_time_ns: u128,
}

#[derive(Debug, Clone)]
pub struct CellResult {
    pub spec: CellSpec,
    pub records: Vec<RunRecord>,
    pub error: Option<String>,
}

pub fn cells(cfg: &ExperimentConfig) -> Vec<CellSpec> {
    let mut out = Vec::new();
    for &method in &cfg.methods {
        for (eps_index, &eps_eta) in cfg.eps_eta.iter().enumerate() {
            for seed_index in 0..cfg.num_seeds {
                out.push(CellSpec {
                    method,
                    eps_index,
                    eps_eta,
                    seed_index,
                    seed: cell_seed(cfg.base_seed, method, eps_index, seed_index),
                });
            }
        }
    }
    out
}

pub fn run_cell(instance: &Instance, cfg: &ExperimentConfig, spec: CellSpec) -> CellResult {
    let mut records = Vec::with_capacity(cfg.steps);
    let outcome = (|| -> std::result::Result<(), String> {
        let method = instance
            .method(spec.method, cfg)
            .map_err(|e| e.to_string())?;
        let oracle = wrap_noisy(
            &*instance.oracle,
            NoiseSpec {
                epsilon_eta: spec.eps_eta,
                seed: spec.seed,
            },
        )
        .map_err(|e| e.to_string())?;
        let mut monitor = GapMonitor::new(&instance.x0, &instance.setup, instance.gap_mode.clone())
            .map_err(|e| e.to_string())?;
        let start = Instant::now();
        run(
            &method,
            &oracle,
            &instance.setup,
            &instance.schedule,
            &instance.x0,
            cfg.steps,
            |v| {
                let row = match &instance.drift {
                    None => monitor.observe(v)?,
                    Some(d) => {
                        let shifted = v.probe_gradient + d;
                        monitor.observe(&IterationView {
                            value: instance.drift_free(v.point, v.value),
                            probe_value: instance.drift_free(v.probe, v.probe_value),
                            probe_gradient: &shifted,
                            ..*v
                        })?
                    }
                };
                records.push(RunRecord {
                    k: v.k,
                    a_k: v.weight,
                    a_sum: v.a_sum,
                    f_upper: row.upper,
                    exact_gap: instance.exact_gap(v.point, v.value),
                    approx_gap: row.gap,
                    lower_bound: row.lower,
                    e_k: row.discretization_error.unwrap_or(f64::NAN),
                    grad_queries: v.grad_queries,
                    wall_time_ns: if cfg.timing {
                        start.elapsed().as_nanos()
                    } else {
                        0
                    },
                });
                Ok(())
            },
        )
        .map(|_| ())
        .map_err(|e| e.to_string())
    })();
    CellResult {
        spec,
        records,
        error: outcome.err(),
    }
}

/// Run every cell in parallel; results come back in cell order.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<CellResult>> {
    let instance = build_instance(cfg)?;
    for &m in &cfg.methods {
        instance.method(m, cfg)?;
    }
    Ok(cells(cfg)
        .into_par_iter()
        .map(|spec| run_cell(&instance, cfg, spec))
        .collect())
}

/// Per-cell failure lines, empty when every cell finished.
pub fn failure_report(results: &[CellResult]) -> Vec<String> {
    results
        .iter()
        .filter_map(|r| {
            r.error.as_ref().map(|e| {
                format!(
                    "{} eps_eta={} seed={}: {e} (after {} rows)",
                    r.spec.method.name(),
                    r.spec.eps_eta,
                    r.spec.seed,
                    r.records.len()
                )
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    #[test]
    fn cell_count_and_seed_derivation() {
        let cfg = parse_config("methods = axgd, agd, gd\neps_eta = 0\n").unwrap();
        assert_eq!(cells(&cfg).len(), 3);
        let cfg = parse_config("methods = axgd, agd\neps_eta = 0.1, 0.01, 0.001\nnum_seeds = 20\n")
            .unwrap();
        let all = cells(&cfg);
        assert_eq!(all.len(), 120);
        let mut seeds: Vec<u64> = all.iter().map(|c| c.seed).collect();
        seeds.sort_unstable();
        seeds.dedup();
        assert_eq!(seeds.len(), 120);
        assert_eq!(
            cell_seed(0, MethodKind::Axgd, 0, 0),
            cell_seed(0, MethodKind::Axgd, 0, 0)
        );
        assert_eq!(
            cell_seed(5, MethodKind::Agd, 1, 2) ^ 5,
            cell_seed(0, MethodKind::Agd, 1, 2)
        );
    }

    #[test]
    fn splitmix_reference_values() {
        // First outputs of the reference SplitMix64 generator seeded with 0.
        let mut state = 0u64;
        let mut next = || {
            let out = splitmix64(state);
            state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
            out
        };
        assert_eq!(next(), 0xe220_a839_7b1d_cdaf);
        assert_eq!(next(), 0x6e78_9e6a_a1b9_65f4);
    }

    #[test]
    fn query_accounting_matches_method() {
        let cfg = parse_config("n = 10\nsteps = 20\nmethods = axgd, agd, gd\n").unwrap();
        let results = run_experiment(&cfg).unwrap();
        for r in &results {
            let per = if r.spec.method == MethodKind::Gd {
                1
            } else {
                2
            };
            assert!(r.error.is_none());
            assert_eq!(r.records.len(), 20);
            for (i, row) in r.records.iter().enumerate() {
                assert_eq!(row.k, i + 1);
                assert_eq!(row.grad_queries, per * (i + 1));
            }
            assert!(r.records[0].e_k.is_nan());
        }
    }

    #[test]
    fn numeric_failure_is_confined_to_its_cell() {
        // An absurd schedule constant overflows AXGD's dual iterate; GD
        // steps with 1/L and is unaffected.
        let cfg = parse_config(
            "problem = holder-power\nnu = 1\nn = 5\ndomain = unconstrained\nmethods = axgd, gd\nschedule = hoelder\nc_override = 1e300\nsteps = 10\nx0 = 1,1,1,1,1\n",
        )
        .unwrap();
        let results = run_experiment(&cfg).unwrap();
        assert!(results[0].error.is_some());
        assert!(results[1].error.is_none());
        assert_eq!(results[1].records.len(), 10);
        let report = failure_report(&results);
        assert_eq!(report.len(), 1);
        assert!(report[0].starts_with("axgd"));
    }
}
