//! The two figure presets.
//!
//! `fig1`: noiseless AXGD / AGD / GD on the n = 100 cycle Laplacian with
//! σ = L = 4, once unconstrained (drift instance) and once on the simplex.
//! `fig2`: AXGD and AGD under gradient noise ε_η ∈ {1e-1, 1e-2, 1e-3} with
//! 20 seeds, on the regularized unconstrained instance and on the simplex.

use std::path::{Path, PathBuf};

use crate::config::{parse_config, ExperimentConfig, MethodKind};
use crate::error::{BenchError, Result};
use crate::experiment::{failure_report, run_experiment, CellResult};
use crate::output::{emit_csv, emit_json};
use crate::summary::summarize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Fig1,
    Fig2,
}

pub const FIG2_NOISE: [f64; 3] = [1e-1, 1e-2, 1e-3];
pub const FIG2_SEEDS: usize = 20;

fn fig1_config(domain: &str, base_seed: u64) -> ExperimentConfig {
    let mut cfg = parse_config(&format!(
        "name = fig1_{domain}\nproblem = cycle-quadratic\nn = 100\ndomain = {domain}\n\
         methods = axgd, agd, gd\nschedule = smooth\nsigma = 4\nL = 4\nsteps = 1000\n"
    ))
    .expect("fig1 preset is valid");
    cfg.base_seed = base_seed;
    cfg
}

fn fig2_config(domain: &str, base_seed: u64) -> ExperimentConfig {
    let eps: Vec<String> = FIG2_NOISE.iter().map(|e| e.to_string()).collect();
    let mut cfg = parse_config(&format!(
        "name = fig2_{domain}\nproblem = cycle-quadratic\nn = 100\ndomain = {domain}\n\
         methods = axgd, agd\nschedule = smooth\nsigma = 4\nL = 4\nsteps = 1000\n\
         eps_eta = {}\nnum_seeds = {FIG2_SEEDS}\n",
        eps.join(", ")
    ))
    .expect("fig2 preset is valid");
    cfg.base_seed = base_seed;
    cfg
}

pub fn preset_configs(preset: Preset, base_seed: u64) -> Vec<ExperimentConfig> {
    let domains = ["unconstrained", "simplex"];
    match preset {
        Preset::Fig1 => domains.iter().map(|d| fig1_config(d, base_seed)).collect(),
        Preset::Fig2 => domains.iter().map(|d| fig2_config(d, base_seed)).collect(),
    }
}

/// One panel: a CSV (and JSON summary) per file stem.
#[derive(Debug, Clone)]
pub struct Panel {
    pub stem: String,
    pub results: Vec<CellResult>,
}

fn eps_label(eps: f64) -> String {
    format!("{eps:e}").replace('-', "m")
}

/// Run a preset and split its results into panels.
pub fn reproduce(preset: Preset, base_seed: u64) -> Result<Vec<Panel>> {
    let mut panels = Vec::new();
    for cfg in preset_configs(preset, base_seed) {
        let results = run_experiment(&cfg)?;
        match preset {
            Preset::Fig1 => panels.push(Panel {
                stem: cfg.name.clone(),
                results,
            }),
            Preset::Fig2 => {
                for (i, &eps) in cfg.eps_eta.iter().enumerate() {
                    panels.push(Panel {
                        stem: format!("{}_eps{}", cfg.name, eps_label(eps)),
                        results: results
                            .iter()
                            .filter(|r| r.spec.eps_index == i)
                            .cloned()
                            .collect(),
                    });
                }
            }
        }
    }
    Ok(panels)
}

/// Final-iteration mean exact gap per method for every panel, plus which
/// method ends lower. Printed, never asserted.
pub fn noise_report(panels: &[Panel]) -> Vec<String> {
    panels
        .iter()
        .map(|p| {
            let summary = summarize(&p.results);
            let last = |m: MethodKind| {
                summary
                    .iter()
                    .find(|c| c.method == m)
                    .and_then(|c| c.stats.last())
                    .map(|s| (s.mean, s.std))
            };
            match (last(MethodKind::Axgd), last(MethodKind::Agd)) {
                (Some((ax, axs)), Some((ag, ags))) => format!(
                    "{}: final exact gap axgd {ax:.3e} ± {axs:.1e}, agd {ag:.3e} ± {ags:.1e} ({} lower)",
                    p.stem,
                    if ax < ag { "axgd" } else { "agd" }
                ),
                _ => format!("{}: incomplete", p.stem),
            }
        })
        .collect()
}

/// Write every panel under `out`; returns the written paths.
pub fn write_panels(panels: &[Panel], out: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for p in panels {
        let csv = out.join(format!("{}.csv", p.stem));
        emit_csv(&p.results, &csv)?;
        let json = out.join(format!("{}.json", p.stem));
        emit_json(&summarize(&p.results), &json)?;
        written.push(csv);
        written.push(json);
    }
    let failures: Vec<String> = panels
        .iter()
        .flat_map(|p| failure_report(&p.results))
        .collect();
    if failures.is_empty() {
        Ok(written)
    } else {
        Err(BenchError::Numeric {
            count: failures.len(),
            report: failures,
        })
    }
}
