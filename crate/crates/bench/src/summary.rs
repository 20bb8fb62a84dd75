//! Per-(method, ε_η) statistics of the exact gap across seeds.

use std::collections::BTreeMap;

use crate::config::MethodKind;
use crate::experiment::CellResult;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KStats {
    pub k: usize,
    pub mean: f64,
    /// Population standard deviation (divide by N).
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub method: MethodKind,
    pub eps_eta: f64,
    pub stats: Vec<KStats>,
}

pub fn describe(values: &[f64]) -> (f64, f64, f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (mean, var.sqrt(), min, max)
}

/// Groups cells by method and noise level, in first-seen order. At each `k`
/// the statistics use the seeds that reached that iteration.
pub fn summarize(results: &[CellResult]) -> Vec<CellSummary> {
    let mut order: Vec<(MethodKind, usize)> = Vec::new();
    let mut groups: BTreeMap<(MethodKind, usize), (f64, Vec<&CellResult>)> = BTreeMap::new();
    for r in results {
        let key = (r.spec.method, r.spec.eps_index);
        groups
            .entry(key)
            .or_insert_with(|| {
                order.push(key);
                (r.spec.eps_eta, Vec::new())
            })
            .1
            .push(r);
    }
    order
        .into_iter()
        .map(|key| {
            let (eps_eta, cells) = &groups[&key];
            let longest = cells.iter().map(|c| c.records.len()).max().unwrap_or(0);
            let stats = (0..longest)
                .map(|i| {
                    let values: Vec<f64> = cells
                        .iter()
                        .filter_map(|c| c.records.get(i).map(|r| r.exact_gap))
                        .collect();
                    let (mean, std, min, max) = describe(&values);
                    KStats {
                        k: i + 1,
                        mean,
                        std,
                        min,
                        max,
                    }
                })
                .collect();
            CellSummary {
                method: key.0,
                eps_eta: *eps_eta,
                stats,
            }
        })
        .collect()
}
