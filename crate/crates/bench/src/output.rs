//! CSV and JSON writers.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde_json::{json, Value};

use crate::error::{BenchError, Result};
use crate::experiment::CellResult;
use crate::summary::CellSummary;

pub const CSV_HEADER: [&str; 13] = [
    "method",
    "eps_eta",
    "seed",
    "k",
    "a_k",
    "A_k",
    "f_upper",
    "exact_gap",
    "approx_gap",
    "lower_bound",
    "E_k",
    "grad_queries",
    "wall_time_ns",
];

pub const SCHEMA: &str = "axgd-kit/1";

/// 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

pub fn write_csv<W: Write>(results: &[CellResult], out: W) -> std::io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for cell in results {
        let method = cell.spec.method.name();
        let eps = fmt_float(cell.spec.eps_eta);
        let seed = cell.spec.seed.to_string();
        for r in &cell.records {
            w.write_record([
                method,
                &eps,
                &seed,
                &r.k.to_string(),
                &fmt_float(r.a_k),
                &fmt_float(r.a_sum),
                &fmt_float(r.f_upper),
                &fmt_float(r.exact_gap),
                &fmt_float(r.approx_gap),
                &fmt_float(r.lower_bound),
                &fmt_float(r.e_k),
                &r.grad_queries.to_string(),
                &r.wall_time_ns.to_string(),
            ])?;
        }
    }
    w.flush()
}

pub fn summary_json(summary: &[CellSummary]) -> Value {
    let num = |v: f64| if v.is_finite() { json!(v) } else { Value::Null };
    json!({
        "schema": SCHEMA,
        "std_convention": "population",
        "cells": summary.iter().map(|c| json!({
            "method": c.method.name(),
            "eps_eta": c.eps_eta,
            "stats": c.stats.iter().map(|s| json!({
                "k": s.k,
                "mean": num(s.mean),
                "std": num(s.std),
                "min": num(s.min),
                "max": num(s.max),
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| BenchError::io(parent, e))?;
    }
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| BenchError::io(path, e))
}

pub fn emit_csv(results: &[CellResult], path: &Path) -> Result<()> {
    let file = create(path)?;
    write_csv(results, file).map_err(|e| BenchError::io(path, e))
}

pub fn emit_json(summary: &[CellSummary], path: &Path) -> Result<()> {
    let mut file = create(path)?;
    serde_json::to_writer_pretty(&mut file, &summary_json(summary))
        .map_err(|e| BenchError::io(path, e.into()))?;
    file.write_all(b"\n")
        .and_then(|_| file.flush())
        .map_err(|e| BenchError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_csv_is_header_only() {
        let mut buf = Vec::new();
        write_csv(&[], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "method,eps_eta,seed,k,a_k,A_k,f_upper,exact_gap,approx_gap,lower_bound,E_k,grad_queries,wall_time_ns\n"
        );
    }

    #[test]
    fn floats_round_trip() {
        for v in [
            0.1,
            1.0 / 3.0,
            -2.5e-300,
            6.02214076e23,
            f64::MIN_POSITIVE,
            1e-10 + 1e-26,
        ] {
            let s = fmt_float(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
            let mantissa = s.split('e').next().unwrap();
            assert_eq!(mantissa.chars().filter(|c| c.is_ascii_digit()).count(), 17);
        }
        assert_eq!(fmt_float(f64::NAN), "NaN");
    }

    #[test]
    fn unwritable_path_reports_path() {
        let err = emit_csv(&[], Path::new("/proc/definitely/not/here.csv")).unwrap_err();
        assert_eq!(err.exit_code(), 4);
        assert!(err.to_string().contains("/proc/definitely"));
    }
}
