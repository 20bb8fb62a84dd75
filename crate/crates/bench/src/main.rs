use std::path::{Path, PathBuf};
use std::process::ExitCode;

use axgd_bench::experiment::failure_report;
use axgd_bench::output::{emit_csv, emit_json};
use axgd_bench::presets::{noise_report, reproduce, write_panels, Preset};
use axgd_bench::summary::summarize;
use axgd_bench::{parse_config, run_experiment, BenchError, ExperimentConfig, Result};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "axgd-bench",
    version,
    about = "Run AXGD / AGD / GD experiments and emit convergence data"
)]
struct Cli {
    /// Worker threads for independent cells (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Base seed for the noise streams; overrides `base_seed` in the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Regenerate the data behind a figure.
    Repro {
        #[arg(long, value_enum)]
        preset: PresetArg,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Check a config file and report every problem.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PresetArg {
    Fig1,
    Fig2,
}

fn load(path: &Path, seed: Option<u64>) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
    let mut cfg = parse_config(&text)?;
    if let Some(s) = seed {
        cfg.base_seed = s;
    }
    Ok(cfg)
}

fn execute(cli: Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| BenchError::config(format!("--threads: {e}")))?;
    }
    match cli.command {
        Command::Validate { config } => {
            let cfg = load(&config, cli.seed)?;
            axgd_bench::experiment::build_instance(&cfg)?;
            println!("{}: ok", config.display());
            Ok(())
        }
        Command::Run { config, out } => {
            let cfg = load(&config, cli.seed)?;
            let results = run_experiment(&cfg)?;
            if cfg.write_csv {
                let path = out.join(format!("{}.csv", cfg.name));
                emit_csv(&results, &path)?;
                println!("wrote {}", path.display());
            }
            if cfg.write_json {
                let path = out.join(format!("{}.json", cfg.name));
                emit_json(&summarize(&results), &path)?;
                println!("wrote {}", path.display());
            }
            let failures = failure_report(&results);
            if failures.is_empty() {
                Ok(())
            } else {
                Err(BenchError::Numeric {
                    count: failures.len(),
                    report: failures,
                })
            }
        }
        Command::Repro { preset, out } => {
            let preset = match preset {
                PresetArg::Fig1 => Preset::Fig1,
                PresetArg::Fig2 => Preset::Fig2,
            };
            let panels = reproduce(preset, cli.seed.unwrap_or(0))?;
            let written = write_panels(&panels, &out);
            if preset == Preset::Fig2 {
                for line in noise_report(&panels) {
                    println!("{line}");
                }
            }
            for p in written? {
                println!("wrote {}", p.display());
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
