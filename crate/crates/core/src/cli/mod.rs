//! `nhqc` command line: `synth`, `simulate`, `sweep`, `verify`.
//!
//! Exit status is 0 on success, 1 when a verification check fails, 2 for
//! bad configuration or input, and 3 when the integrator gives up.

mod config;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

pub use config::{GridConfig, NoiseConfig, Overrides, RunConfig};

use crate::error::{Error, Result};
use crate::experiments::{
    emit_plot, export_surface, synthesize, sweep_fidelity, verify_all, CheckStatus, PlotKind,
    SynthesizedGate, VerifyOptions,
};
use crate::open_system::{default_inputs, gate_fidelity_under_noise, FidelityReport, Schedule};
use crate::quantum::{CMatrix, C64};

#[derive(Debug, Parser)]
#[command(name = "nhqc", version, about = "Holonomic trapped-ion gate synthesis and noise simulation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for segment parameters and write the pulse schedule as JSON.
    Synth {
        #[command(flatten)]
        overrides: Overrides,
        /// Schedule file (default: <out-dir>/<gate>.schedule.json).
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Fidelity at one (α, γ) point.
    Simulate {
        #[command(flatten)]
        overrides: Overrides,
        /// Simulate this schedule file instead of synthesizing one.
        #[arg(long)]
        schedule: Option<PathBuf>,
    },
    /// Fidelity over an (α, γ) grid, written as CSV, metadata JSON and SVG.
    Sweep {
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Run the built-in consistency checks.
    Verify {
        #[command(flatten)]
        overrides: Overrides,
        /// Multiply every tolerance by this factor.
        #[arg(long, default_value_t = 1.0)]
        tolerance_scale: f64,
        /// Report file (default: <out-dir>/verify.json).
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

impl Command {
    fn overrides(&self) -> &Overrides {
        match self {
            Command::Synth { overrides, .. }
            | Command::Simulate { overrides, .. }
            | Command::Sweep { overrides }
            | Command::Verify { overrides, .. } => overrides,
        }
    }
}

enum Outcome {
    Ok,
    ChecksFailed,
}

/// Parses `std::env::args` and runs the chosen command.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            let mut src = std::error::Error::source(&e);
            while let Some(s) = src {
                eprintln!("  caused by: {s}");
                src = s.source();
            }
            ExitCode::from(if e.is_numeric() { 3 } else { 2 })
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let config = cli.command.overrides().resolve()?;
    if cli.command.overrides().print_config {
        print!("{}", config.to_json());
        return Ok(Outcome::Ok);
    }
    match &cli.command {
        Command::Synth { output, .. } => synth(&config, output.as_deref()),
        Command::Simulate { schedule, .. } => simulate(&config, schedule.as_deref()),
        Command::Sweep { .. } => sweep(&config),
        Command::Verify {
            tolerance_scale,
            report,
            ..
        } => verify(&config, *tolerance_scale, report.as_deref()),
    }
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        ensure_dir(parent)?;
    }
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Json {
        context: path.display().to_string(),
        source: e,
    })?;
    fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
}

fn fmt_c(z: C64) -> String {
    format!("{:+.6}{:+.6}i", z.re, z.im)
}

fn print_matrix(m: &CMatrix) {
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| fmt_c(m[(i, j)])).collect();
        println!("  [{}]", row.join("  "));
    }
}

/// Ideal gate restricted to the phonon-vacuum qubit states.
fn computational_block(schedule: &Schedule) -> CMatrix {
    let layout = schedule.layout();
    let u = schedule.ideal_gate().matrix();
    let idx: Vec<usize> = (0..layout.total_dim())
        .filter(|&i| layout.digits(i)[0] == 0)
        .collect();
    CMatrix::from_fn(idx.len(), idx.len(), |i, j| u[(idx[i], idx[j])])
}

fn synth(config: &RunConfig, output: Option<&Path>) -> Result<Outcome> {
    let g = synthesize(&config.gate)?;
    println!("gate: {}", g.params.gate);
    if let Some(gate) = &g.single {
        let s = &gate.seg1;
        println!("theta = {:.12} rad", s.theta);
        println!("pulse area a_tau = {:.12} ({:.6} pi)", s.area, s.area / std::f64::consts::PI);
        println!("J = {:.6} rad/s", s.amplitude);
        println!("phi1 = {:.12} rad, phi2 = {:.12} rad", gate.seg1.phi, gate.seg2.phi);
        println!(
            "durations = {:.6e} s, {:.6e} s",
            gate.seg1.duration, gate.seg2.duration
        );
    }
    if let Some(d) = &g.drive {
        println!("Omega = {:.6} rad/s (Omega1 = {:.6}, Omega2 = {:.6})", d.omega, d.omega1(), d.omega2());
        println!("vartheta = {:.12} rad, chi = {:.12} rad", d.vartheta, d.chi);
        for (k, p) in g.schedule.pieces().iter().enumerate() {
            if let crate::open_system::Drive::TwoIon { phi1, phi2, .. } = p.drive {
                println!(
                    "segment {}: area pi/2, phi1 = {phi1:.12}, phi2 = {phi2:.12}, duration = {:.6e} s",
                    k + 1,
                    p.duration
                );
            }
        }
    }
    println!("ideal gate on the phonon-vacuum block:");
    print_matrix(&computational_block(&g.schedule));
    let path = output
        .map(Path::to_path_buf)
        .unwrap_or_else(|| config.out_dir.join(format!("{}.schedule.json", g.params.gate)));
    write_json(&path, &g.schedule)?;
    write_json(&path.with_extension("run.json"), config)?;
    println!("wrote {}", path.display());
    Ok(Outcome::Ok)
}

#[derive(Serialize)]
struct SimulationRecord<'a> {
    config: &'a RunConfig,
    schedule_file: Option<&'a Path>,
    fidelity: &'a FidelityReport,
}

fn simulate(config: &RunConfig, schedule_file: Option<&Path>) -> Result<Outcome> {
    let (schedule, inputs, label) = match schedule_file {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Error::io(p, e))?;
            let s: Schedule = serde_json::from_str(&text).map_err(|e| Error::Json {
                context: p.display().to_string(),
                source: e,
            })?;
            let inputs = default_inputs(s.layout())?;
            let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            (s, inputs, stem)
        }
        None => {
            let SynthesizedGate { schedule, inputs, params, .. } = synthesize(&config.gate)?;
            (schedule, inputs, params.gate.to_string())
        }
    };
    let report = gate_fidelity_under_noise(
        &schedule,
        &config.rates()?,
        config.error_model()?,
        &inputs,
        config.dt,
    )?;
    println!("alpha = {}, gamma = {} Hz, dt = {:.3e} s", config.alpha, config.noise.gamma_hz, report.dt);
    for (k, f) in report.per_state.iter().enumerate() {
        println!("  input {}: F = {f:.12}", k + 1);
    }
    println!("mean F = {:.12}", report.mean);
    let path = config.out_dir.join(format!("{label}.simulate.json"));
    write_json(
        &path,
        &SimulationRecord {
            config,
            schedule_file,
            fidelity: &report,
        },
    )?;
    Ok(Outcome::Ok)
}

fn sweep(config: &RunConfig) -> Result<Outcome> {
    let g = synthesize(&config.gate)?;
    let grid = config.grid.grid()?;
    let table = sweep_fidelity(&g, &grid, &config.sweep_settings())?;
    ensure_dir(&config.out_dir)?;
    let base = format!("{}_surface", g.params.gate);
    let csv = config.out_dir.join(format!("{base}.csv"));
    let meta = export_surface(&table, &csv)?;
    write_json(&config.out_dir.join(format!("{base}.run.json")), config)?;
    let plot = emit_plot(&table, &config.out_dir.join(format!("{base}.svg")))?;
    let (fmin, fmax) = table
        .rows
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), r| (a.min(r.fidelity), b.max(r.fidelity)));
    println!("{} points, F in [{fmin:.9}, {fmax:.9}], dt = {:.3e} s", table.rows.len(), table.metadata.dt);
    println!("wrote {}", csv.display());
    println!("wrote {}", meta.display());
    match plot {
        PlotKind::Heatmap(p) | PlotKind::Line(p) | PlotKind::Text(p) => println!("wrote {}", p.display()),
    }
    Ok(Outcome::Ok)
}

fn verify(config: &RunConfig, tolerance_scale: f64, report_path: Option<&Path>) -> Result<Outcome> {
    let report = verify_all(&VerifyOptions { tolerance_scale });
    for c in &report.checks {
        let tag = match c.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Info => "INFO",
        };
        let measured = c.measured.map_or("-".into(), |m| format!("{m:.3e}"));
        let tol = c.tolerance.map_or("-".into(), |t| format!("{t:.1e}"));
        println!("{tag} {:<32} measured {measured:>10}  tol {tol:>8}  {}", c.name, c.detail);
    }
    let path = report_path
        .map(Path::to_path_buf)
        .unwrap_or_else(|| config.out_dir.join("verify.json"));
    write_json(&path, &report)?;
    println!("wrote {}", path.display());
    Ok(if report.passed { Outcome::Ok } else { Outcome::ChecksFailed })
}
