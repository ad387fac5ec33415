//! Command-line front end.
//!
//! ```text
//! switchthermo <command> [--beta B] [--s S | --s-grid a,b,step] [--lambda L]
//!              [--p P] [--u2 pswap|pcnot] [--out DIR] [--plot] [--config FILE]
//! ```
//!
//! `--beta` is the inverse temperature: `--beta 0` is `T = ∞` and
//! `--beta inf` is `T = 0`. Exit codes: 0 success, 1 verification failure,
//! 2 usage or validation error, 3 I/O error.

mod csv_out;
mod plot;
mod verify;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiments::{self, default_s_grid, extreme_betas, SweepRow};
use crate::states::{InteractionKind, InverseTemperature};

pub use csv_out::{format_sig, parse_csv, render_csv, write_atomic, write_csv, CSV_HEADER};
pub use plot::{render_plot, write_plot};
pub use verify::{AcceptanceSuite, CriterionResult, VerifyReport, GOLDEN_SWITCH_ON_BITS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Fig2,
    Fig3a,
    Fig3b,
    Fig3c,
    Fig3d,
    Fig4,
    Sweep,
    Verify,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Fig2 => "fig2",
            Command::Fig3a => "fig3a",
            Command::Fig3b => "fig3b",
            Command::Fig3c => "fig3c",
            Command::Fig3d => "fig3d",
            Command::Fig4 => "fig4",
            Command::Sweep => "sweep",
            Command::Verify => "verify",
        }
    }

    /// Temperatures used when `--beta` is not given.
    pub fn default_betas(&self) -> Vec<InverseTemperature> {
        match self {
            Command::Fig3b => vec![
                InverseTemperature::ZERO,
                InverseTemperature::Finite(0.5),
                InverseTemperature::Finite(1.0),
                InverseTemperature::Infinite,
            ],
            Command::Fig3c => vec![InverseTemperature::ZERO],
            Command::Fig4 => vec![InverseTemperature::Infinite],
            _ => extreme_betas(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    /// `None` means the command's default temperatures.
    pub beta: Option<InverseTemperature>,
    pub s_grid: Vec<f64>,
    pub lambda: f64,
    pub p: f64,
    pub u2: InteractionKind,
    pub out_dir: PathBuf,
    pub plot: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            beta: None,
            s_grid: default_s_grid(),
            lambda: 1.0,
            p: experiments::DEFAULT_P,
            u2: InteractionKind::PartialSwap,
            out_dir: PathBuf::from("results"),
            plot: false,
        }
    }

    pub fn betas(&self) -> Vec<InverseTemperature> {
        match self.beta {
            Some(b) => vec![b],
            None => self.command.default_betas(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.s_grid.is_empty() {
            return Err(Error::validation("s_grid", "grid is empty"));
        }
        if let Some(s) = self.s_grid.iter().find(|s| !(0.0..=1.0).contains(*s)) {
            return Err(Error::validation(
                "s_grid",
                format!("{s} is outside [0, 1]"),
            ));
        }
        for (field, x) in [("lambda", self.lambda), ("p", self.p)] {
            if !(0.0..=1.0).contains(&x) {
                return Err(Error::validation(field, format!("{x} is outside [0, 1]")));
            }
        }
        Ok(())
    }
}

/// JSON config file; field names mirror [`RunConfig`].
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    command: Option<Command>,
    beta: Option<String>,
    s_grid: Option<Vec<f64>>,
    lambda: Option<f64>,
    p: Option<f64>,
    u2: Option<String>,
    out_dir: Option<PathBuf>,
    plot: Option<bool>,
}

#[derive(Debug, Parser)]
#[command(
    name = "switchthermo",
    version,
    about = "Quantum-switched thermalizing channels: sweeps, invariance checks and acceptance suite",
    allow_negative_numbers = true
)]
struct Args {
    /// fig2 | fig3a | fig3b | fig3c | fig3d | fig4 | sweep | verify
    #[arg(value_enum)]
    command: Option<Command>,

    /// JSON file with any of: command, beta, s_grid, lambda, p, u2, out_dir, plot.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Inverse temperature: `inf` (T = 0) or a number >= 0 (0 is T = ∞).
    #[arg(long)]
    beta: Option<String>,

    /// Single thermalization strength.
    #[arg(long, conflicts_with = "s_grid")]
    s: Option<f64>,

    /// Thermalization strengths as `start,stop,step`.
    #[arg(long = "s-grid")]
    s_grid: Option<String>,

    #[arg(long)]
    lambda: Option<f64>,

    #[arg(long)]
    p: Option<f64>,

    /// Second interaction: pswap or pcnot.
    #[arg(long)]
    u2: Option<String>,

    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Also write an SVG line chart.
    #[arg(long)]
    plot: bool,
}

/// Parses `start,stop,step` into an inclusive grid.
pub fn parse_s_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let nums = parts
        .iter()
        .map(|p| p.parse::<f64>())
        .collect::<std::result::Result<Vec<f64>, _>>()
        .map_err(|_| Error::Usage(format!("--s-grid `{spec}`: expected start,stop,step")))?;
    let [start, stop, step] = nums[..] else {
        return Err(Error::Usage(format!(
            "--s-grid `{spec}`: expected start,stop,step"
        )));
    };
    if step.is_nan() || step <= 0.0 || stop < start {
        return Err(Error::validation(
            "s_grid",
            format!("`{spec}` needs step > 0 and stop >= start"),
        ));
    }
    let intervals = ((stop - start) / step + 1e-9).floor() as usize;
    if intervals == 0 {
        return Ok(vec![start]);
    }
    let last = start + intervals as f64 * step;
    Ok((0..=intervals)
        .map(|k| start + (last - start) * k as f64 / intervals as f64)
        .collect())
}

/// Builds a [`RunConfig`] from command-line arguments (including the program
/// name) and an optional `--config` JSON file. Flags override the file.
pub fn parse_config<I, T>(argv: I) -> Result<RunConfig>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = Args::try_parse_from(argv).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
            Error::Help(e.to_string())
        }
        _ => Error::Usage(e.to_string()),
    })?;

    let file = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            serde_json::from_str::<ConfigFile>(&text)
                .map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?
        }
        None => ConfigFile::default(),
    };

    let command = args
        .command
        .or(file.command)
        .ok_or_else(|| Error::Usage("missing command (see --help)".into()))?;
    let mut cfg = RunConfig::new(command);

    if let Some(beta) = args.beta.as_deref().or(file.beta.as_deref()) {
        cfg.beta = Some(beta.parse()?);
    }
    if let Some(s) = args.s {
        cfg.s_grid = vec![s];
    } else if let Some(spec) = &args.s_grid {
        cfg.s_grid = parse_s_grid(spec)?;
    } else if let Some(grid) = file.s_grid {
        cfg.s_grid = grid;
    }
    if let Some(lambda) = args.lambda.or(file.lambda) {
        cfg.lambda = lambda;
    }
    if let Some(p) = args.p.or(file.p) {
        cfg.p = p;
    }
    if let Some(u2) = args.u2.as_deref().or(file.u2.as_deref()) {
        cfg.u2 = u2.parse()?;
    }
    if let Some(out) = args.out.or(file.out_dir) {
        cfg.out_dir = out;
    }
    cfg.plot = args.plot || file.plot.unwrap_or(false);

    cfg.validate()?;
    Ok(cfg)
}

fn output_path(cfg: &RunConfig, ext: &str) -> PathBuf {
    cfg.out_dir.join(format!("{}.{ext}", cfg.command.name()))
}

fn emit_rows(cfg: &RunConfig, rows: &[SweepRow]) -> Result<()> {
    let csv_path = output_path(cfg, "csv");
    write_csv(rows, &csv_path)?;
    println!("wrote {} ({} rows)", csv_path.display(), rows.len());
    if cfg.plot {
        let svg_path = output_path(cfg, "svg");
        write_plot(rows, &svg_path)?;
        println!("wrote {}", svg_path.display());
    }
    Ok(())
}

fn write_table(path: &Path, header: &str, lines: &[String]) -> Result<()> {
    let mut text = String::from(header);
    text.push('\n');
    for line in lines {
        text.push_str(line);
        text.push('\n');
    }
    write_atomic(path, text.as_bytes())?;
    println!("wrote {} ({} rows)", path.display(), lines.len());
    Ok(())
}

/// Runs a parsed configuration; returns the process exit code.
pub fn run(cfg: &RunConfig) -> Result<i32> {
    let betas = cfg.betas();
    match cfg.command {
        Command::Fig2 => {
            let rows = experiments::fig2_sweep(&betas, &cfg.s_grid, &[0.0, 1.0], cfg.p)?;
            emit_rows(cfg, &rows)?;
        }
        Command::Fig3a => {
            let checks = experiments::fig3a_energy_check(&cfg.s_grid)?;
            let mut lines = Vec::new();
            for c in &checks {
                println!(
                    "s={:<5} mean fidelity={:.6} leakage={:.3e} [L,H]={:.3e}",
                    format_sig(c.s),
                    c.mean_fidelity(),
                    c.leakage,
                    c.commutator
                );
                for (n, f) in c.fidelities.iter().enumerate() {
                    lines.push(format!(
                        "{},{n},{},{},{}",
                        format_sig(c.s),
                        format_sig(*f),
                        format_sig(c.leakage),
                        format_sig(c.commutator)
                    ));
                }
            }
            write_table(
                &output_path(cfg, "csv"),
                "s,n,fidelity,leakage,commutator",
                &lines,
            )?;
        }
        Command::Fig3b => {
            let mut lines = Vec::new();
            for &s in &cfg.s_grid {
                for c in experiments::fig3b_gibbs_check(s, &betas)? {
                    println!(
                        "beta={:<4} s={:<5} distance={:.3e}",
                        c.beta,
                        format_sig(s),
                        c.distance
                    );
                    lines.push(format!(
                        "{},{},{}",
                        c.beta,
                        format_sig(s),
                        format_sig(c.distance)
                    ));
                }
            }
            write_table(&output_path(cfg, "csv"), "beta,s,trace_distance", &lines)?;
        }
        Command::Fig3c => {
            let mut rows = Vec::new();
            for &beta in &betas {
                for &s in &cfg.s_grid {
                    let w = experiments::fig3c_witness(s, beta)?;
                    println!(
                        "beta={beta} s={}: M = [[{:.6}, {:.6}], [{:.6}, {:.6}]], distance to tau_M = {:.6}",
                        format_sig(s),
                        w.m_state.get(0, 0).re,
                        w.m_state.get(0, 1).re,
                        w.m_state.get(1, 0).re,
                        w.m_state.get(1, 1).re,
                        w.distance
                    );
                }
                rows.extend(experiments::fig3c_rows(&cfg.s_grid, beta)?);
            }
            experiments::sort_rows(&mut rows);
            emit_rows(cfg, &rows)?;
        }
        Command::Fig3d => {
            let mut rows = Vec::new();
            for &beta in &betas {
                rows.extend(experiments::fig3d_gain_vs_cost(&cfg.s_grid, beta)?);
            }
            experiments::sort_rows(&mut rows);
            emit_rows(cfg, &rows)?;
        }
        Command::Fig4 => {
            let mut rows = Vec::new();
            for &beta in &betas {
                rows.extend(experiments::fig4_cnot_sweep(&cfg.s_grid, beta)?);
            }
            experiments::sort_rows(&mut rows);
            emit_rows(cfg, &rows)?;
        }
        Command::Sweep => {
            let rows = experiments::sweep(&betas, &cfg.s_grid, cfg.lambda, cfg.p, cfg.u2)?;
            emit_rows(cfg, &rows)?;
        }
        Command::Verify => {
            let report = AcceptanceSuite::default().run();
            print!("{}", report.render());
            let path = output_path(cfg, "csv");
            write_atomic(&path, report.to_csv().as_bytes())?;
            println!("wrote {}", path.display());
            return Ok(if report.all_passed() { 0 } else { 1 });
        }
    }
    Ok(0)
}

/// Entry point used by the binary: parse, run, report errors, return the exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let outcome = parse_config(argv).and_then(|cfg| run(&cfg));
    match outcome {
        Ok(code) => code,
        Err(Error::Help(text)) => {
            print!("{text}");
            0
        }
        Err(e) => {
            eprintln!("switchthermo: {e}");
            e.exit_code()
        }
    }
}
