//! The `aci` command line.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Deserialize;
use serde_json::json;

use crate::algebra::{names, parse_poly, Complex64, Field, Qi};
use crate::divisor::{fit_curve, read_samples_csv, Basis};
use crate::dynamics::{integrate, lookup, real_state, IntegratorOptions, SYSTEMS};
use crate::error::{Error, Result};
use crate::pipeline::{run_pipeline, PipelineConfig, StageStatus};
use crate::prym::{adapt_basis, involution_on_homology, split_periods, VariableAction};
use crate::riemann::{period_matrix, DifferentialBasis, HyperellipticModel, PeriodJson, PeriodOptions};

macro_rules! out {
    ($($t:tt)*) => {
        writeln!(std::io::stdout(), $($t)*)?
    };
}

#[derive(Debug, Parser)]
#[command(name = "aci", version, about = "Algebraic integrability checks for polynomial Hamiltonian systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the registry systems and their default parameters.
    List,
    /// Run the full pipeline on a registry system.
    Analyze {
        system: String,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Directory for report.json and the CSV side files; the report goes
        /// to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Period matrix of a hyperelliptic curve y^2 = P(x).
    Periods {
        curve: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Prym split of a period matrix under an involution such as `x->-x`.
    Prym {
        periods: PathBuf,
        #[arg(long)]
        involution: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrate a registry system and monitor its invariants.
    Integrate {
        system: String,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        x0: Vec<f64>,
        #[arg(long, default_value_t = 5.0)]
        t: f64,
        /// Fixed step; adaptive stepping when absent.
        #[arg(long)]
        step: Option<f64>,
        /// Parameter override `name=value`, repeatable.
        #[arg(long = "param", value_parser = parse_key_value)]
        params: Vec<(String, String)>,
        #[arg(long, default_value_t = 1e-8)]
        drift_tol: f64,
        /// CSV of the trajectory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit a polynomial relation through sampled points.
    Fit {
        samples: PathBuf,
        #[arg(long, default_value_t = 8)]
        degree: u32,
        /// Variable weights; the degree then bounds the weighted degree.
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<u32>>,
        /// Exponent of the monomial normalized to coefficient one.
        #[arg(long, value_delimiter = ',')]
        normalize: Option<Vec<u32>>,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

fn parse_key_value(s: &str) -> std::result::Result<(String, String), String> {
    s.split_once('=').map(|(k, v)| (k.trim().to_string(), v.trim().to_string())).ok_or_else(|| format!("expected name=value, got '{s}'"))
}

/// Input of `aci periods`: coefficients low to high, as numbers, `[re, im]`
/// pairs or strings, or an expression in `x`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    #[serde(default)]
    pub coefficients: Option<Vec<Coefficient>>,
    #[serde(default)]
    pub expression: Option<String>,
    /// Exponents `j` of the differentials `x^j dx / y`, default `0..g`.
    #[serde(default)]
    pub exponents: Option<Vec<u32>>,
    #[serde(default)]
    pub nodes: Option<usize>,
    #[serde(default)]
    pub tol: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Real(f64),
    Pair([f64; 2]),
    Text(String),
}

impl Coefficient {
    fn value(&self) -> Result<Complex64> {
        match self {
            Coefficient::Real(x) => Ok(Complex64::new(*x, 0.0)),
            Coefficient::Pair([re, im]) => Ok(Complex64::new(*re, *im)),
            Coefficient::Text(s) => Ok(s.parse::<Qi>()?.to_c64()),
        }
    }
}

impl CurveFile {
    pub fn polynomial(&self) -> Result<Vec<Complex64>> {
        match (&self.coefficients, &self.expression) {
            (Some(c), None) => c.iter().map(Coefficient::value).collect(),
            (None, Some(e)) => {
                let v = names(&["x"]);
                let p = parse_poly(e, &v, &BTreeMap::new())?;
                Ok((0..=p.degree_in(0)).map(|k| p.coeff(&[k]).to_c64()).collect())
            }
            _ => Err(Error::Parse("curve file needs exactly one of 'coefficients' or 'expression'".into())),
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(p, text)?;
        }
        None => out!("{text}"),
    }
    Ok(())
}

/// Runs a parsed command and returns whether every check it made passed.
pub fn execute(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::List => {
            for name in SYSTEMS {
                let def = lookup(name, &BTreeMap::new())?;
                let params: Vec<String> = def.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                out!("{name}");
                out!("  vars: {}", def.system.vars.join(", "));
                out!("  params: {}", params.join(", "));
                for (n, h) in def.system.invariant_names.iter().zip(&def.system.invariants) {
                    out!("  {n} = {h}");
                }
            }
            Ok(true)
        }
        Command::Analyze { system, config, out } => {
            let cfg = match &config {
                Some(p) => PipelineConfig::from_path(p)?,
                None => PipelineConfig::default(),
            };
            let run = run_pipeline(&system, &cfg)?;
            match &out {
                Some(dir) => {
                    run.write_to(dir)?;
                    for s in &run.report.stages {
                        let tag = match s.status {
                            StageStatus::Passed => "ok",
                            StageStatus::Failed => "FAILED",
                            StageStatus::Error => "ERROR",
                            StageStatus::Skipped => "skipped",
                        };
                        out!("{:<14} {tag}", s.name);
                    }
                    for f in run.report.failures() {
                        out!("  {f}");
                    }
                    for c in &run.report.reference_comparisons {
                        out!("reference {:<36} {} ({:.3e})", c.name, if c.agrees { "agrees" } else { "differs" }, c.residual);
                    }
                    out!("report written to {}", dir.join("report.json").display());
                }
                None => out!("{}", serde_json::to_string_pretty(&run.report)?),
            }
            Ok(run.report.passed)
        }
        Command::Periods { curve, out } => {
            let file: CurveFile = serde_json::from_str(&std::fs::read_to_string(&curve)?)?;
            let model = HyperellipticModel::new(&file.polynomial()?)?;
            let basis = match &file.exponents {
                Some(e) => DifferentialBasis::ordered(e),
                None => DifferentialBasis::standard(model.genus),
            };
            let mut opts = PeriodOptions::default();
            opts.nodes = file.nodes.unwrap_or(opts.nodes);
            opts.tol = file.tol.unwrap_or(opts.tol);
            let pm = period_matrix(&model, &basis, &opts)?;
            let j = pm.to_json()?;
            emit(out.as_deref(), &serde_json::to_string_pretty(&j)?)?;
            Ok(j.bilinear_residual <= 1e-9 && j.min_imaginary_eigenvalue > 0.0)
        }
        Command::Prym { periods, involution, out } => {
            let pj: PeriodJson = serde_json::from_str(&std::fs::read_to_string(&periods)?)?;
            let act = VariableAction::parse(&involution)?;
            let s: Vec<i64> = pj.exponents.iter().map(|&j| act.sign_on(j)).collect();
            let inv = involution_on_homology(&pj.omega_matrix(), &s)?;
            let adapted = adapt_basis(&inv, &pj.omega_matrix())?;
            let split = split_periods(&adapted, &inv)?;
            let ok = inv.residual <= 1e-6 && split.blocks.max() <= 1e-9 && split.z_min_imaginary_eigenvalue > 0.0;
            let report = json!({ "involution": inv, "adapted": adapted, "split": split });
            emit(out.as_deref(), &serde_json::to_string_pretty(&report)?)?;
            Ok(ok)
        }
        Command::Integrate { system, x0, t, step, params, drift_tol, out } => {
            let def = lookup(&system, &params.into_iter().collect())?;
            if x0.len() != def.system.dim() {
                return Err(Error::Dimension(format!("{} needs {} initial values", def.system.name, def.system.dim())));
            }
            let mut opts = IntegratorOptions::default();
            if let Some(h) = step {
                opts.step = h;
                opts.adaptive = false;
            }
            let traj = integrate(&def.system, &real_state(&x0), t, &opts)?;
            match &out {
                Some(p) => traj.to_csv(&def.system.vars, std::fs::File::create(p)?)?,
                None => traj.to_csv(&def.system.vars, std::io::stdout().lock())?,
            }
            let mut err = std::io::stderr().lock();
            writeln!(err, "steps {} max drift {:.3e}", traj.times.len(), traj.max_drift())?;
            if let Some(tb) = traj.blow_up {
                writeln!(err, "blow-up near t = {tb:.6}")?;
            }
            Ok(traj.blow_up.is_none() && traj.max_drift() <= drift_tol)
        }
        Command::Fit { samples, degree, weights, normalize, tol } => {
            let pts = read_samples_csv(std::fs::File::open(&samples)?)?;
            let vars = pts.first().map(|s| s.vars.clone()).ok_or(Error::TooFewSamples { have: 0, need: 1 })?;
            let basis = match weights {
                Some(w) => Basis::Weighted { weights: w, bound: degree },
                None => Basis::TotalDegree(degree),
            };
            let fit = fit_curve(&pts, &vars, &basis, normalize.as_deref())?;
            out!("{}", serde_json::to_string_pretty(&fit.report())?);
            Ok(fit.residual <= tol && fit.rational.is_some())
        }
    }
}

/// Parses the process arguments and runs; returns the exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
