//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 for usage or
//! input errors. Payloads (CSV or JSON) go to stdout, prose to stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use bhbounds_core::{
    bh_ratio_with, bounds_table_with, build_pm, family_ratio, lower_bound, optimal_x, search_with,
    FamilyParams, SearchConfig, SupNormConfig,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::format::{certificate_to_json, read_polynomial};
use crate::parallel::RayonExecutor;
use crate::report::{bounds_csv, bounds_json, format_sig, json_num, CSV_DIGITS, JSON_DIGITS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Agreement required between the numerical pipeline and the closed form.
pub const FAMILY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(
    name = "bhbounds",
    version,
    about = "Bounds on polynomial Bohnenblust-Hille constants"
)]
pub struct Cli {
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, clap::Args)]
pub struct SupNormArgs {
    /// Grid points per angle axis.
    #[arg(long, default_value_t = 64)]
    pub grid: usize,
    /// Refinement stopping tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Maximum refinement sweeps.
    #[arg(long, default_value_t = 200)]
    pub max_sweeps: usize,
}

impl SupNormArgs {
    fn config(&self) -> SupNormConfig {
        SupNormConfig {
            grid_points_per_axis: self.grid,
            refine_tolerance: self.tol,
            max_refine_iterations: self.max_sweeps,
            ..SupNormConfig::default()
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of lower and upper bounds on D(m).
    Bounds {
        #[arg(long = "from")]
        from: u32,
        #[arg(long = "to")]
        to: u32,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Coefficient-norm to sup-norm ratio of a polynomial file.
    Ratio {
        file: PathBuf,
        #[command(flatten)]
        supnorm: SupNormArgs,
        /// Also write a certificate to this path.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Check the witness family numerically against the closed-form bound.
    VerifyFamily {
        #[arg(long = "from", default_value_t = 2)]
        from: u32,
        #[arg(long = "to")]
        to: u32,
        #[command(flatten)]
        supnorm: SupNormArgs,
    },
    /// Sample f_m(x) on a log-uniform grid.
    FmCurve {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 1e-3)]
        xmin: f64,
        #[arg(long, default_value_t = 1e6)]
        xmax: f64,
        #[arg(long, default_value_t = 200)]
        points: usize,
    },
    /// Pattern search for witness polynomials.
    Search {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
        /// Ratio evaluations per restart.
        #[arg(long, default_value_t = 400)]
        budget: usize,
        #[arg(long, default_value_t = 0.5)]
        step_init: f64,
        #[arg(long, default_value_t = 1e-6)]
        step_min: f64,
        /// Start every restart at random instead of seeding one from the family.
        #[arg(long)]
        no_family_seed: bool,
        #[command(flatten)]
        supnorm: SupNormArgs,
        #[arg(long, default_value = "certificate.json")]
        out: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<bhbounds_core::Error> for Failure {
    fn from(e: bhbounds_core::Error) -> Self {
        Self::Usage(e.to_string())
    }
}

impl From<crate::format::FormatError> for Failure {
    fn from(e: crate::format::FormatError) -> Self {
        Self::Usage(e.to_string())
    }
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure::Usage(format!("write failed: {e}"))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Verification(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            EXIT_VERIFY_FAILED
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    if cli.threads == Some(0) {
        return Err(Failure::Usage("--threads must be at least 1".into()));
    }
    let exec = RayonExecutor::new(cli.threads).map_err(|e| Failure::Usage(e.to_string()))?;
    match cli.command {
        Command::Bounds { from, to, format } => {
            let rows = bounds_table_with(from, to, &exec)?;
            let text = match format {
                TableFormat::Csv => bounds_csv(&rows),
                TableFormat::Json => bounds_json(&rows),
            };
            out.write_all(text.as_bytes()).map_err(io_failure)
        }
        Command::Ratio {
            file,
            supnorm,
            cert,
        } => {
            let p = read_polynomial(&file)?;
            let cfg = supnorm.config();
            let r = bh_ratio_with(&p, &cfg, &exec)?;
            let report = json!({
                "m": p.degree(),
                "n": p.num_vars(),
                "estimate": json_num(r.estimate),
                "certified": json_num(r.certified),
                "coeff_norm": json_num(r.coeff_norm),
                "sup_lower": json_num(r.supnorm.lower_estimate),
                "sup_upper": json_num(r.supnorm.upper_bracket),
                "arg_angles": r.supnorm.arg_angles.iter().map(|&t| json_num(t)).collect::<Vec<_>>(),
                "grid": r.supnorm.grid_used,
                "converged": r.supnorm.converged,
            });
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&report).expect("json")
            )
            .map_err(io_failure)?;
            if let Some(path) = cert {
                let certificate = bhbounds_core::WitnessCertificate {
                    polynomial: p,
                    coeff_norm: r.coeff_norm,
                    certified_lower: r.certified,
                    estimate: r.estimate,
                    supnorm: r.supnorm,
                    supnorm_config: cfg,
                    search: None,
                };
                write_file(&path, &certificate_to_json(&certificate))?;
                let _ = writeln!(err, "wrote {}", path.display());
            }
            Ok(())
        }
        Command::VerifyFamily { from, to, supnorm } => {
            verify_family(from, to, &supnorm, &exec, out, err)
        }
        Command::FmCurve {
            m,
            xmin,
            xmax,
            points,
        } => fm_curve(m, xmin, xmax, points, out),
        Command::Search {
            m,
            n,
            seed,
            restarts,
            budget,
            step_init,
            step_min,
            no_family_seed,
            supnorm,
            out: path,
        } => {
            let cfg = SearchConfig {
                m,
                num_vars: n,
                restarts,
                rng_seed: seed,
                step_init,
                step_min,
                eval_budget: budget,
                supnorm: supnorm.config(),
                seed_with_family: !no_family_seed,
            };
            let cert = search_with(&cfg, &exec)?;
            write_file(&path, &certificate_to_json(&cert))?;
            let outcome = cert.search.as_ref().expect("search fills the outcome");
            let summary = json!({
                "certificate": path.display().to_string(),
                "m": m,
                "n": n,
                "seed": seed,
                "estimate": json_num(cert.estimate),
                "certified_lower": json_num(cert.certified_lower),
                "family_bound": json_num(lower_bound(m)?),
                "restart": outcome.restart,
                "evaluations": outcome.evaluations,
                "terms": cert.polynomial.len(),
            });
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&summary).expect("json")
            )
            .map_err(io_failure)?;
            let _ = writeln!(
                err,
                "best estimate {} (certified {}) from restart {}",
                format_sig(cert.estimate, JSON_DIGITS),
                format_sig(cert.certified_lower, JSON_DIGITS),
                outcome.restart
            );
            Ok(())
        }
    }
}

fn write_file(path: &std::path::Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn verify_family(
    from: u32,
    to: u32,
    supnorm: &SupNormArgs,
    exec: &RayonExecutor,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), Failure> {
    if from < 2 || to < from {
        return Err(Failure::Usage(format!(
            "invalid degree range {from}..={to} (need 2 <= from <= to)"
        )));
    }
    let cfg = supnorm.config();
    writeln!(out, "m,status,estimate,lower_bound,abs_error,certified").map_err(io_failure)?;
    let mut failed = Vec::new();
    for m in from..=to {
        let p = build_pm(m, &FamilyParams::optimal(m)?)?;
        let r = bh_ratio_with(&p, &cfg, exec)?;
        let expected = lower_bound(m)?;
        let error = (r.estimate - expected).abs();
        let pass = error <= FAMILY_TOLERANCE;
        writeln!(
            out,
            "{m},{},{},{},{},{}",
            if pass { "PASS" } else { "FAIL" },
            format_sig(r.estimate, JSON_DIGITS),
            format_sig(expected, JSON_DIGITS),
            format_sig(error, 3),
            format_sig(r.certified, JSON_DIGITS),
        )
        .map_err(io_failure)?;
        if !pass {
            let reason = if r.supnorm.converged {
                "grid too coarse: refinement settled on a non-global maximum"
            } else {
                "refinement did not converge within the sweep budget"
            };
            let _ = writeln!(
                err,
                "m={m}: estimate {} differs from {} by {} ({reason}; try a finer --grid)",
                format_sig(r.estimate, JSON_DIGITS),
                format_sig(expected, JSON_DIGITS),
                format_sig(error, 3),
            );
            failed.push(m);
        } else if r.certified <= 1.0 {
            let _ = writeln!(
                err,
                "m={m}: note: certified ratio {} <= 1, the sup-norm bracket at --grid {} is too loose to certify D(m) > 1",
                format_sig(r.certified, CSV_DIGITS),
                cfg.grid_points_per_axis,
            );
        }
    }
    if failed.is_empty() {
        let _ = writeln!(
            err,
            "all {} degrees agree within {FAMILY_TOLERANCE:e}",
            to - from + 1
        );
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "degrees {failed:?} out of tolerance"
        )))
    }
}

fn fm_curve(
    m: u32,
    xmin: f64,
    xmax: f64,
    points: usize,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    if !(xmin > 0.0 && xmin.is_finite() && xmax.is_finite() && xmin <= xmax) || points == 0 {
        return Err(Failure::Usage(format!(
            "invalid sampling range: need 0 < xmin <= xmax and points >= 1 (got {xmin}, {xmax}, {points})"
        )));
    }
    let star = optimal_x(m)?;
    let mut xs: Vec<f64> = if points == 1 {
        vec![xmin]
    } else {
        let (a, b) = (xmin.ln(), xmax.ln());
        (0..points)
            .map(|i| match i {
                0 => xmin,
                i if i == points - 1 => xmax,
                i => (a + (b - a) * i as f64 / (points - 1) as f64).exp(),
            })
            .collect()
    };
    if (xmin..=xmax).contains(&star) && points > 1 {
        xs.push(star);
    }
    xs.sort_by(f64::total_cmp);
    xs.dedup();

    let mut text = String::from("x,f,is_optimal\n");
    for x in xs {
        text.push_str(&format!(
            "{},{},{}\n",
            format_sig(x, JSON_DIGITS),
            format_sig(family_ratio(m, x)?, JSON_DIGITS),
            u8::from(x == star),
        ));
    }
    out.write_all(text.as_bytes()).map_err(io_failure)
}
