use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use bjorth_cli::commands::{self, Method};
use bjorth_cli::report::Report;
use bjorth_cli::verify;
use bjorth_core::{Error, RunConfig};
use clap::{Parser, Subcommand};

/// Birkhoff-James orthogonality of holomorphic functions on closed curves.
///
/// Expressions use `z`, complex literals like `1+2i`, `+ - * / ^`, and
/// `blaschke(a, r)` factors. Curves are `circle(center,radius)` or
/// `ellipse(center,semi_a,semi_b)`.
#[derive(Parser)]
#[command(name = "bjorth", version, about)]
struct Cli {
    /// TOML config file overriding the default numeric parameters.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Seed for corpus generation (overrides the config file).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Supremum norm of an expression along a curve.
    Norm {
        expr: String,
        #[arg(long)]
        curve: String,
    },
    /// Clusters of curve parameters where |f| attains its norm.
    NormingSet {
        expr: String,
        #[arg(long)]
        curve: String,
        /// Relative norming tolerance (default from config).
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Is |f| constant along the whole curve?
    Jgamma {
        expr: String,
        #[arg(long)]
        curve: String,
        /// Relative spread tolerance (default from config).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Smoothness and extreme-point classification.
    Classify {
        expr: String,
        #[arg(long)]
        curve: String,
    },
    /// Decide whether f is Birkhoff-James orthogonal to g.
    Ortho {
        f: String,
        g: String,
        #[arg(long)]
        curve: String,
        #[arg(long, value_enum, default_value = "minimize")]
        method: Method,
    },
    /// Decide whether `u,v` pairs form a covering family.
    Covering {
        /// Pairs as `u,v` with complex entries, e.g. "1,1" "1,-1".
        pairs: Vec<String>,
    },
    /// Count zeros enclosed by a curve via the argument principle.
    Zeros {
        expr: String,
        #[arg(long)]
        curve: String,
        /// Grid size for argument tracking (default quad_n from config).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Verify the zero count of a polynomial at its bounding radius.
    Fta {
        poly: String,
        #[arg(long, default_value_t = 1.1)]
        slack: f64,
    },
    /// Derivative scenario: norm hypothesis on an outer curve forces
    /// non-orthogonal n-th derivatives on an inner curve.
    DerivScenario {
        f: String,
        g: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        outer: String,
        #[arg(long)]
        inner: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        lambda0: String,
        #[arg(long)]
        r: f64,
    },
    /// CSV of ||f + lambda*g|| over a lambda box, for external plotting.
    Landscape {
        f: String,
        g: String,
        #[arg(long)]
        curve: String,
        /// Box as `re_lo,re_hi,im_lo,im_hi`.
        #[arg(long = "box", default_value = "-1,1,-1,1", allow_hyphen_values = true)]
        bbox: String,
        #[arg(long, default_value_t = 11)]
        resolution: usize,
    },
    /// Run the built-in theorem verification suite.
    VerifyPaper {
        /// Run a single named block instead of all of them.
        #[arg(long)]
        only: Option<String>,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Syntax { .. }
        | Error::InvalidBlaschke { .. }
        | Error::ZeroPolynomial
        | Error::DegreeTooSmall { .. }
        | Error::InvalidConfig(_) => 2,
        Error::PoleProximity { .. }
        | Error::ZeroFunction
        | Error::ZeroOnCurve { .. }
        | Error::GeometryViolation(_)
        | Error::EmptyNormingSet => 3,
        Error::NonConvergent { .. } => 4,
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig, Error> {
    let mut cfg = match &cli.config {
        None => RunConfig::default(),
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| {
                Error::InvalidConfig(format!("cannot read {}: {e}", path.display()))
            })?;
            toml::from_str(&text)
                .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))?
        }
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit(cli: &Cli, text: &str) -> Result<(), Error> {
    match &cli.out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => fs::write(path, text).map_err(|e| {
            Error::InvalidConfig(format!("cannot write {}: {e}", path.display()))
        }),
    }
}

fn emit_report(cli: &Cli, report: &Report) -> Result<(), Error> {
    emit(cli, &report.to_text())
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    let mut cfg = load_config(cli)?;
    match &cli.command {
        Command::Norm { expr, curve } => {
            emit_report(cli, &commands::cmd_norm(expr, curve, &cfg)?)?;
        }
        Command::NormingSet { expr, curve, eps } => {
            if let Some(eps) = eps {
                cfg.norming_eps = *eps;
                cfg.validate()?;
            }
            emit_report(cli, &commands::cmd_norming_set(expr, curve, &cfg)?)?;
        }
        Command::Jgamma { expr, curve, tol } => {
            if let Some(tol) = tol {
                cfg.jgamma_tol = *tol;
                cfg.validate()?;
            }
            emit_report(cli, &commands::cmd_jgamma(expr, curve, &cfg)?)?;
        }
        Command::Classify { expr, curve } => {
            emit_report(cli, &commands::cmd_classify(expr, curve, &cfg)?)?;
        }
        Command::Ortho {
            f,
            g,
            curve,
            method,
        } => {
            emit_report(cli, &commands::cmd_ortho(f, g, curve, *method, &cfg)?)?;
        }
        Command::Covering { pairs } => {
            emit_report(cli, &commands::cmd_covering(pairs, &cfg)?)?;
        }
        Command::Zeros { expr, curve, n } => {
            emit_report(cli, &commands::cmd_zeros(expr, curve, *n, &cfg)?)?;
        }
        Command::Fta { poly, slack } => {
            emit_report(cli, &commands::cmd_fta(poly, *slack, &cfg)?)?;
        }
        Command::DerivScenario {
            f,
            g,
            n,
            outer,
            inner,
            lambda0,
            r,
        } => {
            emit_report(
                cli,
                &commands::cmd_deriv_scenario(f, g, *n, outer, inner, lambda0, *r, &cfg)?,
            )?;
        }
        Command::Landscape {
            f,
            g,
            curve,
            bbox,
            resolution,
        } => {
            let csv = commands::cmd_landscape(f, g, curve, bbox, *resolution, &cfg)?;
            emit(cli, &csv)?;
        }
        Command::VerifyPaper { only } => {
            let reports = verify::verify_paper(&cfg, only.as_deref())?;
            let table = verify::render_table(&reports);
            emit(cli, &table)?;
            if reports.iter().any(|r| !r.passed()) {
                return Ok(ExitCode::from(5));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // No panic may escape to the shell; an internal panic reports as a
    // numeric failure (exit code 4).
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run(&cli))) {
        Ok(Ok(code)) => code,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
        Err(_) => {
            eprintln!("error: internal failure");
            ExitCode::from(4)
        }
    }
}
