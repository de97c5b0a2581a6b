//! `cn-lattice`: command-line front end for the exact lattice transform.
//!
//! Exit codes: 0 on success, 1 when a verification report fails, 2 on
//! malformed input.

mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cn_lattice::prelude::*;
use cn_lattice::verify::mc::mc_hedge;

use crate::input::{load_kernel, load_kernel_spec, load_payoff, parse_site};
use crate::output::{Format, Renderer};

#[derive(Parser, Debug)]
#[command(name = "cn-lattice", version, about = "Exact discrete barrier transform on Z^d")]
struct Cli {
    /// Kernel file (JSON).
    #[arg(long, global = true)]
    kernel: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Render rationals as decimals. Display only.
    #[arg(long, global = true)]
    float: bool,

    /// Significant digits used by --float.
    #[arg(long, global = true, default_value_t = 15)]
    digits: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate the kernel file.
    Validate,
    /// Print the support set S(t, x).
    Support(Anchor),
    /// Exact law of Z_t from x0, optionally killed at the boundary.
    Evolve {
        #[arg(long, allow_hyphen_values = true)]
        x0: String,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        killed: bool,
    },
    /// Value of Nf at a target below the boundary.
    Transform {
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long)]
        payoff: PathBuf,
    },
    /// Coefficient table c_{t,x}.
    Coeffs {
        #[command(flatten)]
        anchor: Anchor,
        #[arg(long, value_enum, default_value_t = Method::Solve)]
        method: Method,
        /// Allow the permutation sum beyond the size guard.
        #[arg(long)]
        force: bool,
    },
    /// Dump W+ or W- as dense rational rows.
    System {
        #[command(flatten)]
        anchor: Anchor,
        #[arg(long, value_enum, default_value_t = SignArg::Plus)]
        sign: SignArg,
    },
    /// Run a seeded verification suite; exits 1 if any report fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        instances: u64,
    },
    /// Monte Carlo estimates of the barrier claim and its static hedge.
    Mc {
        #[arg(long, allow_hyphen_values = true)]
        x0: String,
        #[arg(long = "T", alias = "horizon")]
        horizon: u32,
        #[arg(long)]
        payoff: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        paths: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct Anchor {
    #[arg(long)]
    t: u32,
    #[arg(long, allow_hyphen_values = true)]
    x: String,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Method {
    Solve,
    Cramer,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SignArg {
    Plus,
    Minus,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0} verification report(s) failed")]
    Failed(usize),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Input(e.to_string())
    }
}

fn kernel_path(cli: &Cli) -> Result<&PathBuf, CliError> {
    cli.kernel
        .as_ref()
        .ok_or_else(|| CliError::Input("--kernel is required".into()))
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let out = Renderer::new(cli.format, cli.float, cli.digits);
    if let Command::Validate = cli.command {
        let spec = load_kernel_spec(kernel_path(cli)?)?;
        let report = validate_kernel(&spec);
        out.validation(&report);
        return if report.ok {
            Ok(())
        } else {
            Err(CliError::Input(format!("invalid kernel: {report}")))
        };
    }

    let kernel = load_kernel(kernel_path(cli)?)?;
    let d = kernel.dimension();
    match &cli.command {
        Command::Validate => unreachable!("handled above"),
        Command::Support(a) => {
            let x = parse_site(&a.x, d)?;
            out.support(&support_set(a.t, &x)?);
        }
        Command::Evolve { x0, t, killed } => {
            let x0 = parse_site(x0, d)?;
            if *killed {
                out.killed(&evolve_killed(&kernel, &x0, *t)?);
            } else {
                out.measure(&evolve(&kernel, &x0, *t)?);
            }
        }
        Command::Transform { target, payoff } => {
            let target = parse_site(target, d)?;
            let f = load_payoff(payoff, d)?;
            out.value(&transform_at(&kernel, &target, &f)?);
        }
        Command::Coeffs {
            anchor,
            method,
            force,
        } => {
            let x = parse_site(&anchor.x, d)?;
            let table = match method {
                Method::Solve => coefficients_via_solve(&kernel, anchor.t, &x)?,
                Method::Cramer => cramer_coefficients(&kernel, anchor.t, &x, *force)?,
            };
            out.coefficients(&table);
        }
        Command::System { anchor, sign } => {
            let x = parse_site(&anchor.x, d)?;
            let sign = match sign {
                SignArg::Plus => Sign::Plus,
                SignArg::Minus => Sign::Minus,
            };
            out.system(&build_system(&kernel, anchor.t, &x, sign)?);
        }
        Command::Verify {
            suite,
            seed,
            instances,
        } => {
            let suite: Suite = suite.parse()?;
            let reports = run_suite(&kernel, suite, *seed, *instances)?;
            out.reports(&reports);
            let failed = reports.iter().filter(|r| !r.pass).count();
            eprintln!("{} reports, {failed} failed", reports.len());
            if failed > 0 {
                return Err(CliError::Failed(failed));
            }
        }
        Command::Mc {
            x0,
            horizon,
            payoff,
            paths,
            seed,
        } => {
            let x0 = parse_site(x0, d)?;
            let f = load_payoff(payoff, d)?;
            out.mc(&mc_hedge(&kernel, &x0, *horizon, &f, *paths, *seed)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cn-lattice: {e}");
            match e {
                CliError::Failed(_) => ExitCode::from(1),
                CliError::Input(_) => ExitCode::from(2),
            }
        }
    }
}
