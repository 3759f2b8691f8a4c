//! `meixner`: evaluate, tabulate, scan and verify Meixner polynomial asymptotics.

mod commands;
mod config;
mod row;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{FaultArg, Method, Output};
use config::{exit, CliError, Format, Overrides, RunConfig};

#[derive(Parser, Debug)]
#[command(
    name = "meixner",
    version,
    about = "Exact and asymptotic Meixner polynomial values"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Common {
    /// Parameter c in (0, 1), as a decimal.
    #[arg(long, global = true, allow_hyphen_values = true)]
    c: Option<String>,
    /// Parameter β in [1, 2), as a decimal.
    #[arg(long, global = true, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Degree; repeat to give several (verify uses all of them).
    #[arg(long, global = true)]
    n: Vec<u32>,
    /// Radius of the disks about 0, a and b.
    #[arg(long, global = true, allow_hyphen_values = true)]
    epsilon: Option<String>,
    /// Half-height of the band and strip.
    #[arg(long, global = true, allow_hyphen_values = true)]
    delta: Option<String>,
    #[arg(long = "quad-tol", global = true)]
    quad_tol: Option<String>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// key=value file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate π_n(nz − β/2) at one point.
    Eval {
        /// `RE` or `RE,IM`.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, value_enum, default_value = "both")]
        method: Method,
    },
    /// The ten reference points.
    Table,
    /// Equally spaced real points.
    Scan {
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long, default_value_t = 16)]
        points: usize,
    },
    /// Identity and consistency checks.
    Verify {
        /// Break one input on purpose to see a suite fail.
        #[arg(long, value_enum)]
        fault: Option<FaultArg>,
    },
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let c = cli.common;
    let flags = Overrides {
        c: c.c,
        beta: c.beta,
        n: c.n,
        epsilon: c.epsilon,
        delta: c.delta,
        quad_tol: c.quad_tol,
        format: c.format,
    };
    let cfg = RunConfig::resolve(&flags, c.config.as_deref())?;
    let out = match cli.cmd {
        Cmd::Eval { z, method } => commands::cmd_eval(&cfg, &z, method)?,
        Cmd::Table => commands::cmd_table(&cfg)?,
        Cmd::Scan { from, to, points } => commands::cmd_scan(&cfg, &from, &to, points)?,
        Cmd::Verify { fault } => commands::cmd_verify(&cfg, fault)?,
    };
    match &c.out {
        Some(path) => std::fs::write(path, &out.text)
            .map_err(|e| CliError::io(format!("{}: {e}", path.display())))?,
        None => print!("{}", out.text),
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                exit::PARSE
            } else {
                exit::OK
            };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(out) => ExitCode::from(out.code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
