//! Run configuration: flags over a key=value config file over defaults.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use clap::ValueEnum;
use meixner_core::asymptotics::Engine;
use meixner_core::exact::MeixnerParams;
use meixner_core::Params;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const PARSE: i32 = 2;
    pub const EVAL: i32 = 3;
    pub const IO: i32 = 4;
    pub const CHECK: i32 = 5;
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub msg: String,
}

impl CliError {
    pub fn parse(msg: impl Into<String>) -> Self {
        Self {
            code: exit::PARSE,
            msg: msg.into(),
        }
    }

    pub fn eval(msg: impl Into<String>) -> Self {
        Self {
            code: exit::EVAL,
            msg: msg.into(),
        }
    }

    pub fn io(msg: impl Into<String>) -> Self {
        Self {
            code: exit::IO,
            msg: msg.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.msg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Format::from_str_ci(s).ok_or_else(|| CliError::parse(format!("unknown format {s:?}")))
    }
}

impl Format {
    fn from_str_ci(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "text" => Some(Format::Text),
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

/// Values given on the command line; `None` means not given.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub c: Option<String>,
    pub beta: Option<String>,
    pub n: Vec<u32>,
    pub epsilon: Option<String>,
    pub delta: Option<String>,
    pub quad_tol: Option<String>,
    pub format: Option<Format>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub c: String,
    pub beta: String,
    /// First entry is the working degree; more than one is used by `verify`.
    pub ns: Vec<u32>,
    pub epsilon: Option<f64>,
    pub delta: Option<f64>,
    pub quad_tol: f64,
    pub format: Format,
    pub exact: MeixnerParams,
}

pub const DEFAULT_C: &str = "0.5";
pub const DEFAULT_BETA: &str = "1.5";
pub const DEFAULT_N: u32 = 100;
pub const DEFAULT_QUAD_TOL: f64 = 1e-12;

fn parse_f64(key: &str, v: &str) -> Result<f64, CliError> {
    v.trim()
        .parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| CliError::parse(format!("{key}: cannot parse {v:?} as a number")))
}

fn parse_ns(v: &str) -> Result<Vec<u32>, CliError> {
    v.split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| CliError::parse(format!("n: cannot parse {s:?}")))
        })
        .collect()
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config_file(text: &str) -> Result<Overrides, CliError> {
    let mut o = Overrides::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::parse(format!("config line {}: expected key=value", i + 1)))?;
        let v = v.trim().to_string();
        match k.trim().replace('-', "_").as_str() {
            "c" => o.c = Some(v),
            "beta" => o.beta = Some(v),
            "n" => o.n = parse_ns(&v)?,
            "epsilon" | "eps" => o.epsilon = Some(v),
            "delta" => o.delta = Some(v),
            "quad_tol" => o.quad_tol = Some(v),
            "format" => o.format = Some(v.parse()?),
            other => {
                return Err(CliError::parse(format!(
                    "config line {}: unknown key {other:?}",
                    i + 1
                )))
            }
        }
    }
    Ok(o)
}

impl RunConfig {
    /// Flags first, then the config file, then defaults.
    pub fn resolve(flags: &Overrides, file: Option<&Path>) -> Result<Self, CliError> {
        let from_file = match file {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::io(format!("{}: {e}", p.display())))?;
                parse_config_file(&text)?
            }
            None => Overrides::default(),
        };
        let pick = |a: &Option<String>, b: &Option<String>| a.clone().or_else(|| b.clone());
        let c = pick(&flags.c, &from_file.c).unwrap_or_else(|| DEFAULT_C.into());
        let beta = pick(&flags.beta, &from_file.beta).unwrap_or_else(|| DEFAULT_BETA.into());
        let ns = if !flags.n.is_empty() {
            flags.n.clone()
        } else if !from_file.n.is_empty() {
            from_file.n.clone()
        } else {
            vec![DEFAULT_N]
        };
        let epsilon = pick(&flags.epsilon, &from_file.epsilon)
            .map(|v| parse_f64("epsilon", &v))
            .transpose()?;
        let delta = pick(&flags.delta, &from_file.delta)
            .map(|v| parse_f64("delta", &v))
            .transpose()?;
        let quad_tol = pick(&flags.quad_tol, &from_file.quad_tol)
            .map(|v| parse_f64("quad-tol", &v))
            .transpose()?
            .unwrap_or(DEFAULT_QUAD_TOL);
        if quad_tol <= 0.0 {
            return Err(CliError::parse("quad-tol must be positive"));
        }
        let format = flags.format.or(from_file.format).unwrap_or(Format::Text);
        let exact =
            MeixnerParams::parse(&c, &beta, ns[0]).map_err(|e| CliError::parse(e.to_string()))?;
        Ok(Self {
            c,
            beta,
            ns,
            epsilon,
            delta,
            quad_tol,
            format,
            exact,
        })
    }

    pub fn n(&self) -> u32 {
        self.ns[0]
    }

    pub fn params(&self) -> Params {
        Params::from(&self.exact)
    }

    /// The asymptotic engine; missing ε or δ take their defaults.
    pub fn engine(&self) -> Result<Engine, CliError> {
        let p = self.params();
        let base = Engine::new(p).map_err(|e| CliError::parse(e.to_string()))?;
        let eps = self.epsilon.unwrap_or(base.eps);
        let delta = self.delta.unwrap_or(base.delta);
        Engine::with_regions(p, eps, delta)
            .and_then(|e| e.with_quad_tol(self.quad_tol))
            .map_err(|e| CliError::parse(e.to_string()))
    }

    /// `#`-prefixed description of the run, for data files.
    pub fn metadata(&self, engine: Option<&Engine>) -> Vec<String> {
        let mut v = vec![format!("# c={} beta={} n={}", self.c, self.beta, self.n())];
        if let Some(e) = engine {
            v.push(format!(
                "# epsilon={:e} delta={:e} quad_tol={:e}",
                e.eps, e.delta, self.quad_tol
            ));
        }
        v
    }
}
