//! Argument parsing and validation into a [`RunConfig`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eulerian::algebra::{Field, FieldSpec, RatFrac};
use eulerian::criterion::CheckOptions;

use crate::{CliError, CliResult};

pub const DEFAULT_PREC: usize = 16;
pub const DEFAULT_RMAX: usize = 3;

#[derive(Parser, Debug)]
#[command(name = "eulerian", version, about = "Eulerian and zeta-like multizeta values over F_q[θ]")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default)]
pub struct Common {
    /// Field order, a prime power.
    #[arg(long, global = true)]
    pub q: Option<u32>,
    /// Characteristic, used with --ext-e instead of --q.
    #[arg(long, global = true)]
    pub char_p: Option<u32>,
    /// Extension degree over F_p (default 1).
    #[arg(long, global = true)]
    pub ext_e: Option<u32>,
    /// Monic irreducible modulus over F_p, coefficients from low to high degree,
    /// e.g. "2,2,1" for x^2 + 2x + 2.
    #[arg(long, global = true)]
    pub modulus: Option<String>,
    /// Series precision for oracle commands.
    #[arg(long, global = true)]
    pub prec: Option<usize>,
    /// Worker threads for sweeps (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Result store path (NDJSON; sweeps also write a .csv next to it).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Skip the divisibility and suffix prechecks.
    #[arg(long, global = true)]
    pub no_precheck: bool,
    /// Test s itself instead of its primitive reduction.
    #[arg(long, global = true)]
    pub no_primitive_reduction: bool,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether ζ_A(s) is Eulerian. Exit 10 if so, 11 if not.
    Check {
        #[arg(long)]
        tuple: String,
    },
    /// Check every tuple in a weight/depth range.
    Sweep {
        #[arg(long)]
        wmax: u32,
        #[arg(long, default_value_t = DEFAULT_RMAX)]
        rmax: usize,
        #[arg(long, default_value_t = 1)]
        min_depth: usize,
        #[arg(long)]
        primitive_only: bool,
        /// Keep tuples with entries not divisible by q−1.
        #[arg(long)]
        all_entries: bool,
        /// Report tuples whose first suffix is non-Eulerian while they are.
        #[arg(long)]
        suffix_check: bool,
        /// Compare against the conjectured families.
        #[arg(long)]
        compare: bool,
    },
    /// Print ρ_t and the special point v_s.
    Tmodule {
        #[arg(long)]
        tuple: String,
    },
    /// Search for a witness that ζ_A(s)/π̃^w lies in k.
    Zetalike {
        #[arg(long)]
        tuple: String,
        /// Degree bound for the witness search (default q^{⌈log_q w⌉+1}).
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Numeric cross-checks in F_q((1/θ)).
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
    },
    /// List the conjectured primitive Eulerian tuples.
    Families {
        #[arg(long)]
        wmax: u32,
        #[arg(long, default_value_t = DEFAULT_RMAX)]
        rmax: usize,
        /// Same as --format json.
        #[arg(long)]
        json: bool,
    },
    /// Anderson–Thakur polynomial H_n.
    AtPoly {
        #[arg(long)]
        n: usize,
    },
    /// Bernoulli–Carlitz number BC(n).
    Bc {
        #[arg(long)]
        n: usize,
    },
    /// Eulerian test for a Carlitz multiple polylogarithm at algebraic points.
    Cmpl {
        #[arg(long)]
        tuple: String,
        /// One point coordinate per entry of s, e.g. --u 1 --u "θ/(θ+1)".
        #[arg(long = "u", required = true)]
        u: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum OracleAction {
    /// Expansion of ζ_A(s).
    Zeta {
        #[arg(long)]
        tuple: String,
    },
    /// Compare the algebraic verdict with a reconstructed ratio.
    Verify {
        #[arg(long)]
        tuple: String,
    },
    /// Run the identity corpus.
    Identities,
}

/// A validated command.
#[derive(Debug, Clone, PartialEq)]
pub enum Task {
    Check(Vec<u32>),
    Sweep(SweepSpec),
    Tmodule(Vec<u32>),
    Zetalike { tuple: Vec<u32>, bound: Option<usize> },
    OracleZeta(Vec<u32>),
    OracleVerify(Vec<u32>),
    OracleIdentities,
    Families { wmax: u32, rmax: usize },
    AtPoly(usize),
    Bc(usize),
    Cmpl { tuple: Vec<u32>, u: Vec<RatFrac> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepSpec {
    pub wmax: u32,
    pub rmax: usize,
    pub min_depth: usize,
    pub primitive_only: bool,
    pub all_entries: bool,
    pub suffix_check: bool,
    pub compare: bool,
}

/// Everything a command needs, checked up front.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub field: Field,
    pub task: Task,
    pub prec: usize,
    pub jobs: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub options: CheckOptions,
}

pub fn parse_tuple(s: &str) -> CliResult<Vec<u32>> {
    let bad = || CliError::Config(format!("bad tuple '{s}': expected positive integers like 2,4"));
    let t = s
        .trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(|x| x.trim().parse::<u32>().ok().filter(|&v| v > 0))
        .collect::<Option<Vec<u32>>>()
        .ok_or_else(bad)?;
    if t.is_empty() {
        return Err(bad());
    }
    Ok(t)
}

fn parse_modulus(s: &str) -> CliResult<Vec<u32>> {
    s.split(',')
        .map(|x| x.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Config(format!("bad modulus '{s}': expected coefficients like 2,2,1")))
}

pub fn build_field(c: &Common) -> CliResult<Field> {
    let field = match (c.q, c.char_p) {
        (Some(_), Some(_)) => return Err(CliError::Config("give either --q or --char-p, not both".into())),
        (None, None) => return Err(CliError::Config("a field is required: --q Q or --char-p P [--ext-e E]".into())),
        (Some(q), None) => {
            if c.ext_e.is_some() {
                return Err(CliError::Config("--ext-e needs --char-p".into()));
            }
            let f = FieldSpec::of_order(q)?;
            match &c.modulus {
                Some(m) => FieldSpec::new(f.p(), f.e(), Some(parse_modulus(m)?))?,
                None => f,
            }
        }
        (None, Some(p)) => {
            let m = c.modulus.as_deref().map(parse_modulus).transpose()?;
            FieldSpec::new(p, c.ext_e.unwrap_or(1), m)?
        }
    };
    Ok(field)
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> CliResult<Self> {
        let c = &cli.common;
        let field = build_field(c)?;
        let mut format = c.format;
        let task = match cli.command {
            Command::Check { tuple } => Task::Check(parse_tuple(&tuple)?),
            Command::Sweep {
                wmax,
                rmax,
                min_depth,
                primitive_only,
                all_entries,
                suffix_check,
                compare,
            } => {
                if rmax == 0 {
                    return Err(CliError::Config("--rmax must be at least 1".into()));
                }
                if suffix_check && primitive_only {
                    return Err(CliError::Config("--suffix-check needs non-primitive suffixes; drop --primitive-only".into()));
                }
                if compare && all_entries {
                    return Err(CliError::Config("--compare covers the divisible range only; drop --all-entries".into()));
                }
                if compare && min_depth > 2 {
                    return Err(CliError::Config("--compare needs every depth from 2".into()));
                }
                Task::Sweep(SweepSpec {
                    wmax,
                    rmax,
                    min_depth,
                    primitive_only,
                    all_entries,
                    suffix_check,
                    compare,
                })
            }
            Command::Tmodule { tuple } => Task::Tmodule(parse_tuple(&tuple)?),
            Command::Zetalike { tuple, bound } => Task::Zetalike {
                tuple: parse_tuple(&tuple)?,
                bound,
            },
            Command::Oracle { action } => match action {
                OracleAction::Zeta { tuple } => Task::OracleZeta(parse_tuple(&tuple)?),
                OracleAction::Verify { tuple } => Task::OracleVerify(parse_tuple(&tuple)?),
                OracleAction::Identities => Task::OracleIdentities,
            },
            Command::Families { wmax, rmax, json } => {
                if json {
                    format = Format::Json;
                }
                Task::Families { wmax, rmax }
            }
            Command::AtPoly { n } => Task::AtPoly(n),
            Command::Bc { n } => Task::Bc(n),
            Command::Cmpl { tuple, u } => {
                let tuple = parse_tuple(&tuple)?;
                if u.len() != tuple.len() {
                    return Err(CliError::Config(format!(
                        "need one --u per entry: {} given for depth {}",
                        u.len(),
                        tuple.len()
                    )));
                }
                let u = u.iter().map(|x| RatFrac::parse(&field, x)).collect::<Result<_, _>>()?;
                Task::Cmpl { tuple, u }
            }
        };
        if format == Format::Csv && matches!(task, Task::Tmodule(_) | Task::OracleZeta(_) | Task::AtPoly(_) | Task::Bc(_)) {
            return Err(CliError::Config("csv output is for verdict records".into()));
        }
        let prec = c.prec.unwrap_or(DEFAULT_PREC);
        if prec < 2 {
            return Err(CliError::Config("--prec must be at least 2".into()));
        }
        Ok(RunConfig {
            field,
            task,
            prec,
            jobs: c.jobs,
            out: c.out.clone(),
            format,
            options: CheckOptions {
                precheck: !c.no_precheck,
                primitive_reduction: !c.no_primitive_reduction,
            },
        })
    }
}
