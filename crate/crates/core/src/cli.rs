//! The `clockblock` command line: `analyze`, `simulate` and `factor`.
//!
//! Exit codes: 0 on success, 1 on usage or input errors, 2 when `factor`
//! is refused because `q ∤ m`, 3 when a factor verification fails.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::ca::{Symbol, TorusConfig};
use crate::clock::{mod_reduction, verify_equivariance, CheckMode, EquivarianceReport};
use crate::cycles::CycleReport;
use crate::error::Error;
use crate::obstruction::{
    constant_periodic_point, g_of, smallest_prime_not_dividing, torus_reports,
    verdict_from_reports, ConstantPeriodicPoint, Outcome, Provenance, SkippedShape, TorusReport,
    Verdict, DEFAULT_CAP,
};
use crate::rules::{build, parse_rule_spec};

/// Environment variable overriding the default state budget.
pub const CAP_ENV: &str = "CLOCKBLOCK_CAP";

/// Primes checked by `analyze` when `--q` is omitted.
pub const DEFAULT_Q: [u64; 6] = [2, 3, 5, 7, 11, 13];

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_REFUSED: i32 = 2;
pub const EXIT_FAILED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "clockblock",
    version,
    about = "Divisibility obstructions to clock weak factors of cellular automata"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute φ_F, g_F, torus period gcds and clock verdicts for a rule.
    Analyze {
        /// eca:<n> | life | clock:q=<q>,k=<k> | file:<path>
        spec: String,
        /// Comma-separated clock moduli to test (default: primes up to 13).
        #[arg(long = "q")]
        q: Option<String>,
        /// Torus shapes, e.g. `1;2;3` or `2,2;3,3`.
        #[arg(long)]
        shapes: Option<String>,
        /// State budget per torus shape.
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print an orbit of a torus configuration.
    Simulate {
        spec: String,
        #[arg(long)]
        shape: String,
        /// Comma-separated cells in row-major order.
        #[arg(long)]
        init: String,
        #[arg(long)]
        steps: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Build the residue reduction C_m -> C_q and verify it.
    Factor {
        #[arg(long)]
        m: u32,
        #[arg(long = "q")]
        q: u32,
        /// Shape for the configuration-level check.
        #[arg(long, default_value = "2")]
        shape: String,
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Captured result of one invocation.
#[derive(Debug, Default)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: impl std::fmt::Display) -> Self {
        Output {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub spec: String,
    pub alphabet_size: u32,
    pub dimension: usize,
    pub neighborhood_size: usize,
    pub phi: Vec<Symbol>,
    pub alphabet: CycleReport,
    pub constant_periodic_point: ConstantPeriodicPoint,
    pub cap: u64,
    pub tori: Vec<TorusReport>,
    pub skipped_shapes: Vec<SkippedShape>,
    pub verdicts: Vec<Verdict>,
    pub prime_witness: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

#[derive(Debug, Serialize)]
struct SimulationReport {
    spec: String,
    shape: Vec<usize>,
    steps: u64,
    rows: Vec<Vec<Symbol>>,
}

#[derive(Debug, Serialize)]
struct FactorReport {
    m: u32,
    q: u32,
    refused: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<Symbol>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<EquivarianceReport>,
}

pub fn parse_shape(text: &str) -> Result<Vec<usize>, Error> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::parse(t, "shape components must be positive integers"))
        })
        .collect()
}

pub fn parse_shapes(text: &str) -> Result<Vec<Vec<usize>>, Error> {
    if text.trim().is_empty() {
        return Ok(vec![]);
    }
    text.split(';').map(parse_shape).collect()
}

fn parse_q_list(text: &str) -> Result<Vec<u64>, Error> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .ok()
                .filter(|&q| q >= 2)
                .ok_or_else(|| Error::parse(t, "q must be an integer ≥ 2"))
        })
        .collect()
}

pub fn default_shapes(dimension: usize) -> Vec<Vec<usize>> {
    match dimension {
        1 => vec![vec![1], vec![2], vec![3]],
        2 => vec![vec![1, 1], vec![2, 2]],
        d => vec![vec![1; d]],
    }
}

fn resolve_cap(flag: Option<u64>, env: Option<&str>) -> Result<u64, Error> {
    match (flag, env) {
        (Some(c), _) => Ok(c),
        (None, Some(e)) => e
            .trim()
            .parse()
            .map_err(|_| Error::parse(e, format!("{CAP_ENV} must be a non-negative integer"))),
        (None, None) => Ok(DEFAULT_CAP),
    }
}

fn shape_str(shape: &[usize]) -> String {
    let parts: Vec<String> = shape.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

fn join<T: std::fmt::Display>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items
        .into_iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn lengths_str(report: &CycleReport) -> String {
    join(
        report.cycle_lengths.iter().map(|c| {
            if c.count == 1 {
                c.length.to_string()
            } else {
                format!("{}x{}", c.length, c.count)
            }
        }),
        " ",
    )
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Runs the analysis behind `analyze`. `shapes` defaults per dimension;
/// the returned report carries no timing.
pub fn analyze(
    spec_text: &str,
    q_list: &[u64],
    shapes: Option<Vec<Vec<usize>>>,
    cap: u64,
) -> Result<AnalysisReport, Error> {
    let spec = parse_rule_spec(spec_text)?;
    let ca = build(&spec)?;
    let shapes = shapes.unwrap_or_else(|| default_shapes(ca.dimension()));
    let alphabet = g_of(&ca);
    let (tori, skipped) = torus_reports(&ca, &shapes, cap)?;
    let verdicts = q_list
        .iter()
        .map(|&q| verdict_from_reports(q, &alphabet, &tori, &skipped))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AnalysisReport {
        spec: spec.to_string(),
        alphabet_size: ca.alphabet_size(),
        dimension: ca.dimension(),
        neighborhood_size: ca.neighborhood().len(),
        phi: ca.phi_map().as_slice().to_vec(),
        prime_witness: smallest_prime_not_dividing(alphabet.g),
        constant_periodic_point: constant_periodic_point(&ca),
        alphabet,
        cap,
        tori,
        skipped_shapes: skipped,
        verdicts,
        timing: None,
    })
}

/// Human-readable rendering of an analysis report.
pub fn render_analysis(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "rule        {}", r.spec);
    let _ = writeln!(
        out,
        "automaton   |A|={} d={} s={}",
        r.alphabet_size, r.dimension, r.neighborhood_size
    );
    if r.phi.len() <= 32 {
        let _ = writeln!(
            out,
            "phi         {}",
            join(r.phi.iter().enumerate().map(|(a, b)| format!("{a}->{b}")), " ")
        );
    } else {
        let _ = writeln!(out, "phi         ({} entries, see --format json)", r.phi.len());
    }
    let _ = writeln!(
        out,
        "g_F         {}  (cycle lengths {})",
        r.alphabet.g,
        lengths_str(&r.alphabet)
    );
    let _ = writeln!(
        out,
        "constant    symbol {} has least period {}",
        r.constant_periodic_point.symbol, r.constant_periodic_point.period
    );
    for t in &r.tori {
        let _ = writeln!(
            out,
            "torus {:<6}g={}  states={} periodic={} cycles={}  lengths {}",
            shape_str(&t.shape),
            t.report.g,
            t.report.state_count,
            t.report.periodic_state_count,
            t.report.cycle_count,
            lengths_str(&t.report)
        );
    }
    for s in &r.skipped_shapes {
        let _ = writeln!(
            out,
            "torus {:<6}skipped: needs {} states, cap {}",
            shape_str(&s.shape),
            s.required_states,
            r.cap
        );
    }
    let _ = writeln!(out, "prime       {} does not divide g_F", r.prime_witness);
    for v in &r.verdicts {
        match (&v.outcome, &v.certificate) {
            (Outcome::Excluded, Some(c)) => {
                let source = match &c.provenance {
                    Provenance::Alphabet => "g_F".to_string(),
                    Provenance::Torus { shape } => format!("torus {}", shape_str(shape)),
                };
                let _ = writeln!(
                    out,
                    "q={:<9} excluded      {} does not divide {} = {}",
                    v.q, v.q, source, c.divisor
                );
            }
            _ => {
                let _ = writeln!(
                    out,
                    "q={:<9} inconclusive  {} divides {}",
                    v.q, v.q, v.combined_g
                );
            }
        }
    }
    out
}

fn cmd_analyze(
    spec: &str,
    q: Option<&str>,
    shapes: Option<&str>,
    cap: u64,
    format: Format,
) -> Result<Output, Error> {
    let q_list = match q {
        Some(t) => parse_q_list(t)?,
        None => DEFAULT_Q.to_vec(),
    };
    let shapes = shapes.map(parse_shapes).transpose()?;
    let start = Instant::now();
    let mut report = analyze(spec, &q_list, shapes, cap)?;
    report.timing = Some(Timing {
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    });
    Ok(Output::ok(match format {
        Format::Text => render_analysis(&report),
        Format::Json => to_json(&report),
    }))
}

fn cmd_simulate(
    spec_text: &str,
    shape: &str,
    init: &str,
    steps: u64,
    format: Format,
) -> Result<Output, Error> {
    let spec = parse_rule_spec(spec_text)?;
    let ca = build(&spec)?;
    let shape = parse_shape(shape)?;
    let cells = init
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::parse(t, "cells must be non-negative integers"))
                .and_then(|c| ca.check_symbol(c))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut x = TorusConfig::new(shape.clone(), cells)?;
    ca.validate(&x)?;
    let stepper = ca.stepper(&shape)?;
    let mut rows = vec![x.cells().to_vec()];
    let mut next = vec![0; x.len()];
    for _ in 0..steps {
        stepper.step_into(x.cells(), &mut next);
        x = TorusConfig::new(shape.clone(), next.clone())?;
        rows.push(next.clone());
    }
    Ok(Output::ok(match format {
        Format::Text => rows.iter().map(|r| join(r, ",") + "\n").collect(),
        Format::Json => to_json(&SimulationReport {
            spec: spec.to_string(),
            shape,
            steps,
            rows,
        }),
    }))
}

fn render_factor(r: &EquivarianceReport, table: &[Symbol]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "witness     C_{} -> C_{}  a -> a mod {}  table {}",
        r.source_modulus,
        r.target_modulus,
        r.target_modulus,
        join(table, ",")
    );
    let _ = writeln!(out, "surjective  {}", if r.surjective { "yes" } else { "no" });
    let s = &r.symbol_check;
    if s.passed {
        let _ = writeln!(out, "symbols     pass ({} residues)", r.source_modulus);
    } else {
        let _ = writeln!(out, "symbols     FAIL at a = {}", join(&s.counterexamples, ","));
    }
    let c = &r.configuration_check;
    let mode = match c.mode {
        CheckMode::Exhaustive => "exhaustive",
        CheckMode::Sampled => "sampled",
    };
    match &c.counterexample {
        None => {
            let _ = writeln!(
                out,
                "configs     pass ({mode}, {} configurations of shape {})",
                c.states_checked,
                shape_str(&c.shape)
            );
        }
        Some(x) => {
            let _ = writeln!(out, "configs     FAIL at x = {}", join(x, ","));
        }
    }
    let _ = writeln!(out, "result      {}", if r.passed { "pass" } else { "FAIL" });
    out
}

fn cmd_factor(m: u32, q: u32, shape: &str, cap: u64, format: Format) -> Result<Output, Error> {
    let shape = parse_shape(shape)?;
    let witness = match mod_reduction(m, q) {
        Ok(w) => w,
        Err(e @ Error::NotDivisible { .. }) => {
            let reason = e.to_string();
            let stdout = match format {
                Format::Text => String::new(),
                Format::Json => to_json(&FactorReport {
                    m,
                    q,
                    refused: true,
                    reason: Some(reason.clone()),
                    witness: None,
                    verification: None,
                }),
            };
            return Ok(Output {
                code: EXIT_REFUSED,
                stdout,
                stderr: format!("refused: {reason}\n"),
            });
        }
        Err(e) => return Err(e),
    };
    let report = verify_equivariance(&witness, &shape, cap)?;
    let code = if report.passed { EXIT_OK } else { EXIT_FAILED };
    let stdout = match format {
        Format::Text => render_factor(&report, witness.table()),
        Format::Json => to_json(&FactorReport {
            m,
            q,
            refused: false,
            reason: None,
            witness: Some(witness.table().to_vec()),
            verification: Some(report),
        }),
    };
    Ok(Output {
        code,
        stdout,
        stderr: String::new(),
    })
}

/// Runs one invocation; `env_cap` is the value of [`CAP_ENV`], if set.
pub fn run_with_env<I, T>(args: I, env_cap: Option<&str>) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output::ok(text)
            };
        }
    };
    let result = match cli.command {
        Command::Analyze {
            spec,
            q,
            shapes,
            cap,
            format,
        } => resolve_cap(cap, env_cap).and_then(|cap| {
            cmd_analyze(&spec, q.as_deref(), shapes.as_deref(), cap, format)
        }),
        Command::Simulate {
            spec,
            shape,
            init,
            steps,
            format,
        } => cmd_simulate(&spec, &shape, &init, steps, format),
        Command::Factor {
            m,
            q,
            shape,
            cap,
            format,
        } => resolve_cap(cap, env_cap).and_then(|cap| cmd_factor(m, q, &shape, cap, format)),
    };
    result.unwrap_or_else(Output::usage)
}

/// Runs one invocation reading [`CAP_ENV`] from the process environment.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env = std::env::var(CAP_ENV).ok();
    run_with_env(args, env.as_deref())
}
