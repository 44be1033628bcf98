//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when a solve ran but did not recover the
//! hidden string, 2 on usage, validation or I/O errors. Diagnostics go to
//! stderr; data goes to stdout or `--out`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::anneal::ScheduleOverrides;
use crate::builders::{build_bv_qubo, build_simon_literal_qubo_scaled};
use crate::config::{HiddenSpec, JPolicyKind, OutputFormat, RunConfig};
use crate::model::{exhaustive_solve, QuboModel, VarLabel, DEFAULT_ENUMERATION_CAP};
use crate::oracles::{BvOracle, Signal, SimonOracle};
use crate::protocol::{bench_calls, solve_bv, solve_simon, BenchConfig, Problem, SimonMode, SolverKind};
use crate::qubo_format::{export_qubo, import_qubo};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SOLVE_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "aqc-hidden", version, about = "QUBO models and annealing solvers for hidden-string oracle problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit the Hamiltonian for a problem instance.
    Build(Flags),
    /// Run the recovery protocol and emit a JSON report.
    Solve(Flags),
    /// Run many fresh instances per width and emit a statistics table.
    Bench(BenchFlags),
    /// Enumerate every assignment of a model and emit the sorted spectrum.
    Spectrum(InputFlags),
    /// Convert a JSON model to the .qubo text format.
    Export(InputFlags),
    /// Convert a .qubo document to a JSON model.
    Import(InputFlags),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProblemArg {
    Bv,
    Simon,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Literal,
    Coupled,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum JPolicyArg {
    Fixed,
    Cycle,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SolverArg {
    Exhaustive,
    Anneal,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SignalArg {
    Indicator,
    Hamming,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Qubo,
}

#[derive(Debug, Args)]
struct Flags {
    /// JSON run configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    problem: Option<ProblemArg>,
    #[arg(long)]
    n: Option<usize>,
    /// Hidden string as an integer (`170`, `0b1011`) or `random`.
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Constrained bit index, 1-based.
    #[arg(long)]
    j: Option<usize>,
    #[arg(long = "j-policy", value_enum)]
    j_policy: Option<JPolicyArg>,
    #[arg(long, value_enum)]
    solver: Option<SolverArg>,
    #[arg(long, value_enum)]
    signal: Option<SignalArg>,
    /// Penalty weight as a rational literal.
    #[arg(long = "penalty-scale")]
    penalty_scale: Option<String>,
    /// Maximum annealing runs for Simon.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    sweeps: Option<usize>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    t0: Option<f64>,
    #[arg(long)]
    t1: Option<f64>,
    #[arg(long)]
    probes: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Leave the hidden string out of reports.
    #[arg(long)]
    blind: bool,
}

#[derive(Debug, Args)]
struct BenchFlags {
    #[command(flatten)]
    flags: Flags,
    /// Comma-separated widths; defaults to `--n`.
    #[arg(long = "n-values", value_delimiter = ',')]
    n_values: Option<Vec<usize>>,
    #[arg(long)]
    trials: Option<usize>,
}

#[derive(Debug, Args)]
struct InputFlags {
    /// Model file (JSON for `export` and `spectrum`, .qubo for `import`).
    /// Without it, `spectrum` builds the model from the problem flags.
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    flags: Flags,
}

impl Flags {
    fn into_config(self) -> Result<RunConfig> {
        let mut c = match &self.config {
            Some(path) => RunConfig::from_json(&std::fs::read_to_string(path)?)?,
            None => RunConfig::default(),
        };
        if let Some(p) = self.problem {
            c.problem = Some(match p {
                ProblemArg::Bv => Problem::Bv,
                ProblemArg::Simon => Problem::Simon,
            });
        }
        if self.n.is_some() {
            c.n = self.n;
        }
        if let Some(a) = &self.a {
            c.hidden_a = a.parse::<HiddenSpec>()?;
        }
        if let Some(seed) = self.seed {
            c.seed = seed;
        }
        if let Some(m) = self.mode {
            c.mode = match m {
                ModeArg::Literal => SimonMode::Literal,
                ModeArg::Coupled => SimonMode::Coupled,
            };
        }
        if let Some(j) = self.j {
            c.j = j;
        }
        if let Some(p) = self.j_policy {
            c.j_policy = match p {
                JPolicyArg::Fixed => JPolicyKind::Fixed,
                JPolicyArg::Cycle => JPolicyKind::Cycle,
            };
        }
        if let Some(s) = self.solver {
            c.solver = match s {
                SolverArg::Exhaustive => SolverKind::Exhaustive,
                SolverArg::Anneal => SolverKind::Anneal,
            };
        }
        if let Some(s) = self.signal {
            c.signal = match s {
                SignalArg::Indicator => Signal::Indicator,
                SignalArg::Hamming => Signal::Hamming,
            };
        }
        if let Some(p) = self.penalty_scale {
            c.penalty_scale = p;
        }
        if self.budget.is_some() {
            c.budget = self.budget;
        }
        let overrides = ScheduleOverrides {
            sweeps: self.sweeps,
            t_initial: self.t0,
            t_final: self.t1,
            restarts: self.restarts,
        };
        c.schedule = ScheduleOverrides {
            sweeps: overrides.sweeps.or(c.schedule.sweeps),
            t_initial: overrides.t_initial.or(c.schedule.t_initial),
            t_final: overrides.t_final.or(c.schedule.t_final),
            restarts: overrides.restarts.or(c.schedule.restarts),
        };
        if let Some(p) = self.probes {
            c.probes = p;
        }
        if self.out.is_some() {
            c.out = self.out;
        }
        if let Some(f) = self.format {
            c.format = match f {
                FormatArg::Json => OutputFormat::Json,
                FormatArg::Qubo => OutputFormat::Qubo,
            };
        }
        c.blind |= self.blind;
        c.validate()?;
        Ok(c)
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn emit(out: &mut dyn Write, path: Option<&Path>, data: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, data)?,
        None => out.write_all(data.as_bytes())?,
    }
    Ok(())
}

fn render_model(model: &QuboModel, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => to_json(model),
        OutputFormat::Qubo => Ok(export_qubo(model)),
    }
}

/// Model named by the problem flags. BV reads its diagonal through the
/// oracle; Simon yields the literal matrix, which needs no hidden string.
fn build_model(c: &RunConfig) -> Result<QuboModel> {
    let n = c.n()?;
    match c.problem()? {
        Problem::Bv => build_bv_qubo(&BvOracle::new(c.hidden_string(Problem::Bv, n))),
        Problem::Simon => build_simon_literal_qubo_scaled(n, c.j, c.penalty_scale()?),
    }
}

#[derive(Serialize)]
struct SpectrumEntryDoc {
    assignment: String,
    energy: String,
}

#[derive(Serialize)]
struct SpectrumDoc {
    n_vars: usize,
    labels: Vec<VarLabel>,
    ground_energy: String,
    ground_count: usize,
    entries: Vec<SpectrumEntryDoc>,
}

fn read_model(path: &Path) -> Result<QuboModel> {
    let text = std::fs::read_to_string(path)?;
    if text.trim_start().starts_with('{') {
        Ok(serde_json::from_str(&text)?)
    } else {
        import_qubo(&text)
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Build(flags) => {
            let c = flags.into_config()?;
            let model = build_model(&c)?;
            emit(out, c.out.as_deref(), &render_model(&model, c.format)?)?;
            Ok(EXIT_OK)
        }
        Command::Solve(flags) => {
            let c = flags.into_config()?;
            let (problem, n) = (c.problem()?, c.n()?);
            let a = c.hidden_string(problem, n);
            let mut report = match problem {
                Problem::Bv => solve_bv(&BvOracle::new(a.clone()), &c.bv_options(), c.seed)?,
                Problem::Simon => {
                    let oracle = SimonOracle::new(n, &a, c.seed)?;
                    solve_simon(&oracle, &c.simon_options(n)?, c.seed)?
                }
            };
            if !c.blind {
                report.hidden_a = Some(a);
            }
            emit(out, c.out.as_deref(), &to_json(&report)?)?;
            Ok(if report.success { EXIT_OK } else { EXIT_SOLVE_FAILED })
        }
        Command::Bench(b) => {
            let c = b.flags.into_config()?;
            let problem = c.problem()?;
            let n_values = match b.n_values.or(c.n_values.clone()) {
                Some(v) => v,
                None => vec![c.n()?],
            };
            for &n in &n_values {
                RunConfig { n: Some(n), ..c.clone() }.validate()?;
            }
            let trials = b.trials.unwrap_or(c.trials);
            // One pass per width so the default budget tracks n.
            let mut table = None;
            for &n in &n_values {
                let config = BenchConfig {
                    seed: c.seed,
                    bv: c.bv_options(),
                    simon: c.simon_options(n)?,
                };
                let part = bench_calls(problem, &[n], trials, &config)?;
                match &mut table {
                    None => table = Some(part),
                    Some(t) => t.rows.extend(part.rows),
                }
            }
            let table = table.ok_or_else(|| Error::Validation("--n-values is empty".into()))?;
            emit(out, c.out.as_deref(), &to_json(&table)?)?;
            Ok(EXIT_OK)
        }
        Command::Spectrum(i) => {
            let c = i.flags.into_config()?;
            let model = match &i.input {
                Some(path) => read_model(path)?,
                None => build_model(&c)?,
            };
            let spectrum = exhaustive_solve(&model, DEFAULT_ENUMERATION_CAP)?;
            let doc = SpectrumDoc {
                n_vars: model.n_vars(),
                labels: model.labels().to_vec(),
                ground_energy: spectrum.ground_energy().to_string(),
                ground_count: spectrum.ground_count(),
                entries: spectrum
                    .iter()
                    .map(|(s, e)| SpectrumEntryDoc {
                        assignment: s.to_string(),
                        energy: e.to_string(),
                    })
                    .collect(),
            };
            emit(out, c.out.as_deref(), &to_json(&doc)?)?;
            Ok(EXIT_OK)
        }
        Command::Export(i) => {
            let c = i.flags.into_config()?;
            let path = i
                .input
                .ok_or_else(|| Error::Validation("export needs --input <model.json>".into()))?;
            let model = read_model(&path)?;
            emit(out, c.out.as_deref(), &export_qubo(&model))?;
            Ok(EXIT_OK)
        }
        Command::Import(i) => {
            let c = i.flags.into_config()?;
            let path = i
                .input
                .ok_or_else(|| Error::Validation("import needs --input <model.qubo>".into()))?;
            let model = import_qubo(&std::fs::read_to_string(&path)?)?;
            emit(out, c.out.as_deref(), &to_json(&model)?)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parse `args` (including the program name) and run; returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
