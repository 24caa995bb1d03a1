//! Command-line front end: `list-problems`, `list-algorithms`, `run` and `analyze`.
//!
//! Exit status is 0 on full success, 1 when a run failed or an output could
//! not be produced, and 2 for invalid arguments or configuration.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::benchmark::{check_problem, list_problems, suite_problems};
use crate::harness::{
    execute_resuming, read_results, write_results, AlgorithmEntry, ExperimentPlan, ProblemSpec,
};
use crate::stats::analyze;
use crate::swarm::{AlgorithmConfig, Role, Scale, SwarmError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "roleswarm",
    version,
    about = "Role-based particle swarm optimization experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the benchmark problems with their search boxes.
    ListProblems,
    /// List the twelve algorithm names.
    ListAlgorithms,
    /// Run an experiment grid described by a TOML or JSON config.
    Run(RunArgs),
    /// Summarize a results CSV and compare every algorithm with a control.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, clap::Args)]
pub struct RunArgs {
    /// Experiment config (`.toml` or `.json`).
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory for results.csv, trajectories.csv and plan.json.
    #[arg(long)]
    pub out: PathBuf,
    /// Replace the configured dimensions.
    #[arg(long, value_delimiter = ',')]
    pub dimensions: Option<Vec<usize>>,
    #[arg(long)]
    pub repetitions: Option<u64>,
    /// Function-evaluation budget per run.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub swarm_size: Option<usize>,
    /// Worker threads (defaults to the config value, then to the core count).
    #[arg(long)]
    pub parallelism: Option<usize>,
    /// Base seed of the experiment.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Keep only these configured algorithms (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub algorithms: Option<Vec<String>>,
    /// Replace the configured problems (comma separated registry names).
    #[arg(long, value_delimiter = ',')]
    pub problems: Option<Vec<String>>,
    /// Reuse successful runs already present in the output directory.
    #[arg(long)]
    pub resume: bool,
}

#[derive(Debug, clap::Args)]
pub struct AnalyzeArgs {
    /// results.csv, or the directory containing it.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Control algorithm for the many-to-one comparison.
    #[arg(long, default_value = "PSO")]
    pub control: String,
    /// Significance level for the adjusted p-values.
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    /// Directory for report.md and report.json (defaults to the input's directory).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Coefficients of one configured algorithm. Omitted fields take the defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgorithmSpec {
    /// Display name; a built-in name such as `WandererPSO` also fixes the variant.
    pub name: String,
    /// Role tag or algorithm name; required when `name` is not built in.
    #[serde(default)]
    pub variant: Option<String>,
    #[serde(default)]
    pub omega: Option<f64>,
    #[serde(default)]
    pub c1: Option<f64>,
    #[serde(default)]
    pub c2: Option<f64>,
    #[serde(default)]
    pub role_coefficient: Option<f64>,
    #[serde(default)]
    pub role_fraction: Option<f64>,
    #[serde(default)]
    pub lambda: Option<Scale>,
    #[serde(default)]
    pub sigma: Option<Scale>,
}

/// Experiment config file. See `CONFIG.md` for the schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Algorithms to compare; empty means all twelve with default coefficients.
    pub algorithms: Vec<AlgorithmSpec>,
    /// Problem names; empty means the 32-problem comparison suite.
    pub problems: Vec<String>,
    pub dimensions: Vec<usize>,
    pub repetitions: u64,
    pub max_evaluations: u64,
    pub swarm_size: usize,
    pub base_seed: u64,
    pub parallelism: Option<usize>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            algorithms: Vec::new(),
            problems: Vec::new(),
            dimensions: vec![100, 500, 1000],
            repetitions: 50,
            max_evaluations: 25_000,
            swarm_size: 100,
            base_seed: 0,
            parallelism: None,
        }
    }
}

/// An invalid config, reported with the offending field.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{field}: {message}")]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

fn config_error(field: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError {
        field: field.into(),
        message: message.into(),
    }
}

impl ExperimentConfig {
    /// Parses TOML, or JSON when the path ends in `.json`.
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_error(path.display().to_string(), e.to_string()))?;
        let is_json = path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("json"));
        if is_json {
            serde_json::from_str(&text)
                .map_err(|e| config_error(path.display().to_string(), e.to_string()))
        } else {
            toml::from_str(&text)
                .map_err(|e| config_error(path.display().to_string(), e.to_string()))
        }
    }

    /// Algorithm configs in declaration order (all twelve when none are listed).
    pub fn algorithm_entries(&self) -> Result<Vec<AlgorithmEntry>, ConfigError> {
        if self.algorithms.is_empty() {
            return Ok(Role::ALL
                .into_iter()
                .map(|r| AlgorithmEntry::from_config(AlgorithmConfig::new(r)))
                .collect());
        }
        self.algorithms
            .iter()
            .enumerate()
            .map(|(i, spec)| {
                let at = |f: &str| format!("algorithms[{i}].{f}");
                let variant = match &spec.variant {
                    Some(v) => v
                        .parse::<Role>()
                        .map_err(|e| config_error(at("variant"), e.to_string()))?,
                    None => Role::from_algorithm_name(&spec.name).ok_or_else(|| {
                        config_error(
                            at("variant"),
                            format!(
                                "required because `{}` is not a built-in algorithm name",
                                spec.name
                            ),
                        )
                    })?,
                };
                let mut c = AlgorithmConfig::new(variant);
                if let Some(v) = spec.omega {
                    c.omega = v;
                }
                if let Some(v) = spec.c1 {
                    c.c1 = v;
                }
                if let Some(v) = spec.c2 {
                    c.c2 = v;
                }
                if let Some(v) = spec.role_coefficient {
                    c.role_coefficient = v;
                }
                if let Some(v) = spec.role_fraction {
                    c.role_fraction = v;
                }
                if let Some(v) = spec.lambda {
                    c.lambda = v;
                }
                if let Some(v) = spec.sigma {
                    c.sigma = v;
                }
                c.swarm_size = self.swarm_size;
                c.max_evaluations = self.max_evaluations;
                c.validate().map_err(|e| match e {
                    SwarmError::InvalidConfig { field, reason } => config_error(at(field), reason),
                    other => config_error(format!("algorithms[{i}]"), other.to_string()),
                })?;
                Ok(AlgorithmEntry {
                    name: spec.name.clone(),
                    config: c,
                })
            })
            .collect()
    }

    /// Validates the config and expands it into a plan.
    pub fn to_plan(&self) -> Result<ExperimentPlan, ConfigError> {
        if self.dimensions.is_empty() {
            return Err(config_error(
                "dimensions",
                "at least one dimension is required",
            ));
        }
        if self.repetitions == 0 {
            return Err(config_error("repetitions", "must be at least 1"));
        }
        if self.swarm_size == 0 {
            return Err(config_error("swarm_size", "must be at least 1"));
        }
        if self.max_evaluations < self.swarm_size as u64 {
            return Err(config_error(
                "max_evaluations",
                "must cover at least the initial swarm",
            ));
        }
        if self.parallelism == Some(0) {
            return Err(config_error("parallelism", "must be at least 1"));
        }
        let algorithms = self.algorithm_entries()?;
        let names: Vec<String> = if self.problems.is_empty() {
            suite_problems().map(|p| p.name.to_string()).collect()
        } else {
            self.problems.clone()
        };
        let mut problems = Vec::new();
        for &d in &self.dimensions {
            for (i, name) in names.iter().enumerate() {
                let info = check_problem(name, d)
                    .map_err(|e| config_error(format!("problems[{i}]"), e.to_string()))?;
                problems.push(ProblemSpec::new(info.name, d));
            }
        }
        let plan = ExperimentPlan {
            algorithms,
            problems,
            repetitions: self.repetitions,
            base_seed: self.base_seed,
            max_evaluations: self.max_evaluations,
            swarm_size: self.swarm_size,
        };
        plan.validate()
            .map_err(|e| config_error("plan", e.to_string()))?;
        Ok(plan)
    }
}

impl RunArgs {
    fn apply(&self, config: &mut ExperimentConfig) -> Result<(), ConfigError> {
        if let Some(d) = &self.dimensions {
            config.dimensions = d.clone();
        }
        if let Some(r) = self.repetitions {
            config.repetitions = r;
        }
        if let Some(b) = self.budget {
            config.max_evaluations = b;
        }
        if let Some(s) = self.swarm_size {
            config.swarm_size = s;
        }
        if let Some(p) = self.parallelism {
            config.parallelism = Some(p);
        }
        if let Some(s) = self.seed {
            config.base_seed = s;
        }
        if let Some(p) = &self.problems {
            config.problems = p.iter().map(|s| s.trim().to_string()).collect();
        }
        if let Some(keep) = &self.algorithms {
            if config.algorithms.is_empty() {
                config.algorithms = Role::ALL
                    .into_iter()
                    .map(|r| AlgorithmSpec {
                        name: r.algorithm_name().to_string(),
                        variant: None,
                        omega: None,
                        c1: None,
                        c2: None,
                        role_coefficient: None,
                        role_fraction: None,
                        lambda: None,
                        sigma: None,
                    })
                    .collect();
            }
            for name in keep {
                if !config.algorithms.iter().any(|a| a.name == name.trim()) {
                    return Err(config_error(
                        "--algorithms",
                        format!("`{}` is not a configured algorithm", name.trim()),
                    ));
                }
            }
            config
                .algorithms
                .retain(|a| keep.iter().any(|k| k.trim() == a.name));
        }
        Ok(())
    }
}

fn default_parallelism() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn cmd_run(args: &RunArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let plan_and_threads = ExperimentConfig::load(&args.config).and_then(|mut config| {
        args.apply(&mut config)?;
        let plan = config.to_plan()?;
        Ok((plan, config.parallelism.unwrap_or_else(default_parallelism)))
    });
    let (plan, threads) = match plan_and_threads {
        Ok(v) => v,
        Err(e) => {
            let _ = writeln!(err, "invalid config: {e}");
            return EXIT_USAGE;
        }
    };

    let previous = if args.resume && args.out.join("results.csv").exists() {
        match read_results(&args.out) {
            Ok(rs) => Some(rs),
            Err(e) => {
                let _ = writeln!(err, "cannot resume: {e}");
                return EXIT_FAILURE;
            }
        }
    } else {
        None
    };

    let _ = writeln!(
        out,
        "running {} runs on {} thread(s)",
        plan.run_count(),
        threads
    );
    let results = match execute_resuming(&plan, threads, previous.as_ref()) {
        Ok(rs) => rs,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            return EXIT_FAILURE;
        }
    };
    let path = match write_results(&results, &args.out) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            return EXIT_FAILURE;
        }
    };
    let failed: Vec<_> = results.failures().collect();
    let _ = writeln!(
        out,
        "wrote {} records to {}",
        results.records.len(),
        path.display()
    );
    if failed.is_empty() {
        EXIT_OK
    } else {
        for r in &failed {
            let _ = writeln!(
                err,
                "failed: {} on {} (d={}), repetition {}: {}",
                r.algorithm,
                r.problem,
                r.dimension,
                r.repetition,
                r.failure.as_deref().unwrap_or("unknown error")
            );
        }
        let _ = writeln!(
            err,
            "{} of {} runs failed",
            failed.len(),
            results.records.len()
        );
        EXIT_FAILURE
    }
}

fn cmd_analyze(args: &AnalyzeArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if !(args.alpha > 0.0 && args.alpha < 1.0) {
        let _ = writeln!(err, "--alpha must lie in (0, 1), got {}", args.alpha);
        return EXIT_USAGE;
    }
    let results = match read_results(&args.input) {
        Ok(rs) => rs,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            return EXIT_FAILURE;
        }
    };
    let report = match analyze(&results, &args.control, args.alpha) {
        Ok(r) => r,
        Err(e @ crate::stats::StatsError::UnknownControl(_)) => {
            let _ = writeln!(err, "{e}");
            return EXIT_USAGE;
        }
        Err(e) => {
            let _ = writeln!(err, "{e}");
            return EXIT_FAILURE;
        }
    };
    let dir = args.out.clone().unwrap_or_else(|| {
        if args.input.is_dir() {
            args.input.clone()
        } else {
            args.input
                .parent()
                .map(Path::to_path_buf)
                .unwrap_or_default()
        }
    });
    let (md, _) = match report.write(&dir) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            return EXIT_FAILURE;
        }
    };
    let _ = writeln!(out, "wrote {}", md.display());
    let planned = results.plan.as_ref().map(|p| p.run_count());
    let missing = planned.map_or(0, |n| n.saturating_sub(results.records.len()));
    if !report.failures.is_empty() || missing > 0 {
        let _ = writeln!(
            err,
            "{} failed run(s), {} planned run(s) missing from the results",
            report.failures.len(),
            missing
        );
        return EXIT_FAILURE;
    }
    EXIT_OK
}

fn cmd_list_problems(out: &mut dyn Write) -> i32 {
    let _ = writeln!(out, "{:<40} {:>20}  transform", "name", "bounds");
    for p in list_problems() {
        let mut tags = Vec::new();
        if p.shifted {
            tags.push("shifted");
        }
        if p.rotated {
            tags.push("rotated");
        }
        if p.tuning_only {
            tags.push("tuning-only");
        }
        let bounds = format!("[{}, {}]", p.low, p.high);
        let _ = writeln!(out, "{:<40} {:>20}  {}", p.name, bounds, tags.join(" "));
    }
    EXIT_OK
}

fn cmd_list_algorithms(out: &mut dyn Write) -> i32 {
    for r in Role::ALL {
        let _ = writeln!(out, "{}", r.algorithm_name());
    }
    EXIT_OK
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match &cli.command {
        Command::ListProblems => cmd_list_problems(out),
        Command::ListAlgorithms => cmd_list_algorithms(out),
        Command::Run(a) => cmd_run(a, out, err),
        Command::Analyze(a) => cmd_analyze(a, out, err),
    }
}

/// Entry point for the binary.
pub fn main() -> std::process::ExitCode {
    let code = run_with(
        std::env::args_os(),
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    );
    std::process::ExitCode::from(code.clamp(0, 255) as u8)
}
