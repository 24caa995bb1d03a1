//! Experiment grids: every (algorithm, problem, dimension, repetition) tuple
//! runs exactly once, seeded from a documented hash of the tuple.
//!
//! All algorithms share one problem instance per (problem, dimension); runs
//! are independent and may execute on any number of threads without changing
//! the result set.

mod io;

pub use io::{read_results, write_results, RESULTS_HEADER, TRAJECTORY_HEADER};

use std::collections::HashSet;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::benchmark::{make_problem, BenchmarkProblem};
use crate::swarm::{run, AlgorithmConfig};
use crate::util::{fnv1a64, mix64};

/// Repetition index used when deriving problem-instance seeds.
pub const PROBLEM_SEED_REPETITION: u64 = u64::MAX;
/// Algorithm name used when deriving problem-instance seeds.
pub const PROBLEM_SEED_ALGORITHM: &str = "*";

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid plan: {0}")]
    InvalidPlan(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: missing column `{column}`")]
    MissingColumn { path: PathBuf, column: String },

    #[error("{path}, line {line}, field `{field}`: {message}")]
    Parse {
        path: PathBuf,
        line: u64,
        field: String,
        message: String,
    },

    #[error("{path}: {message}")]
    Json { path: PathBuf, message: String },
}

/// Seed for one run.
///
/// The tuple is rendered as the UTF-8 string
/// `"{base_seed}\x1f{algorithm}\x1f{problem}\x1f{dimension}\x1f{repetition}"`
/// (integers in decimal, `\x1f` the ASCII unit separator), hashed with 64-bit
/// FNV-1a, and passed through the SplitMix64 finalizer.
pub fn derive_seed(
    base_seed: u64,
    algorithm: &str,
    problem: &str,
    dimension: usize,
    repetition: u64,
) -> u64 {
    let key = format!("{base_seed}\x1f{algorithm}\x1f{problem}\x1f{dimension}\x1f{repetition}");
    mix64(fnv1a64(key.as_bytes()))
}

/// Seed of the problem instance shared by all algorithms for one
/// (problem, dimension) cell.
pub fn problem_seed(base_seed: u64, problem: &str, dimension: usize) -> u64 {
    derive_seed(
        base_seed,
        PROBLEM_SEED_ALGORITHM,
        problem,
        dimension,
        PROBLEM_SEED_REPETITION,
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmEntry {
    pub name: String,
    pub config: AlgorithmConfig,
}

impl AlgorithmEntry {
    /// Entry named after the config's variant.
    pub fn from_config(config: AlgorithmConfig) -> Self {
        Self {
            name: config.algorithm_name().to_string(),
            config,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub name: String,
    pub dimension: usize,
}

impl ProblemSpec {
    pub fn new(name: impl Into<String>, dimension: usize) -> Self {
        Self {
            name: name.into(),
            dimension,
        }
    }
}

/// The full grid. `swarm_size` and `max_evaluations` override whatever the
/// individual algorithm configs carry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentPlan {
    pub algorithms: Vec<AlgorithmEntry>,
    pub problems: Vec<ProblemSpec>,
    pub repetitions: u64,
    pub base_seed: u64,
    pub max_evaluations: u64,
    pub swarm_size: usize,
}

impl ExperimentPlan {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.repetitions == 0 {
            return Err(HarnessError::InvalidPlan(
                "repetitions must be at least 1".into(),
            ));
        }
        let mut names = HashSet::new();
        for a in &self.algorithms {
            if !names.insert(a.name.as_str()) {
                return Err(HarnessError::InvalidPlan(format!(
                    "duplicate algorithm name `{}`",
                    a.name
                )));
            }
            self.effective_config(&a.config)
                .validate()
                .map_err(|e| HarnessError::InvalidPlan(format!("algorithm `{}`: {e}", a.name)))?;
        }
        let mut cells = HashSet::new();
        for p in &self.problems {
            if !cells.insert(p) {
                return Err(HarnessError::InvalidPlan(format!(
                    "duplicate problem `{}` at d={}",
                    p.name, p.dimension
                )));
            }
        }
        Ok(())
    }

    pub fn effective_config(&self, config: &AlgorithmConfig) -> AlgorithmConfig {
        AlgorithmConfig {
            swarm_size: self.swarm_size,
            max_evaluations: self.max_evaluations,
            ..config.clone()
        }
    }

    pub fn run_count(&self) -> usize {
        self.algorithms.len() * self.problems.len() * self.repetitions as usize
    }

    fn sort_key(&self, r: &RunRecord) -> (usize, usize, u64) {
        let a = self
            .algorithms
            .iter()
            .position(|x| x.name == r.algorithm)
            .unwrap_or(usize::MAX);
        let p = self
            .problems
            .iter()
            .position(|x| same_problem(&x.name, &r.problem) && x.dimension == r.dimension)
            .unwrap_or(usize::MAX);
        (a, p, r.repetition)
    }
}

fn same_problem(plan_name: &str, record_name: &str) -> bool {
    plan_name == record_name
        || crate::benchmark::lookup(plan_name).is_ok_and(|i| i.name == record_name)
}

/// Outcome of one run. `final_best_fitness` is `None` exactly when the run
/// failed, in which case `failure` carries the diagnostic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub algorithm: String,
    pub problem: String,
    pub dimension: usize,
    pub repetition: u64,
    pub seed: u64,
    pub final_best_fitness: Option<f64>,
    pub evaluations_used: u64,
    pub trajectory: Vec<(u64, f64)>,
    pub wall_time_s: f64,
    pub failure: Option<String>,
}

impl RunRecord {
    pub fn succeeded(&self) -> bool {
        self.failure.is_none() && self.final_best_fitness.is_some()
    }

    fn matches(&self, other: &RunRecord) -> bool {
        self.algorithm == other.algorithm
            && self.problem == other.problem
            && self.dimension == other.dimension
            && self.repetition == other.repetition
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResultSet {
    pub plan: Option<ExperimentPlan>,
    pub records: Vec<RunRecord>,
}

impl ResultSet {
    pub fn failures(&self) -> impl Iterator<Item = &RunRecord> {
        self.records.iter().filter(|r| !r.succeeded())
    }

    pub fn all_succeeded(&self) -> bool {
        self.failures().next().is_none()
    }
}

/// Runs the whole plan on `parallelism` threads.
pub fn execute(plan: &ExperimentPlan, parallelism: usize) -> Result<ResultSet, HarnessError> {
    execute_resuming(plan, parallelism, None)
}

/// Like [`execute`], but keeps successful records from `previous` and only
/// runs the tuples it is missing.
pub fn execute_resuming(
    plan: &ExperimentPlan,
    parallelism: usize,
    previous: Option<&ResultSet>,
) -> Result<ResultSet, HarnessError> {
    plan.validate()?;
    if parallelism == 0 {
        return Err(HarnessError::InvalidPlan(
            "parallelism must be at least 1".into(),
        ));
    }

    let instances: Vec<Result<BenchmarkProblem, String>> = plan
        .problems
        .iter()
        .map(|p| {
            make_problem(
                &p.name,
                p.dimension,
                problem_seed(plan.base_seed, &p.name, p.dimension),
            )
            .map_err(|e| e.to_string())
        })
        .collect();

    let kept: Vec<RunRecord> = previous
        .map(|prev| {
            prev.records
                .iter()
                .filter(|r| {
                    r.succeeded()
                        && plan.sort_key(r).0 != usize::MAX
                        && plan.sort_key(r).1 != usize::MAX
                })
                .cloned()
                .collect()
        })
        .unwrap_or_default();

    let mut tasks = Vec::with_capacity(plan.run_count());
    for alg in &plan.algorithms {
        for (spec, instance) in plan.problems.iter().zip(&instances) {
            for rep in 0..plan.repetitions {
                tasks.push((alg, spec, instance, rep));
            }
        }
    }
    tasks.retain(|(alg, spec, instance, rep)| {
        let problem = problem_label(spec, instance);
        !kept.iter().any(|r| {
            r.algorithm == alg.name
                && r.problem == problem
                && r.dimension == spec.dimension
                && r.repetition == *rep
        })
    });

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()
        .map_err(|e| HarnessError::InvalidPlan(format!("thread pool: {e}")))?;
    let fresh: Vec<RunRecord> = pool.install(|| {
        tasks
            .par_iter()
            .map(|(alg, spec, instance, rep)| run_one(plan, alg, spec, instance, *rep))
            .collect()
    });

    let mut records = kept;
    records.extend(fresh);
    records.sort_by_key(|r| plan.sort_key(r));
    debug_assert!(records.windows(2).all(|w| !w[0].matches(&w[1])));
    Ok(ResultSet {
        plan: Some(plan.clone()),
        records,
    })
}

fn problem_label(spec: &ProblemSpec, instance: &Result<BenchmarkProblem, String>) -> String {
    match instance {
        Ok(p) => p.name().to_string(),
        Err(_) => spec.name.clone(),
    }
}

fn run_one(
    plan: &ExperimentPlan,
    alg: &AlgorithmEntry,
    spec: &ProblemSpec,
    instance: &Result<BenchmarkProblem, String>,
    repetition: u64,
) -> RunRecord {
    let problem = problem_label(spec, instance);
    let seed = derive_seed(
        plan.base_seed,
        &alg.name,
        &problem,
        spec.dimension,
        repetition,
    );
    let mut record = RunRecord {
        algorithm: alg.name.clone(),
        problem,
        dimension: spec.dimension,
        repetition,
        seed,
        final_best_fitness: None,
        evaluations_used: 0,
        trajectory: Vec::new(),
        wall_time_s: 0.0,
        failure: None,
    };
    let instance = match instance {
        Ok(p) => p,
        Err(e) => {
            record.failure = Some(e.clone());
            return record;
        }
    };
    let config = plan.effective_config(&alg.config);
    match run(instance, &config, seed) {
        Ok(out) => {
            record.final_best_fitness = Some(out.best_fitness);
            record.evaluations_used = out.evaluations_used;
            record.trajectory = out.trajectory;
            record.wall_time_s = out.wall_time_s;
        }
        Err(e) => {
            record.failure = Some(format!(
                "{} on {} (d={}, repetition {}, seed {}): {e}",
                alg.name, record.problem, spec.dimension, repetition, seed
            ));
        }
    }
    record
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::swarm::Role;

    pub(crate) fn small_plan(algorithms: &[Role], problems: &[&str], reps: u64) -> ExperimentPlan {
        ExperimentPlan {
            algorithms: algorithms
                .iter()
                .map(|&r| AlgorithmEntry::from_config(AlgorithmConfig::new(r)))
                .collect(),
            problems: problems.iter().map(|p| ProblemSpec::new(*p, 5)).collect(),
            repetitions: reps,
            base_seed: 12,
            max_evaluations: 200,
            swarm_size: 10,
        }
    }

    #[test]
    fn seeds_are_stable_and_distinct() {
        let a = derive_seed(7, "PSO", "Sphere", 100, 0);
        assert_eq!(a, derive_seed(7, "PSO", "Sphere", 100, 0));
        assert_ne!(a, derive_seed(7, "PSO", "Sphere", 100, 1));
        assert_ne!(a, derive_seed(8, "PSO", "Sphere", 100, 0));
        assert_ne!(a, derive_seed(7, "PSO", "Sphere", 10, 0));
        // Frozen value: FNV-1a of "7\x1fPSO\x1fSphere\x1f100\x1f0" then SplitMix64 finalizer.
        assert_eq!(a, mix64(fnv1a64(b"7\x1fPSO\x1fSphere\x1f100\x1f0")));
    }

    #[test]
    fn grid_counts() {
        let plan = small_plan(
            &[Role::Standard, Role::Rebel],
            &["Sphere", "Rastrigin", "Alpine N1"],
            5,
        );
        let rs = execute(&plan, 2).unwrap();
        assert_eq!(rs.records.len(), 30);
        assert!(rs.all_succeeded());
        assert!(rs.records.iter().all(|r| r.evaluations_used == 200));
    }

    #[test]
    fn empty_algorithm_list() {
        let plan = small_plan(&[], &["Sphere"], 3);
        assert!(execute(&plan, 1).unwrap().records.is_empty());
    }

    #[test]
    fn shared_instances_across_algorithms() {
        let s1 = problem_seed(3, "Shifted Schwefel", 10);
        let p1 = make_problem("Shifted Schwefel", 10, s1).unwrap();
        let p2 = make_problem(
            "Shifted Schwefel",
            10,
            problem_seed(3, "Shifted Schwefel", 10),
        )
        .unwrap();
        assert_eq!(p1, p2);
    }

    #[test]
    fn failures_are_contained() {
        let mut plan = small_plan(&[Role::Standard], &["Sphere"], 2);
        plan.problems
            .push(ProblemSpec::new("Lennard-Jones Minimum Energy Cluster", 4));
        let rs = execute(&plan, 1).unwrap();
        assert_eq!(rs.records.len(), 4);
        assert_eq!(rs.failures().count(), 2);
        assert!(rs.records[..2].iter().all(RunRecord::succeeded));
    }

    #[test]
    fn resume_skips_done_runs() {
        let plan = small_plan(&[Role::Standard, Role::Drifter], &["Sphere"], 3);
        let full = execute(&plan, 1).unwrap();
        let mut partial = full.clone();
        partial.records.retain(|r| r.repetition != 1);
        // Mark one kept record so we can tell it was not recomputed.
        partial.records[0].wall_time_s = -1.0;
        let resumed = execute_resuming(&plan, 1, Some(&partial)).unwrap();
        assert_eq!(resumed.records.len(), 6);
        assert_eq!(resumed.records[0].wall_time_s, -1.0);
        for (a, b) in resumed.records.iter().zip(&full.records) {
            assert_eq!(a.final_best_fitness, b.final_best_fitness);
            assert!(a.matches(b));
        }
    }

    #[test]
    fn invalid_plans() {
        let mut plan = small_plan(&[Role::Standard], &["Sphere"], 0);
        assert!(execute(&plan, 1).is_err());
        plan.repetitions = 1;
        plan.algorithms.push(plan.algorithms[0].clone());
        assert!(matches!(
            execute(&plan, 1),
            Err(HarnessError::InvalidPlan(_))
        ));
    }
}
