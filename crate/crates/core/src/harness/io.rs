//! On-disk layout of a result set:
//!
//! - `results.csv`: one row per run, header [`RESULTS_HEADER`]. A failed run
//!   has an empty `final_best_fitness`.
//! - `trajectories.csv`: per-iteration global best, header
//!   [`TRAJECTORY_HEADER`]. Optional when reading.
//! - `plan.json`: the plan plus failure diagnostics. Optional when reading.
//!
//! Floats are written in shortest round-trip scientific notation.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{ExperimentPlan, HarnessError, ResultSet, RunRecord};

pub const RESULTS_HEADER: [&str; 8] = [
    "algorithm",
    "problem",
    "dimension",
    "repetition",
    "seed",
    "final_best_fitness",
    "evaluations",
    "wall_time_s",
];

pub const TRAJECTORY_HEADER: [&str; 6] = [
    "algorithm",
    "problem",
    "dimension",
    "repetition",
    "iteration",
    "best_fitness",
];

const RESULTS_FILE: &str = "results.csv";
const TRAJECTORY_FILE: &str = "trajectories.csv";
const PLAN_FILE: &str = "plan.json";

#[derive(Debug, Serialize, Deserialize)]
struct Sidecar {
    plan: Option<ExperimentPlan>,
    #[serde(default)]
    failures: Vec<FailureNote>,
}

#[derive(Debug, Serialize, Deserialize)]
struct FailureNote {
    algorithm: String,
    problem: String,
    dimension: usize,
    repetition: u64,
    message: String,
}

type Key = (String, String, usize, u64);

fn key_of(r: &RunRecord) -> Key {
    (
        r.algorithm.clone(),
        r.problem.clone(),
        r.dimension,
        r.repetition,
    )
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> HarnessError + '_ {
    move |source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn csv_err(path: &Path, e: csv::Error) -> HarnessError {
    let line = e.position().map_or(0, |p| p.line());
    HarnessError::Parse {
        path: path.to_path_buf(),
        line,
        field: String::new(),
        message: e.to_string(),
    }
}

/// Writes `results.csv`, `trajectories.csv` and `plan.json` into `dir`,
/// creating it if needed. Returns the path of `results.csv`.
pub fn write_results(results: &ResultSet, dir: impl AsRef<Path>) -> Result<PathBuf, HarnessError> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(io_err(dir))?;

    let path = dir.join(RESULTS_FILE);
    let mut w = csv::Writer::from_path(&path).map_err(|e| csv_err(&path, e))?;
    w.write_record(RESULTS_HEADER)
        .map_err(|e| csv_err(&path, e))?;
    for r in &results.records {
        w.write_record([
            r.algorithm.clone(),
            r.problem.clone(),
            r.dimension.to_string(),
            r.repetition.to_string(),
            r.seed.to_string(),
            r.final_best_fitness
                .map(|f| format!("{f:e}"))
                .unwrap_or_default(),
            r.evaluations_used.to_string(),
            format!("{:e}", r.wall_time_s),
        ])
        .map_err(|e| csv_err(&path, e))?;
    }
    w.flush().map_err(io_err(&path))?;

    let tpath = dir.join(TRAJECTORY_FILE);
    let mut w = csv::Writer::from_path(&tpath).map_err(|e| csv_err(&tpath, e))?;
    w.write_record(TRAJECTORY_HEADER)
        .map_err(|e| csv_err(&tpath, e))?;
    for r in &results.records {
        for (it, best) in &r.trajectory {
            w.write_record([
                r.algorithm.clone(),
                r.problem.clone(),
                r.dimension.to_string(),
                r.repetition.to_string(),
                it.to_string(),
                format!("{best:e}"),
            ])
            .map_err(|e| csv_err(&tpath, e))?;
        }
    }
    w.flush().map_err(io_err(&tpath))?;

    let sidecar = Sidecar {
        plan: results.plan.clone(),
        failures: results
            .records
            .iter()
            .filter_map(|r| {
                r.failure.as_ref().map(|m| FailureNote {
                    algorithm: r.algorithm.clone(),
                    problem: r.problem.clone(),
                    dimension: r.dimension,
                    repetition: r.repetition,
                    message: m.clone(),
                })
            })
            .collect(),
    };
    let ppath = dir.join(PLAN_FILE);
    let json = serde_json::to_string_pretty(&sidecar).map_err(|e| HarnessError::Json {
        path: ppath.clone(),
        message: e.to_string(),
    })?;
    fs::write(&ppath, json).map_err(io_err(&ppath))?;
    Ok(path)
}

struct Columns<'a> {
    path: &'a Path,
    index: HashMap<&'static str, usize>,
}

impl<'a> Columns<'a> {
    fn new(
        path: &'a Path,
        headers: &csv::StringRecord,
        wanted: &[&'static str],
    ) -> Result<Self, HarnessError> {
        let mut index = HashMap::new();
        for &col in wanted {
            let i = headers
                .iter()
                .position(|h| h.trim() == col)
                .ok_or_else(|| HarnessError::MissingColumn {
                    path: path.to_path_buf(),
                    column: col.to_string(),
                })?;
            index.insert(col, i);
        }
        Ok(Self { path, index })
    }

    fn raw<'r>(
        &self,
        row: &'r csv::StringRecord,
        col: &'static str,
        line: u64,
    ) -> Result<&'r str, HarnessError> {
        row.get(self.index[col])
            .map(str::trim)
            .ok_or_else(|| HarnessError::Parse {
                path: self.path.to_path_buf(),
                line,
                field: col.to_string(),
                message: "missing value".into(),
            })
    }

    fn parse<T>(
        &self,
        row: &csv::StringRecord,
        col: &'static str,
        line: u64,
    ) -> Result<T, HarnessError>
    where
        T: std::str::FromStr,
        T::Err: std::fmt::Display,
    {
        let raw = self.raw(row, col, line)?;
        raw.parse().map_err(|e: T::Err| HarnessError::Parse {
            path: self.path.to_path_buf(),
            line,
            field: col.to_string(),
            message: format!("cannot parse `{raw}`: {e}"),
        })
    }
}

fn open_csv(path: &Path) -> Result<csv::Reader<fs::File>, HarnessError> {
    let file = fs::File::open(path).map_err(io_err(path))?;
    Ok(csv::ReaderBuilder::new().flexible(true).from_reader(file))
}

/// Reads a result set from a directory written by [`write_results`] or from
/// a `results.csv` path; sibling `trajectories.csv` and `plan.json` are
/// picked up when present.
pub fn read_results(path: impl AsRef<Path>) -> Result<ResultSet, HarnessError> {
    let path = path.as_ref();
    let (dir, csv_path) = if path.is_dir() {
        (path.to_path_buf(), path.join(RESULTS_FILE))
    } else {
        (
            path.parent().map(Path::to_path_buf).unwrap_or_default(),
            path.to_path_buf(),
        )
    };

    let mut reader = open_csv(&csv_path)?;
    let headers = reader.headers().map_err(|e| csv_err(&csv_path, e))?.clone();
    let cols = Columns::new(&csv_path, &headers, &RESULTS_HEADER)?;
    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| csv_err(&csv_path, e))?;
        let line = row.position().map_or(0, |p| p.line());
        let fitness = cols.raw(&row, "final_best_fitness", line)?;
        let final_best_fitness = if fitness.is_empty() {
            None
        } else {
            Some(cols.parse::<f64>(&row, "final_best_fitness", line)?)
        };
        records.push(RunRecord {
            algorithm: cols.raw(&row, "algorithm", line)?.to_string(),
            problem: cols.raw(&row, "problem", line)?.to_string(),
            dimension: cols.parse(&row, "dimension", line)?,
            repetition: cols.parse(&row, "repetition", line)?,
            seed: cols.parse(&row, "seed", line)?,
            final_best_fitness,
            evaluations_used: cols.parse(&row, "evaluations", line)?,
            trajectory: Vec::new(),
            wall_time_s: cols.parse(&row, "wall_time_s", line)?,
            failure: None,
        });
    }

    let by_key: HashMap<Key, usize> = records
        .iter()
        .enumerate()
        .map(|(i, r)| (key_of(r), i))
        .collect();

    let tpath = dir.join(TRAJECTORY_FILE);
    if tpath.is_file() {
        let mut reader = open_csv(&tpath)?;
        let headers = reader.headers().map_err(|e| csv_err(&tpath, e))?.clone();
        let cols = Columns::new(&tpath, &headers, &TRAJECTORY_HEADER)?;
        for row in reader.records() {
            let row = row.map_err(|e| csv_err(&tpath, e))?;
            let line = row.position().map_or(0, |p| p.line());
            let key: Key = (
                cols.raw(&row, "algorithm", line)?.to_string(),
                cols.raw(&row, "problem", line)?.to_string(),
                cols.parse(&row, "dimension", line)?,
                cols.parse(&row, "repetition", line)?,
            );
            let Some(&i) = by_key.get(&key) else {
                return Err(HarnessError::Parse {
                    path: tpath.clone(),
                    line,
                    field: "algorithm".into(),
                    message: "trajectory row has no matching run record".into(),
                });
            };
            records[i].trajectory.push((
                cols.parse(&row, "iteration", line)?,
                cols.parse(&row, "best_fitness", line)?,
            ));
        }
    }

    let ppath = dir.join(PLAN_FILE);
    let mut plan = None;
    if ppath.is_file() {
        let text = fs::read_to_string(&ppath).map_err(io_err(&ppath))?;
        let sidecar: Sidecar = serde_json::from_str(&text).map_err(|e| HarnessError::Json {
            path: ppath.clone(),
            message: e.to_string(),
        })?;
        plan = sidecar.plan;
        for note in sidecar.failures {
            let key = (
                note.algorithm,
                note.problem,
                note.dimension,
                note.repetition,
            );
            if let Some(&i) = by_key.get(&key) {
                records[i].failure = Some(note.message);
            }
        }
    }
    // Rows without a value but without a recorded diagnostic still count as failed.
    for r in &mut records {
        if r.final_best_fitness.is_none() && r.failure.is_none() {
            r.failure = Some("run failed (no diagnostic recorded)".into());
        }
    }

    Ok(ResultSet { plan, records })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::tests::small_plan;
    use crate::harness::{execute, ProblemSpec};
    use crate::swarm::Role;

    #[test]
    fn round_trip_with_failure() {
        let mut plan = small_plan(&[Role::Standard, Role::Wanderer], &["Sphere", "Salomon"], 2);
        plan.problems.push(ProblemSpec::new("Nope", 5));
        let rs = execute(&plan, 1).unwrap();
        assert_eq!(rs.failures().count(), 4);
        let dir = tempfile::tempdir().unwrap();
        let csv_path = write_results(&rs, dir.path()).unwrap();
        assert_eq!(read_results(dir.path()).unwrap(), rs);
        assert_eq!(read_results(&csv_path).unwrap(), rs);

        let text = fs::read_to_string(&csv_path).unwrap();
        assert_eq!(
            text.lines().next().unwrap(),
            "algorithm,problem,dimension,repetition,seed,final_best_fitness,evaluations,wall_time_s"
        );
    }

    #[test]
    fn missing_column_is_named() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("results.csv");
        fs::write(
            &p,
            "algorithm,problem,dimension,repetition,final_best_fitness,evaluations,wall_time_s\n",
        )
        .unwrap();
        match read_results(&p) {
            Err(HarnessError::MissingColumn { column, .. }) => assert_eq!(column, "seed"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_value_reports_line_and_field() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("results.csv");
        fs::write(
            &p,
            "algorithm,problem,dimension,repetition,seed,final_best_fitness,evaluations,wall_time_s\n\
             PSO,Sphere,10,0,1,1e-3,100,0.1\n\
             PSO,Sphere,ten,1,1,1e-3,100,0.1\n",
        )
        .unwrap();
        match read_results(&p) {
            Err(HarnessError::Parse { line, field, .. }) => {
                assert_eq!(line, 3);
                assert_eq!(field, "dimension");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reads_bare_csv() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("results.csv");
        fs::write(
            &p,
            "algorithm,problem,dimension,repetition,seed,final_best_fitness,evaluations,wall_time_s\n\
             PSO,Sphere,10,0,1,1.5e-3,100,2e-1\n",
        )
        .unwrap();
        let rs = read_results(&p).unwrap();
        assert!(rs.plan.is_none());
        assert_eq!(rs.records[0].final_best_fitness, Some(1.5e-3));
    }
}
