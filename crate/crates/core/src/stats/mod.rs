//! Aggregation and nonparametric comparison of experiment results.
//!
//! The pipeline starts from a [`SummaryTable`] of per-cell statistics, where a
//! cell is one (algorithm, problem, dimension) combination. From it:
//!
//! - [`best_per_problem`] picks the winning algorithm for each (problem, dimension),
//! - [`count_best_worst`] tallies how often each algorithm wins or loses,
//! - [`minmax_normalize`] rescales means to `[0, 1]` within each (problem, dimension),
//! - [`friedman`], [`many_to_one`] and [`holm_adjust`] test for rank differences
//!   against a control algorithm.
//!
//! [`analyze`] runs all of it and produces an [`AnalysisReport`].

mod distributions;
mod rank;
mod report;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::harness::RunRecord;

pub use distributions::{chi_square_sf, ln_gamma, normal_two_sided_p, regularized_gamma_q};
pub use rank::{
    friedman, holm_adjust, many_to_one, rank_row, Comparison, Direction, FriedmanResult,
};
pub use report::{analyze, analyze_summary, AnalysisReport, FailureNote, PostHocRow};

#[derive(Debug, Error)]
pub enum StatsError {
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("row {row} has {found} columns, expected {expected}")]
    RaggedMatrix {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("non-finite value: {0}")]
    NonFinite(String),
    #[error("control algorithm `{0}` not present in the results")]
    UnknownControl(String),
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("alpha must lie in (0, 1), got {0}")]
    InvalidAlpha(f64),
    #[error("{problem} (d={dimension}) has {count} algorithm(s); at least 2 are required")]
    TooFewAlgorithms {
        problem: String,
        dimension: usize,
        count: usize,
    },
    #[error("no result for {algorithm} on {problem} (d={dimension})")]
    IncompleteGrid {
        algorithm: String,
        problem: String,
        dimension: usize,
    },
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// A (problem, dimension) pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellKey {
    pub problem: String,
    pub dimension: usize,
}

/// Statistics of final best fitness over the repetitions of one cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub algorithm: String,
    pub problem: String,
    pub dimension: usize,
    pub runs: usize,
    pub mean: f64,
    pub median: f64,
    pub std_dev: f64,
    pub best: f64,
    pub worst: f64,
}

impl CellSummary {
    fn from_values(
        algorithm: String,
        problem: String,
        dimension: usize,
        mut values: Vec<f64>,
    ) -> Self {
        values.sort_by(f64::total_cmp);
        let n = values.len();
        let mean = values.iter().sum::<f64>() / n as f64;
        let median = if n % 2 == 1 {
            values[n / 2]
        } else {
            (values[n / 2 - 1] + values[n / 2]) / 2.0
        };
        let std_dev = if n > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
        } else {
            0.0
        };
        CellSummary {
            algorithm,
            problem,
            dimension,
            runs: n,
            mean,
            median,
            std_dev,
            best: values[0],
            worst: values[n - 1],
        }
    }

    pub fn key(&self) -> CellKey {
        CellKey {
            problem: self.problem.clone(),
            dimension: self.dimension,
        }
    }
}

/// Per-cell summaries, kept in first-appearance order.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SummaryTable {
    cells: Vec<CellSummary>,
}

impl SummaryTable {
    /// Summarizes the successful records; failed runs are skipped.
    pub fn from_records<'a>(records: impl IntoIterator<Item = &'a RunRecord>) -> Self {
        Self::from_samples(records.into_iter().filter_map(|r| {
            r.final_best_fitness
                .map(|f| (r.algorithm.as_str(), r.problem.as_str(), r.dimension, f))
        }))
    }

    /// Builds a table from `(algorithm, problem, dimension, value)` samples.
    pub fn from_samples<'a>(
        samples: impl IntoIterator<Item = (&'a str, &'a str, usize, f64)>,
    ) -> Self {
        let mut index: HashMap<(String, String, usize), usize> = HashMap::new();
        let mut groups: Vec<((String, String, usize), Vec<f64>)> = Vec::new();
        for (algorithm, problem, dimension, value) in samples {
            let key = (algorithm.to_string(), problem.to_string(), dimension);
            let i = *index.entry(key.clone()).or_insert_with(|| {
                groups.push((key, Vec::new()));
                groups.len() - 1
            });
            groups[i].1.push(value);
        }
        let cells = groups
            .into_iter()
            .map(|((a, p, d), values)| CellSummary::from_values(a, p, d, values))
            .collect();
        SummaryTable { cells }
    }

    pub fn cells(&self) -> &[CellSummary] {
        &self.cells
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn get(&self, algorithm: &str, problem: &str, dimension: usize) -> Option<&CellSummary> {
        self.cells
            .iter()
            .find(|c| c.algorithm == algorithm && c.problem == problem && c.dimension == dimension)
    }

    /// Algorithm names in first-appearance order.
    pub fn algorithms(&self) -> Vec<String> {
        first_appearance(self.cells.iter().map(|c| &c.algorithm))
    }

    /// Problem names in first-appearance order.
    pub fn problems(&self) -> Vec<String> {
        first_appearance(self.cells.iter().map(|c| &c.problem))
    }

    /// Distinct dimensions, ascending.
    pub fn dimensions(&self) -> Vec<usize> {
        let mut dims: Vec<usize> = self.cells.iter().map(|c| c.dimension).collect();
        dims.sort_unstable();
        dims.dedup();
        dims
    }

    /// (problem, dimension) pairs, ordered by dimension then problem appearance.
    pub fn cell_keys(&self) -> Vec<CellKey> {
        let mut keys = Vec::new();
        for d in self.dimensions() {
            for p in self.problems() {
                if self
                    .cells
                    .iter()
                    .any(|c| c.dimension == d && c.problem == p)
                {
                    keys.push(CellKey {
                        problem: p,
                        dimension: d,
                    });
                }
            }
        }
        keys
    }

    /// Summaries of every algorithm on one (problem, dimension).
    pub fn column(&self, key: &CellKey) -> Vec<&CellSummary> {
        self.cells
            .iter()
            .filter(|c| c.problem == key.problem && c.dimension == key.dimension)
            .collect()
    }

    /// Restricts the table to (problem, dimension) pairs where every algorithm
    /// has a summary; also returns the pairs that were dropped.
    pub fn complete_only(&self) -> (SummaryTable, Vec<CellKey>) {
        let k = self.algorithms().len();
        let mut excluded = Vec::new();
        let mut kept = Vec::new();
        for key in self.cell_keys() {
            if self.column(&key).len() == k {
                kept.push(key);
            } else {
                excluded.push(key);
            }
        }
        let cells = self
            .cells
            .iter()
            .filter(|c| {
                kept.iter()
                    .any(|k| k.problem == c.problem && k.dimension == c.dimension)
            })
            .cloned()
            .collect();
        (SummaryTable { cells }, excluded)
    }

    fn require_complete(&self) -> Result<(Vec<String>, Vec<CellKey>), StatsError> {
        let algorithms = self.algorithms();
        let keys = self.cell_keys();
        for key in &keys {
            let column = self.column(key);
            if column.len() < 2 {
                return Err(StatsError::TooFewAlgorithms {
                    problem: key.problem.clone(),
                    dimension: key.dimension,
                    count: column.len(),
                });
            }
            for a in &algorithms {
                if !column.iter().any(|c| &c.algorithm == a) {
                    return Err(StatsError::IncompleteGrid {
                        algorithm: a.clone(),
                        problem: key.problem.clone(),
                        dimension: key.dimension,
                    });
                }
            }
        }
        Ok((algorithms, keys))
    }

    /// Friedman input: one row per (problem, dimension), one column per algorithm,
    /// holding mean final fitness.
    pub fn friedman_matrix(
        &self,
    ) -> Result<(Vec<String>, Vec<CellKey>, Vec<Vec<f64>>), StatsError> {
        let (algorithms, keys) = self.require_complete()?;
        let matrix = keys
            .iter()
            .map(|k| {
                algorithms
                    .iter()
                    .map(|a| {
                        self.get(a, &k.problem, k.dimension)
                            .map(|c| c.mean)
                            .unwrap_or(f64::NAN)
                    })
                    .collect()
            })
            .collect();
        Ok((algorithms, keys, matrix))
    }
}

fn first_appearance<'a>(names: impl Iterator<Item = &'a String>) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for n in names {
        if !out.contains(n) {
            out.push(n.clone());
        }
    }
    out
}

/// Winning (or losing) algorithm of one (problem, dimension).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Winner {
    pub problem: String,
    pub dimension: usize,
    pub algorithm: String,
    pub mean: f64,
    /// Another algorithm had exactly the same mean; the lexicographically first name was taken.
    pub tie: bool,
}

fn pick(summary: &SummaryTable, key: &CellKey, worst: bool) -> Result<Winner, StatsError> {
    let column = summary.column(key);
    if column.len() < 2 {
        return Err(StatsError::TooFewAlgorithms {
            problem: key.problem.clone(),
            dimension: key.dimension,
            count: column.len(),
        });
    }
    let mut chosen = column[0];
    let mut tie = false;
    for &c in &column[1..] {
        let ord = if worst {
            chosen.mean.total_cmp(&c.mean)
        } else {
            c.mean.total_cmp(&chosen.mean)
        };
        match ord {
            std::cmp::Ordering::Less => {
                chosen = c;
                tie = false;
            }
            std::cmp::Ordering::Equal => {
                tie = true;
                if c.algorithm < chosen.algorithm {
                    chosen = c;
                }
            }
            std::cmp::Ordering::Greater => {}
        }
    }
    Ok(Winner {
        problem: key.problem.clone(),
        dimension: key.dimension,
        algorithm: chosen.algorithm.clone(),
        mean: chosen.mean,
        tie,
    })
}

/// Best algorithm (lowest mean) for every (problem, dimension).
pub fn best_per_problem(summary: &SummaryTable) -> Result<Vec<Winner>, StatsError> {
    summary
        .cell_keys()
        .iter()
        .map(|k| pick(summary, k, false))
        .collect()
}

/// Worst algorithm (highest mean) for every (problem, dimension).
pub fn worst_per_problem(summary: &SummaryTable) -> Result<Vec<Winner>, StatsError> {
    summary
        .cell_keys()
        .iter()
        .map(|k| pick(summary, k, true))
        .collect()
}

/// Best and worst occurrences per algorithm and dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestWorstCounts {
    pub algorithms: Vec<String>,
    pub dimensions: Vec<usize>,
    /// `best[a][d]`: cells of dimension `dimensions[d]` won by `algorithms[a]`.
    pub best: Vec<Vec<usize>>,
    pub worst: Vec<Vec<usize>>,
    pub best_ties: usize,
    pub worst_ties: usize,
}

impl BestWorstCounts {
    fn indices(&self, algorithm: &str, dimension: usize) -> Option<(usize, usize)> {
        let a = self.algorithms.iter().position(|n| n == algorithm)?;
        let d = self.dimensions.iter().position(|&x| x == dimension)?;
        Some((a, d))
    }

    pub fn best_count(&self, algorithm: &str, dimension: usize) -> usize {
        self.indices(algorithm, dimension)
            .map_or(0, |(a, d)| self.best[a][d])
    }

    pub fn worst_count(&self, algorithm: &str, dimension: usize) -> usize {
        self.indices(algorithm, dimension)
            .map_or(0, |(a, d)| self.worst[a][d])
    }

    pub fn best_total(&self, algorithm: &str) -> usize {
        self.algorithms
            .iter()
            .position(|n| n == algorithm)
            .map_or(0, |a| self.best[a].iter().sum())
    }

    pub fn worst_total(&self, algorithm: &str) -> usize {
        self.algorithms
            .iter()
            .position(|n| n == algorithm)
            .map_or(0, |a| self.worst[a].iter().sum())
    }
}

/// Counts how often each algorithm has the lowest and the highest mean.
pub fn count_best_worst(summary: &SummaryTable) -> Result<BestWorstCounts, StatsError> {
    let algorithms = summary.algorithms();
    let dimensions = summary.dimensions();
    let mut counts = BestWorstCounts {
        best: vec![vec![0; dimensions.len()]; algorithms.len()],
        worst: vec![vec![0; dimensions.len()]; algorithms.len()],
        algorithms,
        dimensions,
        best_ties: 0,
        worst_ties: 0,
    };
    for (winners, worst) in [
        (best_per_problem(summary)?, false),
        (worst_per_problem(summary)?, true),
    ] {
        for w in winners {
            let (a, d) = counts
                .indices(&w.algorithm, w.dimension)
                .expect("winner is in the table");
            if worst {
                counts.worst[a][d] += 1;
                counts.worst_ties += usize::from(w.tie);
            } else {
                counts.best[a][d] += 1;
                counts.best_ties += usize::from(w.tie);
            }
        }
    }
    Ok(counts)
}

/// Min–max normalized score of one cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizedScore {
    pub algorithm: String,
    pub problem: String,
    pub dimension: usize,
    pub score: f64,
}

/// Normalized scores with per-dimension and overall averages per algorithm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Normalization {
    pub algorithms: Vec<String>,
    pub dimensions: Vec<usize>,
    pub scores: Vec<NormalizedScore>,
    /// (problem, dimension) pairs where all means were equal; every score there is 0.
    pub degenerate: Vec<CellKey>,
    /// `per_dimension[a][d]`: mean score of `algorithms[a]` over problems of `dimensions[d]`.
    pub per_dimension: Vec<Vec<f64>>,
    /// Mean of the per-dimension averages.
    pub overall: Vec<f64>,
}

impl Normalization {
    pub fn score(&self, algorithm: &str, problem: &str, dimension: usize) -> Option<f64> {
        self.scores
            .iter()
            .find(|s| s.algorithm == algorithm && s.problem == problem && s.dimension == dimension)
            .map(|s| s.score)
    }

    pub fn overall_mean(&self, algorithm: &str) -> Option<f64> {
        self.algorithms
            .iter()
            .position(|a| a == algorithm)
            .map(|a| self.overall[a])
    }

    pub fn dimension_mean(&self, algorithm: &str, dimension: usize) -> Option<f64> {
        let a = self.algorithms.iter().position(|x| x == algorithm)?;
        let d = self.dimensions.iter().position(|&x| x == dimension)?;
        Some(self.per_dimension[a][d])
    }
}

/// Rescales mean fitness to `[0, 1]` within each (problem, dimension), then
/// averages over problems per dimension and over dimensions overall.
///
/// Every algorithm must have a summary in every (problem, dimension).
pub fn minmax_normalize(summary: &SummaryTable) -> Result<Normalization, StatsError> {
    let (algorithms, keys) = summary.require_complete()?;
    let dimensions = summary.dimensions();
    let mut scores = Vec::new();
    let mut degenerate = Vec::new();
    let mut sums = vec![vec![0.0; dimensions.len()]; algorithms.len()];
    let mut problems_per_dim = vec![0usize; dimensions.len()];
    for key in &keys {
        let means: Vec<f64> = algorithms
            .iter()
            .map(|a| {
                summary
                    .get(a, &key.problem, key.dimension)
                    .expect("complete grid")
                    .mean
            })
            .collect();
        if let Some(m) = means.iter().find(|m| !m.is_finite()) {
            return Err(StatsError::NonFinite(format!(
                "mean {m} on {} (d={})",
                key.problem, key.dimension
            )));
        }
        let lo = means.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = means.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let flat = hi == lo;
        if flat {
            degenerate.push(key.clone());
        }
        let d = dimensions
            .iter()
            .position(|&x| x == key.dimension)
            .expect("known dimension");
        problems_per_dim[d] += 1;
        for (a, (name, &m)) in algorithms.iter().zip(&means).enumerate() {
            let score = if flat {
                0.0
            } else {
                ((m - lo) / (hi - lo)).clamp(0.0, 1.0)
            };
            sums[a][d] += score;
            scores.push(NormalizedScore {
                algorithm: name.clone(),
                problem: key.problem.clone(),
                dimension: key.dimension,
                score,
            });
        }
    }
    let per_dimension: Vec<Vec<f64>> = sums
        .iter()
        .map(|row| {
            row.iter()
                .zip(&problems_per_dim)
                .map(|(s, &n)| s / n as f64)
                .collect()
        })
        .collect();
    let overall = per_dimension
        .iter()
        .map(|row| row.iter().sum::<f64>() / row.len() as f64)
        .collect();
    Ok(Normalization {
        algorithms,
        dimensions,
        scores,
        degenerate,
        per_dimension,
        overall,
    })
}
