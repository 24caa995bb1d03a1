use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{
    best_per_problem, count_best_worst, friedman, holm_adjust, many_to_one, minmax_normalize,
    BestWorstCounts, CellKey, Direction, FriedmanResult, Normalization, StatsError, SummaryTable,
    Winner,
};
use crate::harness::ResultSet;

/// Post-hoc comparison of one algorithm with the control.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PostHocRow {
    pub algorithm: String,
    pub mean_rank: f64,
    pub z: f64,
    pub raw_p: f64,
    pub adjusted_p: f64,
    pub direction: Direction,
    pub significant: bool,
}

/// A run that did not produce a final fitness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureNote {
    pub algorithm: String,
    pub problem: String,
    pub dimension: usize,
    pub repetition: u64,
    pub message: String,
}

/// Everything produced by [`analyze`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub control: String,
    pub alpha: f64,
    pub algorithms: Vec<String>,
    pub problems: Vec<String>,
    pub dimensions: Vec<usize>,
    pub total_runs: usize,
    pub summary: SummaryTable,
    pub best_per_problem: Vec<Winner>,
    pub counts: BestWorstCounts,
    pub normalization: Normalization,
    /// Absent when fewer than two complete (problem, dimension) rows exist.
    pub friedman: Option<FriedmanResult>,
    pub control_mean_rank: Option<f64>,
    pub post_hoc: Vec<PostHocRow>,
    /// (problem, dimension) pairs left out of normalization and ranking because
    /// some algorithm had no successful run there.
    pub excluded_cells: Vec<CellKey>,
    pub failures: Vec<FailureNote>,
}

/// Analyzes a result set: summaries, winners, counts, normalization and the
/// Friedman test followed by many-to-one comparisons against `control`.
pub fn analyze(
    results: &ResultSet,
    control: &str,
    alpha: f64,
) -> Result<AnalysisReport, StatsError> {
    let summary = SummaryTable::from_records(&results.records);
    let mut report = analyze_summary(&summary, control, alpha)?;
    report.total_runs = results.records.len();
    report.failures = results
        .records
        .iter()
        .filter(|r| r.final_best_fitness.is_none())
        .map(|r| FailureNote {
            algorithm: r.algorithm.clone(),
            problem: r.problem.clone(),
            dimension: r.dimension,
            repetition: r.repetition,
            message: r
                .failure
                .clone()
                .unwrap_or_else(|| "no final fitness".into()),
        })
        .collect();
    Ok(report)
}

/// Same as [`analyze`] for an already aggregated table.
pub fn analyze_summary(
    summary: &SummaryTable,
    control: &str,
    alpha: f64,
) -> Result<AnalysisReport, StatsError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(StatsError::InvalidAlpha(alpha));
    }
    if summary.is_empty() {
        return Err(StatsError::InsufficientData(
            "no successful runs to analyze".into(),
        ));
    }
    let algorithms = summary.algorithms();
    if !algorithms.iter().any(|a| a == control) {
        return Err(StatsError::UnknownControl(control.to_string()));
    }
    let winners = best_per_problem(summary)?;
    let counts = count_best_worst(summary)?;
    let (complete, excluded_cells) = summary.complete_only();
    if complete.is_empty() {
        return Err(StatsError::InsufficientData(
            "no (problem, dimension) pair has results for every algorithm".into(),
        ));
    }
    let normalization = minmax_normalize(&complete)?;

    let (names, keys, matrix) = complete.friedman_matrix()?;
    let (friedman_result, control_mean_rank, post_hoc) = if keys.len() >= 2 {
        let fr = friedman(&matrix)?;
        let comparisons = many_to_one(&fr.mean_ranks, &names, fr.rows, control)?;
        let raw: Vec<f64> = comparisons.iter().map(|c| c.raw_p).collect();
        let adjusted = holm_adjust(&raw)?;
        let rows = comparisons
            .into_iter()
            .zip(adjusted)
            .map(|(c, adjusted_p)| {
                let j = names
                    .iter()
                    .position(|n| *n == c.algorithm)
                    .expect("known algorithm");
                PostHocRow {
                    mean_rank: fr.mean_ranks[j],
                    significant: adjusted_p < alpha,
                    algorithm: c.algorithm,
                    z: c.z,
                    raw_p: c.raw_p,
                    adjusted_p,
                    direction: c.direction,
                }
            })
            .collect();
        let c = names
            .iter()
            .position(|n| n == control)
            .expect("control present");
        let control_rank = fr.mean_ranks[c];
        (Some(fr), Some(control_rank), rows)
    } else {
        (None, None, Vec::new())
    };

    Ok(AnalysisReport {
        control: control.to_string(),
        alpha,
        algorithms,
        problems: summary.problems(),
        dimensions: summary.dimensions(),
        total_runs: summary.cells().iter().map(|c| c.runs).sum(),
        summary: summary.clone(),
        best_per_problem: winners,
        counts,
        normalization,
        friedman: friedman_result,
        control_mean_rank,
        post_hoc,
        excluded_cells,
        failures: Vec::new(),
    })
}

fn sci(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x:.3e}")
    }
}

impl AnalysisReport {
    pub fn to_json(&self) -> Result<String, StatsError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Markdown report: winners per problem, best counts, worst counts,
    /// normalized fitness with post-hoc tests, and a summary.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let dims = &self.dimensions;
        let dim_header: String = dims.iter().map(|d| format!(" d={d} |")).collect();
        let dim_rule: String = dims.iter().map(|_| "---|").collect();

        out.push_str("# Analysis report\n\n");

        out.push_str("## Best algorithm per problem\n\n");
        let _ = writeln!(out, "| Problem |{dim_header}");
        let _ = writeln!(out, "|---|{dim_rule}");
        for p in &self.problems {
            let _ = write!(out, "| {p} |");
            for &d in dims {
                match self
                    .best_per_problem
                    .iter()
                    .find(|w| &w.problem == p && w.dimension == d)
                {
                    Some(w) if w.tie => {
                        let _ = write!(out, " {} (tie) |", w.algorithm);
                    }
                    Some(w) => {
                        let _ = write!(out, " {} |", w.algorithm);
                    }
                    None => out.push_str(" - |"),
                }
            }
            out.push('\n');
        }

        for (title, worst) in [
            ("## Best-performance counts", false),
            ("## Worst-performance counts", true),
        ] {
            let _ = writeln!(out, "\n{title}\n");
            let _ = writeln!(out, "| Algorithm |{dim_header} Total |");
            let _ = writeln!(out, "|---|{dim_rule}---|");
            let total = |a: &str| {
                if worst {
                    self.counts.worst_total(a)
                } else {
                    self.counts.best_total(a)
                }
            };
            let mut order: Vec<&String> = self.counts.algorithms.iter().collect();
            order.sort_by(|a, b| total(b).cmp(&total(a)).then_with(|| a.cmp(b)));
            for a in order {
                let _ = write!(out, "| {a} |");
                for &d in dims {
                    let n = if worst {
                        self.counts.worst_count(a, d)
                    } else {
                        self.counts.best_count(a, d)
                    };
                    let _ = write!(out, " {n} |");
                }
                let _ = writeln!(out, " {} |", total(a));
            }
            let ties = if worst {
                self.counts.worst_ties
            } else {
                self.counts.best_ties
            };
            if ties > 0 {
                let _ = writeln!(out, "\n{ties} cell(s) had tied means; the lexicographically first name was counted.");
            }
        }

        let _ = writeln!(
            out,
            "\n## Normalized fitness and comparison with {}\n",
            self.control
        );
        let norm_dims = &self.normalization.dimensions;
        let norm_header: String = norm_dims.iter().map(|d| format!(" d={d} |")).collect();
        let norm_rule: String = norm_dims.iter().map(|_| "---|").collect();
        let _ = writeln!(
            out,
            "| Algorithm |{norm_header} mean | mean rank | z | p-value | adjusted p | vs {} |",
            self.control
        );
        let _ = writeln!(out, "|---|{norm_rule}---|---|---|---|---|---|");
        let mut order: Vec<usize> = (0..self.normalization.algorithms.len()).collect();
        order.sort_by(|&a, &b| {
            self.normalization.overall[a]
                .total_cmp(&self.normalization.overall[b])
                .then_with(|| {
                    self.normalization.algorithms[a].cmp(&self.normalization.algorithms[b])
                })
        });
        for i in order {
            let a = &self.normalization.algorithms[i];
            let _ = write!(out, "| {a} |");
            for v in &self.normalization.per_dimension[i] {
                let _ = write!(out, " {v:.3} |");
            }
            let _ = write!(out, " {:.3} |", self.normalization.overall[i]);
            if a == &self.control {
                match self.control_mean_rank {
                    Some(r) => {
                        let _ = writeln!(out, " {r:.2} | - | - | - | control |");
                    }
                    None => out.push_str(" - | - | - | - | control |\n"),
                }
            } else if let Some(row) = self.post_hoc.iter().find(|r| &r.algorithm == a) {
                let star = if row.significant { " *" } else { "" };
                let verdict = if row.significant {
                    row.direction.to_string()
                } else {
                    format!("{} (ns)", row.direction)
                };
                let _ = writeln!(
                    out,
                    " {:.2} | {:.3} | {} | {}{} | {} |",
                    row.mean_rank,
                    row.z,
                    sci(row.raw_p),
                    sci(row.adjusted_p),
                    star,
                    verdict
                );
            } else {
                out.push_str(" - | - | - | - | - |\n");
            }
        }
        let _ = writeln!(
            out,
            "\nScores are min-max normalized mean final fitness per problem and dimension (lower is better). \
             P-values are two-sided and Holm adjusted; * marks adjusted p < {}.",
            self.alpha
        );
        if !self.normalization.degenerate.is_empty() {
            let cells: Vec<String> = self
                .normalization
                .degenerate
                .iter()
                .map(|k| format!("{} (d={})", k.problem, k.dimension))
                .collect();
            let _ = writeln!(
                out,
                "\nAll algorithms tied on: {}; these score 0.",
                cells.join(", ")
            );
        }

        out.push_str("\n## Summary\n\n");
        let _ = writeln!(
            out,
            "- Runs: {} ({} failed)\n- Algorithms: {}\n- Problems: {}\n- Dimensions: {}",
            self.total_runs,
            self.failures.len(),
            self.algorithms.len(),
            self.problems.len(),
            dims.iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        );
        match &self.friedman {
            Some(f) => {
                let _ = writeln!(
                    out,
                    "- Friedman test over {} rows and {} algorithms: chi-square = {:.4}, p = {}",
                    f.rows,
                    f.columns,
                    f.statistic,
                    sci(f.p_value)
                );
            }
            None => out.push_str(
                "- Friedman test skipped: fewer than two complete problem/dimension rows\n",
            ),
        }
        let overall_best = self
            .normalization
            .overall
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, v)| (&self.normalization.algorithms[i], *v));
        if let Some((a, v)) = overall_best {
            let _ = writeln!(out, "- Lowest mean normalized fitness: {a} ({v:.3})");
        }
        let better: Vec<&str> = self
            .post_hoc
            .iter()
            .filter(|r| r.significant && r.direction == Direction::Better)
            .map(|r| r.algorithm.as_str())
            .collect();
        let worse: Vec<&str> = self
            .post_hoc
            .iter()
            .filter(|r| r.significant && r.direction == Direction::Worse)
            .map(|r| r.algorithm.as_str())
            .collect();
        let list = |v: &[&str]| {
            if v.is_empty() {
                "none".to_string()
            } else {
                v.join(", ")
            }
        };
        let _ = writeln!(
            out,
            "- Significantly better than {}: {}",
            self.control,
            list(&better)
        );
        let _ = writeln!(
            out,
            "- Significantly worse than {}: {}",
            self.control,
            list(&worse)
        );
        if !self.excluded_cells.is_empty() {
            let cells: Vec<String> = self
                .excluded_cells
                .iter()
                .map(|k| format!("{} (d={})", k.problem, k.dimension))
                .collect();
            let _ = writeln!(
                out,
                "- Left out of normalization and ranking: {}",
                cells.join(", ")
            );
        }
        if !self.failures.is_empty() {
            out.push_str("\n### Failed runs\n\n");
            for f in &self.failures {
                let _ = writeln!(
                    out,
                    "- {} on {} (d={}), repetition {}: {}",
                    f.algorithm, f.problem, f.dimension, f.repetition, f.message
                );
            }
        }
        out
    }

    /// Writes `report.md` and `report.json` into `dir`, creating it if needed.
    pub fn write(&self, dir: impl AsRef<Path>) -> Result<(PathBuf, PathBuf), StatsError> {
        let dir = dir.as_ref();
        let io = |path: &Path| {
            let path = path.display().to_string();
            move |source| StatsError::Io { path, source }
        };
        std::fs::create_dir_all(dir).map_err(io(dir))?;
        let md = dir.join("report.md");
        let json = dir.join("report.json");
        std::fs::write(&md, self.to_markdown()).map_err(io(&md))?;
        std::fs::write(&json, self.to_json()?).map_err(io(&json))?;
        Ok((md, json))
    }
}
