use serde::{Deserialize, Serialize};

use super::distributions::{chi_square_sf, normal_two_sided_p};
use super::StatsError;

/// Outcome of the Friedman omnibus test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FriedmanResult {
    pub statistic: f64,
    pub p_value: f64,
    /// Average rank of each column (1 = best).
    pub mean_ranks: Vec<f64>,
    pub rows: usize,
    pub columns: usize,
}

/// Direction of an algorithm relative to the control, judged by mean rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Better,
    Worse,
    Equal,
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Direction::Better => "Better",
            Direction::Worse => "Worse",
            Direction::Equal => "Equal",
        })
    }
}

/// One many-to-one comparison against the control.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub algorithm: String,
    pub z: f64,
    pub raw_p: f64,
    pub direction: Direction,
}

/// Ascending mid-ranks of `values` (ties share the average of their positions).
pub fn rank_row(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let rank = (start + end + 1) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        start = end;
    }
    ranks
}

fn tie_term(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut total = 0.0;
    let mut start = 0;
    while start < sorted.len() {
        let mut end = start + 1;
        while end < sorted.len() && sorted[end] == sorted[start] {
            end += 1;
        }
        let t = (end - start) as f64;
        total += t * t * t - t;
        start = end;
    }
    total
}

/// Friedman test on a blocks × treatments matrix (lower values rank better).
///
/// Ties receive mid-ranks and the statistic carries the usual tie correction.
/// When every row is fully tied the statistic is 0 and the p-value 1.
pub fn friedman(matrix: &[Vec<f64>]) -> Result<FriedmanResult, StatsError> {
    let n = matrix.len();
    if n < 2 {
        return Err(StatsError::InsufficientData(format!(
            "friedman needs at least 2 rows, got {n}"
        )));
    }
    let k = matrix[0].len();
    if k < 2 {
        return Err(StatsError::InsufficientData(format!(
            "friedman needs at least 2 columns, got {k}"
        )));
    }
    let mut rank_sums = vec![0.0; k];
    let mut ties = 0.0;
    for (row, values) in matrix.iter().enumerate() {
        if values.len() != k {
            return Err(StatsError::RaggedMatrix {
                row,
                expected: k,
                found: values.len(),
            });
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(StatsError::NonFinite(format!("NaN in friedman row {row}")));
        }
        for (sum, r) in rank_sums.iter_mut().zip(rank_row(values)) {
            *sum += r;
        }
        ties += tie_term(values);
    }
    let (nf, kf) = (n as f64, k as f64);
    let sum_sq: f64 = rank_sums.iter().map(|r| r * r).sum();
    let uncorrected = 12.0 / (nf * kf * (kf + 1.0)) * sum_sq - 3.0 * nf * (kf + 1.0);
    let correction = 1.0 - ties / (nf * kf * (kf * kf - 1.0));
    let (statistic, p_value) = if correction <= 1e-12 {
        (0.0, 1.0)
    } else {
        let statistic = (uncorrected / correction).max(0.0);
        (statistic, chi_square_sf(statistic, kf - 1.0))
    };
    Ok(FriedmanResult {
        statistic,
        p_value,
        mean_ranks: rank_sums.iter().map(|r| r / nf).collect(),
        rows: n,
        columns: k,
    })
}

/// Many-to-one comparison of every algorithm against `control` from Friedman mean ranks.
///
/// `z = (R_control − R_j) · sqrt(6N / (k(k+1)))`, so positive `z` means the
/// algorithm ranks better than the control. P-values are two-sided.
pub fn many_to_one(
    mean_ranks: &[f64],
    names: &[String],
    rows: usize,
    control: &str,
) -> Result<Vec<Comparison>, StatsError> {
    if mean_ranks.len() != names.len() {
        return Err(StatsError::InsufficientData(format!(
            "{} mean ranks for {} algorithms",
            mean_ranks.len(),
            names.len()
        )));
    }
    let c = names
        .iter()
        .position(|n| n == control)
        .ok_or_else(|| StatsError::UnknownControl(control.to_string()))?;
    let k = names.len() as f64;
    let scale = (6.0 * rows as f64 / (k * (k + 1.0))).sqrt();
    let control_rank = mean_ranks[c];
    Ok(names
        .iter()
        .zip(mean_ranks)
        .enumerate()
        .filter(|&(j, _)| j != c)
        .map(|(_, (name, &rank))| {
            let z = (control_rank - rank) * scale;
            let direction = if rank < control_rank {
                Direction::Better
            } else if rank > control_rank {
                Direction::Worse
            } else {
                Direction::Equal
            };
            Comparison {
                algorithm: name.clone(),
                z,
                raw_p: normal_two_sided_p(z),
                direction,
            }
        })
        .collect())
}

/// Holm step-down adjustment; the result is in the same order as the input.
pub fn holm_adjust(raw_p: &[f64]) -> Result<Vec<f64>, StatsError> {
    if let Some(&p) = raw_p.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(StatsError::InvalidProbability(p));
    }
    let m = raw_p.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| raw_p[a].total_cmp(&raw_p[b]));
    let mut adjusted = vec![0.0; m];
    let mut running = 0.0f64;
    for (i, &idx) in order.iter().enumerate() {
        running = running.max(raw_p[idx] * (m - i) as f64).min(1.0);
        adjusted[idx] = running;
    }
    Ok(adjusted)
}
