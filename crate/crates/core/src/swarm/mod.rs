//! Particle swarm optimization with role-based subswarms.
//!
//! A run keeps one standard PSO swarm and hands a fixed fraction of its
//! particles a [`Role`] that replaces part of the update rule. Informed roles
//! redirect the cognitive or social term toward or away from best/worst
//! memories; uninformed roles inject uniform noise into the velocity or
//! Gaussian noise into the position.
//!
//! Randomness is drawn from a single seeded ChaCha8 stream per run, so a
//! `(problem, config, seed)` triple always reproduces the same trajectory.

mod config;
mod role;
mod state;
mod update;

pub use config::{AlgorithmConfig, ResolvedParams, Scale};
pub use role::{ParseRoleError, Role};
pub use state::{assign_roles, initialize_swarm, run, GlobalMemory, Particle, RunOutcome, Swarm};
pub use update::{
    clip_to_bounds, position_update, update_memories, velocity_update, velocity_with_draws, Draws,
};

use thiserror::Error;

/// Axis-aligned search box.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Bounds {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl Bounds {
    /// The same `[low, high]` interval in every one of `dimension` coordinates.
    pub fn uniform(dimension: usize, low: f64, high: f64) -> Self {
        Self {
            lower: vec![low; dimension],
            upper: vec![high; dimension],
        }
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    /// Widest `high - low` over all coordinates.
    pub fn width(&self) -> f64 {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(lo, hi)| hi - lo)
            .fold(0.0, f64::max)
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dimension()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| *lo <= *v && *v <= *hi)
    }

    pub fn is_valid(&self) -> bool {
        self.lower.len() == self.upper.len()
            && !self.lower.is_empty()
            && self
                .lower
                .iter()
                .zip(&self.upper)
                .all(|(lo, hi)| lo.is_finite() && hi.is_finite() && lo < hi)
    }
}

/// Something the swarm can minimize.
///
/// Implementations must be deterministic in `x` and safe to share between
/// concurrent runs.
pub trait Objective: Sync {
    fn bounds(&self) -> &Bounds;

    fn evaluate(&self, x: &[f64]) -> f64;

    fn dimension(&self) -> usize {
        self.bounds().dimension()
    }
}

/// Wraps a closure as an [`Objective`].
pub struct FnObjective<F> {
    bounds: Bounds,
    f: F,
}

impl<F> FnObjective<F>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    pub fn new(bounds: Bounds, f: F) -> Self {
        Self { bounds, f }
    }
}

impl<F> Objective for FnObjective<F>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        (self.f)(x)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SwarmError {
    #[error("invalid configuration: {field} {reason}")]
    InvalidConfig { field: &'static str, reason: String },

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("objective returned non-finite value {value} at iteration {iteration} (particle {particle})")]
    EvaluationFailure {
        iteration: u64,
        particle: usize,
        value: f64,
    },
}
