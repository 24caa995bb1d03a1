//! Role-based particle swarm optimization.
//!
//! The crate is organized around four pieces:
//!
//! - [`swarm`]: the PSO state machine with twelve particle roles (standard PSO
//!   plus eleven diversity-enhancing roles that alter the cognitive, social or
//!   position update terms for a fraction of the swarm).
//! - [`benchmark`]: scalable continuous test functions, including seeded
//!   shifted and rotated instances.
//! - [`harness`]: deterministic experiment grids with parallel execution and
//!   CSV/JSON persistence.
//! - [`stats`]: per-problem summaries, best/worst counts, min–max normalized
//!   means, the Friedman test and a many-to-one post-hoc with Holm adjustment.
//!
//! ```
//! use roleswarm::benchmark::make_problem;
//! use roleswarm::swarm::{run, AlgorithmConfig, Role};
//!
//! let problem = make_problem("Sphere", 10, 0).unwrap();
//! let mut config = AlgorithmConfig::new(Role::Wanderer);
//! config.max_evaluations = 2_000;
//! config.swarm_size = 20;
//! let outcome = run(&problem, &config, 7).unwrap();
//! assert!(outcome.best_fitness <= outcome.initial_best_fitness);
//! ```

pub mod benchmark;
pub mod cli;
pub mod harness;
pub mod stats;
pub mod swarm;
mod util;
