use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::update::{clip_to_bounds, position_update, update_memories, velocity_update};
use super::{AlgorithmConfig, Objective, Role, SwarmError};

#[derive(Debug, Clone, PartialEq)]
pub struct Particle {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub best_position: Vec<f64>,
    pub best_fitness: f64,
    pub worst_position: Vec<f64>,
    pub worst_fitness: f64,
    pub role: Role,
}

/// All-time best and worst points seen by the swarm.
#[derive(Debug, Clone, PartialEq)]
pub struct GlobalMemory {
    pub best_position: Vec<f64>,
    pub best_fitness: f64,
    pub worst_position: Vec<f64>,
    pub worst_fitness: f64,
}

impl GlobalMemory {
    fn seeded(position: &[f64], fitness: f64) -> Self {
        Self {
            best_position: position.to_vec(),
            best_fitness: fitness,
            worst_position: position.to_vec(),
            worst_fitness: fitness,
        }
    }

    pub(crate) fn observe(&mut self, position: &[f64], fitness: f64) {
        if fitness < self.best_fitness {
            self.best_fitness = fitness;
            self.best_position.clear();
            self.best_position.extend_from_slice(position);
        }
        if fitness > self.worst_fitness {
            self.worst_fitness = fitness;
            self.worst_position.clear();
            self.worst_position.extend_from_slice(position);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Swarm {
    pub particles: Vec<Particle>,
    pub global: GlobalMemory,
    pub iteration: u64,
    pub evaluations_used: u64,
    pub rng: ChaCha8Rng,
}

/// Tags `round_half_up(fraction * n)` particles with `role` and the rest as
/// standard.
///
/// The subset comes from a full shuffle of `0..n`, so the generator advances
/// by the same amount whatever the fraction is.
pub fn assign_roles<R: Rng + ?Sized>(
    n: usize,
    fraction: f64,
    role: Role,
    rng: &mut R,
) -> Vec<Role> {
    let count = ((fraction * n as f64 + 0.5).floor().max(0.0) as usize).min(n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut roles = vec![Role::Standard; n];
    for &i in &order[..count] {
        roles[i] = role;
    }
    roles
}

fn check_problem<P: Objective + ?Sized>(problem: &P) -> Result<(), SwarmError> {
    let bounds = problem.bounds();
    if !bounds.is_valid() {
        return Err(SwarmError::InvalidProblem(
            "bounds must be finite with low < high in every dimension".into(),
        ));
    }
    Ok(())
}

/// Uniform positions, zero velocities, memories at the starting points.
pub fn initialize_swarm<P: Objective + ?Sized>(
    problem: &P,
    config: &AlgorithmConfig,
    seed: u64,
) -> Result<Swarm, SwarmError> {
    config.validate()?;
    check_problem(problem)?;
    let bounds = problem.bounds();
    let d = bounds.dimension();
    let n = config.swarm_size;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let positions: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            bounds
                .lower
                .iter()
                .zip(&bounds.upper)
                .map(|(lo, hi)| lo + (hi - lo) * rng.random::<f64>())
                .collect()
        })
        .collect();
    let roles = assign_roles(
        n,
        config.effective_role_fraction(),
        config.variant,
        &mut rng,
    );

    let mut particles = Vec::with_capacity(n);
    let mut global: Option<GlobalMemory> = None;
    for (i, (position, role)) in positions.into_iter().zip(roles).enumerate() {
        let fitness = problem.evaluate(&position);
        if !fitness.is_finite() {
            return Err(SwarmError::EvaluationFailure {
                iteration: 0,
                particle: i,
                value: fitness,
            });
        }
        match global.as_mut() {
            Some(g) => g.observe(&position, fitness),
            None => global = Some(GlobalMemory::seeded(&position, fitness)),
        }
        particles.push(Particle {
            velocity: vec![0.0; d],
            best_position: position.clone(),
            best_fitness: fitness,
            worst_position: position.clone(),
            worst_fitness: fitness,
            position,
            role,
        });
    }

    Ok(Swarm {
        particles,
        global: global.expect("swarm_size >= 2"),
        iteration: 0,
        evaluations_used: n as u64,
        rng,
    })
}

impl Swarm {
    pub fn initialize<P: Objective + ?Sized>(
        problem: &P,
        config: &AlgorithmConfig,
        seed: u64,
    ) -> Result<Self, SwarmError> {
        initialize_swarm(problem, config, seed)
    }

    /// Whether another full sweep fits in the evaluation budget.
    pub fn can_step(&self, config: &AlgorithmConfig) -> bool {
        self.evaluations_used + self.particles.len() as u64 <= config.max_evaluations
    }

    /// One sweep over the particles in index order. Global memories are
    /// refreshed right after each particle's evaluation.
    pub fn step<P: Objective + ?Sized>(
        &mut self,
        problem: &P,
        config: &AlgorithmConfig,
    ) -> Result<(), SwarmError> {
        let bounds = problem.bounds();
        let params = config.resolve(bounds);
        let iteration = self.iteration + 1;
        for i in 0..self.particles.len() {
            let particle = &self.particles[i];
            let velocity = velocity_update(particle, &self.global, &params, &mut self.rng);
            let mut position = position_update(particle, &velocity, &params, &mut self.rng);
            clip_to_bounds(&mut position, bounds);
            let fitness = problem.evaluate(&position);

            let particle = &mut self.particles[i];
            particle.velocity = velocity;
            particle.position = position;
            update_memories(particle, &mut self.global, fitness).map_err(|value| {
                SwarmError::EvaluationFailure {
                    iteration,
                    particle: i,
                    value,
                }
            })?;
        }
        self.iteration = iteration;
        self.evaluations_used += self.particles.len() as u64;
        Ok(())
    }

    pub fn best_fitness(&self) -> f64 {
        self.global.best_fitness
    }
}

/// Result of one optimization run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunOutcome {
    pub best_fitness: f64,
    pub best_position: Vec<f64>,
    pub initial_best_fitness: f64,
    /// `(iteration, global best)` with iteration 0 recorded after initialization.
    pub trajectory: Vec<(u64, f64)>,
    pub evaluations_used: u64,
    pub seed: u64,
    pub wall_time_s: f64,
}

impl RunOutcome {
    /// Equality ignoring wall time.
    pub fn same_payload(&self, other: &RunOutcome) -> bool {
        RunOutcome {
            wall_time_s: 0.0,
            ..self.clone()
        } == RunOutcome {
            wall_time_s: 0.0,
            ..other.clone()
        }
    }
}

/// Initializes a swarm and steps it until the next sweep would exceed the
/// evaluation budget.
pub fn run<P: Objective + ?Sized>(
    problem: &P,
    config: &AlgorithmConfig,
    seed: u64,
) -> Result<RunOutcome, SwarmError> {
    let start = Instant::now();
    let mut swarm = initialize_swarm(problem, config, seed)?;
    let initial_best_fitness = swarm.best_fitness();
    let mut trajectory = vec![(0, initial_best_fitness)];
    while swarm.can_step(config) {
        swarm.step(problem, config)?;
        trajectory.push((swarm.iteration, swarm.best_fitness()));
    }
    Ok(RunOutcome {
        best_fitness: swarm.global.best_fitness,
        best_position: swarm.global.best_position,
        initial_best_fitness,
        trajectory,
        evaluations_used: swarm.evaluations_used,
        seed,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}
