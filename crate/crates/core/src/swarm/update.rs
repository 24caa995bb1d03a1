use rand::Rng;
use rand_distr::StandardNormal;

use super::{Bounds, GlobalMemory, Particle, ResolvedParams, Role};

/// Random numbers consumed by one velocity update.
///
/// `cognitive` and `social` are single scalars in `[0, 1)` that scale the whole
/// term; `noise` is a component-wise draw from `[-1, 1)` used by the
/// noise-driven roles and empty otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct Draws {
    pub cognitive: f64,
    pub social: f64,
    pub noise: Vec<f64>,
}

impl Draws {
    /// Draws exactly what `role` needs, in the order cognitive, social, noise.
    pub fn sample<R: Rng + ?Sized>(role: Role, dimension: usize, rng: &mut R) -> Self {
        let cognitive = if role.draws_cognitive() {
            rng.random::<f64>()
        } else {
            0.0
        };
        let social = if role.draws_social() {
            rng.random::<f64>()
        } else {
            0.0
        };
        let noise = if role.draws_velocity_noise() {
            (0..dimension)
                .map(|_| 2.0 * rng.random::<f64>() - 1.0)
                .collect()
        } else {
            Vec::new()
        };
        Self {
            cognitive,
            social,
            noise,
        }
    }
}

/// Term `coef * r * (to - from)` accumulated into `out`.
#[inline]
fn add_pull(out: &mut [f64], coef: f64, to: &[f64], from: &[f64]) {
    for ((o, t), f) in out.iter_mut().zip(to).zip(from) {
        *o += coef * (t - f);
    }
}

/// New velocity of `particle` for the given draws.
pub fn velocity_with_draws(
    particle: &Particle,
    global: &GlobalMemory,
    params: &ResolvedParams,
    draws: &Draws,
) -> Vec<f64> {
    let x = &particle.position;
    let mut v: Vec<f64> = particle.velocity.iter().map(|v| params.omega * v).collect();

    let cognitive = params.c1 * draws.cognitive;
    let social = params.c2 * draws.social;
    let cognitive_role = params.role_coefficient * draws.cognitive;
    let social_role = params.role_coefficient * draws.social;

    match particle.role {
        Role::Standard | Role::Drifter | Role::Wanderer => {
            add_pull(&mut v, cognitive, &particle.best_position, x);
            add_pull(&mut v, social, &global.best_position, x);
        }
        Role::Rebel => {
            add_pull(&mut v, cognitive, &particle.best_position, x);
            add_pull(&mut v, social_role, x, &global.best_position);
        }
        Role::Rejector => {
            add_pull(&mut v, cognitive_role, x, &particle.best_position);
            add_pull(&mut v, social, &global.best_position, x);
        }
        Role::Contrarian => {
            add_pull(&mut v, cognitive, &particle.best_position, x);
            add_pull(&mut v, social_role, &global.worst_position, x);
        }
        Role::Defeatist => {
            add_pull(&mut v, cognitive_role, &particle.worst_position, x);
            add_pull(&mut v, social, &global.best_position, x);
        }
        Role::Eschewer => {
            add_pull(&mut v, cognitive, &particle.best_position, x);
            add_pull(&mut v, social_role, x, &global.worst_position);
        }
        Role::Escapist => {
            add_pull(&mut v, cognitive_role, x, &particle.worst_position);
            add_pull(&mut v, social, &global.best_position, x);
        }
        Role::Anarchic => {
            add_pull(&mut v, cognitive, &particle.best_position, x);
        }
        Role::Amnesiac => {
            add_pull(&mut v, social, &global.best_position, x);
        }
        Role::Erratic => {}
    }

    if particle.role.draws_velocity_noise() {
        for (vj, xi) in v.iter_mut().zip(&draws.noise) {
            *vj += params.lambda * xi;
        }
    }
    v
}

/// Samples the draws for the particle's role and applies its velocity rule.
pub fn velocity_update<R: Rng + ?Sized>(
    particle: &Particle,
    global: &GlobalMemory,
    params: &ResolvedParams,
    rng: &mut R,
) -> Vec<f64> {
    let draws = Draws::sample(particle.role, particle.position.len(), rng);
    velocity_with_draws(particle, global, params, &draws)
}

/// `x + v'`, plus `N(0, sigma^2)` per component for drifters. Not clipped.
pub fn position_update<R: Rng + ?Sized>(
    particle: &Particle,
    velocity: &[f64],
    params: &ResolvedParams,
    rng: &mut R,
) -> Vec<f64> {
    let mut x: Vec<f64> = particle
        .position
        .iter()
        .zip(velocity)
        .map(|(x, v)| x + v)
        .collect();
    if particle.role == Role::Drifter {
        for xj in &mut x {
            let eps: f64 = rng.sample(StandardNormal);
            *xj += params.sigma * eps;
        }
    }
    x
}

/// Projects every coordinate onto `[lower, upper]`.
pub fn clip_to_bounds(position: &mut [f64], bounds: &Bounds) {
    for ((x, lo), hi) in position.iter_mut().zip(&bounds.lower).zip(&bounds.upper) {
        *x = x.clamp(*lo, *hi);
    }
}

/// Refreshes personal and global best/worst memories with the particle's
/// current position and its `fitness`. Comparisons are strict, so ties keep
/// the older memory.
///
/// Returns the offending value if `fitness` is not finite; no memory is
/// touched in that case.
pub fn update_memories(
    particle: &mut Particle,
    global: &mut GlobalMemory,
    fitness: f64,
) -> Result<(), f64> {
    if !fitness.is_finite() {
        return Err(fitness);
    }
    if fitness < particle.best_fitness {
        particle.best_fitness = fitness;
        particle.best_position.clone_from(&particle.position);
    }
    if fitness > particle.worst_fitness {
        particle.worst_fitness = fitness;
        particle.worst_position.clone_from(&particle.position);
    }
    global.observe(&particle.position, fitness);
    Ok(())
}
