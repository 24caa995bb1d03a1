//! Scalable continuous benchmark problems.
//!
//! A problem is a base [`Function`] evaluated at `z = R (x - o)`, where the
//! shift `o` and the orthogonal `R` are present only for names that start
//! with "Shifted" or contain "Rotated". Both are regenerated from the
//! problem seed, so a `(name, dimension, seed)` triple identifies an instance
//! completely.

mod functions;
mod rotation;

pub use functions::Function;
pub use rotation::{random_orthogonal, Rotation};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::swarm::{Bounds, Objective};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BenchmarkError {
    #[error("unknown problem `{name}`; valid names: {}", .valid.join(", "))]
    UnknownProblem { name: String, valid: Vec<String> },

    #[error("problem `{name}` cannot be built in dimension {dimension}: {reason}")]
    InvalidDimension {
        name: String,
        dimension: usize,
        reason: String,
    },

    #[error("invalid bounds for `{0}`")]
    InvalidBounds(String),
}

/// Registry entry for one named problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemInfo {
    pub name: &'static str,
    pub function: Function,
    pub low: f64,
    pub high: f64,
    pub shifted: bool,
    pub rotated: bool,
    /// Used only for parameter tuning, not part of the comparison suite.
    pub tuning_only: bool,
}

const fn entry(name: &'static str, function: Function, low: f64, high: f64) -> ProblemInfo {
    ProblemInfo {
        name,
        function,
        low,
        high,
        shifted: false,
        rotated: false,
        tuning_only: false,
    }
}

const fn shifted(mut e: ProblemInfo) -> ProblemInfo {
    e.shifted = true;
    e
}

const fn rotated(mut e: ProblemInfo) -> ProblemInfo {
    e.rotated = true;
    e
}

const fn tuning(mut e: ProblemInfo) -> ProblemInfo {
    e.tuning_only = true;
    e
}

use Function as F;

static REGISTRY: [ProblemInfo; 35] = [
    entry("Alpine N1", F::AlpineN1, -10.0, 10.0),
    entry("Crowned Cross", F::CrownedCross, -10.0, 10.0),
    entry("Egg-Holder", F::EggHolder, -512.0, 512.0),
    entry("Expanded Shaffer", F::ExpandedSchaffer, -100.0, 100.0),
    entry("Generalized Schaffer N1", F::SchafferN1, -100.0, 100.0),
    entry("Generalized Schaffer N2", F::SchafferN2, -100.0, 100.0),
    entry("Generalized Schaffer N3", F::SchafferN3, -100.0, 100.0),
    entry("Generalized Schaffer N4", F::SchafferN4, -100.0, 100.0),
    entry("Generalized Schmidt-Vetters", F::SchmidtVetters, 0.0, 10.0),
    entry(
        "Lennard-Jones Minimum Energy Cluster",
        F::LennardJones,
        -4.0,
        4.0,
    ),
    entry("Michalewicz", F::Michalewicz, 0.0, std::f64::consts::PI),
    entry("Mishra N3", F::MishraN3, -10.0, 10.0),
    entry("Mishra N4", F::MishraN4, -10.0, 10.0),
    entry(
        "Modified Rosenbrock No.02",
        F::ModifiedRosenbrock,
        -2.0,
        2.0,
    ),
    rotated(entry("Rotated Bent Cigar", F::BentCigar, -100.0, 100.0)),
    rotated(entry("Rotated Discus", F::Discus, -100.0, 100.0)),
    rotated(entry(
        "Rotated High Conditioned Elliptic",
        F::HighConditionedElliptic,
        -100.0,
        100.0,
    )),
    entry("Salomon", F::Salomon, -100.0, 100.0),
    entry("Schwefel N20", F::SchwefelN20, -100.0, 100.0),
    entry("Schwefel N36", F::SchwefelN36, 0.0, 500.0),
    entry("Schwefel N6", F::SchwefelN6, -100.0, 100.0),
    shifted(entry("Shifted Schwefel", F::ShiftedSchwefel, -100.0, 100.0)),
    shifted(rotated(entry(
        "Shifted and Rotated HGBat",
        F::HgBat,
        -100.0,
        100.0,
    ))),
    shifted(rotated(entry(
        "Shifted and Rotated HappyCat",
        F::HappyCat,
        -100.0,
        100.0,
    ))),
    shifted(rotated(entry(
        "Shifted and Rotated Schaffer F7",
        F::SchafferF7,
        -100.0,
        100.0,
    ))),
    shifted(rotated(entry(
        "Shifted and Rotated Weierstrass",
        F::Weierstrass,
        -100.0,
        100.0,
    ))),
    entry("Shubert N3", F::ShubertN3, -10.0, 10.0),
    entry("Shubert N4", F::ShubertN4, -10.0, 10.0),
    entry("SineEnvelope", F::SineEnvelope, -100.0, 100.0),
    entry("Stochastic", F::Stochastic, -5.0, 5.0),
    entry("StretchedV", F::StretchedV, -10.0, 10.0),
    entry("Styblinski-Tang", F::StyblinskiTang, -5.0, 5.0),
    tuning(entry("Sphere", F::Sphere, -5.12, 5.12)),
    tuning(entry("Rastrigin", F::Rastrigin, -5.12, 5.12)),
    tuning(entry("Ackley", F::Ackley, -32.768, 32.768)),
];

/// All 35 registered problems: the 32-function comparison suite followed by
/// the three tuning-only functions.
pub fn list_problems() -> &'static [ProblemInfo] {
    &REGISTRY
}

pub fn problem_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|p| p.name).collect()
}

/// The 32 problems of the comparison suite.
pub fn suite_problems() -> impl Iterator<Item = &'static ProblemInfo> {
    REGISTRY.iter().filter(|p| !p.tuning_only)
}

fn normalize(name: &str) -> String {
    name.trim()
        .replace("--", "-")
        .replace(['\u{2013}', '\u{2014}'], "-")
        .to_ascii_lowercase()
}

pub fn lookup(name: &str) -> Result<&'static ProblemInfo, BenchmarkError> {
    let key = normalize(name);
    REGISTRY
        .iter()
        .find(|p| normalize(p.name) == key)
        .ok_or_else(|| BenchmarkError::UnknownProblem {
            name: name.to_string(),
            valid: problem_names().iter().map(|s| s.to_string()).collect(),
        })
}

fn check_dimension(info: &ProblemInfo, dimension: usize) -> Result<(), BenchmarkError> {
    let fail = |reason: &str| {
        Err(BenchmarkError::InvalidDimension {
            name: info.name.to_string(),
            dimension,
            reason: reason.to_string(),
        })
    };
    if dimension < 2 {
        return fail("dimension must be at least 2");
    }
    match info.function {
        F::LennardJones if dimension < 6 => fail("needs at least two atoms (6 coordinates)"),
        F::SchmidtVetters if dimension < 3 => fail("needs at least 3 coordinates"),
        _ => Ok(()),
    }
}

/// Resolves `name` and checks that it can be built in `dimension`.
pub fn check_problem(name: &str, dimension: usize) -> Result<&'static ProblemInfo, BenchmarkError> {
    let info = lookup(name)?;
    check_dimension(info, dimension)?;
    Ok(info)
}

/// A concrete, immutable problem instance.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkProblem {
    info: &'static ProblemInfo,
    dimension: usize,
    seed: u64,
    bounds: Bounds,
    shift: Option<Vec<f64>>,
    rotation: Option<Rotation>,
}

/// Builds the instance of `name` in `dimension` for `seed`.
///
/// Shifts are drawn uniformly from the central 80% of the box, then the
/// rotation is generated from the same seeded stream.
pub fn make_problem(
    name: &str,
    dimension: usize,
    seed: u64,
) -> Result<BenchmarkProblem, BenchmarkError> {
    let info = lookup(name)?;
    check_dimension(info, dimension)?;
    let bounds = Bounds::uniform(dimension, info.low, info.high);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift = info.shifted.then(|| {
        bounds
            .lower
            .iter()
            .zip(&bounds.upper)
            .map(|(lo, hi)| {
                let margin = 0.1 * (hi - lo);
                rng.random_range(lo + margin..hi - margin)
            })
            .collect()
    });
    let rotation = info.rotated.then(|| random_orthogonal(dimension, &mut rng));
    Ok(BenchmarkProblem {
        info,
        dimension,
        seed,
        bounds,
        shift,
        rotation,
    })
}

/// Closed-form optimum of the named problem.
///
/// Shifted problems report the optimal value only; their optimizer depends
/// on the seed and is available from [`BenchmarkProblem::known_optimum`].
pub fn known_optimum(name: &str, dimension: usize) -> Result<OptimumInfo, BenchmarkError> {
    let info = lookup(name)?;
    Ok(optimum_for(info, dimension, None))
}

fn optimum_for(info: &ProblemInfo, dimension: usize, shift: Option<&[f64]>) -> OptimumInfo {
    let Some((z_star, value)) = info.function.optimum(dimension) else {
        return OptimumInfo::default();
    };
    let at_origin = z_star.iter().all(|&v| v == 0.0);
    let position = match (info.shifted, info.rotated) {
        (false, false) => Some(z_star),
        // R (x - o) = 0 iff x = o.
        (true, _) if at_origin => shift.map(<[f64]>::to_vec),
        (false, true) if at_origin => Some(z_star),
        _ => None,
    };
    OptimumInfo {
        position,
        value: Some(value),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct OptimumInfo {
    pub position: Option<Vec<f64>>,
    pub value: Option<f64>,
}

impl OptimumInfo {
    pub fn is_empty(&self) -> bool {
        self.position.is_none() && self.value.is_none()
    }
}

/// Serializable identity of a problem instance. Shift and rotation are not
/// stored; they regenerate from the seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemDescriptor {
    pub name: String,
    pub dimension: usize,
    pub seed: u64,
    pub bounds: Bounds,
}

impl BenchmarkProblem {
    pub fn name(&self) -> &'static str {
        self.info.name
    }

    pub fn info(&self) -> &'static ProblemInfo {
        self.info
    }

    pub fn function(&self) -> Function {
        self.info.function
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn shift(&self) -> Option<&[f64]> {
        self.shift.as_deref()
    }

    pub fn rotation(&self) -> Option<&Rotation> {
        self.rotation.as_ref()
    }

    /// Replaces the default box, e.g. for experiments on a smaller domain.
    pub fn with_bounds(mut self, bounds: Bounds) -> Result<Self, BenchmarkError> {
        if !bounds.is_valid() || bounds.dimension() != self.dimension {
            return Err(BenchmarkError::InvalidBounds(self.info.name.to_string()));
        }
        self.bounds = bounds;
        Ok(self)
    }

    pub fn known_optimum(&self) -> OptimumInfo {
        optimum_for(self.info, self.dimension, self.shift.as_deref())
    }

    /// `R (x - o)` with absent pieces treated as identity and zero.
    pub fn transform(&self, x: &[f64]) -> Vec<f64> {
        let centered: Vec<f64> = match &self.shift {
            Some(o) => x.iter().zip(o).map(|(a, b)| a - b).collect(),
            None => x.to_vec(),
        };
        match &self.rotation {
            Some(r) => r.apply(&centered),
            None => centered,
        }
    }

    /// # Panics
    /// If `x.len()` differs from the problem dimension.
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        assert_eq!(
            x.len(),
            self.dimension,
            "dimension mismatch evaluating {}",
            self.info.name
        );
        if self.shift.is_none() && self.rotation.is_none() {
            return self.info.function.eval_seeded(x, self.seed);
        }
        self.info
            .function
            .eval_seeded(&self.transform(x), self.seed)
    }

    pub fn descriptor(&self) -> ProblemDescriptor {
        ProblemDescriptor {
            name: self.info.name.to_string(),
            dimension: self.dimension,
            seed: self.seed,
            bounds: self.bounds.clone(),
        }
    }

    pub fn from_descriptor(d: &ProblemDescriptor) -> Result<Self, BenchmarkError> {
        let p = make_problem(&d.name, d.dimension, d.seed)?;
        if p.bounds == d.bounds {
            Ok(p)
        } else {
            p.with_bounds(d.bounds.clone())
        }
    }
}

impl Objective for BenchmarkProblem {
    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        BenchmarkProblem::evaluate(self, x)
    }

    fn dimension(&self) -> usize {
        self.dimension
    }
}
