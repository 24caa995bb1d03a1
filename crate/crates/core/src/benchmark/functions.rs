//! Analytic test functions evaluated in the transformed space `z`.
//!
//! Two-variable classics are generalized by summing over consecutive
//! coordinate pairs `(z[i], z[i+1])`, Schmidt–Vetters over consecutive
//! triples. The exact formula per function is listed in `FUNCTIONS.md`.

use std::f64::consts::{E, PI};

use crate::util::{mix64, SplitMix64};

/// Optimum of `x * sin(sqrt(x))` on `[0, 500]`.
pub(crate) const SCHWEFEL_ARGMAX: f64 = 420.968_746_359_982;
pub(crate) const SCHWEFEL_CONSTANT: f64 = 418.982_887_272_433_7;
/// 1-d minimizer and minimum of `0.5 * (x^4 - 16 x^2 + 5 x)`.
pub(crate) const STYBLINSKI_TANG_ARGMIN: f64 = -2.903_534_027_771_177;
pub(crate) const STYBLINSKI_TANG_MIN: f64 = -39.166_165_703_771_415;

const WEIERSTRASS_A: f64 = 0.5;
const WEIERSTRASS_KMAX: i32 = 20;

/// Underlying analytic function of a benchmark problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Function {
    Sphere,
    Rastrigin,
    Ackley,
    AlpineN1,
    CrownedCross,
    EggHolder,
    ExpandedSchaffer,
    SchafferN1,
    SchafferN2,
    SchafferN3,
    SchafferN4,
    SchmidtVetters,
    LennardJones,
    Michalewicz,
    MishraN3,
    MishraN4,
    ModifiedRosenbrock,
    BentCigar,
    Discus,
    HighConditionedElliptic,
    Salomon,
    SchwefelN20,
    SchwefelN36,
    SchwefelN6,
    /// CEC-style Schwefel with internal offset so the optimum sits at `z = 0`.
    ShiftedSchwefel,
    HgBat,
    HappyCat,
    SchafferF7,
    Weierstrass,
    ShubertN3,
    ShubertN4,
    SineEnvelope,
    Stochastic,
    StretchedV,
    StyblinskiTang,
}

fn pairs(z: &[f64]) -> impl Iterator<Item = (f64, f64)> + '_ {
    z.windows(2).map(|w| (w[0], w[1]))
}

fn schaffer_frame(numerator: f64, r2: f64) -> f64 {
    let den = 1.0 + 0.001 * r2;
    0.5 + (numerator - 0.5) / (den * den)
}

fn schaffer_f6(x: f64, y: f64) -> f64 {
    let r2 = x * x + y * y;
    schaffer_frame(r2.sqrt().sin().powi(2), r2)
}

impl Function {
    /// Evaluates at `z`. `stochastic_seed` only affects [`Function::Stochastic`].
    pub fn eval_seeded(self, z: &[f64], stochastic_seed: u64) -> f64 {
        let d = z.len() as f64;
        match self {
            Function::Sphere => z.iter().map(|v| v * v).sum(),
            Function::Rastrigin => {
                10.0 * d
                    + z.iter()
                        .map(|v| v * v - 10.0 * (2.0 * PI * v).cos())
                        .sum::<f64>()
            }
            Function::Ackley => {
                let sq = z.iter().map(|v| v * v).sum::<f64>() / d;
                let cs = z.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / d;
                -20.0 * (-0.2 * sq.sqrt()).exp() - cs.exp() + 20.0 + E
            }
            Function::AlpineN1 => z.iter().map(|v| (v * v.sin() + 0.1 * v).abs()).sum(),
            Function::CrownedCross => pairs(z)
                .map(|(x, y)| {
                    let g = (100.0 - (x * x + y * y).sqrt() / PI).abs().exp();
                    0.0001 * ((x.sin() * y.sin() * g).abs() + 1.0).powf(0.1)
                })
                .sum(),
            Function::EggHolder => pairs(z)
                .map(|(x, y)| {
                    -(y + 47.0) * (y + x / 2.0 + 47.0).abs().sqrt().sin()
                        - x * (x - (y + 47.0)).abs().sqrt().sin()
                })
                .sum(),
            Function::ExpandedSchaffer => {
                let n = z.len();
                (0..n).map(|i| schaffer_f6(z[i], z[(i + 1) % n])).sum()
            }
            Function::SchafferN1 => pairs(z)
                .map(|(x, y)| {
                    let r2 = x * x + y * y;
                    schaffer_frame((r2 * r2).sin().powi(2), r2)
                })
                .sum(),
            Function::SchafferN2 => pairs(z)
                .map(|(x, y)| {
                    let r2 = x * x + y * y;
                    schaffer_frame((x * x - y * y).sin().powi(2), r2)
                })
                .sum(),
            Function::SchafferN3 => pairs(z)
                .map(|(x, y)| {
                    let r2 = x * x + y * y;
                    schaffer_frame((x * x - y * y).abs().cos().sin().powi(2), r2)
                })
                .sum(),
            Function::SchafferN4 => pairs(z)
                .map(|(x, y)| {
                    let r2 = x * x + y * y;
                    schaffer_frame((x * x - y * y).abs().sin().cos().powi(2), r2)
                })
                .sum(),
            Function::SchmidtVetters => z
                .windows(3)
                .map(|w| {
                    let (a, b, c) = (w[0], w[1], w[2]);
                    let bell = if b == 0.0 {
                        0.0
                    } else {
                        (-((a + c) / b - 2.0).powi(2)).exp()
                    };
                    -(1.0 / (1.0 + (a - b).powi(2)) + ((PI * b + c) / 2.0).sin() + bell)
                })
                .sum(),
            Function::LennardJones => lennard_jones(z),
            Function::Michalewicz => -z
                .iter()
                .enumerate()
                .map(|(i, &x)| x.sin() * ((i as f64 + 1.0) * x * x / PI).sin().powi(20))
                .sum::<f64>(),
            Function::MishraN3 => pairs(z)
                .map(|(x, y)| (x * x + y).abs().sqrt().cos().abs().sqrt() + 0.01 * (x + y))
                .sum(),
            Function::MishraN4 => pairs(z)
                .map(|(x, y)| (x * x + y).abs().sqrt().sin().abs().sqrt() + 0.01 * (x + y))
                .sum(),
            Function::ModifiedRosenbrock => pairs(z)
                .map(|(x, y)| {
                    74.0 + 100.0 * (y - x * x).powi(2) + (1.0 - x).powi(2)
                        - 400.0 * (-((x + 1.0).powi(2) + (y + 1.0).powi(2)) / 0.1).exp()
                })
                .sum(),
            Function::BentCigar => z[0] * z[0] + 1e6 * z[1..].iter().map(|v| v * v).sum::<f64>(),
            Function::Discus => 1e6 * z[0] * z[0] + z[1..].iter().map(|v| v * v).sum::<f64>(),
            Function::HighConditionedElliptic => {
                let denom = (z.len() - 1).max(1) as f64;
                z.iter()
                    .enumerate()
                    .map(|(i, v)| 1e6f64.powf(i as f64 / denom) * v * v)
                    .sum()
            }
            Function::Salomon => {
                let r = z.iter().map(|v| v * v).sum::<f64>().sqrt();
                1.0 - (2.0 * PI * r).cos() + 0.1 * r
            }
            Function::SchwefelN20 => z.iter().map(|v| v.abs()).sum(),
            Function::SchwefelN36 => pairs(z)
                .map(|(x, y)| -x * y * (72.0 - 2.0 * x - 2.0 * y))
                .sum(),
            Function::SchwefelN6 => pairs(z)
                .map(|(x, y)| (x + 2.0 * y - 7.0).abs().max((2.0 * x + y - 5.0).abs()))
                .sum(),
            Function::ShiftedSchwefel => {
                let n = z.len() as f64;
                SCHWEFEL_CONSTANT * n
                    - z.iter()
                        .map(|v| schwefel_term(10.0 * v + SCHWEFEL_ARGMAX, n))
                        .sum::<f64>()
            }
            Function::HgBat => {
                let (r2, s) = hg_sums(z);
                (r2 * r2 - s * s).abs().sqrt() + (0.5 * r2 + s) / d + 0.5
            }
            Function::HappyCat => {
                let (r2, s) = hg_sums(z);
                (r2 - d).abs().powf(0.25) + (0.5 * r2 + s) / d + 0.5
            }
            Function::SchafferF7 => {
                let n = (z.len() - 1).max(1) as f64;
                let mean = pairs(z)
                    .map(|(x, y)| {
                        let s = (x * x + y * y).sqrt();
                        let rs = s.sqrt();
                        rs + rs * (50.0 * s.powf(0.2)).sin().powi(2)
                    })
                    .sum::<f64>()
                    / n;
                mean * mean
            }
            Function::Weierstrass => weierstrass(z),
            Function::ShubertN3 => z
                .iter()
                .map(|&x| {
                    (1..=5)
                        .map(|j| {
                            let j = j as f64;
                            j * ((j + 1.0) * x + j).sin()
                        })
                        .sum::<f64>()
                })
                .sum(),
            Function::ShubertN4 => z
                .iter()
                .map(|&x| {
                    (1..=5)
                        .map(|j| {
                            let j = j as f64;
                            j * ((j + 1.0) * x + j).cos()
                        })
                        .sum::<f64>()
                })
                .sum(),
            Function::SineEnvelope => -pairs(z)
                .map(|(x, y)| {
                    let r2 = x * x + y * y;
                    let den = 0.001 * r2 + 1.0;
                    (r2.sqrt() - 0.5).sin().powi(2) / (den * den) + 0.5
                })
                .sum::<f64>(),
            Function::Stochastic => {
                let mut weights = SplitMix64::new(stochastic_key(stochastic_seed, z));
                z.iter()
                    .enumerate()
                    .map(|(i, x)| weights.next_f64() * (x - 1.0 / (i as f64 + 1.0)).abs())
                    .sum()
            }
            Function::StretchedV => pairs(z)
                .map(|(x, y)| {
                    let t = x * x + y * y;
                    t.powf(0.25) * ((50.0 * t.powf(0.1)).sin().powi(2) + 0.1)
                })
                .sum(),
            Function::StyblinskiTang => {
                0.5 * z
                    .iter()
                    .map(|x| x.powi(4) - 16.0 * x * x + 5.0 * x)
                    .sum::<f64>()
            }
        }
    }

    pub fn eval(self, z: &[f64]) -> f64 {
        self.eval_seeded(z, 0)
    }

    /// Optimum in `z` space, when one is known in closed form for `dimension`.
    pub fn optimum(self, dimension: usize) -> Option<(Vec<f64>, f64)> {
        let d = dimension;
        let at = |x: f64, value: f64| Some((vec![x; d], value));
        match self {
            Function::Sphere
            | Function::Rastrigin
            | Function::Ackley
            | Function::AlpineN1
            | Function::ExpandedSchaffer
            | Function::SchafferN1
            | Function::SchafferN2
            | Function::BentCigar
            | Function::Discus
            | Function::HighConditionedElliptic
            | Function::Salomon
            | Function::SchwefelN20
            | Function::ShiftedSchwefel
            | Function::HgBat
            | Function::HappyCat
            | Function::SchafferF7
            | Function::Weierstrass
            | Function::StretchedV => at(0.0, 0.0),
            Function::CrownedCross => at(0.0, 0.0001 * (d as f64 - 1.0)),
            Function::SchmidtVetters => at(PI / (1.0 + PI), -3.0 * (d as f64 - 2.0)),
            Function::SchwefelN36 => at(12.0, -3456.0 * (d as f64 - 1.0)),
            Function::StyblinskiTang => at(STYBLINSKI_TANG_ARGMIN, STYBLINSKI_TANG_MIN * d as f64),
            Function::Stochastic => Some(((1..=d).map(|i| 1.0 / i as f64).collect(), 0.0)),
            Function::EggHolder
            | Function::SchafferN3
            | Function::SchafferN4
            | Function::LennardJones
            | Function::Michalewicz
            | Function::MishraN3
            | Function::MishraN4
            | Function::ModifiedRosenbrock
            | Function::SchwefelN6
            | Function::ShubertN3
            | Function::ShubertN4
            | Function::SineEnvelope => None,
        }
    }

    /// Whether `f(z) = sum_i f([z_i])`.
    pub fn is_separable(self) -> bool {
        matches!(
            self,
            Function::Sphere
                | Function::Rastrigin
                | Function::AlpineN1
                | Function::SchwefelN20
                | Function::Weierstrass
                | Function::ShubertN3
                | Function::ShubertN4
                | Function::StyblinskiTang
        )
    }
}

fn hg_sums(z: &[f64]) -> (f64, f64) {
    z.iter().fold((0.0, 0.0), |(r2, s), &v| {
        let y = 0.05 * v - 1.0;
        (r2 + y * y, s + y)
    })
}

fn schwefel_term(y: f64, n: f64) -> f64 {
    if y > 500.0 {
        let t = 500.0 - y % 500.0;
        t * t.abs().sqrt().sin() - (y - 500.0).powi(2) / (10_000.0 * n)
    } else if y < -500.0 {
        let t = y.abs() % 500.0 - 500.0;
        t * t.abs().sqrt().sin() - (y + 500.0).powi(2) / (10_000.0 * n)
    } else {
        y * y.abs().sqrt().sin()
    }
}

/// `Σ_k a^k cos(3^k θ)` given `cos θ`, using `cos 3θ = 4cos³θ − 3cos θ`.
fn weierstrass_series(cos_theta: f64) -> f64 {
    let mut c = cos_theta;
    let mut ak = 1.0;
    let mut sum = 0.0;
    for _ in 0..=WEIERSTRASS_KMAX {
        sum += ak * c;
        ak *= WEIERSTRASS_A;
        c = (c * (4.0 * c * c - 3.0)).clamp(-1.0, 1.0);
    }
    sum
}

fn weierstrass(z: &[f64]) -> f64 {
    let bias = weierstrass_series(-1.0);
    let sum: f64 = z
        .iter()
        .map(|v| weierstrass_series((2.0 * PI * (0.005 * v + 0.5)).cos()))
        .sum();
    sum - z.len() as f64 * bias
}

/// Squared distances below this are clamped so coincident atoms stay finite.
const LJ_MIN_R2: f64 = 1e-6;

fn lennard_jones(z: &[f64]) -> f64 {
    let atoms: Vec<&[f64]> = z.chunks_exact(3).collect();
    let mut energy = 0.0;
    for i in 0..atoms.len() {
        for j in (i + 1)..atoms.len() {
            let r2 = atoms[i]
                .iter()
                .zip(atoms[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .max(LJ_MIN_R2);
            let inv6 = 1.0 / (r2 * r2 * r2);
            energy += 4.0 * (inv6 * inv6 - inv6);
        }
    }
    energy
}

fn stochastic_key(seed: u64, z: &[f64]) -> u64 {
    z.iter().fold(mix64(seed ^ 0x5354_4f43_4841_5354), |h, v| {
        mix64(h ^ v.to_bits())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn weierstrass_recurrence_matches_direct_sum() {
        let mut rng = crate::util::SplitMix64::new(99);
        for _ in 0..200 {
            let y = rng.next_f64() * 2.0 - 0.5;
            let direct: f64 = (0..=WEIERSTRASS_KMAX)
                .map(|k| WEIERSTRASS_A.powi(k) * (2.0 * PI * 3f64.powi(k) * y).cos())
                .sum();
            let fast = weierstrass_series((2.0 * PI * y).cos());
            assert!((direct - fast).abs() < 1e-9, "y={y}: {direct} vs {fast}");
        }
        assert_eq!(weierstrass(&[0.0; 100]), 0.0);
    }

    #[test]
    fn classic_minima() {
        assert_eq!(Function::Sphere.eval(&[0.0; 10]), 0.0);
        assert_eq!(Function::Rastrigin.eval(&[0.0; 100]), 0.0);
        assert!(Function::Ackley.eval(&[0.0; 50]).abs() < 1e-12);
        assert!(Function::Weierstrass.eval(&[0.0; 30]).abs() < 1e-9);
        assert!(Function::ShiftedSchwefel.eval(&[0.0; 1000]).abs() < 1e-6);
    }

    #[test]
    fn two_dimensional_references() {
        // Literature minima of the 2-d forms.
        assert!(close(
            Function::EggHolder.eval(&[512.0, 404.2319]),
            -959.6407,
            1e-6
        ));
        assert!(close(
            Function::SchafferN3.eval(&[0.0, 1.253115]),
            0.00156685,
            1e-4
        ));
        assert!(close(
            Function::SchafferN4.eval(&[0.0, 1.253115]),
            0.292579,
            1e-5
        ));
        assert!(close(Function::SchwefelN6.eval(&[1.0, 3.0]), 0.0, 1e-12));
        assert!(close(
            Function::ModifiedRosenbrock.eval(&[-0.9, -0.95]),
            34.37124,
            1e-3
        ));
    }

    #[test]
    fn lennard_jones_dimer_and_trimer() {
        let r = 2f64.powf(1.0 / 6.0);
        assert!(close(
            Function::LennardJones.eval(&[0.0, 0.0, 0.0, r, 0.0, 0.0]),
            -1.0,
            1e-12
        ));
        let h = r * 3f64.sqrt() / 2.0;
        let tri = [0.0, 0.0, 0.0, r, 0.0, 0.0, r / 2.0, h, 0.0];
        assert!(close(Function::LennardJones.eval(&tri), -3.0, 1e-12));
        // Coincident atoms stay finite.
        assert!(Function::LennardJones.eval(&[1.0; 6]).is_finite());
    }

    #[test]
    fn stochastic_is_pure_in_x() {
        let x = [0.3, -1.0, 2.0];
        let a = Function::Stochastic.eval_seeded(&x, 4);
        assert_eq!(a, Function::Stochastic.eval_seeded(&x, 4));
        assert_ne!(a, Function::Stochastic.eval_seeded(&x, 5));
        assert_eq!(
            Function::Stochastic.eval_seeded(&[1.0, 0.5, 1.0 / 3.0], 4),
            0.0
        );
    }

    #[test]
    fn schmidt_vetters_zero_denominator_is_finite() {
        assert!(Function::SchmidtVetters.eval(&[0.0, 0.0, 0.0]).is_finite());
        assert!(Function::SchmidtVetters
            .eval(&[10.0, 0.0, 10.0])
            .is_finite());
    }
}
