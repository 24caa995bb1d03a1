use serde::{Deserialize, Serialize};

use super::{Bounds, Role, SwarmError};

/// Inertia weight of the constriction-equivalent parameterization.
pub const DEFAULT_OMEGA: f64 = 0.7298;
/// Acceleration coefficient of the constriction-equivalent parameterization.
pub const DEFAULT_ACCELERATION: f64 = 1.49618;
pub const DEFAULT_ROLE_FRACTION: f64 = 0.2;
pub const DEFAULT_LAMBDA_FRACTION: f64 = 0.1;
pub const DEFAULT_SIGMA_FRACTION: f64 = 0.01;

/// A length scale given either directly or as a fraction of the search box
/// width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Absolute(f64),
    Relative(f64),
}

impl Scale {
    pub fn resolve(self, bounds: &Bounds) -> f64 {
        match self {
            Scale::Absolute(v) => v,
            Scale::Relative(f) => f * bounds.width(),
        }
    }

    fn value(self) -> f64 {
        match self {
            Scale::Absolute(v) | Scale::Relative(v) => v,
        }
    }
}

/// Variant identity plus every coefficient of the update rules.
///
/// `role_coefficient` stands in for the acceleration coefficient of whichever
/// term the variant modifies. It is unused by the noise-driven roles, which
/// are scaled by `lambda` (velocity noise) or `sigma` (position noise).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AlgorithmConfig {
    pub variant: Role,
    pub omega: f64,
    pub c1: f64,
    pub c2: f64,
    pub role_coefficient: f64,
    pub role_fraction: f64,
    pub lambda: Scale,
    pub sigma: Scale,
    pub swarm_size: usize,
    pub max_evaluations: u64,
}

impl Default for AlgorithmConfig {
    fn default() -> Self {
        Self {
            variant: Role::Standard,
            omega: DEFAULT_OMEGA,
            c1: DEFAULT_ACCELERATION,
            c2: DEFAULT_ACCELERATION,
            role_coefficient: DEFAULT_ACCELERATION,
            role_fraction: DEFAULT_ROLE_FRACTION,
            lambda: Scale::Relative(DEFAULT_LAMBDA_FRACTION),
            sigma: Scale::Relative(DEFAULT_SIGMA_FRACTION),
            swarm_size: 100,
            max_evaluations: 25_000,
        }
    }
}

impl AlgorithmConfig {
    /// Default coefficients for `variant`.
    pub fn new(variant: Role) -> Self {
        Self {
            variant,
            ..Self::default()
        }
    }

    pub fn algorithm_name(&self) -> &'static str {
        self.variant.algorithm_name()
    }

    /// Fraction of the swarm that carries the variant role.
    pub fn effective_role_fraction(&self) -> f64 {
        if self.variant == Role::Standard {
            0.0
        } else {
            self.role_fraction
        }
    }

    pub fn validate(&self) -> Result<(), SwarmError> {
        let finite = [
            ("omega", self.omega),
            ("c1", self.c1),
            ("c2", self.c2),
            ("role_coefficient", self.role_coefficient),
        ];
        for (field, value) in finite {
            if !value.is_finite() {
                return Err(SwarmError::InvalidConfig {
                    field,
                    reason: format!("must be finite, got {value}"),
                });
            }
        }
        for (field, scale) in [("lambda", self.lambda), ("sigma", self.sigma)] {
            let v = scale.value();
            if !v.is_finite() || v < 0.0 {
                return Err(SwarmError::InvalidConfig {
                    field,
                    reason: format!("must be finite and non-negative, got {v}"),
                });
            }
        }
        if !(0.0..=1.0).contains(&self.role_fraction) {
            return Err(SwarmError::InvalidConfig {
                field: "role_fraction",
                reason: format!("must lie in [0, 1], got {}", self.role_fraction),
            });
        }
        if self.swarm_size < 2 {
            return Err(SwarmError::InvalidConfig {
                field: "swarm_size",
                reason: format!("must be at least 2, got {}", self.swarm_size),
            });
        }
        if self.max_evaluations < self.swarm_size as u64 {
            return Err(SwarmError::InvalidConfig {
                field: "max_evaluations",
                reason: format!(
                    "must cover at least one sweep of {} particles, got {}",
                    self.swarm_size, self.max_evaluations
                ),
            });
        }
        Ok(())
    }

    /// Coefficients with the noise scales resolved against `bounds`.
    pub fn resolve(&self, bounds: &Bounds) -> ResolvedParams {
        ResolvedParams {
            omega: self.omega,
            c1: self.c1,
            c2: self.c2,
            role_coefficient: self.role_coefficient,
            lambda: self.lambda.resolve(bounds),
            sigma: self.sigma.resolve(bounds),
        }
    }
}

/// Update-rule coefficients in problem units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolvedParams {
    pub omega: f64,
    pub c1: f64,
    pub c2: f64,
    pub role_coefficient: f64,
    pub lambda: f64,
    pub sigma: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        for role in Role::ALL {
            AlgorithmConfig::new(role).validate().unwrap();
        }
    }

    #[test]
    fn standard_ignores_fraction() {
        let mut c = AlgorithmConfig::new(Role::Standard);
        c.role_fraction = 0.7;
        assert_eq!(c.effective_role_fraction(), 0.0);
        c.variant = Role::Rebel;
        assert_eq!(c.effective_role_fraction(), 0.7);
    }

    #[test]
    fn rejects_bad_fields() {
        let mut c = AlgorithmConfig::default();
        c.role_fraction = 1.5;
        assert!(matches!(
            c.validate(),
            Err(SwarmError::InvalidConfig {
                field: "role_fraction",
                ..
            })
        ));
        let mut c = AlgorithmConfig::default();
        c.omega = f64::NAN;
        assert!(c.validate().is_err());
        let mut c = AlgorithmConfig::default();
        c.sigma = Scale::Absolute(-1.0);
        assert!(c.validate().is_err());
        let mut c = AlgorithmConfig::default();
        c.max_evaluations = 10;
        assert!(c.validate().is_err());
    }

    #[test]
    fn relative_scale_uses_box_width() {
        let b = Bounds::uniform(3, -5.0, 5.0);
        assert_eq!(Scale::Relative(0.1).resolve(&b), 1.0);
        assert_eq!(Scale::Absolute(0.3).resolve(&b), 0.3);
    }

    #[test]
    fn toml_round_trip() {
        let text = r#"
            variant = "wanderer"
            role_fraction = 0.25
            lambda = { absolute = 0.5 }
        "#;
        let c: AlgorithmConfig = toml::from_str(text).unwrap();
        assert_eq!(c.variant, Role::Wanderer);
        assert_eq!(c.lambda, Scale::Absolute(0.5));
        assert_eq!(c.omega, DEFAULT_OMEGA);
        let back: AlgorithmConfig = toml::from_str(&toml::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
    }
}
