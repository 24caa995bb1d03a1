use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Behaviour assigned to a particle.
///
/// The variant of an algorithm is the role handed to its subswarm; the
/// remaining particles are [`Role::Standard`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Standard,
    /// Social term pushes away from the global best.
    Rebel,
    /// Cognitive term pushes away from the personal best.
    Rejector,
    /// Social term pulls toward the global worst.
    Contrarian,
    /// Cognitive term pulls toward the personal worst.
    Defeatist,
    /// Social term pushes away from the global worst.
    Eschewer,
    /// Cognitive term pushes away from the personal worst.
    Escapist,
    /// Social term replaced by uniform noise.
    Anarchic,
    /// Cognitive term replaced by uniform noise.
    Amnesiac,
    /// Both attraction terms replaced by uniform noise.
    Erratic,
    /// Uniform noise added on top of the standard velocity.
    Wanderer,
    /// Gaussian noise added to the position after the standard move.
    Drifter,
}

impl Role {
    pub const ALL: [Role; 12] = [
        Role::Standard,
        Role::Rebel,
        Role::Rejector,
        Role::Contrarian,
        Role::Defeatist,
        Role::Eschewer,
        Role::Escapist,
        Role::Anarchic,
        Role::Amnesiac,
        Role::Erratic,
        Role::Wanderer,
        Role::Drifter,
    ];

    /// Name of the algorithm whose subswarm carries this role.
    pub fn algorithm_name(self) -> &'static str {
        match self {
            Role::Standard => "PSO",
            Role::Rebel => "RebelPSO",
            Role::Rejector => "RejectorPSO",
            Role::Contrarian => "ContrarianPSO",
            Role::Defeatist => "DefeatistPSO",
            Role::Eschewer => "EschewerPSO",
            Role::Escapist => "EscapistPSO",
            Role::Anarchic => "AnarchicPSO",
            Role::Amnesiac => "AmnesiacPSO",
            Role::Erratic => "ErraticPSO",
            Role::Wanderer => "WandererPSO",
            Role::Drifter => "DrifterPSO",
        }
    }

    pub fn from_algorithm_name(name: &str) -> Option<Role> {
        Role::ALL
            .into_iter()
            .find(|r| r.algorithm_name().eq_ignore_ascii_case(name))
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Role::Standard => "standard",
            Role::Rebel => "rebel",
            Role::Rejector => "rejector",
            Role::Contrarian => "contrarian",
            Role::Defeatist => "defeatist",
            Role::Eschewer => "eschewer",
            Role::Escapist => "escapist",
            Role::Anarchic => "anarchic",
            Role::Amnesiac => "amnesiac",
            Role::Erratic => "erratic",
            Role::Wanderer => "wanderer",
            Role::Drifter => "drifter",
        }
    }

    /// Roles that steer by best/worst memories rather than noise.
    pub fn is_informed(self) -> bool {
        matches!(
            self,
            Role::Rebel
                | Role::Rejector
                | Role::Contrarian
                | Role::Defeatist
                | Role::Eschewer
                | Role::Escapist
        )
    }

    pub(crate) fn draws_cognitive(self) -> bool {
        !matches!(self, Role::Amnesiac | Role::Erratic)
    }

    pub(crate) fn draws_social(self) -> bool {
        !matches!(self, Role::Anarchic | Role::Erratic)
    }

    pub(crate) fn draws_velocity_noise(self) -> bool {
        matches!(
            self,
            Role::Anarchic | Role::Amnesiac | Role::Erratic | Role::Wanderer
        )
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown role or algorithm `{0}`")]
pub struct ParseRoleError(pub String);

impl FromStr for Role {
    type Err = ParseRoleError;

    /// Accepts role tags (`wanderer`) and algorithm names (`WandererPSO`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        Role::ALL
            .into_iter()
            .find(|r| r.as_str().eq_ignore_ascii_case(s))
            .or_else(|| Role::from_algorithm_name(s))
            .ok_or_else(|| ParseRoleError(s.to_string()))
    }
}
