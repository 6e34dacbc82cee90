//! Seeded generators for the configuration families, and the point-set
//! file format shared by every command.
//!
//! Every generator is a pure function of its parameters and seed. Retry
//! loops draw attempt `i` from ChaCha stream `i` of the seed.

mod families;
mod io;
mod nodal;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use families::{
    collinear, dual_hesse, general, nagata16, on_conic, star, star_minus_one, type9,
    DEFAULT_HEIGHT, TYPE9_DEFAULT,
};
pub use io::{PointSet, SCHEMA};
pub use nodal::{rational_nodal_nodes, two_nodal_union, NodalCurve, NodalUnion};

use crate::algebra::{Field, HomoPoly, ProjectivePoint};
use crate::error::{Error, Result};
use crate::geometry::Line;

pub const DEFAULT_NODAL_PRIME: u64 = 31;
pub const DEFAULT_HESSE_PRIME: u64 = 31;
pub const DEFAULT_MAX_RETRIES: u32 = 4000;

pub(crate) fn attempt_rng(seed: u64, attempt: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(attempt);
    rng
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Collinear,
    OnConic,
    General,
    Star,
    StarMinusOne,
    DualHesse,
    Type9,
    Nagata16,
    NodalCurveNodes,
    TwoNodalUnion,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::Collinear,
        Family::OnConic,
        Family::General,
        Family::Star,
        Family::StarMinusOne,
        Family::DualHesse,
        Family::Type9,
        Family::Nagata16,
        Family::NodalCurveNodes,
        Family::TwoNodalUnion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Collinear => "collinear",
            Family::OnConic => "on_conic",
            Family::General => "general",
            Family::Star => "star",
            Family::StarMinusOne => "star_minus_one",
            Family::DualHesse => "dual_hesse",
            Family::Type9 => "type9",
            Family::Nagata16 => "nagata16",
            Family::NodalCurveNodes => "nodal_curve_nodes",
            Family::TwoNodalUnion => "two_nodal_union",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family '{s}'")))
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A family tag plus whichever parameters it reads. Missing parameters take
/// the family defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigSpec {
    pub family: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d2: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_retries: Option<u32>,
}

impl ConfigSpec {
    pub fn new(family: Family) -> ConfigSpec {
        ConfigSpec {
            family: Some(family),
            ..ConfigSpec::default()
        }
    }

    fn need<T: Copy>(&self, v: Option<T>, name: &str) -> Result<T> {
        v.ok_or_else(|| {
            Error::InvalidParameter(format!(
                "family {} needs parameter --{name}",
                self.family.map_or("?", Family::name)
            ))
        })
    }
}

/// Generator output. `lines` and `curves` hold the construction data when
/// the family has any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Configuration {
    pub family: Family,
    pub field: Field,
    pub points: Vec<ProjectivePoint>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub lines: Vec<Line>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub curves: Vec<HomoPoly>,
    /// Attempts used by retrying generators.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attempts: Option<u32>,
}

impl Configuration {
    fn plain(family: Family, field: Field, points: Vec<ProjectivePoint>) -> Configuration {
        Configuration {
            family,
            field,
            points,
            lines: Vec::new(),
            curves: Vec::new(),
            attempts: None,
        }
    }

    pub fn point_set(&self) -> PointSet {
        PointSet::from_points(self.field, &self.points)
    }
}

/// Runs the generator named by `spec`. Retrying generators that exhaust
/// their budget return `None`.
pub fn generate(spec: &ConfigSpec) -> Result<Option<Configuration>> {
    let family = spec
        .family
        .ok_or_else(|| Error::InvalidParameter("no family given".into()))?;
    let seed = spec.seed.unwrap_or(0);
    let height = spec.height.unwrap_or(DEFAULT_HEIGHT);
    let retries = spec.max_retries.unwrap_or(DEFAULT_MAX_RETRIES);
    let q = Field::Rational;
    let config = match family {
        Family::Collinear => Configuration::plain(family, q, collinear(spec.need(spec.r, "r")?)?),
        Family::OnConic => Configuration::plain(family, q, on_conic(spec.need(spec.r, "r")?)?),
        Family::General => {
            Configuration::plain(family, q, general(spec.need(spec.r, "r")?, seed, height)?)
        }
        Family::Nagata16 => Configuration::plain(family, q, nagata16(seed)?),
        Family::Star => {
            let (points, lines) = star(spec.need(spec.p, "p")?, seed, height)?;
            Configuration {
                lines,
                ..Configuration::plain(family, q, points)
            }
        }
        Family::StarMinusOne => Configuration::plain(
            family,
            q,
            star_minus_one(spec.need(spec.d, "d")? as usize, seed, height)?,
        ),
        Family::DualHesse => {
            let prime = spec.prime.unwrap_or(DEFAULT_HESSE_PRIME);
            let (points, lines) = dual_hesse(prime)?;
            Configuration {
                lines,
                ..Configuration::plain(family, Field::prime(prime)?, points)
            }
        }
        Family::Type9 => Configuration::plain(family, q, type9(spec.seed)?),
        Family::NodalCurveNodes => {
            let prime = spec.prime.unwrap_or(DEFAULT_NODAL_PRIME);
            let d = spec.need(spec.d, "d")?;
            match rational_nodal_nodes(d, prime, seed, retries)? {
                None => return Ok(None),
                Some(c) => Configuration {
                    curves: vec![c.curve],
                    attempts: Some(c.attempts),
                    ..Configuration::plain(family, Field::prime(prime)?, c.nodes)
                },
            }
        }
        Family::TwoNodalUnion => {
            let prime = spec.prime.unwrap_or(DEFAULT_NODAL_PRIME);
            let d1 = spec.need(spec.d, "d")?;
            let d2 = spec.d2.unwrap_or(d1);
            match two_nodal_union(d1, d2, prime, seed, retries)? {
                None => return Ok(None),
                Some(u) => Configuration {
                    curves: u.curves.to_vec(),
                    attempts: Some(u.attempts),
                    ..Configuration::plain(family, Field::prime(prime)?, u.points)
                },
            }
        }
    };
    Ok(Some(config))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_json_round_trip() {
        let spec: ConfigSpec = serde_json::from_str(r#"{"family":"star","p":4,"seed":3}"#).unwrap();
        assert_eq!(spec.family, Some(Family::Star));
        assert_eq!(spec.p, Some(4));
        let back: ConfigSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn family_names_parse() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("hesse".parse::<Family>().is_err());
    }

    #[test]
    fn missing_parameter_is_an_error() {
        assert!(generate(&ConfigSpec::new(Family::Star)).is_err());
        assert!(generate(&ConfigSpec::default()).is_err());
    }

    #[test]
    fn generation_is_deterministic() {
        let spec = ConfigSpec {
            r: Some(7),
            seed: Some(11),
            ..ConfigSpec::new(Family::General)
        };
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
    }
}
