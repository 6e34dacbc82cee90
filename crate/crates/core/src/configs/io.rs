use serde::{Deserialize, Serialize};

use crate::algebra::{Field, ProjectivePoint, Scalar};
use crate::error::{Error, Result};
use crate::linsys::check_distinct;

pub const SCHEMA: &str = "fatpoints/1";

/// Point-set file: coordinates are strings so rationals stay exact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSet {
    #[serde(default = "schema")]
    pub schema: String,
    pub field: Field,
    pub points: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mults: Option<Vec<u32>>,
}

fn schema() -> String {
    SCHEMA.to_string()
}

impl PointSet {
    pub fn from_points(field: Field, points: &[ProjectivePoint]) -> PointSet {
        PointSet {
            schema: schema(),
            field,
            points: points
                .iter()
                .map(|p| p.coords().clone().map(|c| c.to_string()))
                .collect(),
            mults: None,
        }
    }

    /// Parsed, normalized and checked for duplicates.
    pub fn to_points(&self) -> Result<Vec<ProjectivePoint>> {
        if self.schema != SCHEMA {
            return Err(Error::Parse(format!(
                "unsupported schema '{}', expected '{SCHEMA}'",
                self.schema
            )));
        }
        let points = self
            .points
            .iter()
            .map(|[a, b, c]| {
                ProjectivePoint::new([
                    Scalar::parse(self.field, a)?,
                    Scalar::parse(self.field, b)?,
                    Scalar::parse(self.field, c)?,
                ])
            })
            .collect::<Result<Vec<_>>>()?;
        check_distinct(&points)?;
        if let Some(m) = &self.mults {
            if m.len() != points.len() {
                return Err(Error::LengthMismatch {
                    points: points.len(),
                    mults: m.len(),
                });
            }
        }
        Ok(points)
    }

    pub fn from_json(s: &str) -> Result<PointSet> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("point sets serialize")
    }
}
