//! Exact incidence predicates on finite point sets.

mod arrangement;
mod line;
mod singular;

pub use arrangement::{
    detect_line_arrangement, detect_line_arrangement_with_budget, is_star_configuration, is_type9,
    rich_lines, ArrangementSearch, ArrangementWitness, DEFAULT_NODE_BUDGET,
};
pub use line::{are_collinear, common_conic, Line};
pub use singular::{plane_points, singular_points_over_fp, zeros_over_fp};

use crate::algebra::{Field, ProjectivePoint};
use crate::error::{Error, Result};

fn common_field(points: &[ProjectivePoint]) -> Result<Field> {
    let first = points
        .first()
        .ok_or_else(|| Error::InvalidParameter("empty point set".into()))?;
    let field = first.field();
    for p in &points[1..] {
        if p.field() != field {
            return Err(Error::FieldMismatch {
                left: field,
                right: p.field(),
            });
        }
    }
    Ok(field)
}
