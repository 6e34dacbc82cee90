use std::fmt;

use serde::{Serialize, Serializer};

use super::common_field;
use crate::algebra::{HomoPoly, ProjectivePoint, Scalar};
use crate::error::{Error, Result};
use crate::linsys::{kernel_basis, FatPointScheme};

/// A line `a x + b y + c z = 0` with first nonzero coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    coeffs: [Scalar; 3],
}

impl Line {
    pub fn new(coeffs: [Scalar; 3]) -> Result<Line> {
        let field = coeffs[0].field();
        for c in &coeffs[1..] {
            field.check_same(c.field())?;
        }
        let lead = coeffs
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| Error::InvalidParameter("zero line".into()))?;
        let scale = coeffs[lead].inv()?;
        Ok(Line {
            coeffs: coeffs.map(|c| &c * &scale),
        })
    }

    /// The line joining two distinct points.
    pub fn through(a: &ProjectivePoint, b: &ProjectivePoint) -> Result<Line> {
        Line::new(ProjectivePoint::cross(a.coords(), b.coords()))
            .map_err(|_| Error::InvalidParameter(format!("{a} and {b} do not span a line")))
    }

    pub fn coeffs(&self) -> &[Scalar; 3] {
        &self.coeffs
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        ProjectivePoint::dot(&self.coeffs, p.coords()).is_zero()
    }

    /// Intersection point with another line; `None` if they coincide.
    pub fn meet(&self, other: &Line) -> Option<ProjectivePoint> {
        ProjectivePoint::new(ProjectivePoint::cross(&self.coeffs, &other.coeffs)).ok()
    }

    pub fn to_poly(&self) -> HomoPoly {
        HomoPoly::linear(&self.coeffs)
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl Serialize for Line {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

/// A line containing every point, if one exists. A single point gets the
/// line joining it to the first coordinate vertex distinct from it.
pub fn are_collinear(points: &[ProjectivePoint]) -> Result<Option<Line>> {
    let field = common_field(points)?;
    let first = &points[0];
    let line = match points.iter().find(|p| *p != first) {
        Some(second) => Line::through(first, second)?,
        None => {
            let vertex = (0..3)
                .map(|i| {
                    let mut c = [0; 3];
                    c[i] = 1;
                    ProjectivePoint::from_ints(field, c).expect("nonzero")
                })
                .find(|v| v != first)
                .expect("at most one vertex equals the point");
            Line::through(first, &vertex)?
        }
    };
    Ok(points.iter().all(|p| line.contains(p)).then_some(line))
}

/// A conic, possibly degenerate, through every point, if one exists.
pub fn common_conic(points: &[ProjectivePoint]) -> Result<Option<HomoPoly>> {
    let field = common_field(points)?;
    let scheme = FatPointScheme::uniform(field, points, 1)?;
    Ok(kernel_basis(&scheme, 2)?.into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, Order};

    const Q: Field = Field::Rational;

    fn pts(coords: &[[i64; 3]]) -> Vec<ProjectivePoint> {
        coords
            .iter()
            .map(|c| ProjectivePoint::from_ints(Q, *c).unwrap())
            .collect()
    }

    #[test]
    fn collinear_on_x_equals_zero() {
        let line = are_collinear(&pts(&[[0, 0, 1], [0, 1, 1], [0, 1, 0]]))
            .unwrap()
            .unwrap();
        assert_eq!(line.to_string(), "x");
    }

    #[test]
    fn triangle_is_not_collinear() {
        assert!(are_collinear(&pts(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
            .unwrap()
            .is_none());
    }

    #[test]
    fn single_point_line_is_deterministic() {
        let p = pts(&[[1, 0, 0]]);
        let line = are_collinear(&p).unwrap().unwrap();
        assert!(line.contains(&p[0]));
        assert_eq!(line, are_collinear(&p).unwrap().unwrap());
    }

    #[test]
    fn conic_through_parabola_points() {
        let p: Vec<_> = (0..5).map(|t| [1, t, t * t]).collect();
        let conic = common_conic(&pts(&p)).unwrap().unwrap();
        let target = HomoPoly::from_int_terms(Q, &[([0, 2, 0], 1), ([1, 0, 1], -1)]).unwrap();
        assert!(conic == target || conic == target.scale(&Scalar::from_i64(Q, -1)));
    }

    #[test]
    fn two_triples_give_line_pair() {
        let p = pts(&[[0, 0, 1], [0, 1, 1], [0, 2, 1], [1, 0, 1], [1, 1, 1], [1, 2, 1]]);
        let conic = common_conic(&p).unwrap().unwrap();
        for q in &p {
            assert_eq!(conic.order_of_vanishing(q).unwrap(), Order::Finite(1));
        }
        // x (x - z) up to sign
        let target = HomoPoly::from_int_terms(Q, &[([2, 0, 0], 1), ([1, 0, 1], -1)]).unwrap();
        assert!(conic == target || conic == target.scale(&Scalar::from_i64(Q, -1)));
    }

    #[test]
    fn meet_of_axes() {
        let x = Line::new([1, 0, 0].map(|c| Scalar::from_i64(Q, c))).unwrap();
        let y = Line::new([0, 1, 0].map(|c| Scalar::from_i64(Q, c))).unwrap();
        assert_eq!(x.meet(&y).unwrap(), pts(&[[0, 0, 1]])[0]);
        assert!(x.meet(&x).is_none());
    }
}
