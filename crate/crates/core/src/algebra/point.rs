use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// A point of the projective plane, stored as its canonical representative:
/// the last nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: [Scalar; 3],
}

impl ProjectivePoint {
    pub fn new(coords: [Scalar; 3]) -> Result<ProjectivePoint> {
        let field = coords[0].field();
        for c in &coords[1..] {
            field.check_same(c.field())?;
        }
        let pivot = coords
            .iter()
            .rposition(|c| !c.is_zero())
            .ok_or(Error::ZeroPoint)?;
        let scale = coords[pivot].inv()?;
        let coords = coords.map(|c| &c * &scale);
        Ok(ProjectivePoint { coords })
    }

    pub fn from_ints(field: Field, coords: [i64; 3]) -> Result<ProjectivePoint> {
        ProjectivePoint::new(coords.map(|c| Scalar::from_i64(field, c)))
    }

    pub fn from_bigints(field: Field, coords: &[BigInt; 3]) -> Result<ProjectivePoint> {
        ProjectivePoint::new([
            Scalar::from_bigint(field, &coords[0]),
            Scalar::from_bigint(field, &coords[1]),
            Scalar::from_bigint(field, &coords[2]),
        ])
    }

    pub fn coords(&self) -> &[Scalar; 3] {
        &self.coords
    }

    pub fn field(&self) -> Field {
        self.coords[0].field()
    }

    /// Index of the coordinate normalized to 1.
    pub fn pivot(&self) -> usize {
        self.coords
            .iter()
            .rposition(|c| !c.is_zero())
            .expect("normalized point is nonzero")
    }

    /// Primitive integer representative of a rational point (gcd 1, same
    /// sign convention as the normalized triple). For prime-field points the
    /// residues are returned.
    pub fn integer_coords(&self) -> [BigInt; 3] {
        match self.field() {
            Field::Prime(_) => self
                .coords
                .clone()
                .map(|c| BigInt::from(c.residue().expect("prime-field scalar"))),
            Field::Rational => {
                let qs = self
                    .coords
                    .clone()
                    .map(|c| c.as_rational().expect("rational scalar").clone());
                let lcm = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                let ints = qs.map(|q| q.numer() * (&lcm / q.denom()));
                let g = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
                ints.map(|n| n / &g)
            }
        }
    }

    /// Cross product of two coordinate triples: the line through two points,
    /// or the intersection point of two lines.
    pub fn cross(a: &[Scalar; 3], b: &[Scalar; 3]) -> [Scalar; 3] {
        [
            &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
            &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
            &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
        ]
    }

    pub fn dot(a: &[Scalar; 3], b: &[Scalar; 3]) -> Scalar {
        &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{}:{})", self.coords[0], self.coords[1], self.coords[2])
    }
}

impl Serialize for ProjectivePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_makes_last_nonzero_one() {
        let p = ProjectivePoint::from_ints(Field::Rational, [3, 4, 5]).unwrap();
        assert_eq!(p.to_string(), "(3/5:4/5:1)");
        let q = ProjectivePoint::from_ints(Field::Rational, [-6, -8, -10]).unwrap();
        assert_eq!(p, q);
        let r = ProjectivePoint::from_ints(Field::Rational, [2, 4, 0]).unwrap();
        assert_eq!(r.to_string(), "(1/2:1:0)");
        assert_eq!(r.pivot(), 1);
    }

    #[test]
    fn zero_vector_rejected() {
        assert_eq!(
            ProjectivePoint::from_ints(Field::Rational, [0, 0, 0]),
            Err(Error::ZeroPoint)
        );
        // zero after reduction mod p
        assert_eq!(
            ProjectivePoint::from_ints(Field::Prime(5), [5, 10, -15]),
            Err(Error::ZeroPoint)
        );
    }

    #[test]
    fn integer_representative_is_primitive() {
        let p = ProjectivePoint::from_ints(Field::Rational, [6, -4, 10]).unwrap();
        assert_eq!(p.integer_coords(), [3, -2, 5].map(BigInt::from));
        let q = ProjectivePoint::from_ints(Field::Rational, [1, 2, 0]).unwrap();
        assert_eq!(q.integer_coords(), [1, 2, 0].map(BigInt::from));
    }

    #[test]
    fn prime_field_normalization() {
        let f = Field::Prime(7);
        let p = ProjectivePoint::from_ints(f, [1, 2, 3]).unwrap();
        // 3^{-1} = 5 mod 7
        assert_eq!(p.to_string(), "(5:3:1)");
        assert_eq!(p, ProjectivePoint::from_ints(f, [2, 4, 6]).unwrap());
    }
}
