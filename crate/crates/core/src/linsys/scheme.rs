use serde::Serialize;

use crate::algebra::{Field, ProjectivePoint};
use crate::error::{Error, Result};

/// Points `P_1..P_r` with prescribed multiplicities `m_1..m_r`, i.e. the
/// ideal `I(P_1)^m_1 ∩ ... ∩ I(P_r)^m_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FatPointScheme {
    field: Field,
    points: Vec<ProjectivePoint>,
    mults: Vec<u32>,
}

impl FatPointScheme {
    pub fn new(field: Field, points: Vec<ProjectivePoint>, mults: Vec<u32>) -> Result<FatPointScheme> {
        if points.len() != mults.len() {
            return Err(Error::LengthMismatch {
                points: points.len(),
                mults: mults.len(),
            });
        }
        for p in &points {
            field.check_same(p.field())?;
        }
        check_distinct(&points)?;
        Ok(FatPointScheme {
            field,
            points,
            mults,
        })
    }

    /// `m Z`: every point with multiplicity `m`.
    pub fn uniform(field: Field, points: &[ProjectivePoint], m: u32) -> Result<FatPointScheme> {
        FatPointScheme::new(field, points.to_vec(), vec![m; points.len()])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn mults(&self) -> &[u32] {
        &self.mults
    }

    pub fn max_mult(&self) -> u32 {
        self.mults.iter().copied().max().unwrap_or(0)
    }

    pub fn is_trivial(&self) -> bool {
        self.mults.iter().all(|&m| m == 0)
    }

    /// Number of linear conditions, `Σ C(m_i + 1, 2)`.
    pub fn condition_count(&self) -> i64 {
        self.mults
            .iter()
            .map(|&m| (m as i64) * (m as i64 + 1) / 2)
            .sum()
    }

    /// Same points, other multiplicities.
    pub fn with_mults(&self, mults: Vec<u32>) -> Result<FatPointScheme> {
        if mults.len() != self.points.len() {
            return Err(Error::LengthMismatch {
                points: self.points.len(),
                mults: mults.len(),
            });
        }
        Ok(FatPointScheme {
            field: self.field,
            points: self.points.clone(),
            mults,
        })
    }
}

pub(crate) fn check_distinct(points: &[ProjectivePoint]) -> Result<()> {
    let mut sorted: Vec<(usize, &ProjectivePoint)> = points.iter().enumerate().collect();
    sorted.sort_by(|a, b| a.1.cmp(b.1));
    for w in sorted.windows(2) {
        if w[0].1 == w[1].1 {
            let (i, j) = (w[0].0.min(w[1].0), w[0].0.max(w[1].0));
            return Err(Error::DuplicatePoint(i, j));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_and_lengths_are_rejected() {
        let q = Field::Rational;
        let a = ProjectivePoint::from_ints(q, [1, 2, 3]).unwrap();
        let b = ProjectivePoint::from_ints(q, [2, 4, 6]).unwrap();
        assert_eq!(
            FatPointScheme::new(q, vec![a.clone(), b], vec![1, 1]),
            Err(Error::DuplicatePoint(0, 1))
        );
        assert!(matches!(
            FatPointScheme::new(q, vec![a.clone()], vec![1, 1]),
            Err(Error::LengthMismatch { .. })
        ));
        let c = ProjectivePoint::from_ints(Field::Prime(7), [1, 2, 3]).unwrap();
        assert!(matches!(
            FatPointScheme::new(q, vec![a, c], vec![1, 1]),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn condition_count() {
        let q = Field::Rational;
        let pts: Vec<_> = (0..6)
            .map(|i| ProjectivePoint::from_ints(q, [i, i * i, 1]).unwrap())
            .collect();
        let s = FatPointScheme::uniform(q, &pts, 2).unwrap();
        assert_eq!(s.condition_count(), 18);
        assert_eq!(s.max_mult(), 2);
        assert!(s.with_mults(vec![0; 6]).unwrap().is_trivial());
    }
}
