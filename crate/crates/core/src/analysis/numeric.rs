use serde::Serialize;

use crate::algebra::{HomoPoly, Order, ProjectivePoint};
use crate::error::{Error, Result};

/// `(d-1)(d-2)` against `Σ m_i (m_i - 1)` for the multiplicities the curve
/// actually has at the points. The inequality holds for irreducible curves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusBound {
    pub degree: u32,
    pub mults: Vec<u32>,
    pub lhs: u64,
    pub rhs: u64,
    pub holds: bool,
    pub equality: bool,
}

pub fn check_genus_bound(curve: &HomoPoly, points: &[ProjectivePoint]) -> Result<GenusBound> {
    if curve.is_zero() {
        return Err(Error::InvalidParameter("the zero form is not a curve".into()));
    }
    let d = u64::from(curve.degree());
    let mults = points
        .iter()
        .map(|p| match curve.order_of_vanishing(p)? {
            Order::Finite(m) => Ok(m),
            Order::Infinite => unreachable!("nonzero form"),
        })
        .collect::<Result<Vec<u32>>>()?;
    let lhs = d.saturating_sub(1) * d.saturating_sub(2);
    let rhs = mults.iter().map(|&m| u64::from(m) * u64::from(m.saturating_sub(1))).sum();
    Ok(GenusBound {
        degree: curve.degree(),
        mults,
        lhs,
        rhs,
        holds: lhs >= rhs,
        equality: lhs == rhs,
    })
}

/// `(d-1)(d-2) = r k (k-1)` and `2(d-1) < r k`: the numerology of an
/// irreducible degree-`d` curve with `r` points of multiplicity `k`
/// saturating the genus bound.
pub fn check_high_sing_conditions(d: u64, k: u64, r: u64) -> Result<bool> {
    if d < 2 || k < 2 || r < 1 {
        return Err(Error::InvalidParameter(format!(
            "need d >= 2, k >= 2, r >= 1, got d={d}, k={k}, r={r}"
        )));
    }
    Ok((d - 1) * (d - 2) == r * k * (k - 1) && 2 * (d - 1) < r * k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    #[test]
    fn high_singularity_numerology() {
        assert!(check_high_sing_conditions(13, 4, 11).unwrap());
        assert!(check_high_sing_conditions(17, 5, 12).unwrap());
        assert!(check_high_sing_conditions(10, 3, 12).unwrap());
        assert!(!check_high_sing_conditions(10, 3, 11).unwrap());
        assert!(check_high_sing_conditions(1, 3, 11).is_err());
    }

    #[test]
    fn genus_bound_examples() {
        let q = Field::Rational;
        let conic = HomoPoly::from_int_terms(q, &[([0, 2, 0], 1), ([1, 0, 1], -1)]).unwrap();
        let g = check_genus_bound(&conic, &[]).unwrap();
        assert!(g.holds && g.equality);
        // a triple line through a point of multiplicity 3
        let x3 = HomoPoly::from_int_terms(q, &[([3, 0, 0], 1)]).unwrap();
        let p = ProjectivePoint::from_ints(q, [0, 1, 1]).unwrap();
        let g = check_genus_bound(&x3, &[p]).unwrap();
        assert_eq!((g.lhs, g.rhs, g.holds), (2, 6, false));
    }
}
