use rayon::prelude::*;

use crate::algebra::modular::{add_mod, mul_mod};
use crate::algebra::{Exponent, Field, HomoPoly, ProjectivePoint};
use crate::error::{Error, Result};

/// All `p^2 + p + 1` points of the plane over `F_p`, in canonical order of
/// the charts `(x:y:1)`, `(x:1:0)`, `(1:0:0)`.
pub fn plane_points(p: u64) -> Result<Vec<ProjectivePoint>> {
    let field = Field::prime(p)?;
    let mut out = Vec::with_capacity((p * p + p + 1) as usize);
    for x in 0..p {
        for y in 0..p {
            out.push(point(field, [x, y, 1]));
        }
    }
    for x in 0..p {
        out.push(point(field, [x, 1, 0]));
    }
    out.push(point(field, [1, 0, 0]));
    Ok(out)
}

fn point(field: Field, c: [u64; 3]) -> ProjectivePoint {
    ProjectivePoint::from_ints(field, c.map(|v| v as i64)).expect("nonzero")
}

struct Compiled {
    p: u64,
    terms: Vec<(Exponent, u64)>,
}

impl Compiled {
    fn new(f: &HomoPoly, p: u64) -> Compiled {
        let terms = f
            .terms()
            .map(|(e, c)| (*e, c.residue().expect("prime-field coefficient")))
            .collect();
        Compiled { p, terms }
    }

    fn eval(&self, pows: &[Vec<u64>; 3]) -> u64 {
        self.terms.iter().fold(0, |acc, (e, c)| {
            let m = mul_mod(
                mul_mod(pows[0][e[0] as usize], pows[1][e[1] as usize], self.p),
                pows[2][e[2] as usize],
                self.p,
            );
            add_mod(acc, mul_mod(*c, m, self.p), self.p)
        })
    }
}

fn prime_of(f: &HomoPoly) -> Result<u64> {
    match f.field() {
        Field::Prime(p) => Ok(p),
        Field::Rational => Err(Error::InvalidParameter(
            "point scans need a prime field".into(),
        )),
    }
}

/// Points of `P^2(F_p)` where every form vanishes, sorted.
pub fn zeros_over_fp(forms: &[HomoPoly]) -> Result<Vec<ProjectivePoint>> {
    let first = forms
        .first()
        .ok_or_else(|| Error::InvalidParameter("no forms to scan".into()))?;
    let p = prime_of(first)?;
    for f in forms {
        first.field().check_same(f.field())?;
    }
    let compiled: Vec<Compiled> = forms.iter().map(|f| Compiled::new(f, p)).collect();
    let max_deg = forms.iter().map(HomoPoly::degree).max().unwrap_or(0) as usize;
    let powers = |v: u64| -> Vec<u64> {
        let mut out = vec![1u64; max_deg + 1];
        for i in 1..=max_deg {
            out[i] = mul_mod(out[i - 1], v, p);
        }
        out
    };
    let field = first.field();
    let mut hits: Vec<ProjectivePoint> = plane_points(p)?
        .into_par_iter()
        .filter(|pt| {
            let c = pt.coords().clone().map(|s| s.residue().expect("prime point"));
            let pows = [powers(c[0]), powers(c[1]), powers(c[2])];
            compiled.iter().all(|f| f.eval(&pows) == 0)
        })
        .collect();
    debug_assert!(hits.iter().all(|h| h.field() == field));
    hits.sort();
    Ok(hits)
}

/// Points of `P^2(F_p)` where all three first partials of `f` vanish.
/// Requires `p > deg f` so that Euler's relation puts them on the curve.
pub fn singular_points_over_fp(f: &HomoPoly) -> Result<Vec<ProjectivePoint>> {
    let p = prime_of(f)?;
    f.field().require_characteristic_above(f.degree() as u64)?;
    if f.degree() == 0 {
        return Err(Error::ConstantDerivative);
    }
    let partials = (0..3)
        .map(|v| f.partial_derivative(v))
        .collect::<Result<Vec<_>>>()?;
    let nonzero: Vec<HomoPoly> = partials.into_iter().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        return plane_points(p);
    }
    zeros_over_fp(&nonzero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Order;

    #[test]
    fn plane_has_p2_p_1_points() {
        let pts = plane_points(5).unwrap();
        assert_eq!(pts.len(), 31);
        let set: std::collections::BTreeSet<_> = pts.iter().collect();
        assert_eq!(set.len(), 31);
    }

    #[test]
    fn triangle_singularities() {
        let f7 = Field::prime(7).unwrap();
        let xyz = HomoPoly::from_int_terms(f7, &[([1, 1, 1], 1)]).unwrap();
        let sing = singular_points_over_fp(&xyz).unwrap();
        let expected: Vec<_> = [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
            .iter()
            .map(|c| ProjectivePoint::from_ints(f7, *c).unwrap())
            .collect();
        assert_eq!(sing, expected);
    }

    #[test]
    fn smooth_conic_has_none() {
        let f7 = Field::prime(7).unwrap();
        let conic = HomoPoly::from_int_terms(f7, &[([0, 2, 0], 1), ([1, 0, 1], -1)]).unwrap();
        assert!(singular_points_over_fp(&conic).unwrap().is_empty());
    }

    #[test]
    fn nodal_cubic_has_one_node() {
        let f7 = Field::prime(7).unwrap();
        // z y^2 - x^3 - x^2 z
        let f = HomoPoly::from_int_terms(f7, &[([0, 2, 1], 1), ([3, 0, 0], -1), ([2, 0, 1], -1)]).unwrap();
        let sing = singular_points_over_fp(&f).unwrap();
        assert_eq!(sing, vec![ProjectivePoint::from_ints(f7, [0, 0, 1]).unwrap()]);
        assert_eq!(f.order_of_vanishing(&sing[0]).unwrap(), Order::Finite(2));
    }

    #[test]
    fn characteristic_must_exceed_degree() {
        let f3 = Field::prime(3).unwrap();
        let f = HomoPoly::from_int_terms(f3, &[([3, 0, 0], 1), ([0, 3, 0], 1)]).unwrap();
        assert!(singular_points_over_fp(&f).is_err());
    }
}
