//! Homogeneous polynomials in three variables `x, y, z`.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::point::ProjectivePoint;
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Exponents of `x`, `y`, `z`.
pub type Exponent = [u32; 3];

/// Monomials of degree `d` in graded lexicographic order with `x > y > z`:
/// `x^d, x^(d-1)y, x^(d-1)z, x^(d-2)y^2, ...`.
pub fn monomial_basis(d: u32) -> Vec<Exponent> {
    let mut out = Vec::with_capacity(((d + 1) * (d + 2) / 2) as usize);
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

/// Number of monomials of degree `d`, i.e. C(d+2, 2).
pub fn monomial_count(d: u32) -> usize {
    ((d as usize + 1) * (d as usize + 2)) / 2
}

/// Falling factorial `n (n-1) ... (n-k+1)`; zero when `k > n`.
pub(crate) fn falling(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    (n - k + 1..=n).fold(1u64, |acc, v| acc * v as u64)
}

/// Order of vanishing of a polynomial at a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u32),
    /// Only the zero polynomial.
    Infinite,
}

impl Order {
    pub fn at_least(self, m: u32) -> bool {
        match self {
            Order::Finite(t) => t >= m,
            Order::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(t) => Some(t),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(t) => write!(f, "{t}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

/// A form of fixed degree; zero coefficients are never stored, so the zero
/// polynomial is the empty map (of any declared degree).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomoPoly {
    field: Field,
    degree: u32,
    terms: BTreeMap<Exponent, Scalar>,
}

impl HomoPoly {
    pub fn zero(field: Field, degree: u32) -> HomoPoly {
        HomoPoly {
            field,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(field: Field, degree: u32, terms: I) -> Result<HomoPoly>
    where
        I: IntoIterator<Item = (Exponent, Scalar)>,
    {
        let mut poly = HomoPoly::zero(field, degree);
        for (e, c) in terms {
            field.check_same(c.field())?;
            if e.iter().sum::<u32>() != degree {
                return Err(Error::InvalidParameter(format!(
                    "monomial {e:?} does not have degree {degree}"
                )));
            }
            poly.add_term(e, c);
        }
        Ok(poly)
    }

    /// Convenience constructor from machine-integer coefficients.
    pub fn from_int_terms(field: Field, terms: &[(Exponent, i64)]) -> Result<HomoPoly> {
        let degree = terms.first().map_or(0, |(e, _)| e.iter().sum());
        HomoPoly::from_terms(
            field,
            degree,
            terms.iter().map(|(e, c)| (*e, Scalar::from_i64(field, *c))),
        )
    }

    /// Builds a form from its coefficient vector on `monomial_basis(degree)`.
    pub fn from_coefficients(field: Field, degree: u32, coeffs: &[Scalar]) -> Result<HomoPoly> {
        let basis = monomial_basis(degree);
        if basis.len() != coeffs.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} coefficients, got {}",
                basis.len(),
                coeffs.len()
            )));
        }
        HomoPoly::from_terms(field, degree, basis.into_iter().zip(coeffs.iter().cloned()))
    }

    /// The linear form `a x + b y + c z`.
    pub fn linear(coeffs: &[Scalar; 3]) -> HomoPoly {
        let field = coeffs[0].field();
        let mut poly = HomoPoly::zero(field, 1);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = [0; 3];
            e[i] = 1;
            poly.add_term(e, c.clone());
        }
        poly
    }

    fn add_term(&mut self, e: Exponent, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms in graded lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, e: &Exponent) -> Scalar {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.field))
    }

    /// Coefficient vector on `monomial_basis(degree)`.
    pub fn coefficients(&self) -> Vec<Scalar> {
        monomial_basis(self.degree)
            .iter()
            .map(|e| self.coefficient(e))
            .collect()
    }

    pub fn add(&self, other: &HomoPoly) -> Result<HomoPoly> {
        self.field.check_same(other.field)?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::InvalidParameter(format!(
                "cannot add forms of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = if self.is_zero() { other.clone() } else { self.clone() };
        let rest = if self.is_zero() { self } else { other };
        for (e, c) in &rest.terms {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> HomoPoly {
        let mut out = HomoPoly::zero(self.field, self.degree);
        for (e, v) in &self.terms {
            out.add_term(*e, v * c);
        }
        out
    }

    pub fn mul(&self, other: &HomoPoly) -> Result<HomoPoly> {
        self.field.check_same(other.field)?;
        let mut out = HomoPoly::zero(self.field, self.degree + other.degree);
        for (e, a) in &self.terms {
            for (f, b) in &other.terms {
                out.add_term([e[0] + f[0], e[1] + f[1], e[2] + f[2]], a * b);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> HomoPoly {
        let mut acc = HomoPoly::from_terms(self.field, 0, [([0, 0, 0], Scalar::one(self.field))])
            .expect("constant");
        for _ in 0..k {
            acc = acc.mul(self).expect("same field");
        }
        acc
    }

    /// Evaluates at the given coordinates without any field check.
    pub(crate) fn evaluate_coords(&self, coords: &[Scalar; 3]) -> Scalar {
        let mut powers: [Vec<Scalar>; 3] = Default::default();
        for (i, c) in coords.iter().enumerate() {
            let mut v = vec![Scalar::one(self.field)];
            for k in 1..=self.degree as usize {
                let next = &v[k - 1] * c;
                v.push(next);
            }
            powers[i] = v;
        }
        let mut acc = Scalar::zero(self.field);
        for (e, c) in &self.terms {
            let m = &(&powers[0][e[0] as usize] * &powers[1][e[1] as usize])
                * &powers[2][e[2] as usize];
            acc = &acc + &(c * &m);
        }
        acc
    }

    /// Value at the normalized representative of `point`.
    pub fn evaluate(&self, point: &ProjectivePoint) -> Result<Scalar> {
        self.field.check_same(point.field())?;
        Ok(self.evaluate_coords(point.coords()))
    }

    /// Formal partial derivative with respect to `x` (0), `y` (1) or `z` (2).
    pub fn partial_derivative(&self, var: usize) -> Result<HomoPoly> {
        if var > 2 {
            return Err(Error::BadVariable(var));
        }
        if self.degree == 0 {
            return Err(Error::ConstantDerivative);
        }
        let mut out = HomoPoly::zero(self.field, self.degree - 1);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut f = *e;
            f[var] -= 1;
            out.add_term(f, c.scale_i64(e[var] as i64));
        }
        Ok(out)
    }

    /// `f(M x)`: substitutes `x_i -> sum_j M[i][j] x_j`.
    pub fn substitute_linear(&self, m: &[[Scalar; 3]; 3]) -> HomoPoly {
        let forms: Vec<HomoPoly> = m.iter().map(HomoPoly::linear).collect();
        let powers: Vec<Vec<HomoPoly>> = forms
            .iter()
            .map(|l| {
                let mut v = vec![l.pow(0)];
                for k in 1..=self.degree as usize {
                    let next = v[k - 1].mul(l).expect("same field");
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = HomoPoly::zero(self.field, self.degree);
        for (e, c) in &self.terms {
            let prod = powers[0][e[0] as usize]
                .mul(&powers[1][e[1] as usize])
                .and_then(|p| p.mul(&powers[2][e[2] as usize]))
                .expect("same field");
            for (f, v) in &prod.terms {
                out.add_term(*f, c * v);
            }
        }
        out
    }

    /// Multiplicity of the curve `f = 0` at `point`.
    ///
    /// The change of coordinates sending `(1:0:0)` to `point` (the point as
    /// first column, the two unit vectors away from its pivot as the others),
    /// followed by dehomogenization, turns `f` into `f(P + y e_a + z e_b)`
    /// with the pivot coordinate fixed to 1. The order is the lowest total
    /// `(y, z)`-degree present in that expansion. Works in every
    /// characteristic.
    pub fn order_of_vanishing(&self, point: &ProjectivePoint) -> Result<Order> {
        self.field.check_same(point.field())?;
        if self.is_zero() {
            return Ok(Order::Infinite);
        }
        let field = self.field;
        let pivot = point.pivot();
        let others: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
        let (pa, pb) = (&point.coords()[others[0]], &point.coords()[others[1]]);
        let d = self.degree as usize;
        let pow_a = powers(pa, d);
        let pow_b = powers(pb, d);
        // taylor[s][t] = coefficient of y^s z^t
        let mut taylor = vec![vec![Scalar::zero(field); d + 1]; d + 1];
        for (e, c) in &self.terms {
            let (i, j) = (e[others[0]] as usize, e[others[1]] as usize);
            for s in 0..=i {
                let cs = c * &(&Scalar::from_i64(field, binomial(i, s)) * &pow_a[i - s]);
                for t in 0..=j {
                    let term = &(&cs * &Scalar::from_i64(field, binomial(j, t))) * &pow_b[j - t];
                    taylor[s][t] = &taylor[s][t] + &term;
                }
            }
        }
        let order = (0..=2 * d)
            .find(|&total| {
                (0..=total.min(d))
                    .filter(|&s| total - s <= d)
                    .any(|s| !taylor[s][total - s].is_zero())
            })
            .expect("translation keeps f nonzero");
        Ok(Order::Finite(order as u32))
    }

    /// All partial derivatives of order `k`, indexed by `monomial_basis(k)`.
    pub fn partials_of_order(&self, k: u32) -> Result<Vec<HomoPoly>> {
        let mut out = Vec::new();
        for beta in monomial_basis(k) {
            let mut g = self.clone();
            for (var, &times) in beta.iter().enumerate() {
                for _ in 0..times {
                    g = if g.degree == 0 {
                        HomoPoly::zero(self.field, 0)
                    } else {
                        g.partial_derivative(var)?
                    };
                }
            }
            out.push(g);
        }
        Ok(out)
    }
}

fn powers(c: &Scalar, d: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::one(c.field())];
    for k in 1..=d {
        let next = &v[k - 1] * c;
        v.push(next);
    }
    v
}

pub(crate) fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

impl fmt::Display for HomoPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["x", "y", "z"];
        for (idx, (e, c)) in self.terms().enumerate() {
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let constant = e.iter().all(|&v| v == 0);
            if mag != "1" || constant {
                write!(f, "{mag}")?;
                if !constant {
                    write!(f, "*")?;
                }
            }
            let mut first = true;
            for (i, &p) in e.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", names[i])?;
                if p > 1 {
                    write!(f, "^{p}")?;
                }
            }
        }
        Ok(())
    }
}

impl Serialize for HomoPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<(&Exponent, &Scalar)> = self.terms().collect();
        let mut st = s.serialize_struct("HomoPoly", 4)?;
        st.serialize_field("field", &self.field)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("terms", &terms)?;
        st.serialize_field("text", &self.to_string())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for HomoPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<HomoPoly, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            field: Field,
            degree: u32,
            terms: Vec<(Exponent, String)>,
        }
        let raw = Raw::deserialize(d)?;
        let terms = raw
            .terms
            .iter()
            .map(|(e, c)| Scalar::parse(raw.field, c).map(|c| (*e, c)))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        HomoPoly::from_terms(raw.field, raw.degree, terms).map_err(serde::de::Error::custom)
    }
}
