//! Exact field elements: arbitrary-precision rationals or residues mod a prime.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::modular::{add_mod, inv_mod, is_prime, mul_mod, neg_mod, pow_mod, reduce_i64, sub_mod};
use crate::error::{Error, Result};

/// Coefficient field tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Checked constructor for a prime field.
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// 0 for the rationals.
    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    /// Fails unless the characteristic is 0 or strictly exceeds `bound`.
    pub fn require_characteristic_above(self, bound: u64) -> Result<()> {
        match self {
            Field::Prime(p) if p <= bound => Err(Error::CharacteristicTooSmall {
                p,
                needed: bound,
            }),
            _ => Ok(()),
        }
    }

    pub(crate) fn check_same(self, other: Field) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self,
                right: other,
            })
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "prime:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "rational" || s == "Q" {
            return Ok(Field::Rational);
        }
        let digits = s
            .strip_prefix("prime:")
            .or_else(|| s.strip_prefix("F_"))
            .ok_or_else(|| Error::Parse(format!("unknown field `{s}`")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad prime `{digits}`")))?;
        Field::prime(p)
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Field, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of ℚ or of 𝔽_p.
///
/// Arithmetic operators panic when the operands live in different fields;
/// the public entry points of the crate check field tags before combining
/// values, so a panic here is a bug in the caller.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn zero(field: Field) -> Scalar {
        Scalar::from_i64(field, 0)
    }

    pub fn one(field: Field) -> Scalar {
        Scalar::from_i64(field, 1)
    }

    pub fn from_i64(field: Field, n: i64) -> Scalar {
        match field {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Mod {
                value: reduce_i64(n, p),
                modulus: p,
            },
        }
    }

    pub fn from_bigint(field: Field, n: &BigInt) -> Scalar {
        match field {
            Field::Rational => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => Scalar::Mod {
                value: bigint_mod(n, p),
                modulus: p,
            },
        }
    }

    /// Rational `num/den`; errors on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::Rational(BigRational::new(num.into(), den.into())))
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Mod { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(q) if q.is_zero() => Err(Error::DivisionByZero),
            Scalar::Rational(q) => Ok(Scalar::Rational(q.recip())),
            Scalar::Mod { value, modulus } => inv_mod(*value, *modulus)
                .map(|value| Scalar::Mod {
                    value,
                    modulus: *modulus,
                })
                .ok_or(Error::DivisionByZero),
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.field().check_same(rhs.field())?;
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(num_traits::pow(q.clone(), exp as usize)),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: pow_mod(*value, exp as u64, *modulus),
                modulus: *modulus,
            },
        }
    }

    /// Multiplies by a machine integer (maps it into the field first).
    pub fn scale_i64(&self, n: i64) -> Scalar {
        self * &Scalar::from_i64(self.field(), n)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Mod { .. } => None,
        }
    }

    /// Residue for prime-field scalars.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Mod { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    /// Lossy conversion used only for drawing.
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(q) => q.to_f64().unwrap_or(f64::NAN),
            Scalar::Mod { value, .. } => *value as f64,
        }
    }

    /// Parses `"12"`, `"-3/7"` (rationals) or a residue (prime fields).
    pub fn parse(field: Field, s: &str) -> Result<Scalar> {
        let s = s.trim().replace('\u{2212}', "-");
        let bad = || Error::Parse(format!("bad scalar `{s}`"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<BigInt>().map_err(|_| bad())?,
                d.trim().parse::<BigInt>().map_err(|_| bad())?,
            ),
            None => (s.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match field {
            Field::Rational => Ok(Scalar::Rational(BigRational::new(num, den))),
            Field::Prime(_) => {
                Scalar::from_bigint(field, &num).checked_div(&Scalar::from_bigint(field, &den))
            }
        }
    }
}

pub(crate) fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits in u64")
}

fn expect_same(a: &Scalar, b: &Scalar) -> u64 {
    match (a, b) {
        (Scalar::Mod { modulus: p, .. }, Scalar::Mod { modulus: q, .. }) if p == q => *p,
        _ => panic!("scalar field mismatch: {} vs {}", a.field(), b.field()),
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $rat:expr, $modop:expr) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational($rat(a, b)),
                    (Scalar::Mod { value: a, .. }, Scalar::Mod { value: b, .. }) => {
                        let p = expect_same(self, rhs);
                        Scalar::Mod {
                            value: $modop(*a, *b, p),
                            modulus: p,
                        }
                    }
                    _ => {
                        expect_same(self, rhs);
                        unreachable!()
                    }
                }
            }
        }

        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a: &BigRational, b: &BigRational| a + b, add_mod);
binop!(Sub, sub, |a: &BigRational, b: &BigRational| a - b, sub_mod);
binop!(Mul, mul, |a: &BigRational, b: &BigRational| a * b, mul_mod);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: neg_mod(*value, *modulus),
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Total order used for canonical sorting: rationals by value, residues by
/// (modulus, residue), and every rational before every residue.
impl Ord for Scalar {
    fn cmp(&self, other: &Scalar) -> std::cmp::Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (
                Scalar::Mod { value: a, modulus: p },
                Scalar::Mod { value: b, modulus: q },
            ) => (p, a).cmp(&(q, b)),
            (Scalar::Rational(_), Scalar::Mod { .. }) => std::cmp::Ordering::Less,
            (Scalar::Mod { .. }, Scalar::Rational(_)) => std::cmp::Ordering::Greater,
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Scalar) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
