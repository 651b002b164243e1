//! Ground fields and their elements.
//!
//! Two fields are supported: the rationals with arbitrary-precision numerator
//! and denominator, and prime fields `F_p` with `p < 2^32` (so products fit a
//! `u64`). Every [`Scalar`] carries enough information to know which field it
//! belongs to; mixing fields in one operation is an invariant violation and
//! panics.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Field descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FieldRepr", into = "FieldRepr")]
pub enum Field {
    Rationals,
    Prime(u64),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type")]
enum FieldRepr {
    Q,
    Fp { p: u64 },
}

impl TryFrom<FieldRepr> for Field {
    type Error = Error;

    fn try_from(repr: FieldRepr) -> Result<Self> {
        match repr {
            FieldRepr::Q => Ok(Field::Rationals),
            FieldRepr::Fp { p } => Field::prime(p),
        }
    }
}

impl From<Field> for FieldRepr {
    fn from(field: Field) -> Self {
        match field {
            Field::Rationals => FieldRepr::Q,
            Field::Prime(p) => FieldRepr::Fp { p },
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2u64;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

impl Field {
    /// The prime field `F_p`; rejects composites and `p >= 2^32`.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    /// 0 for the rationals, `p` for `F_p`.
    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Prime { value: 0, modulus: p },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Prime {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(self, v: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Prime {
                    value: r.to_u64().expect("residue fits"),
                    modulus: p,
                }
            }
        }
    }

    /// Maps a rational number into the field. Fails in `F_p` when `p`
    /// divides the reduced denominator.
    pub fn from_rational(self, v: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(Scalar::Rational(v.clone())),
            Field::Prime(_) => {
                let num = self.from_bigint(v.numer());
                let den = self.from_bigint(v.denom());
                let inv = den.inv().ok_or_else(|| {
                    Error::Parse(format!("denominator of {v} vanishes in {self}"))
                })?;
                Ok(&num * &inv)
            }
        }
    }

    /// Parses `"a"`, `"-a"` or `"a/b"`.
    pub fn parse(self, s: &str) -> Result<Scalar> {
        let t = s.trim();
        let parse_int = |x: &str| {
            BigInt::from_str(x.trim()).map_err(|_| Error::Parse(format!("bad scalar `{s}`")))
        };
        let value = match t.split_once('/') {
            Some((n, d)) => {
                let den = parse_int(d)?;
                if den.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in `{s}`")));
                }
                BigRational::new(parse_int(n)?, den)
            }
            None => BigRational::from_integer(parse_int(t)?),
        };
        self.from_rational(&value)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i64) as u64
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: inv_mod(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// `self / other`, `None` when `other` is zero.
    pub fn checked_div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|i| self * &i)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = self.field().one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self += a * b`.
    pub fn add_product(&mut self, a: &Scalar, b: &Scalar) {
        match (self, a, b) {
            (
                Scalar::Prime { value, modulus },
                Scalar::Prime { value: x, modulus: m1 },
                Scalar::Prime { value: y, modulus: m2 },
            ) if modulus == m1 && modulus == m2 => {
                *value = (*value + x * y % *modulus) % *modulus;
            }
            (Scalar::Rational(acc), Scalar::Rational(x), Scalar::Rational(y)) => {
                if x.is_integer() && y.is_integer() && acc.is_integer() {
                    let n = acc.numer() + x.numer() * y.numer();
                    *acc = BigRational::from_integer(n);
                } else {
                    *acc += x * y;
                }
            }
            _ => panic!("{}", Error::FieldMismatch),
        }
    }

    /// Numerator and denominator over the rationals; `None` in `F_p`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Prime { .. } => None,
        }
    }

    /// Whether the value is a (small) integer in the rationals, or any
    /// residue in `F_p`; used for compact rendering.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(r) if r.is_integer() => r.numer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Prime { value, .. } => Some(*value as i64),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => {
                if b.is_zero() {
                    Scalar::Rational(a.clone())
                } else if a.is_zero() {
                    Scalar::Rational(b.clone())
                } else if a.is_integer() && b.is_integer() {
                    Scalar::Rational(BigRational::from_integer(a.numer() + b.numer()))
                } else {
                    Scalar::Rational(a + b)
                }
            }
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Prime { value: (a + b) % p, modulus: *p }
            }
            _ => panic!("{}", Error::FieldMismatch),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Prime { value: a * b % p, modulus: *p }
            }
            _ => panic!("{}", Error::FieldMismatch),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: (modulus - value) % modulus,
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

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a += b,
            (Scalar::Prime { value, modulus }, Scalar::Prime { value: b, modulus: q })
                if modulus == q =>
            {
                *value = (*value + b) % *modulus;
            }
            _ => panic!("{}", Error::FieldMismatch),
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self += &(-rhs);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_validation() {
        assert!(Field::prime(101).is_ok());
        assert!(matches!(Field::prime(100), Err(Error::NotPrime(100))));
        assert!(Field::prime(1).is_err());
        assert!(Field::prime((1 << 32) + 15).is_err());
    }

    #[test]
    fn parse_and_display() {
        let q = Field::Rationals;
        assert_eq!(q.parse("6/4").unwrap().to_string(), "3/2");
        assert_eq!(q.parse(" -7 ").unwrap().to_string(), "-7");
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("x").is_err());
        let f = Field::Prime(7);
        assert_eq!(f.parse("1/2").unwrap().to_string(), "4");
        assert_eq!(f.parse("-1").unwrap().to_string(), "6");
        assert!(f.parse("1/7").is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f = Field::Prime(101);
        for v in 1..101 {
            let a = f.from_i64(v);
            assert!((&a * &a.inv().unwrap()).is_one());
        }
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn add_product_matches_mul_then_add() {
        let q = Field::Rationals;
        let mut acc = q.parse("1/3").unwrap();
        acc.add_product(&q.parse("2").unwrap(), &q.parse("5/7").unwrap());
        assert_eq!(acc, q.parse("37/21").unwrap());
        let f = Field::Prime(5);
        let mut acc = f.from_i64(4);
        acc.add_product(&f.from_i64(3), &f.from_i64(4));
        assert_eq!(acc, f.from_i64(1));
    }

    #[test]
    fn field_serde_round_trip() {
        let json = serde_json::to_string(&Field::Prime(101)).unwrap();
        assert_eq!(json, r#"{"type":"Fp","p":101}"#);
        let back: Field = serde_json::from_str(r#"{"type":"Q"}"#).unwrap();
        assert_eq!(back, Field::Rationals);
        assert!(serde_json::from_str::<Field>(r#"{"type":"Fp","p":91}"#).is_err());
    }
}
