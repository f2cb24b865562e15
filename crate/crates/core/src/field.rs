//! Exact scalar fields: the rationals and prime fields `F_p`.
//!
//! The field is a runtime choice (scripts may override it), so scalars are a
//! small enum rather than a type parameter. Mixing elements of different
//! fields is a programming error and panics.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p > u32::MAX as u64 {
            return Err(Error::InvalidField(format!("prime {p} too large")));
        }
        Ok(Field::Prime(p))
    }

    /// Parses `q`, `Q`, `fp:<p>`, `F<p>` or `GF(<p>)`.
    pub fn parse(s: &str) -> Result<Field> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(Field::Rationals);
        }
        let digits = t
            .strip_prefix("fp:")
            .or_else(|| t.strip_prefix("Fp:"))
            .or_else(|| t.strip_prefix('F'))
            .or_else(|| t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')));
        match digits.and_then(|d| d.parse::<u64>().ok()) {
            Some(p) => Field::prime(p),
            None => Err(Error::InvalidField(format!("unrecognised field `{s}`"))),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Q(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Fp {
                value: v.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Q(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = v.mod_floor_u64(p);
                Scalar::Fp { value: r, p }
            }
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::InvalidField("zero denominator".into()));
        }
        match *self {
            Field::Rationals => Ok(Scalar::Q(BigRational::new(num.into(), den.into()))),
            Field::Prime(_) => {
                let d = self.from_i64(den);
                if d.is_zero() {
                    return Err(Error::InvalidField(format!(
                        "denominator {den} vanishes in {self}"
                    )));
                }
                Ok(self.from_i64(num) * d.inv())
            }
        }
    }

    /// Number of elements, if finite.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some(*p),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        let m = BigInt::from(p);
        let r = ((self % &m) + &m) % &m;
        r.to_u64().expect("residue fits")
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { value: u64, p: u64 },
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rationals,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::Fp { value, p } => Scalar::Fp {
                value: mod_pow(*value, p - 2, *p),
                p: *p,
            },
        }
    }

    /// Integer lift in `[0, p)` for prime-field elements; numerator/denominator
    /// for rationals.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(q) => Some(q),
            Scalar::Fp { .. } => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Fp { value, .. } => Some(*value),
            Scalar::Q(_) => None,
        }
    }

    /// Same value, coerced into `field`; rationals map to `F_p` by reducing
    /// numerator and denominator.
    pub fn to_field(&self, field: Field) -> Result<Scalar> {
        match (self, field) {
            (Scalar::Q(q), Field::Rationals) => Ok(Scalar::Q(q.clone())),
            (Scalar::Q(q), Field::Prime(_)) => {
                let n = field.from_bigint(q.numer());
                let d = field.from_bigint(q.denom());
                if d.is_zero() {
                    return Err(Error::InvalidField(format!(
                        "{q} has denominator divisible by {}",
                        field.characteristic()
                    )));
                }
                Ok(n * d.inv())
            }
            (Scalar::Fp { p, .. }, Field::Prime(p2)) if *p == p2 => Ok(self.clone()),
            (Scalar::Fp { value, .. }, _) => Ok(field.from_i64(*value as i64)),
        }
    }

    fn same_field(&self, other: &Scalar) {
        match (self, other) {
            (Scalar::Q(_), Scalar::Q(_)) => {}
            (Scalar::Fp { p, .. }, Scalar::Fp { p: q, .. }) if p == q => {}
            _ => panic!("scalars from different fields: {self:?} vs {other:?}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.same_field(rhs);
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                value: (a + b) % p,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.same_field(rhs);
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                value: (a + p - b) % p,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.same_field(rhs);
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { value, p } => Scalar::Fp {
                value: (p - value) % p,
                p: *p,
            },
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Scalar {
    /// `self += a * b`, the inner loop of every matrix product.
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        match (&mut *self, a, b) {
            (Scalar::Fp { value, p }, Scalar::Fp { value: x, .. }, Scalar::Fp { value: y, .. }) => {
                let pr = *p as u128;
                *value = ((*value as u128 + (*x as u128 * *y as u128) % pr) % pr) as u64;
            }
            (Scalar::Q(acc), Scalar::Q(x), Scalar::Q(y)) => {
                if x.is_zero() || y.is_zero() {
                    return;
                }
                *acc += x * y;
            }
            _ => panic!("scalars from different fields"),
        }
    }

    pub fn abs_height(&self) -> BigInt {
        match self {
            Scalar::Q(q) => q.numer().abs().max(q.denom().abs()),
            Scalar::Fp { value, .. } => BigInt::from(*value),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(3);
        let b = f.from_i64(5);
        assert_eq!(&a + &b, f.from_i64(1));
        assert_eq!(&a * &b, f.from_i64(1));
        assert_eq!(a.inv(), f.from_i64(5));
        assert_eq!(-&a, f.from_i64(4));
        assert_eq!(f.from_i64(-1), f.from_i64(6));
    }

    #[test]
    fn rational_arithmetic_is_exact() {
        let f = Field::Rationals;
        let third = f.from_ratio(1, 3).unwrap();
        let sum = &(&third + &third) + &third;
        assert!(sum.is_one());
        assert_eq!(third.to_string(), "1/3");
    }

    #[test]
    fn parse_fields() {
        assert_eq!(Field::parse("q").unwrap(), Field::Rationals);
        assert_eq!(Field::parse("fp:5").unwrap(), Field::Prime(5));
        assert_eq!(Field::parse("F2").unwrap(), Field::Prime(2));
        assert_eq!(Field::parse("GF(11)").unwrap(), Field::Prime(11));
        assert!(Field::parse("fp:4").is_err());
        assert!(Field::parse("R").is_err());
    }

    #[test]
    fn rational_to_prime_field() {
        let half = Field::Rationals.from_ratio(1, 2).unwrap();
        let f3 = Field::prime(3).unwrap();
        assert_eq!(half.to_field(f3).unwrap(), f3.from_i64(2));
        assert!(half.to_field(Field::prime(2).unwrap()).is_err());
    }
}
