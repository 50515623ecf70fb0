use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Base field: a small prime field or the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Field {
    Fp { p: u32 },
    Q,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Fp { p } => write!(f, "F_{p}"),
            Field::Q => write!(f, "Q"),
        }
    }
}

impl Field {
    pub const F2: Field = Field::Fp { p: 2 };

    pub fn fp(p: u32) -> Result<Field> {
        if p < 2 || p > 65_521 || !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
            return Err(Error::Validation(format!("{p} is not a supported prime")));
        }
        Ok(Field::Fp { p })
    }

    pub fn zero(self) -> Scalar {
        self.int(0)
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, n: i64) -> Scalar {
        match self {
            Field::Fp { p } => Scalar::Fp { p, v: n.rem_euclid(p as i64) as u32 },
            Field::Q => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn ratio(self, num: i64, den: i64) -> Result<Scalar> {
        let d = self.int(den).inv().ok_or_else(|| Error::Validation("zero denominator".into()))?;
        Ok(&self.int(num) * &d)
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(self) -> Option<u64> {
        match self {
            Field::Fp { p } => Some(p as u64),
            Field::Q => None,
        }
    }

    /// Every element of a prime field in the order 0, 1, ..., p-1.
    pub fn elements(self) -> Result<Vec<Scalar>> {
        match self {
            Field::Fp { p } => Ok((0..p).map(|v| Scalar::Fp { p, v }).collect()),
            Field::Q => Err(Error::Unsupported("cannot list elements of Q".into())),
        }
    }

    /// Parses a JSON coefficient: an integer, or a "num/den" string.
    pub fn parse_json(self, v: &serde_json::Value) -> Result<Scalar> {
        match v {
            serde_json::Value::Number(n) => {
                let n = n.as_i64().ok_or_else(|| Error::Parse(format!("bad coefficient {v}")))?;
                Ok(self.int(n))
            }
            serde_json::Value::String(s) => self.parse_str(s),
            _ => Err(Error::Parse(format!("bad coefficient {v}"))),
        }
    }

    pub fn parse_str(self, s: &str) -> Result<Scalar> {
        let bad = || Error::Parse(format!("bad coefficient {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s.trim(), "1"),
        };
        match self {
            Field::Q => {
                let n: BigInt = num.parse().map_err(|_| bad())?;
                let d: BigInt = den.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::Q(BigRational::new(n, d)))
            }
            Field::Fp { .. } => {
                let n: i64 = num.parse().map_err(|_| bad())?;
                let d: i64 = den.parse().map_err(|_| bad())?;
                self.ratio(n, d).map_err(|_| bad())
            }
        }
    }
}

/// A field element tagged with its field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp { p: u32, v: u32 },
    Q(BigRational),
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { v, .. } => write!(f, "{v}"),
            Scalar::Q(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Fp { p, .. } => Field::Fp { p: *p },
            Scalar::Q(_) => Field::Q,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { v, .. } => *v == 0,
            Scalar::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { v, .. } => *v == 1,
            Scalar::Q(q) => q.is_one(),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Fp { p, v } => {
                let (p64, mut base, mut e, mut acc) = (*p as u64, *v as u64, *p as u64 - 2, 1u64);
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % p64;
                    }
                    base = base * base % p64;
                    e >>= 1;
                }
                Scalar::Fp { p: *p, v: acc as u32 }
            }
            Scalar::Q(q) => Scalar::Q(q.recip()),
        })
    }

    /// JSON form: integers for prime fields, "num/den" strings for Q.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Fp { v, .. } => serde_json::Value::from(*v),
            Scalar::Q(_) => serde_json::Value::String(self.to_string()),
        }
    }

    /// Signed integer representative, used for small display and tests.
    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Scalar::Fp { v, .. } => Some(*v as i64),
            Scalar::Q(q) if q.is_integer() => {
                let n = q.numer();
                if n.abs() < BigInt::from(i64::MAX) {
                    n.to_string().parse().ok()
                } else {
                    None
                }
            }
            Scalar::Q(_) => None,
        }
    }
}

fn fp_op(a: &Scalar, b: &Scalar, op: impl Fn(u64, u64, u64) -> u64) -> Scalar {
    match (a, b) {
        (Scalar::Fp { p, v }, Scalar::Fp { p: q, v: w }) => {
            assert_eq!(p, q, "mixed prime fields");
            Scalar::Fp { p: *p, v: op(*v as u64, *w as u64, *p as u64) as u32 }
        }
        _ => unreachable!(),
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { .. }, Scalar::Fp { .. }) => fp_op(self, rhs, |a, b, p| (a + b) % p),
            _ => panic!("mixed scalar fields"),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            (Scalar::Fp { .. }, Scalar::Fp { .. }) => fp_op(self, rhs, |a, b, p| (a + p - b) % p),
            _ => panic!("mixed scalar fields"),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { .. }, Scalar::Fp { .. }) => fp_op(self, rhs, |a, b, p| a * b % p),
            _ => panic!("mixed scalar fields"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { p, v } => Scalar::Fp { p: *p, v: (*p - *v) % *p },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverses() {
        let f = Field::fp(7).unwrap();
        for n in 1..7 {
            let x = f.int(n);
            assert!((&x * &x.inv().unwrap()).is_one());
        }
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(Field::fp(4).is_err());
        assert!(Field::fp(1).is_err());
        assert!(Field::fp(2).is_ok());
    }

    #[test]
    fn rational_strings_round_trip() {
        let x = Field::Q.parse_str("-6/4").unwrap();
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(Field::Q.parse_str(&x.to_string()).unwrap(), x);
        assert_eq!(Field::Q.parse_str("5").unwrap(), Field::Q.int(5));
    }

    #[test]
    fn fp_fraction_parsing() {
        let f = Field::fp(5).unwrap();
        assert_eq!(f.parse_str("1/2").unwrap(), f.int(3));
        assert!(f.parse_str("1/5").is_err());
    }
}
