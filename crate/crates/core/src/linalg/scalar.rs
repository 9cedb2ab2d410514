use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest prime accepted for `F_p`; keeps products of residues inside `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// The ground field: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Checked constructor for `F_p`.
    pub fn prime(p: u64) -> Result<Field> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidField(format!(
                "{p} is not a prime below 2^31"
            )));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Modular { value: 0, modulus: p },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Modular {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// The image of `num / den`, or `None` when `den` vanishes in the field.
    pub fn from_ratio(self, num: &BigInt, den: &BigInt) -> Option<Scalar> {
        match self {
            Field::Rational => {
                if den.is_zero() {
                    None
                } else {
                    Some(Scalar::Rational(BigRational::new(num.clone(), den.clone())))
                }
            }
            Field::Prime(p) => {
                let reduce = |n: &BigInt| {
                    let m = BigInt::from(p);
                    ((n % &m + &m) % &m).to_u64().unwrap_or(0)
                };
                let d = Scalar::Modular { value: reduce(den), modulus: p };
                let n = Scalar::Modular { value: reduce(num), modulus: p };
                d.inverse().map(|inv| &n * &inv)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of a [`Field`].
///
/// Rationals are kept in lowest terms with a positive denominator (the
/// invariant maintained by `BigRational`); residues lie in `[0, p)`.
/// Mixing elements of different fields in one operation panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (
                Scalar::Modular { value: a, modulus: p },
                Scalar::Modular { value: b, modulus: q },
            ) if p == q => Scalar::Modular { value: (a + b) % p, modulus: *p },
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (
                Scalar::Modular { value: a, modulus: p },
                Scalar::Modular { value: b, modulus: q },
            ) if p == q => Scalar::Modular { value: (a + p - b) % p, modulus: *p },
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (
                Scalar::Modular { value: a, modulus: p },
                Scalar::Modular { value: b, modulus: q },
            ) if p == q => Scalar::Modular { value: a * b % p, modulus: *p },
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Scalar {
    /// Sign-aware helper for pretty printing relations.
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_lowest_terms() {
        let f = Field::Rational;
        let x = f.from_ratio(&BigInt::from(4), &BigInt::from(-6)).unwrap();
        match &x {
            Scalar::Rational(q) => {
                assert_eq!(q.numer(), &BigInt::from(-2));
                assert_eq!(q.denom(), &BigInt::from(3));
            }
            _ => unreachable!(),
        }
        assert_eq!(x.to_string(), "-2/3");
    }

    #[test]
    fn modular_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(-1);
        assert_eq!(a, f.from_i64(6));
        let inv = f.from_i64(3).inverse().unwrap();
        assert!((&inv * &f.from_i64(3)).is_one());
        assert!(f.from_ratio(&BigInt::from(1), &BigInt::from(14)).is_none());
        assert_eq!(
            f.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap(),
            f.from_i64(4)
        );
    }

    #[test]
    fn rejects_non_primes() {
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(MAX_PRIME + 2).is_err());
        assert!(Field::prime(2).is_ok());
    }

    #[test]
    #[should_panic(expected = "mismatch")]
    fn mixing_fields_panics() {
        let _ = &Field::Rational.one() + &Field::Prime(2).one();
    }
}
