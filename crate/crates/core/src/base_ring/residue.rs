use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The residue field `k = A/(t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ResidueField {
    Rationals,
    Prime(u64),
}

/// An element of `k`. Modular values carry their modulus and are kept in `0..q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ResidueElem {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

pub(crate) fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, q);
        }
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    acc
}

pub(crate) fn reduce_bigint(n: &BigInt, q: u64) -> u64 {
    n.mod_floor(&BigInt::from(q)).to_u64().expect("residue fits in u64")
}

impl ResidueField {
    pub fn zero(self) -> ResidueElem {
        self.from_i64(0)
    }

    pub fn one(self) -> ResidueElem {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> ResidueElem {
        match self {
            ResidueField::Rationals => ResidueElem::Rational(BigRational::from_integer(n.into())),
            ResidueField::Prime(q) => ResidueElem::Modular {
                value: n.rem_euclid(q as i64) as u64,
                modulus: q,
            },
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> ResidueElem {
        match self {
            ResidueField::Rationals => ResidueElem::Rational(BigRational::from_integer(n.clone())),
            ResidueField::Prime(q) => ResidueElem::Modular {
                value: reduce_bigint(n, q),
                modulus: q,
            },
        }
    }

    /// Image of a rational number; `None` when the denominator vanishes in `k`.
    pub fn from_rational(self, x: &BigRational) -> Option<ResidueElem> {
        match self {
            ResidueField::Rationals => Some(ResidueElem::Rational(x.clone())),
            ResidueField::Prime(q) => {
                let den = reduce_bigint(x.denom(), q);
                if den == 0 {
                    return None;
                }
                let num = reduce_bigint(x.numer(), q);
                Some(ResidueElem::Modular {
                    value: mul_mod(num, pow_mod(den, q - 2, q), q),
                    modulus: q,
                })
            }
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            ResidueField::Rationals => 0,
            ResidueField::Prime(q) => q,
        }
    }
}

impl fmt::Display for ResidueField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueField::Rationals => write!(f, "Q"),
            ResidueField::Prime(q) => write!(f, "F_{q}"),
        }
    }
}

impl ResidueElem {
    pub fn field(&self) -> ResidueField {
        match self {
            ResidueElem::Rational(_) => ResidueField::Rationals,
            ResidueElem::Modular { modulus, .. } => ResidueField::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ResidueElem::Rational(q) => q.is_zero(),
            ResidueElem::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            ResidueElem::Rational(q) => q.is_one(),
            ResidueElem::Modular { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, other: &ResidueElem) -> ResidueElem {
        match (self, other) {
            (ResidueElem::Rational(a), ResidueElem::Rational(b)) => ResidueElem::Rational(a + b),
            (ResidueElem::Modular { value: a, modulus: q }, ResidueElem::Modular { value: b, modulus: q2 }) => {
                assert_eq!(q, q2, "mixed residue fields");
                ResidueElem::Modular { value: ((*a as u128 + *b as u128) % *q as u128) as u64, modulus: *q }
            }
            _ => panic!("mixed residue fields"),
        }
    }

    pub fn add_assign(&mut self, other: &ResidueElem) {
        match (self, other) {
            (ResidueElem::Rational(a), ResidueElem::Rational(b)) => *a += b,
            (ResidueElem::Modular { value: a, modulus: q }, ResidueElem::Modular { value: b, .. }) => {
                *a = ((*a as u128 + *b as u128) % *q as u128) as u64;
            }
            _ => panic!("mixed residue fields"),
        }
    }

    pub fn neg(&self) -> ResidueElem {
        match self {
            ResidueElem::Rational(a) => ResidueElem::Rational(-a),
            ResidueElem::Modular { value, modulus } => ResidueElem::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }

    pub fn sub(&self, other: &ResidueElem) -> ResidueElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ResidueElem) -> ResidueElem {
        match (self, other) {
            (ResidueElem::Rational(a), ResidueElem::Rational(b)) => ResidueElem::Rational(a * b),
            (ResidueElem::Modular { value: a, modulus: q }, ResidueElem::Modular { value: b, modulus: q2 }) => {
                assert_eq!(q, q2, "mixed residue fields");
                ResidueElem::Modular { value: mul_mod(*a, *b, *q), modulus: *q }
            }
            _ => panic!("mixed residue fields"),
        }
    }

    pub fn inv(&self) -> Option<ResidueElem> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            ResidueElem::Rational(a) => ResidueElem::Rational(a.recip()),
            ResidueElem::Modular { value, modulus } => ResidueElem::Modular {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// True when the printed form starts with a minus sign.
    pub(crate) fn is_negative(&self) -> bool {
        match self {
            ResidueElem::Rational(a) => a.is_negative(),
            ResidueElem::Modular { .. } => false,
        }
    }
}

impl fmt::Display for ResidueElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueElem::Rational(a) => write!(f, "{a}"),
            ResidueElem::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let k = ResidueField::Prime(101);
        let x = k.from_i64(2);
        assert_eq!(x.mul(&x.inv().unwrap()), k.one());
        assert_eq!(k.from_i64(-1), k.from_i64(100));
    }

    #[test]
    fn rational_image_in_prime_field() {
        let k = ResidueField::Prime(5);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(k.from_rational(&half), Some(k.from_i64(3)));
        let fifth = BigRational::new(1.into(), 5.into());
        assert_eq!(k.from_rational(&fifth), None);
    }

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(101) && is_prime(5));
        assert!(!is_prime(1) && !is_prime(91));
    }
}
