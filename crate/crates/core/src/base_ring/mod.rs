//! The base DVR `A` with local parameter `t` and residue field `k = A/(t)`.
//!
//! Two models are supported:
//! - `k[t]` localised at `(t)`, elements stored as reduced fractions whose
//!   denominator has constant term 1;
//! - `Z_(p)` with `t = p`, elements stored as rationals with `p`-free
//!   denominator.
//!
//! Equality is structural in both models, so every identity checked on top of
//! this module is an exact equality.

mod residue;
mod tpoly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use residue::{ResidueElem, ResidueField};
pub(crate) use residue::is_prime;
pub(crate) use tpoly::TPoly;

use crate::error::{Error, Result};
use tpoly::{dense_divrem, dense_gcd};

/// A t-adic valuation: a natural number, or infinity for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    /// `self >= n`, treating infinity as larger than everything.
    pub fn at_least(self, n: u32) -> bool {
        match self {
            Valuation::Finite(v) => v >= n,
            Valuation::Infinite => true,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Which model of `A` is in use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseRing {
    /// `k[t]_(t)` over the given residue field.
    Localized(ResidueField),
    /// `Z_(p)`, with `t = p`.
    PAdic(u64),
}

impl BaseRing {
    pub fn validate(self) -> Result<()> {
        match self {
            BaseRing::Localized(ResidueField::Rationals) => Ok(()),
            BaseRing::Localized(ResidueField::Prime(q)) if is_prime(q) && q < (1 << 62) => Ok(()),
            BaseRing::PAdic(p) if is_prime(p) && p < (1 << 62) => Ok(()),
            BaseRing::Localized(ResidueField::Prime(q)) => {
                Err(Error::Config(format!("residue characteristic {q} is not a supported prime")))
            }
            BaseRing::PAdic(p) => Err(Error::Config(format!("p = {p} is not a supported prime"))),
        }
    }

    pub fn residue_field(self) -> ResidueField {
        match self {
            BaseRing::Localized(k) => k,
            BaseRing::PAdic(p) => ResidueField::Prime(p),
        }
    }

    pub fn zero(self) -> AElem {
        self.from_i64(0)
    }

    pub fn one(self) -> AElem {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> AElem {
        match self {
            BaseRing::Localized(k) => AElem::local(TPoly::monomial(k, 0, k.from_i64(n))),
            BaseRing::PAdic(p) => AElem {
                repr: Repr::PAdic { p, value: BigRational::from_integer(n.into()) },
            },
        }
    }

    pub fn t(self) -> AElem {
        self.t_pow(1)
    }

    pub fn t_pow(self, e: u32) -> AElem {
        self.one().mul_t_pow(e)
    }

    /// `sum_i coeffs[i] * t^i`.
    pub fn from_coeffs(self, coeffs: &[i64]) -> AElem {
        coeffs
            .iter()
            .enumerate()
            .fold(self.zero(), |acc, (i, &c)| acc + self.from_i64(c).mul_t_pow(i as u32))
    }

    /// A rational constant, if it lies in `A`.
    pub fn from_rational(self, x: &BigRational) -> Result<AElem> {
        match self {
            BaseRing::Localized(k) => match k.from_rational(x) {
                Some(c) => Ok(AElem::local(TPoly::monomial(k, 0, c))),
                None => Err(Error::NotInBaseRing(x.to_string())),
            },
            BaseRing::PAdic(p) => {
                if x.denom().is_multiple_of(&BigInt::from(p)) {
                    Err(Error::NotInBaseRing(x.to_string()))
                } else {
                    Ok(AElem { repr: Repr::PAdic { p, value: x.clone() } })
                }
            }
        }
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Localized(k) => write!(f, "{k}[t]_(t)"),
            BaseRing::PAdic(p) => write!(f, "Z_({p})"),
        }
    }
}

/// An element of `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AElem {
    repr: Repr,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Local { num: TPoly, den: TPoly },
    PAdic { p: u64, value: BigRational },
}

fn coprime(a: &TPoly, b: &TPoly) -> bool {
    dense_gcd(a.field(), &a.to_dense(), &b.to_dense()).len() == 1
}

fn p_valuation(n: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && n.is_multiple_of(&p) {
        n /= &p;
        v += 1;
    }
    v
}

impl AElem {
    fn local(num: TPoly) -> AElem {
        let den = TPoly::one(num.field());
        AElem { repr: Repr::Local { num, den } }
    }

    /// Canonical form: reduced, denominator constant term 1, zero is `0/1`.
    fn local_fraction(num: TPoly, den: TPoly) -> AElem {
        let field = num.field();
        if num.is_zero() {
            return AElem::local(num);
        }
        if den.is_one() {
            return AElem::local(num);
        }
        let g = dense_gcd(field, &num.to_dense(), &den.to_dense());
        let (num, den) = if g.len() > 1 {
            let (qn, _) = dense_divrem(field, &num.to_dense(), &g);
            let (qd, _) = dense_divrem(field, &den.to_dense(), &g);
            (TPoly::from_dense(field, qn), TPoly::from_dense(field, qd))
        } else {
            (num, den)
        };
        let c0 = den.constant_term();
        let inv = c0.inv().expect("denominator is a unit of A");
        AElem { repr: Repr::Local { num: num.scale(&inv), den: den.scale(&inv) } }
    }

    pub fn ring(&self) -> BaseRing {
        match &self.repr {
            Repr::Local { num, .. } => BaseRing::Localized(num.field()),
            Repr::PAdic { p, .. } => BaseRing::PAdic(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Local { num, .. } => num.is_zero(),
            Repr::PAdic { value, .. } => value.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Local { num, den } => num.is_one() && den.is_one(),
            Repr::PAdic { value, .. } => value.is_one(),
        }
    }

    pub fn valuation(&self) -> Valuation {
        match &self.repr {
            Repr::Local { num, .. } => num.low_exp().map_or(Valuation::Infinite, Valuation::Finite),
            Repr::PAdic { p, value } => {
                if value.is_zero() {
                    Valuation::Infinite
                } else {
                    Valuation::Finite(p_valuation(value.numer(), *p))
                }
            }
        }
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Valuation::Finite(0)
    }

    /// `self` divides `other` in `A`.
    pub fn divides(&self, other: &AElem) -> bool {
        other.valuation() >= self.valuation()
    }

    /// Reduction modulo `t`.
    pub fn residue(&self) -> ResidueElem {
        match &self.repr {
            Repr::Local { num, .. } => num.constant_term(),
            Repr::PAdic { p, value } => ResidueField::Prime(*p)
                .from_rational(value)
                .expect("denominator is prime to p"),
        }
    }

    pub fn mul_t_pow(&self, e: u32) -> AElem {
        if e == 0 {
            return self.clone();
        }
        match &self.repr {
            Repr::Local { num, den } => AElem {
                repr: Repr::Local { num: num.shift_up(e), den: den.clone() },
            },
            Repr::PAdic { p, value } => AElem {
                repr: Repr::PAdic {
                    p: *p,
                    value: value * BigRational::from_integer(num_traits::pow(BigInt::from(*p), e as usize)),
                },
            },
        }
    }

    /// Exact division by `t^e`.
    pub fn div_t_pow(&self, e: u32) -> Result<AElem> {
        if !self.valuation().at_least(e) {
            return Err(Error::NotDivisible { value: self.to_string(), exponent: e });
        }
        if e == 0 || self.is_zero() {
            return Ok(self.clone());
        }
        Ok(match &self.repr {
            Repr::Local { num, den } => AElem {
                repr: Repr::Local { num: num.shift_down(e), den: den.clone() },
            },
            Repr::PAdic { p, value } => AElem {
                repr: Repr::PAdic {
                    p: *p,
                    value: value / BigRational::from_integer(num_traits::pow(BigInt::from(*p), e as usize)),
                },
            },
        })
    }

    /// `a = t^n * u` with `u` a unit.
    pub fn unit_part_split(&self) -> Result<(u32, AElem)> {
        match self.valuation() {
            Valuation::Infinite => Err(Error::ZeroInput),
            Valuation::Finite(n) => Ok((n, self.div_t_pow(n)?)),
        }
    }

    pub fn invert_unit(&self) -> Result<AElem> {
        if !self.is_unit() {
            return Err(Error::NotAUnit(self.to_string()));
        }
        Ok(match &self.repr {
            Repr::Local { num, den } => AElem::local_fraction(den.clone(), num.clone()),
            Repr::PAdic { p, value } => AElem { repr: Repr::PAdic { p: *p, value: value.recip() } },
        })
    }

    /// The unique `q` in `A` with `q * divisor = self`, if it exists.
    pub fn checked_div(&self, divisor: &AElem) -> Result<AElem> {
        let (v, unit) = divisor.unit_part_split()?;
        Ok(&self.div_t_pow(v)? * &unit.invert_unit()?)
    }

    pub fn pow(&self, e: u32) -> AElem {
        let mut acc = self.ring().one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Numerator/denominator as dense coefficient lists in `t` (local model only).
    pub(crate) fn local_parts(&self) -> Option<(&TPoly, &TPoly)> {
        match &self.repr {
            Repr::Local { num, den } => Some((num, den)),
            Repr::PAdic { .. } => None,
        }
    }

    /// The rational value (p-adic model only).
    pub(crate) fn padic_value(&self) -> Option<(u64, &BigRational)> {
        match &self.repr {
            Repr::PAdic { p, value } => Some((*p, value)),
            Repr::Local { .. } => None,
        }
    }

    fn combine(&self, other: &AElem, sign: bool) -> AElem {
        match (&self.repr, &other.repr) {
            (Repr::Local { num: n1, den: d1 }, Repr::Local { num: n2, den: d2 }) => {
                assert_eq!(n1.field(), n2.field(), "operands live in different base rings");
                let rhs = |n: &TPoly| if sign { n.clone() } else { n.neg() };
                if d1.is_one() && d2.is_one() {
                    return AElem::local(n1.add(&rhs(n2)));
                }
                if d1 == d2 {
                    return AElem::local_fraction(n1.add(&rhs(n2)), d1.clone());
                }
                let num = n1.mul(d2).add(&rhs(&n2.mul(d1)));
                // With coprime denominators the sum is already in lowest terms.
                if d1.is_one() || d2.is_one() || coprime(d1, d2) {
                    if num.is_zero() {
                        return AElem::local(num);
                    }
                    return AElem { repr: Repr::Local { num, den: d1.mul(d2) } };
                }
                AElem::local_fraction(num, d1.mul(d2))
            }
            (Repr::PAdic { p, value: a }, Repr::PAdic { p: p2, value: b }) => {
                assert_eq!(p, p2, "operands live in different base rings");
                AElem { repr: Repr::PAdic { p: *p, value: if sign { a + b } else { a - b } } }
            }
            _ => panic!("operands live in different base rings"),
        }
    }

    fn product(&self, other: &AElem) -> AElem {
        match (&self.repr, &other.repr) {
            (Repr::Local { num: n1, den: d1 }, Repr::Local { num: n2, den: d2 }) => {
                assert_eq!(n1.field(), n2.field(), "operands live in different base rings");
                if d1.is_one() && d2.is_one() {
                    return AElem::local(n1.mul(n2));
                }
                // Only the cross pairs can share factors.
                let a = AElem::local_fraction(n1.clone(), d2.clone());
                let b = AElem::local_fraction(n2.clone(), d1.clone());
                let (Repr::Local { num: an, den: ad }, Repr::Local { num: bn, den: bd }) = (&a.repr, &b.repr) else {
                    unreachable!()
                };
                if an.is_zero() || bn.is_zero() {
                    return AElem::local(TPoly::zero(n1.field()));
                }
                AElem { repr: Repr::Local { num: an.mul(bn), den: ad.mul(bd) } }
            }
            (Repr::PAdic { p, value: a }, Repr::PAdic { p: p2, value: b }) => {
                assert_eq!(p, p2, "operands live in different base rings");
                AElem { repr: Repr::PAdic { p: *p, value: a * b } }
            }
            _ => panic!("operands live in different base rings"),
        }
    }
}

impl Add for &AElem {
    type Output = AElem;
    fn add(self, rhs: &AElem) -> AElem {
        self.combine(rhs, true)
    }
}

impl Sub for &AElem {
    type Output = AElem;
    fn sub(self, rhs: &AElem) -> AElem {
        self.combine(rhs, false)
    }
}

impl Mul for &AElem {
    type Output = AElem;
    fn mul(self, rhs: &AElem) -> AElem {
        self.product(rhs)
    }
}

impl Neg for &AElem {
    type Output = AElem;
    fn neg(self) -> AElem {
        match &self.repr {
            Repr::Local { num, den } => AElem { repr: Repr::Local { num: num.neg(), den: den.clone() } },
            Repr::PAdic { p, value } => AElem { repr: Repr::PAdic { p: *p, value: -value } },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for AElem {
            type Output = AElem;
            fn $m(self, rhs: AElem) -> AElem {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&AElem> for AElem {
            type Output = AElem;
            fn $m(self, rhs: &AElem) -> AElem {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for AElem {
    type Output = AElem;
    fn neg(self) -> AElem {
        -&self
    }
}

impl fmt::Display for AElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Local { num, den } if den.is_one() => write!(f, "{num}"),
            Repr::Local { num, den } => write!(f, "({num})/({den})"),
            Repr::PAdic { value, .. } => {
                if value.is_integer() {
                    write!(f, "{}", value.numer())
                } else if value.is_negative() {
                    write!(f, "-{}/{}", value.numer().abs(), value.denom())
                } else {
                    write!(f, "{}/{}", value.numer(), value.denom())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: BaseRing = BaseRing::Localized(ResidueField::Rationals);

    #[test]
    fn valuation_examples() {
        assert_eq!(Q.zero().valuation(), Valuation::Infinite);
        assert_eq!(Q.from_coeffs(&[1, 0, 0, 0, 1]).valuation(), Valuation::Finite(0));
        assert_eq!(Q.t_pow(3).add(&Q.t_pow(7)).valuation(), Valuation::Finite(3));
    }

    #[test]
    fn unit_part_split_examples() {
        let a = &Q.t_pow(3) + &Q.t_pow(7);
        assert_eq!(a.unit_part_split().unwrap(), (3, Q.from_coeffs(&[1, 0, 0, 0, 1])));
        assert_eq!(Q.from_i64(5).unit_part_split().unwrap(), (0, Q.from_i64(5)));
        let z5 = BaseRing::PAdic(5);
        assert_eq!(z5.from_i64(50).unit_part_split().unwrap(), (2, z5.from_i64(2)));
        assert_eq!(Q.zero().unit_part_split(), Err(Error::ZeroInput));
    }

    #[test]
    fn invert_unit_examples() {
        let u = Q.from_coeffs(&[1, 1]);
        let inv = u.invert_unit().unwrap();
        assert!((&u * &inv).is_one());
        assert_eq!(inv.to_string(), "(1)/(1 + t)");
        let third = Q.from_i64(3).invert_unit().unwrap();
        assert_eq!(third.to_string(), "1/3");
        assert!(matches!(Q.t().invert_unit(), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn residue_examples() {
        let k = ResidueField::Rationals;
        assert_eq!(Q.from_coeffs(&[1, 0, 0, 0, 1]).residue(), k.one());
        assert_eq!(Q.t().residue(), k.zero());
        let a = &Q.from_i64(7) * &Q.from_coeffs(&[1, 1]).invert_unit().unwrap();
        assert_eq!(a.residue(), k.from_i64(7));
    }

    #[test]
    fn fractions_reduce_to_canonical_form() {
        let u = Q.from_coeffs(&[1, 1]);
        let inv = u.invert_unit().unwrap();
        // (1+t)^2 / (1+t) == 1+t structurally
        assert_eq!(&(&u * &u) * &inv, u);
        let sum = &inv + &(-&inv);
        assert_eq!(sum, Q.zero());
    }

    #[test]
    fn padic_arithmetic() {
        let z5 = BaseRing::PAdic(5);
        let half = z5.from_rational(&BigRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(half.residue(), ResidueField::Prime(5).from_i64(3));
        assert!(z5.from_rational(&BigRational::new(1.into(), 5.into())).is_err());
        assert_eq!(z5.t_pow(2), z5.from_i64(25));
        assert_eq!(z5.from_i64(75).checked_div(&z5.from_i64(15)).unwrap(), z5.from_i64(5));
    }

    #[test]
    fn checked_div_respects_valuation() {
        let a = Q.t();
        assert!(a.checked_div(&Q.t_pow(2)).is_err());
        assert_eq!(Q.t_pow(4).checked_div(&Q.t_pow(2)).unwrap(), Q.t_pow(2));
    }
}
