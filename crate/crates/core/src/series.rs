//! Truncated elements of the completion `Â/t^N`.
//!
//! This representation shares nothing with the fraction arithmetic of
//! [`crate::base_ring`] beyond the residue field, so it serves as the
//! independent oracle for ring identities and valuation bounds.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::base_ring::{AElem, BaseRing, ResidueElem, ResidueField};

/// Lower bound on a valuation read off a truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesValuation {
    /// Lowest nonzero coefficient index.
    Exact(u32),
    /// Every coefficient below the precision vanishes.
    AtLeast(u32),
}

impl fmt::Display for SeriesValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesValuation::Exact(v) => write!(f, "{v}"),
            SeriesValuation::AtLeast(n) => write!(f, ">= {n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    precision: u32,
    repr: Repr,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    /// Coefficients `c_0..c_{N-1}` over `k`.
    Coeffs { field: ResidueField, coeffs: Vec<ResidueElem> },
    /// A single residue modulo `p^N`, in `0..p^N`.
    Residue { p: u64, value: BigInt },
}

fn modulus(p: u64, n: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), n as usize)
}

impl TruncSeries {
    pub fn zero(ring: BaseRing, precision: u32) -> Self {
        Self::from_aelem(&ring.zero(), precision)
    }

    pub fn one(ring: BaseRing, precision: u32) -> Self {
        Self::from_aelem(&ring.one(), precision)
    }

    /// Image of `a` under `A -> Â/t^N`.
    pub fn from_aelem(a: &AElem, precision: u32) -> Self {
        assert!(precision >= 1, "precision must be positive");
        let n = precision as usize;
        if let Some((num, den)) = a.local_parts() {
            let field = num.field();
            let mut num_c = vec![field.zero(); n];
            for (e, c) in num.terms() {
                if (*e as usize) < n {
                    num_c[*e as usize] = c.clone();
                }
            }
            let mut den_c = vec![field.zero(); n];
            for (e, c) in den.terms() {
                if (*e as usize) < n {
                    den_c[*e as usize] = c.clone();
                }
            }
            let inv = invert_coeffs(field, &den_c);
            return TruncSeries {
                precision,
                repr: Repr::Coeffs { field, coeffs: mul_coeffs(field, &num_c, &inv) },
            };
        }
        let (p, value) = a.padic_value().expect("p-adic element");
        let m = modulus(p, precision);
        let den_inv = mod_inverse(value.denom(), &m);
        TruncSeries {
            precision,
            repr: Repr::Residue { p, value: (value.numer() * den_inv).mod_floor(&m) },
        }
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn ring(&self) -> BaseRing {
        match &self.repr {
            Repr::Coeffs { field, .. } => BaseRing::Localized(*field),
            Repr::Residue { p, .. } => BaseRing::PAdic(*p),
        }
    }

    /// Coefficient of `t^i` (a base-p digit in the p-adic model).
    pub fn coeff(&self, i: u32) -> ResidueElem {
        match &self.repr {
            Repr::Coeffs { field, coeffs } => {
                coeffs.get(i as usize).cloned().unwrap_or_else(|| field.zero())
            }
            Repr::Residue { p, value } => {
                let digit: BigInt = (value / modulus(*p, i)).mod_floor(&BigInt::from(*p));
                ResidueField::Prime(*p).from_bigint(&digit)
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Coeffs { coeffs, .. } => coeffs.iter().all(|c| c.is_zero()),
            Repr::Residue { value, .. } => value.is_zero(),
        }
    }

    /// Reduce to a smaller precision.
    pub fn truncate(&self, precision: u32) -> Self {
        let precision = precision.min(self.precision);
        let repr = match &self.repr {
            Repr::Coeffs { field, coeffs } => Repr::Coeffs {
                field: *field,
                coeffs: coeffs[..precision as usize].to_vec(),
            },
            Repr::Residue { p, value } => Repr::Residue {
                p: *p,
                value: value.mod_floor(&modulus(*p, precision)),
            },
        };
        TruncSeries { precision, repr }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let n = self.precision.min(other.precision);
        (self.truncate(n), other.truncate(n))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let repr = match (a.repr, b.repr) {
            (Repr::Coeffs { field, coeffs: x }, Repr::Coeffs { coeffs: y, .. }) => Repr::Coeffs {
                field,
                coeffs: x.iter().zip(&y).map(|(u, v)| u.add(v)).collect(),
            },
            (Repr::Residue { p, value: x }, Repr::Residue { value: y, .. }) => Repr::Residue {
                p,
                value: (x + y).mod_floor(&modulus(p, a.precision)),
            },
            _ => panic!("operands live in different base rings"),
        };
        TruncSeries { precision: a.precision, repr }
    }

    pub fn neg(&self) -> Self {
        let repr = match &self.repr {
            Repr::Coeffs { field, coeffs } => Repr::Coeffs {
                field: *field,
                coeffs: coeffs.iter().map(|c| c.neg()).collect(),
            },
            Repr::Residue { p, value } => Repr::Residue {
                p: *p,
                value: (-value).mod_floor(&modulus(*p, self.precision)),
            },
        };
        TruncSeries { precision: self.precision, repr }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let repr = match (a.repr, b.repr) {
            (Repr::Coeffs { field, coeffs: x }, Repr::Coeffs { coeffs: y, .. }) => {
                Repr::Coeffs { field, coeffs: mul_coeffs(field, &x, &y) }
            }
            (Repr::Residue { p, value: x }, Repr::Residue { value: y, .. }) => Repr::Residue {
                p,
                value: (x * y).mod_floor(&modulus(p, a.precision)),
            },
            _ => panic!("operands live in different base rings"),
        };
        TruncSeries { precision: a.precision, repr }
    }

    pub fn scale(&self, a: &AElem) -> Self {
        self.mul(&TruncSeries::from_aelem(a, self.precision))
    }

    /// Multiply by `t^e`, keeping the precision.
    pub fn mul_t_pow(&self, e: u32) -> Self {
        let t = TruncSeries::from_aelem(&self.ring().t_pow(e), self.precision);
        self.mul(&t)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = TruncSeries::one(self.ring(), self.precision);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn val_lower_bound(&self) -> SeriesValuation {
        match &self.repr {
            Repr::Coeffs { coeffs, .. } => match coeffs.iter().position(|c| !c.is_zero()) {
                Some(i) => SeriesValuation::Exact(i as u32),
                None => SeriesValuation::AtLeast(self.precision),
            },
            Repr::Residue { p, value } => {
                if value.is_zero() {
                    return SeriesValuation::AtLeast(self.precision);
                }
                let p = BigInt::from(*p);
                let mut v = value.clone();
                let mut n = 0;
                while v.is_multiple_of(&p) {
                    v /= &p;
                    n += 1;
                }
                SeriesValuation::Exact(n)
            }
        }
    }

    /// Add 1 to the coefficient of `t^i`; used to inject faults.
    pub fn flip_coefficient(&self, i: u32) -> Self {
        let bump = TruncSeries::from_aelem(&self.ring().t_pow(i), self.precision);
        self.add(&bump)
    }
}

/// Integer numerators over a common denominator.
fn common_denominator(x: &[ResidueElem]) -> (Vec<BigInt>, BigInt) {
    let rat = |c: &ResidueElem| match c {
        ResidueElem::Rational(q) => q.clone(),
        ResidueElem::Modular { .. } => unreachable!("rational coefficients expected"),
    };
    let den = x.iter().fold(BigInt::one(), |acc, c| acc.lcm(rat(c).denom()));
    let nums = x.iter().map(|c| (rat(c) * &den).to_integer()).collect();
    (nums, den)
}

fn over(num: BigInt, den: &BigInt) -> ResidueElem {
    ResidueElem::Rational(BigRational::new(num, den.clone()))
}

fn mul_coeffs(field: ResidueField, x: &[ResidueElem], y: &[ResidueElem]) -> Vec<ResidueElem> {
    let n = x.len();
    if field == ResidueField::Rationals {
        let (xn, xd) = common_denominator(x);
        let (yn, yd) = common_denominator(y);
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in xn.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in yn[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        let den = xd * yd;
        return out.into_iter().map(|c| over(c, &den)).collect();
    }
    let mut out = vec![field.zero(); n];
    for (i, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y[..n - i].iter().enumerate() {
            if !b.is_zero() {
                out[i + j].add_assign(&a.mul(b));
            }
        }
    }
    out
}

/// Inverse of a series with invertible constant term.
fn invert_coeffs(field: ResidueField, x: &[ResidueElem]) -> Vec<ResidueElem> {
    let n = x.len();
    if field == ResidueField::Rationals {
        // 1/x = d/X with X = d x integral; o_k = X_0^{k+1} (1/X)_k stays integral.
        let (xs, d) = common_denominator(x);
        assert!(!xs[0].is_zero(), "unit series");
        let mut o: Vec<BigInt> = Vec::with_capacity(n);
        let mut powers = vec![BigInt::one()];
        o.push(BigInt::one());
        for k in 1..n {
            powers.push(&powers[k - 1] * &xs[0]);
            let mut acc = BigInt::zero();
            for j in 1..=k {
                if !xs[j].is_zero() && !o[k - j].is_zero() {
                    acc += &xs[j] * &o[k - j] * &powers[j - 1];
                }
            }
            o.push(-acc);
        }
        let mut den = xs[0].clone();
        let mut out = Vec::with_capacity(n);
        for ok in o {
            out.push(ResidueElem::Rational(BigRational::new(ok * &d, den.clone())));
            den *= &xs[0];
        }
        return out;
    }
    let c0_inv = x[0].inv().expect("unit series");
    let mut out = vec![field.zero(); n];
    out[0] = c0_inv.clone();
    for k in 1..n {
        let mut acc = field.zero();
        for j in 1..=k {
            if !x[j].is_zero() && !out[k - j].is_zero() {
                acc.add_assign(&x[j].mul(&out[k - j]));
            }
        }
        out[k] = acc.neg().mul(&c0_inv);
    }
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "denominator not invertible modulo p^N");
    e.x.mod_floor(m)
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Coeffs { field, coeffs } => {
                let terms: Vec<(u32, ResidueElem)> = coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (i as u32, c.clone()))
                    .collect();
                let poly = crate::base_ring::TPoly::from_terms(*field, terms);
                write!(f, "{poly} + O(t^{})", self.precision)
            }
            Repr::Residue { p, value } => write!(f, "{value} mod {p}^{}", self.precision),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    const Q: BaseRing = BaseRing::Localized(ResidueField::Rationals);

    #[test]
    fn geometric_series() {
        let inv = Q.from_coeffs(&[1, 1]).invert_unit().unwrap();
        let s = TruncSeries::from_aelem(&inv, 3);
        assert_eq!(s, TruncSeries::from_aelem(&Q.from_coeffs(&[1, -1, 1]), 3));
    }

    #[test]
    fn truncation_kills_high_powers() {
        assert!(TruncSeries::from_aelem(&Q.t_pow(3), 3).is_zero());
        assert_eq!(
            TruncSeries::from_aelem(&Q.t_pow(5), 4).val_lower_bound(),
            SeriesValuation::AtLeast(4)
        );
        assert_eq!(TruncSeries::zero(Q, 8).val_lower_bound(), SeriesValuation::AtLeast(8));
    }

    #[test]
    fn padic_half_mod_25() {
        let z5 = BaseRing::PAdic(5);
        let half = z5.from_rational(&BigRational::new(1.into(), 2.into())).unwrap();
        let s = TruncSeries::from_aelem(&half, 2);
        assert_eq!(s, TruncSeries::from_aelem(&z5.from_i64(13), 2));
        assert_eq!(s.coeff(0), ResidueField::Prime(5).from_i64(3));
        assert_eq!(s.coeff(1), ResidueField::Prime(5).from_i64(2));
    }

    #[test]
    fn products() {
        let a = TruncSeries::from_aelem(&Q.from_coeffs(&[1, 1]), 3);
        let b = TruncSeries::from_aelem(&Q.from_coeffs(&[1, -1]), 3);
        assert_eq!(a.mul(&b), TruncSeries::from_aelem(&Q.from_coeffs(&[1, 0, -1]), 3));
        assert_eq!(a.add(&TruncSeries::zero(Q, 3)), a);
        // z = 1 + t^2 + t^6 mod t^7, squared by hand: 1 + 2t^2 + t^4 + 2t^6
        let z = TruncSeries::from_aelem(&Q.from_coeffs(&[1, 0, 1, 0, 0, 0, 1]), 7);
        let expect = TruncSeries::from_aelem(&Q.from_coeffs(&[1, 0, 2, 0, 1, 0, 2]), 7);
        assert_eq!(z.mul(&z), expect);
    }

    #[test]
    fn precision_is_min_of_operands() {
        let a = TruncSeries::from_aelem(&Q.one(), 5);
        let b = TruncSeries::from_aelem(&Q.one(), 3);
        assert_eq!(a.mul(&b).precision(), 3);
        assert_eq!(a.add(&b).precision(), 3);
    }
}
