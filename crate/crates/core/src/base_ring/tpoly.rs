//! Sparse polynomials in `t` over the residue field.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::residue::{reduce_bigint, ResidueElem, ResidueField};

/// Terms are sorted by exponent and never carry a zero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct TPoly {
    field: ResidueField,
    terms: Vec<(u32, ResidueElem)>,
}

impl TPoly {
    pub fn zero(field: ResidueField) -> Self {
        TPoly { field, terms: Vec::new() }
    }

    pub fn one(field: ResidueField) -> Self {
        Self::monomial(field, 0, field.one())
    }

    pub fn monomial(field: ResidueField, exp: u32, coeff: ResidueElem) -> Self {
        if coeff.is_zero() {
            return Self::zero(field);
        }
        TPoly { field, terms: vec![(exp, coeff)] }
    }

    pub fn from_terms(field: ResidueField, mut terms: Vec<(u32, ResidueElem)>) -> Self {
        terms.sort_by_key(|(e, _)| *e);
        let mut merged: Vec<(u32, ResidueElem)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match merged.last_mut() {
                Some((le, lc)) if *le == e => lc.add_assign(&c),
                _ => merged.push((e, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        TPoly { field, terms: merged }
    }

    pub fn from_dense(field: ResidueField, coeffs: Vec<ResidueElem>) -> Self {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u32, c))
            .collect();
        TPoly { field, terms }
    }

    pub fn to_dense(&self) -> Vec<ResidueElem> {
        let len = self.degree().map_or(0, |d| d as usize + 1);
        let mut out = vec![self.field.zero(); len];
        for (e, c) in &self.terms {
            out[*e as usize] = c.clone();
        }
        out
    }

    pub fn field(&self) -> ResidueField {
        self.field
    }

    pub fn terms(&self) -> &[(u32, ResidueElem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn low_exp(&self) -> Option<u32> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.last().map(|(e, _)| *e)
    }

    pub fn coeff(&self, exp: u32) -> ResidueElem {
        match self.terms.binary_search_by_key(&exp, |(e, _)| *e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn constant_term(&self) -> ResidueElem {
        self.coeff(0)
    }

    pub fn add(&self, other: &TPoly) -> TPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let take_left = j == other.terms.len()
                || (i < self.terms.len() && self.terms[i].0 < other.terms[j].0);
            let take_right = i == self.terms.len()
                || (j < other.terms.len() && other.terms[j].0 < self.terms[i].0);
            if take_left {
                out.push(self.terms[i].clone());
                i += 1;
            } else if take_right {
                out.push(other.terms[j].clone());
                j += 1;
            } else {
                let c = self.terms[i].1.add(&other.terms[j].1);
                if !c.is_zero() {
                    out.push((self.terms[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        TPoly { field: self.field, terms: out }
    }

    pub fn neg(&self) -> TPoly {
        TPoly {
            field: self.field,
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &TPoly) -> TPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let lo = self.low_exp().unwrap() + other.low_exp().unwrap();
        let hi = self.degree().unwrap() + other.degree().unwrap();
        if self.field == ResidueField::Rationals && self.terms.len() * other.terms.len() > 4 {
            return self.mul_rational(other, lo, hi);
        }
        let mut acc: Vec<Option<ResidueElem>> = vec![None; (hi - lo + 1) as usize];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let slot = &mut acc[(ea + eb - lo) as usize];
                let prod = ca.mul(cb);
                match slot {
                    Some(s) => s.add_assign(&prod),
                    None => *slot = Some(prod),
                }
            }
        }
        let terms = acc
            .into_iter()
            .enumerate()
            .filter_map(|(i, c)| c.filter(|c| !c.is_zero()).map(|c| (i as u32 + lo, c)))
            .collect();
        TPoly { field: self.field, terms }
    }

    /// Product over a common denominator, so only the final coefficients
    /// get reduced.
    fn mul_rational(&self, other: &TPoly, lo: u32, hi: u32) -> TPoly {
        let (xs, xd) = integer_terms(&self.terms);
        let (ys, yd) = integer_terms(&other.terms);
        let mut acc = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (ea, ca) in &xs {
            for (eb, cb) in &ys {
                acc[(ea + eb - lo) as usize] += ca * cb;
            }
        }
        let den = xd * yd;
        let terms = acc
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u32 + lo, ResidueElem::Rational(BigRational::new(c, den.clone()))))
            .collect();
        TPoly { field: self.field, terms }
    }

    pub fn scale(&self, c: &ResidueElem) -> TPoly {
        if c.is_zero() {
            return Self::zero(self.field);
        }
        TPoly {
            field: self.field,
            terms: self.terms.iter().map(|(e, x)| (*e, x.mul(c))).collect(),
        }
    }

    pub fn shift_up(&self, k: u32) -> TPoly {
        TPoly {
            field: self.field,
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Divide by `t^k`; the caller guarantees `low_exp >= k`.
    pub fn shift_down(&self, k: u32) -> TPoly {
        debug_assert!(self.low_exp().is_none_or(|l| l >= k));
        TPoly {
            field: self.field,
            terms: self.terms.iter().map(|(e, c)| (e - k, c.clone())).collect(),
        }
    }
}

fn trim(v: &mut Vec<ResidueElem>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Dense long division over the residue field.
pub(crate) fn dense_divrem(
    field: ResidueField,
    a: &[ResidueElem],
    b: &[ResidueElem],
) -> (Vec<ResidueElem>, Vec<ResidueElem>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "division by the zero polynomial");
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = b.last().unwrap().inv().unwrap();
    let mut q = vec![field.zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap().mul(&lead_inv);
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = r[shift + i].sub(&c.mul(bc));
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// Monic gcd.
pub(crate) fn dense_gcd(
    field: ResidueField,
    a: &[ResidueElem],
    b: &[ResidueElem],
) -> Vec<ResidueElem> {
    if field == ResidueField::Rationals {
        return rational_gcd(a, b);
    }
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = dense_divrem(field, &x, &y);
        x = y;
        y = r;
    }
    if let Some(lead) = x.last().cloned() {
        let inv = lead.inv().unwrap();
        for c in x.iter_mut() {
            *c = c.mul(&inv);
        }
    }
    x
}

/// A prime for the modular coprimality test.
const GCD_PRIME: u64 = (1 << 61) - 1;

fn as_rational(c: &ResidueElem) -> &BigRational {
    match c {
        ResidueElem::Rational(q) => q,
        ResidueElem::Modular { .. } => unreachable!("rational coefficients expected"),
    }
}

fn integer_terms(terms: &[(u32, ResidueElem)]) -> (Vec<(u32, BigInt)>, BigInt) {
    let den = terms.iter().fold(BigInt::one(), |acc, (_, c)| {
        let d = as_rational(c).denom();
        if d.is_one() { acc } else { acc.lcm(d) }
    });
    let ints = terms
        .iter()
        .map(|(e, c)| {
            let q = as_rational(c);
            let n = if den.is_one() { q.numer().clone() } else { q.numer() * (&den / q.denom()) };
            (*e, n)
        })
        .collect();
    (ints, den)
}

/// Scale a rational polynomial to a primitive integer one.
fn primitive_integer(a: &[ResidueElem]) -> Vec<BigInt> {
    let mut v = a.to_vec();
    trim(&mut v);
    let lcm = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(as_rational(c).denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| (as_rational(c) * &lcm).to_integer()).collect();
    primitive_part(ints)
}

fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() && !content.is_one() {
        for c in v.iter_mut() {
            *c /= &content;
        }
    }
    v
}

fn mod_big(n: &BigInt) -> u64 {
    match n.to_i64() {
        Some(v) => v.rem_euclid(GCD_PRIME as i64) as u64,
        None => reduce_bigint(n, GCD_PRIME),
    }
}

fn mulp(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % GCD_PRIME as u128) as u64
}

/// Image modulo [`GCD_PRIME`], when it keeps the degree.
fn mod_image(a: &[ResidueElem]) -> Option<Vec<u64>> {
    let mut v = a.to_vec();
    trim(&mut v);
    let nums: Vec<u64> = v.iter().map(|c| mod_big(as_rational(c).numer())).collect();
    let dens: Vec<u64> = v.iter().map(|c| mod_big(as_rational(c).denom())).collect();
    if dens.contains(&0) {
        return None;
    }
    // Batch inversion: one exponentiation for the whole vector.
    let mut prefix = Vec::with_capacity(dens.len());
    let mut acc = 1u64;
    for d in &dens {
        prefix.push(acc);
        acc = mulp(acc, *d);
    }
    let mut inv = inv_mod(acc, GCD_PRIME);
    let mut image = vec![0u64; dens.len()];
    for i in (0..dens.len()).rev() {
        image[i] = mulp(nums[i], mulp(inv, prefix[i]));
        inv = mulp(inv, dens[i]);
    }
    match image.last() {
        Some(&lead) if lead != 0 => Some(image),
        _ => None,
    }
}

fn inv_mod(a: u64, q: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a, q - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % q as u128) as u64;
        }
        base = ((base as u128 * base as u128) % q as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Degree of the gcd modulo [`GCD_PRIME`].
fn mod_gcd_degree(mut x: Vec<u64>, mut y: Vec<u64>) -> usize {
    let q = GCD_PRIME;
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let lead_inv = inv_mod(*y.last().unwrap(), q);
        while x.len() >= y.len() {
            let shift = x.len() - y.len();
            let c = ((*x.last().unwrap() as u128 * lead_inv as u128) % q as u128) as u64;
            for (i, yc) in y.iter().enumerate() {
                let sub = ((c as u128 * *yc as u128) % q as u128) as u64;
                x[shift + i] = (x[shift + i] + q - sub) % q;
            }
            trim(&mut x);
            if x.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    x.len().saturating_sub(1)
}

/// Pseudo-remainder of `a` by `b` over the integers.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let lead = b.last().unwrap();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap().clone();
        for x in r.iter_mut() {
            *x *= lead;
        }
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &c * bc;
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

/// Monic gcd over `Q`. A gcd modulo a large prime settles the coprime case;
/// otherwise a primitive remainder sequence over `Z` keeps coefficients small.
fn rational_gcd(a: &[ResidueElem], b: &[ResidueElem]) -> Vec<ResidueElem> {
    let field = ResidueField::Rationals;
    if let (Some(xm), Some(ym)) = (mod_image(a), mod_image(b)) {
        if mod_gcd_degree(xm, ym) == 0 {
            return vec![field.one()];
        }
    }
    let mut x = primitive_integer(a);
    let mut y = primitive_integer(b);
    if x.is_empty() || y.is_empty() {
        let g = if x.is_empty() { y } else { x };
        return monic_rational(g);
    }
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = primitive_part(pseudo_rem(&x, &y));
        x = y;
        y = r;
    }
    monic_rational(x)
}

fn monic_rational(v: Vec<BigInt>) -> Vec<ResidueElem> {
    let Some(lead) = v.last().cloned() else {
        return Vec::new();
    };
    v.into_iter()
        .map(|c| ResidueElem::Rational(BigRational::new(c, lead.clone())))
        .collect()
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { c.neg() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (_, true) => write!(f, "t^{e}")?,
                (_, false) => write!(f, "{mag}*t^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> ResidueField {
        ResidueField::Rationals
    }

    fn poly(c: &[i64]) -> TPoly {
        TPoly::from_dense(q(), c.iter().map(|&x| q().from_i64(x)).collect())
    }

    #[test]
    fn product_and_display() {
        let p = poly(&[1, 1]).mul(&poly(&[1, -1]));
        assert_eq!(p, poly(&[1, 0, -1]));
        assert_eq!(p.to_string(), "1 - t^2");
        assert_eq!(poly(&[0, 0, 0, 2]).to_string(), "2*t^3");
    }

    #[test]
    fn gcd_of_shared_factor() {
        let a = poly(&[1, 1]).mul(&poly(&[2, 0, 1]));
        let b = poly(&[1, 1]).mul(&poly(&[3, 1]));
        let g = dense_gcd(q(), &a.to_dense(), &b.to_dense());
        assert_eq!(TPoly::from_dense(q(), g), poly(&[1, 1]));
    }

    #[test]
    fn gcd_with_fractional_coefficients() {
        let half = ResidueElem::Rational(BigRational::new(1.into(), 2.into()));
        let f = poly(&[3, 2]).scale(&half);
        let a = f.mul(&poly(&[1, 0, 5])).mul(&poly(&[1, 7]));
        let b = f.mul(&poly(&[1, 7])).mul(&poly(&[2, 1]));
        let g = dense_gcd(q(), &a.to_dense(), &b.to_dense());
        let expected = poly(&[3, 2]).mul(&poly(&[1, 7])).scale(&q().from_i64(14).inv().unwrap());
        assert_eq!(TPoly::from_dense(q(), g), expected);
        let coprime = dense_gcd(q(), &poly(&[1, 1]).to_dense(), &poly(&[1, 2]).to_dense());
        assert_eq!(coprime, vec![q().one()]);
    }

    #[test]
    fn divrem_exact() {
        let a = poly(&[1, 0, -1]);
        let (quo, rem) = dense_divrem(q(), &a.to_dense(), &poly(&[1, 1]).to_dense());
        assert!(rem.is_empty());
        assert_eq!(TPoly::from_dense(q(), quo), poly(&[1, -1]));
    }
}
