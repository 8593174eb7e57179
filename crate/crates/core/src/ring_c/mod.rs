//! The subring `C = A[t(z_0 - a_0), (z_i - a_i)^2 : i >= 0]` of `B`.
//!
//! At level `s` write `u = z_s - a_s`, `y_s = u^2` and `w_s = t^{n_s+1} u`.
//! The level-`s` part of `C` is the free `A`-module on the words `y_s^b` and
//! `w_s y_s^b`; equivalently, the polynomials in `u` whose odd coefficients are
//! divisible by `t^{n_s+1}`. A [`CElem`] stores the coefficients on those words.
//! `C` is the union of its level-`s` parts, and two rewriting rules move an
//! element up one level:
//!
//! - `w_s = w_{s+1} + a_{s+1} t^{n_{s+1}+1}`
//! - `y_s = t^{2m} y_{s+1} + 2 a_{s+1} t^{2m - n_{s+1} - 1} w_{s+1} + a_{s+1}^2 t^{2m}`, `m = m_{s+1}`

mod certificates;
mod decompose;

use std::collections::BTreeMap;
use std::fmt;

use crate::base_ring::{AElem, BaseRing, ResidueElem, Valuation};
use crate::construction::Construction;
use crate::error::{Error, Result};
use crate::ring_b::{compose_linear, poly_mul, write_poly, BElem, RingB};

pub use certificates::{
    AkizukiWitness, Certificate, Ex2Row, FracWitness, IntegralEquation, TrickTwoCertificate,
};
pub use decompose::{ClaimWitness, NormalFormEq6};

/// An element of `C` in normal form at a fixed level.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CElem {
    level: usize,
    /// `b -> c_b`, the coefficient of `y^b`.
    even: BTreeMap<u32, AElem>,
    /// `b -> d_b`, the coefficient of `w y^b`.
    odd: BTreeMap<u32, AElem>,
}

impl CElem {
    pub fn level(&self) -> usize {
        self.level
    }

    /// Coefficient of `y^b`.
    pub fn c(&self, b: u32) -> Option<&AElem> {
        self.even.get(&b)
    }

    /// Coefficient of `w y^b`.
    pub fn d(&self, b: u32) -> Option<&AElem> {
        self.odd.get(&b)
    }

    pub fn even(&self) -> &BTreeMap<u32, AElem> {
        &self.even
    }

    pub fn odd(&self) -> &BTreeMap<u32, AElem> {
        &self.odd
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_empty() && self.odd.is_empty()
    }

    /// All coefficients, keyed by the `u`-degree of their word.
    pub fn words(&self) -> impl Iterator<Item = (u32, &AElem)> {
        let mut all: Vec<(u32, &AElem)> = self
            .even
            .iter()
            .map(|(b, c)| (2 * b, c))
            .chain(self.odd.iter().map(|(b, d)| (2 * b + 1, d)))
            .collect();
        all.sort_by_key(|(k, _)| *k);
        all.into_iter()
    }

    /// Smallest valuation among the coefficients.
    pub fn min_valuation(&self) -> Valuation {
        self.words().map(|(_, c)| c.valuation()).min().unwrap_or(Valuation::Infinite)
    }

    /// `u`-degree of the top word.
    pub fn degree(&self) -> Option<u32> {
        self.words().map(|(k, _)| k).max()
    }

    fn from_maps(level: usize, mut even: BTreeMap<u32, AElem>, mut odd: BTreeMap<u32, AElem>) -> Self {
        even.retain(|_, c| !c.is_zero());
        odd.retain(|_, c| !c.is_zero());
        CElem { level, even, odd }
    }
}

impl fmt::Display for CElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(deg) = self.degree() else {
            return write!(f, "0");
        };
        let base = match self.words().next() {
            Some((_, c)) => c.ring(),
            None => unreachable!(),
        };
        let coeffs: Vec<AElem> = (0..=deg)
            .map(|k| {
                let slot = if k % 2 == 0 { self.even.get(&(k / 2)) } else { self.odd.get(&(k / 2)) };
                slot.cloned().unwrap_or_else(|| base.zero())
            })
            .collect();
        let s = self.level;
        write_poly(f, &coeffs, |k| {
            let b = k / 2;
            let ys = match b {
                0 => String::new(),
                1 => format!("y{s}"),
                _ => format!("y{s}^{b}"),
            };
            match (k % 2 == 1, b) {
                (true, 0) => format!("w{s}"),
                (true, _) => format!("w{s}*{ys}"),
                (false, _) => ys,
            }
        })
    }
}

/// Why a `B`-element is not in the level-`s` part of `C`: the coefficient of
/// `u^degree` (odd) has valuation below `n_s + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelFailure {
    pub level: usize,
    pub degree: usize,
    pub valuation: Valuation,
    pub required: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Member { level: usize, elem: CElem },
    /// Not a member at any level tried; one failure per level.
    NotMember { failures: Vec<LevelFailure> },
}

/// Arithmetic in `C` for a fixed construction.
#[derive(Clone, Copy)]
pub struct RingC<'a> {
    b: RingB<'a>,
}

impl<'a> RingC<'a> {
    pub fn new(cons: &'a Construction) -> Self {
        RingC { b: RingB::new(cons) }
    }

    pub fn ring_b(&self) -> RingB<'a> {
        self.b
    }

    pub fn construction(&self) -> &'a Construction {
        self.b.construction()
    }

    fn base(&self) -> BaseRing {
        self.b.base()
    }

    /// `t^{n_s + 1}`, the factor carried by `w_s`.
    fn w_factor(&self, s: usize) -> u32 {
        self.construction().n(s) + 1
    }

    pub fn zero(&self) -> CElem {
        CElem::from_maps(0, BTreeMap::new(), BTreeMap::new())
    }

    pub fn constant(&self, a: AElem) -> CElem {
        CElem::from_maps(0, BTreeMap::from([(0, a)]), BTreeMap::new())
    }

    pub fn from_parts(
        &self,
        level: usize,
        even: BTreeMap<u32, AElem>,
        odd: BTreeMap<u32, AElem>,
    ) -> Result<CElem> {
        self.construction().check_level(level)?;
        Ok(CElem::from_maps(level, even, odd))
    }

    /// `y_s = (z_s - a_s)^2`.
    pub fn y(&self, s: usize) -> Result<CElem> {
        self.from_parts(s, BTreeMap::from([(1, self.base().one())]), BTreeMap::new())
    }

    /// `w_s = t^{n_s+1} (z_s - a_s)`.
    pub fn w(&self, s: usize) -> Result<CElem> {
        self.from_parts(s, BTreeMap::new(), BTreeMap::from([(0, self.base().one())]))
    }

    /// Coefficients in `u = z_s - a_s`.
    pub fn to_u_poly(&self, f: &CElem) -> Vec<AElem> {
        let Some(deg) = f.degree() else {
            return Vec::new();
        };
        let tw = self.w_factor(f.level);
        (0..=deg)
            .map(|k| {
                if k % 2 == 0 {
                    f.even.get(&(k / 2)).cloned().unwrap_or_else(|| self.base().zero())
                } else {
                    f.odd.get(&(k / 2)).map_or_else(|| self.base().zero(), |d| d.mul_t_pow(tw))
                }
            })
            .collect()
    }

    /// Read a polynomial in `u = z_s - a_s` in the word basis at level `s`.
    pub fn from_u_poly(&self, level: usize, coeffs: &[AElem]) -> std::result::Result<CElem, LevelFailure> {
        let tw = self.w_factor(level);
        let mut even = BTreeMap::new();
        let mut odd = BTreeMap::new();
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let b = (k / 2) as u32;
            if k % 2 == 0 {
                even.insert(b, c.clone());
            } else {
                let d = c.div_t_pow(tw).map_err(|_| LevelFailure {
                    level,
                    degree: k,
                    valuation: c.valuation(),
                    required: tw,
                })?;
                odd.insert(b, d);
            }
        }
        Ok(CElem::from_maps(level, even, odd))
    }

    pub fn to_b(&self, f: &CElem) -> BElem {
        let s = f.level;
        let z_poly = compose_linear(self.base(), &self.to_u_poly(f), &-self.construction().a(s), &self.base().one());
        self.b.from_coeffs(s, z_poly).expect("level is valid")
    }

    /// Membership in the level-`s` part of `C`, for `s >= g.level()`.
    pub fn from_b_at_level(&self, g: &BElem, level: usize) -> Result<std::result::Result<CElem, LevelFailure>> {
        let g = self.b.coerce_up(g, level)?;
        let u_poly = compose_linear(self.base(), g.coeffs(), self.construction().a(level), &self.base().one());
        Ok(self.from_u_poly(level, &u_poly))
    }

    /// Search levels `g.level()..=max_level` for a normal form of `g` in `C`.
    ///
    /// Membership is monotone in the level, so the first success is returned.
    /// A `NotMember` answer only covers the levels tried.
    pub fn c_membership(&self, g: &BElem, max_level: usize) -> Result<Membership> {
        self.construction().check_level(max_level)?;
        let mut failures = Vec::new();
        for s in g.level()..=max_level {
            match self.from_b_at_level(g, s)? {
                Ok(elem) => return Ok(Membership::Member { level: s, elem }),
                Err(fail) => failures.push(fail),
            }
        }
        Ok(Membership::NotMember { failures })
    }

    /// Rewrite `f` one level up with the two rules in the module docs.
    pub fn coerce_c_up(&self, f: &CElem) -> Result<CElem> {
        let cons = self.construction();
        let s = f.level;
        let next = s + 1;
        cons.check_level(next)?;
        let base = self.base();
        let (a, n, m) = (cons.a(next), cons.n(next), cons.m(next));
        let w_image = CElem::from_maps(
            next,
            BTreeMap::from([(0, a.mul_t_pow(n + 1))]),
            BTreeMap::from([(0, base.one())]),
        );
        let cross = &(a * &base.from_i64(2)) * &base.t_pow(2 * m - n - 1);
        let y_image = CElem::from_maps(
            next,
            BTreeMap::from([(0, (a * a).mul_t_pow(2 * m)), (1, base.t_pow(2 * m))]),
            BTreeMap::from([(0, cross)]),
        );
        let top = f.even.keys().chain(f.odd.keys()).copied().max().unwrap_or(0);
        let mut acc = self.zero_at(next);
        let mut y_pow = self.constant_at(next, base.one());
        for b in 0..=top {
            if let Some(c) = f.even.get(&b) {
                acc = self.add(&acc, &self.scale(&y_pow, c));
            }
            if let Some(d) = f.odd.get(&b) {
                acc = self.add(&acc, &self.scale(&self.mul(&w_image, &y_pow), d));
            }
            if b < top {
                y_pow = self.mul(&y_pow, &y_image);
            }
        }
        Ok(acc)
    }

    pub fn coerce_c_to(&self, f: &CElem, level: usize) -> Result<CElem> {
        self.construction().check_level(level)?;
        let mut cur = f.clone();
        if level < f.level {
            return Err(Error::LevelOutOfRange { level, top: self.construction().top_level() });
        }
        if cur.is_zero() || cur.degree() == Some(0) {
            cur.level = level;
            return Ok(cur);
        }
        while cur.level < level {
            cur = self.coerce_c_up(&cur)?;
        }
        Ok(cur)
    }

    fn zero_at(&self, level: usize) -> CElem {
        CElem::from_maps(level, BTreeMap::new(), BTreeMap::new())
    }

    fn constant_at(&self, level: usize, a: AElem) -> CElem {
        CElem::from_maps(level, BTreeMap::from([(0, a)]), BTreeMap::new())
    }

    fn align(&self, f: &CElem, g: &CElem) -> (CElem, CElem) {
        let level = f.level.max(g.level);
        (
            self.coerce_c_to(f, level).expect("levels are valid"),
            self.coerce_c_to(g, level).expect("levels are valid"),
        )
    }

    pub fn add(&self, f: &CElem, g: &CElem) -> CElem {
        let (mut f, g) = self.align(f, g);
        for (b, c) in g.even {
            let e = f.even.remove(&b).map_or(c.clone(), |x| &x + &c);
            f.even.insert(b, e);
        }
        for (b, c) in g.odd {
            let e = f.odd.remove(&b).map_or(c.clone(), |x| &x + &c);
            f.odd.insert(b, e);
        }
        CElem::from_maps(f.level, f.even, f.odd)
    }

    pub fn neg(&self, f: &CElem) -> CElem {
        CElem {
            level: f.level,
            even: f.even.iter().map(|(b, c)| (*b, -c)).collect(),
            odd: f.odd.iter().map(|(b, c)| (*b, -c)).collect(),
        }
    }

    pub fn sub(&self, f: &CElem, g: &CElem) -> CElem {
        self.add(f, &self.neg(g))
    }

    pub fn scale(&self, f: &CElem, a: &AElem) -> CElem {
        CElem::from_maps(
            f.level,
            f.even.iter().map(|(b, c)| (*b, c * a)).collect(),
            f.odd.iter().map(|(b, c)| (*b, c * a)).collect(),
        )
    }

    pub fn mul_t_pow(&self, f: &CElem, e: u32) -> CElem {
        self.scale(f, &self.base().t_pow(e))
    }

    /// Exact division of every coefficient by `t^e`.
    pub fn div_t_pow(&self, f: &CElem, e: u32) -> Result<CElem> {
        let even = f.even.iter().map(|(b, c)| Ok((*b, c.div_t_pow(e)?))).collect::<Result<_>>()?;
        let odd = f.odd.iter().map(|(b, c)| Ok((*b, c.div_t_pow(e)?))).collect::<Result<_>>()?;
        Ok(CElem::from_maps(f.level, even, odd))
    }

    /// Product at the common level; `w^2 = t^{2n_s+2} y` keeps it in normal form.
    pub fn mul(&self, f: &CElem, g: &CElem) -> CElem {
        let (f, g) = self.align(f, g);
        let prod = poly_mul(self.base(), &self.to_u_poly(&f), &self.to_u_poly(&g));
        self.from_u_poly(f.level, &prod).expect("C is closed under multiplication")
    }

    pub fn pow(&self, f: &CElem, e: u32) -> CElem {
        let mut acc = self.constant_at(f.level, self.base().one());
        for _ in 0..e {
            acc = self.mul(&acc, f);
        }
        acc
    }

    pub fn equal(&self, f: &CElem, g: &CElem) -> bool {
        let (f, g) = self.align(f, g);
        f == g
    }

    /// Evaluation `C -> k`; both `y` and `w` vanish, leaving `c_0 mod t`.
    pub fn eval_k(&self, f: &CElem) -> ResidueElem {
        f.even
            .get(&0)
            .map_or_else(|| self.base().residue_field().zero(), AElem::residue)
    }

    /// Membership in `M = (t, t(z_0 - a_0))`, the kernel of evaluation.
    pub fn in_m(&self, f: &CElem) -> bool {
        self.eval_k(f).is_zero()
    }

    /// Parse-free convenience: the `B`-element `g` as an element of `C` found at
    /// or below `max_level`, or `NotInC`.
    pub fn require_member(&self, g: &BElem, max_level: usize) -> Result<CElem> {
        match self.c_membership(g, max_level)? {
            Membership::Member { elem, .. } => Ok(elem),
            Membership::NotMember { .. } => Err(Error::NotInC(g.to_string())),
        }
    }

    /// `w_from - w_to`, an element of `tA`.
    pub fn w_difference(&self, from: usize, to: usize) -> AElem {
        let cons = self.construction();
        let base = self.base();
        let (lo, hi, sign) = if from <= to { (from, to, true) } else { (to, from, false) };
        let sum = (lo + 1..=hi).fold(base.zero(), |acc, j| &acc + &cons.a(j).mul_t_pow(cons.n(j) + 1));
        if sign {
            sum
        } else {
            -sum
        }
    }
}
