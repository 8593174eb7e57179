//! The ring `B = A[z_0, z_1, ...]` as the increasing union of the `A[z_s]`.
//!
//! An element is a level `s` together with a polynomial in `z_s` over `A`.
//! Moving up a level substitutes `z_s = a_s + t^{m_{s+1}} z_{s+1}`.

use std::fmt;

use crate::base_ring::{AElem, BaseRing, ResidueElem};
use crate::construction::Construction;
use crate::error::{Error, Result};
use crate::series::{SeriesValuation, TruncSeries};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BElem {
    level: usize,
    /// Coefficients of `z_level^0, z_level^1, ...`, trailing zeros trimmed.
    coeffs: Vec<AElem>,
}

impl BElem {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn coeffs(&self) -> &[AElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `z_level`; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Option<&AElem> {
        self.coeffs.get(k)
    }
}

impl fmt::Display for BElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = format!("z{}", self.level);
        write_poly(f, &self.coeffs, |k| match k {
            1 => var.clone(),
            _ => format!("{var}^{k}"),
        })
    }
}

/// Shared pretty-printer: `c0 + (c1)*v1 + ...`, skipping zero coefficients.
pub(crate) fn write_poly(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[AElem],
    word: impl Fn(usize) -> String,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        if k == 0 {
            write!(f, "{}", paren(c))?;
        } else if c.is_one() {
            write!(f, "{}", word(k))?;
        } else {
            write!(f, "{}*{}", paren(c), word(k))?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

pub(crate) fn paren(c: &AElem) -> String {
    let s = c.to_string();
    if s.contains(' ') || s.contains('/') || s.starts_with('-') {
        format!("({s})")
    } else {
        s
    }
}

pub(crate) fn trim(v: &mut Vec<AElem>) {
    while v.last().is_some_and(AElem::is_zero) {
        v.pop();
    }
}

pub(crate) fn poly_add(a: &[AElem], b: &[AElem]) -> Vec<AElem> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out: Vec<AElem> = long.to_vec();
    for (i, c) in short.iter().enumerate() {
        out[i] = &out[i] + c;
    }
    trim(&mut out);
    out
}

pub(crate) fn poly_neg(a: &[AElem]) -> Vec<AElem> {
    a.iter().map(|c| -c).collect()
}

pub(crate) fn poly_sub(a: &[AElem], b: &[AElem]) -> Vec<AElem> {
    poly_add(a, &poly_neg(b))
}

pub(crate) fn poly_mul(base: BaseRing, a: &[AElem], b: &[AElem]) -> Vec<AElem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![base.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn poly_scale(a: &[AElem], c: &AElem) -> Vec<AElem> {
    let mut out: Vec<AElem> = a.iter().map(|x| x * c).collect();
    trim(&mut out);
    out
}

/// `p(c0 + c1*X)` by Horner's rule.
pub(crate) fn compose_linear(base: BaseRing, p: &[AElem], c0: &AElem, c1: &AElem) -> Vec<AElem> {
    let lin = vec![c0.clone(), c1.clone()];
    let mut acc: Vec<AElem> = Vec::new();
    for c in p.iter().rev() {
        acc = poly_add(&poly_mul(base, &acc, &lin), std::slice::from_ref(c));
    }
    acc
}

/// Outcome of writing a nonzero `f` as `t^n * u` with `u` a unit of `B_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnitNormalization {
    Normalized { n: u32, unit: BElem },
    /// The series valuation reached the cap; no claim is made.
    ValuationAtLeast(u32),
}

/// Arithmetic in `B` for a fixed construction.
#[derive(Clone, Copy)]
pub struct RingB<'a> {
    cons: &'a Construction,
}

impl<'a> RingB<'a> {
    pub fn new(cons: &'a Construction) -> Self {
        RingB { cons }
    }

    pub fn construction(&self) -> &'a Construction {
        self.cons
    }

    pub fn base(&self) -> BaseRing {
        self.cons.base()
    }

    pub fn zero(&self) -> BElem {
        BElem { level: 0, coeffs: Vec::new() }
    }

    pub fn constant(&self, a: AElem) -> BElem {
        let mut coeffs = vec![a];
        trim(&mut coeffs);
        BElem { level: 0, coeffs }
    }

    pub fn from_coeffs(&self, level: usize, mut coeffs: Vec<AElem>) -> Result<BElem> {
        self.cons.check_level(level)?;
        trim(&mut coeffs);
        Ok(BElem { level, coeffs })
    }

    pub fn z(&self, s: usize) -> Result<BElem> {
        self.from_coeffs(s, vec![self.base().zero(), self.base().one()])
    }

    /// `z_s - a_s`.
    pub fn z_minus_a(&self, s: usize) -> Result<BElem> {
        self.cons.check_level(s)?;
        self.from_coeffs(s, vec![-self.cons.a(s), self.base().one()])
    }

    pub fn coerce_up(&self, f: &BElem, target: usize) -> Result<BElem> {
        self.cons.check_level(target)?;
        if target < f.level {
            return Err(Error::LevelOutOfRange { level: target, top: self.cons.top_level() });
        }
        let mut coeffs = f.coeffs.clone();
        for s in f.level..target {
            let step = self.base().t_pow(self.cons.m(s + 1));
            coeffs = compose_linear(self.base(), &coeffs, self.cons.a(s), &step);
        }
        Ok(BElem { level: target, coeffs })
    }

    fn align(&self, f: &BElem, g: &BElem) -> (BElem, BElem) {
        let level = f.level.max(g.level);
        (
            self.coerce_up(f, level).expect("levels are valid"),
            self.coerce_up(g, level).expect("levels are valid"),
        )
    }

    pub fn add(&self, f: &BElem, g: &BElem) -> BElem {
        let (f, g) = self.align(f, g);
        BElem { level: f.level, coeffs: poly_add(&f.coeffs, &g.coeffs) }
    }

    pub fn sub(&self, f: &BElem, g: &BElem) -> BElem {
        let (f, g) = self.align(f, g);
        BElem { level: f.level, coeffs: poly_sub(&f.coeffs, &g.coeffs) }
    }

    pub fn neg(&self, f: &BElem) -> BElem {
        BElem { level: f.level, coeffs: poly_neg(&f.coeffs) }
    }

    pub fn mul(&self, f: &BElem, g: &BElem) -> BElem {
        let (f, g) = self.align(f, g);
        BElem { level: f.level, coeffs: poly_mul(self.base(), &f.coeffs, &g.coeffs) }
    }

    pub fn scale(&self, f: &BElem, a: &AElem) -> BElem {
        BElem { level: f.level, coeffs: poly_scale(&f.coeffs, a) }
    }

    pub fn mul_t_pow(&self, f: &BElem, e: u32) -> BElem {
        BElem { level: f.level, coeffs: f.coeffs.iter().map(|c| c.mul_t_pow(e)).collect() }
    }

    pub fn pow(&self, f: &BElem, e: u32) -> BElem {
        let mut acc = BElem { level: f.level, coeffs: vec![self.base().one()] };
        for _ in 0..e {
            acc = self.mul(&acc, f);
        }
        acc
    }

    /// Equality after coercion to the common level.
    pub fn equal(&self, f: &BElem, g: &BElem) -> bool {
        let (f, g) = self.align(f, g);
        f.coeffs == g.coeffs
    }

    /// The evaluation `B -> k`, `t -> 0`, `z_r -> a_r`.
    pub fn eval_k(&self, f: &BElem) -> ResidueElem {
        let k = self.base().residue_field();
        let a = self.cons.a(f.level).residue();
        f.coeffs
            .iter()
            .rev()
            .fold(k.zero(), |acc, c| acc.mul(&a).add(&c.residue()))
    }

    pub fn to_series(&self, f: &BElem, precision: u32) -> TruncSeries {
        let z = self.cons.z_series(f.level, precision).expect("level is valid");
        f.coeffs.iter().rev().fold(TruncSeries::zero(self.base(), precision), |acc, c| {
            acc.mul(&z).add(&TruncSeries::from_aelem(c, precision))
        })
    }

    pub fn valuation(&self, f: &BElem, cap: u32) -> SeriesValuation {
        self.to_series(f, cap).val_lower_bound()
    }

    /// `g` with `t*g = f`, for `f` in the kernel of evaluation.
    ///
    /// When some coefficient is not divisible by `t`, `f` is first moved up one
    /// level: the substitution puts `t^{m k}` on every `z^k` with `k >= 1` and
    /// leaves `f(a_s)` as the constant term, which evaluation-zero makes divisible.
    pub fn divide_by_t(&self, f: &BElem) -> Result<BElem> {
        if !self.eval_k(f).is_zero() {
            return Err(Error::NotInKernel);
        }
        let t = self.base().t();
        let direct = f.coeffs.iter().all(|c| t.divides(c));
        let g = if direct {
            f.clone()
        } else {
            if f.level == self.cons.top_level() {
                return Err(Error::LevelBudgetExceeded { top: self.cons.top_level() });
            }
            self.coerce_up(f, f.level + 1)?
        };
        let coeffs = g
            .coeffs
            .iter()
            .map(|c| c.div_t_pow(1))
            .collect::<Result<Vec<_>>>()
            .map_err(|_| Error::Internal(format!("coefficients of {g} not divisible by t after coercion")))?;
        Ok(BElem { level: g.level, coeffs })
    }

    /// `f = t^n * u` with `eval_k(u) != 0`, by repeated division by `t`.
    pub fn unit_normalize(&self, f: &BElem, cap: u32) -> Result<UnitNormalization> {
        if f.is_zero() {
            return Err(Error::ZeroInput);
        }
        let n = match self.valuation(f, cap) {
            SeriesValuation::AtLeast(c) => return Ok(UnitNormalization::ValuationAtLeast(c)),
            SeriesValuation::Exact(n) => n,
        };
        let mut u = f.clone();
        for _ in 0..n {
            u = self.divide_by_t(&u)?;
        }
        if self.eval_k(&u).is_zero() {
            return Err(Error::Internal(format!("quotient of {f} by t^{n} still evaluates to zero")));
        }
        Ok(UnitNormalization::Normalized { n, unit: u })
    }

    /// `t^K f` as a polynomial in `z = z_0` over `A`, with the least `K >= 0`.
    pub fn level_zero_form(&self, f: &BElem) -> (Vec<AElem>, u32) {
        let base = self.base();
        let Some(deg) = f.degree() else {
            return (Vec::new(), 0);
        };
        let s = f.level;
        let ns = self.cons.n(s);
        // z_s = (z - c_s) / t^{n_s}, so t^{n_s deg} f = sum p_k t^{n_s (deg-k)} (z - c_s)^k.
        let lin = vec![-self.cons.partial_sum(s), base.one()];
        let mut acc: Vec<AElem> = Vec::new();
        let mut power = vec![base.one()];
        for (k, p) in f.coeffs.iter().enumerate() {
            let term = poly_scale(&power, &p.mul_t_pow(ns * (deg - k) as u32));
            acc = poly_add(&acc, &term);
            power = poly_mul(base, &power, &lin);
        }
        let total = ns * deg as u32;
        let common = acc
            .iter()
            .map(|c| c.valuation().finite().unwrap_or(u32::MAX))
            .min()
            .unwrap_or(0)
            .min(total);
        let reduced = acc.iter().map(|c| c.div_t_pow(common).expect("common divisor")).collect();
        (reduced, total - common)
    }
}
