//! Construction data `(a_i, n_r, m_r)`, its hypotheses, and the series `z_r`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::base_ring::{AElem, BaseRing, ResidueField};
use crate::error::{Error, Result};
use crate::series::{SeriesValuation, TruncSeries};

/// Raw construction data. `a` and `n` are indexed `0..=r_max+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionParams {
    pub base: BaseRing,
    pub a: Vec<AElem>,
    pub n: Vec<u32>,
    pub r_max: usize,
    /// `z` is assumed transcendental over `A`; recorded, never checked.
    pub transcendence_assumed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    LengthMismatch { what: &'static str, expected: usize, found: usize },
    WrongRing { index: usize },
    NotAUnit { index: usize, value: String },
    FirstExponentNonzero { n0: u32 },
    GrowthTooSlow { r: usize, n_r: u32, n_prev: u32 },
    HalfGapTooSmall { r: usize, m_r: i64, n_r: u32 },
    BaseRing(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LengthMismatch { what, expected, found } => {
                write!(f, "{what} has {found} entries, expected {expected}")
            }
            Violation::WrongRing { index } => write!(f, "a_{index} lives in a different base ring"),
            Violation::NotAUnit { index, value } => write!(f, "a_{index} = {value} is not a unit"),
            Violation::FirstExponentNonzero { n0 } => write!(f, "n_0 = {n0}, expected 0"),
            Violation::GrowthTooSlow { r, n_r, n_prev } => write!(
                f,
                "n_{r} = {n_r} < 2*n_{} + 2 = {}",
                r - 1,
                2 * *n_prev as u64 + 2
            ),
            Violation::HalfGapTooSmall { r, m_r, n_r } => {
                write!(f, "2*m_{r} = {} < n_{r} + 2 = {}", 2 * m_r, *n_r as u64 + 2)
            }
            Violation::BaseRing(msg) => write!(f, "{msg}"),
        }
    }
}

/// Check the unit and growth hypotheses; an empty list means the data is valid.
pub fn validate(params: &ConstructionParams) -> Vec<Violation> {
    let mut out = Vec::new();
    if let Err(e) = params.base.validate() {
        out.push(Violation::BaseRing(e.to_string()));
        return out;
    }
    let len = params.r_max + 2;
    if params.a.len() != len {
        out.push(Violation::LengthMismatch { what: "coefficient list", expected: len, found: params.a.len() });
    }
    if params.n.len() != len {
        out.push(Violation::LengthMismatch { what: "exponent list", expected: len, found: params.n.len() });
    }
    for (i, a) in params.a.iter().enumerate() {
        if a.ring() != params.base {
            out.push(Violation::WrongRing { index: i });
        } else if !a.is_unit() {
            out.push(Violation::NotAUnit { index: i, value: a.to_string() });
        }
    }
    if let Some(&n0) = params.n.first() {
        if n0 != 0 {
            out.push(Violation::FirstExponentNonzero { n0 });
        }
    }
    for r in 1..params.n.len() {
        let (n_r, n_prev) = (params.n[r], params.n[r - 1]);
        if (n_r as u64) < 2 * n_prev as u64 + 2 {
            out.push(Violation::GrowthTooSlow { r, n_r, n_prev });
        }
        let m_r = n_r as i64 - n_prev as i64;
        if 2 * m_r < n_r as i64 + 2 {
            out.push(Violation::HalfGapTooSmall { r, m_r, n_r });
        }
    }
    out
}

/// `n_r = 2(2^r - 1)` for `r = 0..=r_max+1`.
pub fn minimal_exponents(r_max: usize) -> Vec<u32> {
    (0..=r_max + 1).map(|r| 2 * ((1u32 << r) - 1)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoefficientPreset {
    Ones,
    RandomUnits { seed: u64 },
    Explicit(Vec<AElem>),
}

/// A pseudo-random unit of `A` of small height.
pub fn random_unit<R: Rng>(base: BaseRing, rng: &mut R) -> AElem {
    match base {
        BaseRing::Localized(ResidueField::Prime(q)) => {
            let c0 = rng.gen_range(1..q) as i64;
            let rest: Vec<i64> = (0..rng.gen_range(0..3)).map(|_| rng.gen_range(0..q) as i64).collect();
            let tail = base.from_coeffs(&rest).mul_t_pow(1);
            &base.from_i64(c0) + &tail
        }
        BaseRing::Localized(ResidueField::Rationals) => {
            let mut c0 = rng.gen_range(-4..=4);
            if c0 == 0 {
                c0 = 1;
            }
            let rest: Vec<i64> = (0..rng.gen_range(0..3)).map(|_| rng.gen_range(-3..=3)).collect();
            &base.from_i64(c0) + &base.from_coeffs(&rest).mul_t_pow(1)
        }
        BaseRing::PAdic(p) => {
            let bound = (p as i64).pow(3).min(1 << 20);
            loop {
                let c = rng.gen_range(1..bound);
                if c % p as i64 != 0 {
                    return base.from_i64(if rng.gen_bool(0.5) { c } else { -c });
                }
            }
        }
    }
}

pub fn preset_coefficients(base: BaseRing, preset: &CoefficientPreset, len: usize) -> Vec<AElem> {
    match preset {
        CoefficientPreset::Ones => vec![base.one(); len],
        CoefficientPreset::RandomUnits { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            (0..len).map(|_| random_unit(base, &mut rng)).collect()
        }
        CoefficientPreset::Explicit(v) => v.clone(),
    }
}

/// A coefficient of a stored `z_r` series to perturb.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeriesFault {
    pub level: usize,
    pub index: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityRow {
    pub r: usize,
    /// Residual of `z_r - a_r - t^{m_{r+1}} z_{r+1}`.
    pub step_residual: SeriesValuation,
    /// Residual of `t^{n_r} z_r - z_0 + sum_{i<r} a_i t^{n_i}`.
    pub telescoped_residual: SeriesValuation,
}

impl IdentityRow {
    pub fn ok(&self) -> bool {
        matches!(self.step_residual, SeriesValuation::AtLeast(_))
            && matches!(self.telescoped_residual, SeriesValuation::AtLeast(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub precision: u32,
    pub rows: Vec<IdentityRow>,
}

impl IdentityReport {
    pub fn ok(&self) -> bool {
        self.rows.iter().all(IdentityRow::ok)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.rows.iter().find(|r| !r.ok()).map(|r| r.r)
    }
}

/// Validated construction data with the derived quantities cached.
#[derive(Clone, Debug)]
pub struct Construction {
    params: ConstructionParams,
    m: Vec<u32>,
    /// `partial[s] = sum_{j<s} a_j t^{n_j}`.
    partial: Vec<AElem>,
}

impl Construction {
    pub fn new(params: ConstructionParams) -> Result<Self> {
        let violations = validate(&params);
        if !violations.is_empty() {
            return Err(Error::InvalidParams(violations));
        }
        let mut m = vec![0];
        m.extend(params.n.windows(2).map(|w| w[1] - w[0]));
        let mut partial = vec![params.base.zero()];
        for j in 0..=params.r_max + 1 {
            let next = &partial[j] + &params.a[j].mul_t_pow(params.n[j]);
            partial.push(next);
        }
        Ok(Construction { params, m, partial })
    }

    /// `a_i = 1`, `n_r = 2(2^r - 1)`.
    pub fn minimal_ones(base: BaseRing, r_max: usize) -> Result<Self> {
        Self::new(ConstructionParams {
            base,
            a: vec![base.one(); r_max + 2],
            n: minimal_exponents(r_max),
            r_max,
            transcendence_assumed: true,
        })
    }

    pub fn params(&self) -> &ConstructionParams {
        &self.params
    }

    pub fn base(&self) -> BaseRing {
        self.params.base
    }

    pub fn r_max(&self) -> usize {
        self.params.r_max
    }

    /// Highest level whose generator `z_s` is available.
    pub fn top_level(&self) -> usize {
        self.params.r_max + 1
    }

    pub fn a(&self, i: usize) -> &AElem {
        &self.params.a[i]
    }

    pub fn n(&self, i: usize) -> u32 {
        self.params.n[i]
    }

    /// `m_r = n_r - n_{r-1}` for `r >= 1`.
    pub fn m(&self, r: usize) -> u32 {
        assert!(r >= 1, "m_r is defined for r >= 1");
        self.m[r]
    }

    /// `sum_{j<s} a_j t^{n_j}`, an element of `A`.
    pub fn partial_sum(&self, s: usize) -> &AElem {
        &self.partial[s]
    }

    pub fn check_level(&self, level: usize) -> Result<()> {
        if level > self.top_level() {
            return Err(Error::LevelOutOfRange { level, top: self.top_level() });
        }
        Ok(())
    }

    /// `z_r = sum_{k>=r} a_k t^{n_k - n_r}` modulo `t^N`, with the coefficient tail past
    /// `r_max+1` treated as zero.
    pub fn z_series(&self, r: usize, precision: u32) -> Result<TruncSeries> {
        if r > self.top_level() {
            return Err(Error::IndexOutOfRange { index: r, max: self.top_level() });
        }
        let base = self.base();
        let nr = self.n(r);
        let sum = (r..=self.top_level())
            .filter(|&k| self.n(k) - nr < precision)
            .fold(base.zero(), |acc, k| &acc + &self.a(k).mul_t_pow(self.n(k) - nr));
        Ok(TruncSeries::from_aelem(&sum, precision))
    }

    /// Residuals of `z_r - a_r = t^{m_{r+1}} z_{r+1}` and
    /// `t^{n_r} z_r = z_0 - sum_{i<r} a_i t^{n_i}` for `r = 0..=r_max`.
    pub fn check_defining_identities(&self, precision: u32, fault: Option<SeriesFault>) -> IdentityReport {
        let mut table: Vec<TruncSeries> = (0..=self.top_level())
            .map(|r| self.z_series(r, precision).expect("level in range"))
            .collect();
        if let Some(f) = fault {
            if f.level < table.len() && f.index < precision {
                table[f.level] = table[f.level].flip_coefficient(f.index);
            }
        }
        let rows = (0..=self.r_max())
            .map(|r| {
                let a_r = TruncSeries::from_aelem(self.a(r), precision);
                let step = table[r].sub(&a_r).sub(&table[r + 1].mul_t_pow(self.m(r + 1)));
                let partial = TruncSeries::from_aelem(self.partial_sum(r), precision);
                let telescoped = table[r].mul_t_pow(self.n(r)).sub(&table[0]).add(&partial);
                IdentityRow {
                    r,
                    step_residual: step.val_lower_bound(),
                    telescoped_residual: telescoped.val_lower_bound(),
                }
            })
            .collect();
        IdentityReport { precision, rows }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: BaseRing = BaseRing::Localized(ResidueField::Rationals);

    fn params(n: Vec<u32>) -> ConstructionParams {
        let r_max = n.len() - 2;
        ConstructionParams { base: Q, a: vec![Q.one(); n.len()], n, r_max, transcendence_assumed: true }
    }

    #[test]
    fn minimal_exponent_lists() {
        assert_eq!(minimal_exponents(3), vec![0, 2, 6, 14, 30]);
        assert_eq!(minimal_exponents(0), vec![0, 2]);
        let five = minimal_exponents(5);
        assert_eq!(&five[5..], &[62, 126]);
        for w in five.windows(2) {
            assert_eq!(w[1], 2 * w[0] + 2);
        }
    }

    #[test]
    fn validate_examples() {
        assert!(validate(&params(vec![0, 2, 6, 14, 30])).is_empty());
        let v = validate(&params(vec![0, 2, 5]));
        assert!(v.contains(&Violation::GrowthTooSlow { r: 2, n_r: 5, n_prev: 2 }));
        let mut p = params(vec![0, 2, 6]);
        p.a[1] = Q.t();
        assert_eq!(validate(&p), vec![Violation::NotAUnit { index: 1, value: "t".into() }]);
    }

    #[test]
    fn z_series_examples() {
        let c = Construction::minimal_ones(Q, 3).unwrap();
        let s = |v: &[i64], n| TruncSeries::from_aelem(&Q.from_coeffs(v), n);
        assert_eq!(c.z_series(0, 7).unwrap(), s(&[1, 0, 1, 0, 0, 0, 1], 7));
        assert_eq!(c.z_series(1, 6).unwrap(), s(&[1, 0, 0, 0, 1], 6));
        assert_eq!(c.z_series(2, 9).unwrap(), s(&[1, 0, 0, 0, 0, 0, 0, 0, 1], 9));
        assert!(c.z_series(5, 4).is_err());
    }

    #[test]
    fn identities_hold_and_faults_show() {
        let c = Construction::minimal_ones(Q, 4).unwrap();
        assert!(c.check_defining_identities(64, None).ok());
        let bad = c.check_defining_identities(64, Some(SeriesFault { level: 2, index: 3 }));
        assert_eq!(bad.first_failure(), Some(1));
    }

    #[test]
    fn random_units_over_f101() {
        let base = BaseRing::Localized(ResidueField::Prime(101));
        let a = preset_coefficients(base, &CoefficientPreset::RandomUnits { seed: 7 }, 5);
        let c = Construction::new(ConstructionParams {
            base,
            a,
            n: minimal_exponents(3),
            r_max: 3,
            transcendence_assumed: true,
        })
        .unwrap();
        assert!(c.check_defining_identities(40, None).ok());
    }
}
