//! Refuting finiteness of `B_m` over `C_M`.
//!
//! A finiteness relation would give `f_r (z_r - a_r) = sum_{i<r} f_i (z_i - a_i)`
//! with `f_i` in `C` and `f_r` not in `M`. Multiplying by `t^{n_r}` and using
//! `t^{n_i}(z_i - a_i) = z - sum_{j<=i} a_j t^{n_j}` turns the residual of such
//! a relation into a polynomial `F(z)` over `A`; when `f_r` is a unit mod `M`,
//! `F` is nonzero mod `t`, so the relation would make `z` algebraic over `A`.

use std::fmt;

use rand::Rng;

use crate::base_ring::{AElem, ResidueElem};
use crate::error::{Error, Result};
use crate::ring_b::{poly_add, poly_mul, poly_scale, poly_sub, trim, write_poly, BElem};
use crate::ring_c::{CElem, RingC};
use crate::sample;
use crate::series::{SeriesValuation, TruncSeries};

/// Coefficients `f_0, ..., f_r` of a purported relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCandidate {
    pub f: Vec<CElem>,
}

impl RelationCandidate {
    pub fn new(f: Vec<CElem>) -> Result<Self> {
        if f.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        Ok(RelationCandidate { f })
    }

    pub fn r(&self) -> usize {
        self.f.len() - 1
    }

    pub fn leading(&self) -> &CElem {
        &self.f[self.r()]
    }
}

/// A polynomial in one indeterminate `z` over `A`, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyOverA {
    coeffs: Vec<AElem>,
}

impl PolyOverA {
    pub fn new(mut coeffs: Vec<AElem>) -> Self {
        trim(&mut coeffs);
        PolyOverA { coeffs }
    }

    pub fn coeffs(&self) -> &[AElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient-wise reduction to `k[z]`, trimmed.
    pub fn residue(&self) -> Vec<ResidueElem> {
        let mut out: Vec<ResidueElem> = self.coeffs.iter().map(AElem::residue).collect();
        while out.last().is_some_and(ResidueElem::is_zero) {
            out.pop();
        }
        out
    }

    /// `F(z)` for a truncated series `z`.
    pub fn eval_series(&self, z: &TruncSeries) -> TruncSeries {
        let n = z.precision();
        self.coeffs
            .iter()
            .rev()
            .fold(TruncSeries::zero(z.ring(), n), |acc, c| acc.mul(z).add(&TruncSeries::from_aelem(c, n)))
    }
}

impl fmt::Display for PolyOverA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        write_poly(f, &self.coeffs, |k| match k {
            0 => String::new(),
            1 => "z".into(),
            _ => format!("z^{k}"),
        })
    }
}

/// `F` together with the extra power `t^K` needed to clear the denominators
/// coming from coefficients above level 0: `t^{n_r + K} R = F(z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPolynomial {
    pub poly: PolyOverA,
    pub extra: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nontriviality {
    /// `F` has the coefficient `residue != 0 (mod t)` on `z^degree`.
    CertifiedNonzero { degree: usize, residue: ResidueElem },
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesDetection {
    /// `F(z)` is nonzero mod `t^n`, and `n` is the least such precision.
    NonzeroAt(u32),
    Exhausted { max: u32 },
}

/// One sampled candidate in a chain search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialRecord {
    pub index: u64,
    /// `f_r` is not in `M`.
    pub in_hypothesis: bool,
    pub residual_zero: bool,
    pub identity_holds: bool,
    pub certified: bool,
    pub detected_at: Option<u32>,
}

impl TrialRecord {
    /// The residual is nonzero, `F` is certified nonzero and `F(z)` is seen to
    /// be nonzero in the series oracle.
    pub fn consistent(&self) -> bool {
        self.identity_holds && !self.residual_zero && self.certified && self.detected_at.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub r: usize,
    pub trials: u64,
    pub seed: u64,
    pub admitted: u64,
    pub out_of_hypothesis: u64,
    pub relations_found: u64,
    pub certified_nonzero: u64,
    pub detected: u64,
    pub max_detection: u32,
    pub records: Vec<TrialRecord>,
}

impl ChainReport {
    pub fn ok(&self) -> bool {
        self.relations_found == 0
            && self.records.iter().filter(|t| t.in_hypothesis).all(TrialRecord::consistent)
    }
}

/// Knobs for [`strict_chain_search`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChainOptions {
    pub degree_bound: u32,
    pub n_max: u32,
    /// Chance that a lower coefficient `f_i` is zero.
    pub zero_rate: f64,
    /// Chance that `f_r` is drawn from `M`, outside the hypothesis.
    pub adversarial_rate: f64,
}

impl Default for ChainOptions {
    fn default() -> Self {
        ChainOptions { degree_bound: 4, n_max: 256, zero_rate: 0.1, adversarial_rate: 0.05 }
    }
}

impl<'a> RingC<'a> {
    /// `R = f_r (z_r - a_r) - sum_{i<r} f_i (z_i - a_i)`.
    pub fn relation_residual(&self, cand: &RelationCandidate) -> Result<BElem> {
        let b = self.ring_b();
        let r = cand.r();
        let mut acc = b.mul(&self.to_b(cand.leading()), &b.z_minus_a(r)?);
        for (i, f) in cand.f[..r].iter().enumerate() {
            acc = b.sub(&acc, &b.mul(&self.to_b(f), &b.z_minus_a(i)?));
        }
        Ok(acc)
    }

    /// `F` with `t^{n_r + K} R = F(z)`, built from the substitution
    /// `t^{n_r}(z_i - a_i) = t^{n_r - n_i}(z - sum_{j<=i} a_j t^{n_j})` without
    /// looking at `R`; [`RingC::transformation_identity`] checks the result.
    pub fn to_polynomial_in_z(&self, cand: &RelationCandidate) -> Result<ZPolynomial> {
        let cons = self.construction();
        let b = self.ring_b();
        let base = cons.base();
        let r = cand.r();
        cons.check_level(r)?;
        let forms: Vec<(Vec<AElem>, u32)> = cand.f.iter().map(|f| b.level_zero_form(&self.to_b(f))).collect();
        let extra = forms.iter().map(|(_, k)| *k).max().unwrap_or(0);
        let nr = cons.n(r);
        let mut acc: Vec<AElem> = Vec::new();
        for (i, (p, k)) in forms.iter().enumerate() {
            let lin = vec![-cons.partial_sum(i + 1), base.one()];
            let term = poly_scale(&poly_mul(base, p, &lin), &base.t_pow(extra - k + nr - cons.n(i)));
            acc = if i == r { poly_add(&acc, &term) } else { poly_sub(&acc, &term) };
        }
        Ok(ZPolynomial { poly: PolyOverA::new(acc), extra })
    }

    /// Mechanically re-check `t^{n_r + K} R = F(z)` in `B`.
    pub fn transformation_identity(&self, cand: &RelationCandidate, fz: &ZPolynomial) -> Result<bool> {
        let b = self.ring_b();
        let nr = self.construction().n(cand.r());
        let lhs = b.mul_t_pow(&self.relation_residual(cand)?, nr + fz.extra);
        Ok(b.equal(&lhs, &b.from_coeffs(0, fz.poly.coeffs.clone())?))
    }

    /// Run the whole pipeline on one candidate.
    pub fn check_candidate(&self, cand: &RelationCandidate, index: u64, n_max: u32) -> Result<TrialRecord> {
        let residual = self.relation_residual(cand)?;
        let fz = self.to_polynomial_in_z(cand)?;
        let identity_holds = self.transformation_identity(cand, &fz)?;
        let certified = matches!(nontriviality_check(&fz.poly), Nontriviality::CertifiedNonzero { .. });
        let detected_at = match f_nonzero_in_series(self, &fz.poly, n_max)? {
            SeriesDetection::NonzeroAt(n) => Some(n),
            SeriesDetection::Exhausted { .. } => None,
        };
        Ok(TrialRecord {
            index,
            in_hypothesis: !self.in_m(cand.leading()),
            residual_zero: residual.is_zero(),
            identity_holds,
            certified,
            detected_at,
        })
    }
}

/// `CertifiedNonzero` exactly when some coefficient of `F` is a unit.
pub fn nontriviality_check(f: &PolyOverA) -> Nontriviality {
    match f.coeffs.iter().enumerate().find(|(_, c)| c.is_unit()) {
        Some((degree, c)) => Nontriviality::CertifiedNonzero { degree, residue: c.residue() },
        None => Nontriviality::Inconclusive,
    }
}

/// Least `N <= n_max` with `F(z) != 0 mod t^N`, trying precisions 8, 16, ...
pub fn f_nonzero_in_series(rc: &RingC<'_>, f: &PolyOverA, n_max: u32) -> Result<SeriesDetection> {
    let mut n = 8.min(n_max).max(1);
    loop {
        let z = rc.construction().z_series(0, n)?;
        if let SeriesValuation::Exact(v) = f.eval_series(&z).val_lower_bound() {
            return Ok(SeriesDetection::NonzeroAt(v + 1));
        }
        if n >= n_max {
            return Ok(SeriesDetection::Exhausted { max: n_max });
        }
        n = (2 * n).min(n_max);
    }
}

/// A random candidate of length `r + 1` with level-0 coefficients.
pub fn random_candidate<R: Rng>(rc: &RingC<'_>, rng: &mut R, r: usize, opts: &ChainOptions) -> RelationCandidate {
    let base = rc.construction().base();
    let mut f: Vec<CElem> = (0..r)
        .map(|_| {
            if rng.gen_bool(opts.zero_rate) {
                rc.zero()
            } else {
                sample::celem_at(rc, rng, 0, opts.degree_bound)
            }
        })
        .collect();
    let lead = if rng.gen_bool(opts.adversarial_rate) {
        sample::m_element(rc, rng, 0, opts.degree_bound)
    } else {
        let g = sample::celem_at(rc, rng, 0, opts.degree_bound);
        let c0 = g.c(0).cloned().unwrap_or_else(|| base.zero());
        rc.add(&g, &rc.constant(&sample::unit(base, rng) - &c0))
    };
    f.push(lead);
    RelationCandidate { f }
}

/// Sample `trials` candidates and run [`RingC::check_candidate`] on each.
/// Candidates with `f_r` in `M` are recorded but kept out of the counts.
pub fn strict_chain_search(
    rc: &RingC<'_>,
    r: usize,
    trials: u64,
    seed: u64,
    opts: &ChainOptions,
) -> Result<ChainReport> {
    let cons = rc.construction();
    if r > cons.r_max() {
        return Err(Error::IndexOutOfRange { index: r, max: cons.r_max() });
    }
    let mut report = ChainReport {
        r,
        trials,
        seed,
        admitted: 0,
        out_of_hypothesis: 0,
        relations_found: 0,
        certified_nonzero: 0,
        detected: 0,
        max_detection: 0,
        records: Vec::with_capacity(trials as usize),
    };
    for index in 0..trials {
        let mut rng = sample::trial_rng(seed, index);
        let cand = random_candidate(rc, &mut rng, r, opts);
        let rec = rc.check_candidate(&cand, index, opts.n_max)?;
        if rec.in_hypothesis {
            report.admitted += 1;
            report.relations_found += rec.residual_zero as u64;
            report.certified_nonzero += rec.certified as u64;
            if let Some(n) = rec.detected_at {
                report.detected += 1;
                report.max_detection = report.max_detection.max(n);
            }
        } else {
            report.out_of_hypothesis += 1;
        }
        report.records.push(rec);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_ring::{BaseRing, ResidueField};
    use crate::construction::Construction;

    const Q: BaseRing = BaseRing::Localized(ResidueField::Rationals);

    fn cons() -> Construction {
        Construction::minimal_ones(Q, 5).unwrap()
    }

    fn cand(rc: &RingC<'_>, f: &[i64]) -> RelationCandidate {
        RelationCandidate::new(f.iter().map(|&c| rc.constant(Q.from_i64(c))).collect()).unwrap()
    }

    #[test]
    fn residual_examples() {
        let c = cons();
        let rc = RingC::new(&c);
        let b = rc.ring_b();
        let r = rc.relation_residual(&cand(&rc, &[0, 1])).unwrap();
        assert!(b.equal(&r, &b.z_minus_a(1).unwrap()));
        assert!(rc.relation_residual(&cand(&rc, &[0, 0])).unwrap().is_zero());
        let mixed = RelationCandidate::new(vec![rc.w(0).unwrap(), rc.y(0).unwrap()]).unwrap();
        assert!(!rc.relation_residual(&mixed).unwrap().is_zero());
    }

    #[test]
    fn polynomial_examples() {
        let c = cons();
        let rc = RingC::new(&c);
        let f = rc.to_polynomial_in_z(&cand(&rc, &[0, 1])).unwrap();
        assert_eq!(f.extra, 0);
        assert_eq!(f.poly.coeffs(), &[Q.from_coeffs(&[-1, 0, -1]), Q.one()]);
        let g = rc.to_polynomial_in_z(&cand(&rc, &[1, 0])).unwrap();
        assert_eq!(g.poly.coeffs(), &[Q.t_pow(2), -Q.t_pow(2)]);
        let h = rc.to_polynomial_in_z(&cand(&rc, &[1, 1])).unwrap();
        assert_eq!(h.poly.coeffs(), &[Q.from_i64(-1), Q.from_coeffs(&[1, 0, -1])]);
        let lifted = RelationCandidate::new(vec![rc.w(1).unwrap(), rc.constant(Q.one())]).unwrap();
        let lf = rc.to_polynomial_in_z(&lifted).unwrap();
        assert!(rc.transformation_identity(&lifted, &lf).unwrap());
    }

    #[test]
    fn nontriviality_examples() {
        let f = PolyOverA::new(vec![Q.from_coeffs(&[-1, 0, -1]), Q.one()]);
        assert!(matches!(nontriviality_check(&f), Nontriviality::CertifiedNonzero { degree: 0, .. }));
        assert_eq!(f.residue(), vec![ResidueField::Rationals.from_i64(-1), ResidueField::Rationals.one()]);
        let g = PolyOverA::new(vec![Q.t_pow(2), -Q.t_pow(2)]);
        assert_eq!(nontriviality_check(&g), Nontriviality::Inconclusive);
        assert_eq!(nontriviality_check(&PolyOverA::new(vec![])), Nontriviality::Inconclusive);
    }

    #[test]
    fn series_detection_examples() {
        let c = cons();
        let rc = RingC::new(&c);
        let f = PolyOverA::new(vec![Q.from_coeffs(&[-1, 0, -1]), Q.one()]);
        assert_eq!(f_nonzero_in_series(&rc, &f, 256).unwrap(), SeriesDetection::NonzeroAt(7));
        let zero = PolyOverA::new(vec![Q.zero()]);
        assert_eq!(f_nonzero_in_series(&rc, &zero, 256).unwrap(), SeriesDetection::Exhausted { max: 256 });
        let t = PolyOverA::new(vec![Q.t()]);
        assert_eq!(f_nonzero_in_series(&rc, &t, 256).unwrap(), SeriesDetection::NonzeroAt(2));
    }

    #[test]
    fn chain_search_small() {
        let c = cons();
        let rc = RingC::new(&c);
        let opts = ChainOptions { zero_rate: 0.5, adversarial_rate: 0.0, ..ChainOptions::default() };
        let rep = strict_chain_search(&rc, 1, 10, 7, &opts).unwrap();
        assert_eq!((rep.admitted, rep.relations_found), (10, 0));
        assert!(rep.ok());

        let bad = RelationCandidate::new(vec![rc.zero(), rc.constant(Q.t_pow(2))]).unwrap();
        let rec = rc.check_candidate(&bad, 0, 64).unwrap();
        assert!(!rec.in_hypothesis);
    }
}
