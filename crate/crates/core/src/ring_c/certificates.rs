//! Explicit membership witnesses in `C`, each checked by recomputation in `B`.

use super::{CElem, RingC};
use crate::base_ring::{AElem, Valuation};
use crate::error::{Error, Result};
use crate::ring_b::{compose_linear, BElem};
use crate::series::TruncSeries;

/// `target = sum multiplier * generator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub target: BElem,
    pub terms: Vec<(CElem, CElem)>,
}

impl Certificate {
    pub fn verify(&self, rc: &RingC<'_>) -> bool {
        let b = rc.ring_b();
        let sum = self
            .terms
            .iter()
            .fold(b.zero(), |acc, (m, g)| b.add(&acc, &b.mul(&rc.to_b(m), &rc.to_b(g))));
        b.equal(&sum, &self.target)
    }

    /// Copy with the `index`-th term removed.
    pub fn drop_term(&self, index: usize) -> Certificate {
        let mut terms = self.terms.clone();
        if index < terms.len() {
            terms.remove(index);
        }
        Certificate { target: self.target.clone(), terms }
    }
}

/// `(z_{i-1} - a_{i-1})^2 = (t^{m_i} z_i)^2`, expanded, with both non-constant
/// terms exhibited as `t` times an element of `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrickTwoCertificate {
    pub i: usize,
    pub certificate: Certificate,
}

impl TrickTwoCertificate {
    /// The squared identity in `B`.
    pub fn identity_holds(&self, rc: &RingC<'_>) -> bool {
        let b = rc.ring_b();
        let (Ok(prev), Ok(zi)) = (b.z_minus_a(self.i - 1), b.z(self.i)) else {
            return false;
        };
        let m = rc.construction().m(self.i);
        let lhs = b.mul(&prev, &prev);
        let shifted = b.mul_t_pow(&zi, m);
        b.equal(&lhs, &b.mul(&shifted, &shifted))
    }

    pub fn verify(&self, rc: &RingC<'_>) -> bool {
        let t = rc.constant(rc.base().t());
        self.identity_holds(rc)
            && self.certificate.verify(rc)
            && self.certificate.terms.iter().all(|(_, g)| rc.equal(g, &t))
    }
}

/// A monic polynomial over `C` in one variable, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralEquation {
    pub i: usize,
    pub coeffs: Vec<CElem>,
}

impl IntegralEquation {
    /// The equation evaluated at `z_i`.
    pub fn residual(&self, rc: &RingC<'_>) -> Result<BElem> {
        let b = rc.ring_b();
        let z = b.z(self.i)?;
        Ok(self
            .coeffs
            .iter()
            .rev()
            .fold(b.zero(), |acc, c| b.add(&b.mul(&acc, &z), &rc.to_b(c))))
    }

    pub fn verify(&self, rc: &RingC<'_>) -> bool {
        self.coeffs.last().is_some_and(|c| rc.equal(c, &rc.constant(rc.base().one())))
            && self.residual(rc).is_ok_and(|r| r.is_zero())
    }

    /// Copy with `delta` added to the constant coefficient.
    pub fn perturb_constant(&self, rc: &RingC<'_>, delta: &AElem) -> IntegralEquation {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] = rc.add(&coeffs[0], &rc.constant(delta.clone()));
        IntegralEquation { i: self.i, coeffs }
    }
}

/// `z_0 = num / den` with `num, den` in `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FracWitness {
    pub num: CElem,
    pub den: CElem,
}

impl FracWitness {
    /// `num = den * z_0` in the series oracle at precision `N`.
    pub fn verify(&self, rc: &RingC<'_>, precision: u32) -> bool {
        let b = rc.ring_b();
        let Ok(z0) = rc.construction().z_series(0, precision) else {
            return false;
        };
        let lhs: TruncSeries = b.to_series(&rc.to_b(&self.num), precision);
        let rhs = b.to_series(&rc.to_b(&self.den), precision).mul(&z0);
        !self.den.is_zero() && lhs == rhs
    }
}

/// One level of the non-membership table for `t^{n_r}(z_r - a_r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ex2Row {
    pub level: usize,
    /// Valuation of the coefficient of `z_s - a_s`.
    pub valuation: Valuation,
    pub required: u32,
    pub fails: bool,
}

/// `x_r = w_r` is not in `tC`, and `x_r^2` lies in `t^{e_star} C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AkizukiWitness {
    pub r: usize,
    /// `(s, v(d_0))` for the normal form of `x_r` at each level `s`.
    pub levels: Vec<(usize, Valuation)>,
    /// Largest `e <= 2n_r + 2` with `x_r^2 / t^e` found in `C`.
    pub e_star: u32,
    /// The same search for `(t^{n_r+1} z_r)^2 = (x_r + a_r t^{n_r+1})^2`.
    pub e_star_shifted: u32,
    pub bound: u32,
}

impl AkizukiWitness {
    pub fn not_in_tc(&self) -> bool {
        !self.levels.is_empty() && self.levels.iter().all(|(_, v)| *v == Valuation::Finite(0))
    }
}

impl<'a> RingC<'a> {
    /// `y_{i-1} = t * (t^{2m-1} y_i + 2 a_i t^{2m-n_i-2} w_i + a_i^2 t^{2m-1})`
    /// with `m = m_i`.
    pub fn y_in_tc_certificate(&self, i: usize) -> Result<TrickTwoCertificate> {
        let cons = self.construction();
        if i == 0 || i > cons.r_max() {
            return Err(Error::IndexOutOfRange { index: i, max: cons.r_max() });
        }
        let base = self.base();
        let (a, n, m) = (cons.a(i), cons.n(i), cons.m(i));
        let t = self.constant(base.t());
        let term1 = self.mul_t_pow(&self.y(i)?, 2 * m - 1);
        let cross = (a * &base.from_i64(2)).mul_t_pow(2 * m - n - 2);
        let term2 = self.scale(&self.w(i)?, &cross);
        let term3 = self.constant((a * a).mul_t_pow(2 * m - 1));
        let target = self.to_b(&self.y(i - 1)?);
        let certificate = Certificate {
            target,
            terms: vec![(term1, t.clone()), (term2, t.clone()), (term3, t)],
        };
        Ok(TrickTwoCertificate { i, certificate })
    }

    /// Certificates for `M^2 = tM`, as `(M^2 in tM, tM in M^2)`.
    ///
    /// `M^2` is generated by `t^2, t w_0, w_0^2` and `tM` by `t^2, t w_0`;
    /// the only nontrivial step is `w_0^2 = t^2 y_0`.
    pub fn m2_equals_tm(&self) -> Result<(Vec<Certificate>, Vec<Certificate>)> {
        let base = self.base();
        let one = self.constant(base.one());
        let t2 = self.constant(base.t_pow(2));
        let w0 = self.w(0)?;
        let tw0 = self.mul_t_pow(&w0, 1);
        let w0_sq = self.mul(&w0, &w0);
        let simple = |g: &CElem| Certificate { target: self.to_b(g), terms: vec![(one.clone(), g.clone())] };
        let forward = vec![
            simple(&t2),
            simple(&tw0),
            Certificate { target: self.to_b(&w0_sq), terms: vec![(self.y(0)?, t2.clone())] },
        ];
        let backward = vec![simple(&t2), simple(&tw0)];
        Ok((forward, backward))
    }

    /// `Z^2 - 2 a_i Z + (a_i^2 - y_i)`, satisfied by `z_i`.
    pub fn integral_equation(&self, i: usize) -> Result<IntegralEquation> {
        let cons = self.construction();
        cons.check_level(i)?;
        let base = self.base();
        let a = cons.a(i);
        let coeffs = vec![
            self.sub(&self.constant(a * a), &self.y(i)?),
            self.constant(-(a * &base.from_i64(2))),
            self.constant(base.one()),
        ];
        Ok(IntegralEquation { i, coeffs })
    }

    /// `z_0 = (w_0 + a_0 t) / t`.
    pub fn frac_witness(&self) -> Result<FracWitness> {
        let base = self.base();
        let a0t = self.construction().a(0).mul_t_pow(1);
        Ok(FracWitness { num: self.add(&self.w(0)?, &self.constant(a0t)), den: self.constant(base.t()) })
    }

    /// For each level `s` in `r..=max_level`, the valuation of the linear
    /// coefficient of `t^{n_r}(z_r - a_r)` in `z_s - a_s`, against the `n_s + 1`
    /// that membership at level `s` requires.
    pub fn ex2_nonmembership(&self, r: usize, max_level: usize) -> Result<Vec<Ex2Row>> {
        let cons = self.construction();
        if r > cons.r_max() {
            return Err(Error::IndexOutOfRange { index: r, max: cons.r_max() });
        }
        cons.check_level(max_level)?;
        let b = self.ring_b();
        let g = b.mul_t_pow(&b.z_minus_a(r)?, cons.n(r));
        let base = self.base();
        (r..=max_level)
            .map(|s| {
                let at_s = b.coerce_up(&g, s)?;
                let u_poly = compose_linear(base, at_s.coeffs(), cons.a(s), &base.one());
                let valuation = u_poly.get(1).map_or(Valuation::Infinite, AElem::valuation);
                let required = cons.n(s) + 1;
                Ok(Ex2Row { level: s, valuation, required, fails: !valuation.at_least(required) })
            })
            .collect()
    }

    /// Evidence that `x_r = t^{n_r+1}(z_r - a_r)` is not in `tC` while its
    /// square is divisible by a large power of `t` in `C`.
    pub fn akizuki_witness(&self, r: usize, max_level: usize) -> Result<AkizukiWitness> {
        let cons = self.construction();
        if r > cons.r_max() {
            return Err(Error::IndexOutOfRange { index: r, max: cons.r_max() });
        }
        cons.check_level(max_level)?;
        let x = self.w(r)?;
        let mut levels = Vec::new();
        let mut cur = x.clone();
        for s in r..=max_level {
            if s > r {
                cur = self.coerce_c_up(&cur)?;
            }
            levels.push((s, cur.d(0).map_or(Valuation::Infinite, AElem::valuation)));
        }
        let bound = 2 * cons.n(r) + 2;
        let e_star = self.best_exponent(&self.mul(&x, &x), bound, max_level)?;
        let shifted = self.add(&x, &self.constant(cons.a(r).mul_t_pow(cons.n(r) + 1)));
        let e_star_shifted = self.best_exponent(&self.mul(&shifted, &shifted), bound, max_level)?;
        Ok(AkizukiWitness { r, levels, e_star, e_star_shifted, bound })
    }

    /// Largest `e <= bound` such that `f / t^e` is an element of `B` found in
    /// `C` at some level up to `max_level`.
    fn best_exponent(&self, f: &CElem, bound: u32, max_level: usize) -> Result<u32> {
        let b = self.ring_b();
        let fb = self.to_b(f);
        for e in (0..=bound).rev() {
            let coeffs: Option<Vec<AElem>> = fb.coeffs().iter().map(|c| c.div_t_pow(e).ok()).collect();
            let Some(coeffs) = coeffs else { continue };
            let q = b.from_coeffs(fb.level(), coeffs)?;
            if matches!(self.c_membership(&q, max_level)?, super::Membership::Member { .. }) {
                return Ok(e);
            }
        }
        Ok(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_ring::{BaseRing, ResidueField};
    use crate::construction::{Construction, ConstructionParams};

    const Q: BaseRing = BaseRing::Localized(ResidueField::Rationals);

    fn cons() -> Construction {
        Construction::minimal_ones(Q, 5).unwrap()
    }

    #[test]
    fn trick_two_examples() {
        let c = cons();
        let rc = RingC::new(&c);
        let cert = rc.y_in_tc_certificate(1).unwrap();
        assert!(cert.verify(&rc));
        let (m1, _) = &cert.certificate.terms[0];
        assert_eq!(m1.c(1), Some(&Q.t_pow(3)));
        let (m2, _) = &cert.certificate.terms[1];
        assert_eq!(m2.d(0), Some(&Q.from_i64(2)));
        let cert2 = rc.y_in_tc_certificate(2).unwrap();
        assert_eq!(cert2.certificate.terms[0].0.c(1), Some(&Q.t_pow(7)));
        assert_eq!(cert2.certificate.terms[2].0.c(0), Some(&Q.t_pow(7)));
        assert!(cert2.verify(&rc));
        for i in 1..=5 {
            let cert = rc.y_in_tc_certificate(i).unwrap();
            assert!(cert.verify(&rc));
            for k in 0..3 {
                let broken = TrickTwoCertificate { i, certificate: cert.certificate.drop_term(k) };
                assert!(!broken.verify(&rc));
            }
        }
        assert!(rc.y_in_tc_certificate(0).is_err());
        assert!(rc.y_in_tc_certificate(6).is_err());
    }

    #[test]
    fn m_squared_is_t_m() {
        let c = cons();
        let rc = RingC::new(&c);
        let (fwd, bwd) = rc.m2_equals_tm().unwrap();
        assert_eq!(fwd.len(), 3);
        assert!(fwd.iter().chain(&bwd).all(|cert| cert.verify(&rc)));
        assert!(!fwd[2].drop_term(0).verify(&rc));
    }

    #[test]
    fn integral_equations() {
        let c = cons();
        let rc = RingC::new(&c);
        for i in 0..=6 {
            let eq = rc.integral_equation(i).unwrap();
            assert!(eq.verify(&rc));
            assert!(!eq.perturb_constant(&rc, &Q.t_pow(9)).verify(&rc));
        }
    }

    #[test]
    fn frac_witness_examples() {
        let c = cons();
        let rc = RingC::new(&c);
        let fw = rc.frac_witness().unwrap();
        assert_eq!(fw.num.to_string(), "t + w0");
        assert!(fw.verify(&rc, 64));

        let mut a = vec![Q.from_i64(3)];
        a.extend((1..=6).map(|_| Q.one()));
        let params = ConstructionParams {
            base: Q,
            a,
            n: crate::construction::minimal_exponents(5),
            r_max: 5,
            transcendence_assumed: true,
        };
        let c3 = Construction::new(params).unwrap();
        let rc3 = RingC::new(&c3);
        let fw3 = rc3.frac_witness().unwrap();
        assert_eq!(fw3.num.c(0), Some(&Q.from_i64(3).mul_t_pow(1)));
        assert!(fw3.verify(&rc3, 64));
    }

    #[test]
    fn scaled_z_nonmembership_table() {
        let c = cons();
        let rc = RingC::new(&c);
        let rows = rc.ex2_nonmembership(1, 4).unwrap();
        let got: Vec<_> = rows.iter().map(|r| (r.valuation, r.required, r.fails)).collect();
        let f = Valuation::Finite;
        assert_eq!(got, vec![(f(2), 3, true), (f(6), 7, true), (f(14), 15, true), (f(30), 31, true)]);
        let rows0 = rc.ex2_nonmembership(0, 6).unwrap();
        assert_eq!((rows0[0].valuation, rows0[0].required), (f(0), 1));
        assert!(rows0.iter().all(|r| r.fails));
        let b = rc.ring_b();
        let w1 = b.mul_t_pow(&b.z_minus_a(1).unwrap(), 3);
        assert!(matches!(rc.c_membership(&w1, 1).unwrap(), super::super::Membership::Member { level: 1, .. }));
    }

    #[test]
    fn akizuki_examples() {
        let c = cons();
        let rc = RingC::new(&c);
        let w1 = rc.akizuki_witness(1, 6).unwrap();
        assert!(w1.not_in_tc());
        assert_eq!((w1.e_star, w1.bound), (6, 6));
        assert_eq!(w1.e_star_shifted, 3);
        let w0 = rc.akizuki_witness(0, 4).unwrap();
        assert_eq!(w0.levels.len(), 5);
        assert!(w0.not_in_tc());

        let f2 = BaseRing::Localized(ResidueField::Prime(2));
        let c2 = Construction::minimal_ones(f2, 3).unwrap();
        let rc2 = RingC::new(&c2);
        let w = rc2.akizuki_witness(1, 4).unwrap();
        assert_eq!((w.e_star, w.e_star_shifted), (6, 6));
    }
}
