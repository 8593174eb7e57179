//! The decomposition `f = X + Y w_r + t^N Z` and the explicit inverse for
//! principal ideals of `C_M`.

use std::collections::BTreeMap;

use super::{CElem, RingC};
use crate::base_ring::AElem;
use crate::error::{Error, Result};
use crate::series::SeriesValuation;

/// `f = X + Y * w_r + t^N * Z` with `X, Y` in `A` and `Z` in `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormEq6 {
    pub x: AElem,
    pub y: AElem,
    pub z: CElem,
    pub r: usize,
    pub precision: u32,
    /// Level at which the rewriting stopped.
    pub final_level: usize,
}

/// Output of [`RingC::claim_inverse`]: `f * g = t^{2n} * w` with `w` not in `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimWitness {
    pub n: u32,
    pub r: usize,
    pub decomposition: NormalFormEq6,
    pub g: CElem,
    pub w: CElem,
}

impl<'a> RingC<'a> {
    /// Rewrite `f` upward until every coefficient outside the words `1` and `w`
    /// has valuation at least `N`, then read off `X`, `Y` and `Z`.
    ///
    /// Each rewrite multiplies every coefficient on a word of `u`-degree at
    /// least 2 by a positive power of `t`, so at most `N` rounds are needed;
    /// the level budget may run out first.
    pub fn decompose_eq6(&self, f: &CElem, r: usize, precision: u32) -> Result<NormalFormEq6> {
        let cons = self.construction();
        if r > cons.r_max() {
            return Err(Error::IndexOutOfRange { index: r, max: cons.r_max() });
        }
        let settled = |g: &CElem| g.words().all(|(k, c)| k <= 1 || c.valuation().at_least(precision));
        let mut cur = f.clone();
        while !settled(&cur) {
            if cur.level() >= cons.top_level() {
                return Err(Error::LevelBudgetExceeded { top: cons.top_level() });
            }
            cur = self.coerce_c_up(&cur)?;
        }
        let s = cur.level();
        let base = self.base();
        let c0 = cur.c(0).cloned().unwrap_or_else(|| base.zero());
        let d0 = cur.d(0).cloned().unwrap_or_else(|| base.zero());
        // Y w_s = Y w_r + Y (w_s - w_r)
        let x = &c0 + &(&d0 * &self.w_difference(s, r));
        let mut even = cur.even().clone();
        let mut odd = cur.odd().clone();
        even.remove(&0);
        odd.remove(&0);
        let rest = self.from_parts(s, even, odd)?;
        let z = self
            .div_t_pow(&rest, precision)
            .map_err(|e| Error::Internal(format!("remainder not divisible by t^{precision}: {e}")))?;
        Ok(NormalFormEq6 { x, y: d0, z, r, precision, final_level: s })
    }

    /// Exact recomposition check in `B`.
    pub fn verify_eq6(&self, f: &CElem, nf: &NormalFormEq6) -> bool {
        let b = self.ring_b();
        let Ok(w_r) = self.w(nf.r) else { return false };
        let rhs = b.add(
            &b.add(&b.constant(nf.x.clone()), &b.scale(&self.to_b(&w_r), &nf.y)),
            &b.mul_t_pow(&self.to_b(&nf.z), nf.precision),
        );
        b.equal(&self.to_b(f), &rhs)
    }

    /// For `0 != f` in `M`: `g` in `C` and `w` in `C \ M` with `f g = t^{2n} w`,
    /// where `n` is the valuation of `f`.
    ///
    /// With `N = n + 1` and the least `r` having `n_r >= N - 1`, the
    /// decomposition gives `f = X + t^N Z + Y w_r` where `X = t^n u` for a unit
    /// `u`; then `g = X + t^N Z - Y w_r` and
    /// `f g = (X + t^N Z)^2 - Y^2 t^{2n_r+2} y_r`.
    pub fn claim_inverse(&self, f: &CElem, cap: u32) -> Result<ClaimWitness> {
        if f.is_zero() {
            return Err(Error::ZeroInput);
        }
        if !self.in_m(f) {
            return Err(Error::NotInM);
        }
        let cons = self.construction();
        let n = match self.ring_b().valuation(&self.to_b(f), cap) {
            SeriesValuation::Exact(n) => n,
            SeriesValuation::AtLeast(c) => return Err(Error::ValuationCapExceeded { cap: c }),
        };
        let precision = n + 1;
        let r = (0..=cons.r_max())
            .find(|&r| cons.n(r) >= n)
            .ok_or(Error::LevelBudgetExceeded { top: cons.top_level() })?;
        let nf = self.decompose_eq6(f, r, precision)?;
        if nf.x.valuation().finite() != Some(n) {
            return Err(Error::Internal(format!(
                "X = {} does not have valuation {n} in the decomposition of {f}",
                nf.x
            )));
        }
        let w_r = self.w(r)?;
        let h = self.add(&self.constant(nf.x.clone()), &self.mul_t_pow(&nf.z, precision));
        let g = self.sub(&h, &self.scale(&w_r, &nf.y));
        let h_sq = self
            .div_t_pow(&self.mul(&h, &h), 2 * n)
            .map_err(|e| Error::Internal(format!("(X + t^N Z)^2 not divisible by t^{}: {e}", 2 * n)))?;
        let y_sq = &nf.y * &nf.y;
        let cross = self.from_parts(
            r,
            BTreeMap::from([(1, y_sq.mul_t_pow(2 * cons.n(r) + 2 - 2 * n))]),
            BTreeMap::new(),
        )?;
        let w = self.sub(&h_sq, &cross);
        Ok(ClaimWitness { n, r, decomposition: nf, g, w })
    }

    /// `f g = t^{2n} w` exactly in `B`, and `w` evaluates to a nonzero residue.
    pub fn verify_claim(&self, f: &CElem, witness: &ClaimWitness) -> bool {
        let b = self.ring_b();
        let lhs = b.mul(&self.to_b(f), &self.to_b(&witness.g));
        let rhs = b.mul_t_pow(&self.to_b(&witness.w), 2 * witness.n);
        b.equal(&lhs, &rhs) && !self.in_m(&witness.w)
    }
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

    #[test]
    fn decompose_w0() {
        let c = cons();
        let rc = RingC::new(&c);
        let f = rc.w(0).unwrap();
        let nf = rc.decompose_eq6(&f, 2, 20).unwrap();
        assert_eq!(nf.x, &Q.t_pow(3) + &Q.t_pow(7));
        assert_eq!(nf.y, Q.one());
        assert!(nf.z.is_zero());
        assert!(rc.verify_eq6(&f, &nf));
    }

    #[test]
    fn decompose_constant() {
        let c = cons();
        let rc = RingC::new(&c);
        let f = rc.constant(Q.from_i64(5));
        for (r, n) in [(0, 4), (3, 64)] {
            let nf = rc.decompose_eq6(&f, r, n).unwrap();
            assert_eq!((nf.x.clone(), nf.y.clone(), nf.z.is_zero()), (Q.from_i64(5), Q.zero(), true));
        }
    }

    #[test]
    fn decompose_y0() {
        // y_0 = t^4 y_1 + 2t w_1 + t^4
        let c = cons();
        let rc = RingC::new(&c);
        let f = rc.y(0).unwrap();
        let nf = rc.decompose_eq6(&f, 1, 4).unwrap();
        assert_eq!(nf.x, Q.t_pow(4));
        assert_eq!(nf.y, Q.from_i64(2).mul_t_pow(1));
        assert_eq!(nf.z, rc.y(1).unwrap());
        assert!(rc.verify_eq6(&f, &nf));
    }

    #[test]
    fn decomposition_runs_out_of_levels() {
        let c = Construction::minimal_ones(Q, 1).unwrap();
        let rc = RingC::new(&c);
        let err = rc.decompose_eq6(&rc.y(0).unwrap(), 0, 64).unwrap_err();
        assert_eq!(err, Error::LevelBudgetExceeded { top: 2 });
    }

    #[test]
    fn claim_examples() {
        let c = cons();
        let rc = RingC::new(&c);
        let t = rc.constant(Q.t());
        let cw = rc.claim_inverse(&t, 64).unwrap();
        assert_eq!(cw.n, 1);
        assert!(rc.equal(&cw.g, &t));
        assert!(rc.equal(&cw.w, &rc.constant(Q.one())));
        assert!(rc.verify_claim(&t, &cw));

        let w0 = rc.w(0).unwrap();
        let cw = rc.claim_inverse(&w0, 64).unwrap();
        assert_eq!(cw.n, 3);
        assert_eq!(cw.r, 2);
        let g = rc.sub(&rc.constant(&Q.t_pow(3) + &Q.t_pow(7)), &rc.w(2).unwrap());
        assert!(rc.equal(&cw.g, &g));
        let unit = Q.from_coeffs(&[1, 0, 0, 0, 1]);
        let w = rc.sub(&rc.constant(&unit * &unit), &rc.mul_t_pow(&rc.y(2).unwrap(), 8));
        assert!(rc.equal(&cw.w, &w));
        assert!(rc.verify_claim(&w0, &cw));

        let ty0 = rc.mul_t_pow(&rc.y(0).unwrap(), 1);
        let cw = rc.claim_inverse(&ty0, 64).unwrap();
        assert_eq!(cw.n, 5);
        assert!(rc.verify_claim(&ty0, &cw));
    }

    #[test]
    fn claim_rejects_bad_inputs() {
        let c = cons();
        let rc = RingC::new(&c);
        assert_eq!(rc.claim_inverse(&rc.zero(), 64), Err(Error::ZeroInput));
        assert_eq!(rc.claim_inverse(&rc.constant(Q.one()), 64), Err(Error::NotInM));
        let deep = rc.mul_t_pow(&rc.w(0).unwrap(), 70);
        assert_eq!(rc.claim_inverse(&deep, 64), Err(Error::ValuationCapExceeded { cap: 64 }));
    }
}
