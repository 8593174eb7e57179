//! Seeded pseudo-random elements of `A`, `B` and `C` for property checks.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::base_ring::{AElem, BaseRing};
use crate::construction::{random_unit, Construction};
use crate::ring_b::{BElem, RingB};
use crate::ring_c::{CElem, RingC};

/// Deterministic generator for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// `t^v * u` with `v <= max_val` and `u` a small unit, sometimes a fraction.
pub fn nonzero_aelem<R: Rng>(base: BaseRing, rng: &mut R, max_val: u32) -> AElem {
    let mut u = random_unit(base, rng);
    if rng.gen_bool(0.3) {
        let d = random_unit(base, rng);
        u = &u * &d.invert_unit().expect("random_unit returns units");
    }
    u.mul_t_pow(rng.gen_range(0..=max_val))
}

/// Like [`nonzero_aelem`], but zero one time in ten.
pub fn aelem<R: Rng>(base: BaseRing, rng: &mut R, max_val: u32) -> AElem {
    if rng.gen_bool(0.1) {
        base.zero()
    } else {
        nonzero_aelem(base, rng, max_val)
    }
}

pub fn unit<R: Rng>(base: BaseRing, rng: &mut R) -> AElem {
    nonzero_aelem(base, rng, 0)
}

/// A polynomial in `z_s` for a random `s <= max_level`.
pub fn belem<R: Rng>(cons: &Construction, rng: &mut R, max_level: usize, max_degree: usize) -> BElem {
    let level = rng.gen_range(0..=max_level.min(cons.top_level()));
    let deg = rng.gen_range(0..=max_degree);
    let coeffs = (0..=deg).map(|_| aelem(cons.base(), rng, 4)).collect();
    RingB::new(cons).from_coeffs(level, coeffs).expect("level is in range")
}

pub fn nonzero_belem<R: Rng>(cons: &Construction, rng: &mut R, max_level: usize, max_degree: usize) -> BElem {
    loop {
        let f = belem(cons, rng, max_level, max_degree);
        if !f.is_zero() {
            return f;
        }
    }
}

/// A normal form at `level` with words of `u`-degree at most `max_degree`.
pub fn celem_at<R: Rng>(rc: &RingC<'_>, rng: &mut R, level: usize, max_degree: u32) -> CElem {
    let base = rc.construction().base();
    let mut even = BTreeMap::new();
    let mut odd = BTreeMap::new();
    for k in 0..=max_degree {
        if rng.gen_bool(0.4) {
            continue;
        }
        let c = aelem(base, rng, 4);
        if k % 2 == 0 {
            even.insert(k / 2, c);
        } else {
            odd.insert(k / 2, c);
        }
    }
    rc.from_parts(level, even, odd).expect("level is in range")
}

pub fn celem<R: Rng>(rc: &RingC<'_>, rng: &mut R, max_level: usize, max_degree: u32) -> CElem {
    let level = rng.gen_range(0..=max_level.min(rc.construction().top_level()));
    celem_at(rc, rng, level, max_degree)
}

/// A nonzero element of `M`: the constant coefficient is forced into `tA`.
pub fn m_element<R: Rng>(rc: &RingC<'_>, rng: &mut R, max_level: usize, max_degree: u32) -> CElem {
    let base = rc.construction().base();
    loop {
        let f = celem(rc, rng, max_level, max_degree);
        let c0 = f.c(0).cloned().unwrap_or_else(|| base.zero());
        let shift = rc.constant(&c0.mul_t_pow(1) - &c0);
        let g = rc.add(&f, &rc.coerce_c_to(&shift, f.level()).expect("level is in range"));
        if !g.is_zero() {
            return g;
        }
    }
}
