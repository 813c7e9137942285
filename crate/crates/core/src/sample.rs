//! Seeded random elements for property checks and tripwires.

use alloc::vec::Vec;

use rand::Rng;

use crate::field::Field;
use crate::ring::{Ring, RingElem, RingKind};

/// Shape of sampled elements.
#[derive(Clone, Copy, Debug)]
pub struct SampleParams {
    /// Upper bound on the number of terms at each level.
    pub terms: usize,
    /// Largest exponent in base polynomial rings (absolute value for Laurent rings).
    pub degree: i64,
    /// Coefficients are drawn from `-coeff..=coeff`.
    pub coeff: i64,
    /// Degrees of twisted variables are drawn from `-support..=support` (GWA) or `0..=support`.
    pub support: i64,
}

impl Default for SampleParams {
    fn default() -> Self {
        SampleParams { terms: 3, degree: 2, coeff: 3, support: 2 }
    }
}

fn scalar<R: Rng>(f: Field, rng: &mut R, c: i64) -> crate::FieldElem {
    let c = c.max(1);
    loop {
        let n = rng.gen_range(-c..=c);
        let v = if f == Field::Q && rng.gen_bool(0.2) {
            f.from_i64(n).div(&f.from_i64(rng.gen_range(2..=3))).unwrap()
        } else {
            f.from_i64(n)
        };
        if !v.is_zero() {
            return v;
        }
    }
}

/// A random element of `ring`; may be zero.
pub fn random_elem<R: Rng>(ring: &Ring, rng: &mut R, p: &SampleParams) -> RingElem {
    let f = ring.field();
    let nterms = rng.gen_range(0..=p.terms);
    match &ring.0.kind {
        RingKind::Poly(pr) => {
            let lo = if pr.laurent { -p.degree } else { 0 };
            let terms: Vec<_> = (0..nterms)
                .map(|_| {
                    let e: Vec<i64> = (0..pr.vars.len()).map(|_| rng.gen_range(lo..=p.degree)).collect();
                    (e, scalar(f, rng, p.coeff))
                })
                .collect();
            RingElem::from_poly_terms(ring, terms).unwrap()
        }
        RingKind::Skew(s) => {
            let sub = SampleParams { terms: p.terms.min(2), ..*p };
            let terms: Vec<_> = (0..nterms)
                .map(|_| (rng.gen_range(0..=p.support.max(0)) as u32, random_elem(&s.base, rng, &sub)))
                .collect();
            RingElem::from_skew_coeffs(ring, terms).unwrap()
        }
        RingKind::Gwa(g) => {
            let sub = SampleParams { terms: p.terms.min(2), ..*p };
            let terms: Vec<_> =
                (0..nterms).map(|_| (rng.gen_range(-p.support..=p.support), random_elem(&g.data.base, rng, &sub))).collect();
            RingElem::from_gwa_coeffs(ring, terms).unwrap()
        }
        RingKind::Dpr(d) => {
            let sub = SampleParams { terms: p.terms.min(2), ..*p };
            let s = p.support.max(0) as u32;
            let terms: Vec<_> = (0..nterms)
                .map(|_| ((rng.gen_range(0..=s), rng.gen_range(0..=s)), random_elem(&d.data.base, rng, &sub)))
                .collect();
            RingElem::from_dpr_coeffs(ring, terms).unwrap()
        }
    }
}

/// A random nonzero element of `ring`.
pub fn random_nonzero<R: Rng>(ring: &Ring, rng: &mut R, p: &SampleParams) -> RingElem {
    loop {
        let e = random_elem(ring, rng, p);
        if !e.is_zero() {
            return e;
        }
    }
}
