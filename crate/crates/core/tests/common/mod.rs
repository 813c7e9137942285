#![allow(dead_code)]

use weylkit_core::rankn::RankNData;
use weylkit_core::*;

pub fn c(r: &Ring, n: i64) -> RingElem {
    r.int(n)
}

pub fn frac(r: &Ring, n: i64, d: i64) -> RingElem {
    let f = r.field();
    r.constant(f.from_i64(n).div(&f.from_i64(d)).unwrap())
}

pub fn shift(r: &Ring, var: &str, by: i64) -> RingEndo {
    let g = r.generator(var).unwrap();
    RingEndo::from_named(r, &[(var, &g + &r.int(by))]).unwrap()
}

/// `D[x, y; sigma, tau, a]` with `D = K[h]`, `sigma(h) = h - 1`.
pub fn shift_gwa(field: Field, a: impl Fn(&RingElem, &Ring) -> RingElem) -> Gwa {
    let d = Ring::poly(field, &["h"]).unwrap();
    let h = d.generator("h").unwrap();
    let data = GwaData::new(&d, &shift(&d, "h", -1), &shift(&d, "h", 1), &a(&h, &d)).unwrap();
    Gwa::new(&data, "x", "y").unwrap()
}

pub fn weyl_gwa(field: Field) -> Gwa {
    shift_gwa(field, |h, _| h.clone())
}

pub fn hh3_gwa() -> Gwa {
    shift_gwa(Field::Q, |h, d| h * &(h - &d.int(3)))
}

/// `K[q][p; q -> lambda q]`, so `p q = lambda q p`.
pub fn quantum_plane(lambda: i64) -> Ring {
    let k = Ring::poly(Field::Q, &["q"]).unwrap();
    let q = k.generator("q").unwrap();
    let nu = RingEndo::new(&k, vec![&k.int(lambda) * &q]).unwrap();
    Ring::skew(&k, "p", &nu).unwrap()
}

/// GWA over the quantum plane with `sigma(p) = 3p`, `sigma(q) = 5q` and `a = pq`.
pub fn quantum_plane_gwa() -> Gwa {
    let d = quantum_plane(2);
    let (p, q) = (d.generator("p").unwrap(), d.generator("q").unwrap());
    let sigma = RingEndo::from_named(&d, &[("p", &d.int(3) * &p), ("q", &d.int(5) * &q)]).unwrap();
    let tau = RingEndo::from_named(&d, &[("p", &frac(&d, 1, 6) * &p), ("q", &frac(&d, 2, 5) * &q)]).unwrap();
    let data = GwaData::new(&d, &sigma, &tau, &(&p * &q)).unwrap();
    Gwa::new(&data, "x", "y").unwrap()
}

/// The Weyl algebra as a DPR over the ground field: `xy - yx = 1`.
pub fn weyl_dpr(field: Field) -> Dpr {
    let k = Ring::poly(field, &[]).unwrap();
    let id = RingEndo::identity(&k);
    Dpr::new(&DprData::new(&k, &id, &id, &k.one(), &k.one()).unwrap(), "x", "y").unwrap()
}

/// `U(sl2)` as `K[H]<X, Y; sigma, 2H, 1>`, `sigma(H) = H - 1`.
pub fn usl2_dpr() -> Dpr {
    let d = Ring::poly(Field::Q, &["H"]).unwrap();
    let h = d.generator("H").unwrap();
    let b = &d.int(2) * &h;
    Dpr::new(&DprData::new(&d, &shift(&d, "H", -1), &shift(&d, "H", 1), &b, &d.one()).unwrap(), "x", "y").unwrap()
}

/// A dilation DPR: `sigma(H) = 4H`, `tau(H) = H/4`, `b = 3H/2`, `rho = 1`.
pub fn oq2so3_dpr() -> Dpr {
    let d = Ring::poly(Field::Q, &["H"]).unwrap();
    let h = d.generator("H").unwrap();
    let s = RingEndo::new(&d, vec![&d.int(4) * &h]).unwrap();
    let t = RingEndo::new(&d, vec![&frac(&d, 1, 4) * &h]).unwrap();
    Dpr::new(&DprData::new(&d, &s, &t, &(&frac(&d, 3, 2) * &h), &d.one()).unwrap(), "x", "y").unwrap()
}

pub fn rank2_weyl() -> RankNData {
    let d = Ring::poly(Field::Q, &["H1", "H2"]).unwrap();
    let gens = d.generators();
    RankNData::classical(
        &d,
        vec![shift(&d, "H1", -1), shift(&d, "H2", -1)],
        vec![shift(&d, "H1", 1), shift(&d, "H2", 1)],
        gens,
    )
}
