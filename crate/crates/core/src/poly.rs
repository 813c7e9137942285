//! Helpers specific to commutative (Laurent) polynomial rings.

use alloc::vec::Vec;

use crate::ring::{add_term, PolyMap, Repr, Ring, RingElem};

fn leading(m: &PolyMap) -> Option<(&Vec<i64>, &crate::field::FieldElem)> {
    m.iter().next_back()
}

/// Smallest exponent of each variable over the support.
fn monomial_content(m: &PolyMap, n: usize) -> Vec<i64> {
    let mut c = alloc::vec![i64::MAX; n];
    for e in m.keys() {
        for (k, &x) in e.iter().enumerate() {
            c[k] = c[k].min(x);
        }
    }
    c
}

fn shift(m: &PolyMap, by: &[i64]) -> PolyMap {
    m.iter().map(|(e, c)| (e.iter().zip(by).map(|(x, s)| x + s).collect(), c.clone())).collect()
}

/// Exact quotient `n / m` in a polynomial or Laurent ring.
pub(crate) fn div_exact(n: &RingElem, m: &RingElem) -> Option<RingElem> {
    let ring = n.ring();
    let nv = ring.ngens();
    let (mut a, mut b) = (n.poly_terms()?.clone(), m.poly_terms()?.clone());
    let mut offset = alloc::vec![0i64; nv];
    if ring.is_laurent() {
        let ca = monomial_content(&a, nv);
        let cb = monomial_content(&b, nv);
        a = shift(&a, &ca.iter().map(|x| -x).collect::<Vec<_>>());
        b = shift(&b, &cb.iter().map(|x| -x).collect::<Vec<_>>());
        offset = ca.iter().zip(&cb).map(|(x, y)| x - y).collect();
    }
    let (lb_e, lb_c) = {
        let (e, c) = leading(&b)?;
        (e.clone(), c.inv()?)
    };
    let mut q = PolyMap::new();
    while let Some((le, lc)) = leading(&a) {
        let d: Vec<i64> = le.iter().zip(&lb_e).map(|(x, y)| x - y).collect();
        if d.iter().any(|&x| x < 0) {
            return None;
        }
        let c = lc.mul(&lb_c);
        for (e, bc) in &b {
            let ee: Vec<i64> = e.iter().zip(&d).map(|(x, y)| x + y).collect();
            add_term(&mut a, ee, bc.mul(&c).neg());
        }
        add_term(&mut q, d, c);
    }
    let q = shift(&q, &offset);
    Some(RingElem { ring: ring.clone(), repr: Repr::Poly(q) })
}

/// Formal partial derivative with respect to variable `k`.
pub fn derivative(e: &RingElem, k: usize) -> Option<RingElem> {
    let m = e.poly_terms()?;
    let f = e.ring().field();
    let mut out = PolyMap::new();
    for (ex, c) in m {
        if ex[k] != 0 {
            let mut ne = ex.clone();
            ne[k] -= 1;
            add_term(&mut out, ne, c.mul(&f.from_i64(ex[k])));
        }
    }
    Some(RingElem { ring: e.ring().clone(), repr: Repr::Poly(out) })
}

/// Determinant of the Jacobian matrix of `images` by cofactor expansion.
pub(crate) fn jacobian_det(ring: &Ring, images: &[RingElem]) -> Option<RingElem> {
    let n = images.len();
    let mut jac = Vec::with_capacity(n);
    for img in images {
        let row = (0..n).map(|k| derivative(img, k)).collect::<Option<Vec<_>>>()?;
        jac.push(row);
    }
    Some(det(ring, &jac))
}

fn det(ring: &Ring, m: &[Vec<RingElem>]) -> RingElem {
    let n = m.len();
    if n == 0 {
        return ring.one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = ring.zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<RingElem>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, e)| e.clone()).collect()).collect();
        let t = &m[0][j] * &det(ring, &minor);
        acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

/// Total degree in variable `k`, `None` for zero.
pub fn degree_in(e: &RingElem, k: usize) -> Option<i64> {
    e.poly_terms()?.keys().map(|ex| ex[k]).max()
}
