//! Dense univariate polynomials over a field: gcd, resultants, interpolation and
//! the shift/dilation resultant root search.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{AlgebraError, Result};
use crate::field::{Field, FieldElem};
use crate::ring::{Ring, RingElem};

/// Coefficients low degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<FieldElem>,
}

impl UniPoly {
    pub fn new(field: Field, mut coeffs: Vec<FieldElem>) -> UniPoly {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: Field) -> UniPoly {
        UniPoly { field, coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElem) -> UniPoly {
        UniPoly::new(c.field(), vec![c])
    }

    /// `h`.
    pub fn x(field: Field) -> UniPoly {
        UniPoly::new(field, vec![field.zero(), field.one()])
    }

    pub fn from_i64s(field: Field, cs: &[i64]) -> UniPoly {
        UniPoly::new(field, cs.iter().map(|&c| field.from_i64(c)).collect())
    }

    /// Reads an element of a univariate (or zero-variable) polynomial ring.
    pub fn from_elem(e: &RingElem) -> Result<UniPoly> {
        let ring = e.ring();
        let vars = ring.poly_vars().ok_or(AlgebraError::NotUnivariate)?;
        if vars.len() > 1 || ring.is_laurent() {
            return Err(AlgebraError::NotUnivariate);
        }
        let terms = e.poly_terms().unwrap();
        let mut coeffs = Vec::new();
        for (ex, c) in terms {
            let d = ex.first().copied().unwrap_or(0) as usize;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, ring.field().zero());
            }
            coeffs[d] = c.clone();
        }
        Ok(UniPoly::new(ring.field(), coeffs))
    }

    pub fn to_elem(&self, ring: &Ring) -> Result<RingElem> {
        let nv = ring.poly_vars().ok_or(AlgebraError::NotUnivariate)?.len();
        if nv > 1 || (nv == 0 && self.degree().map_or(false, |d| d > 0)) {
            return Err(AlgebraError::NotUnivariate);
        }
        RingElem::from_poly_terms(
            ring,
            self.coeffs.iter().enumerate().map(|(d, c)| (if nv == 1 { vec![d as i64] } else { vec![] }, c.clone())),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_unit(&self) -> bool {
        self.degree() == Some(0)
    }

    pub fn monic(&self) -> UniPoly {
        match self.lc() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    pub fn scale(&self, c: &FieldElem) -> UniPoly {
        UniPoly::new(self.field, self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new(self.field, (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        self.add(&o.scale(&self.field.from_i64(-1)))
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        UniPoly::new(self.field, out)
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::constant(self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lc().unwrap().inv().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![self.field.zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let c = r[k].mul(&inv);
            if !c.is_zero() {
                for (i, b) in d.coeffs.iter().enumerate() {
                    r[k - dd + i] = r[k - dd + i].sub(&b.mul(&c));
                }
                q[k - dd] = c;
            }
            r.pop();
            while r.last().map_or(false, |x| x.is_zero()) {
                r.pop();
            }
        }
        (UniPoly::new(self.field, q), UniPoly::new(self.field, r))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, u, v)` with `u*self + v*o = g`, `g` monic.
    pub fn xgcd(&self, o: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (UniPoly::constant(f.one()), UniPoly::zero(f));
        let (mut t0, mut t1) = (UniPoly::zero(f), UniPoly::constant(f.one()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = core::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = core::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = core::mem::replace(&mut t1, t);
        }
        match r0.lc() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = l.inv().unwrap();
                (r0.scale(&li), s0.scale(&li), t0.scale(&li))
            }
        }
    }

    pub fn eval(&self, x: &FieldElem) -> FieldElem {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// `p(u*h + c)`.
    pub fn compose_affine(&self, u: &FieldElem, c: &FieldElem) -> UniPoly {
        let lin = UniPoly::new(self.field, vec![c.clone(), u.clone()]);
        let mut acc = UniPoly::zero(self.field);
        for co in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&UniPoly::constant(co.clone()));
        }
        acc
    }

    /// Resultant by the Euclidean recurrence `Res(f,g) = (-1)^{mn} lc(g)^{m-deg r} Res(g,r)`.
    pub fn resultant(&self, o: &UniPoly) -> FieldElem {
        let f = self.field;
        if self.is_zero() || o.is_zero() {
            return f.zero();
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        let mut acc = f.one();
        loop {
            let m = a.degree().unwrap();
            let n = match b.degree() {
                None => return f.zero(),
                Some(n) => n,
            };
            if n == 0 {
                return acc.mul(&b.coeffs[0].pow(m as i64).unwrap());
            }
            if m == 0 {
                return acc.mul(&a.coeffs[0].pow(n as i64).unwrap());
            }
            let r = a.divrem(&b).1;
            if (m * n) % 2 == 1 {
                acc = acc.neg();
            }
            match r.degree() {
                None => return f.zero(),
                Some(dr) => {
                    acc = acc.mul(&b.lc().unwrap().pow((m - dr) as i64).unwrap());
                }
            }
            a = b;
            b = r;
        }
    }

    /// Newton interpolation through `(xs[i], ys[i])`.
    pub fn interpolate(field: Field, xs: &[FieldElem], ys: &[FieldElem]) -> Result<UniPoly> {
        let n = xs.len();
        let mut dd: Vec<FieldElem> = ys.to_vec();
        for k in 1..n {
            for i in (k..n).rev() {
                let den = xs[i].sub(&xs[i - k]);
                dd[i] = dd[i].sub(&dd[i - 1]).div(&den)?;
            }
        }
        let mut acc = UniPoly::zero(field);
        for i in (0..n).rev() {
            let lin = UniPoly::new(field, vec![xs[i].neg(), field.one()]);
            acc = acc.mul(&lin).add(&UniPoly::constant(dd[i].clone()));
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.field,
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.mul(&self.field.from_i64(i as i64))).collect(),
        )
    }

    /// Integer roots `t >= 1` (rational coefficients only), capped at `cap`.
    pub fn positive_integer_roots(&self, cap: u64) -> Result<Vec<u64>> {
        if self.field != Field::Q {
            return Err(AlgebraError::CharacteristicCaveat(self.field.characteristic()));
        }
        if self.is_zero() {
            return Err(AlgebraError::Unsupported("roots of the zero polynomial".into()));
        }
        let ints = integer_coeffs(self);
        // drop the factor t^k, it only contributes t = 0
        let start = ints.iter().position(|c| !c.is_zero()).unwrap();
        let ints = &ints[start..];
        if ints.len() == 1 {
            return Ok(Vec::new());
        }
        let bound = cauchy_bound(ints);
        if bound > BigInt::from(cap) {
            return Err(AlgebraError::TooLarge(alloc::format!("root bound {bound} exceeds {cap}")));
        }
        let bound = bound.to_u64().unwrap();
        let c0 = ints[0].abs();
        let mut out = Vec::new();
        for t in 1..=bound {
            let bt = BigInt::from(t);
            if !c0.is_multiple_of(&bt) {
                continue;
            }
            let mut acc = BigInt::zero();
            for c in ints.iter().rev() {
                acc = acc * &bt + c;
            }
            if acc.is_zero() {
                out.push(t);
            }
        }
        Ok(out)
    }
}

fn integer_coeffs(p: &UniPoly) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in &p.coeffs {
        l = l.lcm(c.as_rational().unwrap().denom());
    }
    p.coeffs
        .iter()
        .map(|c| {
            let r = c.as_rational().unwrap();
            r.numer() * (&l / r.denom())
        })
        .collect()
}

/// `1 + max |c_i / c_n|`, rounded up, for integer coefficients.
fn cauchy_bound(ints: &[BigInt]) -> BigInt {
    let lc = ints.last().unwrap().abs();
    let mut m = BigRational::zero();
    for c in &ints[..ints.len() - 1] {
        let r = BigRational::new(c.abs(), lc.clone());
        if r > m {
            m = r;
        }
    }
    (m + BigRational::one()).ceil().to_integer()
}

fn rational_cauchy(p: &UniPoly) -> BigRational {
    let lc = p.lc().unwrap().as_rational().unwrap().abs();
    let mut m = BigRational::zero();
    for c in &p.coeffs[..p.coeffs.len() - 1] {
        let r = c.as_rational().unwrap().abs() / &lc;
        if r > m {
            m = r;
        }
    }
    m + BigRational::one()
}

/// Monic gcd of two univariate polynomials.
pub fn poly_gcd(a: &RingElem, b: &RingElem) -> Result<RingElem> {
    if a.ring() != b.ring() {
        return Err(AlgebraError::HandleMismatch);
    }
    UniPoly::from_elem(a)?.gcd(&UniPoly::from_elem(b)?).to_elem(a.ring())
}

/// Resultant of two univariate polynomials.
pub fn resultant(a: &RingElem, b: &RingElem) -> Result<FieldElem> {
    if a.ring() != b.ring() {
        return Err(AlgebraError::HandleMismatch);
    }
    Ok(UniPoly::from_elem(a)?.resultant(&UniPoly::from_elem(b)?))
}

/// How `σ` acts on the variable: `σ(h) = h + c` or `σ(h) = q h`, or a general affine map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShiftFamily {
    Shift(FieldElem),
    Dilation(FieldElem),
    Affine { u: FieldElem, c: FieldElem },
}

/// Indices `i >= 1` with `Res(a, σ^i(a)) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShiftRoots {
    Finite(Vec<u64>),
    /// Every `i >= 1` with `i mod period` in `residues`.
    Periodic { period: u64, residues: Vec<u64> },
}

impl ShiftRoots {
    pub fn contains(&self, i: u64) -> bool {
        match self {
            ShiftRoots::Finite(v) => v.contains(&i),
            ShiftRoots::Periodic { period, residues } => residues.contains(&(i % period)),
        }
    }

    /// Smallest index in the set.
    pub fn first(&self) -> Option<u64> {
        match self {
            ShiftRoots::Finite(v) => v.first().copied(),
            ShiftRoots::Periodic { period, residues } => {
                residues.iter().map(|&r| if r == 0 { *period } else { r }).min()
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.first().is_none()
    }
}

const ROOT_CAP: u64 = 10_000_000;

/// Positive `i` for which `a` and `σ^i(a)` share a root, for affine `σ` over Q.
pub fn resultant_in_shift(a: &RingElem, family: &ShiftFamily) -> Result<ShiftRoots> {
    let p = UniPoly::from_elem(a)?;
    if p.is_zero() {
        return Err(AlgebraError::ZeroInput);
    }
    shift_roots(&p, family)
}

pub fn shift_roots(p: &UniPoly, family: &ShiftFamily) -> Result<ShiftRoots> {
    let f = p.field();
    if f != Field::Q {
        return Err(AlgebraError::CharacteristicCaveat(f.characteristic()));
    }
    if p.degree() == Some(0) {
        return Ok(ShiftRoots::Finite(Vec::new()));
    }
    match family {
        ShiftFamily::Affine { u, c } => {
            if u.is_one() {
                shift_roots(p, &ShiftFamily::Shift(c.clone()))
            } else {
                // conjugate by the fixed point h0 = c / (1 - u)
                let h0 = c.div(&f.one().sub(u))?;
                let moved = p.compose_affine(&f.one(), &h0);
                shift_roots(&moved, &ShiftFamily::Dilation(u.clone()))
            }
        }
        ShiftFamily::Shift(c) => {
            if c.is_zero() {
                return Ok(ShiftRoots::Periodic { period: 1, residues: vec![0] });
            }
            let n = p.degree().unwrap();
            let npts = n * n + 1;
            let xs: Vec<FieldElem> = (0..npts as i64).map(|k| f.from_i64(k)).collect();
            let ys: Vec<FieldElem> = xs.iter().map(|s| p.resultant(&p.compose_affine(&f.one(), s))).collect();
            let r = UniPoly::interpolate(f, &xs, &ys)?;
            let rt = r.compose_affine(c, &f.zero());
            let cap = (rational_cauchy(p) * BigRational::from_integer(2.into())
                / c.as_rational().unwrap().abs())
            .ceil()
            .to_integer()
            .to_u64()
            .unwrap_or(u64::MAX)
            .min(ROOT_CAP);
            let roots = rt.positive_integer_roots(ROOT_CAP)?;
            Ok(ShiftRoots::Finite(roots.into_iter().filter(|&t| t <= cap.max(1)).collect()))
        }
        ShiftFamily::Dilation(q) => {
            if q.is_zero() {
                return Err(AlgebraError::Unsupported("dilation by zero".into()));
            }
            if p.coeff(0).is_zero() {
                return Ok(ShiftRoots::Periodic { period: 1, residues: vec![0] });
            }
            let qr = q.as_rational().unwrap().clone();
            if qr.abs().is_one() {
                let period = if qr.is_one() { 1 } else { 2 };
                let mut residues = vec![0];
                if period == 2 && p.resultant(&p.compose_affine(q, &f.zero())).is_zero() {
                    residues.push(1);
                }
                return Ok(ShiftRoots::Periodic { period, residues });
            }
            // nonzero roots satisfy lo <= |r| <= hi, so |q|^i <= hi/lo
            let hi = rational_cauchy(p);
            let rev = UniPoly::new(f, p.coeffs.iter().rev().cloned().collect());
            let lo = rational_cauchy(&rev).recip();
            let ratio = hi / lo;
            let aq = qr.abs();
            let step = if aq > BigRational::one() { aq } else { aq.recip() };
            let mut out = Vec::new();
            let mut pw = step.clone();
            let mut qi = q.clone();
            let mut i = 1u64;
            while pw <= ratio {
                if p.resultant(&p.compose_affine(&qi, &f.zero())).is_zero() {
                    out.push(i);
                }
                i += 1;
                pw = &pw * &step;
                qi = qi.mul(q);
            }
            Ok(ShiftRoots::Finite(out))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(cs: &[i64]) -> UniPoly {
        UniPoly::from_i64s(Field::Q, cs)
    }

    #[test]
    fn gcd_examples() {
        let a = q(&[0, -3, 1]);
        assert!(a.gcd(&q(&[4, -5, 1])).is_unit());
        assert_eq!(a.gcd(&q(&[18, -9, 1])), q(&[-3, 1]));
        assert_eq!(q(&[2, 4]).gcd(&UniPoly::zero(Field::Q)), q(&[1, 2]).monic());
        assert!(UniPoly::zero(Field::Q).gcd(&UniPoly::zero(Field::Q)).is_zero());
    }

    #[test]
    fn shift_examples() {
        let m1 = Field::Q.from_i64(-1);
        let fam = ShiftFamily::Shift(m1);
        assert_eq!(shift_roots(&q(&[0, -3, 1]), &fam).unwrap(), ShiftRoots::Finite(vec![3]));
        assert_eq!(shift_roots(&q(&[0, 1]), &fam).unwrap(), ShiftRoots::Finite(vec![]));
        let dil = ShiftFamily::Dilation(Field::Q.from_i64(2));
        // roots 1 and 8: 8 = 2^3 * 1
        assert_eq!(shift_roots(&q(&[8, -9, 1]), &dil).unwrap(), ShiftRoots::Finite(vec![3]));
    }
}
