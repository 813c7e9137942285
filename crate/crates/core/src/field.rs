//! Exact ground fields: the rationals and prime fields F_p.

use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{AlgebraError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Q,
    Fp(u64),
}

impl Field {
    /// The prime field of order `p`. Primality is checked.
    pub fn fp(p: u64) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::Fp(p))
        } else {
            Err(AlgebraError::NotPrime(p))
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Q => 0,
            Field::Fp(p) => p,
        }
    }

    pub fn zero(self) -> FieldElem {
        self.from_i64(0)
    }

    pub fn one(self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> FieldElem {
        match self {
            Field::Q => FieldElem::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Fp(p) => FieldElem::Fp { v: (n as i128).rem_euclid(p as i128) as u64, p },
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> FieldElem {
        match self {
            Field::Q => FieldElem::Q(BigRational::from_integer(n.clone())),
            Field::Fp(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                FieldElem::Fp { v: r.to_u64().unwrap_or(0), p }
            }
        }
    }

    /// `n/d` in this field; fails when `d` vanishes in the field.
    pub fn from_ratio(self, n: &BigInt, d: &BigInt) -> Result<FieldElem> {
        let d = self.from_bigint(d);
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        self.from_bigint(n).div(&d)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Fp(p) => write!(f, "F_{}", p),
        }
    }
}

/// An element of `Q` or `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

impl FieldElem {
    pub fn field(&self) -> Field {
        match self {
            FieldElem::Q(_) => Field::Q,
            FieldElem::Fp { p, .. } => Field::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Q(r) => r.is_zero(),
            FieldElem::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Q(r) => r.is_one(),
            FieldElem::Fp { v, .. } => *v == 1,
        }
    }

    pub fn add(&self, o: &FieldElem) -> FieldElem {
        match (self, o) {
            (FieldElem::Q(a), FieldElem::Q(b)) => FieldElem::Q(a + b),
            (FieldElem::Fp { v: a, p }, FieldElem::Fp { v: b, p: q }) if p == q => {
                FieldElem::Fp { v: ((*a as u128 + *b as u128) % *p as u128) as u64, p: *p }
            }
            _ => panic!("field mismatch"),
        }
    }

    pub fn neg(&self) -> FieldElem {
        match self {
            FieldElem::Q(a) => FieldElem::Q(-a),
            FieldElem::Fp { v, p } => FieldElem::Fp { v: if *v == 0 { 0 } else { p - v }, p: *p },
        }
    }

    pub fn sub(&self, o: &FieldElem) -> FieldElem {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &FieldElem) -> FieldElem {
        match (self, o) {
            (FieldElem::Q(a), FieldElem::Q(b)) => FieldElem::Q(a * b),
            (FieldElem::Fp { v: a, p }, FieldElem::Fp { v: b, p: q }) if p == q => {
                FieldElem::Fp { v: ((*a as u128 * *b as u128) % *p as u128) as u64, p: *p }
            }
            _ => panic!("field mismatch"),
        }
    }

    pub fn inv(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldElem::Q(a) => FieldElem::Q(a.recip()),
            FieldElem::Fp { v, p } => FieldElem::Fp { v: pow_mod(*v, p - 2, *p), p: *p },
        })
    }

    pub fn div(&self, o: &FieldElem) -> Result<FieldElem> {
        o.inv().map(|i| self.mul(&i)).ok_or(AlgebraError::DivisionByZero)
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, e: i64) -> Option<FieldElem> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.field().one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        Some(acc)
    }

    /// The rational value, if this is an element of Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElem::Q(r) => Some(r),
            _ => None,
        }
    }

    /// Multiplicative order, `None` when infinite (or for zero).
    pub fn multiplicative_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        match self {
            FieldElem::Q(r) => {
                if r.is_one() {
                    Some(1)
                } else if (-r).is_one() {
                    Some(2)
                } else {
                    None
                }
            }
            FieldElem::Fp { v, p } => {
                let n = p - 1;
                let mut order = n;
                for (q, _) in factor_u64(n) {
                    while order % q == 0 && pow_mod(*v, order / q, *p) == 1 {
                        order /= q;
                    }
                }
                Some(order)
            }
        }
    }

    /// `1 + u + ... + u^{i-1}`.
    pub fn geometric_sum(&self, i: u64) -> FieldElem {
        let f = self.field();
        let mut acc = f.zero();
        let mut pw = f.one();
        for _ in 0..i {
            acc = acc.add(&pw);
            pw = pw.mul(self);
        }
        acc
    }

    pub fn is_negative_rational(&self) -> bool {
        matches!(self, FieldElem::Q(r) if r.is_negative())
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Q(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElem::Fp { v, .. } => write!(f, "{}", v),
        }
    }
}

pub(crate) fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc: u128 = 1 % m as u128;
    let mut b128 = b as u128 % m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b128 % m as u128;
        }
        b128 = b128 * b128 % m as u128;
        e >>= 1;
    }
    acc as u64
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn factor_u64(mut n: u64) -> alloc::vec::Vec<(u64, u32)> {
    let mut out = alloc::vec::Vec::new();
    let mut q = 2u64;
    while q.saturating_mul(q) <= n {
        if n % q == 0 {
            let mut e = 0;
            while n % q == 0 {
                n /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn primes() {
        let small: alloc::vec::Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
        assert!(Field::fp(6).is_err());
    }

    #[test]
    fn fp_arithmetic() {
        let f = Field::fp(7).unwrap();
        assert_eq!(f.from_i64(-1), f.from_i64(6));
        assert_eq!(f.from_i64(3).inv().unwrap(), f.from_i64(5));
        assert_eq!(f.from_i64(3).multiplicative_order(), Some(6));
        assert_eq!(f.from_i64(2).multiplicative_order(), Some(3));
        assert_eq!(f.from_i64(1).geometric_sum(7), f.zero());
    }

    #[test]
    fn rational_display() {
        let q = Field::Q.from_ratio(&BigInt::from(6), &BigInt::from(-4)).unwrap();
        assert_eq!(q.to_string(), "-3/2");
        assert_eq!(Field::Q.from_i64(-1).multiplicative_order(), Some(2));
        assert_eq!(Field::Q.from_i64(2).multiplicative_order(), None);
    }
}
