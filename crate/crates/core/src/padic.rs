//! Base-p digits, Lucas binomials and the p-adic neighbour.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{AlgebraError, Result};
use crate::field::{is_prime, Field, FieldElem};

/// Largest number of digits accepted.
pub const MAX_DIGITS: usize = 64;

/// Base-p digits, least significant first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdicDigits {
    pub p: u64,
    pub digits: Vec<u64>,
}

impl PAdicDigits {
    pub fn new(n: &BigUint, p: u64) -> Result<PAdicDigits> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        let mut digits = Vec::new();
        let mut m = n.clone();
        let bp = BigUint::from(p);
        while !m.is_zero() {
            if digits.len() == MAX_DIGITS {
                return Err(AlgebraError::TooLarge(alloc::format!("{n} has more than {MAX_DIGITS} base-{p} digits")));
            }
            digits.push((&m % &bp).to_u64().unwrap());
            m /= &bp;
        }
        Ok(PAdicDigits { p, digits })
    }

    pub fn value(&self) -> BigUint {
        let bp = BigUint::from(self.p);
        self.digits.iter().rev().fold(BigUint::zero(), |acc, &d| acc * &bp + BigUint::from(d))
    }

    pub fn digit(&self, i: usize) -> u64 {
        self.digits.get(i).copied().unwrap_or(0)
    }
}

/// `C(n, m)` for `n < p`, in `F_p`.
fn small_binomial(f: Field, n: u64, m: u64) -> FieldElem {
    if m > n {
        return f.zero();
    }
    let m = m.min(n - m);
    let mut num = f.one();
    let mut den = f.one();
    for i in 0..m {
        num = num.mul(&f.from_i64((n - i) as i64));
        den = den.mul(&f.from_i64((i + 1) as i64));
    }
    num.div(&den).unwrap()
}

/// `C(n, m) mod p` as the product of digitwise binomials.
pub fn lucas_binomial(n: &BigUint, m: &BigUint, p: u64) -> Result<FieldElem> {
    let f = Field::fp(p)?;
    let nd = PAdicDigits::new(n, p)?;
    let md = PAdicDigits::new(m, p)?;
    if m > n {
        return Ok(f.zero());
    }
    let mut acc = f.one();
    for i in 0..nd.digits.len() {
        acc = acc.mul(&small_binomial(f, nd.digit(i), md.digit(i)));
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// `v_p(n)`, the index of the lowest nonzero base-p digit.
pub fn v_p(n: &BigUint, p: u64) -> Result<u64> {
    if n.is_zero() {
        return Err(AlgebraError::ZeroInput);
    }
    let d = PAdicDigits::new(n, p)?;
    Ok(d.digits.iter().position(|&x| x != 0).unwrap() as u64)
}

/// The largest `ñ < n` with `C(n, ñ) != 0` in `F_p`; requires `p | n`.
pub fn p_neighbour(n: &BigUint, p: u64) -> Result<BigUint> {
    if !is_prime(p) {
        return Err(AlgebraError::NotPrime(p));
    }
    if n.is_zero() {
        return Err(AlgebraError::ZeroInput);
    }
    if !(n % p).is_zero() {
        return Err(AlgebraError::PDoesNotDivideN { n: n.to_string(), p });
    }
    let mut d = PAdicDigits::new(n, p)?;
    let k = v_p(n, p)? as usize;
    d.digits[k] -= 1;
    while d.digits.last() == Some(&0) {
        d.digits.pop();
    }
    Ok(d.value())
}



#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn examples() {
        assert!(lucas_binomial(&b(6), &b(2), 2).unwrap().is_one());
        assert!(lucas_binomial(&b(6), &b(1), 2).unwrap().is_zero());
        assert_eq!(p_neighbour(&b(4), 2).unwrap(), b(0));
        assert_eq!(p_neighbour(&b(6), 2).unwrap(), b(4));
        assert_eq!(p_neighbour(&b(12), 2).unwrap(), b(8));
        assert_eq!(v_p(&b(12), 2).unwrap(), 2);
        assert_eq!(v_p(&b(9), 3).unwrap(), 2);
        assert_eq!(v_p(&b(1), 7).unwrap(), 0);
        assert_eq!(v_p(&b(0), 2), Err(AlgebraError::ZeroInput));
        assert!(matches!(p_neighbour(&b(7), 2), Err(AlgebraError::PDoesNotDivideN { .. })));
        assert_eq!(lucas_binomial(&b(3), &b(1), 4), Err(AlgebraError::NotPrime(4)));
    }
}
