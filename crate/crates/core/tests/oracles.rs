mod common;

use common::*;
use num_bigint::BigUint;
use proptest::prelude::*;
use weylkit_core::endo::omega_of_normal;
use weylkit_core::padic::{lucas_binomial, p_neighbour, v_p, PAdicDigits};
use weylkit_core::univariate::{poly_gcd, resultant_in_shift, ShiftFamily, ShiftRoots, UniPoly};
use weylkit_core::*;

fn q(n: i64) -> FieldElem {
    Field::Q.from_i64(n)
}

/// Determinant of the Sylvester matrix by Gaussian elimination.
fn sylvester_resultant(a: &UniPoly, b: &UniPoly) -> FieldElem {
    let f = a.field();
    let (m, n) = (a.degree().unwrap(), b.degree().unwrap());
    let size = m + n;
    let mut rows: Vec<Vec<FieldElem>> = Vec::new();
    for (p, deg, count) in [(a, m, n), (b, n, m)] {
        for s in 0..count {
            let mut row = vec![f.zero(); size];
            for k in 0..=deg {
                row[s + k] = p.coeff(deg - k);
            }
            rows.push(row);
        }
    }
    let mut det = f.one();
    for col in 0..size {
        let Some(piv) = (col..size).find(|&r| !rows[r][col].is_zero()) else {
            return f.zero();
        };
        if piv != col {
            rows.swap(piv, col);
            det = det.neg();
        }
        det = det.mul(&rows[col][col]);
        let inv = rows[col][col].inv().unwrap();
        for r in col + 1..size {
            let factor = rows[r][col].mul(&inv);
            for k in col..size {
                let v = rows[r][k].sub(&factor.mul(&rows[col][k]));
                rows[r][k] = v;
            }
        }
    }
    det
}

fn poly_from(cs: &[i64]) -> UniPoly {
    UniPoly::from_i64s(Field::Q, cs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn resultant_matches_sylvester(a in prop::collection::vec(-5i64..=5, 2..5), b in prop::collection::vec(-5i64..=5, 2..5)) {
        let (pa, pb) = (poly_from(&a), poly_from(&b));
        prop_assume!(pa.degree().unwrap_or(0) >= 1 && pb.degree().unwrap_or(0) >= 1);
        prop_assert_eq!(pa.resultant(&pb), sylvester_resultant(&pa, &pb));
    }

    #[test]
    fn gcd_divides_and_bezout(a in prop::collection::vec(-5i64..=5, 1..5), b in prop::collection::vec(-5i64..=5, 1..5)) {
        let (pa, pb) = (poly_from(&a), poly_from(&b));
        prop_assume!(!pa.is_zero() && !pb.is_zero());
        let g = pa.gcd(&pb);
        prop_assert!(pa.divrem(&g).1.is_zero());
        prop_assert!(pb.divrem(&g).1.is_zero());
        let (g2, u, v) = pa.xgcd(&pb);
        prop_assert_eq!(&g2, &g);
        prop_assert_eq!(u.mul(&pa).add(&v.mul(&pb)), g);
    }

    #[test]
    fn shift_roots_agree_with_gcd(roots in prop::collection::vec(-6i64..=6, 1..4)) {
        let r = Ring::poly(Field::Q, &["h"]).unwrap();
        let h = r.generator("h").unwrap();
        let a = roots.iter().fold(r.one(), |acc, &t| &acc * &(&h - &r.int(t)));
        let found = resultant_in_shift(&a, &ShiftFamily::Shift(q(-1))).unwrap();
        let sigma = shift(&r, "h", -1);
        for i in 1..=14u64 {
            let g = poly_gcd(&a, &sigma.power(i).apply(&a)).unwrap();
            prop_assert_eq!(found.contains(i), !g.is_unit().unwrap(), "i = {}", i);
        }
    }
}

#[test]
fn gcd_examples() {
    let r = Ring::poly(Field::Q, &["h"]).unwrap();
    let h = r.generator("h").unwrap();
    let lin = |t: i64| &h - &r.int(t);
    assert_eq!(poly_gcd(&(&h * &lin(3)), &(&lin(1) * &lin(4))).unwrap(), r.one());
    assert_eq!(poly_gcd(&(&h * &lin(3)), &(&lin(3) * &lin(6))).unwrap(), lin(3));
    let f = &r.int(2) * &(&h * &lin(3));
    assert_eq!(poly_gcd(&f, &r.zero()).unwrap(), &h * &lin(3));
    assert_eq!(poly_gcd(&r.zero(), &r.zero()).unwrap(), r.zero());
    let two = Ring::poly(Field::Q, &["a", "b"]).unwrap();
    assert!(poly_gcd(&two.generator("a").unwrap(), &two.one()).is_err());
}

#[test]
fn shift_root_examples() {
    let r = Ring::poly(Field::Q, &["h"]).unwrap();
    let h = r.generator("h").unwrap();
    let s = ShiftFamily::Shift(q(-1));
    for n in [3, 5] {
        let a = &h * &(&h - &r.int(n));
        assert_eq!(resultant_in_shift(&a, &s).unwrap(), ShiftRoots::Finite(vec![n as u64]));
    }
    assert!(resultant_in_shift(&h, &s).unwrap().is_empty());
    let fp = Ring::poly(Field::fp(5).unwrap(), &["h"]).unwrap();
    assert!(matches!(
        resultant_in_shift(&fp.generator("h").unwrap(), &s),
        Err(AlgebraError::CharacteristicCaveat(5))
    ));
}

#[test]
fn endo_examples() {
    let r = Ring::poly(Field::Q, &["h"]).unwrap();
    let h = r.generator("h").unwrap();
    let s = shift(&r, "h", -1);
    assert_eq!(s.apply(&h.pow(2)).to_string(), "h^2 - 2*h + 1");
    assert_eq!(s.compose(&s).unwrap().apply(&h), &h - &r.int(2));
    assert!(s.power(0).is_identity());
    assert_eq!(s.try_inverse().unwrap().apply(&h), &h + &r.one());
    assert!(RingEndo::identity(&r).apply(&h.pow(3)) == h.pow(3));

    let qd = RingEndo::new(&r, vec![&frac(&r, 2, 3) * &h]).unwrap();
    assert_eq!(qd.power(3).apply(&h), &frac(&r, 8, 27) * &h);
    assert_eq!(qd.try_inverse().unwrap().apply(&h), &frac(&r, 3, 2) * &h);
    let sq = RingEndo::new(&r, vec![h.pow(2)]).unwrap();
    assert!(sq.try_inverse().is_none());
    assert_eq!(sq.kernel_union_is_zero(), Tri::True);
    assert_eq!(s.kernel_union_is_zero(), Tri::True);

    assert!((1..=10).all(|i| !s.is_identity_power(i).unwrap()));
    let fp = Ring::poly(Field::fp(7).unwrap(), &["h"]).unwrap();
    let sp = shift(&fp, "h", -1);
    assert!(sp.is_identity_power(7).unwrap());
    assert!(!sp.is_identity_power(6).unwrap());
    let neg = RingEndo::new(&r, vec![-&h]).unwrap();
    assert!(neg.is_identity_power(2).unwrap());

    // quantum plane: sigma(p) = 3p, sigma(q) = 5q, so sigma(pq) = 15 pq
    let g = quantum_plane_gwa();
    let d = g.base();
    let pq = &d.generator("p").unwrap() * &d.generator("q").unwrap();
    assert_eq!(g.data().sigma.apply(&pq), &d.int(15) * &pq);
    assert!(!quantum_plane(2).is_commutative());
    assert!(matches!(g.data().sigma.is_identity_power(1), Err(AlgebraError::NoncommutativeUnsupported)));
}

#[test]
fn omega_examples() {
    let r = Ring::poly(Field::Q, &["h"]).unwrap();
    assert!(omega_of_normal(&r, &r.generator("h").unwrap()).unwrap().is_identity());

    let lambda = 7;
    let d = quantum_plane(lambda);
    let (p, qq) = (d.generator("p").unwrap(), d.generator("q").unwrap());
    let w = omega_of_normal(&d, &(&p * &qq)).unwrap();
    assert_eq!(w.apply(&p), &frac(&d, 1, lambda) * &p);
    assert_eq!(w.apply(&qq), &d.int(lambda) * &qq);
    let w2 = omega_of_normal(&d, &p.pow(2)).unwrap();
    assert_eq!(w2.apply(&p), p.clone());
    assert_eq!(w2.apply(&qq), &d.int(lambda * lambda) * &qq);

    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for a in [&p * &qq, p.pow(2), &d.int(3) * &(&qq.pow(2) * &p)] {
        let w = omega_of_normal(&d, &a).unwrap();
        for _ in 0..20 {
            let e = weylkit_core::sample::random_elem(&d, &mut rng, &Default::default());
            assert_eq!(&a * &e, &w.apply(&e) * &a);
        }
    }
    assert!(omega_of_normal(&d, &(&p + &qq)).is_err());
}

fn binomial(n: u64, m: u64) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for k in 0..m {
        acc = acc * BigUint::from(n - k) / BigUint::from(k + 1);
    }
    acc
}

/// Largest `m < n` with `C(n, m) != 0 mod p`, by scanning downwards.
fn neighbour_scan(n: u64, p: u64) -> u64 {
    (0..n).rev().find(|&m| binomial(n, m) % p != BigUint::from(0u32)).unwrap()
}

#[test]
fn lucas_matches_brute_force() {
    for p in [2u64, 3, 5, 7] {
        let f = Field::fp(p).unwrap();
        for n in 0..=200u64 {
            for m in 0..=n {
                let exact = (binomial(n, m) % p).to_u64_digits().first().copied().unwrap_or(0);
                let got = lucas_binomial(&BigUint::from(n), &BigUint::from(m), p).unwrap();
                assert_eq!(got, f.from_i64(exact as i64), "C({n},{m}) mod {p}");
            }
        }
    }
    assert_eq!(lucas_binomial(&6u32.into(), &2u32.into(), 2).unwrap(), Field::fp(2).unwrap().one());
    assert!(lucas_binomial(&6u32.into(), &1u32.into(), 2).unwrap().is_zero());
    assert!(matches!(lucas_binomial(&6u32.into(), &1u32.into(), 4), Err(AlgebraError::NotPrime(4))));
}

#[test]
fn lucas_scaling() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for p in [2u64, 3, 5] {
        for _ in 0..20 {
            let n: u64 = rng.gen_range(0..60);
            let m: u64 = rng.gen_range(0..=n);
            let base = lucas_binomial(&n.into(), &m.into(), p).unwrap();
            for i in 1..=3 {
                let s = p.pow(i);
                assert_eq!(lucas_binomial(&(n * s).into(), &(m * s).into(), p).unwrap(), base);
            }
        }
    }
}

#[test]
fn neighbour_matches_scan() {
    for p in [2u64, 3, 5, 7] {
        for n in (p..=500).step_by(p as usize) {
            let got = p_neighbour(&n.into(), p).unwrap();
            assert_eq!(got, BigUint::from(neighbour_scan(n, p)), "n={n} p={p}");
            assert!(&got % p == BigUint::from(0u32));
        }
        for i in 1..=6u32 {
            assert_eq!(p_neighbour(&p.pow(i).into(), p).unwrap(), BigUint::from(0u32));
        }
    }
    assert_eq!(p_neighbour(&4u32.into(), 2).unwrap(), BigUint::from(0u32));
    assert_eq!(p_neighbour(&6u32.into(), 2).unwrap(), BigUint::from(4u32));
    assert_eq!(p_neighbour(&12u32.into(), 2).unwrap(), BigUint::from(8u32));
    assert!(matches!(p_neighbour(&7u32.into(), 2), Err(AlgebraError::PDoesNotDivideN { .. })));
}

#[test]
fn valuation_and_digits() {
    assert_eq!(v_p(&12u32.into(), 2).unwrap(), 2);
    assert_eq!(v_p(&9u32.into(), 3).unwrap(), 2);
    assert_eq!(v_p(&1u32.into(), 5).unwrap(), 0);
    assert!(matches!(v_p(&0u32.into(), 5), Err(AlgebraError::ZeroInput)));
    for n in 0..300u32 {
        let d = PAdicDigits::new(&n.into(), 3).unwrap();
        assert_eq!(d.value(), BigUint::from(n));
        assert!(d.digits.last().is_none_or(|&x| x != 0));
    }
    assert!(matches!(PAdicDigits::new(&BigUint::from(2u32).pow(70), 2), Err(AlgebraError::TooLarge(_))));
}
