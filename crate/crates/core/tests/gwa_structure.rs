mod common;

use std::collections::BTreeMap;

use common::*;
use weylkit_core::gwa::{check_involution_conditions, verify_gwa_data};
use weylkit_core::*;

/// `x * (d v_k)` and `y * (d v_k)` straight from `xd = σ(d)x`, `yd = τ(d)y`, `yx = a`, `xy = σ(a)`.
fn left_x(g: &GwaData, u: &BTreeMap<i64, RingElem>) -> BTreeMap<i64, RingElem> {
    u.iter()
        .map(|(&k, d)| {
            let c = g.sigma.apply(d);
            if k >= 0 {
                (k + 1, c)
            } else {
                (k + 1, &c * &g.sigma.apply(&g.a))
            }
        })
        .collect()
}

fn left_y(g: &GwaData, u: &BTreeMap<i64, RingElem>) -> BTreeMap<i64, RingElem> {
    u.iter()
        .map(|(&k, d)| {
            let c = g.tau.apply(d);
            if k <= 0 {
                (k - 1, c)
            } else {
                (k - 1, &c * &g.a)
            }
        })
        .collect()
}

fn oracle_constant(g: &GwaData, n: i64, m: i64) -> RingElem {
    let mut u = BTreeMap::from([(m, g.base.one())]);
    for _ in 0..n.abs() {
        u = if n > 0 { left_x(g, &u) } else { left_y(g, &u) };
    }
    u.remove(&(n + m)).unwrap()
}

fn all_gwas() -> Vec<(&'static str, Gwa)> {
    vec![
        ("weyl-q", weyl_gwa(Field::Q)),
        ("weyl-fp", weyl_gwa(Field::fp(5).unwrap())),
        ("hh3", hh3_gwa()),
        ("quantum-plane", quantum_plane_gwa()),
        ("weyl-dpr", weyl_dpr(Field::Q).to_gwa("h").unwrap().gwa),
        ("usl2-dpr", usl2_dpr().to_gwa("h").unwrap().gwa),
        ("oq2so3-dpr", oq2so3_dpr().to_gwa("h").unwrap().gwa),
    ]
}

#[test]
fn structure_constants_match_relations() {
    for (name, g) in all_gwas() {
        for n in -4..=4 {
            for m in -4..=4 {
                assert_eq!(g.structure_constant(n, m), oracle_constant(g.data(), n, m), "{name} ({n},{m})");
            }
        }
    }
}

#[test]
fn balanced_constants_are_translates() {
    for (name, g) in all_gwas() {
        let d = g.data();
        for i in 1..=5i64 {
            let (p, q) = (g.structure_constant(i, -i), g.structure_constant(-i, i));
            assert_eq!(p, d.sigma.power(i as u64).apply(&q), "{name} i={i}");
            assert_eq!(q, d.tau.power(i as u64).apply(&p), "{name} i={i}");
        }
    }
}

#[test]
fn twisted_constants_commute() {
    for (name, g) in all_gwas() {
        let gens = g.base().generators();
        for n in -3..=3 {
            for m in -3..=3 {
                let c = g.structure_constant(n, m);
                for d in &gens {
                    let lhs = &g.twist(n).apply(&g.twist(m).apply(d)) * &c;
                    let rhs = &c * &g.twist(n + m).apply(d);
                    assert_eq!(lhs, rhs, "{name} ({n},{m}) d={d}");
                }
            }
        }
    }
}

#[test]
fn weyl_constant_examples() {
    let g = weyl_gwa(Field::Q);
    let d = g.base().clone();
    let h = d.generator("h").unwrap();
    assert_eq!(g.structure_constant(1, -1), &h - &d.one());
    assert_eq!(g.structure_constant(-1, 1), h.clone());
    assert_eq!(g.structure_constant(-2, 2), &(&h + &d.one()) * &h);
    assert_eq!(g.structure_constant(3, 2), d.one());
}

#[test]
fn verify_reports() {
    for (name, g) in all_gwas() {
        assert!(verify_gwa_data(g.data()).all_pass(), "{name}");
    }
    let d = Ring::poly(Field::Q, &["h"]).unwrap();
    let h = d.generator("h").unwrap();
    let bad = GwaData::new(&d, &shift(&d, "h", -1), &shift(&d, "h", 2), &h).unwrap();
    let rep = verify_gwa_data(&bad);
    let c = rep.first_failure().unwrap();
    assert_eq!(c.name, "tau_sigma_a");
    assert!(c.witness.as_deref().unwrap().contains("h + 1"), "{:?}", c.witness);
}

#[test]
fn ideal_components() {
    let g = weyl_gwa(Field::Q);
    let d = g.base().clone();
    let h = d.generator("h").unwrap();
    let mut comp = g.ideal_component(1, 0).unwrap();
    comp.sort_by_key(|e| e.to_string());
    assert_eq!(comp, vec![h.clone(), &h - &d.one()]);
    assert_eq!(g.ideal_component(2, 2).unwrap(), vec![d.one()]);
    assert!(g.ideal_component(0, 1).is_err());

    let g = hh3_gwa();
    let gens = g.ideal_component(3, 2).unwrap();
    let gcd = gens.iter().fold(g.base().zero(), |acc, e| univariate::poly_gcd(&acc, e).unwrap());
    assert_eq!(gcd.to_string(), "h - 3");
    assert!(g.powers_generate_unit_ideal(1).unwrap());
    assert!(!g.powers_generate_unit_ideal(3).unwrap());
    let w = weyl_gwa(Field::Q);
    assert!((1..=10).all(|i| w.powers_generate_unit_ideal(i).unwrap()));
}

#[test]
fn iprime_examples() {
    let g = weyl_gwa(Field::Q);
    let d = g.base().clone();
    let h = d.generator("h").unwrap();
    assert_eq!(g.iprime_step(&[h.clone()], 1).unwrap(), vec![d.one()]);
    assert_eq!(g.iprime_step(&[d.one()], 1).unwrap(), vec![d.one()]);
    let g = hh3_gwa();
    assert_eq!(g.iprime_step(&[&h - &d.int(3)], 3).unwrap(), vec![d.one()]);
}

#[test]
fn regularity_and_domain() {
    let g = weyl_gwa(Field::Q);
    let r = g.regularity_report();
    for t in [r.x_left_regular, r.x_right_regular, r.y_left_regular, r.y_right_regular, r.x_regular, r.y_regular] {
        assert_eq!(t, Tri::True);
    }
    assert_eq!(g.domain_check(), Tri::True);

    let d = Ring::poly(Field::Q, &["h"]).unwrap();
    let zero = GwaData::new(&d, &shift(&d, "h", -1), &shift(&d, "h", 1), &d.zero()).unwrap();
    assert_eq!(gwa::domain_check(&zero), Tri::False);
    assert_eq!(gwa::regularity_report(&zero).x_left_regular, Tri::False);

    let kill = RingEndo::new(&d, vec![d.zero()]).unwrap();
    assert_eq!(kill.kernel_union_is_zero(), Tri::False);
    let collapse = GwaData::new(&d, &kill, &RingEndo::identity(&d), &d.one()).unwrap();
    assert_eq!(gwa::domain_check(&collapse), Tri::False);
    assert_eq!(gwa::regularity_report(&collapse).x_right_regular, Tri::False);
}

#[test]
fn involution_conditions() {
    let g = weyl_gwa(Field::Q);
    let star = Involution::trivial(g.base()).unwrap();
    assert!(check_involution_conditions(g.data(), &star).all_pass());

    // U(sl2) as a GWA over Q[H, C]
    let d = Ring::poly(Field::Q, &["H", "C"]).unwrap();
    let (hh, cc) = (d.generator("H").unwrap(), d.generator("C").unwrap());
    let a = &cc - &(&hh * &(&hh + &d.one()));
    let data = GwaData::new(&d, &shift(&d, "H", -1), &shift(&d, "H", 1), &a).unwrap();
    let u = Gwa::new(&data, "X", "Y").unwrap();
    let star = Involution::trivial(&d).unwrap();
    assert!(check_involution_conditions(&data, &star).all_pass());
    let s = u.star(&star).unwrap();
    assert_eq!(s.apply(&u.x()).unwrap(), u.y());
    assert_eq!(s.apply(&u.embed(&hh).unwrap()).unwrap(), u.embed(&hh).unwrap());
    let xy = &u.x() * &u.y();
    assert_eq!(s.apply(&xy).unwrap(), xy);

    // a shift that does not commute with the star
    let neg = Involution::new(&d, vec![-&hh, cc.clone()]).unwrap();
    assert!(!check_involution_conditions(&data, &neg).all_pass());
}
