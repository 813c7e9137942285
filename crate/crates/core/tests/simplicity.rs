mod common;

use common::*;
use weylkit_core::dpr::{alpha_solver, normal_element_from_alpha};
use weylkit_core::simplicity::{dpr_simple, gwa_simple, sigma_simple, Bounds, SimplicityReport, Verdict};
use weylkit_core::*;

fn gwa_report(g: &Gwa) -> SimplicityReport {
    gwa_simple(g.data(), Bounds::default()).unwrap()
}

fn dpr_report(d: &Dpr) -> SimplicityReport {
    dpr_simple(d, Bounds::default()).unwrap()
}

fn assert_well_formed(r: &SimplicityReport) {
    match r.verdict {
        Verdict::NotSimple => assert!(r.witness.is_some()),
        Verdict::Simple => assert!(r.conditions.iter().all(|c| c.status == Status::Pass)),
        Verdict::Inconclusive => assert!(r.conditions.iter().all(|c| c.status != Status::Fail)),
    }
    for c in &r.conditions {
        assert_eq!(c.status == Status::Fail, c.witness.is_some(), "condition {}", c.id);
    }
}

#[test]
fn weyl_over_q_is_simple() {
    let r = gwa_report(&weyl_gwa(Field::Q));
    assert_eq!(r.verdict, Verdict::Simple);
    assert_well_formed(&r);
    let r = dpr_report(&weyl_dpr(Field::Q));
    assert_eq!(r.verdict, Verdict::Simple);
    assert_well_formed(&r);
}

#[test]
fn weyl_over_fp_is_not_simple() {
    for p in [2u64, 3, 5] {
        let f = Field::fp(p).unwrap();
        let r = gwa_report(&weyl_gwa(f));
        assert_eq!(r.verdict, Verdict::NotSimple);
        assert_well_formed(&r);
        let c = r.condition("c").unwrap();
        assert_eq!(c.status, Status::Fail);
        assert_eq!(c.witness.as_ref().unwrap().index, Some(p));
        let b = r.condition("b").unwrap().witness.as_ref().unwrap();
        assert_eq!(b.element.as_deref(), Some(format!("h^{p} - h").as_str()));

        let r = dpr_report(&weyl_dpr(f));
        assert_eq!(r.verdict, Verdict::NotSimple);
        assert_well_formed(&r);
        let w = r.witness.as_ref().unwrap();
        assert_eq!((w.condition, w.index, w.element.as_deref()), ("d", Some(p), Some("0")));
    }
}

#[test]
fn hh3_fails_at_three() {
    let r = gwa_report(&hh3_gwa());
    assert_eq!(r.verdict, Verdict::NotSimple);
    let w = r.witness.as_ref().unwrap();
    assert_eq!((w.condition, w.index), ("d", Some(3)));
    assert_eq!(w.element.as_deref(), Some("h - 3"));
    for n in [1i64, 2, 4, 7] {
        let g = shift_gwa(Field::Q, |h, d| h * &(h - &d.int(n)));
        let w = gwa_report(&g).witness.unwrap();
        assert_eq!((w.condition, w.index), ("d", Some(n as u64)));
    }
}

#[test]
fn usl2_has_alpha_witness() {
    let u = usl2_dpr();
    let r = dpr_report(&u);
    assert_eq!(r.verdict, Verdict::NotSimple);
    let w = r.witness.as_ref().unwrap();
    assert_eq!((w.condition, w.element.as_deref()), ("c", Some("H^2 + H")));
    assert_eq!(r.condition("d").unwrap().witness.as_ref().unwrap().element.as_deref(), Some("2*H"));
}

#[test]
fn alpha_and_verdict_agree() {
    for (name, d) in [("usl2", usl2_dpr()), ("oq2so3", oq2so3_dpr()), ("weyl", weyl_dpr(Field::Q))] {
        let r = dpr_report(&d);
        assert_well_formed(&r);
        if let Some(alpha) = alpha_solver(d.data()).unwrap() {
            assert_eq!(r.verdict, Verdict::NotSimple, "{name}");
            let ne = normal_element_from_alpha(&d, &alpha).unwrap();
            assert!(ne.report.all_pass(), "{name}");
            assert_eq!(ne.report.get("c_not_unit").unwrap().status, Status::Pass);
        }
    }
}

#[test]
fn symmetric_presentation_agrees() {
    let gwas = [
        weyl_gwa(Field::Q),
        weyl_gwa(Field::fp(3).unwrap()),
        hh3_gwa(),
        quantum_plane_gwa(),
        usl2_dpr().to_gwa("h").unwrap().gwa,
    ];
    for g in &gwas {
        let a = gwa_report(g);
        let b = gwa_simple(&g.data().symmetric(), Bounds::default()).unwrap();
        assert_eq!(a.verdict, b.verdict, "{}", g.data().a);
        assert_well_formed(&b);
    }
}

#[test]
fn bounds_do_not_flip_verdicts() {
    let gwas = [weyl_gwa(Field::Q), weyl_gwa(Field::fp(5).unwrap()), hh3_gwa()];
    let dprs = [weyl_dpr(Field::Q), weyl_dpr(Field::fp(3).unwrap()), usl2_dpr(), oq2so3_dpr()];
    let bounds: Vec<Bounds> = [(2, 1), (5, 2), (25, 3), (60, 4)]
        .iter()
        .map(|&(n, k)| Bounds { b_units: n, powers: n, charp_n: k, gcd_factor: k as u64 })
        .collect();
    let decided = |v: Verdict| v != Verdict::Inconclusive;
    for g in &gwas {
        let vs: Vec<Verdict> = bounds.iter().map(|b| gwa_simple(g.data(), *b).unwrap().verdict).collect();
        let settled: Vec<_> = vs.iter().copied().filter(|v| decided(*v)).collect();
        assert!(settled.windows(2).all(|w| w[0] == w[1]), "{vs:?}");
    }
    for d in &dprs {
        let vs: Vec<Verdict> = bounds.iter().map(|b| dpr_simple(d, *b).unwrap().verdict).collect();
        let settled: Vec<_> = vs.iter().copied().filter(|v| decided(*v)).collect();
        assert!(settled.windows(2).all(|w| w[0] == w[1]), "{vs:?}");
    }
}

#[test]
fn quantum_plane_fails_coprimality() {
    let r = gwa_report(&quantum_plane_gwa());
    assert_eq!(r.verdict, Verdict::NotSimple);
    assert_eq!(r.witness.as_ref().unwrap().condition, "d");
    assert_well_formed(&r);
}

#[test]
fn sigma_simple_families() {
    let q = Ring::poly(Field::Q, &["h"]).unwrap();
    let h = q.generator("h").unwrap();
    assert_eq!(sigma_simple(&q, &shift(&q, "h", -1)).0, Tri::True);
    let dil = RingEndo::new(&q, vec![&q.int(3) * &h]).unwrap();
    assert_eq!(sigma_simple(&q, &dil), (Tri::False, Some("h".into())));
    for p in [2u64, 3, 7] {
        let fp = Ring::poly(Field::fp(p).unwrap(), &["h"]).unwrap();
        assert_eq!(sigma_simple(&fp, &shift(&fp, "h", -1)), (Tri::False, Some(format!("h^{p} - h"))));
    }
    let l = Ring::laurent(Field::Q, &["h"]).unwrap();
    let hl = l.generator("h").unwrap();
    let two = RingEndo::new(&l, vec![&l.int(2) * &hl]).unwrap();
    assert_eq!(sigma_simple(&l, &two).0, Tri::True);
    let minus = RingEndo::new(&l, vec![-&hl]).unwrap();
    assert_eq!(sigma_simple(&l, &minus), (Tri::False, Some("h^2 - 1".into())));
    let k = Ring::poly(Field::Q, &[]).unwrap();
    assert_eq!(sigma_simple(&k, &RingEndo::identity(&k)).0, Tri::True);
}

#[test]
fn dpr_preconditions() {
    let d = Ring::poly(Field::Q, &["H"]).unwrap();
    let hh = d.generator("H").unwrap();
    let id = RingEndo::identity(&d);
    let bad = Dpr::new(&DprData::new(&d, &id, &id, &d.zero(), &hh).unwrap(), "x", "y").unwrap();
    assert!(matches!(dpr_simple(&bad, Bounds::default()), Err(AlgebraError::RhoNotUnit)));
    let sq = RingEndo::new(&d, vec![hh.pow(2)]).unwrap();
    let ns = Dpr::new(&DprData::new(&d, &sq, &id, &d.zero(), &d.one()).unwrap(), "x", "y").unwrap();
    assert!(matches!(dpr_simple(&ns, Bounds::default()), Err(AlgebraError::NuNotSurjective)));
}
