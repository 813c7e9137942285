mod common;

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weylkit_core::dpr::{alpha_solver, charp_normal_search, normal_element_from_alpha, normal_residuals, roundtrip_check};
use weylkit_core::sample::{random_elem, SampleParams};
use weylkit_core::*;

fn all_dprs() -> Vec<(&'static str, Dpr)> {
    vec![
        ("weyl-q", weyl_dpr(Field::Q)),
        ("weyl-f5", weyl_dpr(Field::fp(5).unwrap())),
        ("usl2", usl2_dpr()),
        ("oq2so3", oq2so3_dpr()),
    ]
}

/// Coefficients `(a, b)` of `a h + b` read off an element of `𝒟`.
fn linear_parts(e: &RingElem) -> (RingElem, RingElem) {
    let base = e.ring().base().unwrap().clone();
    let m = e.skew_coeffs().unwrap();
    assert!(m.keys().all(|&k| k <= 1), "{e} is not linear in h");
    let get = |k| m.get(&k).cloned().unwrap_or_else(|| base.zero());
    (get(1), get(0))
}

#[test]
fn power_coeffs_match_direct_expansion() {
    for (name, dpr) in all_dprs() {
        let img = dpr.to_gwa("h").unwrap();
        let h = img.h();
        let sig = dpr.sigma_power_coeffs(8);
        let tau = dpr.tau_power_coeffs(8).unwrap();
        for i in 1..=8usize {
            let direct = img.sigma().power(i as u64).apply(&h);
            assert_eq!(linear_parts(&direct), sig[i - 1], "{name} sigma^{i}");
            let direct = img.tau().power(i as u64).apply(&h);
            assert_eq!(linear_parts(&direct), tau[i - 1], "{name} tau^{i}");
        }
    }
}

#[test]
fn power_coeff_examples() {
    let w = weyl_dpr(Field::Q);
    for (i, (a, b)) in w.sigma_power_coeffs(8).iter().enumerate() {
        assert!(a.is_one());
        assert_eq!(*b, w.base().int(i as i64 + 1));
    }
    let u = usl2_dpr();
    let hh = u.base().generator("H").unwrap();
    let rows = u.sigma_power_coeffs(3);
    assert_eq!(rows[0].1, &u.base().int(2) * &hh);
    assert_eq!(rows[1].1, &(&u.base().int(4) * &hh) - &u.base().int(2));
    assert_eq!(rows[2].1, &(&u.base().int(6) * &hh) - &u.base().int(6));
}

#[test]
fn to_gwa_examples() {
    let w = weyl_dpr(Field::Q).to_gwa("h").unwrap();
    let h = w.h();
    assert!(w.report.all_pass());
    assert_eq!(w.sigma().apply(&h), &h + &w.dcal.one());
    assert_eq!(w.tau().apply(&h), &h - &w.dcal.one());
    assert_eq!(w.gwa.data().a, h);

    let u = usl2_dpr().to_gwa("h").unwrap();
    let h = u.h();
    let hh = u.dcal.generator("H").unwrap();
    assert!(u.report.all_pass());
    assert_eq!(u.sigma().apply(&h), &h + &(&u.dcal.int(2) * &hh));
    assert_eq!(u.tau().apply(&h), &h - &(&u.dcal.int(2) * &(&hh + &u.dcal.one())));
    assert_eq!(u.tau().apply(&u.sigma().apply(&h)), h);

    // symmetric side: h' = sigma(h) and tau(h') = rho^{-1}(h' - b)
    let s = u.symmetric().unwrap();
    let hp = &h + &(&u.dcal.int(2) * &hh);
    assert_eq!(s.data().a, hp);
    assert_eq!(s.data().sigma.apply(&hp), &hp - &(&u.dcal.int(2) * &hh));
}

#[test]
fn roundtrips() {
    for (name, dpr) in all_dprs() {
        assert!(roundtrip_check(&dpr, 100).unwrap(), "{name}");
        let img = dpr.to_gwa("h").unwrap();
        let (x, y) = (dpr.x(), dpr.y());
        let (tx, ty) = (img.translate(&x).unwrap(), img.translate(&y).unwrap());
        assert_eq!(img.translate_back(&(&tx * &ty)).unwrap(), &x * &y, "{name}");
        assert_eq!(img.translate(&(&y * &x)).unwrap(), img.gwa.embed(&img.h()).unwrap(), "{name}");
    }
}

#[test]
fn basis_expansion_is_unique() {
    // the same product in two association orders, and via the GWA side
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, dpr) in all_dprs() {
        let img = dpr.to_gwa("h").unwrap();
        for _ in 0..30 {
            let p = SampleParams::default();
            let (u, v, w) = (
                random_elem(dpr.ring(), &mut rng, &p),
                random_elem(dpr.ring(), &mut rng, &p),
                random_elem(dpr.ring(), &mut rng, &p),
            );
            let a = &(&u * &v) * &w;
            let b = &u * &(&v * &w);
            assert!((&a - &b).is_zero(), "{name}");
            let via = img.translate_back(&(&img.translate(&u).unwrap() * &img.translate(&(&v * &w)).unwrap())).unwrap();
            assert_eq!(via, a, "{name}");
        }
    }
}

#[test]
fn verify_data() {
    for (name, dpr) in all_dprs() {
        assert!(dpr.verify().all_pass(), "{name}");
        assert!(dpr.beta_invariants().unwrap().all_pass(), "{name}");
    }
    // sigma tau != id while b != 0 breaks sigma tau(d) b = b d
    let d = Ring::poly(Field::Q, &["H"]).unwrap();
    let hh = d.generator("H").unwrap();
    let s = RingEndo::new(&d, vec![&d.int(2) * &hh]).unwrap();
    let bad = DprData::new(&d, &s, &RingEndo::identity(&d), &hh, &d.one()).unwrap();
    let rep = dpr::verify_dpr_data(&bad);
    let c = rep.get("sigma_tau_b").unwrap();
    assert_eq!(c.status, Status::Fail);
    assert!(c.witness.as_deref().unwrap().contains("H"));
    let dpr = Dpr::new(&bad, "x", "y").unwrap();
    let beta = dpr.beta_invariants().unwrap();
    assert_eq!(beta.get("nu_beta").unwrap().status, Status::Fail);
}

#[test]
fn rho_nu_products() {
    let w = weyl_dpr(Field::Q);
    assert!((1..6).all(|n| w.rho_nu(n).is_one()));

    let d = Ring::poly(Field::Q, &["H"]).unwrap();
    let hh = d.generator("H").unwrap();
    let s = RingEndo::new(&d, vec![&d.int(2) * &hh]).unwrap();
    let t = s.try_inverse().unwrap();
    let q = DprData::new(&d, &s, &t, &hh, &d.int(3)).unwrap();
    let dq = Dpr::new(&q, "x", "y").unwrap();
    assert_eq!(dq.rho_nu(4), d.int(81));

    // rho = H in a Laurent ring, nu(H) = 6H, b = 0
    let l = Ring::laurent(Field::Q, &["H"]).unwrap();
    let hl = l.generator("H").unwrap();
    let s = RingEndo::new(&l, vec![&l.int(2) * &hl]).unwrap();
    let t = RingEndo::new(&l, vec![&l.int(3) * &hl]).unwrap();
    let data = DprData::new(&l, &s, &t, &l.zero(), &hl).unwrap();
    let dl = Dpr::new(&data, "x", "y").unwrap();
    assert!(dl.verify().all_pass());
    let nu = data.nu();
    assert_eq!(dl.rho_nu(3), &l.int(216) * &hl.pow(3));
    let r1_inv = dl.rho_nu(1).try_inverse().unwrap();
    assert_eq!(&r1_inv * &dl.rho_nu(3), nu.apply(&dl.rho_nu(2)));
    assert_eq!(dl.beta_invariants().unwrap().get("nu_beta").unwrap().status, Status::Skipped);
    assert!(roundtrip_check(&dl, 50).unwrap());

    // rho not a unit
    let bad = DprData::new(&d, &RingEndo::identity(&d), &RingEndo::identity(&d), &d.zero(), &hh).unwrap();
    let db = Dpr::new(&bad, "x", "y").unwrap();
    assert!(matches!(db.to_gwa("h"), Err(AlgebraError::RhoNotUnit)));
    assert!(matches!(alpha_solver(&bad), Err(AlgebraError::RhoNotUnit)));
}

#[test]
fn alpha_examples() {
    let u = usl2_dpr();
    let alpha = alpha_solver(u.data()).unwrap().unwrap();
    assert_eq!(alpha.to_string(), "H^2 + H");
    let d = u.data();
    assert_eq!(&(&d.rho * &alpha) - &d.sigma.apply(&alpha), d.b);

    assert!(alpha_solver(weyl_dpr(Field::Q).data()).unwrap().is_none());

    let k = Ring::poly(Field::Q, &["H"]).unwrap();
    let z = DprData::new(&k, &shift(&k, "H", -1), &shift(&k, "H", 1), &k.zero(), &k.one()).unwrap();
    assert_eq!(alpha_solver(&z).unwrap(), Some(k.zero()));

    let o = oq2so3_dpr();
    let alpha = alpha_solver(o.data()).unwrap().unwrap();
    assert_eq!(alpha, &frac(o.base(), -1, 2) * &o.base().generator("H").unwrap());
}

#[test]
fn normal_element_contract() {
    let u = usl2_dpr();
    let alpha = alpha_solver(u.data()).unwrap().unwrap();
    let ne = normal_element_from_alpha(&u, &alpha).unwrap();
    assert!(ne.report.all_pass(), "{:?}", ne.report.first_failure());
    assert!(ne.central);
    let (x, y) = (u.x(), u.y());
    let c = &ne.c_dpr;
    assert_eq!(c.to_string(), "y*x + H^2 + H");
    assert_eq!(&x * c, c * &x);
    assert_eq!(&y * c, c * &y);
    let hh = u.ring().generator("H").unwrap();
    assert_eq!(&hh * c, c * &hh);
    for name in ["x_c_eq_rho_c_x", "h_c_commute", "tau_c_eq_tau_rho_inv_c", "c_not_unit"] {
        assert_eq!(ne.report.get(name).unwrap().status, Status::Pass, "{name}");
    }
    assert!(normal_residuals(u.data(), &[alpha.clone()]).unwrap().iter().all(RingElem::is_zero));
    let wrong = &alpha + &u.base().generator("H").unwrap();
    assert!(!normal_residuals(u.data(), &[wrong.clone()]).unwrap()[0].is_zero());
    assert!(matches!(normal_element_from_alpha(&u, &wrong), Err(AlgebraError::AlphaConditionsFail(_))));

    let o = oq2so3_dpr();
    let alpha = alpha_solver(o.data()).unwrap().unwrap();
    let ne = normal_element_from_alpha(&o, &alpha).unwrap();
    assert!(ne.report.all_pass(), "{:?}", ne.report.first_failure());
}

#[test]
fn charp_search() {
    // F_p[H], sigma(H) = H - 1, rho = 1, b = 1: alpha = H already works at n = 0
    let f = Field::fp(5).unwrap();
    let k = Ring::poly(f, &["H"]).unwrap();
    let data = DprData::new(&k, &shift(&k, "H", -1), &shift(&k, "H", 1), &k.one(), &k.one()).unwrap();
    let dpr = Dpr::new(&data, "x", "y").unwrap();
    let sol = charp_normal_search(&dpr, 3).unwrap().unwrap();
    assert_eq!(sol.n, 0);
    assert_eq!(sol.alpha, k.generator("H").unwrap());
    assert!(sol.verified);
    assert_eq!(alpha_solver(&data).unwrap(), Some(k.generator("H").unwrap()));

    // the Weyl algebra over F_5: p' = h^5 - h
    let w = weyl_dpr(f);
    assert!(alpha_solver(w.data()).unwrap().is_none());
    let sol = charp_normal_search(&w, 3).unwrap().unwrap();
    assert_eq!(sol.n, 1);
    assert_eq!(sol.element.to_string(), "h^5 - h");
    assert!(sol.verified);
    let mut coeffs = vec![w.base().zero(); 5];
    coeffs[0] = sol.alpha.clone();
    coeffs[1] = sol.alphas[0].clone();
    assert!(normal_residuals(w.data(), &coeffs).unwrap().iter().all(RingElem::is_zero));

    assert!(matches!(charp_normal_search(&usl2_dpr(), 2), Err(AlgebraError::UnsupportedFamily(_))));
}
