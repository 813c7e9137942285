//! Diskew polynomial rings `D<x, y; σ, τ, b, ρ>` with `xd = σ(d)x`, `yd = τ(d)y`,
//! `xy - ρ yx = b`, their normal form on the basis `y^i x^j`, and the passage to a
//! GWA over `𝒟 = D[h; τσ]` when `ρ` is a unit.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spin::RwLock;

use crate::endo::RingEndo;
use crate::error::{AlgebraError, Result};
use crate::field::FieldElem;
use crate::gwa::{normality_check, verify_gwa_data, Gwa, GwaData};
use crate::linsolve;
use crate::report::{Status, ValidationReport};
use crate::ring::{add_term, single, DprMap, Ring, RingElem, RingKind};
use crate::sample::{random_elem, SampleParams};
use crate::univariate::UniPoly;

/// The defining data of a DPR.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DprData {
    pub base: Ring,
    pub sigma: RingEndo,
    pub tau: RingEndo,
    pub b: RingElem,
    pub rho: RingElem,
    pub rho_inverse: Option<RingElem>,
}

impl DprData {
    pub fn new(base: &Ring, sigma: &RingEndo, tau: &RingEndo, b: &RingElem, rho: &RingElem) -> Result<DprData> {
        if sigma.ring() != base || tau.ring() != base {
            return Err(AlgebraError::HandleMismatch);
        }
        let rho = base.lift(rho)?;
        let rho_inverse = rho.try_inverse().filter(|r| (&rho * r).is_one() && (r * &rho).is_one());
        Ok(DprData { base: base.clone(), sigma: sigma.clone(), tau: tau.clone(), b: base.lift(b)?, rho, rho_inverse })
    }

    /// `ν = τσ`.
    pub fn nu(&self) -> RingEndo {
        self.tau.compose_unchecked(&self.sigma)
    }

    fn rho_inv(&self) -> Result<&RingElem> {
        self.rho_inverse.as_ref().ok_or(AlgebraError::RhoNotUnit)
    }
}

pub(crate) struct DprRing {
    pub(crate) data: DprData,
    pub(crate) x_name: String,
    pub(crate) y_name: String,
    /// `x y^k` in normal form, index `k`.
    xy: RwLock<Vec<DprMap>>,
}

impl DprRing {
    pub(crate) fn same_as(&self, o: &DprRing) -> bool {
        self.data == o.data && self.x_name == o.x_name && self.y_name == o.y_name
    }

    fn left_mul_y(&self, m: &DprMap) -> DprMap {
        m.iter().map(|(&(i, j), e)| ((i + 1, j), self.data.tau.apply(e))).collect()
    }

    fn xy_power(&self, k: u32) -> DprMap {
        {
            let r = self.xy.read();
            if (k as usize) < r.len() {
                return r[k as usize].clone();
            }
        }
        let mut cur = {
            let r = self.xy.read();
            r.len()
        };
        while cur <= k as usize {
            let prev = if cur == 0 { None } else { Some(self.xy.read()[cur - 1].clone()) };
            let next = match prev {
                None => single((0, 1), self.data.base.one()),
                Some(p) => {
                    // x y^k = rho y (x y^{k-1}) + b y^{k-1}
                    let mut out: DprMap =
                        self.left_mul_y(&p).into_iter().map(|(key, e)| (key, &self.data.rho * &e)).collect();
                    out.retain(|_, v| !v.is_zero());
                    add_term(&mut out, (cur as u32 - 1, 0), self.data.b.clone());
                    out
                }
            };
            let mut w = self.xy.write();
            if w.len() == cur {
                w.push(next);
            }
            cur = w.len();
        }
        self.xy.read()[k as usize].clone()
    }

    fn left_mul_x(&self, m: &DprMap) -> DprMap {
        let mut out = BTreeMap::new();
        for (&(k, l), e) in m {
            let se = self.data.sigma.apply(e);
            for (&(i, j), f) in &self.xy_power(k) {
                add_term(&mut out, (i, j + l), &se * f);
            }
        }
        out
    }

    pub(crate) fn mul_maps(&self, a: &DprMap, b: &DprMap) -> DprMap {
        let maxj = a.keys().map(|k| k.1).max().unwrap_or(0);
        let mut xb = vec![b.clone()];
        for j in 1..=maxj as usize {
            let n = self.left_mul_x(&xb[j - 1]);
            xb.push(n);
        }
        let mut out = BTreeMap::new();
        for (&(i, j), c) in a {
            let mut w = xb[j as usize].clone();
            for _ in 0..i {
                w = self.left_mul_y(&w);
            }
            for (key, e) in w {
                add_term(&mut out, key, c * &e);
            }
        }
        out
    }
}

/// Handle to a DPR ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dpr(Ring);

impl Dpr {
    pub fn new(data: &DprData, x_name: &str, y_name: &str) -> Result<Dpr> {
        let mut names = data.base.gen_names().to_vec();
        names.push(x_name.to_string());
        names.push(y_name.to_string());
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(AlgebraError::UnsupportedRing(format!("duplicate generator name '{n}'")));
            }
        }
        let kind = RingKind::Dpr(DprRing {
            data: data.clone(),
            x_name: x_name.to_string(),
            y_name: y_name.to_string(),
            xy: RwLock::new(Vec::new()),
        });
        Ok(Dpr(Ring::from_kind(data.base.field(), names, kind)))
    }

    pub fn from_ring(ring: &Ring) -> Option<Dpr> {
        match &ring.0.kind {
            RingKind::Dpr(_) => Some(Dpr(ring.clone())),
            _ => None,
        }
    }

    fn inner(&self) -> &DprRing {
        match &self.0 .0.kind {
            RingKind::Dpr(d) => d,
            _ => unreachable!(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.0
    }

    pub fn data(&self) -> &DprData {
        &self.inner().data
    }

    pub fn base(&self) -> &Ring {
        &self.inner().data.base
    }

    pub fn x_name(&self) -> &str {
        &self.inner().x_name
    }

    pub fn y_name(&self) -> &str {
        &self.inner().y_name
    }

    pub fn x(&self) -> RingElem {
        self.monomial(0, 1, self.base().one())
    }

    pub fn y(&self) -> RingElem {
        self.monomial(1, 0, self.base().one())
    }

    /// `c y^i x^j`.
    pub fn monomial(&self, i: u32, j: u32, c: RingElem) -> RingElem {
        RingElem::from_dpr_coeffs(&self.0, [((i, j), c)]).expect("coefficient in the base ring")
    }

    pub fn mul(&self, u: &RingElem, v: &RingElem) -> Result<RingElem> {
        if u.ring() != &self.0 || v.ring() != &self.0 {
            return Err(AlgebraError::AlgebraMismatch);
        }
        Ok(u * v)
    }

    /// The GWA `𝒟[x, y; σ, τ, h]` isomorphic to this ring; `h` names the new variable of `𝒟`.
    pub fn to_gwa(&self, h_name: &str) -> Result<GwaImage> {
        let d = self.data();
        let rho_inv = d.rho_inv()?.clone();
        let nu = d.nu();
        let dcal = Ring::skew(&d.base, h_name, &nu)?;
        let h = dcal.generator(h_name).unwrap();
        let nb = d.base.ngens();
        let lift = |e: &RingElem| dcal.embed_base(e);
        let mut s_img: Vec<RingElem> = d.sigma.images().iter().map(lift).collect();
        s_img.push(&(&lift(&d.rho) * &h) + &lift(&d.b));
        let mut t_img: Vec<RingElem> = d.tau.images().iter().map(lift).collect();
        t_img.push(&lift(&d.tau.apply(&rho_inv)) * &(&h - &lift(&d.tau.apply(&d.b))));
        debug_assert_eq!(s_img.len(), nb + 1);
        let sigma = RingEndo::new(&dcal, s_img)?;
        let tau = RingEndo::new(&dcal, t_img)?;
        let gdata = GwaData::new(&dcal, &sigma, &tau, &h)?;
        let gwa = Gwa::new(&gdata, self.x_name(), self.y_name())?;
        let mut report = ValidationReport::new();
        let tsh = tau.apply(&sigma.apply(&h));
        if tsh == h {
            report.pass("tau_sigma_h");
        } else {
            report.fail("tau_sigma_h", format!("tau(sigma(h)) = {tsh}"));
        }
        let sth = sigma.apply(&tau.apply(&h));
        let expect = &lift(&(&d.rho * &nu.apply(&rho_inv))) * &h;
        if sth == expect {
            report.pass("sigma_tau_h");
        } else {
            report.fail("sigma_tau_h", format!("sigma(tau(h)) = {sth} != {expect}"));
        }
        report.extend(verify_gwa_data(&gdata));
        Ok(GwaImage { dpr: self.clone(), dcal, gwa, h_name: h_name.to_string(), report })
    }

    /// `(a_i, b_i)` with `σ^i(h) = a_i h + b_i`.
    pub fn sigma_power_coeffs(&self, i: u64) -> Vec<(RingElem, RingElem)> {
        let d = self.data();
        let mut out = Vec::new();
        let (mut a, mut b) = (d.rho.clone(), d.b.clone());
        for _ in 0..i {
            out.push((a.clone(), b.clone()));
            let sa = d.sigma.apply(&a);
            b = &(&sa * &d.b) + &d.sigma.apply(&b);
            a = &sa * &d.rho;
        }
        out
    }

    /// `(a'_i, b'_i)` with `τ^i(h) = a'_i h + b'_i`.
    pub fn tau_power_coeffs(&self, i: u64) -> Result<Vec<(RingElem, RingElem)>> {
        let d = self.data();
        let ri = d.rho_inv()?;
        let tri = d.tau.apply(ri);
        let trib = d.tau.apply(&(ri * &d.b));
        let mut out = Vec::new();
        let (mut a, mut b) = (tri.clone(), trib.neg_elem());
        for _ in 0..i {
            out.push((a.clone(), b.clone()));
            let ta = d.tau.apply(&a);
            b = &d.tau.apply(&b) - &(&ta * &trib);
            a = &ta * &tri;
        }
        Ok(out)
    }

    /// `ρ ν(ρ) ⋯ ν^{n-1}(ρ)`.
    pub fn rho_nu(&self, n: u64) -> RingElem {
        rho_nu(self.data(), n)
    }

    /// `ν(β) = β`, `βd = ν(d)β` and `hβ = βh` for `β = ρ^{-1} b`.
    pub fn beta_invariants(&self) -> Result<ValidationReport> {
        let d = self.data();
        let ri = d.rho_inv()?;
        let mut rep = ValidationReport::new();
        if d.b.is_zero() {
            for n in ["nu_beta", "beta_normal", "h_beta_commute"] {
                rep.push(n, Status::Skipped, Some("b = 0".into()));
            }
            return Ok(rep);
        }
        let beta = ri * &d.b;
        let nu = d.nu();
        let nb = nu.apply(&beta);
        if nb == beta {
            rep.pass("nu_beta");
        } else {
            rep.fail("nu_beta", format!("nu(beta) = {nb} != {beta}"));
        }
        normality_check(&mut rep, "beta_normal", &d.base, &beta, &nu, "beta", "nu(d)");
        let dcal = Ring::skew(&d.base, "h", &nu)?;
        let h = dcal.generator("h").unwrap();
        let bl = dcal.embed_base(&beta);
        if &h * &bl == &bl * &h {
            rep.pass("h_beta_commute");
        } else {
            rep.fail("h_beta_commute", format!("h*beta = {} != beta*h", &h * &bl));
        }
        Ok(rep)
    }

    /// Checks `στ(d)ρ = ρτσ(d)` and `στ(d)b = bd` on generators and sampled elements.
    pub fn verify(&self) -> ValidationReport {
        verify_dpr_data(self.data())
    }
}

pub(crate) fn rho_nu(d: &DprData, n: u64) -> RingElem {
    let nu = d.nu();
    let mut acc = d.base.one();
    let mut cur = d.rho.clone();
    for _ in 0..n {
        acc = &acc * &cur;
        cur = nu.apply(&cur);
    }
    acc
}

pub fn verify_dpr_data(d: &DprData) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let st = d.sigma.compose_unchecked(&d.tau);
    let ts = d.nu();
    let mut rng = ChaCha8Rng::seed_from_u64(0xd1);
    let mut samples: Vec<(String, RingElem)> =
        d.base.gen_names().iter().cloned().zip(d.base.generators()).collect();
    for _ in 0..20 {
        let e = random_elem(&d.base, &mut rng, &SampleParams::default());
        samples.push((e.to_string(), e));
    }
    let rho_fail = samples.iter().find_map(|(n, g)| {
        let lhs = &st.apply(g) * &d.rho;
        let rhs = &d.rho * &ts.apply(g);
        (lhs != rhs).then(|| format!("d = {n}: sigma(tau(d))*rho = {lhs} != rho*tau(sigma(d)) = {rhs}"))
    });
    match rho_fail {
        None => rep.pass("sigma_tau_rho"),
        Some(w) => rep.fail("sigma_tau_rho", w),
    }
    let b_fail = samples.iter().find_map(|(n, g)| {
        let lhs = &st.apply(g) * &d.b;
        let rhs = &d.b * g;
        (lhs != rhs).then(|| format!("d = {n}: sigma(tau(d))*b = {lhs} != b*d = {rhs}"))
    });
    match b_fail {
        None => rep.pass("sigma_tau_b"),
        Some(w) => rep.fail("sigma_tau_b", w),
    }
    rep
}

/// A DPR together with its GWA presentation over `𝒟 = D[h; τσ]`.
#[derive(Clone, Debug)]
pub struct GwaImage {
    pub dpr: Dpr,
    pub dcal: Ring,
    pub gwa: Gwa,
    pub h_name: String,
    /// `τσ(h) = h`, `στ(h) = ρ τσ(ρ^{-1}) h` and the GWA data conditions.
    pub report: ValidationReport,
}

impl GwaImage {
    pub fn h(&self) -> RingElem {
        self.dcal.generator(&self.h_name).unwrap()
    }

    /// `d y^i x^j -> d (-i, j) v_{j-i}`.
    pub fn translate(&self, u: &RingElem) -> Result<RingElem> {
        if u.ring() != self.dpr.ring() {
            return Err(AlgebraError::AlgebraMismatch);
        }
        let mut out = self.gwa.ring().zero();
        for (&(i, j), d) in u.dpr_coeffs().unwrap() {
            let c = &self.dcal.embed_base(d) * &self.gwa.structure_constant(-(i as i64), j as i64);
            out = &out + &self.gwa.monomial(j as i64 - i as i64, c);
        }
        Ok(out)
    }

    /// Inverse of [`translate`](Self::translate): `h -> yx`.
    pub fn translate_back(&self, v: &RingElem) -> Result<RingElem> {
        if v.ring() != self.gwa.ring() {
            return Err(AlgebraError::AlgebraMismatch);
        }
        let e = &self.dpr;
        let yx = &e.y() * &e.x();
        let mut out = e.ring().zero();
        for (&k, c) in v.gwa_coeffs().unwrap() {
            let basis = if k >= 0 { e.x().pow(k as u32) } else { e.y().pow((-k) as u32) };
            for (&l, dl) in c.skew_coeffs().unwrap() {
                let t = &(&e.ring().embed_base(dl) * &yx.pow(l)) * &basis;
                out = &out + &t;
            }
        }
        Ok(out)
    }

    /// The symmetric presentation `𝒟[y, x; τ, σ, σ(h)]`.
    pub fn symmetric(&self) -> Result<Gwa> {
        self.gwa.symmetric()
    }

    /// The extended `σ` and `τ` on `𝒟`.
    pub fn sigma(&self) -> &RingEndo {
        &self.gwa.data().sigma
    }

    pub fn tau(&self) -> &RingEndo {
        &self.gwa.data().tau
    }
}

/// Multiplies `samples` random pairs on both sides of the isomorphism and compares.
pub fn roundtrip_check(dpr: &Dpr, samples: usize) -> Result<bool> {
    let img = dpr.to_gwa("h")?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x2a11);
    let params = SampleParams { terms: 3, degree: 2, coeff: 3, support: 2 };
    for _ in 0..samples {
        let u = random_elem(dpr.ring(), &mut rng, &params);
        let v = random_elem(dpr.ring(), &mut rng, &params);
        let tu = img.translate(&u)?;
        let tv = img.translate(&v)?;
        if img.translate(&(&u * &v))? != &tu * &tv {
            return Ok(false);
        }
        if img.translate_back(&tu)? != u {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Base rings and maps handled by the linear solvers: `K` or `K[H]`, `σ` affine, `ρ ∈ K^*`.
struct Family {
    uni: bool,
    u: FieldElem,
    c: FieldElem,
    rho: FieldElem,
}

fn family(d: &DprData) -> Result<Family> {
    let vars = d
        .base
        .poly_vars()
        .ok_or_else(|| AlgebraError::UnsupportedFamily(format!("base ring {} is not K or K[H]", d.base.describe())))?;
    if vars.len() > 1 || d.base.is_laurent() {
        return Err(AlgebraError::UnsupportedFamily(format!("base ring {} is not K or K[H]", d.base.describe())));
    }
    let rho = d
        .rho
        .constant_value()
        .filter(|r| !r.is_zero())
        .ok_or_else(|| AlgebraError::UnsupportedFamily("rho is not a nonzero constant".into()))?;
    let f = d.base.field();
    let (u, c) = if vars.len() == 1 {
        d.sigma.affine_form(0).ok_or_else(|| AlgebraError::UnsupportedFamily("sigma is not affine".into()))?
    } else {
        (f.one(), f.zero())
    };
    Ok(Family { uni: vars.len() == 1, u, c, rho })
}

fn uni(e: &RingElem) -> UniPoly {
    UniPoly::from_elem(e).expect("univariate family")
}

/// `Σ coeffs[k] H^k`, as columns of the linear map `unknown -> images`, flattened to coefficient rows.
struct LinSystem {
    field: crate::Field,
    cols: Vec<Vec<UniPoly>>,
    rhs: Vec<UniPoly>,
}

impl LinSystem {
    fn solve(&self) -> Option<Vec<FieldElem>> {
        let neq = self.rhs.len();
        let mut width = vec![0usize; neq];
        for col in &self.cols {
            for (e, p) in col.iter().enumerate() {
                width[e] = width[e].max(p.coeffs().len());
            }
        }
        for (e, p) in self.rhs.iter().enumerate() {
            width[e] = width[e].max(p.coeffs().len());
        }
        let mut rows = Vec::new();
        let mut b = Vec::new();
        for e in 0..neq {
            for k in 0..width[e] {
                rows.push(self.cols.iter().map(|col| col[e].coeff(k)).collect::<Vec<_>>());
                b.push(self.rhs[e].coeff(k));
            }
        }
        linsolve::solve(self.field, &rows, &b, self.cols.len())
    }
}

/// Solves `ρα - σ(α) = b` with `ν(α) = α` and `αd = ν(d)α`, returning a minimal-degree solution.
pub fn alpha_solver(d: &DprData) -> Result<Option<RingElem>> {
    d.rho_inv()?;
    let fam = family(d)?;
    let f = d.base.field();
    if !d.nu().is_identity() {
        // in a commutative domain αd = ν(d)α forces α = 0
        return Ok(if d.b.is_zero() { Some(d.base.zero()) } else { None });
    }
    if !fam.uni {
        let bc = d.b.constant_value().unwrap();
        let den = fam.rho.sub(&f.one());
        return Ok(if den.is_zero() {
            bc.is_zero().then(|| d.base.zero())
        } else {
            Some(d.base.constant(bc.div(&den)?))
        });
    }
    let bp = uni(&d.b);
    let top = bp.degree().unwrap_or(0) + 2;
    let rho = UniPoly::constant(fam.rho.clone());
    for deg in 0..=top {
        let cols: Vec<Vec<UniPoly>> = (0..=deg)
            .map(|k| {
                let m = UniPoly::x(f).pow(k as u32);
                vec![rho.mul(&m).sub(&m.compose_affine(&fam.u, &fam.c))]
            })
            .collect();
        let sys = LinSystem { field: f, cols, rhs: vec![bp.clone()] };
        if let Some(sol) = sys.solve() {
            let alpha = UniPoly::new(f, sol).to_elem(&d.base)?;
            return Ok(Some(alpha));
        }
    }
    Ok(None)
}

/// The normal element `C = h + α` and the identities checked for it.
#[derive(Clone, Debug)]
pub struct NormalElement {
    pub alpha: RingElem,
    /// `C` in the GWA presentation (degree zero, coefficient in `𝒟`).
    pub c_gwa: RingElem,
    /// `C` written in the DPR.
    pub c_dpr: RingElem,
    pub central: bool,
    pub report: ValidationReport,
}

pub fn normal_element_from_alpha(dpr: &Dpr, alpha: &RingElem) -> Result<NormalElement> {
    let d = dpr.data();
    let ri = d.rho_inv()?.clone();
    let alpha = d.base.lift(alpha)?;
    let nu = d.nu();
    let lhs = &(&d.rho * &alpha) - &d.sigma.apply(&alpha);
    if lhs != d.b {
        return Err(AlgebraError::AlphaConditionsFail(format!("rho*alpha - sigma(alpha) = {lhs} != b = {}", d.b)));
    }
    if nu.apply(&alpha) != alpha {
        return Err(AlgebraError::AlphaConditionsFail("nu(alpha) != alpha".into()));
    }
    for (g, n) in d.base.generators().iter().zip(d.base.gen_names()) {
        if &alpha * g != &nu.apply(g) * &alpha {
            return Err(AlgebraError::AlphaConditionsFail(format!("alpha*d != nu(d)*alpha for d = {n}")));
        }
    }
    let img = dpr.to_gwa("h")?;
    let gw = &img.gwa;
    let h = img.h();
    let cd = &h + &img.dcal.embed_base(&alpha);
    let c = gw.monomial(0, cd.clone());
    let (x, y) = (gw.x(), gw.y());
    let emb = |e: &RingElem| gw.embed(&img.dcal.embed_base(e)).unwrap();
    let mut rep = ValidationReport::new();
    let check = |rep: &mut ValidationReport, name: &str, l: RingElem, r: RingElem| {
        if l == r {
            rep.pass(name);
        } else {
            rep.fail(name, format!("{l} != {r}"));
        }
    };
    check(&mut rep, "x_c_eq_rho_c_x", &x * &c, &(&emb(&d.rho) * &c) * &x);
    check(&mut rep, "y_c_eq_tau_rho_inv_c_y", &y * &c, &(&emb(&d.tau.apply(&ri)) * &c) * &y);
    let hg = gw.monomial(0, h.clone());
    check(&mut rep, "h_c_commute", &hg * &c, &c * &hg);
    let c_dpr = img.translate_back(&c)?;
    let expected = &dpr.ring().embed_base(&ri) * &(&(&dpr.x() * &dpr.y()) + &dpr.ring().embed_base(&d.sigma.apply(&alpha)));
    check(&mut rep, "c_eq_rho_inv_xy_plus_sigma_alpha", c_dpr.clone(), expected);
    check(&mut rep, "tau_c_eq_tau_rho_inv_c", img.tau().apply(&cd), &img.dcal.embed_base(&d.tau.apply(&ri)) * &cd);
    check(&mut rep, "yx_congruent_minus_alpha", &(&y * &x) + &emb(&alpha), c.clone());
    let malpha = alpha.neg_elem();
    let quotient = GwaData::new(&d.base, &d.sigma, &d.tau, &malpha)?;
    let q = verify_gwa_data(&quotient);
    if q.all_pass() {
        rep.pass("quotient_data");
    } else {
        let w = q.first_failure().map(|c| c.witness.clone().unwrap_or_default()).unwrap_or_default();
        rep.fail("quotient_data", w);
    }
    // C has h-degree one in the domain 𝒟, so it is not a unit
    if img.dcal.is_domain().is_true() {
        rep.pass("c_not_unit");
    } else {
        rep.push("c_not_unit", Status::Unknown, None);
    }
    let central = d.rho.is_one() && nu.is_identity();
    if central {
        check(&mut rep, "central_x", &x * &c, &c * &x);
        check(&mut rep, "central_y", &y * &c, &c * &y);
        for (g, n) in d.base.generators().iter().zip(d.base.gen_names()) {
            let ge = emb(g);
            if &ge * &c != &c * &ge {
                rep.fail("central_base", format!("d = {n}"));
            }
        }
        if rep.get("central_base").is_none() {
            rep.pass("central_base");
        }
    }
    Ok(NormalElement { alpha, c_gwa: c, c_dpr, central, report: rep })
}

/// A solution `p' = h^{p^n} + Σ α_i h^{p^i} + α` of the characteristic-p system.
#[derive(Clone, Debug)]
pub struct CharpSolution {
    pub n: u32,
    pub alpha: RingElem,
    pub alphas: Vec<RingElem>,
    /// `p'` in `𝒟`.
    pub element: RingElem,
    /// `σ(p') = ρ^ν_{p^n} p'` and `τ(p') = τ(ρ^ν_{p^n})^{-1} p'` hold in `𝒟`.
    pub verified: bool,
}

/// Searches `n = 0..=n_max` for a normal element of the characteristic-p shape.
pub fn charp_normal_search(dpr: &Dpr, n_max: u32) -> Result<Option<CharpSolution>> {
    let d = dpr.data();
    d.rho_inv()?;
    let p = d.base.characteristic();
    if p == 0 {
        return Err(AlgebraError::UnsupportedFamily("characteristic 0".into()));
    }
    let fam = family(d)?;
    if !d.nu().is_identity() {
        return Err(AlgebraError::UnsupportedFamily("nu is not the identity".into()));
    }
    let f = d.base.field();
    let bp = uni(&d.b);
    for n in 0..=n_max {
        let pn = p.checked_pow(n).ok_or_else(|| AlgebraError::TooLarge(format!("{p}^{n}")))?;
        let cap = if fam.uni { bp.degree().unwrap_or(0) as u64 * pn + 2 } else { 0 };
        if cap > 4096 {
            return Err(AlgebraError::TooLarge(format!("degree bound {cap}")));
        }
        let sig = |q: &UniPoly| if fam.uni { q.compose_affine(&fam.u, &fam.c) } else { q.clone() };
        let rho_pow = |e: u64| UniPoly::constant(fam.rho.pow(e as i64).unwrap());
        let bpow: Vec<UniPoly> = (0..n).map(|i| bp.pow(p.pow(i) as u32)).collect();
        // unknown slots: 0 = α, 1 + i = α_i; equations: 0 = main, 1 + i = α_i eigen-equation
        let neq = 1 + n as usize;
        let mut cols = Vec::new();
        for slot in 0..=n as usize {
            for k in 0..=cap {
                let m = UniPoly::x(f).pow(k as u32);
                let mut col = vec![UniPoly::zero(f); neq];
                if slot == 0 {
                    col[0] = rho_pow(pn).mul(&m).sub(&sig(&m));
                } else {
                    let i = slot - 1;
                    col[0] = UniPoly::zero(f).sub(&sig(&m).mul(&bpow[i]));
                    col[slot] = sig(&m).sub(&rho_pow(pn - p.pow(i as u32)).mul(&m));
                }
                cols.push(col);
            }
        }
        let mut rhs = vec![UniPoly::zero(f); neq];
        rhs[0] = bp.pow(pn as u32);
        let sys = LinSystem { field: f, cols, rhs };
        let Some(sol) = sys.solve() else { continue };
        let w = cap as usize + 1;
        let part = |slot: usize| UniPoly::new(f, sol[slot * w..(slot + 1) * w].to_vec()).to_elem(&d.base);
        let alpha = part(0)?;
        let alphas = (1..=n as usize).map(part).collect::<Result<Vec<_>>>()?;
        let img = dpr.to_gwa("h")?;
        let h = img.h();
        let mut el = &h.pow(pn as u32) + &img.dcal.embed_base(&alpha);
        for (i, ai) in alphas.iter().enumerate() {
            el = &el + &(&img.dcal.embed_base(ai) * &h.pow(p.pow(i as u32) as u32));
        }
        let rn = rho_nu(d, pn);
        let s_ok = img.sigma().apply(&el) == &img.dcal.embed_base(&rn) * &el;
        let trn_inv = d.tau.apply(&rn).try_inverse();
        let t_ok = trn_inv.map_or(false, |t| img.tau().apply(&el) == &img.dcal.embed_base(&t) * &el);
        return Ok(Some(CharpSolution { n, alpha, alphas, element: el, verified: s_ok && t_ok }));
    }
    Ok(None)
}

fn binomial(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// The residuals `ρ^ν_{n-j} d_j - σ(d_j) - C(n,j) b^{n-j} - Σ_{j<i<n} C(i,j) σ(d_i) b^{i-j}`.
pub fn normal_residuals(d: &DprData, coeffs: &[RingElem]) -> Result<Vec<RingElem>> {
    d.rho_inv()?;
    let n = coeffs.len() as u64;
    let f = d.base.field();
    let coeffs = coeffs.iter().map(|c| d.base.lift(c)).collect::<Result<Vec<_>>>()?;
    let bin = |a: u64, b: u64| d.base.constant(f.from_bigint(&binomial(a, b).into()));
    let mut out = Vec::new();
    for j in 0..n {
        let dj = &coeffs[j as usize];
        let mut r = &(&rho_nu(d, n - j) * dj) - &d.sigma.apply(dj);
        r = &r - &(&bin(n, j) * &d.b.pow((n - j) as u32));
        for i in j + 1..n {
            let t = &(&bin(i, j) * &d.sigma.apply(&coeffs[i as usize])) * &d.b.pow((i - j) as u32);
            r = &r - &t;
        }
        out.push(r);
    }
    Ok(out)
}
