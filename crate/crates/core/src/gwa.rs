//! Generalized Weyl algebras `D[x, y; σ, τ, a]`.
//!
//! Elements are stored as maps from degree to left coefficient on the basis
//! `v_i = x^i` (i > 0), `v_0 = 1`, `v_i = y^{-i}` (i < 0). Multiplication is
//! `(c v_i)(e v_j) = c σ_i(e) (i, j) v_{i+j}` where `σ_i = σ^i` for `i >= 0` and
//! `τ^{-i}` otherwise, so products never leave normal form.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spin::RwLock;

use crate::endo::{relations_hold, RingEndo};
use crate::error::{AlgebraError, Result};
use crate::report::{Status, ValidationReport};
use crate::ring::{add_term, GwaMap, PowerCache, Ring, RingElem, RingKind};
use crate::sample::{random_elem, SampleParams};
use crate::tri::Tri;
use crate::univariate::UniPoly;

/// The defining data of a GWA.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GwaData {
    pub base: Ring,
    pub sigma: RingEndo,
    pub tau: RingEndo,
    pub a: RingElem,
}

impl GwaData {
    pub fn new(base: &Ring, sigma: &RingEndo, tau: &RingEndo, a: &RingElem) -> Result<GwaData> {
        if sigma.ring() != base || tau.ring() != base {
            return Err(AlgebraError::HandleMismatch);
        }
        Ok(GwaData { base: base.clone(), sigma: sigma.clone(), tau: tau.clone(), a: base.lift(a)? })
    }

    /// Data of the presentation `D[y, x; τ, σ, σ(a)]`.
    pub fn symmetric(&self) -> GwaData {
        GwaData { base: self.base.clone(), sigma: self.tau.clone(), tau: self.sigma.clone(), a: self.sigma.apply(&self.a) }
    }
}

pub(crate) struct GwaRing {
    pub(crate) data: GwaData,
    pub(crate) x_name: String,
    pub(crate) y_name: String,
    sigma_pows: PowerCache,
    tau_pows: PowerCache,
    consts: RwLock<BTreeMap<(i64, i64), RingElem>>,
}

impl GwaRing {
    pub(crate) fn same_as(&self, o: &GwaRing) -> bool {
        self.data == o.data && self.x_name == o.x_name && self.y_name == o.y_name
    }

    /// `σ_i`.
    pub(crate) fn twist(&self, i: i64) -> RingEndo {
        if i >= 0 {
            self.sigma_pows.get(i as usize)
        } else {
            self.tau_pows.get(i.unsigned_abs() as usize)
        }
    }

    pub(crate) fn structure_constant(&self, n: i64, m: i64) -> RingElem {
        if let Some(c) = self.consts.read().get(&(n, m)) {
            return c.clone();
        }
        let d = &self.data;
        let mut acc = d.base.one();
        if n > 0 && m < 0 {
            let mm = -m;
            let lo = if n >= mm { n - mm + 1 } else { 1 };
            for k in (lo..=n).rev() {
                acc = &acc * &self.sigma_pows.get(k as usize).apply(&d.a);
            }
        } else if n < 0 && m > 0 {
            let nn = -n;
            let lo = if nn >= m { nn - m } else { 0 };
            for k in (lo..nn).rev() {
                acc = &acc * &self.tau_pows.get(k as usize).apply(&d.a);
            }
        }
        self.consts.write().insert((n, m), acc.clone());
        acc
    }

    pub(crate) fn mul_maps(&self, a: &GwaMap, b: &GwaMap) -> GwaMap {
        let mut out = BTreeMap::new();
        for (&i, c) in a {
            let tw = self.twist(i);
            for (&j, e) in b {
                let sc = self.structure_constant(i, j);
                let t = &(c * &tw.apply(e)) * &sc;
                add_term(&mut out, i + j, t);
            }
        }
        out
    }
}

/// Handle to a GWA ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gwa(Ring);

/// Token of a word in a GWA.
#[derive(Clone, Debug)]
pub enum WordToken {
    X,
    Y,
    Base(RingElem),
}

impl Gwa {
    /// Builds the ring; the data is not required to satisfy the GWA conditions (see [`verify_gwa_data`]).
    pub fn new(data: &GwaData, x_name: &str, y_name: &str) -> Result<Gwa> {
        let mut names = data.base.gen_names().to_vec();
        names.push(x_name.to_string());
        names.push(y_name.to_string());
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(AlgebraError::UnsupportedRing(format!("duplicate generator name '{n}'")));
            }
        }
        let kind = RingKind::Gwa(GwaRing {
            data: data.clone(),
            x_name: x_name.to_string(),
            y_name: y_name.to_string(),
            sigma_pows: PowerCache::new(&data.sigma),
            tau_pows: PowerCache::new(&data.tau),
            consts: RwLock::new(BTreeMap::new()),
        });
        Ok(Gwa(Ring::from_kind(data.base.field(), names, kind)))
    }

    pub fn from_ring(ring: &Ring) -> Option<Gwa> {
        match &ring.0.kind {
            RingKind::Gwa(_) => Some(Gwa(ring.clone())),
            _ => None,
        }
    }

    fn inner(&self) -> &GwaRing {
        match &self.0 .0.kind {
            RingKind::Gwa(g) => g,
            _ => unreachable!(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.0
    }

    pub fn data(&self) -> &GwaData {
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
        self.monomial(1, self.base().one())
    }

    pub fn y(&self) -> RingElem {
        self.monomial(-1, self.base().one())
    }

    /// `c v_i`.
    pub fn monomial(&self, i: i64, c: RingElem) -> RingElem {
        RingElem::from_gwa_coeffs(&self.0, [(i, c)]).expect("coefficient in the base ring")
    }

    pub fn embed(&self, d: &RingElem) -> Result<RingElem> {
        self.0.lift(d)
    }

    /// Coefficient of `v_i`.
    pub fn coeff(&self, u: &RingElem, i: i64) -> RingElem {
        u.gwa_coeffs().and_then(|m| m.get(&i).cloned()).unwrap_or_else(|| self.base().zero())
    }

    pub fn support(&self, u: &RingElem) -> Vec<i64> {
        u.gwa_coeffs().map(|m| m.keys().copied().collect()).unwrap_or_default()
    }

    /// `max - min` of the support; `None` for zero.
    pub fn length(&self, u: &RingElem) -> Option<i64> {
        let s = self.support(u);
        Some(s.last()? - s.first()?)
    }

    /// `σ_i` (σ^i for i >= 0, τ^{-i} for i < 0).
    pub fn twist(&self, i: i64) -> RingEndo {
        self.inner().twist(i)
    }

    /// `(n, m)` with `v_n v_m = (n, m) v_{n+m}`.
    pub fn structure_constant(&self, n: i64, m: i64) -> RingElem {
        self.inner().structure_constant(n, m)
    }

    pub fn mul(&self, u: &RingElem, v: &RingElem) -> Result<RingElem> {
        if u.ring() != &self.0 || v.ring() != &self.0 {
            return Err(AlgebraError::AlgebraMismatch);
        }
        Ok(u * v)
    }

    /// Left-to-right product of the tokens.
    pub fn word_to_element(&self, word: &[WordToken]) -> Result<RingElem> {
        let mut acc = self.0.one();
        for (k, t) in word.iter().enumerate() {
            let f = match t {
                WordToken::X => self.x(),
                WordToken::Y => self.y(),
                WordToken::Base(d) => {
                    let d = self
                        .base()
                        .lift(d)
                        .map_err(|_| AlgebraError::MalformedWord(format!("token {k} is not a base-ring element")))?;
                    self.0.embed_base(&d)
                }
            };
            acc = &acc * &f;
        }
        Ok(acc)
    }

    /// The GWA `D[y, x; τ, σ, σ(a)]`, with generator names swapped.
    pub fn symmetric(&self) -> Result<Gwa> {
        Gwa::new(&self.data().symmetric(), self.y_name(), self.x_name())
    }

    /// Image of `u` under the isomorphism onto the symmetric presentation (`v_i -> v'_{-i}`).
    pub fn symmetry(&self, u: &RingElem, target: &Gwa) -> Result<RingElem> {
        if u.ring() != &self.0 {
            return Err(AlgebraError::AlgebraMismatch);
        }
        if target.base() != self.base() {
            return Err(AlgebraError::AlgebraMismatch);
        }
        let m = u.gwa_coeffs().unwrap();
        RingElem::from_gwa_coeffs(target.ring(), m.iter().map(|(&i, c)| (-i, c.clone())))
    }

    /// D-generators of the degree `m` component of the two-sided ideal generated by `v_n`.
    pub fn ideal_component(&self, n: i64, m: i64) -> Result<Vec<RingElem>> {
        if n == 0 {
            return Err(AlgebraError::ZeroDegreeRequest);
        }
        let sc = |p, q| self.structure_constant(p, q);
        if n > 0 {
            if m >= n {
                return Ok(alloc::vec![self.base().one()]);
            }
            Ok((0..=(n - m)).map(|i| &sc(-i, n) * &sc(n - i, m - n + i)).collect())
        } else {
            let nn = -n;
            if m <= -nn {
                return Ok(alloc::vec![self.base().one()]);
            }
            Ok((0..=(nn + m)).map(|i| &sc(i, -nn) * &sc(-nn + i, m + nn - i)).collect())
        }
    }

    /// Whether `D a + D σ^i(a) = D` (univariate commutative D).
    pub fn powers_generate_unit_ideal(&self, i: u64) -> Result<bool> {
        let d = self.data();
        let a = univariate(&d.a)?;
        let s = univariate(&d.sigma.power(i).apply(&d.a))?;
        Ok(a.gcd(&s).is_unit())
    }

    pub fn regularity_report(&self) -> RegularityReport {
        regularity_report(self.data())
    }

    pub fn domain_check(&self) -> Tri {
        domain_check(self.data())
    }

    /// One step of the `I'` operator: `I + Σ_{i=1..N} (σ^i(I)(i,-i) + τ^i(I)(-i,i))`, as a single gcd generator.
    pub fn iprime_step(&self, ideal: &[RingElem], depth: u64) -> Result<Vec<RingElem>> {
        let d = self.data();
        let mut g = UniPoly::zero(d.base.field());
        for e in ideal {
            g = g.gcd(&univariate(&d.base.lift(e)?)?);
        }
        let gen = g.to_elem(&d.base).map_err(|_| AlgebraError::UnsupportedRing(d.base.describe()))?;
        let mut acc = g;
        for i in 1..=depth as i64 {
            let s = &self.twist(i).apply(&gen) * &self.structure_constant(i, -i);
            let t = &self.twist(-i).apply(&gen) * &self.structure_constant(-i, i);
            acc = acc.gcd(&univariate(&s)?).gcd(&univariate(&t)?);
        }
        Ok(alloc::vec![acc.to_elem(&d.base)?])
    }

    /// Extends a base involution to the anti-automorphism with `x* = y`, `y* = x`.
    pub fn star(&self, star: &Involution) -> Result<GwaStar> {
        if star.ring() != self.base() {
            return Err(AlgebraError::HandleMismatch);
        }
        let mut images: Vec<RingElem> = star.images.iter().map(|e| self.0.embed_base(e)).collect();
        images.push(self.y());
        images.push(self.x());
        relations_hold(&self.0, &images, &self.0, true).map_err(AlgebraError::StarNotInvolution)?;
        Ok(GwaStar { ring: self.0.clone(), images })
    }
}

fn univariate(e: &RingElem) -> Result<UniPoly> {
    UniPoly::from_elem(e).map_err(|_| AlgebraError::UnsupportedRing(e.ring().describe()))
}

/// Checks `τσ(a) = a`, `a d = τσ(d) a` and `σ(a) d = στ(d) σ(a)` on generators, plus a random tripwire.
pub fn verify_gwa_data(d: &GwaData) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let ts = d.tau.compose_unchecked(&d.sigma);
    let st = d.sigma.compose_unchecked(&d.tau);
    let ta = ts.apply(&d.a);
    if ta == d.a {
        rep.pass("tau_sigma_a");
    } else {
        rep.fail("tau_sigma_a", format!("tau(sigma(a)) = {ta} != {}", d.a));
    }
    let sa = d.sigma.apply(&d.a);
    normality_check(&mut rep, "a_normal", &d.base, &d.a, &ts, "a", "tau(sigma(d))");
    normality_check(&mut rep, "sigma_a_normal", &d.base, &sa, &st, "sigma(a)", "sigma(tau(d))");
    rep
}

/// Records whether `n d = phi(d) n` for all generators d and sampled elements.
pub(crate) fn normality_check(
    rep: &mut ValidationReport,
    name: &str,
    base: &Ring,
    n: &RingElem,
    phi: &RingEndo,
    n_label: &str,
    phi_label: &str,
) {
    for (g, gname) in base.generators().iter().zip(base.gen_names()) {
        let lhs = n * g;
        let rhs = &phi.apply(g) * n;
        if lhs != rhs {
            rep.fail(name, format!("d = {gname}: {n_label}*d = {lhs} but {phi_label}*{n_label} = {rhs}"));
            return;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..20 {
        let g = random_elem(base, &mut rng, &SampleParams::default());
        let lhs = n * &g;
        let rhs = &phi.apply(&g) * n;
        if lhs != rhs {
            rep.fail(name, format!("d = {g}: {n_label}*d = {lhs} but {phi_label}*{n_label} = {rhs}"));
            return;
        }
    }
    rep.pass(name);
}

/// Regularity of `x` and `y`. "Left regular" means no nonzero `u` with `u x = 0`,
/// "right regular" means no nonzero `u` with `x u = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegularityReport {
    pub x_left_regular: Tri,
    pub x_right_regular: Tri,
    pub y_left_regular: Tri,
    pub y_right_regular: Tri,
    pub x_regular: Tri,
    pub y_regular: Tri,
}

fn regular(e: &RingElem) -> Tri {
    match e.is_regular() {
        Ok(b) => Tri::from_bool(b),
        Err(_) => Tri::Unknown,
    }
}

/// `f^i(e)` regular for every `i >= start`.
fn orbit_regular(e: &RingElem, f: &RingEndo, start: u64) -> Tri {
    let mut cur = f.power(start).apply(e);
    let r = regular(&cur);
    if r.is_false() {
        return Tri::False;
    }
    if r.is_true() && f.is_injective().is_true() && e.ring().is_domain().is_true() {
        return Tri::True;
    }
    for _ in 0..8 {
        cur = f.apply(&cur);
        if cur.is_zero() {
            return Tri::False;
        }
    }
    Tri::Unknown
}

pub fn regularity_report(d: &GwaData) -> RegularityReport {
    let sa = d.sigma.apply(&d.a);
    let x_right = d.sigma.is_injective().and(regular(&d.a));
    let x_left = orbit_regular(&d.a, &d.tau, 0);
    let y_right = d.tau.is_injective().and(regular(&sa));
    let y_left = orbit_regular(&d.a, &d.sigma, 1);
    RegularityReport {
        x_left_regular: x_left,
        x_right_regular: x_right,
        y_left_regular: y_left,
        y_right_regular: y_right,
        x_regular: x_left.and(x_right),
        y_regular: y_left.and(y_right),
    }
}

/// The GWA is a domain iff `D` is a domain, `σ`, `τ` are injective and `a != 0`.
pub fn domain_check(d: &GwaData) -> Tri {
    if d.a.is_zero() {
        return Tri::False;
    }
    d.base.is_domain().and(d.sigma.is_injective()).and(d.tau.is_injective())
}

/// An anti-automorphism of order two of a base ring, given by generator images.
#[derive(Clone, Debug)]
pub struct Involution {
    ring: Ring,
    images: Vec<RingElem>,
}

impl Involution {
    pub fn new(ring: &Ring, images: Vec<RingElem>) -> Result<Involution> {
        if images.len() != ring.ngens() {
            return Err(AlgebraError::StarNotInvolution("wrong number of generator images".into()));
        }
        let images = images.iter().map(|e| ring.lift(e)).collect::<Result<Vec<_>>>()?;
        relations_hold(ring, &images, ring, true).map_err(AlgebraError::StarNotInvolution)?;
        let inv = Involution { ring: ring.clone(), images };
        for (g, n) in ring.generators().iter().zip(ring.gen_names()) {
            if inv.apply(&inv.apply(g)) != *g {
                return Err(AlgebraError::StarNotInvolution(format!("star(star({n})) != {n}")));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x57a2);
        for _ in 0..20 {
            let u = random_elem(ring, &mut rng, &SampleParams::default());
            let v = random_elem(ring, &mut rng, &SampleParams::default());
            if inv.apply(&(&u * &v)) != &inv.apply(&v) * &inv.apply(&u) {
                return Err(AlgebraError::StarNotInvolution(format!("not antimultiplicative on {u}, {v}")));
            }
        }
        Ok(inv)
    }

    /// The identity map, an involution of any commutative ring.
    pub fn trivial(ring: &Ring) -> Result<Involution> {
        Involution::new(ring, ring.generators())
    }

    pub fn from_named(ring: &Ring, pairs: &[(&str, RingElem)]) -> Result<Involution> {
        let mut images = ring.generators();
        for (name, img) in pairs {
            let k = ring
                .generator_index(name)
                .ok_or_else(|| AlgebraError::StarNotInvolution(format!("unknown generator '{name}'")))?;
            images[k] = img.clone();
        }
        Involution::new(ring, images)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn apply(&self, d: &RingElem) -> RingElem {
        d.eval_anti(&self.images, &self.ring).expect("valid involution images")
    }
}

/// Checks `σ * τ = *`, `τ * σ = *`, `a* = a` and `σ(a)* = σ(a)` on generators.
pub fn check_involution_conditions(d: &GwaData, star: &Involution) -> ValidationReport {
    let mut rep = ValidationReport::new();
    if star.ring() != &d.base {
        rep.push("ring", Status::Fail, Some("involution is defined on another ring".into()));
        return rep;
    }
    let gens = d.base.generators();
    let names = d.base.gen_names();
    let mut comp = |name: &str, outer: &RingEndo, inner: &RingEndo| {
        for (g, n) in gens.iter().zip(names) {
            let lhs = outer.apply(&star.apply(&inner.apply(g)));
            let rhs = star.apply(g);
            if lhs != rhs {
                rep.fail(name, format!("d = {n}: {lhs} != {rhs}"));
                return;
            }
        }
        rep.pass(name);
    };
    comp("sigma_star_tau", &d.sigma, &d.tau);
    comp("tau_star_sigma", &d.tau, &d.sigma);
    let a_star = star.apply(&d.a);
    if a_star == d.a {
        rep.pass("a_star");
    } else {
        rep.fail("a_star", format!("a* = {a_star} != {}", d.a));
    }
    let sa = d.sigma.apply(&d.a);
    let sa_star = star.apply(&sa);
    if sa_star == sa {
        rep.pass("sigma_a_star");
    } else {
        rep.fail("sigma_a_star", format!("sigma(a)* = {sa_star} != {sa}"));
    }
    rep
}

/// The extension of an involution of `D` to the whole GWA.
#[derive(Clone, Debug)]
pub struct GwaStar {
    ring: Ring,
    images: Vec<RingElem>,
}

impl GwaStar {
    pub fn apply(&self, u: &RingElem) -> Result<RingElem> {
        if u.ring() != &self.ring {
            return Err(AlgebraError::AlgebraMismatch);
        }
        u.eval_anti(&self.images, &self.ring)
    }
}
