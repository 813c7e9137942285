//! Ring endomorphisms given by generator images.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{AlgebraError, Result};
use crate::field::FieldElem;
use crate::ring::{Ring, RingElem, RingKind};
use crate::tri::Tri;

/// A homomorphism of a ring into itself, determined by where it sends each generator.
///
/// Construction checks that the images satisfy the defining relations of the ring,
/// so the homomorphic extension is well defined.
#[derive(Clone)]
pub struct RingEndo(Arc<EndoInner>);

struct EndoInner {
    ring: Ring,
    images: Vec<RingElem>,
    identity: bool,
    injective: Tri,
    surjective: Tri,
    inverse: Option<Vec<RingElem>>,
}

impl PartialEq for RingEndo {
    fn eq(&self, o: &RingEndo) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || (self.0.ring == o.0.ring && self.0.images == o.0.images)
    }
}

impl Eq for RingEndo {}

impl fmt::Debug for RingEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

impl fmt::Display for RingEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

impl RingEndo {
    /// Builds the endomorphism sending the `k`-th generator to `images[k]`.
    pub fn new(ring: &Ring, images: Vec<RingElem>) -> Result<RingEndo> {
        if images.len() != ring.ngens() {
            return Err(AlgebraError::InvalidEndo(format!(
                "expected {} generator images, got {}",
                ring.ngens(),
                images.len()
            )));
        }
        let images = images.iter().map(|e| ring.lift(e)).collect::<Result<Vec<_>>>()?;
        relations_hold(ring, &images, ring, false).map_err(AlgebraError::InvalidEndo)?;
        Ok(Self::build(ring, images))
    }

    /// Builds an endomorphism from `(generator name, image)` pairs; unnamed generators are fixed.
    pub fn from_named(ring: &Ring, pairs: &[(&str, RingElem)]) -> Result<RingEndo> {
        let mut images = ring.generators();
        for (name, img) in pairs {
            let k = ring
                .generator_index(name)
                .ok_or_else(|| AlgebraError::InvalidEndo(format!("unknown generator '{name}'")))?;
            images[k] = img.clone();
        }
        Self::new(ring, images)
    }

    pub fn identity(ring: &Ring) -> RingEndo {
        let g = ring.generators();
        RingEndo(Arc::new(EndoInner {
            ring: ring.clone(),
            inverse: Some(g.clone()),
            images: g,
            identity: true,
            injective: Tri::True,
            surjective: Tri::True,
        }))
    }

    fn build(ring: &Ring, images: Vec<RingElem>) -> RingEndo {
        let gens = ring.generators();
        if images == gens {
            return Self::identity(ring);
        }
        let inverse = inverse_candidate(ring, &images).filter(|inv| {
            relations_hold(ring, inv, ring, false).is_ok()
                && compose_images(ring, &images, inv) == gens
                && compose_images(ring, inv, &images) == gens
        });
        let injective = if inverse.is_some() { Tri::True } else { injectivity(ring, &images) };
        let surjective = if inverse.is_some() { Tri::True } else { Tri::Unknown };
        RingEndo(Arc::new(EndoInner { ring: ring.clone(), images, identity: false, injective, surjective, inverse }))
    }

    pub fn ring(&self) -> &Ring {
        &self.0.ring
    }

    pub fn images(&self) -> &[RingElem] {
        &self.0.images
    }

    pub fn image_of(&self, name: &str) -> Option<&RingElem> {
        self.0.ring.generator_index(name).map(|k| &self.0.images[k])
    }

    pub fn is_identity(&self) -> bool {
        self.0.identity
    }

    pub fn is_injective(&self) -> Tri {
        self.0.injective
    }

    pub fn is_surjective(&self) -> Tri {
        self.0.surjective
    }

    pub fn is_automorphism(&self) -> Tri {
        self.0.injective.and(self.0.surjective)
    }

    /// Applies the endomorphism; panics when `e` lives in another ring.
    pub fn apply(&self, e: &RingElem) -> RingElem {
        self.try_apply(e).expect("ring mismatch in endomorphism application")
    }

    pub fn try_apply(&self, e: &RingElem) -> Result<RingElem> {
        if e.ring() != &self.0.ring {
            return Err(AlgebraError::HandleMismatch);
        }
        if self.0.identity || e.constant_value().is_some() {
            return Ok(e.clone());
        }
        e.eval(&self.0.images, &self.0.ring)
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &RingEndo) -> Result<RingEndo> {
        if self.0.ring != g.0.ring {
            return Err(AlgebraError::HandleMismatch);
        }
        Ok(self.compose_unchecked(g))
    }

    pub(crate) fn compose_unchecked(&self, g: &RingEndo) -> RingEndo {
        if self.0.identity {
            return g.clone();
        }
        if g.0.identity {
            return self.clone();
        }
        Self::build(&self.0.ring, compose_images(&self.0.ring, &self.0.images, &g.0.images))
    }

    pub fn power(&self, mut n: u64) -> RingEndo {
        let mut acc = Self::identity(&self.0.ring);
        let mut b = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = b.compose_unchecked(&acc);
            }
            n >>= 1;
            if n > 0 {
                b = b.compose_unchecked(&b);
            }
        }
        acc
    }

    /// The inverse, when it was found by the affine/monomial family analysis.
    pub fn try_inverse(&self) -> Option<RingEndo> {
        let inv = self.0.inverse.clone()?;
        if self.0.identity {
            return Some(self.clone());
        }
        Some(Self::build(&self.0.ring, inv))
    }

    /// Whether `self^i` fixes every generator (commutative rings only).
    pub fn is_identity_power(&self, i: u64) -> Result<bool> {
        if !self.0.ring.is_commutative() {
            return Err(AlgebraError::NoncommutativeUnsupported);
        }
        Ok(self.power(i).is_identity())
    }

    /// Whether `ker(f^i)` is zero for every `i`; equivalent to injectivity of `f`.
    pub fn kernel_union_is_zero(&self) -> Tri {
        self.0.injective
    }

    /// For a generator whose image is `u*g + c` with field constants, returns `(u, c)`.
    pub fn affine_form(&self, k: usize) -> Option<(FieldElem, FieldElem)> {
        affine_of(&self.0.ring, k, &self.0.images[k])
    }

    /// The restriction to the base ring, when every base generator is sent into the base.
    pub fn restrict_to_base(&self) -> Option<RingEndo> {
        restrict_images(&self.0.ring, &self.0.images).map(|(b, imgs)| Self::build(&b, imgs))
    }

    /// Human-readable list of the generators that move.
    pub fn describe(&self) -> String {
        if self.0.identity {
            return "id".into();
        }
        let parts: Vec<String> = self
            .0
            .ring
            .gen_names()
            .iter()
            .zip(self.0.ring.generators())
            .zip(&self.0.images)
            .filter(|((_, g), img)| g != *img)
            .map(|((n, _), img)| format!("{n} -> {img}"))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

fn compose_images(ring: &Ring, f: &[RingElem], g: &[RingElem]) -> Vec<RingElem> {
    g.iter().map(|e| if e.constant_value().is_some() { e.clone() } else { e.eval(f, ring).expect("valid images") }).collect()
}

fn restrict_images(ring: &Ring, images: &[RingElem]) -> Option<(Ring, Vec<RingElem>)> {
    let base = ring.base()?.clone();
    let nb = base.ngens();
    let imgs = images[..nb].iter().map(|e| e.base_part()).collect::<Option<Vec<_>>>()?;
    Some((base, imgs))
}

fn affine_of(ring: &Ring, k: usize, img: &RingElem) -> Option<(FieldElem, FieldElem)> {
    let terms = img.poly_terms()?;
    let n = ring.ngens();
    let f = ring.field();
    let (mut u, mut c) = (f.zero(), f.zero());
    for (e, coef) in terms {
        if e.iter().all(|&x| x == 0) {
            c = coef.clone();
        } else if e.iter().enumerate().all(|(j, &x)| if j == k { x == 1 } else { x == 0 }) {
            u = coef.clone();
        } else {
            return None;
        }
    }
    let _ = n;
    if u.is_zero() {
        None
    } else {
        Some((u, c))
    }
}

fn inverse_candidate(ring: &Ring, images: &[RingElem]) -> Option<Vec<RingElem>> {
    let gens = ring.generators();
    match &ring.0.kind {
        RingKind::Poly(p) => {
            let mut inv = Vec::with_capacity(images.len());
            for (k, img) in images.iter().enumerate() {
                if let Some((u, c)) = affine_of(ring, k, img) {
                    if p.laurent && !c.is_zero() {
                        return None;
                    }
                    let ui = u.inv()?;
                    inv.push((&gens[k] - &ring.constant(c)).scale(&ui));
                    continue;
                }
                if !p.laurent {
                    return None;
                }
                // u * g^-1 is its own inverse shape: g -> u * g^-1
                let terms = img.poly_terms()?;
                if terms.len() != 1 {
                    return None;
                }
                let (e, u) = terms.iter().next().unwrap();
                let ok = e.iter().enumerate().all(|(j, &x)| if j == k { x == -1 } else { x == 0 });
                if !ok {
                    return None;
                }
                inv.push(img.clone());
                let _ = u;
            }
            Some(inv)
        }
        _ => {
            let (base, bimgs) = restrict_images(ring, images)?;
            let r = RingEndo::build(&base, bimgs);
            let rinv = r.try_inverse()?;
            let nb = base.ngens();
            let mut inv: Vec<RingElem> = rinv.images().iter().map(|e| ring.embed_base(e)).collect();
            match &ring.0.kind {
                RingKind::Skew(_) => {
                    let m = images[nb].skew_coeffs()?;
                    if m.keys().any(|&d| d > 1) {
                        return None;
                    }
                    let uu = m.get(&1)?;
                    let cc = m.get(&0).cloned().unwrap_or_else(|| base.zero());
                    let uinv = uu.try_inverse()?;
                    let coef = rinv.apply(&uinv);
                    let cst = rinv.apply(&(&uinv * &cc)).neg_elem();
                    let t = &gens[nb];
                    inv.push(&(&ring.embed_base(&coef) * t) + &ring.embed_base(&cst));
                }
                RingKind::Gwa(_) => {
                    for (idx, deg) in [(nb, 1i64), (nb + 1, -1i64)] {
                        let m = images[idx].gwa_coeffs()?;
                        if m.len() != 1 {
                            return None;
                        }
                        let u = m.get(&deg)?;
                        let coef = rinv.apply(&u.try_inverse()?);
                        inv.push(&ring.embed_base(&coef) * &gens[idx]);
                    }
                }
                RingKind::Dpr(_) => {
                    for (idx, key) in [(nb, (0u32, 1u32)), (nb + 1, (1, 0))] {
                        let m = images[idx].dpr_coeffs()?;
                        if m.len() != 1 {
                            return None;
                        }
                        let u = m.get(&key)?;
                        let coef = rinv.apply(&u.try_inverse()?);
                        inv.push(&ring.embed_base(&coef) * &gens[idx]);
                    }
                }
                RingKind::Poly(_) => unreachable!(),
            }
            Some(inv)
        }
    }
}

fn injectivity(ring: &Ring, images: &[RingElem]) -> Tri {
    // a generator sent to a constant c puts g - c in the kernel
    if images.iter().any(|e| e.constant_value().is_some()) {
        return Tri::False;
    }
    match &ring.0.kind {
        RingKind::Poly(_) => {
            if images.len() == 1 {
                return Tri::True;
            }
            match crate::poly::jacobian_det(ring, images) {
                Some(d) if !d.is_zero() => Tri::True,
                _ => Tri::Unknown,
            }
        }
        RingKind::Skew(_) => {
            let Some((base, bimgs)) = restrict_images(ring, images) else {
                return Tri::Unknown;
            };
            let r = RingEndo::build(&base, bimgs);
            let nb = base.ngens();
            let t_deg = images[nb].skew_coeffs().and_then(|m| m.keys().next_back().copied()).unwrap_or(0);
            if r.is_injective().is_true() && ring.is_domain().is_true() && t_deg >= 1 {
                Tri::True
            } else {
                Tri::Unknown
            }
        }
        _ => Tri::Unknown,
    }
}

/// Checks the defining relations of `src` under the generator assignment `images` (elements of `target`).
/// With `anti`, products are reversed.
pub(crate) fn relations_hold(src: &Ring, images: &[RingElem], target: &Ring, anti: bool) -> core::result::Result<(), String> {
    let prod = |a: &RingElem, b: &RingElem| if anti { b * a } else { a * b };
    let ev = |e: &RingElem| -> core::result::Result<RingElem, String> {
        let r = if anti { e.eval_anti(images, target) } else { e.eval(images, target) };
        r.map_err(|err| err.to_string())
    };
    let names = src.gen_names();
    match &src.0.kind {
        RingKind::Poly(p) => {
            if !target.is_commutative() {
                for i in 0..images.len() {
                    for j in i + 1..images.len() {
                        if &images[i] * &images[j] != &images[j] * &images[i] {
                            return Err(format!("images of {} and {} do not commute", names[i], names[j]));
                        }
                    }
                }
            }
            if p.laurent {
                for (k, img) in images.iter().enumerate() {
                    if img.try_inverse().is_none() {
                        return Err(format!("image of {} is not a unit", names[k]));
                    }
                }
            }
            Ok(())
        }
        RingKind::Skew(s) => {
            let nb = s.base.ngens();
            relations_hold(&s.base, &images[..nb], target, anti)?;
            let t = &images[nb];
            for (k, g) in s.base.generators().iter().enumerate() {
                let lhs = prod(t, &images[k]);
                let rhs = prod(&ev(&src.embed_base(&s.twist.apply(g)))?, t);
                if lhs != rhs {
                    return Err(format!("relation {}*{} fails", s.var, names[k]));
                }
            }
            Ok(())
        }
        RingKind::Gwa(g) => {
            let d = &g.data;
            let nb = d.base.ngens();
            relations_hold(&d.base, &images[..nb], target, anti)?;
            let (x, y) = (&images[nb], &images[nb + 1]);
            for (k, gen) in d.base.generators().iter().enumerate() {
                if prod(x, &images[k]) != prod(&ev(&src.embed_base(&d.sigma.apply(gen)))?, x) {
                    return Err(format!("relation {}*{} fails", g.x_name, names[k]));
                }
                if prod(y, &images[k]) != prod(&ev(&src.embed_base(&d.tau.apply(gen)))?, y) {
                    return Err(format!("relation {}*{} fails", g.y_name, names[k]));
                }
            }
            if prod(y, x) != ev(&src.embed_base(&d.a))? {
                return Err(format!("relation {}*{} = a fails", g.y_name, g.x_name));
            }
            if prod(x, y) != ev(&src.embed_base(&d.sigma.apply(&d.a)))? {
                return Err(format!("relation {}*{} = sigma(a) fails", g.x_name, g.y_name));
            }
            Ok(())
        }
        RingKind::Dpr(dp) => {
            let d = &dp.data;
            let nb = d.base.ngens();
            relations_hold(&d.base, &images[..nb], target, anti)?;
            let (x, y) = (&images[nb], &images[nb + 1]);
            for (k, gen) in d.base.generators().iter().enumerate() {
                if prod(x, &images[k]) != prod(&ev(&src.embed_base(&d.sigma.apply(gen)))?, x) {
                    return Err(format!("relation {}*{} fails", dp.x_name, names[k]));
                }
                if prod(y, &images[k]) != prod(&ev(&src.embed_base(&d.tau.apply(gen)))?, y) {
                    return Err(format!("relation {}*{} fails", dp.y_name, names[k]));
                }
            }
            let rho = ev(&src.embed_base(&d.rho))?;
            let lhs = &prod(x, y) - &prod(&prod(&rho, y), x);
            if lhs != ev(&src.embed_base(&d.b))? {
                return Err("relation xy - rho*yx = b fails".into());
            }
            Ok(())
        }
    }
}

/// The endomorphism `ω_a` with `a*d = ω_a(d)*a`, for a normal element `a` of `ring`.
pub fn omega_of_normal(ring: &Ring, a: &RingElem) -> Result<RingEndo> {
    let a = ring.lift(a)?;
    if a.is_zero() {
        return Err(AlgebraError::NotRecognizedNormalForm("0".into()));
    }
    if ring.is_commutative() {
        return Ok(RingEndo::identity(ring));
    }
    let mut images = Vec::new();
    for g in ring.generators() {
        let q = (&a * &g).right_div_exact(&a).ok_or_else(|| AlgebraError::NotRecognizedNormalForm(a.to_string()))?;
        images.push(q);
    }
    RingEndo::new(ring, images).map_err(|_| AlgebraError::NotRecognizedNormalForm(a.to_string()))
}
