//! Ring handles and their elements.
//!
//! A [`Ring`] is an immutable, shareable descriptor. Every [`RingElem`] carries the
//! handle of the ring it lives in, so mixing elements of different rings is caught.
//! Twisted rings (skew polynomial rings, GWAs, DPRs) keep coefficients on the left
//! of their basis monomials.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use spin::RwLock;

use crate::dpr::DprRing;
use crate::endo::RingEndo;
use crate::error::{AlgebraError, Result};
use crate::field::{Field, FieldElem};
use crate::gwa::GwaRing;
use crate::tri::Tri;

pub(crate) type PolyMap = BTreeMap<Vec<i64>, FieldElem>;
pub(crate) type SkewMap = BTreeMap<u32, RingElem>;
pub(crate) type GwaMap = BTreeMap<i64, RingElem>;
pub(crate) type DprMap = BTreeMap<(u32, u32), RingElem>;

/// Shared handle to a ring descriptor.
#[derive(Clone)]
pub struct Ring(pub(crate) Arc<RingInner>);

pub(crate) struct RingInner {
    pub(crate) field: Field,
    pub(crate) names: Vec<String>,
    pub(crate) kind: RingKind,
}

pub(crate) enum RingKind {
    Poly(PolyRing),
    Skew(SkewRing),
    Gwa(GwaRing),
    Dpr(DprRing),
}

pub(crate) struct PolyRing {
    pub(crate) vars: Vec<String>,
    pub(crate) laurent: bool,
}

pub(crate) struct SkewRing {
    pub(crate) base: Ring,
    pub(crate) var: String,
    pub(crate) twist: RingEndo,
    pub(crate) powers: PowerCache,
}

/// Memo of `f^0, f^1, ...` guarded by a reader-writer lock.
pub(crate) struct PowerCache(RwLock<Vec<RingEndo>>);

impl PowerCache {
    pub(crate) fn new(f: &RingEndo) -> PowerCache {
        PowerCache(RwLock::new(vec![RingEndo::identity(f.ring()), f.clone()]))
    }

    pub(crate) fn get(&self, k: usize) -> RingEndo {
        {
            let r = self.0.read();
            if k < r.len() {
                return r[k].clone();
            }
        }
        let (f, mut last, start) = {
            let r = self.0.read();
            (r[1].clone(), r[r.len() - 1].clone(), r.len())
        };
        let mut fresh = Vec::new();
        for _ in start..=k {
            last = f.compose_unchecked(&last);
            fresh.push(last.clone());
        }
        let mut w = self.0.write();
        for (idx, e) in fresh.into_iter().enumerate() {
            if start + idx >= w.len() {
                w.push(e);
            }
        }
        w[k].clone()
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Ring) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        let (a, b) = (&*self.0, &*other.0);
        if a.field != b.field || a.names != b.names {
            return false;
        }
        match (&a.kind, &b.kind) {
            (RingKind::Poly(p), RingKind::Poly(q)) => p.vars == q.vars && p.laurent == q.laurent,
            (RingKind::Skew(s), RingKind::Skew(t)) => s.base == t.base && s.var == t.var && s.twist == t.twist,
            (RingKind::Gwa(g), RingKind::Gwa(h)) => g.same_as(h),
            (RingKind::Dpr(d), RingKind::Dpr(e)) => d.same_as(e),
            _ => false,
        }
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

impl Ring {
    pub(crate) fn from_kind(field: Field, names: Vec<String>, kind: RingKind) -> Ring {
        Ring(Arc::new(RingInner { field, names, kind }))
    }

    /// Commutative polynomial ring `field[vars]`. An empty variable list gives the field itself.
    pub fn poly(field: Field, vars: &[&str]) -> Result<Ring> {
        Self::poly_ring(field, vars, false)
    }

    /// Laurent polynomial ring `field[vars, vars^-1]`.
    pub fn laurent(field: Field, vars: &[&str]) -> Result<Ring> {
        Self::poly_ring(field, vars, true)
    }

    fn poly_ring(field: Field, vars: &[&str], laurent: bool) -> Result<Ring> {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        check_names(&names)?;
        Ok(Ring::from_kind(field, names.clone(), RingKind::Poly(PolyRing { vars: names, laurent })))
    }

    /// Skew polynomial ring `base[var; twist]` with `var * d = twist(d) * var`.
    pub fn skew(base: &Ring, var: &str, twist: &RingEndo) -> Result<Ring> {
        if twist.ring() != base {
            return Err(AlgebraError::HandleMismatch);
        }
        let mut names = base.gen_names().to_vec();
        names.push(var.to_string());
        check_names(&names)?;
        Ok(Ring::from_kind(
            base.field(),
            names,
            RingKind::Skew(SkewRing {
                base: base.clone(),
                var: var.to_string(),
                twist: twist.clone(),
                powers: PowerCache::new(twist),
            }),
        ))
    }

    pub fn field(&self) -> Field {
        self.0.field
    }

    pub fn characteristic(&self) -> u64 {
        self.0.field.characteristic()
    }

    pub fn gen_names(&self) -> &[String] {
        &self.0.names
    }

    pub fn ngens(&self) -> usize {
        self.0.names.len()
    }

    /// The ring this one is built over, if any.
    pub fn base(&self) -> Option<&Ring> {
        match &self.0.kind {
            RingKind::Poly(_) => None,
            RingKind::Skew(s) => Some(&s.base),
            RingKind::Gwa(g) => Some(&g.data.base),
            RingKind::Dpr(d) => Some(&d.data.base),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match &self.0.kind {
            RingKind::Poly(p) if p.laurent => "laurent",
            RingKind::Poly(_) => "poly",
            RingKind::Skew(_) => "skew",
            RingKind::Gwa(_) => "gwa",
            RingKind::Dpr(_) => "dpr",
        }
    }

    pub fn is_laurent(&self) -> bool {
        matches!(&self.0.kind, RingKind::Poly(p) if p.laurent)
    }

    /// True when some ring in the tower is a Laurent ring.
    pub fn has_laurent(&self) -> bool {
        self.is_laurent() || self.base().map_or(false, |b| b.has_laurent())
    }

    /// Univariate variable count of a plain polynomial ring; `None` for other kinds.
    pub fn poly_vars(&self) -> Option<&[String]> {
        match &self.0.kind {
            RingKind::Poly(p) => Some(&p.vars),
            _ => None,
        }
    }

    /// The twist of a skew polynomial ring.
    pub fn skew_twist(&self) -> Option<&RingEndo> {
        match &self.0.kind {
            RingKind::Skew(s) => Some(&s.twist),
            _ => None,
        }
    }

    pub fn zero(&self) -> RingElem {
        let repr = match &self.0.kind {
            RingKind::Poly(_) => Repr::Poly(BTreeMap::new()),
            RingKind::Skew(_) => Repr::Skew(BTreeMap::new()),
            RingKind::Gwa(_) => Repr::Gwa(BTreeMap::new()),
            RingKind::Dpr(_) => Repr::Dpr(BTreeMap::new()),
        };
        RingElem { ring: self.clone(), repr }
    }

    pub fn one(&self) -> RingElem {
        self.constant(self.field().one())
    }

    pub fn int(&self, n: i64) -> RingElem {
        self.constant(self.field().from_i64(n))
    }

    /// Embeds a field constant.
    pub fn constant(&self, c: FieldElem) -> RingElem {
        if c.is_zero() {
            return self.zero();
        }
        let repr = match &self.0.kind {
            RingKind::Poly(p) => {
                let mut m = BTreeMap::new();
                m.insert(vec![0; p.vars.len()], c);
                Repr::Poly(m)
            }
            RingKind::Skew(s) => Repr::Skew(single(0, s.base.constant(c))),
            RingKind::Gwa(g) => Repr::Gwa(single(0, g.data.base.constant(c))),
            RingKind::Dpr(d) => Repr::Dpr(single((0, 0), d.data.base.constant(c))),
        };
        RingElem { ring: self.clone(), repr }
    }

    /// All generators in declaration order (base generators first for towers).
    pub fn generators(&self) -> Vec<RingElem> {
        match &self.0.kind {
            RingKind::Poly(p) => (0..p.vars.len())
                .map(|k| {
                    let mut e = vec![0; p.vars.len()];
                    e[k] = 1;
                    RingElem { ring: self.clone(), repr: Repr::Poly(single(e, self.field().one())) }
                })
                .collect(),
            RingKind::Skew(s) => {
                let mut g: Vec<RingElem> = s.base.generators().iter().map(|b| self.embed_base(b)).collect();
                g.push(RingElem { ring: self.clone(), repr: Repr::Skew(single(1, s.base.one())) });
                g
            }
            RingKind::Gwa(gw) => {
                let mut g: Vec<RingElem> = gw.data.base.generators().iter().map(|b| self.embed_base(b)).collect();
                g.push(RingElem { ring: self.clone(), repr: Repr::Gwa(single(1, gw.data.base.one())) });
                g.push(RingElem { ring: self.clone(), repr: Repr::Gwa(single(-1, gw.data.base.one())) });
                g
            }
            RingKind::Dpr(d) => {
                let mut g: Vec<RingElem> = d.data.base.generators().iter().map(|b| self.embed_base(b)).collect();
                g.push(RingElem { ring: self.clone(), repr: Repr::Dpr(single((0, 1), d.data.base.one())) });
                g.push(RingElem { ring: self.clone(), repr: Repr::Dpr(single((1, 0), d.data.base.one())) });
                g
            }
        }
    }

    pub fn generator(&self, name: &str) -> Option<RingElem> {
        let idx = self.0.names.iter().position(|n| n == name)?;
        Some(self.generators().swap_remove(idx))
    }

    /// Index of the generator called `name`.
    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    /// Places an element of the base ring in degree zero.
    pub(crate) fn embed_base(&self, b: &RingElem) -> RingElem {
        if b.is_zero() {
            return self.zero();
        }
        let repr = match &self.0.kind {
            RingKind::Poly(_) => panic!("polynomial rings have no base"),
            RingKind::Skew(_) => Repr::Skew(single(0, b.clone())),
            RingKind::Gwa(_) => Repr::Gwa(single(0, b.clone())),
            RingKind::Dpr(_) => Repr::Dpr(single((0, 0), b.clone())),
        };
        RingElem { ring: self.clone(), repr }
    }

    /// Maps an element of a ring lower in the tower (or a field constant) into this ring.
    pub fn lift(&self, e: &RingElem) -> Result<RingElem> {
        if e.ring == *self {
            return Ok(e.clone());
        }
        match &self.0.kind {
            RingKind::Poly(_) => match e.constant_value() {
                Some(c) if c.field() == self.field() && e.ring.kind_name() == "poly" && e.ring.ngens() == 0 => {
                    Ok(self.constant(c))
                }
                _ => Err(AlgebraError::HandleMismatch),
            },
            _ => {
                let base = self.base().expect("tower ring has a base");
                let b = base.lift(e)?;
                Ok(self.embed_base(&b))
            }
        }
    }

    pub fn is_commutative(&self) -> bool {
        match &self.0.kind {
            RingKind::Poly(_) => true,
            RingKind::Skew(s) => s.twist.is_identity() && s.base.is_commutative(),
            RingKind::Gwa(_) | RingKind::Dpr(_) => false,
        }
    }

    /// Whether the ring has no zero divisors, by structural analysis.
    pub fn is_domain(&self) -> Tri {
        match &self.0.kind {
            RingKind::Poly(_) => Tri::True,
            RingKind::Skew(s) => s.base.is_domain().and(s.twist.kernel_union_is_zero()),
            RingKind::Gwa(g) => crate::gwa::domain_check(&g.data),
            RingKind::Dpr(d) => {
                let dd = &d.data;
                dd.base
                    .is_domain()
                    .and(dd.sigma.kernel_union_is_zero())
                    .and(dd.tau.kernel_union_is_zero())
                    .and(Tri::from_bool(!dd.rho.is_zero()))
            }
        }
    }

    /// True when every unit is a nonzero field constant.
    pub fn units_are_scalars(&self) -> bool {
        match &self.0.kind {
            RingKind::Poly(p) => !p.laurent,
            RingKind::Skew(s) => s.base.units_are_scalars() && self.is_domain().is_true(),
            _ => false,
        }
    }

    /// Short human-readable description.
    pub fn describe(&self) -> String {
        match &self.0.kind {
            RingKind::Poly(p) => {
                if p.vars.is_empty() {
                    format!("{}", self.field())
                } else if p.laurent {
                    let v: Vec<String> = p.vars.iter().map(|v| format!("{v},{v}^-1")).collect();
                    format!("{}[{}]", self.field(), v.join(","))
                } else {
                    format!("{}[{}]", self.field(), p.vars.join(","))
                }
            }
            RingKind::Skew(s) => format!("{}[{}; {}]", s.base.describe(), s.var, s.twist.describe()),
            RingKind::Gwa(g) => format!(
                "{}[{},{}; sigma={}, tau={}, a={}]",
                g.data.base.describe(),
                g.x_name,
                g.y_name,
                g.data.sigma.describe(),
                g.data.tau.describe(),
                g.data.a
            ),
            RingKind::Dpr(d) => format!(
                "{}<{},{}; sigma={}, tau={}, b={}, rho={}>",
                d.data.base.describe(),
                d.x_name,
                d.y_name,
                d.data.sigma.describe(),
                d.data.tau.describe(),
                d.data.b,
                d.data.rho
            ),
        }
    }
}

fn check_names(names: &[String]) -> Result<()> {
    for (i, n) in names.iter().enumerate() {
        let ok = !n.is_empty()
            && n.chars().next().map_or(false, |c| c.is_ascii_alphabetic() || c == '_')
            && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(AlgebraError::UnsupportedRing(format!("invalid generator name '{n}'")));
        }
        if names[..i].contains(n) {
            return Err(AlgebraError::UnsupportedRing(format!("duplicate generator name '{n}'")));
        }
    }
    Ok(())
}

pub(crate) fn single<K: Ord, V>(k: K, v: V) -> BTreeMap<K, V> {
    let mut m = BTreeMap::new();
    m.insert(k, v);
    m
}

/// An element of some [`Ring`], in canonical form.
#[derive(Clone)]
pub struct RingElem {
    pub(crate) ring: Ring,
    pub(crate) repr: Repr,
}

#[derive(Clone, PartialEq)]
pub(crate) enum Repr {
    Poly(PolyMap),
    Skew(SkewMap),
    Gwa(GwaMap),
    Dpr(DprMap),
}

impl PartialEq for RingElem {
    fn eq(&self, other: &RingElem) -> bool {
        self.ring == other.ring && self.repr == other.repr
    }
}

impl Eq for RingElem {}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

pub(crate) trait Coef: Clone {
    fn c_is_zero(&self) -> bool;
    fn c_add(&self, o: &Self) -> Self;
    fn c_neg(&self) -> Self;
}

impl Coef for FieldElem {
    fn c_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn c_add(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn c_neg(&self) -> Self {
        self.neg()
    }
}

impl Coef for RingElem {
    fn c_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn c_add(&self, o: &Self) -> Self {
        self.add_unchecked(o)
    }
    fn c_neg(&self) -> Self {
        self.neg_elem()
    }
}

pub(crate) fn add_term<K: Ord, V: Coef>(m: &mut BTreeMap<K, V>, k: K, v: V) {
    use alloc::collections::btree_map::Entry;
    if v.c_is_zero() {
        return;
    }
    match m.entry(k) {
        Entry::Vacant(e) => {
            e.insert(v);
        }
        Entry::Occupied(mut e) => {
            let s = e.get().c_add(&v);
            if s.c_is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

fn map_add<K: Ord + Clone, V: Coef>(a: &BTreeMap<K, V>, b: &BTreeMap<K, V>) -> BTreeMap<K, V> {
    let mut out = a.clone();
    for (k, v) in b {
        add_term(&mut out, k.clone(), v.clone());
    }
    out
}

fn map_neg<K: Ord + Clone, V: Coef>(a: &BTreeMap<K, V>) -> BTreeMap<K, V> {
    a.iter().map(|(k, v)| (k.clone(), v.c_neg())).collect()
}

impl RingElem {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Poly(m) => m.is_empty(),
            Repr::Skew(m) => m.is_empty(),
            Repr::Gwa(m) => m.is_empty(),
            Repr::Dpr(m) => m.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().map_or(false, |c| c.is_one())
    }

    /// Number of top-level terms.
    pub fn num_terms(&self) -> usize {
        match &self.repr {
            Repr::Poly(m) => m.len(),
            Repr::Skew(m) => m.len(),
            Repr::Gwa(m) => m.len(),
            Repr::Dpr(m) => m.len(),
        }
    }

    /// The field value when the element is a constant.
    pub fn constant_value(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return Some(self.ring.field().zero());
        }
        match &self.repr {
            Repr::Poly(m) => {
                if m.len() == 1 {
                    let (e, c) = m.iter().next().unwrap();
                    if e.iter().all(|&x| x == 0) {
                        return Some(c.clone());
                    }
                }
                None
            }
            Repr::Skew(m) => only_key(m, &0)?.constant_value(),
            Repr::Gwa(m) => only_key(m, &0)?.constant_value(),
            Repr::Dpr(m) => only_key(m, &(0, 0))?.constant_value(),
        }
    }

    /// The degree-zero base element when the element lies in the base ring.
    pub fn base_part(&self) -> Option<RingElem> {
        let base = self.ring.base()?;
        if self.is_zero() {
            return Some(base.zero());
        }
        match &self.repr {
            Repr::Poly(_) => None,
            Repr::Skew(m) => only_key(m, &0).cloned(),
            Repr::Gwa(m) => only_key(m, &0).cloned(),
            Repr::Dpr(m) => only_key(m, &(0, 0)).cloned(),
        }
    }

    pub fn poly_terms(&self) -> Option<&PolyMap> {
        match &self.repr {
            Repr::Poly(m) => Some(m),
            _ => None,
        }
    }

    pub fn skew_coeffs(&self) -> Option<&BTreeMap<u32, RingElem>> {
        match &self.repr {
            Repr::Skew(m) => Some(m),
            _ => None,
        }
    }

    pub fn gwa_coeffs(&self) -> Option<&BTreeMap<i64, RingElem>> {
        match &self.repr {
            Repr::Gwa(m) => Some(m),
            _ => None,
        }
    }

    pub fn dpr_coeffs(&self) -> Option<&BTreeMap<(u32, u32), RingElem>> {
        match &self.repr {
            Repr::Dpr(m) => Some(m),
            _ => None,
        }
    }

    /// Builds a polynomial element from exponent vectors.
    pub fn from_poly_terms(ring: &Ring, terms: impl IntoIterator<Item = (Vec<i64>, FieldElem)>) -> Result<RingElem> {
        let p = match &ring.0.kind {
            RingKind::Poly(p) => p,
            _ => return Err(AlgebraError::HandleMismatch),
        };
        let mut m = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != p.vars.len() || (!p.laurent && e.iter().any(|&x| x < 0)) || c.field() != ring.field() {
                return Err(AlgebraError::HandleMismatch);
            }
            add_term(&mut m, e, c);
        }
        Ok(RingElem { ring: ring.clone(), repr: Repr::Poly(m) })
    }

    /// Builds a skew polynomial from `degree -> base coefficient`.
    pub fn from_skew_coeffs(ring: &Ring, terms: impl IntoIterator<Item = (u32, RingElem)>) -> Result<RingElem> {
        let base = match &ring.0.kind {
            RingKind::Skew(s) => &s.base,
            _ => return Err(AlgebraError::HandleMismatch),
        };
        let mut m = BTreeMap::new();
        for (k, c) in terms {
            add_term(&mut m, k, base.lift(&c)?);
        }
        Ok(RingElem { ring: ring.clone(), repr: Repr::Skew(m) })
    }

    /// Builds a GWA element from `degree -> left coefficient`.
    pub fn from_gwa_coeffs(ring: &Ring, terms: impl IntoIterator<Item = (i64, RingElem)>) -> Result<RingElem> {
        let base = match &ring.0.kind {
            RingKind::Gwa(g) => &g.data.base,
            _ => return Err(AlgebraError::HandleMismatch),
        };
        let mut m = BTreeMap::new();
        for (k, c) in terms {
            add_term(&mut m, k, base.lift(&c)?);
        }
        Ok(RingElem { ring: ring.clone(), repr: Repr::Gwa(m) })
    }

    /// Builds a DPR element from `(i, j) -> coefficient of y^i x^j`.
    pub fn from_dpr_coeffs(ring: &Ring, terms: impl IntoIterator<Item = ((u32, u32), RingElem)>) -> Result<RingElem> {
        let base = match &ring.0.kind {
            RingKind::Dpr(d) => &d.data.base,
            _ => return Err(AlgebraError::HandleMismatch),
        };
        let mut m = BTreeMap::new();
        for (k, c) in terms {
            add_term(&mut m, k, base.lift(&c)?);
        }
        Ok(RingElem { ring: ring.clone(), repr: Repr::Dpr(m) })
    }

    pub(crate) fn with_repr(&self, repr: Repr) -> RingElem {
        RingElem { ring: self.ring.clone(), repr }
    }

    pub fn checked_add(&self, o: &RingElem) -> Result<RingElem> {
        if self.ring != o.ring {
            return Err(AlgebraError::HandleMismatch);
        }
        Ok(self.add_unchecked(o))
    }

    pub fn checked_sub(&self, o: &RingElem) -> Result<RingElem> {
        if self.ring != o.ring {
            return Err(AlgebraError::HandleMismatch);
        }
        Ok(self.add_unchecked(&o.neg_elem()))
    }

    pub fn checked_mul(&self, o: &RingElem) -> Result<RingElem> {
        if self.ring != o.ring {
            return Err(AlgebraError::HandleMismatch);
        }
        Ok(self.mul_unchecked(o))
    }

    pub(crate) fn add_unchecked(&self, o: &RingElem) -> RingElem {
        let repr = match (&self.repr, &o.repr) {
            (Repr::Poly(a), Repr::Poly(b)) => Repr::Poly(map_add(a, b)),
            (Repr::Skew(a), Repr::Skew(b)) => Repr::Skew(map_add(a, b)),
            (Repr::Gwa(a), Repr::Gwa(b)) => Repr::Gwa(map_add(a, b)),
            (Repr::Dpr(a), Repr::Dpr(b)) => Repr::Dpr(map_add(a, b)),
            _ => panic!("ring mismatch"),
        };
        self.with_repr(repr)
    }

    pub(crate) fn neg_elem(&self) -> RingElem {
        let repr = match &self.repr {
            Repr::Poly(a) => Repr::Poly(map_neg(a)),
            Repr::Skew(a) => Repr::Skew(map_neg(a)),
            Repr::Gwa(a) => Repr::Gwa(map_neg(a)),
            Repr::Dpr(a) => Repr::Dpr(map_neg(a)),
        };
        self.with_repr(repr)
    }

    pub(crate) fn mul_unchecked(&self, o: &RingElem) -> RingElem {
        if self.is_zero() || o.is_zero() {
            return self.ring.zero();
        }
        if let Some(c) = self.constant_value() {
            return o.scale(&c);
        }
        if let Some(c) = o.constant_value() {
            // constants are central: the field is fixed by every twist
            return self.scale(&c);
        }
        let repr = match (&self.ring.0.kind, &self.repr, &o.repr) {
            (RingKind::Poly(_), Repr::Poly(a), Repr::Poly(b)) => {
                let mut out = BTreeMap::new();
                for (ea, ca) in a {
                    for (eb, cb) in b {
                        let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                        add_term(&mut out, e, ca.mul(cb));
                    }
                }
                Repr::Poly(out)
            }
            (RingKind::Skew(s), Repr::Skew(a), Repr::Skew(b)) => {
                let mut out = BTreeMap::new();
                for (&i, c) in a {
                    let nu = s.powers.get(i as usize);
                    for (&j, e) in b {
                        add_term(&mut out, i + j, c.mul_unchecked(&nu.apply(e)));
                    }
                }
                Repr::Skew(out)
            }
            (RingKind::Gwa(g), Repr::Gwa(a), Repr::Gwa(b)) => Repr::Gwa(g.mul_maps(a, b)),
            (RingKind::Dpr(d), Repr::Dpr(a), Repr::Dpr(b)) => Repr::Dpr(d.mul_maps(a, b)),
            _ => panic!("ring mismatch"),
        };
        self.with_repr(repr)
    }

    /// Multiplies every coefficient by a field constant.
    pub fn scale(&self, c: &FieldElem) -> RingElem {
        if c.is_zero() {
            return self.ring.zero();
        }
        if c.is_one() {
            return self.clone();
        }
        let repr = match &self.repr {
            Repr::Poly(a) => Repr::Poly(a.iter().map(|(k, v)| (k.clone(), v.mul(c))).collect()),
            Repr::Skew(a) => Repr::Skew(a.iter().map(|(k, v)| (*k, v.scale(c))).collect()),
            Repr::Gwa(a) => Repr::Gwa(a.iter().map(|(k, v)| (*k, v.scale(c))).collect()),
            Repr::Dpr(a) => Repr::Dpr(a.iter().map(|(k, v)| (*k, v.scale(c))).collect()),
        };
        self.with_repr(repr)
    }

    pub fn pow(&self, mut n: u32) -> RingElem {
        let mut acc = self.ring.one();
        let mut b = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_unchecked(&b);
            }
            n >>= 1;
            if n > 0 {
                b = b.mul_unchecked(&b);
            }
        }
        acc
    }

    /// Integer power; negative exponents require a unit.
    pub fn pow_i(&self, n: i64) -> Result<RingElem> {
        if n >= 0 {
            return Ok(self.pow(n as u32));
        }
        let inv = self.try_inverse().ok_or_else(|| AlgebraError::NotAUnit(self.to_string()))?;
        Ok(inv.pow(n.unsigned_abs() as u32))
    }

    /// Whether the element is invertible.
    ///
    /// Decided for polynomial and Laurent rings, and for skew polynomial rings over domains
    /// with injective twist. GWA and DPR handles only answer for units of the base ring.
    pub fn is_unit(&self) -> Result<bool> {
        match &self.ring.0.kind {
            RingKind::Poly(p) => {
                if p.laurent {
                    Ok(self.num_terms() == 1)
                } else {
                    Ok(self.constant_value().map_or(false, |c| !c.is_zero()))
                }
            }
            RingKind::Skew(s) => {
                if !self.ring.is_domain().is_true() {
                    return Err(AlgebraError::Unsupported("unit test over a skew ring that is not known to be a domain".into()));
                }
                match self.base_part() {
                    Some(b) => b.is_unit(),
                    None => {
                        let _ = s;
                        Ok(false)
                    }
                }
            }
            RingKind::Gwa(_) | RingKind::Dpr(_) => match self.base_part() {
                Some(b) if b.is_unit().unwrap_or(false) => Ok(true),
                _ => Err(AlgebraError::Unsupported("unit test in a GWA or DPR".into())),
            },
        }
    }

    /// Two-sided inverse when one is found.
    pub fn try_inverse(&self) -> Option<RingElem> {
        match &self.repr {
            Repr::Poly(m) => {
                if m.len() != 1 {
                    return None;
                }
                let (e, c) = m.iter().next().unwrap();
                let laurent = self.ring.is_laurent();
                if !laurent && e.iter().any(|&x| x != 0) {
                    return None;
                }
                let ne: Vec<i64> = e.iter().map(|x| -x).collect();
                Some(self.with_repr(Repr::Poly(single(ne, c.inv()?))))
            }
            _ => {
                let b = self.base_part()?;
                if b.is_zero() {
                    return None;
                }
                let inv = b.try_inverse()?;
                Some(self.ring.embed_base(&inv))
            }
        }
    }

    /// Regularity (not a zero divisor); all bundled domains answer `a != 0`.
    pub fn is_regular(&self) -> Result<bool> {
        if self.ring.is_domain().is_true() {
            Ok(!self.is_zero())
        } else if self.is_zero() {
            Ok(false)
        } else {
            Err(AlgebraError::Unsupported(format!("regularity in {} (not known to be a domain)", self.ring.kind_name())))
        }
    }

    /// Homomorphic image under the map sending the `k`-th generator to `images[k]`.
    pub(crate) fn eval(&self, images: &[RingElem], target: &Ring) -> Result<RingElem> {
        self.eval_impl(images, target, false)
    }

    /// Anti-homomorphic image (products are reversed).
    pub(crate) fn eval_anti(&self, images: &[RingElem], target: &Ring) -> Result<RingElem> {
        self.eval_impl(images, target, true)
    }

    fn eval_impl(&self, images: &[RingElem], target: &Ring, anti: bool) -> Result<RingElem> {
        debug_assert_eq!(images.len(), self.ring.ngens());
        let prod = |a: &RingElem, b: &RingElem| if anti { b.mul_unchecked(a) } else { a.mul_unchecked(b) };
        let mut acc = target.zero();
        match (&self.ring.0.kind, &self.repr) {
            (RingKind::Poly(_), Repr::Poly(m)) => {
                let mut pows: Vec<PowTable> = images.iter().map(PowTable::new).collect();
                for (e, c) in m {
                    let mut t = target.constant(c.clone());
                    for (k, &x) in e.iter().enumerate() {
                        if x != 0 {
                            let p = pows[k].get(x)?;
                            t = prod(&t, &p);
                        }
                    }
                    acc = acc.add_unchecked(&t);
                }
            }
            (RingKind::Skew(s), Repr::Skew(m)) => {
                let nb = s.base.ngens();
                let mut tp = PowTable::new(&images[nb]);
                for (&i, c) in m {
                    let ci = c.eval_impl(&images[..nb], target, anti)?;
                    acc = acc.add_unchecked(&prod(&ci, &tp.get(i as i64)?));
                }
            }
            (RingKind::Gwa(g), Repr::Gwa(m)) => {
                let nb = g.data.base.ngens();
                let mut xp = PowTable::new(&images[nb]);
                let mut yp = PowTable::new(&images[nb + 1]);
                for (&i, c) in m {
                    let ci = c.eval_impl(&images[..nb], target, anti)?;
                    let v = if i >= 0 { xp.get(i)? } else { yp.get(-i)? };
                    acc = acc.add_unchecked(&prod(&ci, &v));
                }
            }
            (RingKind::Dpr(d), Repr::Dpr(m)) => {
                let nb = d.data.base.ngens();
                let mut xp = PowTable::new(&images[nb]);
                let mut yp = PowTable::new(&images[nb + 1]);
                for (&(i, j), c) in m {
                    let ci = c.eval_impl(&images[..nb], target, anti)?;
                    let v = prod(&yp.get(i as i64)?, &xp.get(j as i64)?);
                    acc = acc.add_unchecked(&prod(&ci, &v));
                }
            }
            _ => unreachable!(),
        }
        Ok(acc)
    }

    /// Finds `q` with `q * m == self`, when it exists and the ring supports exact division.
    pub fn right_div_exact(&self, m: &RingElem) -> Option<RingElem> {
        if self.ring != m.ring || m.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.ring.zero());
        }
        match &self.ring.0.kind {
            RingKind::Poly(_) => crate::poly::div_exact(self, m),
            RingKind::Skew(s) => {
                let mm = m.skew_coeffs()?;
                let (&k, mk) = mm.iter().next_back()?;
                let mut r = self.clone();
                let mut q = self.ring.zero();
                while !r.is_zero() {
                    let (&d, rd) = r.skew_coeffs()?.iter().next_back()?;
                    if d < k {
                        return None;
                    }
                    let sft = d - k;
                    let l = rd.right_div_exact(&s.powers.get(sft as usize).apply(mk))?;
                    let term = self.with_repr(Repr::Skew(single(sft, l)));
                    r = r.add_unchecked(&term.mul_unchecked(m).neg_elem());
                    q = q.add_unchecked(&term);
                }
                Some(q)
            }
            _ => None,
        }
    }
}

fn only_key<'a, K: Ord, V>(m: &'a BTreeMap<K, V>, k: &K) -> Option<&'a V> {
    if m.len() == 1 {
        m.get(k)
    } else {
        None
    }
}

/// Lazily filled powers of one element, including inverse powers for units.
struct PowTable {
    pos: Vec<RingElem>,
    neg: Option<Vec<RingElem>>,
}

impl PowTable {
    fn new(x: &RingElem) -> PowTable {
        PowTable { pos: vec![x.ring.one(), x.clone()], neg: None }
    }

    fn get(&mut self, e: i64) -> Result<RingElem> {
        if e >= 0 {
            let e = e as usize;
            while self.pos.len() <= e {
                let next = self.pos.last().unwrap().mul_unchecked(&self.pos[1]);
                self.pos.push(next);
            }
            Ok(self.pos[e].clone())
        } else {
            if self.neg.is_none() {
                let x = &self.pos[1];
                let inv = x.try_inverse().ok_or_else(|| AlgebraError::NotAUnit(x.to_string()))?;
                self.neg = Some(vec![x.ring.one(), inv]);
            }
            let neg = self.neg.as_mut().unwrap();
            let e = e.unsigned_abs() as usize;
            while neg.len() <= e {
                let next = neg.last().unwrap().mul_unchecked(&neg[1]);
                neg.push(next);
            }
            Ok(neg[e].clone())
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&RingElem> for &RingElem {
            type Output = RingElem;
            fn $m(self, o: &RingElem) -> RingElem {
                self.$f(o).expect("ring mismatch")
            }
        }
        impl $tr<RingElem> for RingElem {
            type Output = RingElem;
            fn $m(self, o: RingElem) -> RingElem {
                self.$f(&o).expect("ring mismatch")
            }
        }
        impl $tr<&RingElem> for RingElem {
            type Output = RingElem;
            fn $m(self, o: &RingElem) -> RingElem {
                self.$f(o).expect("ring mismatch")
            }
        }
        impl $tr<RingElem> for &RingElem {
            type Output = RingElem;
            fn $m(self, o: RingElem) -> RingElem {
                self.$f(&o).expect("ring mismatch")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        self.neg_elem()
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        self.neg_elem()
    }
}

// ---- printing -------------------------------------------------------------

fn join_terms(terms: Vec<String>) -> String {
    let mut out = String::new();
    for (i, t) in terms.into_iter().enumerate() {
        if i == 0 {
            out.push_str(&t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    out
}

fn coef_times(c: &RingElem, basis: &str) -> String {
    if basis.is_empty() {
        return c.to_string();
    }
    if c.is_one() {
        return basis.to_string();
    }
    if c.neg_elem().is_one() {
        return format!("-{basis}");
    }
    let s = c.to_string();
    // nested coefficients can carry several terms under a single skew/GWA key
    if !s.contains(" + ") && !s.contains(" - ") {
        format!("{s}*{basis}")
    } else {
        format!("({s})*{basis}")
    }
}

fn power_str(name: &str, e: i64) -> String {
    match e {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{e}"),
    }
}

fn poly_monomial(vars: &[String], e: &[i64]) -> String {
    let parts: Vec<String> = vars.iter().zip(e).filter(|(_, &x)| x != 0).map(|(v, &x)| power_str(v, x)).collect();
    parts.join("*")
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = match (&self.ring.0.kind, &self.repr) {
            (RingKind::Poly(p), Repr::Poly(m)) => m
                .iter()
                .rev()
                .map(|(e, c)| {
                    let mono = poly_monomial(&p.vars, e);
                    if mono.is_empty() {
                        c.to_string()
                    } else if c.is_one() {
                        mono
                    } else if c.neg().is_one() {
                        format!("-{mono}")
                    } else {
                        format!("{c}*{mono}")
                    }
                })
                .collect(),
            (RingKind::Skew(s), Repr::Skew(m)) => {
                m.iter().rev().map(|(&i, c)| coef_times(c, &power_str(&s.var, i as i64))).collect()
            }
            (RingKind::Gwa(g), Repr::Gwa(m)) => m
                .iter()
                .rev()
                .map(|(&i, c)| {
                    let b = if i >= 0 { power_str(&g.x_name, i) } else { power_str(&g.y_name, -i) };
                    coef_times(c, &b)
                })
                .collect(),
            (RingKind::Dpr(d), Repr::Dpr(m)) => m
                .iter()
                .rev()
                .map(|(&(i, j), c)| {
                    let parts: Vec<String> = [power_str(&d.y_name, i as i64), power_str(&d.x_name, j as i64)]
                        .into_iter()
                        .filter(|s| !s.is_empty())
                        .collect();
                    coef_times(c, &parts.join("*"))
                })
                .collect(),
            _ => unreachable!(),
        };
        f.write_str(&join_terms(terms))
    }
}
