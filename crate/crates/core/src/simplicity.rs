//! Simplicity criteria for GWAs and DPRs over the bundled base-ring families.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_integer::Integer;

use crate::dpr::{alpha_solver, charp_normal_search, Dpr, DprData};
use crate::endo::{omega_of_normal, RingEndo};
use crate::error::{AlgebraError, Result};
use crate::field::FieldElem;
use crate::gwa::GwaData;
use crate::report::Status;
use crate::ring::{Ring, RingElem};
use crate::tri::Tri;
use crate::univariate::{shift_roots, ShiftFamily, ShiftRoots, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Simple,
    NotSimple,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Simple => "Simple",
            Verdict::NotSimple => "NotSimple",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Condition label, `"a"` to `"d"`.
    pub condition: &'static str,
    pub index: Option<u64>,
    pub element: Option<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionResult {
    pub id: &'static str,
    pub description: &'static str,
    pub status: Status,
    pub witness: Option<Witness>,
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest `i` for which `b_i` is tested directly.
    pub b_units: u64,
    /// Largest `n` in the search over `h^{p^n} + ...`.
    pub charp_n: u32,
    /// `gcd(a, σ^i(a))` is enumerated for `i <= gcd_factor * p` in characteristic `p`.
    pub gcd_factor: u64,
    /// Powers of `σ` examined when no closed form is available.
    pub powers: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { b_units: 25, charp_n: 3, gcd_factor: 4, powers: 25 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityReport {
    pub verdict: Verdict,
    pub conditions: Vec<ConditionResult>,
    pub witness: Option<Witness>,
    pub bounds: Bounds,
}

impl SimplicityReport {
    pub fn condition(&self, id: &str) -> Option<&ConditionResult> {
        self.conditions.iter().find(|c| c.id == id)
    }

    fn assemble(conditions: Vec<ConditionResult>, bounds: Bounds, priority: [&str; 4]) -> SimplicityReport {
        let verdict = if conditions.iter().any(|c| c.status == Status::Fail) {
            Verdict::NotSimple
        } else if conditions.iter().all(|c| c.status == Status::Pass) {
            Verdict::Simple
        } else {
            Verdict::Inconclusive
        };
        let witness = priority.iter().find_map(|id| {
            conditions.iter().find(|c| c.id == *id && c.status == Status::Fail).and_then(|c| c.witness.clone())
        });
        SimplicityReport { verdict, conditions, witness, bounds }
    }
}

fn cond(id: &'static str, description: &'static str, status: Status) -> ConditionResult {
    ConditionResult { id, description, status, witness: None, note: None }
}

fn failed(id: &'static str, description: &'static str, w: Witness) -> ConditionResult {
    ConditionResult { id, description, status: Status::Fail, witness: Some(w), note: None }
}

fn witness(condition: &'static str, index: Option<u64>, element: Option<String>, detail: String) -> Witness {
    Witness { condition, index, element, detail }
}

/// The univariate shape of `f`, when `D` is `K[h]` or `K[h^{±1}]`.
fn shift_family(ring: &Ring, f: &RingEndo) -> Option<ShiftFamily> {
    if ring.poly_vars()?.len() != 1 {
        return None;
    }
    let (u, c) = f.affine_form(0)?;
    let one = ring.field().one();
    if ring.is_laurent() {
        return (c.is_zero() && !u.is_zero()).then_some(ShiftFamily::Dilation(u));
    }
    if u.is_zero() {
        return None;
    }
    Some(if u == one {
        ShiftFamily::Shift(c)
    } else if c.is_zero() {
        ShiftFamily::Dilation(u)
    } else {
        ShiftFamily::Affine { u, c }
    })
}

/// Is `D` `f`-simple? Decided for shifts, dilations and affine maps of `K[h]`, dilations of
/// `K[h^{±1}]`, and the field `K` itself.
pub fn sigma_simple(ring: &Ring, f: &RingEndo) -> (Tri, Option<String>) {
    if f.ring() != ring {
        return (Tri::Unknown, None);
    }
    if ring.poly_vars().is_some_and(|v| v.is_empty()) {
        return (Tri::True, None);
    }
    let Some(fam) = shift_family(ring, f) else {
        return (Tri::Unknown, None);
    };
    let name = &ring.gen_names()[0];
    let p = ring.characteristic();
    match fam {
        ShiftFamily::Shift(c) if c.is_zero() => (Tri::False, Some(name.clone())),
        ShiftFamily::Shift(c) => {
            if p == 0 {
                (Tri::True, None)
            } else {
                // (h + c)^p - c^{p-1}(h + c) = h^p - c^{p-1} h
                let k = c.pow(p as i64 - 1).unwrap();
                let w = if k.is_one() { format!("{name}^{p} - {name}") } else { format!("{name}^{p} - {k}*{name}") };
                (Tri::False, Some(w))
            }
        }
        ShiftFamily::Dilation(_) if !ring.is_laurent() => (Tri::False, Some(name.clone())),
        ShiftFamily::Dilation(q) => match q.multiplicative_order() {
            None => (Tri::True, None),
            Some(m) => (Tri::False, Some(format!("{name}^{m} - 1"))),
        },
        ShiftFamily::Affine { u, c } => {
            let h0 = c.div(&ring.field().one().sub(&u)).unwrap();
            let w = if h0.is_negative_rational() {
                format!("{name} + {}", h0.neg())
            } else {
                format!("{name} - {h0}")
            };
            (Tri::False, Some(w))
        }
    }
}

/// `u` with `e = u*g` for a single-term generator `g`.
fn scalar_ratio(e: &RingElem, g: &RingElem) -> Option<FieldElem> {
    if let (Some(a), Some(b)) = (e.poly_terms(), g.poly_terms()) {
        if a.len() != 1 || b.len() != 1 {
            return None;
        }
        let (ka, ca) = a.iter().next().unwrap();
        let (kb, cb) = b.iter().next().unwrap();
        return (ka == kb).then(|| ca.div(cb).unwrap());
    }
    if let (Some(a), Some(b)) = (e.skew_coeffs(), g.skew_coeffs()) {
        if a.len() != 1 || b.len() != 1 {
            return None;
        }
        let (ka, ca) = a.iter().next().unwrap();
        let (kb, cb) = b.iter().next().unwrap();
        return if ka == kb { scalar_ratio(ca, cb) } else { None };
    }
    None
}

fn affine_period(u: &FieldElem, c: &FieldElem, p: u64) -> Option<u64> {
    if u.is_one() {
        if c.is_zero() {
            Some(1)
        } else if p == 0 {
            None
        } else {
            Some(p)
        }
    } else {
        u.multiplicative_order()
    }
}

/// `Some(Some(N))`: least `N >= 1` with `f^N = id`; `Some(None)`: no power is the identity;
/// `None`: undecided.
pub fn identity_period(ring: &Ring, f: &RingEndo) -> Option<Option<u64>> {
    let p = ring.characteristic();
    let mut acc = 1u64;
    let gens = ring.generators();
    for (k, g) in gens.iter().enumerate() {
        let img = &f.images()[k];
        let per = if let Some((u, c)) = f.affine_form(k) {
            affine_period(&u, &c, p)
        } else if ring.poly_vars().is_some_and(|_| ring.is_laurent()) && ring.ngens() == 1 {
            // h -> u h^{-1} squares to the identity
            scalar_ratio(img, &g.try_inverse()?)?;
            Some(2)
        } else {
            let u = scalar_ratio(img, g)?;
            u.multiplicative_order()
        };
        match per {
            None => return Some(None),
            Some(n) => acc = acc.lcm(&n),
        }
    }
    Some(Some(acc))
}

/// Units of `ring` are central scalars, so inner automorphisms are trivial.
fn inner_is_identity(ring: &Ring) -> bool {
    ring.is_commutative() || ring.units_are_scalars()
}

/// Laurent polynomial with the monomial content divided out.
fn laurent_core(e: &RingElem) -> Option<UniPoly> {
    let terms = e.poly_terms()?;
    let lo = terms.keys().map(|k| k[0]).min().unwrap_or(0);
    let mut coeffs = alloc::vec![e.ring().field().zero(); terms.keys().map(|k| (k[0] - lo) as usize + 1).max().unwrap_or(0)];
    for (k, c) in terms {
        coeffs[(k[0] - lo) as usize] = c.clone();
    }
    Some(UniPoly::new(e.ring().field(), coeffs))
}

fn check_normal(ring: &Ring, e: &RingElem, name: &str) -> Result<()> {
    if ring.is_commutative() {
        return Ok(());
    }
    omega_of_normal(ring, e).map(|_| ()).map_err(|_| AlgebraError::NormalityUnverified(format!("{name} = {e}")))
}

const GA: &str = "a and sigma(a) are regular in D";
const GB: &str = "D is sigma-simple";
const GC: &str = "no power sigma^i (i >= 1) is inner";
const GD: &str = "Da + D sigma^i(a) = D for all i >= 1";

/// Evaluates conditions (a)-(d) for a GWA whose `a` and `σ(a)` are normal.
pub fn gwa_simple(d: &GwaData, bounds: Bounds) -> Result<SimplicityReport> {
    let ring = &d.base;
    let sa = d.sigma.apply(&d.a);
    check_normal(ring, &d.a, "a")?;
    check_normal(ring, &sa, "sigma(a)")?;
    let mut out = Vec::new();

    out.push(match (d.a.is_regular(), sa.is_regular()) {
        (Ok(true), Ok(true)) => cond("a", GA, Status::Pass),
        (Ok(false), _) => failed("a", GA, witness("a", None, Some(d.a.to_string()), "a is a zero divisor".into())),
        (_, Ok(false)) => {
            failed("a", GA, witness("a", None, Some(sa.to_string()), "sigma(a) is a zero divisor".into()))
        }
        _ => cond("a", GA, Status::Unknown),
    });

    out.push(sigma_condition("b", GB, ring, &d.sigma));

    out.push(inner_condition(ring, &d.sigma, bounds));

    out.push(coprime_condition(d, bounds));

    Ok(SimplicityReport::assemble(out, bounds, ["c", "d", "b", "a"]))
}

fn sigma_condition(id: &'static str, desc: &'static str, ring: &Ring, f: &RingEndo) -> ConditionResult {
    match sigma_simple(ring, f) {
        (Tri::True, _) => cond(id, desc, Status::Pass),
        (Tri::False, w) => failed(id, desc, witness(id, None, w.clone(), format!("proper stable ideal ({})", w.unwrap_or_default()))),
        (Tri::Unknown, _) => cond(id, desc, Status::Unknown),
    }
}

fn inner_condition(ring: &Ring, f: &RingEndo, bounds: Bounds) -> ConditionResult {
    if !inner_is_identity(ring) {
        return cond("c", GC, Status::Unknown);
    }
    match identity_period(ring, f) {
        Some(None) => cond("c", GC, Status::Pass),
        Some(Some(n)) => failed("c", GC, witness("c", Some(n), None, format!("sigma^{n} is the identity"))),
        None => {
            let mut g = f.clone();
            for i in 1..=bounds.powers {
                if g.is_identity() {
                    return failed("c", GC, witness("c", Some(i), None, format!("sigma^{i} is the identity")));
                }
                g = g.compose_unchecked(f);
            }
            let mut c = cond("c", GC, Status::Unknown);
            c.note = Some(format!("no identity power up to {}", bounds.powers));
            c
        }
    }
}

fn coprime_condition(d: &GwaData, bounds: Bounds) -> ConditionResult {
    let ring = &d.base;
    let a = &d.a;
    if a.try_inverse().is_some_and(|i| (a * &i).is_one() && (&i * a).is_one()) {
        return cond("d", GD, Status::Pass);
    }
    let p = ring.characteristic();
    let fail_at = |i: u64, g: Option<String>| {
        failed("d", GD, witness("d", Some(i), g.clone(), format!("Da + D sigma^{i}(a) is contained in ({})", g.unwrap_or_default())))
    };
    if let Some(fam) = shift_family(ring, &d.sigma) {
        let core = if ring.is_laurent() { laurent_core(a) } else { UniPoly::from_elem(a).ok() };
        let Some(core) = core else { return cond("d", GD, Status::Unknown) };
        if core.is_unit() {
            return cond("d", GD, Status::Pass);
        }
        if p == 0 {
            return match shift_roots(&core, &fam) {
                Ok(ShiftRoots::Finite(v)) if v.is_empty() => cond("d", GD, Status::Pass),
                Ok(roots) => {
                    let i = roots.first().unwrap();
                    let si = d.sigma.power(i).apply(a);
                    let g = UniPoly::from_elem(&si).ok().map(|s| core.gcd(&s));
                    fail_at(i, g.map(|g| g.to_elem(ring).map(|e| e.to_string()).unwrap_or_default()))
                }
                Err(_) => cond("d", GD, Status::Unknown),
            };
        }
        // characteristic p: σ has finite order, so enumeration up to that order is complete
        let period = identity_period(ring, &d.sigma).flatten();
        let cap = bounds.gcd_factor * p;
        let mut s = d.sigma.clone();
        for i in 1..=cap {
            let si = s.apply(a);
            let si_core = if ring.is_laurent() { laurent_core(&si) } else { UniPoly::from_elem(&si).ok() };
            let Some(si_core) = si_core else { return cond("d", GD, Status::Unknown) };
            let g = core.gcd(&si_core);
            if !g.is_unit() {
                let ge = g.to_elem(ring).map(|e| e.to_string()).ok();
                return fail_at(i, ge);
            }
            if period == Some(i) {
                return cond("d", GD, Status::Pass);
            }
            s = s.compose_unchecked(&d.sigma);
        }
        let mut c = cond("d", GD, Status::Unknown);
        c.note = Some(format!("gcd enumeration up to i = {cap}"));
        return c;
    }
    // σ^i(a) a scalar multiple of a non-unit a
    let mut s = d.sigma.clone();
    for i in 1..=bounds.powers {
        let si = s.apply(a);
        if scalar_ratio(&si, a).is_some() || si == *a {
            return fail_at(i, Some(a.to_string()));
        }
        s = s.compose_unchecked(&d.sigma);
    }
    cond("d", GD, Status::Unknown)
}

const DA: &str = "sigma and tau are automorphisms";
const DB: &str = "D is sigma-simple";
const DC: &str = "no normal element h^n + ... of the required shape";
const DD: &str = "b_i is a unit for all i >= 1";

/// Evaluates conditions (a)-(d) for a DPR with `ρ` a unit and `ν = τσ` surjective.
pub fn dpr_simple(dpr: &Dpr, bounds: Bounds) -> Result<SimplicityReport> {
    let d = dpr.data();
    if d.rho_inverse.is_none() {
        return Err(AlgebraError::RhoNotUnit);
    }
    let nu = d.nu();
    if nu.try_inverse().is_none() && !nu.is_surjective().is_true() {
        return Err(AlgebraError::NuNotSurjective);
    }
    let ring = &d.base;
    let mut out = Vec::new();

    let auto = |f: &RingEndo| if f.try_inverse().is_some() { Tri::True } else { f.is_automorphism() };
    out.push(match (auto(&d.sigma), auto(&d.tau)) {
        (Tri::True, Tri::True) => cond("a", DA, Status::Pass),
        (Tri::False, _) => failed("a", DA, witness("a", None, None, "sigma is not an automorphism".into())),
        (_, Tri::False) => failed("a", DA, witness("a", None, None, "tau is not an automorphism".into())),
        _ => cond("a", DA, Status::Unknown),
    });

    out.push(sigma_condition("b", DB, ring, &d.sigma));

    let dd = b_units_condition(dpr, bounds);

    out.push(normal_condition(d, dpr, bounds));
    out.push(dd);
    out.sort_by_key(|c| c.id);
    // In characteristic p the unit test of b_i comes before the p' search.
    let priority = if ring.characteristic() == 0 { ["c", "d", "b", "a"] } else { ["d", "c", "b", "a"] };
    Ok(SimplicityReport::assemble(out, bounds, priority))
}

fn normal_condition(d: &DprData, dpr: &Dpr, bounds: Bounds) -> ConditionResult {
    let p = d.base.characteristic();
    match alpha_solver(d) {
        Err(_) => return cond("c", DC, Status::Unknown),
        Ok(Some(alpha)) => {
            return failed("c", DC, witness("c", Some(1), Some(alpha.to_string()), format!("alpha = {alpha} solves rho*alpha - sigma(alpha) = b")))
        }
        Ok(None) if p == 0 => return cond("c", DC, Status::Pass),
        Ok(None) => {}
    }
    match charp_normal_search(dpr, bounds.charp_n) {
        Ok(Some(sol)) if sol.verified => {
            let n = sol.n;
            failed("c", DC, witness("c", Some(p.pow(n)), Some(sol.element.to_string()), format!("p' = {} at n = {n}", sol.element)))
        }
        _ => {
            let mut c = cond("c", DC, Status::Unknown);
            c.note = Some(format!("no solution for n <= {}", bounds.charp_n));
            c
        }
    }
}

fn is_unit(e: &RingElem) -> Tri {
    match e.is_unit() {
        Ok(b) => Tri::from_bool(b),
        Err(_) => Tri::Unknown,
    }
}

fn b_units_condition(dpr: &Dpr, bounds: Bounds) -> ConditionResult {
    let d = dpr.data();
    let fail_at = |i: u64, bi: &RingElem| {
        failed("d", DD, witness("d", Some(i), Some(bi.to_string()), format!("b_{i} = {bi} is not a unit")))
    };
    match is_unit(&d.b) {
        Tri::False => return fail_at(1, &d.b),
        Tri::Unknown => return cond("d", DD, Status::Unknown),
        Tri::True => {}
    }
    // σ(b) = b and ρ ∈ K: b_i = (1 + ρ + ... + ρ^{i-1}) b
    if let Some(rho) = d.rho.constant_value() {
        if d.sigma.apply(&d.b) == d.b {
            let p = d.base.characteristic();
            let first_zero = if rho.is_one() {
                (p != 0).then_some(p)
            } else {
                rho.multiplicative_order()
            };
            return match first_zero {
                None => cond("d", DD, Status::Pass),
                Some(i) => fail_at(i, &d.b.scale(&rho.geometric_sum(i))),
            };
        }
    }
    for (i, (_, bi)) in dpr.sigma_power_coeffs(bounds.b_units).iter().enumerate() {
        match is_unit(bi) {
            Tri::False => return fail_at(i as u64 + 1, bi),
            Tri::Unknown => return cond("d", DD, Status::Unknown),
            Tri::True => {}
        }
    }
    let mut c = cond("d", DD, Status::Unknown);
    c.note = Some(format!("b_i are units for i <= {}", bounds.b_units));
    c
}
