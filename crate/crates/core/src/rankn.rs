//! GWAs of rank n: verification of the defining data, the construction from commuting
//! automorphisms and normal elements, and monomial arithmetic through the iterated tower.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::endo::{omega_of_normal, RingEndo};
use crate::error::{AlgebraError, Result};
use crate::gwa::{Gwa, GwaData};
use crate::report::ValidationReport;
use crate::ring::{Ring, RingElem};

/// Strictly lower triangular half-matrix; `get(i, j)` for `j < i` (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfMatrix {
    rows: Vec<Vec<RingElem>>,
}

impl HalfMatrix {
    pub fn ones(ring: &Ring, n: usize) -> HalfMatrix {
        HalfMatrix { rows: (0..n).map(|i| (0..i).map(|_| ring.one()).collect()).collect() }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> RingElem) -> HalfMatrix {
        HalfMatrix { rows: (0..n).map(|i| (0..i).map(|j| f(i, j)).collect()).collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElem {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: RingElem) {
        self.rows[i][j] = e;
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }
}

/// Defining data `(σ, τ, a, Λ, Λ', M, M')` of a rank-n GWA over `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankNData {
    pub base: Ring,
    pub sigma: Vec<RingEndo>,
    pub tau: Vec<RingEndo>,
    pub a: Vec<RingElem>,
    pub lambda: HalfMatrix,
    pub lambda_p: HalfMatrix,
    pub mu: HalfMatrix,
    pub mu_p: HalfMatrix,
}

impl RankNData {
    pub fn rank(&self) -> usize {
        self.a.len()
    }

    /// The classical data with all coefficients equal to one.
    pub fn classical(base: &Ring, sigma: Vec<RingEndo>, tau: Vec<RingEndo>, a: Vec<RingElem>) -> RankNData {
        let n = a.len();
        RankNData {
            base: base.clone(),
            sigma,
            tau,
            a,
            lambda: HalfMatrix::ones(base, n),
            lambda_p: HalfMatrix::ones(base, n),
            mu: HalfMatrix::ones(base, n),
            mu_p: HalfMatrix::ones(base, n),
        }
    }
}

struct Checker<'a> {
    rep: ValidationReport,
    names: &'a [String],
    gens: Vec<RingElem>,
}

impl Checker<'_> {
    fn eq(&mut self, name: String, lhs: RingElem, rhs: RingElem) {
        if lhs == rhs {
            self.rep.pass(name);
        } else {
            self.rep.fail(name, format!("{lhs} != {rhs}"));
        }
    }

    /// `lhs(d) == rhs(d)` for every generator `d`.
    fn on_gens(&mut self, name: String, f: impl Fn(&RingElem) -> (RingElem, RingElem)) {
        for (g, gn) in self.gens.iter().zip(self.names) {
            let (l, r) = f(g);
            if l != r {
                self.rep.fail(name, format!("d = {gn}: {l} != {r}"));
                return;
            }
        }
        self.rep.pass(name);
    }
}

/// Checks every defining equation on the generators of `D`. Check names carry 1-based
/// indices `(i, j)` with `i > j`.
pub fn verify_rankn(d: &RankNData) -> ValidationReport {
    let n = d.rank();
    let mut c = Checker { rep: ValidationReport::new(), names: d.base.gen_names(), gens: d.base.generators() };
    if d.sigma.len() != n || d.tau.len() != n || d.lambda.size() != n {
        c.rep.fail("shape", format!("rank {n} with {} sigma, {} tau", d.sigma.len(), d.tau.len()));
        return c.rep;
    }
    let (s, t, a) = (&d.sigma, &d.tau, &d.a);
    for i in 0..n {
        let k = i + 1;
        c.eq(format!("diagonal[{k}]: tau sigma (a) = a"), t[i].apply(&s[i].apply(&a[i])), a[i].clone());
        c.on_gens(format!("diagonal[{k}]: a d = tau sigma(d) a"), |g| (&a[i] * g, &t[i].apply(&s[i].apply(g)) * &a[i]));
        let sa = s[i].apply(&a[i]);
        c.on_gens(format!("diagonal[{k}]: sigma(a) d = sigma tau(d) sigma(a)"), |g| {
            (&sa * g, &s[i].apply(&t[i].apply(g)) * &sa)
        });
    }
    for i in 0..n {
        for j in 0..i {
            let (l, lp, m, mp) = (d.lambda.get(i, j), d.lambda_p.get(i, j), d.mu.get(i, j), d.mu_p.get(i, j));
            let tag = format!("[{},{}]", i + 1, j + 1);
            let sai = s[i].apply(&a[i]);
            let saj = s[j].apply(&a[j]);
            c.eq(format!("a_twist{tag}: lambda, mu"), a[i].clone(), &(&t[i].apply(l) * m) * &s[j].apply(&a[i]));
            c.eq(format!("a_twist{tag}: lambda', mu'"), a[i].clone(), &(&t[i].apply(lp) * mp) * &t[j].apply(&a[i]));
            c.eq(format!("sigma_a_twist{tag}: lambda, mu"), sai.clone(), &(&s[i].apply(m) * l) * &s[j].apply(&sai));
            c.eq(format!("sigma_a_twist{tag}: lambda', mu'"), sai.clone(), &(&s[i].apply(mp) * lp) * &t[j].apply(&sai));
            c.on_gens(format!("x_commutation{tag}: lambda"), |g| (l * &s[j].apply(&s[i].apply(g)), &s[i].apply(&s[j].apply(g)) * l));
            c.on_gens(format!("x_commutation{tag}: mu"), |g| (m * &s[j].apply(&t[i].apply(g)), &t[i].apply(&s[j].apply(g)) * m));
            c.on_gens(format!("y_commutation{tag}: lambda'"), |g| {
                (lp * &t[j].apply(&s[i].apply(g)), &s[i].apply(&t[j].apply(g)) * lp)
            });
            c.on_gens(format!("y_commutation{tag}: mu'"), |g| (mp * &t[j].apply(&t[i].apply(g)), &t[i].apply(&t[j].apply(g)) * mp));
            c.eq(format!("a_images{tag}: sigma"), s[i].apply(&a[j]), &(lp * &t[j].apply(l)) * &a[j]);
            c.eq(format!("a_images{tag}: tau"), t[i].apply(&a[j]), &(mp * &t[j].apply(m)) * &a[j]);
            c.eq(format!("sigma_a_images{tag}: sigma"), s[i].apply(&saj), &(l * &s[j].apply(lp)) * &saj);
            c.eq(format!("sigma_a_images{tag}: tau"), t[i].apply(&saj), &(m * &s[j].apply(mp)) * &saj);
        }
    }
    c.rep
}

/// A factor of a word: an element or the inverse of a normal regular element.
enum Factor {
    Elem(RingElem),
    Inv(RingElem),
}

/// Evaluates a word with inverses of normal elements, provided the value lies in `ring`.
fn eval_word(ring: &Ring, word: Vec<Factor>, name: &str) -> Result<RingElem> {
    let missing = || AlgebraError::CoefficientNotInRing(name.to_string());
    // value = num * den^{-1}
    let mut num = ring.one();
    let mut den = ring.one();
    for f in word {
        match f {
            Factor::Elem(e) => {
                let moved = if ring.is_commutative() || den.constant_value().is_some() {
                    e
                } else {
                    let w = omega_of_normal(ring, &den).map_err(|_| missing())?;
                    w.try_inverse().ok_or_else(missing)?.apply(&e)
                };
                num = &num * &moved;
            }
            Factor::Inv(u) => {
                if u.is_zero() {
                    return Err(AlgebraError::DivisionByZero);
                }
                den = &u * &den;
            }
        }
    }
    if den.is_one() {
        return Ok(num);
    }
    num.right_div_exact(&den).ok_or_else(missing)
}

/// The data with `σ_i = θ_i ω_{β_i}`, `τ_i = ω_{α_i} θ_i^{-1}`, `a_i = α_i β_i` and the
/// matching coefficients. Fails when a coefficient leaves `D`.
pub fn build_from_theta(theta: &[RingEndo], alpha: &[RingElem], beta: &[RingElem]) -> Result<RankNData> {
    let n = theta.len();
    if n == 0 || alpha.len() != n || beta.len() != n {
        return Err(AlgebraError::UnsupportedRing(format!("{} theta, {} alpha, {} beta", n, alpha.len(), beta.len())));
    }
    let ring = theta[0].ring().clone();
    let gens = ring.generators();
    for i in 0..n {
        for j in 0..i {
            if gens.iter().any(|g| theta[i].apply(&theta[j].apply(g)) != theta[j].apply(&theta[i].apply(g))) {
                return Err(AlgebraError::ThetaNotCommuting(j + 1, i + 1));
            }
        }
    }
    let alpha = alpha.iter().map(|e| ring.lift(e)).collect::<Result<Vec<_>>>()?;
    let beta = beta.iter().map(|e| ring.lift(e)).collect::<Result<Vec<_>>>()?;
    let tinv = theta
        .iter()
        .enumerate()
        .map(|(i, t)| t.try_inverse().ok_or_else(|| AlgebraError::InvalidEndo(format!("theta_{} is not invertible", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    let mut sigma = Vec::new();
    let mut tau = Vec::new();
    let mut a = Vec::new();
    for i in 0..n {
        for (e, nm) in [(&alpha[i], "alpha"), (&beta[i], "beta")] {
            if !e.is_regular().unwrap_or(false) {
                return Err(AlgebraError::NotRecognizedNormalForm(format!("{nm}_{} = {e} is not regular", i + 1)));
            }
        }
        let wa = omega_of_normal(&ring, &alpha[i])?;
        let wb = omega_of_normal(&ring, &beta[i])?;
        sigma.push(theta[i].compose(&wb)?);
        tau.push(wa.compose(&tinv[i])?);
        a.push(&alpha[i] * &beta[i]);
    }
    let (th, al, be) = (theta, &alpha, &beta);
    let e = |x: RingElem| Factor::Elem(x);
    let inv = |x: RingElem| Factor::Inv(x);
    let mut lambda = HalfMatrix::ones(&ring, n);
    let mut lambda_p = HalfMatrix::ones(&ring, n);
    let mut mu = HalfMatrix::ones(&ring, n);
    let mut mu_p = HalfMatrix::ones(&ring, n);
    for i in 0..n {
        for j in 0..i {
            let tag = format!("({},{})", i + 1, j + 1);
            let tij = |x: &RingElem| th[i].apply(&th[j].apply(x));
            lambda.set(
                i,
                j,
                eval_word(
                    &ring,
                    alloc::vec![e(th[i].apply(&be[i])), e(tij(&be[j])), inv(tij(&be[i])), inv(th[j].apply(&be[j]))],
                    &format!("lambda{tag}"),
                )?,
            );
            lambda_p.set(
                i,
                j,
                eval_word(
                    &ring,
                    alloc::vec![
                        e(th[i].apply(&be[i])),
                        e(th[i].apply(&al[j])),
                        inv(tinv[j].apply(&th[i].apply(&be[i]))),
                        inv(al[j].clone()),
                    ],
                    &format!("lambda'{tag}"),
                )?,
            );
            mu.set(
                i,
                j,
                eval_word(
                    &ring,
                    alloc::vec![
                        e(al[i].clone()),
                        e(tinv[i].apply(&th[j].apply(&be[j]))),
                        inv(th[j].apply(&al[i])),
                        inv(th[j].apply(&be[j])),
                    ],
                    &format!("mu{tag}"),
                )?,
            );
            mu_p.set(
                i,
                j,
                eval_word(
                    &ring,
                    alloc::vec![
                        e(al[i].clone()),
                        e(tinv[i].apply(&al[j])),
                        inv(tinv[j].apply(&al[i])),
                        inv(al[j].clone()),
                    ],
                    &format!("mu'{tag}"),
                )?,
            );
        }
    }
    let data = RankNData { base: ring, sigma, tau, a, lambda, lambda_p, mu, mu_p };
    if !verify_rankn(&data).all_pass() {
        return Err(AlgebraError::UnverifiedData);
    }
    Ok(data)
}

/// `c · v_{α_1}(1) ⋯ v_{α_n}(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiMonomial {
    pub coeff: RingElem,
    pub degree: Vec<i64>,
}

/// The tower `A_1 ⊂ A_2 ⊂ ⋯ ⊂ A_n`, each level a GWA over the previous one.
#[derive(Clone, Debug)]
pub struct RankN {
    data: RankNData,
    levels: Vec<Gwa>,
}

impl RankN {
    /// Builds the tower; the data must pass [`verify_rankn`].
    pub fn new(data: &RankNData) -> Result<RankN> {
        if !verify_rankn(data).all_pass() {
            return Err(AlgebraError::UnverifiedData);
        }
        let n = data.rank();
        let mut levels: Vec<Gwa> = Vec::new();
        for k in 0..n {
            let below = levels.last().map(|g| g.ring().clone()).unwrap_or_else(|| data.base.clone());
            let lift = |e: &RingElem| below.lift(e).expect("base element");
            let ext = |f: &RingEndo, xs: &HalfMatrix, ys: &HalfMatrix| -> Result<RingEndo> {
                let mut imgs: Vec<RingElem> = f.images().iter().map(lift).collect();
                for (j, lvl) in levels.iter().enumerate() {
                    let x = below.lift(&lvl.x())?;
                    let y = below.lift(&lvl.y())?;
                    imgs.push(&lift(xs.get(k, j)) * &x);
                    imgs.push(&lift(ys.get(k, j)) * &y);
                }
                RingEndo::new(&below, imgs)
            };
            let sigma = ext(&data.sigma[k], &data.lambda, &data.lambda_p)?;
            let tau = ext(&data.tau[k], &data.mu, &data.mu_p)?;
            let gd = GwaData::new(&below, &sigma, &tau, &lift(&data.a[k]))?;
            levels.push(Gwa::new(&gd, &format!("x{}", k + 1), &format!("y{}", k + 1))?);
        }
        Ok(RankN { data: data.clone(), levels })
    }

    pub fn data(&self) -> &RankNData {
        &self.data
    }

    pub fn rank(&self) -> usize {
        self.levels.len()
    }

    /// The top ring `A_n`.
    pub fn ring(&self) -> &Ring {
        self.levels.last().unwrap().ring()
    }

    pub fn level(&self, k: usize) -> &Gwa {
        &self.levels[k]
    }

    pub fn x(&self, i: usize) -> RingElem {
        self.ring().lift(&self.levels[i].x()).unwrap()
    }

    pub fn y(&self, i: usize) -> RingElem {
        self.ring().lift(&self.levels[i].y()).unwrap()
    }

    pub fn embed(&self, d: &RingElem) -> Result<RingElem> {
        self.ring().lift(d)
    }

    pub fn to_element(&self, m: &MultiMonomial) -> Result<RingElem> {
        if m.degree.len() != self.rank() {
            return Err(AlgebraError::UnsupportedRing(format!("degree vector of length {}", m.degree.len())));
        }
        let mut e = self.data.base.lift(&m.coeff)?;
        for (k, lvl) in self.levels.iter().enumerate() {
            e = lvl.monomial(m.degree[k], e);
        }
        Ok(e)
    }

    /// Coefficients in `D` indexed by degree vectors.
    pub fn to_monomials(&self, e: &RingElem) -> Result<Vec<MultiMonomial>> {
        if e.ring() != self.ring() {
            return Err(AlgebraError::AlgebraMismatch);
        }
        let mut out: BTreeMap<Vec<i64>, RingElem> = BTreeMap::new();
        flatten(e, self.rank(), &mut Vec::new(), &mut out);
        Ok(out.into_iter().map(|(mut degree, coeff)| {
            degree.reverse();
            MultiMonomial { coeff, degree }
        }).collect())
    }

    pub fn mul(&self, u: &MultiMonomial, v: &MultiMonomial) -> Result<Vec<MultiMonomial>> {
        let p = &self.to_element(u)? * &self.to_element(v)?;
        self.to_monomials(&p)
    }

    /// `σ^α = σ_1^{α_1} ⋯ σ_n^{α_n}` on `D`, with `τ` for negative exponents.
    pub fn twist(&self, alpha: &[i64]) -> RingEndo {
        let mut f = RingEndo::identity(&self.data.base);
        for (k, &ak) in alpha.iter().enumerate() {
            let g = if ak >= 0 { self.data.sigma[k].power(ak as u64) } else { self.data.tau[k].power((-ak) as u64) };
            f = f.compose_unchecked(&g);
        }
        f
    }
}

fn flatten(e: &RingElem, depth: usize, path: &mut Vec<i64>, out: &mut BTreeMap<Vec<i64>, RingElem>) {
    if depth == 0 {
        if !e.is_zero() {
            out.insert(path.clone(), e.clone());
        }
        return;
    }
    for (&k, c) in e.gwa_coeffs().unwrap() {
        path.push(k);
        flatten(c, depth - 1, path, out);
        path.pop();
    }
}

/// Product of two monomials in the rank-n GWA given by `d`.
pub fn multi_mul(u: &MultiMonomial, v: &MultiMonomial, d: &RankNData) -> Result<Vec<MultiMonomial>> {
    RankN::new(d)?.mul(u, v)
}
