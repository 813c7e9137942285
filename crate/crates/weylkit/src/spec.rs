//! Algebra spec files (TOML) and their translation into core objects.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use weylkit_core::dpr::GwaImage;
use weylkit_core::rankn::{build_from_theta, HalfMatrix, RankN, RankNData};
use weylkit_core::{Dpr, DprData, Field, Gwa, GwaData, Involution, Ring, RingElem, RingEndo};

use crate::error::CliError;
use crate::expr::parse_expression;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub base: BaseSpec,
    #[serde(default, rename = "endo")]
    pub endos: BTreeMap<String, BTreeMap<String, String>>,
    pub gwa: Option<GwaSpec>,
    pub dpr: Option<DprSpec>,
    pub rankn: Option<RankNSpec>,
    pub involution: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseSpec {
    pub field: String,
    pub p: Option<u64>,
    #[serde(default)]
    pub vars: Vec<String>,
    #[serde(default)]
    pub laurent: bool,
    #[serde(default)]
    pub skew: Vec<SkewSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SkewSpec {
    pub var: String,
    #[serde(default)]
    pub twist: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GwaSpec {
    pub sigma: String,
    pub tau: String,
    pub a: String,
    #[serde(default = "default_x")]
    pub x: String,
    #[serde(default = "default_y")]
    pub y: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DprSpec {
    pub sigma: String,
    pub tau: String,
    pub b: String,
    #[serde(default = "default_one")]
    pub rho: String,
    #[serde(default = "default_x")]
    pub x: String,
    #[serde(default = "default_y")]
    pub y: String,
    #[serde(default = "default_h")]
    pub h: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankNSpec {
    #[serde(default)]
    pub sigma: Vec<String>,
    #[serde(default)]
    pub tau: Vec<String>,
    #[serde(default)]
    pub a: Vec<String>,
    #[serde(default)]
    pub lambda: BTreeMap<String, String>,
    #[serde(default)]
    pub lambda_p: BTreeMap<String, String>,
    #[serde(default)]
    pub mu: BTreeMap<String, String>,
    #[serde(default)]
    pub mu_p: BTreeMap<String, String>,
    #[serde(default)]
    pub theta: Vec<String>,
    #[serde(default)]
    pub alpha: Vec<String>,
    #[serde(default)]
    pub beta: Vec<String>,
}

fn default_x() -> String {
    "x".into()
}
fn default_y() -> String {
    "y".into()
}
fn default_h() -> String {
    "h".into()
}
fn default_one() -> String {
    "1".into()
}

/// The algebra described by a spec.
#[derive(Debug, Clone)]
pub enum Algebra {
    Gwa(Gwa),
    Dpr { dpr: Dpr, image: Option<Box<GwaImage>> },
    RankN(RankNData),
}

/// A spec with every expression parsed.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub spec: AlgebraSpec,
    pub base: Ring,
    pub endos: BTreeMap<String, RingEndo>,
    pub algebra: Algebra,
}

impl Loaded {
    /// The ring in which `mul` and `normal-form` expressions live.
    pub fn ring(&self) -> Result<Ring, CliError> {
        Ok(match &self.algebra {
            Algebra::Gwa(g) => g.ring().clone(),
            Algebra::Dpr { dpr, .. } => dpr.ring().clone(),
            Algebra::RankN(d) => RankN::new(d)?.ring().clone(),
        })
    }

    /// The GWA itself, or the GWA presentation of a DPR.
    pub fn gwa(&self) -> Result<Gwa, CliError> {
        match &self.algebra {
            Algebra::Gwa(g) => Ok(g.clone()),
            Algebra::Dpr { image: Some(img), .. } => Ok(img.gwa.clone()),
            Algebra::Dpr { .. } => Err(CliError::SpecInvalid("rho is not a unit, so there is no GWA presentation".into())),
            Algebra::RankN(_) => Err(CliError::SpecInvalid("command needs a rank-one GWA or DPR".into())),
        }
    }

    pub fn dpr(&self) -> Result<&Dpr, CliError> {
        match &self.algebra {
            Algebra::Dpr { dpr, .. } => Ok(dpr),
            _ => Err(CliError::SpecInvalid("command needs a [dpr] section".into())),
        }
    }

    pub fn rankn(&self) -> Result<&RankNData, CliError> {
        match &self.algebra {
            Algebra::RankN(d) => Ok(d),
            _ => Err(CliError::SpecInvalid("command needs a [rankn] section".into())),
        }
    }

    /// The involution of the GWA base ring from the `[involution]` section (identity by default).
    pub fn involution(&self) -> Result<Involution, CliError> {
        let g = self.gwa()?;
        let ring = g.base();
        let mut pairs = Vec::new();
        for (k, v) in self.spec.involution.iter().flatten() {
            pairs.push((k.as_str(), parse_in(ring, v, &format!("involution.{k}"))?));
        }
        Ok(Involution::from_named(ring, &pairs)?)
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::SpecInvalid(msg.into())
}

pub fn parse_in(ring: &Ring, text: &str, what: &str) -> Result<RingElem, CliError> {
    parse_expression(ring, text).map_err(|e| invalid(format!("{what}: {e}")))
}

fn build_base(b: &BaseSpec) -> Result<Ring, CliError> {
    let field = match (b.field.as_str(), b.p) {
        ("Q", None) => Field::Q,
        ("Fp", Some(p)) => Field::fp(p)?,
        ("Fp", None) => return Err(invalid("field = \"Fp\" needs p")),
        ("Q", Some(_)) => return Err(invalid("p is only allowed with field = \"Fp\"")),
        (f, _) => return Err(invalid(format!("unknown field '{f}'"))),
    };
    let vars: Vec<&str> = b.vars.iter().map(String::as_str).collect();
    let mut ring = if b.laurent { Ring::laurent(field, &vars)? } else { Ring::poly(field, &vars)? };
    for s in &b.skew {
        let twist = named_endo(&ring, &s.twist, &format!("skew {}", s.var))?;
        ring = Ring::skew(&ring, &s.var, &twist)?;
    }
    Ok(ring)
}

fn named_endo(ring: &Ring, images: &BTreeMap<String, String>, what: &str) -> Result<RingEndo, CliError> {
    let mut pairs = Vec::new();
    for (g, v) in images {
        if ring.generator_index(g).is_none() {
            return Err(invalid(format!("{what}: unknown generator '{g}'")));
        }
        pairs.push((g.as_str(), parse_in(ring, v, &format!("{what}.{g}"))?));
    }
    RingEndo::from_named(ring, &pairs).map_err(|e| invalid(format!("{what}: {e}")))
}

fn endo_ref<'a>(endos: &'a BTreeMap<String, RingEndo>, name: &str) -> Result<&'a RingEndo, CliError> {
    endos.get(name).ok_or_else(|| invalid(format!("unknown endomorphism '{name}'")))
}

fn half(ring: &Ring, n: usize, m: &BTreeMap<String, String>, what: &str) -> Result<HalfMatrix, CliError> {
    let mut out = HalfMatrix::ones(ring, n);
    for (k, v) in m {
        let (i, j) = k
            .split_once(',')
            .and_then(|(i, j)| Some((i.trim().parse::<usize>().ok()?, j.trim().parse::<usize>().ok()?)))
            .filter(|&(i, j)| j >= 1 && j < i && i <= n)
            .ok_or_else(|| invalid(format!("{what}: key '{k}' is not \"i,j\" with n >= i > j >= 1")))?;
        out.set(i - 1, j - 1, parse_in(ring, v, &format!("{what}.{k}"))?);
    }
    Ok(out)
}

impl AlgebraSpec {
    pub fn from_toml(text: &str) -> Result<AlgebraSpec, CliError> {
        toml::from_str(text).map_err(|e| invalid(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<AlgebraSpec, CliError> {
        let text = std::fs::read_to_string(path).map_err(|_| CliError::FileNotFound(path.display().to_string()))?;
        AlgebraSpec::from_toml(&text)
    }

    pub fn build(&self) -> Result<Loaded, CliError> {
        let base = build_base(&self.base)?;
        let mut endos = BTreeMap::new();
        for (name, images) in &self.endos {
            endos.insert(name.clone(), named_endo(&base, images, &format!("endo.{name}"))?);
        }
        let sections = [self.gwa.is_some(), self.dpr.is_some(), self.rankn.is_some()].iter().filter(|b| **b).count();
        if sections != 1 {
            return Err(invalid("exactly one of [gwa], [dpr], [rankn] is required"));
        }
        let algebra = if let Some(g) = &self.gwa {
            let a = parse_in(&base, &g.a, "gwa.a")?;
            let data = GwaData::new(&base, endo_ref(&endos, &g.sigma)?, endo_ref(&endos, &g.tau)?, &a)?;
            Algebra::Gwa(Gwa::new(&data, &g.x, &g.y)?)
        } else if let Some(d) = &self.dpr {
            let b = parse_in(&base, &d.b, "dpr.b")?;
            let rho = parse_in(&base, &d.rho, "dpr.rho")?;
            let data = DprData::new(&base, endo_ref(&endos, &d.sigma)?, endo_ref(&endos, &d.tau)?, &b, &rho)?;
            let dpr = Dpr::new(&data, &d.x, &d.y)?;
            let image = if data.rho_inverse.is_some() { Some(Box::new(dpr.to_gwa(&d.h)?)) } else { None };
            Algebra::Dpr { dpr, image }
        } else {
            let r = self.rankn.as_ref().unwrap();
            let elems = |xs: &[String], what: &str| -> Result<Vec<RingElem>, CliError> {
                xs.iter().enumerate().map(|(i, s)| parse_in(&base, s, &format!("rankn.{what}[{}]", i + 1))).collect()
            };
            let maps = |xs: &[String]| -> Result<Vec<RingEndo>, CliError> {
                xs.iter().map(|s| endo_ref(&endos, s).cloned()).collect()
            };
            if !r.theta.is_empty() {
                let data = build_from_theta(&maps(&r.theta)?, &elems(&r.alpha, "alpha")?, &elems(&r.beta, "beta")?)?;
                Algebra::RankN(data)
            } else {
                let n = r.a.len();
                if r.sigma.len() != n || r.tau.len() != n || n == 0 {
                    return Err(invalid("rankn: sigma, tau and a must have the same positive length"));
                }
                Algebra::RankN(RankNData {
                    base: base.clone(),
                    sigma: maps(&r.sigma)?,
                    tau: maps(&r.tau)?,
                    a: elems(&r.a, "a")?,
                    lambda: half(&base, n, &r.lambda, "rankn.lambda")?,
                    lambda_p: half(&base, n, &r.lambda_p, "rankn.lambda_p")?,
                    mu: half(&base, n, &r.mu, "rankn.mu")?,
                    mu_p: half(&base, n, &r.mu_p, "rankn.mu_p")?,
                })
            }
        };
        Ok(Loaded { spec: self.clone(), base, endos, algebra })
    }
}
