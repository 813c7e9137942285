//! Subcommands and their JSON reports.

use clap::Subcommand;
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};
use weylkit_core::dpr::{alpha_solver, charp_normal_search, normal_element_from_alpha, roundtrip_check};
use weylkit_core::padic::{lucas_binomial, p_neighbour, v_p};
use weylkit_core::rankn::{verify_rankn, RankN};
use weylkit_core::sample::{random_elem, SampleParams};
use weylkit_core::simplicity::{dpr_simple, gwa_simple, Bounds, SimplicityReport};
use weylkit_core::{gwa, ValidationReport};

use crate::error::CliError;
use crate::expr::parse_expression;
use crate::spec::{parse_in, Algebra, Loaded};

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check the defining identities of the algebra data.
    Verify,
    /// Multiply two expressions in the algebra.
    Mul { left: String, right: String },
    /// Normal form of a word or expression.
    NormalForm { word: String },
    /// Table of structure constants (n, m) for |n|, |m| <= N.
    StructureConstants {
        #[arg(long, default_value_t = 3)]
        range: i64,
    },
    /// The GWA presentation of a DPR.
    ToGwa,
    /// Compare products on both sides of the DPR -> GWA isomorphism.
    Roundtrip {
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// The coefficients of sigma^i(h) = a_i h + b_i.
    BiTable {
        #[arg(long, default_value_t = 8)]
        max: u64,
    },
    /// Solve rho*alpha - sigma(alpha) = b.
    AlphaSolve,
    /// The normal element C = h + alpha and its identities.
    NormalElement {
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Simplicity verdict with witnesses.
    Simplicity {
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long)]
        charp_n: Option<u32>,
    },
    /// Iterate I -> I' on an ideal of the base ring.
    Iprime {
        #[arg(long = "ideal", required = true)]
        ideal: Vec<String>,
        #[arg(long, default_value_t = 1)]
        depth: u64,
    },
    /// Binomial coefficient C(n, m) mod p.
    Lucas { n: BigUint, m: BigUint, p: u64 },
    /// The p-adic neighbour of n.
    Neighbour { n: BigUint, p: u64 },
    /// Lowest nonzero base-p digit position of n.
    Vp { n: BigUint, p: u64 },
    /// Check the involution conditions and the extended star map.
    InvolutionCheck {
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Mul { .. } => "mul",
            Command::NormalForm { .. } => "normal-form",
            Command::StructureConstants { .. } => "structure-constants",
            Command::ToGwa => "to-gwa",
            Command::Roundtrip { .. } => "roundtrip",
            Command::BiTable { .. } => "bi-table",
            Command::AlphaSolve => "alpha-solve",
            Command::NormalElement { .. } => "normal-element",
            Command::Simplicity { .. } => "simplicity",
            Command::Iprime { .. } => "iprime",
            Command::Lucas { .. } => "lucas",
            Command::Neighbour { .. } => "neighbour",
            Command::Vp { .. } => "vp",
            Command::InvolutionCheck { .. } => "involution-check",
        }
    }

    pub fn needs_spec(&self) -> bool {
        !matches!(self, Command::Lucas { .. } | Command::Neighbour { .. } | Command::Vp { .. })
    }

    fn args(&self) -> Value {
        match self {
            Command::Mul { left, right } => json!({ "left": left, "right": right }),
            Command::NormalForm { word } => json!({ "word": word }),
            Command::StructureConstants { range } => json!({ "range": range }),
            Command::Roundtrip { samples } | Command::InvolutionCheck { samples } => json!({ "samples": samples }),
            Command::BiTable { max } => json!({ "max": max }),
            Command::NormalElement { alpha } => json!({ "alpha": alpha }),
            Command::Simplicity { bound, charp_n } => json!({ "bound": bound, "charp_n": charp_n }),
            Command::Iprime { ideal, depth } => json!({ "ideal": ideal, "depth": depth }),
            Command::Lucas { n, m, p } => json!({ "n": n.to_string(), "m": m.to_string(), "p": p }),
            Command::Neighbour { n, p } | Command::Vp { n, p } => json!({ "n": n.to_string(), "p": p }),
            Command::Verify | Command::ToGwa | Command::AlphaSolve => json!({}),
        }
    }
}

pub fn checks_json(rep: &ValidationReport) -> Value {
    Value::Array(
        rep.checks
            .iter()
            .map(|c| json!({ "name": c.name, "status": c.status.as_str(), "witness": c.witness }))
            .collect(),
    )
}

fn report_json(rep: &ValidationReport) -> Value {
    json!({ "all_pass": rep.all_pass(), "checks": checks_json(rep) })
}

pub fn simplicity_json(r: &SimplicityReport) -> Value {
    let w = |w: &weylkit_core::simplicity::Witness| {
        json!({ "condition": w.condition, "index": w.index, "element": w.element, "detail": w.detail })
    };
    json!({
        "verdict": r.verdict.as_str(),
        "witness": r.witness.as_ref().map(w),
        "conditions": r.conditions.iter().map(|c| json!({
            "id": c.id,
            "description": c.description,
            "status": c.status.as_str(),
            "witness": c.witness.as_ref().map(w),
            "note": c.note,
        })).collect::<Vec<_>>(),
        "bounds": {
            "b_units": r.bounds.b_units,
            "charp_n": r.bounds.charp_n,
            "gcd_factor": r.bounds.gcd_factor,
            "powers": r.bounds.powers,
        },
    })
}

fn s<T: ToString>(x: &T) -> Value {
    Value::String(x.to_string())
}

/// Runs `cmd`; `loaded` is required unless the command is purely numeric.
pub fn run_command(loaded: Option<&Loaded>, cmd: &Command) -> Result<Value, CliError> {
    let mut report = Map::new();
    report.insert("command".into(), json!(cmd.name()));
    let mut inputs = Map::new();
    if let Some(l) = loaded {
        inputs.insert("spec".into(), json!(l.spec.name));
    }
    inputs.insert("args".into(), cmd.args());
    report.insert("inputs".into(), Value::Object(inputs));
    let result = match (cmd.needs_spec(), loaded) {
        (true, None) => return Err(CliError::SpecInvalid("this command needs --spec or --preset".into())),
        (true, Some(l)) => run_with_spec(l, cmd)?,
        (false, _) => run_numeric(cmd)?,
    };
    report.insert("result".into(), result);
    Ok(Value::Object(report))
}

fn run_numeric(cmd: &Command) -> Result<Value, CliError> {
    Ok(match cmd {
        Command::Lucas { n, m, p } => json!({ "value": s(&lucas_binomial(n, m, *p)?) }),
        Command::Neighbour { n, p } => json!({ "neighbour": s(&p_neighbour(n, *p)?) }),
        Command::Vp { n, p } => json!({ "v_p": v_p(n, *p)? }),
        _ => unreachable!(),
    })
}

fn run_with_spec(l: &Loaded, cmd: &Command) -> Result<Value, CliError> {
    match cmd {
        Command::Verify => verify(l),
        Command::Mul { left, right } => {
            let ring = l.ring()?;
            let a = parse_expression(&ring, left)?;
            let b = parse_expression(&ring, right)?;
            Ok(json!({ "left": s(&a), "right": s(&b), "product": s(&(&a * &b)) }))
        }
        Command::NormalForm { word } => {
            let ring = l.ring()?;
            let e = parse_expression(&ring, word)?;
            let mut out = Map::new();
            out.insert("normal_form".into(), s(&e));
            if let Ok(g) = l.gwa() {
                if e.ring() == g.ring() {
                    out.insert("support".into(), json!(g.support(&e)));
                }
            }
            if let Algebra::RankN(d) = &l.algebra {
                let r = RankN::new(d)?;
                let terms = r.to_monomials(&e)?;
                out.insert(
                    "monomials".into(),
                    Value::Array(terms.iter().map(|m| json!({ "degree": m.degree, "coeff": s(&m.coeff) })).collect()),
                );
            }
            Ok(Value::Object(out))
        }
        Command::StructureConstants { range } => {
            let g = l.gwa()?;
            let mut rows = Vec::new();
            for n in -range..=*range {
                for m in -range..=*range {
                    rows.push(json!({ "n": n, "m": m, "value": s(&g.structure_constant(n, m)) }));
                }
            }
            Ok(json!({ "range": range, "constants": rows }))
        }
        Command::ToGwa => {
            let Algebra::Dpr { image: Some(img), .. } = &l.algebra else {
                return Err(CliError::SpecInvalid("to-gwa needs a [dpr] section with rho a unit".into()));
            };
            Ok(json!({
                "base": img.dcal.describe(),
                "sigma": img.sigma().describe(),
                "tau": img.tau().describe(),
                "a": s(&img.gwa.data().a),
                "checks": report_json(&img.report),
            }))
        }
        Command::Roundtrip { samples } => {
            let dpr = l.dpr()?;
            Ok(json!({ "samples": samples, "passed": roundtrip_check(dpr, *samples)? }))
        }
        Command::BiTable { max } => {
            let dpr = l.dpr()?;
            let rows: Vec<Value> = dpr
                .sigma_power_coeffs(*max)
                .iter()
                .enumerate()
                .map(|(i, (a, b))| json!({ "i": i + 1, "a": s(a), "b": s(b) }))
                .collect();
            Ok(json!({ "rows": rows }))
        }
        Command::AlphaSolve => {
            let dpr = l.dpr()?;
            let alpha = alpha_solver(dpr.data())?;
            let mut out = Map::new();
            out.insert("alpha".into(), alpha.as_ref().map(s).unwrap_or(Value::Null));
            if alpha.is_none() && dpr.data().base.characteristic() != 0 {
                let sol = charp_normal_search(dpr, Bounds::default().charp_n)?;
                out.insert(
                    "charp".into(),
                    sol.map(|c| json!({ "n": c.n, "element": s(&c.element), "verified": c.verified })).unwrap_or(Value::Null),
                );
            }
            Ok(Value::Object(out))
        }
        Command::NormalElement { alpha } => {
            let dpr = l.dpr()?;
            let alpha = match alpha {
                Some(t) => Some(parse_in(&dpr.data().base, t, "--alpha")?),
                None => alpha_solver(dpr.data())?,
            };
            let Some(alpha) = alpha else {
                return Ok(json!({ "alpha": null }));
            };
            let ne = normal_element_from_alpha(dpr, &alpha)?;
            Ok(json!({
                "alpha": s(&ne.alpha),
                "c_dpr": s(&ne.c_dpr),
                "c_gwa": s(&ne.c_gwa),
                "central": ne.central,
                "checks": report_json(&ne.report),
            }))
        }
        Command::Simplicity { bound, charp_n } => {
            let mut b = Bounds::default();
            if let Some(n) = bound {
                b.b_units = *n;
                b.powers = *n;
            }
            if let Some(n) = charp_n {
                b.charp_n = *n;
            }
            match &l.algebra {
                Algebra::Gwa(g) => {
                    let r = gwa_simple(g.data(), b)?;
                    let sym = gwa_simple(&g.data().symmetric(), b)?;
                    let mut v = simplicity_json(&r);
                    v["symmetric_verdict"] = json!(sym.verdict.as_str());
                    Ok(v)
                }
                Algebra::Dpr { dpr, .. } => Ok(simplicity_json(&dpr_simple(dpr, b)?)),
                Algebra::RankN(_) => Err(CliError::SpecInvalid("no simplicity criterion for rank n".into())),
            }
        }
        Command::Iprime { ideal, depth } => {
            let g = l.gwa()?;
            let gens =
                ideal.iter().map(|t| parse_in(g.base(), t, "--ideal")).collect::<Result<Vec<_>, _>>()?;
            let out = g.iprime_step(&gens, *depth)?;
            Ok(json!({ "generators": out.iter().map(s).collect::<Vec<_>>() }))
        }
        Command::InvolutionCheck { samples } => {
            let g = l.gwa()?;
            let inv = match l.involution() {
                Ok(inv) => inv,
                Err(CliError::Algebra(e)) => return Ok(json!({ "involution": null, "reason": e.to_string() })),
                Err(e) => return Err(e),
            };
            let rep = gwa::check_involution_conditions(g.data(), &inv);
            let mut out = Map::new();
            out.insert("checks".into(), report_json(&rep));
            if rep.all_pass() {
                let star = g.star(&inv)?;
                let mut rng = ChaCha8Rng::seed_from_u64(0x1ab0);
                let params = SampleParams::default();
                let (mut anti, mut invol) = (true, true);
                for _ in 0..*samples {
                    let u = random_elem(g.ring(), &mut rng, &params);
                    let v = random_elem(g.ring(), &mut rng, &params);
                    anti &= star.apply(&(&u * &v))? == &star.apply(&v)? * &star.apply(&u)?;
                    invol &= star.apply(&star.apply(&u)?)? == u;
                }
                out.insert("samples".into(), json!(samples));
                out.insert("antimultiplicative".into(), json!(anti));
                out.insert("involutive".into(), json!(invol));
            }
            Ok(Value::Object(out))
        }
        Command::Lucas { .. } | Command::Neighbour { .. } | Command::Vp { .. } => run_numeric(cmd),
    }
}

fn verify(l: &Loaded) -> Result<Value, CliError> {
    Ok(match &l.algebra {
        Algebra::Gwa(g) => json!({ "kind": "gwa", "report": report_json(&gwa::verify_gwa_data(g.data())) }),
        Algebra::Dpr { dpr, image } => {
            let mut rep = dpr.verify();
            if let Ok(b) = dpr.beta_invariants() {
                rep.extend(b);
            }
            let mut v = json!({ "kind": "dpr", "report": report_json(&rep) });
            if let Some(img) = image {
                v["gwa_image"] = report_json(&img.report);
            }
            v
        }
        Algebra::RankN(d) => json!({ "kind": "rankn", "rank": d.rank(), "report": report_json(&verify_rankn(d)) }),
    })
}
