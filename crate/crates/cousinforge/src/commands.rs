//! Every operation the tool exposes, as plain data so that the command line
//! and task files share one execution path.

use std::path::PathBuf;

use cousinforge_core::arcs::{tangent_divisor, tangent_zero_cycle, DivisorArc, ZeroCycleArc};
use cousinforge_core::cyclic::{
    pattern_hc, pattern_hc_eigen, pattern_hn, pattern_hn_eigen, AlgebraSpec, BaseRing,
    CyclicEngine, RankRecord, Theory,
};
use cousinforge_core::exactpoly::{
    buchberger, ideal_member, parse_rational, MonomialOrder, Polynomial, Rational, Vars,
};
use cousinforge_core::gersten::{
    check_square, cousin_boundary, tame_symbol, weil_reciprocity, BoundarySign, Place,
    RationalFunction,
};
use cousinforge_core::localcoh::{h1_is_zero, h2_is_zero, H1Class};
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::cache::Cache;
use crate::verify::{self, Suite};
use crate::{CliError, CliResult};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderName {
    Lex,
    #[default]
    Grevlex,
}

impl OrderName {
    pub fn order(self) -> MonomialOrder {
        match self {
            OrderName::Lex => MonomialOrder::lex(),
            OrderName::Grevlex => MonomialOrder::grevlex(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignName {
    #[default]
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl SignName {
    pub fn parse(s: &str) -> CliResult<Self> {
        match s {
            "+" => Ok(SignName::Plus),
            "-" => Ok(SignName::Minus),
            _ => Err(CliError::Usage(format!(
                "boundary sign must be + or -, got '{s}'"
            ))),
        }
    }

    fn sign(self) -> BoundarySign {
        match self {
            SignName::Plus => BoundarySign::Plus,
            SignName::Minus => BoundarySign::Minus,
        }
    }
}

/// Global knobs shared by every command of a run.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Settings {
    #[serde(default)]
    pub order: OrderName,
    /// Power bound for the radical certificate behind Cousin boundaries.
    #[serde(default)]
    pub max_degree: Option<u32>,
    #[serde(default)]
    pub boundary_sign: SignName,
    #[serde(default)]
    pub cache_dir: Option<PathBuf>,
}

fn default_thick() -> u32 {
    1
}

fn default_seed() -> u64 {
    verify::DEFAULT_SEED
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Command {
    TangentDivisor {
        f: String,
        f1: String,
        g: String,
        g1: String,
    },
    TangentCycle {
        u: String,
        v: String,
        u1: String,
        v1: String,
    },
    Boundary {
        class: String,
        point: String,
        #[serde(default, rename = "power-bound")]
        power_bound: Option<u32>,
    },
    CheckSquare {
        f: String,
        f1: String,
        g: String,
        g1: String,
        point: String,
        #[serde(default = "default_seed")]
        seed: u64,
    },
    Tame {
        place: String,
        f: String,
        g: String,
    },
    Reciprocity {
        f: String,
        g: String,
    },
    Gb {
        generators: Vec<String>,
        #[serde(default = "default_vars")]
        vars: String,
        #[serde(default)]
        member: Option<String>,
    },
    CyclicRank {
        theory: String,
        base: String,
        #[serde(default = "default_thick")]
        thick: u32,
        n: usize,
        d: usize,
    },
    CyclicEigen {
        theory: String,
        base: String,
        #[serde(default = "default_thick")]
        thick: u32,
        n: usize,
        d: usize,
        i: usize,
    },
    CyclicThickening {
        base: String,
        j: u32,
        #[serde(rename = "max-n")]
        max_n: usize,
        #[serde(rename = "max-d")]
        max_d: usize,
    },
    Verify {
        #[serde(default)]
        suite: Suite,
        #[serde(default = "default_seed")]
        seed: u64,
    },
}

fn default_vars() -> String {
    "x,y".into()
}

/// Result of one command. `record` and `human` carry the same values.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub record: Value,
    pub human: String,
    /// `false` for a negative answer (exit status 1).
    pub truth: bool,
}

fn surface() -> Vars {
    Vars::xy()
}

fn poly(src: &str, vars: Vars) -> CliResult<Polynomial> {
    Ok(Polynomial::parse(src, vars)?)
}

pub fn parse_point(src: &str) -> CliResult<Vec<Rational>> {
    src.split(',')
        .map(|s| parse_rational(s.trim()).map_err(CliError::from))
        .collect()
}

fn parse_vars(src: &str) -> CliResult<Vars> {
    let compact: String = src.chars().filter(|c| c.is_ascii_alphabetic()).collect();
    Ok(Vars::new(&compact)?)
}

fn algebra(base: &str, thick: u32) -> CliResult<AlgebraSpec> {
    Ok(AlgebraSpec::new(BaseRing::parse(base)?, thick)?)
}

/// Record with an explicit `command` tag first, then `fields` in order.
fn record(command: &str, fields: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    for (k, v) in fields {
        m.insert(k.into(), v);
    }
    Value::Object(m)
}

/// `key: value` lines for the scalar fields of a record.
fn human_lines(rec: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(m) = rec {
        for (k, v) in m {
            if k == "command" {
                continue;
            }
            let text = match v {
                Value::String(s) => s.clone(),
                Value::Null => "-".into(),
                Value::Array(items) => items
                    .iter()
                    .map(|i| match i {
                        Value::String(s) => format!("\n  {s}"),
                        other => format!("\n  {other}"),
                    })
                    .collect(),
                other => other.to_string(),
            };
            let sep = if text.starts_with('\n') { ":" } else { ": " };
            out.push_str(&format!("{k}{sep}{text}\n"));
        }
    }
    out
}

fn plain(command: &str, fields: Vec<(&str, Value)>, truth: bool) -> Outcome {
    let rec = record(command, fields);
    let human = human_lines(&rec);
    Outcome {
        record: rec,
        human,
        truth,
    }
}

pub fn rank_record_json(r: &RankRecord) -> Value {
    json!({
        "theory": r.theory.to_string(),
        "base": r.base.to_string(),
        "j": r.j,
        "n": r.n,
        "d": r.d,
        "i": r.i,
        "computed": r.computed,
        "predicted": r.predicted,
        "source": r.source,
    })
}

pub fn rank_table(rows: &[RankRecord]) -> String {
    let mut out = format!(
        "{:<7}{:<8}{:<3}{:<3}{:<3}{:<3}{:>9}{:>10}  {}\n",
        "theory", "base", "j", "n", "d", "i", "computed", "predicted", "source"
    );
    for r in rows {
        let i = r.i.map_or("-".into(), |i| i.to_string());
        let p = r.predicted.map_or("-".into(), |p| p.to_string());
        let mark = if r.agrees() { "" } else { "  MISMATCH" };
        out.push_str(&format!(
            "{:<7}{:<8}{:<3}{:<3}{:<3}{:<3}{:>9}{:>10}  {}{}\n",
            r.theory.to_string(),
            r.base.to_string(),
            r.j,
            r.n,
            r.d,
            i,
            r.computed,
            p,
            r.source,
            mark
        ));
    }
    out
}

fn prediction(
    alg: &AlgebraSpec,
    theory: Theory,
    n: usize,
    d: usize,
    i: Option<usize>,
) -> (Option<u64>, &'static str) {
    let nv = alg.num_vars();
    let (n, i) = (n as i64, i.map(|i| i as i64));
    let base = match (theory, i) {
        (Theory::HC, None) => Some(pattern_hc(nv, n, d)),
        (Theory::HN, None) => Some(pattern_hn(nv, n, d)),
        (Theory::HC, Some(i)) => Some(pattern_hc_eigen(nv, n, d, i)),
        (Theory::HN, Some(i)) => Some(pattern_hn_eigen(nv, n, d, i)),
        (Theory::HH, _) => None,
    };
    match base {
        None => (None, "engine"),
        Some(p) if alg.j == 1 => (Some(p), "forms pattern"),
        Some(p) => (
            Some(p * u64::from(alg.j)),
            "j copies of the forms pattern (exploratory)",
        ),
    }
}

fn cyclic_record(
    alg: &AlgebraSpec,
    theory: Theory,
    n: usize,
    d: usize,
    i: Option<usize>,
    cache: &Cache,
) -> CliResult<RankRecord> {
    let key = format!(
        "cyclic-{}-j{}-{}-n{n}-d{d}-i{}",
        alg.base,
        alg.j,
        theory,
        i.map_or("all".into(), |i| i.to_string())
    );
    let computed = match cache.get(&key).and_then(|v| v.as_u64()) {
        Some(c) => c,
        None => {
            let mut eng = CyclicEngine::new(*alg);
            let c = match i {
                None => eng.rank(theory, n, d)?,
                Some(i) => eng.eigen_rank(theory, n, d, i)?,
            };
            cache.put(&key, &json!(c));
            c
        }
    };
    let (predicted, source) = prediction(alg, theory, n, d, i);
    Ok(RankRecord {
        theory,
        base: alg.base,
        j: alg.j,
        n,
        d,
        i,
        computed,
        predicted,
        source,
    })
}

fn cyclic_outcome(command: &str, rows: Vec<RankRecord>, gate: bool) -> Outcome {
    let truth = !gate || rows.iter().all(RankRecord::agrees);
    let records: Vec<Value> = rows.iter().map(rank_record_json).collect();
    let rec = record(command, vec![("records", Value::Array(records))]);
    Outcome {
        record: rec,
        human: rank_table(&rows),
        truth,
    }
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::TangentDivisor { .. } => "tangent-divisor",
            Command::TangentCycle { .. } => "tangent-cycle",
            Command::Boundary { .. } => "boundary",
            Command::CheckSquare { .. } => "check-square",
            Command::Tame { .. } => "tame",
            Command::Reciprocity { .. } => "reciprocity",
            Command::Gb { .. } => "gb",
            Command::CyclicRank { .. } => "cyclic-rank",
            Command::CyclicEigen { .. } => "cyclic-eigen",
            Command::CyclicThickening { .. } => "cyclic-thickening",
            Command::Verify { .. } => "verify",
        }
    }

    pub fn execute(&self, settings: &Settings, cache: &Cache) -> CliResult<Outcome> {
        let name = self.name();
        match self {
            Command::TangentDivisor { f, f1, g, g1 } => {
                let v = surface();
                let arc = DivisorArc::new(poly(f, v)?, poly(f1, v)?, poly(g, v)?, poly(g1, v)?)?;
                let c = tangent_divisor(&arc)?;
                Ok(plain(
                    name,
                    vec![
                        ("class", json!(c.to_string())),
                        ("zero", json!(h1_is_zero(&c))),
                    ],
                    true,
                ))
            }
            Command::TangentCycle { u, v: vv, u1, v1 } => {
                let v = surface();
                let arc = ZeroCycleArc::new(poly(u, v)?, poly(vv, v)?, poly(u1, v)?, poly(v1, v)?)?;
                let c = tangent_zero_cycle(&arc)?;
                let zero = h2_is_zero(&c)?;
                Ok(plain(
                    name,
                    vec![("class", json!(c.to_string())), ("zero", json!(zero))],
                    true,
                ))
            }
            Command::Boundary {
                class,
                point,
                power_bound,
            } => {
                let c = H1Class::parse(class, surface())?;
                let pt = parse_point(point)?;
                let bound = power_bound.or(settings.max_degree);
                let b = cousin_boundary(&c, &pt, bound, settings.boundary_sign.sign())?;
                let zero = h2_is_zero(&b)?;
                Ok(plain(
                    name,
                    vec![("boundary", json!(b.to_string())), ("zero", json!(zero))],
                    true,
                ))
            }
            Command::CheckSquare {
                f,
                f1,
                g,
                g1,
                point,
                seed,
            } => {
                let v = surface();
                let arc = DivisorArc::new(poly(f, v)?, poly(f1, v)?, poly(g, v)?, poly(g1, v)?)?;
                let pt = parse_point(point)?;
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let r = check_square(&arc, &pt, settings.boundary_sign.sign(), &mut rng)?;
                Ok(plain(
                    name,
                    vec![
                        ("commutes", json!(r.commutes)),
                        ("boundary", json!(r.boundary.to_string())),
                        ("cycle-tangent", json!(r.cycle_tangent.to_string())),
                    ],
                    r.commutes,
                ))
            }
            Command::Tame { place, f, g } => {
                let p = Place::parse(place)?;
                let s = tame_symbol(
                    &p,
                    &RationalFunction::parse(f)?,
                    &RationalFunction::parse(g)?,
                )?;
                let rec = record(name, vec![("symbol", json!(s.to_string()))]);
                Ok(Outcome {
                    record: rec,
                    human: format!("{s}\n"),
                    truth: true,
                })
            }
            Command::Reciprocity { f, g } => {
                let p =
                    weil_reciprocity(&RationalFunction::parse(f)?, &RationalFunction::parse(g)?)?;
                let holds = p.is_one();
                let rec = record(
                    name,
                    vec![("product", json!(p.to_string())), ("holds", json!(holds))],
                );
                Ok(Outcome {
                    record: rec,
                    human: format!("{p}\n"),
                    truth: holds,
                })
            }
            Command::Gb {
                generators,
                vars,
                member,
            } => {
                let v = parse_vars(vars)?;
                let gens = generators
                    .iter()
                    .map(|g| poly(g, v))
                    .collect::<CliResult<Vec<_>>>()?;
                let gb = buchberger(&gens, settings.order.order())?;
                let basis: Vec<Value> = gb
                    .generators()
                    .iter()
                    .map(|g| json!(g.to_string()))
                    .collect();
                let mut fields = vec![
                    (
                        "order",
                        json!(format!("{:?}", settings.order).to_lowercase()),
                    ),
                    ("basis", Value::Array(basis)),
                ];
                let mut truth = true;
                if let Some(m) = member {
                    let is = ideal_member(&poly(m, v)?, &gb);
                    fields.push(("member", json!(is)));
                    truth = is;
                }
                Ok(plain(name, fields, truth))
            }
            Command::CyclicRank {
                theory,
                base,
                thick,
                n,
                d,
            } => {
                let alg = algebra(base, *thick)?;
                let row = cyclic_record(&alg, Theory::parse(theory)?, *n, *d, None, cache)?;
                Ok(cyclic_outcome(name, vec![row], false))
            }
            Command::CyclicEigen {
                theory,
                base,
                thick,
                n,
                d,
                i,
            } => {
                let alg = algebra(base, *thick)?;
                let row = cyclic_record(&alg, Theory::parse(theory)?, *n, *d, Some(*i), cache)?;
                Ok(cyclic_outcome(name, vec![row], false))
            }
            Command::CyclicThickening {
                base,
                j,
                max_n,
                max_d,
            } => {
                let alg = algebra(base, *j)?;
                let rows = CyclicEngine::new(alg).thickening_report(*max_n, *max_d)?;
                Ok(cyclic_outcome(name, rows, false))
            }
            Command::Verify { suite, seed } => {
                let report = verify::run(*suite, *seed);
                Ok(Outcome {
                    record: record(name, vec![("report", report.to_json())]),
                    human: report.render(),
                    truth: report.passed(),
                })
            }
        }
    }
}
