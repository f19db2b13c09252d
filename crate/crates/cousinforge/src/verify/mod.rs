//! The certification battery: one gated criterion per checked statement,
//! plus an exploratory report that never gates.

pub mod instances;
pub mod oracles;

use std::collections::BTreeMap;
use std::fmt::Write;

use cousinforge_core::cyclic::{
    pattern_hc, pattern_hc_eigen, pattern_hn, AlgebraSpec, BaseRing, CyclicEngine, Theory,
};
use cousinforge_core::exactpoly::{buchberger, ideal_member, rat, MonomialOrder};
use cousinforge_core::gersten::{check_square, weil_reciprocity, BoundarySign};
use cousinforge_core::localcoh::{h2_equal, h2_is_zero, inverse_system_normal_form};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const DEFAULT_SEED: u64 = 41;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    #[default]
    All,
    S41,
    Gersten,
    Localcoh,
    Exactpoly,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "all" => Suite::All,
            "s41" => Suite::S41,
            "gersten" => Suite::Gersten,
            "localcoh" => Suite::Localcoh,
            "exactpoly" => Suite::Exactpoly,
            _ => return None,
        })
    }

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

#[derive(Clone, Debug)]
pub struct Criterion {
    pub name: &'static str,
    /// Exploratory criteria are reported but never fail the battery.
    pub gated: bool,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub criteria: Vec<Criterion>,
    /// Verbatim lines from exploratory checks.
    pub notes: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed || !c.gated)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.criteria {
            let tag = match (c.gated, c.passed) {
                (true, true) => "PASS",
                (true, false) => "FAIL",
                (false, _) => "INFO",
            };
            let _ = writeln!(out, "{tag} {}: {}", c.name, c.detail);
        }
        for n in &self.notes {
            let _ = writeln!(out, "  {n}");
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "criteria": self.criteria.iter().map(|c| json!({
                "name": c.name,
                "gated": c.gated,
                "passed": c.passed,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }
}

/// Collects mismatches and renders a one-line summary.
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn criterion(self, name: &'static str, unit: &str) -> Criterion {
        let mut detail = format!(
            "{} {unit}, {} mismatches",
            self.checked,
            self.failures.len()
        );
        if let Some(first) = self.failures.first() {
            let _ = write!(detail, " (first: {first})");
        }
        Criterion {
            name,
            gated: true,
            passed: self.failures.is_empty() && self.checked > 0,
            detail,
        }
    }
}

fn err_string(e: cousinforge_core::Error) -> String {
    format!("error: {e}")
}

pub fn run(suite: Suite, seed: u64) -> Report {
    let mut report = Report::default();
    if suite.includes(Suite::S41) {
        cyclic_battery(&mut report);
    }
    if suite.includes(Suite::Gersten) {
        report.criteria.push(tangent_square(seed));
    }
    if suite.includes(Suite::Localcoh) {
        report.criteria.push(local_cohomology_oracle(seed));
    }
    if suite.includes(Suite::Exactpoly) {
        report.criteria.push(groebner_oracle(seed));
    }
    if suite.includes(Suite::Gersten) {
        report.criteria.push(reciprocity(seed));
    }
    if suite.includes(Suite::S41) {
        thickening(&mut report);
    }
    report
}

const BASES: [BaseRing; 3] = [BaseRing::Q, BaseRing::Qx, BaseRing::Qxy];

fn top_degree(base: BaseRing) -> usize {
    if base == BaseRing::Qxy {
        3
    } else {
        4
    }
}

fn cyclic_battery(report: &mut Report) {
    let mut engines: BTreeMap<BaseRing, CyclicEngine> = BASES
        .iter()
        .map(|b| (*b, CyclicEngine::new(AlgebraSpec::dual_numbers(*b))))
        .collect();

    let mut totals = Tally::new();
    let mut smap = Tally::new();
    for (base, eng) in engines.iter_mut() {
        let nv = base.num_vars();
        for n in 0..=top_degree(*base) {
            for d in 0..=3 {
                let hc = eng.hc_rank(n, d).map_err(err_string);
                let want = pattern_hc(nv, n as i64, d);
                totals.check(hc == Ok(want), || {
                    format!("HC {base} n={n} d={d}: {hc:?} vs {want}")
                });
                let hn = eng.hn_rank(n, d).map_err(err_string);
                let want = pattern_hn(nv, n as i64, d);
                totals.check(hn == Ok(want), || {
                    format!("HN {base} n={n} d={d}: {hn:?} vs {want}")
                });
                let s = eng.s_map_matrix(n, d).map_err(err_string);
                smap.check(s.as_ref().is_ok_and(|m| m.is_zero()), || {
                    format!("S {base} n={n} d={d}: {s:?}")
                });
            }
        }
    }

    let mut eigen = Tally::new();
    for base in [BaseRing::Q, BaseRing::Qx] {
        let eng = engines.get_mut(&base).unwrap();
        let nv = base.num_vars();
        for n in 0..=3 {
            for d in 0..=3 {
                let mut sum = 0;
                for i in 0..=n {
                    let r = eng.eigen_rank(Theory::HC, n, d, i).map_err(err_string);
                    let want = pattern_hc_eigen(nv, n as i64, d, i as i64);
                    eigen.check(r == Ok(want), || {
                        format!("HC {base} n={n} d={d} i={i}: {r:?} vs {want}")
                    });
                    sum += r.unwrap_or(0);
                }
                let total = eng.hc_rank(n, d).unwrap_or(u64::MAX);
                eigen.check(sum == total, || {
                    format!("HC {base} n={n} d={d}: pieces {sum} vs total {total}")
                });
            }
        }
    }

    let mut ses = Tally::new();
    {
        let eng = engines.get_mut(&BaseRing::Qx).unwrap();
        for n in 0..=3 {
            for d in 0..=3 {
                for i in 1..=n {
                    let ok = eng.ses_consistency(n, d, i);
                    ses.check(ok.as_ref() == Ok(&true), || {
                        format!("Q[x] n={n} d={d} i={i}: {ok:?}")
                    });
                }
            }
        }
    }

    let mut proj = Tally::new();
    for (base, eng) in engines.iter_mut() {
        for n in 0..=top_degree(*base) {
            for d in 0..=3 {
                let c = eng.projector_check(n, d);
                proj.check(c.as_ref().is_ok_and(|c| c.all()), || {
                    format!("{base} n={n} d={d}: {c:?}")
                });
            }
        }
    }

    let mut oracle = Tally::new();
    {
        let eng = engines.get_mut(&BaseRing::Q).unwrap();
        for n in 0..=4 {
            let r = eng.hh_rank(n, 0).map_err(err_string);
            let want = oracles::periodic_resolution_relative_hh(1, n);
            oracle.check(r == Ok(want), || {
                format!("n={n}: bar complex {r:?} vs resolution {want}")
            });
        }
    }

    report
        .criteria
        .push(totals.criterion("hc-hn-totals", "rank equalities"));
    report
        .criteria
        .push(eigen.criterion("hc-eigen", "eigen-rank equalities"));
    report.criteria.push(smap.criterion("s-map-zero", "slices"));
    report
        .criteria
        .push(ses.criterion("ses-consistency", "(n, d, i) triples"));
    report
        .criteria
        .push(proj.criterion("projector-structure", "slices"));
    report
        .criteria
        .push(oracle.criterion("dual-number-oracle", "degrees"));
}

fn tangent_square(seed: u64) -> Criterion {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let origin = [rat(0, 1), rat(0, 1)];
    let mut t = Tally::new();
    for arc in instances::square_arcs(&mut rng, 15) {
        let r = check_square(&arc, &origin, BoundarySign::Plus, &mut rng);
        t.check(r.as_ref().is_ok_and(|r| r.commutes), || {
            format!(
                "f={} f1={} g={} g1={}: {:?}",
                arc.f,
                arc.f1,
                arc.g,
                arc.g1,
                r.map(|r| r.commutes)
            )
        });
    }
    t.criterion("tangent-square", "arcs")
}

fn local_cohomology_oracle(seed: u64) -> Criterion {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let mut t = Tally::new();
    let (mut zeros, mut equal) = (0, 0);
    for k in 0..100 {
        let (a, b) = instances::local_class_pair(&mut rng, k);
        let (ea, eb) = match (
            inverse_system_normal_form(&a),
            inverse_system_normal_form(&b),
        ) {
            (Ok(x), Ok(y)) => (x, y),
            (x, y) => {
                t.check(false, || format!("expansion failed: {x:?} {y:?}"));
                continue;
            }
        };
        let z = h2_is_zero(&a);
        zeros += usize::from(ea.is_empty());
        t.check(z.as_ref() == Ok(&ea.is_empty()), || {
            format!("zero test on {a}: {z:?}")
        });
        let e = h2_equal(&a, &b);
        equal += usize::from(ea == eb);
        t.check(e.as_ref() == Ok(&(ea == eb)), || {
            format!("equality of {a} and {b}: {e:?}")
        });
    }
    let mut c = t.criterion("local-cohomology-oracle", "checks on 100 class pairs");
    let _ = write!(c.detail, "; {zeros} zero classes, {equal} equal pairs");
    c
}

fn groebner_oracle(seed: u64) -> Criterion {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
    let mut t = Tally::new();
    let mut members = 0;
    for k in 0..50 {
        let (gens, p) = instances::groebner_instance(&mut rng, k);
        let order = if k % 2 == 0 {
            MonomialOrder::grevlex()
        } else {
            MonomialOrder::lex()
        };
        let gb = match buchberger(&gens, order) {
            Ok(gb) => gb,
            Err(e) => {
                t.check(false, || err_string(e));
                continue;
            }
        };
        let by_gb = ideal_member(&p, &gb);
        let by_la = oracles::member_by_linear_algebra(&p, &gens, 8);
        members += usize::from(by_gb);
        t.check(by_gb == by_la, || {
            let g: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
            format!(
                "p={p} in ({}): basis {by_gb}, linear algebra {by_la}",
                g.join(", ")
            )
        });
    }
    let mut c = t.criterion("groebner-oracle", "instances");
    let _ = write!(c.detail, "; {members} members");
    c
}

fn reciprocity(seed: u64) -> Criterion {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(3));
    let mut t = Tally::new();
    for _ in 0..10 {
        let f = instances::split_function(&mut rng);
        let g = instances::split_function(&mut rng);
        let r = weil_reciprocity(&f, &g);
        t.check(r.as_ref() == Ok(&rat(1, 1)), || {
            format!("f={f} g={g}: {r:?}")
        });
    }
    t.criterion("weil-reciprocity", "pairs")
}

fn thickening(report: &mut Report) {
    let (mut total, mut agree) = (0, 0);
    let mut errors = Vec::new();
    for j in [2, 3] {
        for base in BASES {
            let alg = AlgebraSpec { base, j };
            match CyclicEngine::new(alg).thickening_report(2, 2) {
                Ok(rows) => {
                    for r in rows {
                        total += 1;
                        if r.agrees() {
                            agree += 1;
                        } else {
                            report.notes.push(format!(
                                "{} {alg} n={} d={}: computed {} predicted {}",
                                r.theory,
                                r.n,
                                r.d,
                                r.computed,
                                r.predicted.unwrap_or(0)
                            ));
                        }
                    }
                }
                Err(e) => errors.push(format!("{alg}: {e}")),
            }
        }
    }
    let mut detail = format!("j = 2, 3 at n <= 2, d <= 2: {agree} of {total} records match j copies of the forms pattern");
    if !errors.is_empty() {
        let _ = write!(detail, "; errors: {}", errors.join("; "));
    }
    report.criteria.push(Criterion {
        name: "thickening-report",
        gated: false,
        passed: agree == total && errors.is_empty(),
        detail,
    });
}
