use cousinforge::cache::Cache;
use cousinforge::verify::{self, oracles, Suite};
use cousinforge::{Command, Settings, TaskFile};
use cousinforge_core::exactpoly::{buchberger, ideal_member, MonomialOrder, Polynomial, Vars};
use serde_json::json;

#[test]
fn resolution_oracle_on_truncations() {
    // Q[t]/(t^2) and Q[t]/(t^3): relative HH has dimension j in every degree.
    for j in 1..=2 {
        for n in 0..=4 {
            assert_eq!(
                oracles::periodic_resolution_relative_hh(j, n),
                j as u64,
                "j={j} n={n}"
            );
        }
    }
}

#[test]
fn linear_algebra_membership_agrees_with_basis() {
    let v = Vars::xy();
    let gens = vec![
        Polynomial::parse("x^2 - y", v).unwrap(),
        Polynomial::parse("y^2 - x", v).unwrap(),
    ];
    let gb = buchberger(&gens, MonomialOrder::grevlex()).unwrap();
    for (p, expected) in [("x^3 - x*y", true), ("x*y - 1", false), ("x^4 - x", true)] {
        let p = Polynomial::parse(p, v).unwrap();
        assert_eq!(ideal_member(&p, &gb), expected, "{p}");
        assert_eq!(
            oracles::member_by_linear_algebra(&p, &gens, 8),
            expected,
            "{p}"
        );
    }
}

#[test]
fn cached_rank_matches_fresh() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::resolve(Some(dir.path()));
    let cmd: Command = serde_json::from_value(json!({
        "command": "cyclic-eigen", "theory": "hc", "base": "Q[x]", "n": 3, "d": 2, "i": 2
    }))
    .unwrap();
    let settings = Settings::default();
    let first = cmd.execute(&settings, &cache).unwrap();
    let second = cmd.execute(&settings, &cache).unwrap();
    assert_eq!(first.record, second.record);
    assert_eq!(
        first.record,
        cmd.execute(&settings, &Cache::disabled()).unwrap().record
    );
}

#[test]
fn task_settings_reject_unknown_keys() {
    assert!(TaskFile::parse(r#"{ "settings": { "ordering": "lex" }, "commands": [] }"#).is_err());
    assert!(TaskFile::parse(r#"{ "commands": [] }"#).is_ok());
}

#[test]
fn battery_is_deterministic() {
    let a = verify::run(Suite::Localcoh, 7);
    let b = verify::run(Suite::Localcoh, 7);
    assert_eq!(a.render(), b.render());
    assert!(a.passed());
}
