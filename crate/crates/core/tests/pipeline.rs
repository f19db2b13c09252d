//! End-to-end checks through the public API.

use cousinforge_core::arcs::{tangent_divisor, tangent_zero_cycle, DivisorArc, ZeroCycleArc};
use cousinforge_core::cyclic::{hc_rank, hh_rank, hn_rank, AlgebraSpec, BaseRing};
use cousinforge_core::differentials::graded_dimension;
use cousinforge_core::exactpoly::{buchberger, ideal_member, rat, MonomialOrder, Polynomial, Vars};
use cousinforge_core::gersten::{cousin_boundary, BoundarySign};
use cousinforge_core::localcoh::{h2_equal, h2_is_zero};

fn xy(s: &str) -> Polynomial {
    Polynomial::parse(s, Vars::xy()).unwrap()
}

/// Counts pairs (monomial, subset of dx_i) of total degree d by enumeration.
fn brute_graded_dimension(n: usize, d: usize, nv: usize) -> u64 {
    let mut count = 0;
    for subset in 0u32..(1 << nv) {
        if subset.count_ones() as usize != n || d < n {
            continue;
        }
        let rest = d - n;
        count += match nv {
            0 => u64::from(rest == 0),
            1 => 1,
            2 => rest as u64 + 1,
            _ => unreachable!(),
        };
    }
    count
}

#[test]
fn graded_dimension_matches_enumeration() {
    for nv in 0..=2 {
        for n in 0..=3 {
            for d in 0..=5 {
                assert_eq!(
                    graded_dimension(n, d, nv),
                    brute_graded_dimension(n, d, nv),
                    "{n} {d} {nv}"
                );
            }
        }
    }
}

#[test]
fn divisor_to_point_pipeline() {
    let arc = DivisorArc::new(xy("y"), xy("x^2 + 1"), xy("x"), xy("y")).unwrap();
    let t = tangent_divisor(&arc).unwrap();
    let origin = [rat(0, 1), rat(0, 1)];
    let b = cousin_boundary(&t, &origin, None, BoundarySign::Plus).unwrap();
    let z = tangent_zero_cycle(&ZeroCycleArc::induced_by(&arc).unwrap()).unwrap();
    assert!(h2_equal(&b, &z).unwrap());
    assert!(!h2_is_zero(&b).unwrap());
}

#[test]
fn groebner_membership_round_trip() {
    let gens = [xy("x^2 - y"), xy("x*y - 1")];
    for order in [MonomialOrder::lex(), MonomialOrder::grevlex()] {
        let gb = buchberger(&gens, order).unwrap();
        let combo = &(&gens[0] * &xy("3*x + y")) - &(&gens[1] * &xy("y^2"));
        assert!(ideal_member(&combo, &gb));
        assert!(!ideal_member(&xy("x - 2"), &gb));
    }
}

#[test]
fn dual_numbers_over_q_in_low_degrees() {
    // Relative HH of Q[ε] is one-dimensional in every degree; HC alternates
    // 1, 0, 1, ... and HN is its shift.
    let a = AlgebraSpec::dual_numbers(BaseRing::Q);
    for n in 0..=3 {
        assert_eq!(hh_rank(&a, n, 0).unwrap(), 1);
        assert_eq!(hc_rank(&a, n, 0).unwrap(), u64::from(n % 2 == 0));
        assert_eq!(hn_rank(&a, n, 0).unwrap(), u64::from(n % 2 == 1));
    }
}
