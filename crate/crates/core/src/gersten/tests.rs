use super::*;
use crate::exactpoly::{rat, Vars};
use crate::localcoh::h2_is_zero;
use alloc::string::ToString;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rf(s: &str) -> RationalFunction {
    RationalFunction::parse(s).unwrap()
}

fn at(a: i64) -> Place {
    Place::Finite(rat(a, 1))
}

fn xy(s: &str) -> Polynomial {
    Polynomial::parse(s, Vars::xy()).unwrap()
}

fn origin() -> [Rational; 2] {
    [rat(0, 1), rat(0, 1)]
}

#[test]
fn orders() {
    let h = rf("t^2 / (t - 1)");
    assert_eq!(ord_at(&at(0), &h).unwrap(), 2);
    assert_eq!(ord_at(&Place::Infinity, &h).unwrap(), -1);
    assert_eq!(ord_at(&at(1), &h).unwrap(), -1);
    assert_eq!(ord_at(&at(5), &h).unwrap(), 0);
    assert!(ord_at(&at(0), &rf("0")).is_err());
}

#[test]
fn rational_function_is_reduced() {
    let h = rf("(t^2 - 1) / (2*t - 2)");
    assert_eq!(h.to_string(), "1/2*t + 1/2");
    assert_eq!(rf("t / (2*t^2)").to_string(), "(1/2) / (t)");
}

#[test]
fn tame_examples() {
    assert_eq!(tame_symbol(&at(0), &rf("t"), &rf("t")).unwrap(), rat(-1, 1));
    assert_eq!(
        tame_symbol(&at(0), &rf("t"), &rf("1 - t")).unwrap(),
        rat(1, 1)
    );
    assert_eq!(
        tame_symbol(&at(3), &rf("t + 2"), &rf("t - 7")).unwrap(),
        rat(1, 1)
    );
    assert_eq!(
        tame_symbol(&at(1), &rf("t"), &rf("1 - t")).unwrap(),
        rat(1, 1)
    );
    assert_eq!(
        tame_symbol(&Place::Infinity, &rf("t"), &rf("t")).unwrap(),
        rat(-1, 1)
    );
    assert!(tame_symbol(&at(0), &rf("0"), &rf("t")).is_err());
}

#[test]
fn reciprocity_examples() {
    assert_eq!(weil_reciprocity(&rf("t"), &rf("1 - t")).unwrap(), rat(1, 1));
    assert_eq!(weil_reciprocity(&rf("t"), &rf("t")).unwrap(), rat(1, 1));
    assert_eq!(
        weil_reciprocity(&rf("5"), &rf("t^2 - 3*t")).unwrap(),
        rat(1, 1)
    );
    assert_eq!(
        weil_reciprocity(&rf("(2*t - 1)^2 / (t + 3)"), &rf("(3*t + 4) / (t^2 - 4)")).unwrap(),
        rat(1, 1)
    );
    assert!(matches!(
        weil_reciprocity(&rf("t^2 + 1"), &rf("t")),
        Err(Error::UnsupportedPlace(_))
    ));
}

#[test]
fn boundary_of_the_standard_tangent() {
    let c = H1Class::parse("[3*d(y) - x^2*d(x) / (x)*(y)^1 @ (y)]", Vars::xy()).unwrap();
    let b = cousin_boundary(&c, &origin(), None, BoundarySign::Plus).unwrap();
    let expected =
        H2Class::parse("[3*d(y) - x^2*d(x) / (y)^1*(x)^1 @ (y, x)]", Vars::xy()).unwrap();
    assert!(h2_equal(&b, &expected).unwrap());
    assert!(!h2_is_zero(&b).unwrap());
}

#[test]
fn boundary_vanishes_off_the_polar_locus() {
    let c = H1Class::parse("[d(x) / (x - 1)*(y)^1 @ (y)]", Vars::xy()).unwrap();
    let b = cousin_boundary(&c, &origin(), None, BoundarySign::Plus).unwrap();
    assert!(h2_is_zero(&b).unwrap());
    let z = c.zero_like();
    assert!(
        h2_is_zero(&cousin_boundary(&z, &origin(), None, BoundarySign::Plus).unwrap()).unwrap()
    );
}

#[test]
fn boundary_rejects_multi_point_support() {
    // V(y, x^2 - x) = {(0,0), (1,0)}
    let c = H1Class::parse("[d(x) / (x^2 - x)*(y)^1 @ (y)]", Vars::xy()).unwrap();
    assert!(matches!(
        cousin_boundary(&c, &origin(), None, BoundarySign::Plus),
        Err(Error::MultiPointSupport)
    ));
}

#[test]
fn square_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (f, f1, g, g1) in [
        ("y", "1", "x", "0"),
        ("y", "x^2", "x", "3"),
        ("y", "0", "x", "0"),
    ] {
        let a = DivisorArc::new(xy(f), xy(f1), xy(g), xy(g1)).unwrap();
        let r = check_square(&a, &origin(), BoundarySign::Plus, &mut rng).unwrap();
        assert!(r.commutes, "{f} {f1} {g} {g1}");
    }
}

#[test]
fn square_needs_point_on_support() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let a = DivisorArc::new(xy("y"), xy("1"), xy("x"), xy("0")).unwrap();
    let p = [rat(1, 1), rat(0, 1)];
    assert!(check_square(&a, &p, BoundarySign::Plus, &mut rng).is_err());
}

#[test]
fn opposite_sign_breaks_nonzero_squares() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let a = DivisorArc::new(xy("y"), xy("1"), xy("x"), xy("0")).unwrap();
    let r = check_square(&a, &origin(), BoundarySign::Minus, &mut rng).unwrap();
    assert!(!r.commutes);
}

fn split_poly() -> impl Strategy<Value = UniPoly> {
    (
        -4i64..=4,
        prop::collection::vec((-3i64..=3, 1i64..=2), 0..=4),
    )
        .prop_filter("nonzero", |(c, _)| *c != 0)
        .prop_map(|(c, roots)| {
            roots
                .into_iter()
                .fold(UniPoly::constant(rat(c, 1)), |acc, (a, b)| {
                    acc.mul(&UniPoly::linear(&rat(a, b)))
                })
        })
}

fn split_rf() -> impl Strategy<Value = RationalFunction> {
    (split_poly(), split_poly()).prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

fn place() -> impl Strategy<Value = Place> {
    prop_oneof![
        Just(Place::Infinity),
        (-3i64..=3, 1i64..=2).prop_map(|(a, b)| Place::Finite(rat(a, b)))
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ord_is_a_valuation(f in split_rf(), g in split_rf(), p in place()) {
        prop_assert_eq!(
            ord_at(&p, &f.mul(&g)).unwrap(),
            ord_at(&p, &f).unwrap() + ord_at(&p, &g).unwrap()
        );
        let s = f.add(&g);
        if !s.is_zero() {
            let lo = ord_at(&p, &f).unwrap().min(ord_at(&p, &g).unwrap());
            prop_assert!(ord_at(&p, &s).unwrap() >= lo);
        }
    }

    #[test]
    fn tame_is_bimultiplicative(f1 in split_rf(), f2 in split_rf(), g in split_rf(), p in place()) {
        let lhs = tame_symbol(&p, &f1.mul(&f2), &g).unwrap();
        let rhs = tame_symbol(&p, &f1, &g).unwrap() * tame_symbol(&p, &f2, &g).unwrap();
        prop_assert_eq!(lhs, rhs);
        let anti = tame_symbol(&p, &g, &f1).unwrap() * tame_symbol(&p, &f1, &g).unwrap();
        prop_assert_eq!(anti, rat(1, 1));
    }

    #[test]
    fn reciprocity_holds(f in split_rf(), g in split_rf()) {
        prop_assert_eq!(weil_reciprocity(&f, &g).unwrap(), rat(1, 1));
    }

    #[test]
    fn boundary_is_additive(a in 0i64..4, b in -3i64..=3, c in -3i64..=3) {
        let vars = Vars::xy();
        let w1 = DifferentialForm::parse(&alloc::format!("{b}*x^{a}*d(y) + d(x)"), vars).unwrap();
        let w2 = DifferentialForm::parse(&alloc::format!("{c}*y*d(x) - x*d(y)"), vars).unwrap();
        let c1 = H1Class::new(xy("y - x^2"), 2, xy("x"), w1).unwrap();
        let c2 = H1Class::new(xy("y - x^2"), 2, xy("x"), w2).unwrap();
        let sum = c1.add(&c2).unwrap();
        let o = origin();
        let lhs = cousin_boundary(&sum, &o, None, BoundarySign::Plus).unwrap();
        let rhs = cousin_boundary(&c1, &o, None, BoundarySign::Plus).unwrap()
            .add(&cousin_boundary(&c2, &o, None, BoundarySign::Plus).unwrap()).unwrap();
        prop_assert!(h2_equal(&lhs, &rhs).unwrap());
    }
}
