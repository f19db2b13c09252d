//! Gersten and Cousin differentials at desk scale: valuations and tame
//! symbols on `Q(t)`, the Cousin boundary `H^1_{(f)}(Ω¹) → H^2_x(Ω¹)` at a
//! rational point, and the tangent-square commutation check.

mod univariate;

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};
use rand::Rng;

pub use univariate::{RationalFunction, UniPoly};

use crate::arcs::{tangent_divisor, tangent_zero_cycle, DivisorArc, ZeroCycleArc};
use crate::differentials::{Basis, DifferentialForm};
use crate::exactpoly::{
    buchberger, radical_contains_point, zero_dimensional, Monomial, MonomialOrder, Polynomial,
    RadicalVerdict, Rational,
};
use crate::localcoh::{h2_equal, H1Class, H2Class};
use crate::{Error, Result};

/// A place of `Q(t)` of degree one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Finite(Rational),
    Infinity,
}

impl Place {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "inf" | "infinity" | "oo" | "∞") {
            Ok(Place::Infinity)
        } else {
            crate::exactpoly::parse_rational(s).map(Place::Finite)
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(a) => write!(f, "{a}"),
            Place::Infinity => f.write_str("inf"),
        }
    }
}

/// Order of vanishing of `h` at the place (negative at poles).
pub fn ord_at(place: &Place, h: &RationalFunction) -> Result<i64> {
    if h.is_zero() {
        return Err(Error::pre("the order of 0 is undefined"));
    }
    Ok(match place {
        Place::Finite(a) => h.numerator().split_root(a).0 - h.denominator().split_root(a).0,
        Place::Infinity => {
            h.denominator().degree().unwrap() as i64 - h.numerator().degree().unwrap() as i64
        }
    })
}

/// `(ord, value of the unit part at the place)`.
fn unit_part(place: &Place, h: &RationalFunction) -> (i64, Rational) {
    match place {
        Place::Finite(a) => {
            let (m, n0) = h.numerator().split_root(a);
            let (k, d0) = h.denominator().split_root(a);
            (m - k, n0.eval(a) / d0.eval(a))
        }
        Place::Infinity => {
            let ord =
                h.denominator().degree().unwrap() as i64 - h.numerator().degree().unwrap() as i64;
            (ord, h.numerator().leading() / h.denominator().leading())
        }
    }
}

fn ipow(r: &Rational, e: i64) -> Rational {
    let p = num_traits::pow(r.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// `(-1)^{ord f · ord g} · (f^{ord g} / g^{ord f})` evaluated at the place.
pub fn tame_symbol(place: &Place, f: &RationalFunction, g: &RationalFunction) -> Result<Rational> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::pre("tame symbol of zero"));
    }
    let (m, f0) = unit_part(place, f);
    let (n, g0) = unit_part(place, g);
    let sign = if (m * n) % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    };
    Ok(sign * ipow(&f0, n) / ipow(&g0, m))
}

/// Finite places where `f` or `g` has a zero or pole. Fails unless all of
/// them are rational.
pub fn support_places(f: &RationalFunction, g: &RationalFunction) -> Result<Vec<Place>> {
    let mut places: Vec<Rational> = Vec::new();
    for p in [
        f.numerator(),
        f.denominator(),
        g.numerator(),
        g.denominator(),
    ] {
        let (roots, rest) = p.rational_roots();
        if rest.degree().unwrap_or(0) > 0 {
            return Err(Error::UnsupportedPlace(format!(
                "{rest} has no rational linear factorization"
            )));
        }
        for (a, _) in roots {
            if !places.contains(&a) {
                places.push(a);
            }
        }
    }
    places.sort();
    Ok(places.into_iter().map(Place::Finite).collect())
}

/// Product of the tame symbols over every place, infinity included.
pub fn weil_reciprocity(f: &RationalFunction, g: &RationalFunction) -> Result<Rational> {
    let mut places = support_places(f, g)?;
    places.push(Place::Infinity);
    let mut acc = Rational::one();
    for p in &places {
        acc *= tame_symbol(p, f, g)?;
    }
    Ok(acc)
}

/// Global sign attached to the connecting map.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BoundarySign {
    #[default]
    Plus,
    Minus,
}

impl BoundarySign {
    pub fn apply(&self, w: &DifferentialForm) -> DifferentialForm {
        match self {
            BoundarySign::Plus => w.clone(),
            BoundarySign::Minus => w.neg(),
        }
    }
}

/// Zero class of `H^2` at the point, on `(f, s)` when that pair is regular
/// and on the coordinate functions otherwise.
fn zero_at_point(c: &H1Class, point: &[Rational]) -> Result<H2Class> {
    let vars = c.vars();
    let zero = DifferentialForm::zero(vars, c.numerator().degree());
    if let Ok(z) = H2Class::new(c.prime().clone(), c.unit().clone(), 1, 1, zero.clone()) {
        return Ok(z);
    }
    let coord =
        |i: usize| &Polynomial::var(vars, i) - &Polynomial::constant(vars, point[i].clone());
    H2Class::new(coord(0), coord(1), 1, 1, zero)
}

/// Cousin boundary of `ω / (s f^k)` at a rational point: the class of the
/// same fraction in `H^2_{(f, s)}`, read through the Čech complex on
/// `(f, s)`. `power_bound` defaults to `deg f · deg s`.
pub fn cousin_boundary(
    c: &H1Class,
    point: &[Rational],
    power_bound: Option<u32>,
    sign: BoundarySign,
) -> Result<H2Class> {
    if c.vars().len() != 2 || point.len() != 2 {
        return Err(Error::pre(
            "boundaries are taken on a surface at a point (a, b)",
        ));
    }
    let (f, s) = (c.prime(), c.unit());
    if !s.eval(point).is_zero() || !f.eval(point).is_zero() || c.numerator().is_zero() {
        return zero_at_point(c, point);
    }
    let gb = buchberger(&[f.clone(), s.clone()], MonomialOrder::grevlex())?;
    if !zero_dimensional(&gb) {
        return Err(Error::NotRegularSequence(format!("{f}, {s}")));
    }
    let bound = power_bound.unwrap_or_else(|| {
        f.total_degree().unwrap_or(1).max(1) * s.total_degree().unwrap_or(1).max(1)
    });
    match radical_contains_point(&gb, point, bound)? {
        RadicalVerdict::Contained { .. } => {}
        RadicalVerdict::NotContained | RadicalVerdict::Undecided => {
            return Err(Error::MultiPointSupport)
        }
    }
    H2Class::new(
        f.clone(),
        s.clone(),
        c.power(),
        1,
        sign.apply(c.numerator()),
    )
}

fn random_poly<R: Rng>(rng: &mut R, vars: crate::exactpoly::Vars, max_deg: u32) -> Polynomial {
    let mut p = Polynomial::zero(vars);
    for _ in 0..rng.gen_range(0..4) {
        let a = rng.gen_range(0..=max_deg);
        let b = rng.gen_range(0..=max_deg - a);
        let c = rng.gen_range(-5i64..=5);
        p.add_term(Monomial([a, b, 0]), crate::exactpoly::rat(c, 1));
    }
    p
}

fn random_one_form<R: Rng>(rng: &mut R, vars: crate::exactpoly::Vars) -> DifferentialForm {
    let mut w = DifferentialForm::zero(vars, 1);
    for i in 0..2 {
        w.add_component(
            Basis::from_indices(&[i]).unwrap(),
            random_poly(rng, vars, 3),
        );
    }
    w
}

/// Outcome of a tangent-square check, with both corners for reporting.
#[derive(Clone, Debug)]
pub struct SquareReport {
    pub boundary: H2Class,
    pub cycle_tangent: H2Class,
    pub commutes: bool,
}

/// Compares `∂(tangent of the divisor arc)` with the tangent of the induced
/// zero-cycle arc, after adding random elements of `(f^k, g)Ω¹` to the
/// second corner.
pub fn check_square<R: Rng>(
    a: &DivisorArc,
    point: &[Rational],
    sign: BoundarySign,
    rng: &mut R,
) -> Result<SquareReport> {
    if !a.f.eval(point).is_zero() || !a.g.eval(point).is_zero() {
        return Err(Error::pre("the point does not lie on V(f, g)"));
    }
    let boundary = cousin_boundary(&tangent_divisor(a)?, point, None, sign)?;
    let cycle = tangent_zero_cycle(&ZeroCycleArc::induced_by(a)?)?;
    let vars = a.f.vars();
    let perturbed = cycle.perturbed(&random_one_form(rng, vars), &random_one_form(rng, vars));
    let commutes = h2_equal(&boundary, &perturbed)?;
    Ok(SquareReport {
        boundary,
        cycle_tangent: perturbed,
        commutes,
    })
}

#[cfg(test)]
mod tests;
