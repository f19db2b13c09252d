//! Seeded random inputs for the battery.

use cousinforge_core::arcs::DivisorArc;
use cousinforge_core::differentials::{Basis, DifferentialForm};
use cousinforge_core::exactpoly::{rat, Monomial, Polynomial, Rational, Vars};
use cousinforge_core::gersten::{RationalFunction, UniPoly};
use cousinforge_core::localcoh::H2Class;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let r = rat(rng.gen_range(-5..=5), rng.gen_range(1..=3));
        if r != rat(0, 1) {
            return r;
        }
    }
}

/// Up to `terms` random terms in `x, y` of total degree at most `max_deg`.
pub fn poly<R: Rng>(rng: &mut R, max_deg: u32, terms: usize) -> Polynomial {
    let mut p = Polynomial::zero(Vars::xy());
    for _ in 0..terms {
        let a = rng.gen_range(0..=max_deg);
        let b = rng.gen_range(0..=max_deg - a);
        p.add_term(Monomial([a, b, 0]), small_rational(rng));
    }
    p
}

pub fn form<R: Rng>(rng: &mut R, degree: usize, max_deg: u32, terms: usize) -> DifferentialForm {
    let vars = Vars::xy();
    let mut w = DifferentialForm::zero(vars, degree);
    for b in Basis::all(2, degree) {
        w.add_component(b, poly(rng, max_deg, terms));
    }
    w
}

/// Arcs over `f = y, g = x` and the rotated `f = x, g = y` with deformations
/// of degree at most 3.
pub fn square_arcs<R: Rng>(rng: &mut R, per_family: usize) -> Vec<DivisorArc> {
    let v = Vars::xy();
    let (x, y) = (Polynomial::var(v, 0), Polynomial::var(v, 1));
    let mut out = Vec::new();
    for (f, g) in [(y.clone(), x.clone()), (x, y)] {
        for _ in 0..per_family {
            let (nf, ng) = (rng.gen_range(0..=4), rng.gen_range(0..=4));
            let f1 = poly(rng, 3, nf);
            let g1 = poly(rng, 3, ng);
            out.push(
                DivisorArc::new(f.clone(), f1, g.clone(), g1).expect("coordinate arcs are valid"),
            );
        }
    }
    out
}

/// A class at the origin on scaled coordinate axes with numerator degree at
/// most 4, and a second class that is either a perturbed representative of
/// it or differs by a small term.
pub fn local_class_pair<R: Rng>(rng: &mut R, k: usize) -> (H2Class, H2Class) {
    let v = Vars::xy();
    let scales = [rat(1, 1), rat(2, 1), rat(-1, 1), rat(1, 3), rat(-3, 2)];
    let cu = scales.choose(rng).unwrap().clone();
    let cv = scales.choose(rng).unwrap().clone();
    let (mut u, mut w) = (
        Polynomial::var(v, 0).scale(&cu),
        Polynomial::var(v, 1).scale(&cv),
    );
    if rng.gen_bool(0.5) {
        std::mem::swap(&mut u, &mut w);
    }
    let (p, q) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
    let degree = rng.gen_range(1..=2);
    let omega = match k % 3 {
        0 => form(rng, degree, 1, 2),
        1 => form(rng, degree, 4 - p, 2)
            .mul_poly(&u.pow(p))
            .add(&form(rng, degree, 4 - q, 2).mul_poly(&w.pow(q))),
        _ => form(rng, degree, 3, 1),
    };
    let c = H2Class::new(u.clone(), w.clone(), p, q, omega).expect("coordinate axes are regular");
    let other = if k.is_multiple_of(2) {
        c.perturbed(&form(rng, degree, 4 - p, 2), &form(rng, degree, 4 - q, 2))
    } else {
        let bump = H2Class::new(u, w, p, q, form(rng, degree, 1, 1)).unwrap();
        c.add(&bump).unwrap()
    };
    (c, other)
}

/// Shifts `g` so that it vanishes at `pt`.
fn through<R: Rng>(rng: &mut R, pt: &[Rational], max_deg: u32) -> Polynomial {
    loop {
        let terms = rng.gen_range(1..=3);
        let g = poly(rng, max_deg, terms);
        let g = &g - &Polynomial::constant(Vars::xy(), g.eval(pt));
        if !g.is_constant() {
            return g;
        }
    }
}

/// Generators through a common rational point (so the ideal is proper) and
/// a candidate member: a combination, a polynomial not vanishing at the
/// point, or a combination plus a stray low-degree term.
pub fn groebner_instance<R: Rng>(rng: &mut R, k: usize) -> (Vec<Polynomial>, Polynomial) {
    let pt = [rat(rng.gen_range(-2..=2), 1), rat(rng.gen_range(-2..=2), 1)];
    let gens: Vec<Polynomial> = (0..rng.gen_range(2..=3))
        .map(|_| {
            let d = rng.gen_range(1..=3);
            through(rng, &pt, d)
        })
        .collect();
    let combination = |rng: &mut R| {
        let mut p = Polynomial::zero(Vars::xy());
        for g in &gens {
            let room = 4 - g.total_degree().unwrap_or(0).min(4);
            p = &p + &(&poly(rng, room, 2) * g);
        }
        p
    };
    let p = match k % 3 {
        0 => combination(rng),
        1 => {
            let p = poly(rng, 4, 3);
            let off = p.eval(&pt);
            &(&p - &Polynomial::constant(Vars::xy(), off))
                + &Polynomial::constant(Vars::xy(), small_rational(rng))
        }
        _ => &combination(rng) + &poly(rng, 2, 1),
    };
    (gens, p)
}

/// `c · Π (t - r_i) / Π (t - s_i)` with at most four factors on each side.
pub fn split_function<R: Rng>(rng: &mut R) -> RationalFunction {
    let (a, b) = (rng.gen_range(0..=4), rng.gen_range(0..=4));
    let mut factor = |count: usize| {
        (0..count).fold(UniPoly::constant(rat(1, 1)), |acc, _| {
            acc.mul(&UniPoly::linear(&rat(
                rng.gen_range(-4..=4),
                rng.gen_range(1..=3),
            )))
        })
    };
    let num = factor(a);
    let den = factor(b);
    let c = small_rational(rng);
    RationalFunction::new(num.scale(&c), den).expect("nonzero denominator")
}
