use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::monomial::{MonomialOrder, Vars};
use super::polynomial::{reduce, Polynomial};
use super::rational::Rational;
use crate::{Error, Result};

/// A Gröbner basis of an ideal of `Q[vars]` under a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    generators: Vec<Polynomial>,
    order: MonomialOrder,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn vars(&self) -> Vars {
        self.generators[0].vars()
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        reduce(p, &self.generators, &self.order).1
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.generators.iter().any(Polynomial::is_constant)
    }

    /// True when every S-polynomial reduces to zero modulo the basis.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| {
            (i + 1..g.len()).all(|j| {
                self.normal_form(&s_poly(&g[i], &g[j], &self.order))
                    .is_zero()
            })
        })
    }
}

fn s_poly(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Polynomial {
    let (fm, fc) = f.leading_term(order).unwrap();
    let (gm, gc) = g.leading_term(order).unwrap();
    let l = fm.lcm(&gm);
    let a = f.mul_term(&fm.quotient_of(&l).unwrap(), &fc.recip());
    let b = g.mul_term(&gm.quotient_of(&l).unwrap(), &gc.recip());
    &a - &b
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with(gens, order, true)
}

/// Buchberger's algorithm with the coprime-leading-monomial criterion as the
/// only pair filter.
pub fn buchberger_with(
    gens: &[Polynomial],
    order: MonomialOrder,
    reduced: bool,
) -> Result<GroebnerBasis> {
    let Some(first) = gens.first() else {
        return Err(Error::ZeroIdeal);
    };
    for g in gens {
        first.check_vars(g)?;
    }
    let mut basis: Vec<Polynomial> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic(&order))
        .collect();
    if basis.is_empty() {
        return Err(Error::ZeroIdeal);
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    // pairs are consumed oldest first for deterministic growth
    let mut next = 0;
    while next < pairs.len() {
        let (i, j) = pairs[next];
        next += 1;
        let li = basis[i].leading_monomial(&order).unwrap();
        let lj = basis[j].leading_monomial(&order).unwrap();
        if li.coprime(&lj) {
            continue;
        }
        let h = reduce(&s_poly(&basis[i], &basis[j], &order), &basis, &order).1;
        if !h.is_zero() {
            basis.push(h.monic(&order));
            let k = basis.len() - 1;
            for i in 0..k {
                pairs.push((i, k));
            }
        }
    }
    let generators = if reduced {
        reduce_basis(basis, &order)
    } else {
        basis
    };
    Ok(GroebnerBasis {
        generators,
        order,
        reduced,
    })
}

fn reduce_basis(mut basis: Vec<Polynomial>, order: &MonomialOrder) -> Vec<Polynomial> {
    // minimal: drop generators whose leading monomial is divisible by another's
    let mut i = 0;
    while i < basis.len() {
        let li = basis[i].leading_monomial(order).unwrap();
        let redundant = basis.iter().enumerate().any(|(j, g)| {
            let lj = g.leading_monomial(order).unwrap();
            j != i && lj.divides(&li) && (lj != li || j < i)
        });
        if redundant {
            basis.remove(i);
        } else {
            i += 1;
        }
    }
    for i in 0..basis.len() {
        let others: Vec<Polynomial> = basis
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let (lm, _) = basis[i].leading_term(order).unwrap();
        let tail = &basis[i] - &Polynomial::term(basis[i].vars(), lm, Rational::one());
        let tail = reduce(&tail, &others, order).1;
        basis[i] = &Polynomial::term(tail.vars(), lm, Rational::one()) + &tail;
    }
    basis.sort_by(|a, b| {
        order.compare(
            &a.leading_monomial(order).unwrap(),
            &b.leading_monomial(order).unwrap(),
        )
    });
    basis
}

pub fn ideal_member(p: &Polynomial, basis: &GroebnerBasis) -> bool {
    debug_assert_eq!(p.vars(), basis.vars());
    basis.normal_form(p).is_zero()
}

/// Finiteness criterion: every variable has a pure power among the leading
/// monomials. The unit ideal counts as zero-dimensional.
pub fn zero_dimensional(basis: &GroebnerBasis) -> bool {
    if basis.is_unit_ideal() {
        return true;
    }
    let order = basis.order;
    let n = basis.vars().len();
    (0..n).all(|v| {
        basis
            .generators
            .iter()
            .any(|g| g.leading_monomial(&order).and_then(|m| m.pure_power_of()) == Some(v))
    })
}

/// Outcome of a bounded radical-membership search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RadicalVerdict {
    /// `(x_i - a_i)^{powers[i]}` lies in the ideal for every `i`.
    Contained { powers: Vec<u32> },
    /// The ideal has a zero away from the point.
    NotContained,
    /// No power up to the bound was found and the point lies on the variety.
    Undecided,
}

/// Decides whether `V(I)` is contained in `{point}` by searching for powers
/// `(x_i - a_i)^N`, `N <= power_bound`, in the ideal.
pub fn radical_contains_point(
    basis: &GroebnerBasis,
    point: &[Rational],
    power_bound: u32,
) -> Result<RadicalVerdict> {
    let vars = basis.vars();
    if point.len() != vars.len() {
        return Err(Error::pre(
            "point dimension differs from the variable count",
        ));
    }
    if !zero_dimensional(basis) {
        return Err(Error::pre("ideal is not zero-dimensional"));
    }
    if basis.is_unit_ideal() {
        return Ok(RadicalVerdict::Contained {
            powers: alloc::vec![0; vars.len()],
        });
    }
    if basis.generators.iter().any(|g| !g.eval(point).is_zero()) {
        // a proper ideal has some zero over the algebraic closure
        return Ok(RadicalVerdict::NotContained);
    }
    let mut powers = Vec::with_capacity(vars.len());
    for (i, a) in point.iter().enumerate() {
        let lin = &Polynomial::var(vars, i) - &Polynomial::constant(vars, a.clone());
        let mut nf = Polynomial::one(vars);
        let mut found = None;
        for n in 1..=power_bound {
            nf = basis.normal_form(&(&nf * &lin));
            if nf.is_zero() {
                found = Some(n);
                break;
            }
        }
        match found {
            Some(n) => powers.push(n),
            None => return Ok(RadicalVerdict::Undecided),
        }
    }
    Ok(RadicalVerdict::Contained { powers })
}
