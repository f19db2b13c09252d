use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MonomialOrder, Vars};
use super::rational::Rational;
use crate::{Error, Result};

/// Exact multivariate polynomial over `Q`. No zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    vars: Vars,
    terms: BTreeMap<Monomial, Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Variable-checked arithmetic.
pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    a.check_vars(b)?;
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
    })
}

impl Polynomial {
    pub fn zero(vars: Vars) -> Self {
        Polynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: Vars, c: Rational) -> Self {
        Self::term(vars, Monomial::ONE, c)
    }

    pub fn from_int(vars: Vars, c: i64) -> Self {
        Self::constant(vars, Rational::from_integer(BigInt::from(c)))
    }

    pub fn term(vars: Vars, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The `i`-th variable as a polynomial.
    pub fn var(vars: Vars, i: usize) -> Self {
        assert!(i < vars.len(), "variable index out of range");
        Self::term(vars, Monomial::var(i), Rational::one())
    }

    pub fn from_terms(vars: Vars, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> Vars {
        self.vars
    }

    /// Same polynomial read in a ring with more (or renamed) variables;
    /// exponent slots are kept positionally.
    pub fn with_vars(&self, vars: Vars) -> Result<Self> {
        for m in self.terms.keys() {
            if m.0[vars.len()..].iter().any(|&e| e > 0) {
                return Err(Error::VariableMismatch(
                    self.vars.to_string(),
                    vars.to_string(),
                ));
            }
        }
        Ok(Polynomial {
            vars,
            terms: self.terms.clone(),
        })
    }

    pub fn check_vars(&self, other: &Polynomial) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch(
                self.vars.to_string(),
                other.vars.to_string(),
            ))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::ONE)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        Polynomial {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        Polynomial {
            vars: self.vars,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(Monomial, Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| order.compare(a.0, b.0))
            .map(|(m, c)| (*m, c.clone()))
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<Monomial> {
        self.terms
            .keys()
            .max_by(|a, b| order.compare(a, b))
            .copied()
    }

    /// Scaled to leading coefficient one; zero stays zero.
    pub fn monic(&self, order: &MonomialOrder) -> Self {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Scaled to coprime integer coefficients with positive grevlex-leading
    /// coefficient: a canonical associate.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&n);
        }
        let (_, lc) = self.leading_term(&MonomialOrder::grevlex()).unwrap();
        let mut factor = Rational::new(den_lcm, num_gcd);
        if lc.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut p = Self::zero(self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut k = *m;
                k.0[i] -= 1;
                p.add_term(k, c * Rational::from_integer(BigInt::from(e)));
            }
        }
        p
    }

    /// `p(x_1 + shift_1, ..., x_k + shift_k)`: the Taylor re-expansion
    /// around `-shift`.
    pub fn translate(&self, shift: &[Rational]) -> Self {
        let vars = self.vars;
        let lin: Vec<Polynomial> = (0..vars.len())
            .map(|i| &Self::var(vars, i) + &Self::constant(vars, shift[i].clone()))
            .collect();
        let mut acc = Self::zero(vars);
        for (m, c) in &self.terms {
            let mut t = Self::constant(vars, c.clone());
            for (i, l) in lin.iter().enumerate() {
                if m.0[i] > 0 {
                    t = &t * &l.pow(m.0[i]);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Terms sorted by descending grevlex, the canonical print order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let order = MonomialOrder::grevlex();
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.compare(b.0, a.0));
        v
    }

    pub fn parse(src: &str, vars: Vars) -> Result<Self> {
        super::parse::Parser::new(src).parse_polynomial(vars)
    }

    pub(crate) fn fmt_monomial(&self, m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in m.0.iter().enumerate().take(self.vars.len()) {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "{}", self.vars.name(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }

    /// Whether printing needs parentheses when used as a factor.
    pub fn is_atomic(&self) -> bool {
        match self.terms.len() {
            0 => true,
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                !c.is_negative() && (m.is_one() || c.is_one())
            }
            _ => false,
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let abs = c.abs();
            match (k == 0, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                self.fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.vars, self)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.vars, rhs.vars, "variable lists differ");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.vars, rhs.vars, "variable lists differ");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.vars, rhs.vars, "variable lists differ");
        let mut out = Polynomial::zero(self.vars);
        for (m, c) in &self.terms {
            for (k, d) in &rhs.terms {
                out.add_term(m.mul(k), c * d);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Full multivariate division of `p` by `divisors`: returns quotients and a
/// remainder none of whose terms is divisible by a leading monomial.
pub fn reduce(
    p: &Polynomial,
    divisors: &[Polynomial],
    order: &MonomialOrder,
) -> (Vec<Polynomial>, Polynomial) {
    let vars = p.vars();
    let leads: Vec<Option<(Monomial, Rational)>> =
        divisors.iter().map(|g| g.leading_term(order)).collect();
    let mut quotients = alloc::vec![Polynomial::zero(vars); divisors.len()];
    let mut rest = p.clone();
    let mut remainder = Polynomial::zero(vars);
    while let Some((m, c)) = rest.leading_term(order) {
        let hit = leads.iter().enumerate().find_map(|(i, lt)| {
            let (lm, lc) = lt.as_ref()?;
            lm.quotient_of(&m).map(|q| (i, q, &c / lc))
        });
        match hit {
            Some((i, q, factor)) => {
                quotients[i].add_term(q, factor.clone());
                rest = &rest - &divisors[i].mul_term(&q, &factor);
            }
            None => {
                rest.terms.remove(&m);
                remainder.add_term(m, c);
            }
        }
    }
    (quotients, remainder)
}

/// Division by a single nonzero polynomial: `p = q*g + r`.
pub fn divide_by_single(
    p: &Polynomial,
    g: &Polynomial,
    order: &MonomialOrder,
) -> Result<(Polynomial, Polynomial)> {
    p.check_vars(g)?;
    if g.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (mut q, r) = reduce(p, core::slice::from_ref(g), order);
    Ok((q.pop().unwrap(), r))
}

impl Polynomial {
    /// `Some(p / g)` when `g` divides `p` exactly.
    pub fn exact_div(&self, g: &Polynomial) -> Option<Polynomial> {
        let (q, r) = divide_by_single(self, g, &MonomialOrder::grevlex()).ok()?;
        r.is_zero().then_some(q)
    }

    /// Whether `self` divides `p`.
    pub fn divides(&self, p: &Polynomial) -> bool {
        p.exact_div(self).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;
    use alloc::format;

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, Vars::xy()).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(
            poly_arith(&p("x+y"), &p("x-y"), ArithOp::Add).unwrap(),
            p("2*x")
        );
        assert_eq!(
            poly_arith(&p("x-1"), &p("x+1"), ArithOp::Mul).unwrap(),
            p("x^2-1")
        );
        assert!(poly_arith(&p("0"), &p("x^3*y - 7/3*y + 2"), ArithOp::Mul)
            .unwrap()
            .is_zero());
        let t = Polynomial::parse("t", Vars::new("t").unwrap()).unwrap();
        assert!(matches!(
            poly_arith(&p("x"), &t, ArithOp::Add),
            Err(Error::VariableMismatch(..))
        ));
    }

    #[test]
    fn division_examples() {
        let lex = MonomialOrder::lex();
        let (q, r) = divide_by_single(&p("x^2-1"), &p("x-1"), &lex).unwrap();
        assert_eq!((q, r), (p("x+1"), p("0")));
        let (q, r) = divide_by_single(&p("x^2+y"), &p("x"), &lex).unwrap();
        assert_eq!((q, r), (p("x"), p("y")));
        let (q, r) = divide_by_single(&p("x*y+1"), &p("y^2"), &lex).unwrap();
        assert_eq!((q, r), (p("0"), p("x*y+1")));
        assert_eq!(
            divide_by_single(&p("x"), &p("0"), &lex),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn printing_is_canonical() {
        assert_eq!(
            format!("{}", p("1 + y + x^2 - 1/2*x*y")),
            "x^2 - 1/2*x*y + y + 1"
        );
        assert_eq!(format!("{}", p("-(x+y)^2")), "-x^2 - 2*x*y - y^2");
        assert_eq!(format!("{}", p("0*x")), "0");
        assert_eq!(format!("{}", p("-3")), "-3");
    }

    #[test]
    fn translate_and_eval() {
        let q = p("x^2*y + 3");
        let shifted = q.translate(&[rat(1, 1), rat(-2, 1)]);
        // shifted(0,0) = q(1,-2)
        assert_eq!(shifted.constant_term(), rat(1, 1));
        assert_eq!(q.eval(&[rat(1, 1), rat(-2, 1)]), rat(1, 1));
        assert_eq!(p("2/3*x - 4/3").primitive(), p("x - 2"));
        assert_eq!(p("-x*y").primitive(), p("x*y"));
    }
}
