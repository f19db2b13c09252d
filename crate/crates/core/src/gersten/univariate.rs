use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactpoly::{Monomial, Polynomial, Rational, Vars};
use crate::{Error, Result};

/// Dense univariate polynomial, coefficients from the constant term up.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly(Vec<Rational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(alloc::vec![c])
    }

    /// `t - a`.
    pub fn linear(a: &Rational) -> Self {
        UniPoly::new(alloc::vec![-a.clone(), Rational::one()])
    }

    /// Reads a polynomial in a single variable.
    pub fn from_polynomial(p: &Polynomial) -> Result<Self> {
        if p.vars().len() != 1 {
            return Err(Error::pre("expected a polynomial in one variable"));
        }
        let deg = p.total_degree().unwrap_or(0) as usize;
        let mut c = alloc::vec![Rational::zero(); deg + 1];
        for (m, a) in p.terms() {
            c[m.0[0] as usize] = a.clone();
        }
        Ok(UniPoly::new(c))
    }

    pub fn to_polynomial(&self, vars: Vars) -> Polynomial {
        Polynomial::from_terms(
            vars,
            self.0
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial([i as u32, 0, 0]), c.clone())),
        )
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly(Vec::new());
        }
        let mut out = alloc::vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.0.len() - 1;
        let lc = d.leading();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (UniPoly(Vec::new()), self.clone());
        }
        let mut quot = alloc::vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, b) in d.0.iter().enumerate() {
                    rem[k + j] -= &c * b;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Splits off `(t - a)^m` and returns `(m, cofactor)`.
    pub fn split_root(&self, a: &Rational) -> (i64, UniPoly) {
        let mut m = 0;
        let mut rest = self.clone();
        let lin = UniPoly::linear(a);
        while !rest.is_zero() && rest.eval(a).is_zero() {
            rest = rest.div_rem(&lin).0;
            m += 1;
        }
        (m, rest)
    }

    /// Rational roots with multiplicity, plus the root-free cofactor.
    pub fn rational_roots(&self) -> (Vec<(Rational, i64)>, UniPoly) {
        let mut roots = Vec::new();
        let mut rest = self.clone();
        if rest.is_zero() {
            return (roots, rest);
        }
        let (m, r) = rest.split_root(&Rational::zero());
        if m > 0 {
            roots.push((Rational::zero(), m));
        }
        rest = r;
        if rest.degree().unwrap_or(0) == 0 {
            return (roots, rest);
        }
        // rational root test on the integer-cleared polynomial
        let mut l = BigInt::one();
        for c in &rest.0 {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = rest
            .0
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        let lead_divs = divisors(ints.last().unwrap());
        let const_divs = divisors(&ints[0]);
        let mut candidates: Vec<Rational> = Vec::new();
        for p in &const_divs {
            for q in &lead_divs {
                for s in [p.clone(), -p.clone()] {
                    let c = Rational::new(s, q.clone());
                    if !candidates.contains(&c) {
                        candidates.push(c);
                    }
                }
            }
        }
        candidates.sort();
        for c in candidates {
            let (m, r) = rest.split_root(&c);
            if m > 0 {
                roots.push((c, m));
                rest = r;
            }
        }
        (roots, rest)
    }
}

/// Positive divisors by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let e = &n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial(Vars::new("t").unwrap()))
    }
}

/// Element of `Q(t)`, kept as `num / den` with `gcd = 1` and `den` monic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFunction {
    num: UniPoly,
    den: UniPoly,
}

impl RationalFunction {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFunction {
                num,
                den: UniPoly::constant(Rational::one()),
            });
        }
        let g = num.gcd(&den);
        let num = num.div_rem(&g).0;
        let den = den.div_rem(&g).0;
        let lc = den.leading();
        Ok(RationalFunction {
            num: num.scale(&lc.recip()),
            den: den.monic(),
        })
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RationalFunction::new(p, UniPoly::constant(Rational::one())).unwrap()
    }

    /// Parses `p` or `p / q` (top-level `/` between two parenthesized or
    /// plain polynomials in `t`).
    pub fn parse(src: &str) -> Result<Self> {
        let vars = Vars::new("t").unwrap();
        // a polynomial may itself contain `a/b` constants; try it whole first
        if let Ok(p) = Polynomial::parse(src, vars) {
            return Ok(Self::from_poly(UniPoly::from_polynomial(&p)?));
        }
        let mut depth = 0;
        for (i, c) in src.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                '/' if depth == 0 => {
                    let n = Polynomial::parse(&src[..i], vars)?;
                    let d = Polynomial::parse(&src[i + 1..], vars)?;
                    return RationalFunction::new(
                        UniPoly::from_polynomial(&n)?,
                        UniPoly::from_polynomial(&d)?,
                    );
                }
                _ => {}
            }
        }
        Polynomial::parse(src, vars).map(|_| unreachable!())
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalFunction::new(self.num.mul(&other.num), self.den.mul(&other.den)).unwrap()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.num.mul(&other.den);
        let m = other.num.mul(&self.den);
        let len = n.0.len().max(m.0.len());
        let mut s = alloc::vec![Rational::zero(); len];
        for (i, c) in n.0.iter().enumerate() {
            s[i] += c;
        }
        for (i, c) in m.0.iter().enumerate() {
            s[i] += c;
        }
        RationalFunction::new(UniPoly::new(s), self.den.mul(&other.den)).unwrap()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
