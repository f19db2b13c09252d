//! Local cohomology classes with decidable equality.
//!
//! `H1Class` is `ω / (s · f^k)` in `M_f / M` for an irreducible `f` and a
//! unit `s` prime to `f`. `H2Class` is `ω / (u^p v^q)` in
//! `colim_n M / (u^n, v^n) M` for a regular sequence `(u, v)`, with
//! transition maps multiplication by `u v`. `M` is a module of Kähler forms.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::differentials::DifferentialForm;
use crate::exactpoly::{
    buchberger, ideal_member, zero_dimensional, MonomialOrder, Polynomial, Rational, Vars,
};
use crate::{Error, Result};

/// Replaces `f` by its primitive associate `f'` (with `f = c f'`) and returns `c`.
fn normalize(f: &Polynomial) -> (Polynomial, Rational) {
    let prim = f.primitive();
    let (_, a) = f.leading_term(&MonomialOrder::grevlex()).unwrap();
    let (_, b) = prim.leading_term(&MonomialOrder::grevlex()).unwrap();
    (prim, a / b)
}

fn check_form_vars(f: &Polynomial, omega: &DifferentialForm) -> Result<()> {
    if f.vars() != omega.vars() {
        return Err(Error::VariableMismatch(
            f.vars().to_string(),
            omega.vars().to_string(),
        ));
    }
    Ok(())
}

/// Class of `ω / (s · f^k)` in `H^1_{(f)}(Ω^n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Class {
    f: Polynomial,
    k: u32,
    s: Polynomial,
    omega: DifferentialForm,
}

impl H1Class {
    /// `f` is taken to be irreducible; only nonconstancy is checked. `f` is
    /// replaced by its primitive associate and the scalar moved into `s`.
    pub fn new(f: Polynomial, k: u32, s: Polynomial, omega: DifferentialForm) -> Result<Self> {
        f.check_vars(&s)?;
        check_form_vars(&f, &omega)?;
        if f.is_constant() {
            return Err(Error::pre("the prime f must be nonconstant"));
        }
        if k == 0 {
            return Err(Error::pre("the pole order k must be positive"));
        }
        if s.is_zero() {
            return Err(Error::pre("the unit s must be nonzero"));
        }
        if f.divides(&s) {
            return Err(Error::pre(format!("f = {f} divides s = {s}")));
        }
        let (f, c) = normalize(&f);
        let s = s.scale(&num_traits::pow(c, k as usize));
        Ok(H1Class { f, k, s, omega })
    }

    pub fn prime(&self) -> &Polynomial {
        &self.f
    }

    pub fn power(&self) -> u32 {
        self.k
    }

    pub fn unit(&self) -> &Polynomial {
        &self.s
    }

    pub fn numerator(&self) -> &DifferentialForm {
        &self.omega
    }

    pub fn vars(&self) -> Vars {
        self.f.vars()
    }

    /// The zero class with the same prime and form degree.
    pub fn zero_like(&self) -> Self {
        H1Class {
            f: self.f.clone(),
            k: 1,
            s: Polynomial::one(self.vars()),
            omega: DifferentialForm::zero(self.vars(), self.omega.degree()),
        }
    }

    /// Numerator over the denominator `s · f^target` (`target >= k`).
    fn lifted(&self, target: u32) -> DifferentialForm {
        self.omega.mul_poly(&self.f.pow(target - self.k))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.f != other.f {
            return Err(Error::DifferentSupport);
        }
        let k = self.k.max(other.k);
        if self.s == other.s {
            return Ok(H1Class {
                f: self.f.clone(),
                k,
                s: self.s.clone(),
                omega: self.lifted(k).add(&other.lifted(k)),
            });
        }
        let omega = self
            .lifted(k)
            .mul_poly(&other.s)
            .add(&other.lifted(k).mul_poly(&self.s));
        Ok(H1Class {
            f: self.f.clone(),
            k,
            s: &self.s * &other.s,
            omega,
        })
    }

    pub fn neg(&self) -> Self {
        H1Class {
            omega: self.omega.neg(),
            ..self.clone()
        }
    }

    /// Parses `[ω / (s)*(f)^k @ (f)]`.
    pub fn parse(src: &str, vars: Vars) -> Result<Self> {
        let (body, support) = split_class(src)?;
        let f = Polynomial::parse(strip_parens(support), vars)?;
        let (omega, denom) =
            split_top(body, " / ").ok_or_else(|| Error::parse(0, "expected 'ω / denominator'"))?;
        let omega = DifferentialForm::parse(omega, vars)?;
        let factors = split_factors(denom)?;
        let [(s, 1), (f2, k)] = factors.as_slice() else {
            return Err(Error::parse(0, "expected denominator (s)*(f)^k"));
        };
        let s = Polynomial::parse(s, vars)?;
        let f2 = Polynomial::parse(f2, vars)?;
        if f2 != f {
            return Err(Error::parse(
                0,
                "denominator prime differs from the support",
            ));
        }
        H1Class::new(f, *k, s, omega)
    }
}

impl fmt::Display for H1Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{} / ({})*({})^{} @ ({})]",
            self.omega, self.s, self.f, self.k, self.f
        )
    }
}

pub fn h1_is_zero(c: &H1Class) -> bool {
    c.omega.divisible_by(&c.f.pow(c.k))
}

pub fn h1_equal(a: &H1Class, b: &H1Class) -> Result<bool> {
    if a.f != b.f {
        return Err(Error::DifferentSupport);
    }
    let k = a.k.max(b.k);
    let diff = a.lifted(k).mul_poly(&b.s).sub(&b.lifted(k).mul_poly(&a.s));
    Ok(diff.divisible_by(&a.f.pow(k)))
}

/// Class of `ω / (u^p v^q)` in `H^2_{(u,v)}(Ω^n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H2Class {
    u: Polynomial,
    v: Polynomial,
    p: u32,
    q: u32,
    omega: DifferentialForm,
}

/// Certifies that `(u, v)` cuts out a finite scheme.
pub fn regular_sequence_certificate(u: &Polynomial, v: &Polynomial) -> Result<()> {
    u.check_vars(v)?;
    let fail = || Error::NotRegularSequence(format!("{u}, {v}"));
    if u.is_zero() || v.is_zero() {
        return Err(fail());
    }
    let gb = buchberger(&[u.clone(), v.clone()], MonomialOrder::grevlex())?;
    if zero_dimensional(&gb) {
        Ok(())
    } else {
        Err(fail())
    }
}

impl H2Class {
    pub fn new(
        u: Polynomial,
        v: Polynomial,
        p: u32,
        q: u32,
        omega: DifferentialForm,
    ) -> Result<Self> {
        check_form_vars(&u, &omega)?;
        if p == 0 || q == 0 {
            return Err(Error::pre("powers must be positive"));
        }
        regular_sequence_certificate(&u, &v)?;
        let (u, cu) = normalize(&u);
        let (v, cv) = normalize(&v);
        let scale = num_traits::pow(cu, p as usize) * num_traits::pow(cv, q as usize);
        let omega = omega.scale(&scale.recip());
        Ok(H2Class { u, v, p, q, omega })
    }

    pub fn sequence(&self) -> (&Polynomial, &Polynomial) {
        (&self.u, &self.v)
    }

    pub fn powers(&self) -> (u32, u32) {
        (self.p, self.q)
    }

    pub fn numerator(&self) -> &DifferentialForm {
        &self.omega
    }

    pub fn vars(&self) -> Vars {
        self.u.vars()
    }

    pub fn zero_like(&self) -> Self {
        H2Class {
            p: 1,
            q: 1,
            omega: DifferentialForm::zero(self.vars(), self.omega.degree()),
            ..self.clone()
        }
    }

    fn same_presentation(&self, other: &Self) -> Result<()> {
        if self.u == other.u && self.v == other.v {
            Ok(())
        } else {
            Err(Error::DifferentPresentation)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_presentation(other)?;
        let (p, q) = (self.p.max(other.p), self.q.max(other.q));
        let a = h2_rebase(self, p, q)?;
        let b = h2_rebase(other, p, q)?;
        Ok(H2Class {
            omega: a.omega.add(&b.omega),
            ..a
        })
    }

    pub fn neg(&self) -> Self {
        H2Class {
            omega: self.omega.neg(),
            ..self.clone()
        }
    }

    /// Adds `u^p · α + v^q · β` to the numerator; the class is unchanged.
    pub fn perturbed(&self, alpha: &DifferentialForm, beta: &DifferentialForm) -> Self {
        let shift = alpha
            .mul_poly(&self.u.pow(self.p))
            .add(&beta.mul_poly(&self.v.pow(self.q)));
        H2Class {
            omega: self.omega.add(&shift),
            ..self.clone()
        }
    }

    /// Parses `[ω / (u)^p*(v)^q @ (u, v)]`.
    pub fn parse(src: &str, vars: Vars) -> Result<Self> {
        let (body, support) = split_class(src)?;
        let support = strip_parens(support);
        let (u, v) =
            split_top(support, ",").ok_or_else(|| Error::parse(0, "expected support (u, v)"))?;
        let u = Polynomial::parse(u, vars)?;
        let v = Polynomial::parse(v, vars)?;
        let (omega, denom) =
            split_top(body, " / ").ok_or_else(|| Error::parse(0, "expected 'ω / denominator'"))?;
        let omega = DifferentialForm::parse(omega, vars)?;
        let factors = split_factors(denom)?;
        let [(u2, p), (v2, q)] = factors.as_slice() else {
            return Err(Error::parse(0, "expected denominator (u)^p*(v)^q"));
        };
        if Polynomial::parse(u2, vars)? != u || Polynomial::parse(v2, vars)? != v {
            return Err(Error::parse(0, "denominator differs from the support"));
        }
        H2Class::new(u, v, *p, *q, omega)
    }
}

impl fmt::Display for H2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{} / ({})^{}*({})^{} @ ({}, {})]",
            self.omega, self.u, self.p, self.v, self.q, self.u, self.v
        )
    }
}

/// Zero test at the given level; sound because multiplication by `u v` is
/// injective on `M / (u^p, v^q) M` for a regular sequence.
pub fn h2_is_zero(c: &H2Class) -> Result<bool> {
    regular_sequence_certificate(&c.u, &c.v)?;
    if c.omega.is_zero() {
        return Ok(true);
    }
    let gb = buchberger(&[c.u.pow(c.p), c.v.pow(c.q)], MonomialOrder::grevlex())?;
    Ok(c.omega.components().all(|(_, p)| ideal_member(p, &gb)))
}

pub fn h2_rebase(c: &H2Class, p: u32, q: u32) -> Result<H2Class> {
    if p < c.p || q < c.q {
        return Err(Error::pre("rebase powers must not decrease"));
    }
    let factor = &c.u.pow(p - c.p) * &c.v.pow(q - c.q);
    Ok(H2Class {
        p,
        q,
        omega: c.omega.mul_poly(&factor),
        ..c.clone()
    })
}

pub fn h2_equal(a: &H2Class, b: &H2Class) -> Result<bool> {
    if a.omega.is_zero() {
        return h2_is_zero(b);
    }
    if b.omega.is_zero() {
        return h2_is_zero(a);
    }
    a.same_presentation(b)?;
    h2_is_zero(&a.add(&b.neg())?)
}

/// Finite Laurent-tail normal form of a class supported at a rational point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseSystemExpansion {
    pub point: Vec<Rational>,
    /// `(i, j)` with `i, j <= -1` ↦ constant-coefficient form multiplying
    /// `u^i v^j` (in the normalized coordinates `u`, `v`).
    pub terms: BTreeMap<(i64, i64), DifferentialForm>,
}

impl InverseSystemExpansion {
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Reads `c·(x_i - a)` off a linear polynomial in one variable.
fn coordinate(u: &Polynomial) -> Option<(usize, Rational, Rational)> {
    if u.total_degree() != Some(1) {
        return None;
    }
    let mut var = None;
    let mut scale = Rational::zero();
    for (m, c) in u.terms() {
        if m.is_one() {
            continue;
        }
        if var.is_some() {
            return None;
        }
        var = m.pure_power_of();
        scale = c.clone();
    }
    let i = var?;
    let root = -u.constant_term() / &scale;
    Some((i, scale, root))
}

/// Expands the numerator around the point `V(u, v)`, divides by `u^p v^q`
/// and keeps the terms that are polar in both coordinates.
pub fn inverse_system_normal_form(c: &H2Class) -> Result<InverseSystemExpansion> {
    let vars = c.vars();
    let non_coordinate = || Error::pre("(u, v) are not coordinate functions at a rational point");
    let (iu, cu, au) = coordinate(&c.u).ok_or_else(non_coordinate)?;
    let (iv, cv, av) = coordinate(&c.v).ok_or_else(non_coordinate)?;
    if iu == iv || vars.len() != 2 {
        return Err(non_coordinate());
    }
    let mut point = alloc::vec![Rational::zero(); vars.len()];
    point[iu] = au;
    point[iv] = av;
    let shifted = c.omega.translate(&point);
    let denom = num_traits::pow(cu, c.p as usize) * num_traits::pow(cv, c.q as usize);
    let mut terms: BTreeMap<(i64, i64), DifferentialForm> = BTreeMap::new();
    for (basis, coeff) in shifted.components() {
        for (m, a) in coeff.terms() {
            let key = (m.0[iu] as i64 - c.p as i64, m.0[iv] as i64 - c.q as i64);
            if key.0 >= 0 || key.1 >= 0 {
                continue;
            }
            let entry = terms
                .entry(key)
                .or_insert_with(|| DifferentialForm::zero(vars, shifted.degree()));
            entry.add_component(*basis, Polynomial::constant(vars, a / &denom));
        }
    }
    terms.retain(|_, w| !w.is_zero());
    Ok(InverseSystemExpansion { point, terms })
}

fn split_class(src: &str) -> Result<(&str, &str)> {
    let s = src.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::parse(0, "class must be enclosed in [ ]"))?;
    split_top(inner, "@").ok_or_else(|| Error::parse(0, "expected '@ (support)'"))
}

/// Splits at the last occurrence of `sep` outside parentheses.
fn split_top<'a>(s: &'a str, sep: &str) -> Option<(&'a str, &'a str)> {
    let bytes = s.as_bytes();
    let mut depth = 0i32;
    let mut found = None;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            _ if depth == 0 && s[i..].starts_with(sep) => found = Some(i),
            _ => {}
        }
    }
    found.map(|i| (s[..i].trim(), s[i + sep.len()..].trim()))
}

fn strip_parens(s: &str) -> &str {
    let s = s.trim();
    s.strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .map(str::trim)
        .unwrap_or(s)
}

/// Reads `(a)^m*(b)^n` (exponents optional) into `[(a, m), (b, n)]`.
fn split_factors(s: &str) -> Result<Vec<(&str, u32)>> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let r = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::parse(0, "denominator factors must be parenthesized"))?;
        let mut depth = 1;
        let close = r
            .char_indices()
            .find(|(_, c)| {
                match c {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    _ => {}
                }
                depth == 0
            })
            .map(|(i, _)| i)
            .ok_or_else(|| Error::parse(0, "unbalanced parentheses"))?;
        let inner = &r[..close];
        rest = r[close + 1..].trim_start();
        let mut exp = 1;
        if let Some(r) = rest.strip_prefix('^') {
            let digits: &str = &r[..r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len())];
            exp = digits
                .parse()
                .map_err(|_| Error::parse(0, "bad exponent"))?;
            rest = r[digits.len()..].trim_start();
        }
        out.push((inner, exp));
        if let Some(r) = rest.strip_prefix('*') {
            rest = r.trim_start();
        } else if !rest.is_empty() {
            return Err(Error::parse(0, "expected '*' between denominator factors"));
        }
    }
    Ok(out)
}

impl InverseSystemExpansion {
    /// Adds the expansions term by term.
    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, w) in &other.terms {
            let merged = match terms.remove(k) {
                Some(v) => v.add(w),
                None => w.clone(),
            };
            if !merged.is_zero() {
                terms.insert(*k, merged);
            }
        }
        InverseSystemExpansion {
            point: self.point.clone(),
            terms,
        }
    }
}

impl fmt::Display for InverseSystemExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("{}");
        }
        f.write_str("{")?;
        for (n, ((i, j), w)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({i},{j}): {w}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Vars {
        Vars::xy()
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, vars()).unwrap()
    }

    fn w(s: &str) -> DifferentialForm {
        DifferentialForm::parse(s, vars()).unwrap()
    }

    fn h1(omega: &str, s: &str, f: &str, k: u32) -> H1Class {
        H1Class::new(p(f), k, p(s), w(omega)).unwrap()
    }

    fn h2(omega: &str, u: &str, v: &str, a: u32, b: u32) -> H2Class {
        H2Class::new(p(u), p(v), a, b, w(omega)).unwrap()
    }

    #[test]
    fn h1_zero_examples() {
        assert!(h1_is_zero(&h1("y*d(x)", "1", "y", 1)));
        assert!(!h1_is_zero(&h1("d(x)", "x", "y", 1)));
        assert!(h1_is_zero(&h1("0*d(x)", "x", "y", 1)));
        assert!(H1Class::new(p("y"), 1, p("x*y"), w("d(x)")).is_err());
        assert!(H1Class::new(p("3"), 1, p("x"), w("d(x)")).is_err());
    }

    #[test]
    fn h1_equal_examples() {
        let a = h1("x*d(y) + d(x)", "x+1", "y", 1);
        let shifted = h1("x*d(y) + d(x) + (y*x^2 + y)*d(y)", "x+1", "y", 1);
        assert!(h1_equal(&a, &shifted).unwrap());
        assert!(!h1_equal(&h1("d(x)", "1", "y", 1), &h1("d(x)", "1", "y", 2)).unwrap());
        assert!(h1_equal(&a, &a).unwrap());
        assert_eq!(
            h1_equal(&a, &h1("d(x)", "1", "x", 1)),
            Err(Error::DifferentSupport)
        );
        // scaling the prime is absorbed into the unit
        assert!(h1_equal(&h1("d(x)", "1", "2*y", 1), &h1("1/2*d(x)", "1", "y", 1)).unwrap());
    }

    #[test]
    fn h2_zero_examples() {
        assert!(h2_is_zero(&h2("x*d(y)", "x", "y", 1, 1)).unwrap());
        assert!(!h2_is_zero(&h2("d(y)", "x", "y", 1, 1)).unwrap());
        assert!(h2_is_zero(&h2("y^2*d(x)", "x", "y^2", 1, 1)).unwrap());
        assert!(matches!(
            H2Class::new(p("x"), p("x*y"), 1, 1, w("d(x)")),
            Err(Error::NotRegularSequence(_))
        ));
    }

    #[test]
    fn h2_equal_examples() {
        let a = h2("d(y)", "x", "y", 1, 1);
        assert!(h2_equal(&a, &h2("d(y) + x*d(x)", "x", "y", 1, 1)).unwrap());
        assert!(!h2_equal(&a, &h2("d(x)", "x", "y", 1, 1)).unwrap());
        assert!(h2_equal(&a, &a).unwrap());
        assert_eq!(
            h2_equal(&a, &h2("d(y)", "y", "x", 1, 1)),
            Err(Error::DifferentPresentation)
        );
    }

    #[test]
    fn rebase_examples() {
        let a = h2("d(y)", "x", "y", 1, 1);
        let b = h2_rebase(&a, 2, 2).unwrap();
        assert_eq!(b.numerator(), &w("x*y*d(y)"));
        assert!(h2_equal(&a, &b).unwrap());
        assert_eq!(h2_rebase(&a, 1, 1).unwrap(), a);
        assert!(h2_rebase(&b, 1, 2).is_err());
        assert_eq!(
            inverse_system_normal_form(&a).unwrap(),
            inverse_system_normal_form(&b).unwrap()
        );
    }

    #[test]
    fn expansion_examples() {
        let e = inverse_system_normal_form(&h2("(1+x)*d(y)", "x", "y", 2, 1)).unwrap();
        let want: BTreeMap<_, _> = [((-2, -1), w("d(y)")), ((-1, -1), w("d(y)"))].into();
        assert_eq!(e.terms, want);
        assert!(
            inverse_system_normal_form(&h2("x^2*y*d(y)", "x", "y", 2, 1))
                .unwrap()
                .is_empty()
        );
        let e = inverse_system_normal_form(&h2("d(y)", "x", "y", 1, 1)).unwrap();
        assert_eq!(e.terms, [((-1, -1), w("d(y)"))].into());
        // off-origin point and scaled coordinates
        let e = inverse_system_normal_form(&h2("x*d(y)", "2*x-2", "y+3", 1, 1)).unwrap();
        assert_eq!(e.terms, [((-1, -1), w("1/2*d(y)"))].into());
        assert!(inverse_system_normal_form(&h2("d(y)", "x^2", "y", 1, 1)).is_err());
    }

    #[test]
    fn printing_round_trip() {
        let a = h1("(x + 1)*d(x) - 3*d(y)", "x - 1", "y^2 + x", 2);
        assert_eq!(
            a.to_string(),
            "[(x + 1)*d(x) - 3*d(y) / (x - 1)*(y^2 + x)^2 @ (y^2 + x)]"
        );
        assert_eq!(H1Class::parse(&a.to_string(), vars()).unwrap(), a);
        let b = h2("x^2*d(y)", "y", "x - 1", 2, 3);
        assert_eq!(b.to_string(), "[x^2*d(y) / (y)^2*(x - 1)^3 @ (y, x - 1)]");
        assert_eq!(H2Class::parse(&b.to_string(), vars()).unwrap(), b);
        assert!(H1Class::parse("[d(x) / (1)*(y)^1 @ (x)]", vars()).is_err());
    }
}
