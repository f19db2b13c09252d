//! Kähler differentials `Ω^n` of `Q[x_1..x_k]` over `Q`, the exterior
//! derivative, wedge products, and the direct-sum bundles
//! `Ω^{m+j-1} ⊕ Ω^{m+j-3} ⊕ …`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed};

use crate::exactpoly::parse::Parser;
use crate::exactpoly::{Polynomial, Rational, Vars};
use crate::{Error, Result};

/// Set of variable indices `i_1 < … < i_n`, stored as a bit mask; stands for
/// `dx_{i_1} ∧ … ∧ dx_{i_n}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Basis(u8);

impl Basis {
    pub const EMPTY: Basis = Basis(0);

    pub fn from_indices(idx: &[usize]) -> Option<Basis> {
        let mut mask = 0u8;
        for &i in idx {
            if mask & (1 << i) != 0 {
                return None;
            }
            mask |= 1 << i;
        }
        Some(Basis(mask))
    }

    pub fn degree(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..8).filter(move |i| self.0 & (1 << i) != 0)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    /// `self ∧ other` as `(sign, basis)`, or `None` if they share an index.
    pub fn wedge(&self, other: &Basis) -> Option<(bool, Basis)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // sign of sorting the concatenation: pairs (i in self, j in other) with i > j
        let mut swaps = 0;
        for i in self.indices() {
            swaps += other.indices().filter(|&j| j < i).count();
        }
        Some((swaps % 2 == 1, Basis(self.0 | other.0)))
    }

    /// All index sets of size `n` among `k` variables, in increasing order.
    pub fn all(k: usize, n: usize) -> Vec<Basis> {
        let mut out: Vec<Basis> = (0u16..(1 << k))
            .filter(|m| m.count_ones() as usize == n)
            .map(|m| Basis(m as u8))
            .collect();
        out.sort_by_key(|b| b.indices().collect::<Vec<_>>());
        out
    }

    fn sort_key(&self) -> Vec<usize> {
        self.indices().collect()
    }
}

/// Homogeneous element of `Ω^n_{Q[vars]/Q}`.
#[derive(Clone, PartialEq, Eq)]
pub struct DifferentialForm {
    vars: Vars,
    degree: usize,
    components: BTreeMap<Basis, Polynomial>,
}

impl DifferentialForm {
    pub fn zero(vars: Vars, degree: usize) -> Self {
        DifferentialForm {
            vars,
            degree,
            components: BTreeMap::new(),
        }
    }

    /// The 0-form `p`.
    pub fn function(p: Polynomial) -> Self {
        let mut w = Self::zero(p.vars(), 0);
        w.add_component(Basis::EMPTY, p);
        w
    }

    /// `p · dx_{i_1} ∧ … ∧ dx_{i_n}` with arbitrary (unsorted) indices.
    pub fn monomial_form(p: Polynomial, idx: &[usize]) -> Self {
        let vars = p.vars();
        let mut w = Self::function(p);
        for &i in idx {
            w = w.wedge(&Self::dx(vars, i));
        }
        if w.is_zero() {
            w.degree = idx.len();
        }
        w
    }

    pub fn dx(vars: Vars, i: usize) -> Self {
        assert!(i < vars.len(), "variable index out of range");
        let mut w = Self::zero(vars, 1);
        w.add_component(Basis(1 << i), Polynomial::one(vars));
        w
    }

    pub fn vars(&self) -> Vars {
        self.vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Basis, &Polynomial)> {
        self.components.iter()
    }

    pub fn coefficient(&self, b: &Basis) -> Polynomial {
        self.components
            .get(b)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.vars))
    }

    pub fn add_component(&mut self, b: Basis, p: Polynomial) {
        assert_eq!(p.vars(), self.vars, "variable lists differ");
        assert_eq!(
            b.degree(),
            self.degree,
            "basis degree differs from form degree"
        );
        if p.is_zero() {
            return;
        }
        let sum = match self.components.remove(&b) {
            Some(q) => &q + &p,
            None => p,
        };
        if !sum.is_zero() {
            self.components.insert(b, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.clone();
        for (b, p) in &other.components {
            out.add_component(*b, p.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coefficients(|p| -p)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_coefficients(|p| p.scale(c))
    }

    /// `p · ω`.
    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        self.map_coefficients(|q| q * p)
    }

    pub fn map_coefficients(&self, mut f: impl FnMut(&Polynomial) -> Polynomial) -> Self {
        let mut out = Self::zero(self.vars, self.degree);
        for (b, p) in &self.components {
            out.add_component(*b, f(p));
        }
        out
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "variable lists differ");
        assert_eq!(self.degree, other.degree, "form degrees differ");
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "variable lists differ");
        let mut out = Self::zero(self.vars, self.degree + other.degree);
        for (a, p) in &self.components {
            for (b, q) in &other.components {
                if let Some((neg, c)) = a.wedge(b) {
                    let pq = p * q;
                    out.add_component(c, if neg { -pq } else { pq });
                }
            }
        }
        out
    }

    /// Exterior derivative.
    pub fn d(&self) -> Self {
        let mut out = Self::zero(self.vars, self.degree + 1);
        for (b, p) in &self.components {
            for i in 0..self.vars.len() {
                if b.contains(i) {
                    continue;
                }
                let dp = p.derivative(i);
                if dp.is_zero() {
                    continue;
                }
                let (neg, c) = Basis(1 << i).wedge(b).unwrap();
                out.add_component(c, if neg { -dp } else { dp });
            }
        }
        out
    }

    /// Whether `f` divides every coefficient.
    pub fn divisible_by(&self, f: &Polynomial) -> bool {
        self.components.values().all(|p| f.divides(p))
    }

    /// Coefficients translated by `p(x) ↦ p(x + shift)`.
    pub fn translate(&self, shift: &[Rational]) -> Self {
        self.map_coefficients(|p| p.translate(shift))
    }

    /// Parses the form grammar, e.g. `3*x*d(x)^d(y) - d(x*y)`.
    pub fn parse(src: &str, vars: Vars) -> Result<Self> {
        let mut parser = Parser::new(src);
        let w = parse_form_expr(&mut parser, vars)?;
        parser.finish()?;
        Ok(w)
    }
}

fn parse_form_expr(p: &mut Parser<'_>, vars: Vars) -> Result<DifferentialForm> {
    let mut terms: Vec<(bool, DifferentialForm, usize)> = Vec::new();
    let mut neg = false;
    match p.peek() {
        Some(b'-') => {
            p.bump();
            neg = true;
        }
        Some(b'+') => {
            p.bump();
        }
        _ => {}
    }
    loop {
        let at = p.pos();
        let t = parse_form_term(p, vars)?;
        terms.push((neg, t, at));
        match p.peek() {
            Some(b'+') => {
                p.bump();
                neg = false;
            }
            Some(b'-') => {
                p.bump();
                neg = true;
            }
            _ => break,
        }
    }
    let degree = terms[0].1.degree;
    let mut acc = DifferentialForm::zero(vars, degree);
    for (neg, t, at) in terms {
        if t.degree != degree {
            return Err(Error::parse(at, "form is not homogeneous"));
        }
        acc = if neg { acc.sub(&t) } else { acc.add(&t) };
    }
    Ok(acc)
}

fn parse_form_term(p: &mut Parser<'_>, vars: Vars) -> Result<DifferentialForm> {
    let mut acc = DifferentialForm::function(Polynomial::one(vars));
    loop {
        let factor = if p.looking_at("d(") {
            p.bump();
            p.bump();
            let inner = p.expr(vars)?;
            p.expect(b')')?;
            DifferentialForm::function(inner).d()
        } else if p.peek() == Some(b'-') {
            p.bump();
            DifferentialForm::function(-p.factor(vars)?)
        } else {
            DifferentialForm::function(p.factor(vars)?)
        };
        acc = acc.wedge(&factor);
        while p.peek() == Some(b'/') {
            p.bump();
            let at = p.pos();
            let c = p.factor(vars)?;
            if !c.is_constant() {
                return Err(Error::parse(at, "division by a non-constant"));
            }
            if c.is_zero() {
                return Err(Error::DivisionByZero);
            }
            acc = acc.scale(&c.constant_term().recip());
        }
        if p.peek() == Some(b'*') || p.looking_at("^d(") {
            p.bump();
        } else {
            return Ok(acc);
        }
    }
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("0");
        }
        let mut comps: Vec<_> = self.components.iter().collect();
        comps.sort_by_key(|(b, _)| b.sort_key());
        for (k, (b, p)) in comps.into_iter().enumerate() {
            let single = p.len() == 1;
            let (m, c) = p.terms().next().unwrap();
            let negative = single && c.is_negative();
            match (k == 0, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if b.degree() == 0 {
                if single {
                    write!(f, "{}", if negative { -p } else { p.clone() })?;
                } else {
                    write!(f, "({p})")?;
                }
                continue;
            }
            if single {
                let abs = c.abs();
                let mut star = false;
                if !abs.is_one() || m.is_one() && !abs.is_one() {
                    write!(f, "{abs}")?;
                    star = true;
                }
                if !m.is_one() {
                    if star {
                        f.write_str("*")?;
                    }
                    p.fmt_monomial(m, f)?;
                    star = true;
                }
                if star {
                    f.write_str("*")?;
                }
            } else {
                write!(f, "({p})*")?;
            }
            for (n, i) in b.indices().enumerate() {
                if n > 0 {
                    f.write_str("^")?;
                }
                write!(f, "d({})", self.vars.name(i))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[{}; deg {}]({})", self.vars, self.degree, self)
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Dimension over `Q` of the internal-degree-`d` piece of `Ω^n` of a
/// polynomial ring in `num_vars` variables, where every `x_i` and every
/// `dx_i` has degree one.
pub fn graded_dimension(n: usize, d: usize, num_vars: usize) -> u64 {
    if n > num_vars || d < n {
        return 0;
    }
    let forms = binomial(num_vars as u64, n as u64);
    let rest = (d - n) as u64;
    let monomials = if num_vars == 0 {
        u64::from(rest == 0)
    } else {
        binomial(rest + num_vars as u64 - 1, num_vars as u64 - 1)
    };
    forms * monomials
}

/// Same as [`graded_dimension`] but accepts a possibly negative degree,
/// for which the module is zero.
pub fn graded_dimension_signed(n: i64, d: usize, num_vars: usize) -> u64 {
    if n < 0 {
        0
    } else {
        graded_dimension(n as usize, d, num_vars)
    }
}

/// Summand degrees of `Ω^{m+j-1} ⊕ Ω^{m+j-3} ⊕ …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleDegrees {
    /// Every nonnegative degree produced by the formula.
    pub formal: Vec<usize>,
    /// Degrees not exceeding the variable count; the others are zero modules.
    pub effective: Vec<usize>,
}

pub fn omega_bundle(m: i64, j: u32, num_vars: usize) -> BundleDegrees {
    let mut formal = Vec::new();
    let mut deg = m + j as i64 - 1;
    while deg >= 0 {
        formal.push(deg as usize);
        deg -= 2;
    }
    let effective = formal.iter().copied().filter(|&n| n <= num_vars).collect();
    BundleDegrees { formal, effective }
}

/// Element of the bundle `Ω^{m+j-1} ⊕ Ω^{m+j-3} ⊕ …`, one form per
/// effective summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaBundle {
    pub weight: i64,
    pub codim: u32,
    parts: Vec<DifferentialForm>,
}

impl OmegaBundle {
    pub fn zero(weight: i64, codim: u32, vars: Vars) -> Self {
        let parts = omega_bundle(weight, codim, vars.len())
            .effective
            .into_iter()
            .map(|n| DifferentialForm::zero(vars, n))
            .collect();
        OmegaBundle {
            weight,
            codim,
            parts,
        }
    }

    pub fn new(weight: i64, codim: u32, parts: Vec<DifferentialForm>) -> Result<Self> {
        let Some(vars) = parts.first().map(|w| w.vars()) else {
            return Ok(OmegaBundle {
                weight,
                codim,
                parts,
            });
        };
        let want = omega_bundle(weight, codim, vars.len()).effective;
        let got: Vec<usize> = parts.iter().map(|w| w.degree()).collect();
        if want != got {
            return Err(Error::pre(alloc::format!(
                "bundle summands have degrees {got:?}, expected {want:?}"
            )));
        }
        Ok(OmegaBundle {
            weight,
            codim,
            parts,
        })
    }

    pub fn parts(&self) -> &[DifferentialForm] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(DifferentialForm::is_zero)
    }
}

/// Degree of the eigen-summand `Ω^{2i-(m+j)-1}` when `(m+j)/2 < i <= m+j`.
pub fn eigen_omega_degree(m: i64, j: u32, i: i64) -> Option<usize> {
    let w = m + j as i64;
    (2 * i > w && i <= w).then(|| (2 * i - w - 1) as usize)
}

/// The `i`-th eigenpiece of the bundle; `form` is `None` outside the range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenOmega {
    pub weight: i64,
    pub codim: u32,
    pub index: i64,
    pub form: Option<DifferentialForm>,
}

impl EigenOmega {
    pub fn new(weight: i64, codim: u32, index: i64, form: DifferentialForm) -> Result<Self> {
        match eigen_omega_degree(weight, codim, index) {
            None => Ok(EigenOmega {
                weight,
                codim,
                index,
                form: None,
            }),
            Some(n) if n == form.degree() => Ok(EigenOmega {
                weight,
                codim,
                index,
                form: Some(form),
            }),
            Some(n) => Err(Error::pre(alloc::format!(
                "eigenpiece {index} has degree {n}, got a {}-form",
                form.degree()
            ))),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.form.as_ref().is_none_or(DifferentialForm::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn xy() -> Vars {
        Vars::xy()
    }

    fn form(s: &str) -> DifferentialForm {
        DifferentialForm::parse(s, xy()).unwrap()
    }

    fn poly(s: &str) -> Polynomial {
        Polynomial::parse(s, xy()).unwrap()
    }

    #[test]
    fn d_examples() {
        assert_eq!(
            DifferentialForm::function(poly("x*y")).d(),
            form("y*d(x) + x*d(y)")
        );
        assert_eq!(
            DifferentialForm::function(poly("x^2")).d(),
            form("2*x*d(x)")
        );
        assert!(form("x^3*y*d(x)").d().d().is_zero());
    }

    #[test]
    fn wedge_examples() {
        let (dx, dy) = (form("d(x)"), form("d(y)"));
        assert_eq!(dx.wedge(&dy), form("d(x)^d(y)"));
        assert_eq!(dy.wedge(&dx), form("-d(x)^d(y)"));
        assert!(dx.wedge(&dx).is_zero());
        assert_eq!(form("x*d(y)").wedge(&dx), form("-x*d(x)^d(y)"));
    }

    #[test]
    fn printing() {
        assert_eq!(form("3*x*d(x)^d(y)").to_string(), "3*x*d(x)^d(y)");
        assert_eq!(form("d(y) - x^2*d(x)").to_string(), "-x^2*d(x) + d(y)");
        assert_eq!(
            form("(x+1)*d(x) + 1/2*d(y)").to_string(),
            "(x + 1)*d(x) + 1/2*d(y)"
        );
        assert_eq!(form("x + y").to_string(), "(x + y)");
        assert_eq!(form("0*d(x)").to_string(), "0");
        assert!(DifferentialForm::parse("d(x) + x", xy()).is_err());
        assert!(DifferentialForm::parse("d(w)", xy()).is_err());
        for s in [
            "-d(x)",
            "2*d(x)",
            "-2*x*y^2*d(x)^d(y)",
            "(x - 1)*d(x) - 3*d(y)",
            "-x",
        ] {
            let w = form(s);
            assert_eq!(form(&w.to_string()), w, "{s}");
        }
    }

    #[test]
    fn graded_dimension_examples() {
        assert_eq!(graded_dimension(1, 1, 2), 2);
        assert_eq!(graded_dimension(0, 3, 1), 1);
        for d in 0..6 {
            assert_eq!(graded_dimension(3, d, 2), 0);
        }
        assert_eq!(graded_dimension(0, 0, 0), 1);
        assert_eq!(graded_dimension(0, 1, 0), 0);
    }

    /// Direct enumeration: sorted n-subsets times monomials of degree d - n.
    fn enumerate_dimension(n: usize, d: usize, k: usize) -> u64 {
        if d < n {
            return 0;
        }
        let subsets = Basis::all(k, n).len() as u64;
        let mut monomials = 0u64;
        let rest = d - n;
        let mut stack = alloc::vec![(0usize, rest)];
        // count exponent vectors of length k summing to rest
        while let Some((i, left)) = stack.pop() {
            if i + 1 == k || k == 0 {
                if k == 0 && left > 0 {
                    continue;
                }
                monomials += 1;
                continue;
            }
            for e in 0..=left {
                stack.push((i + 1, left - e));
            }
        }
        subsets * monomials
    }

    #[test]
    fn graded_dimension_matches_enumeration() {
        for k in 0..=3 {
            for n in 0..=4 {
                for d in 0..=6 {
                    assert_eq!(
                        graded_dimension(n, d, k),
                        enumerate_dimension(n, d, k),
                        "{n} {d} {k}"
                    );
                }
            }
        }
    }

    #[test]
    fn bundle_examples() {
        assert_eq!(omega_bundle(2, 0, 2).effective, [1]);
        let b = omega_bundle(2, 2, 2);
        assert_eq!((b.formal, b.effective), (alloc::vec![3, 1], alloc::vec![1]));
        assert!(omega_bundle(0, 0, 2).formal.is_empty());
        let z = OmegaBundle::zero(4, 0, xy());
        assert_eq!(
            z.parts().iter().map(|w| w.degree()).collect::<Vec<_>>(),
            [1]
        );
        assert!(OmegaBundle::new(2, 0, alloc::vec![form("d(x)^d(y)")]).is_err());
    }

    #[test]
    fn eigen_degree_range() {
        for m in 0..6i64 {
            for j in 0..3u32 {
                let w = m + j as i64;
                for i in -2..8 {
                    match eigen_omega_degree(m, j, i) {
                        // degree 0 occurs exactly when m + j is odd and i = (m+j+1)/2
                        Some(n) => {
                            assert!((n as i64) < w);
                            assert_eq!(n == 0, w % 2 == 1 && 2 * i == w + 1);
                        }
                        None => assert!(2 * i <= w || i > w),
                    }
                }
            }
        }
        let e = EigenOmega::new(2, 0, 5, form("d(x)")).unwrap();
        assert!(e.form.is_none() && e.is_zero());
        assert!(EigenOmega::new(2, 0, 2, form("d(x)^d(y)")).is_err());
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(((0u32..=4, 0u32..=4), -5i64..=5), 0..6).prop_map(|terms| {
            let mut p = Polynomial::zero(Vars::xy());
            for ((a, b), c) in terms {
                if a + b <= 4 {
                    p.add_term(
                        crate::exactpoly::Monomial([a, b, 0]),
                        Rational::from_integer(c.into()),
                    );
                }
            }
            p
        })
    }

    fn small_form() -> impl Strategy<Value = DifferentialForm> {
        (0usize..=2, small_poly(), small_poly()).prop_map(|(deg, p, q)| match deg {
            0 => DifferentialForm::function(p),
            1 => DifferentialForm::monomial_form(p, &[0])
                .add(&DifferentialForm::monomial_form(q, &[1])),
            _ => DifferentialForm::monomial_form(p, &[0, 1]),
        })
    }

    proptest! {
        #[test]
        fn d_squared_vanishes(w in small_form()) {
            prop_assert!(w.d().d().is_zero());
        }

        #[test]
        fn leibniz(p in small_poly(), q in small_poly()) {
            let lhs = DifferentialForm::function(&p * &q).d();
            let rhs = DifferentialForm::function(q.clone()).d().mul_poly(&p)
                .add(&DifferentialForm::function(p).d().mul_poly(&q));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn graded_anticommutativity(a in small_form(), b in small_form()) {
            let ab = a.wedge(&b);
            let ba = b.wedge(&a);
            let sign = (a.degree() * b.degree()) % 2 == 1;
            prop_assert_eq!(ab, if sign { ba.neg() } else { ba });
        }

        #[test]
        fn form_text_round_trip(w in small_form()) {
            let back = DifferentialForm::parse(&w.to_string(), Vars::xy()).unwrap();
            if w.is_zero() {
                prop_assert!(back.is_zero());
            } else {
                prop_assert_eq!(back, w);
            }
        }
    }
}
