//! Relative Hochschild, cyclic and negative cyclic homology of
//! `R[t]/(t^{j+1})` over `Q`, for `R = Q, Q[x], Q[x, y]`, with the
//! λ-decomposition.
//!
//! Chains are normalized and relative (some factor lies in `(t)`). Every
//! operator preserves the multidegree in the polynomial variables and the
//! total `t`-exponent, so all linear algebra runs on these fine blocks. `HC`
//! is the homology of the `(b, B)` total complex `C_n ⊕ C_{n-2} ⊕ …` and
//! `HN_n` is read off as `HC_{n-1}`, which holds for nilpotent ideals.

mod chains;
mod engine;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

pub use chains::{format_tensor, Grade, Mono, Tensor};
pub use engine::CyclicEngine;

use chains::{adams, connes_b, hochschild_b, next_permutation};
use engine::{weights, Kind};

use crate::differentials::{graded_dimension, graded_dimension_signed, Basis, DifferentialForm};
use crate::exactpoly::{Rational, RationalMatrix, SparseVec};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseRing {
    Q,
    Qx,
    Qxy,
}

impl BaseRing {
    pub fn num_vars(&self) -> usize {
        match self {
            BaseRing::Q => 0,
            BaseRing::Qx => 1,
            BaseRing::Qxy => 2,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match compact.as_str() {
            "Q" => Ok(BaseRing::Q),
            "Q[x]" => Ok(BaseRing::Qx),
            "Q[x,y]" => Ok(BaseRing::Qxy),
            _ => Err(Error::parse(0, format!("unknown base ring '{s}'"))),
        }
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaseRing::Q => "Q",
            BaseRing::Qx => "Q[x]",
            BaseRing::Qxy => "Q[x,y]",
        })
    }
}

/// `R[t]/(t^{j+1})`; `j = 1` gives the dual numbers `R[ε]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlgebraSpec {
    pub base: BaseRing,
    pub j: u32,
}

impl AlgebraSpec {
    pub fn new(base: BaseRing, j: u32) -> Result<Self> {
        if j == 0 {
            return Err(Error::pre("the thickening order j must be at least 1"));
        }
        Ok(AlgebraSpec { base, j })
    }

    pub fn dual_numbers(base: BaseRing) -> Self {
        AlgebraSpec { base, j: 1 }
    }

    pub fn num_vars(&self) -> usize {
        self.base.num_vars()
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.j == 1 {
            write!(f, "{}[ε]", self.base)
        } else {
            write!(f, "{}[t]/(t^{})", self.base, self.j + 1)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Theory {
    HH,
    HC,
    HN,
}

impl Theory {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hh" => Ok(Theory::HH),
            "hc" => Ok(Theory::HC),
            "hn" => Ok(Theory::HN),
            _ => Err(Error::parse(0, format!("unknown theory '{s}'"))),
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::HH => "HH",
            Theory::HC => "HC",
            Theory::HN => "HN",
        })
    }
}

pub const MAX_THICKENING: u32 = 3;
pub const MAX_INTERNAL_DEGREE: usize = 4;

/// Largest chain degree handled for the given base.
pub fn max_degree(base: BaseRing) -> usize {
    if base.num_vars() <= 1 {
        5
    } else {
        4
    }
}

pub fn check_bounds(alg: &AlgebraSpec, n: usize, d: usize) -> Result<()> {
    if alg.j > MAX_THICKENING {
        return Err(Error::BoundsExceeded(format!(
            "j = {} > {MAX_THICKENING}",
            alg.j
        )));
    }
    if d > MAX_INTERNAL_DEGREE {
        return Err(Error::BoundsExceeded(format!(
            "d = {d} > {MAX_INTERNAL_DEGREE}"
        )));
    }
    let top = max_degree(alg.base);
    if n > top {
        return Err(Error::BoundsExceeded(format!(
            "n = {n} > {top} over {}",
            alg.base
        )));
    }
    Ok(())
}

/// Degree-`n`, internal-degree-`d` relative chains with `b` and `B`.
#[derive(Clone, Debug)]
pub struct GradedSlice {
    pub alg: AlgebraSpec,
    pub n: usize,
    pub d: usize,
    pub basis: Vec<Tensor>,
    /// `C_n → C_{n-1}`.
    pub b: RationalMatrix,
    /// `C_n → C_{n+1}`.
    pub connes: RationalMatrix,
}

impl GradedSlice {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// `Σ c_k · op(x_k)`, accumulated.
fn apply_terms(
    input: &[(Tensor, i64)],
    op: impl Fn(&[Mono]) -> Vec<(Tensor, i64)>,
) -> BTreeMap<Tensor, i64> {
    let mut acc: BTreeMap<Tensor, i64> = BTreeMap::new();
    for (x, c) in input {
        for (y, e) in op(x) {
            *acc.entry(y).or_insert(0) += c * e;
        }
    }
    acc.retain(|_, c| *c != 0);
    acc
}

fn identities_hold(x: &[Mono], j: u32) -> bool {
    let me = alloc::vec![(x.to_vec(), 1i64)];
    let bb = apply_terms(
        &apply_terms(&me, |y| hochschild_b(y, j))
            .into_iter()
            .collect::<Vec<_>>(),
        |y| hochschild_b(y, j),
    );
    let cc = apply_terms(
        &apply_terms(&me, connes_b).into_iter().collect::<Vec<_>>(),
        connes_b,
    );
    let mut mixed = apply_terms(
        &apply_terms(&me, connes_b).into_iter().collect::<Vec<_>>(),
        |y| hochschild_b(y, j),
    );
    for (y, c) in apply_terms(
        &apply_terms(&me, |y| hochschild_b(y, j))
            .into_iter()
            .collect::<Vec<_>>(),
        connes_b,
    ) {
        *mixed.entry(y).or_insert(0) += c;
    }
    mixed.retain(|_, c| *c != 0);
    bb.is_empty() && cc.is_empty() && mixed.is_empty()
}

/// Signed sum over the shuffles defining `ψ^k`, as a matrix on one slice.
pub fn adams_psi(alg: &AlgebraSpec, n: usize, d: usize, k: usize) -> Result<RationalMatrix> {
    check_bounds(alg, n, d)?;
    let mut eng = CyclicEngine::new(*alg);
    let (lay, len) = eng.slice(n, d);
    let mut cols = Vec::with_capacity(len);
    for (g, off, blk) in &lay {
        for x in &blk.basis {
            let _ = g;
            cols.push(blk.vector(&adams(x, k)).shifted(*off));
        }
    }
    Ok(RationalMatrix::from_columns(len, &cols))
}

/// Eigenprojector for weight `i` on a Hochschild homology slice.
#[derive(Clone, Debug)]
pub struct EigenProjector {
    pub n: usize,
    pub d: usize,
    pub i: usize,
    pub matrix: RationalMatrix,
}

/// Structural facts about the projectors on one slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProjectorCheck {
    pub idempotent: bool,
    pub orthogonal: bool,
    pub complete: bool,
    /// `b E^{(i)} = E^{(i)} b` on chains.
    pub commutes_with_b: bool,
    /// `B E^{(i)} = E^{(i+1)} B` on chains.
    pub shifts_with_connes: bool,
}

impl ProjectorCheck {
    pub fn all(&self) -> bool {
        self.idempotent
            && self.orthogonal
            && self.complete
            && self.commutes_with_b
            && self.shifts_with_connes
    }
}

/// Chain of the Hochschild complex, e.g. an image of the antisymmetrization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub degree: usize,
    pub j: u32,
    pub terms: BTreeMap<Tensor, Rational>,
}

impl Chain {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (t, c)) in self.terms.iter().enumerate() {
            let body = format!("({})", format_tensor(t, self.j));
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag.is_one() {
                f.write_str(&body)?;
            } else {
                write!(f, "{mag}*{body}")?;
            }
        }
        Ok(())
    }
}

/// `p dx_{i_1} ∧ … ∧ dx_{i_k} ↦ Σ_σ sgn(σ) t·p ⊗ x_{i_σ(1)} ⊗ … ⊗ x_{i_σ(k)}`.
pub fn hkr(alg: &AlgebraSpec, w: &DifferentialForm) -> Result<Chain> {
    let nv = alg.num_vars();
    let vars = w.vars();
    if vars.len() != nv || vars.iter().zip(['x', 'y']).any(|(a, b)| a != b) {
        return Err(Error::VariableMismatch(
            format!("{vars}"),
            format!("{}", alg.base),
        ));
    }
    let k = w.degree();
    let mut terms: BTreeMap<Tensor, Rational> = BTreeMap::new();
    for (basis, p) in w.components() {
        let idx: Vec<usize> = basis.indices().collect();
        for (m, c) in p.terms() {
            let a0 = Mono {
                x: [m.0[0] as u8, m.0[1] as u8],
                t: 1,
            };
            let mut perm: Vec<usize> = (0..k).collect();
            loop {
                let mut t = alloc::vec![a0];
                for &s in &perm {
                    let mut x = [0u8; 2];
                    x[idx[s]] = 1;
                    t.push(Mono { x, t: 0 });
                }
                let sign = perm_sign(&perm);
                let e = terms.entry(t).or_insert_with(Rational::zero);
                *e += if sign > 0 { c.clone() } else { -c.clone() };
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
    }
    terms.retain(|_, c| !c.is_zero());
    Ok(Chain {
        degree: k,
        j: alg.j,
        terms,
    })
}

fn perm_sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if p[a] > p[b] {
                s = -s;
            }
        }
    }
    s
}

fn grade_of(t: &[Mono]) -> Grade {
    let mut alpha = [0u8; 2];
    let mut w = 0;
    for m in t {
        alpha[0] += m.x[0];
        alpha[1] += m.x[1];
        w += u32::from(m.t);
    }
    Grade { alpha, w }
}

/// One line of a rank comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankRecord {
    pub theory: Theory,
    pub base: BaseRing,
    pub j: u32,
    pub n: usize,
    pub d: usize,
    pub i: Option<usize>,
    pub computed: u64,
    pub predicted: Option<u64>,
    pub source: &'static str,
}

impl RankRecord {
    pub fn agrees(&self) -> bool {
        self.predicted.is_none_or(|p| p == self.computed)
    }
}

/// `dim (Ω^n ⊕ Ω^{n-2} ⊕ …)_d`.
pub fn pattern_hc(num_vars: usize, n: i64, d: usize) -> u64 {
    let mut total = 0;
    let mut k = n;
    while k >= 0 {
        total += graded_dimension(k as usize, d, num_vars);
        k -= 2;
    }
    total
}

/// `dim (Ω^{n-1} ⊕ Ω^{n-3} ⊕ …)_d`.
pub fn pattern_hn(num_vars: usize, n: i64, d: usize) -> u64 {
    pattern_hc(num_vars, n - 1, d)
}

/// `dim Ω^{2i-n}_d` for `n/2 ≤ i ≤ n`, zero otherwise.
pub fn pattern_hc_eigen(num_vars: usize, n: i64, d: usize, i: i64) -> u64 {
    if n < 0 || i < 0 || 2 * i < n || i > n {
        0
    } else {
        graded_dimension_signed(2 * i - n, d, num_vars)
    }
}

/// `dim Ω^{2i-n-1}_d` in the matching range.
pub fn pattern_hn_eigen(num_vars: usize, n: i64, d: usize, i: i64) -> u64 {
    pattern_hc_eigen(num_vars, n - 1, d, i - 1)
}

impl CyclicEngine {
    pub(crate) fn slice(
        &mut self,
        n: usize,
        d: usize,
    ) -> (Vec<(Grade, usize, alloc::sync::Arc<engine::Block>)>, usize) {
        let mut out = Vec::new();
        let mut len = 0;
        for g in self.grades(n, d) {
            let blk = self.block(n, g);
            if blk.len() > 0 {
                out.push((g, len, blk.clone()));
                len += blk.len();
            }
        }
        (out, len)
    }

    pub fn build_slice(&mut self, n: usize, d: usize) -> Result<GradedSlice> {
        check_bounds(&self.algebra(), n, d)?;
        let j = self.algebra().j;
        let (lay, len) = self.slice(n, d);
        let offsets = |lay: &[(Grade, usize, alloc::sync::Arc<engine::Block>)]| {
            lay.iter()
                .map(|(g, o, _)| (*g, *o))
                .collect::<BTreeMap<Grade, usize>>()
        };
        let (below, below_len) = if n > 0 {
            self.slice(n - 1, d)
        } else {
            (Vec::new(), 0)
        };
        let (above, above_len) = self.slice(n + 1, d);
        let (below, above) = (offsets(&below), offsets(&above));
        let mut basis = Vec::with_capacity(len);
        let mut bcols = Vec::with_capacity(len);
        let mut ccols = Vec::with_capacity(len);
        for (g, _, blk) in &lay {
            for (idx, x) in blk.basis.iter().enumerate() {
                assert!(
                    identities_hold(x, j),
                    "b² = 0, B² = 0 or bB + Bb = 0 fails at {x:?}"
                );
                basis.push(x.clone());
                let bi = self.b_image(n, *g, idx);
                bcols.push(match below.get(g) {
                    Some(o) => bi.shifted(*o),
                    None => {
                        assert!(bi.is_zero());
                        bi
                    }
                });
                let ci = self.connes_image(n, *g, idx);
                ccols.push(match above.get(g) {
                    Some(o) => ci.shifted(*o),
                    None => {
                        assert!(ci.is_zero());
                        ci
                    }
                });
            }
        }
        Ok(GradedSlice {
            alg: self.algebra(),
            n,
            d,
            basis,
            b: RationalMatrix::from_columns(below_len, &bcols),
            connes: RationalMatrix::from_columns(above_len, &ccols),
        })
    }

    fn total(&mut self, kind: Kind, n: i64, d: usize, weight: Option<usize>) -> u64 {
        if n < 0 {
            return 0;
        }
        let mut sum = 0;
        for g in self.grades(n as usize + 1, d) {
            sum += self.homology_dim(kind, n, g, weight) as u64;
        }
        sum
    }

    pub fn hh_rank(&mut self, n: usize, d: usize) -> Result<u64> {
        check_bounds(&self.algebra(), n, d)?;
        Ok(self.total(Kind::Hochschild, n as i64, d, None))
    }

    pub fn hc_rank(&mut self, n: usize, d: usize) -> Result<u64> {
        check_bounds(&self.algebra(), n, d)?;
        Ok(self.total(Kind::Cyclic, n as i64, d, None))
    }

    pub fn hn_rank(&mut self, n: usize, d: usize) -> Result<u64> {
        check_bounds(&self.algebra(), n, d)?;
        Ok(self.total(Kind::Cyclic, n as i64 - 1, d, None))
    }

    pub fn rank(&mut self, theory: Theory, n: usize, d: usize) -> Result<u64> {
        match theory {
            Theory::HH => self.hh_rank(n, d),
            Theory::HC => self.hc_rank(n, d),
            Theory::HN => self.hn_rank(n, d),
        }
    }

    /// Rank of the weight-`i` piece, `0 ≤ i ≤ n`.
    pub fn eigen_rank(&mut self, theory: Theory, n: usize, d: usize, i: usize) -> Result<u64> {
        check_bounds(&self.algebra(), n, d)?;
        if i > n {
            return Err(Error::OutOfRange(format!(
                "eigen index {i} outside 0..={n}"
            )));
        }
        Ok(match theory {
            Theory::HH => self.total(Kind::Hochschild, n as i64, d, Some(i)),
            Theory::HC => self.total(Kind::Cyclic, n as i64, d, Some(i)),
            Theory::HN if i == 0 => 0,
            Theory::HN => self.total(Kind::Cyclic, n as i64 - 1, d, Some(i - 1)),
        })
    }

    /// `HH^{(i)}_n = HC^{(i-1)}_{n-1} + HC^{(i)}_n` in ranks.
    pub fn ses_consistency(&mut self, n: usize, d: usize, i: usize) -> Result<bool> {
        let hh = self.eigen_rank(Theory::HH, n, d, i)?;
        let hc = self.eigen_rank(Theory::HC, n, d, i)?;
        let prev = if n >= 1 && i >= 1 {
            self.eigen_rank(Theory::HC, n - 1, d, i - 1)?
        } else {
            0
        };
        Ok(hh == prev + hc)
    }

    /// `S : HC_n → HC_{n-2}` on the chosen homology bases.
    pub fn s_map_matrix(&mut self, n: usize, d: usize) -> Result<RationalMatrix> {
        check_bounds(&self.algebra(), n, d)?;
        let grades = self.grades(n + 1, d);
        if n < 2 {
            let cols = self.total(Kind::Cyclic, n as i64, d, None) as usize;
            return Ok(RationalMatrix::zeros(0, cols));
        }
        let mut blocks = Vec::new();
        let (mut rows, mut cols) = (0, 0);
        for g in grades {
            let top = self.homology(Kind::Cyclic, n, g);
            let low = self.homology(Kind::Cyclic, n - 2, g);
            let src = self.layout(Kind::Cyclic, n as i64, g);
            let dst = self.layout(Kind::Cyclic, n as i64 - 2, g);
            let mut entries = Vec::new();
            for (c, z) in top.reps.iter().enumerate() {
                let mut image = SparseVec::new();
                for p in 1..src.comps.len() {
                    let (_, off, blk) = &src.comps[p];
                    let part = z.window(*off, off + blk.len()).shifted(dst.comps[p - 1].1);
                    image = image.add_scaled(&Rational::one(), &part);
                }
                let coords = low.coordinates(&image).expect("S maps cycles to cycles");
                for (r, v) in coords.into_iter().enumerate() {
                    if !v.is_zero() {
                        entries.push((rows + r, cols + c, v));
                    }
                }
            }
            rows += low.reps.len();
            cols += top.reps.len();
            blocks.extend(entries);
        }
        let mut m = RationalMatrix::zeros(rows, cols);
        for (r, c, v) in blocks {
            m.set(r, c, v);
        }
        Ok(m)
    }

    /// Projectors induced on `HH_n` in internal degree `d`, one per weight.
    pub fn eigen_projectors(&mut self, n: usize, d: usize) -> Result<Vec<EigenProjector>> {
        check_bounds(&self.algebra(), n, d)?;
        let mut per_weight: Vec<Vec<(usize, usize, Rational)>> =
            weights(n).map(|_| Vec::new()).collect();
        let mut dim = 0;
        for g in self.grades(n + 1, d) {
            let h = self.homology(Kind::Hochschild, n, g);
            for (slot, i) in weights(n).enumerate() {
                for (c, z) in h.reps.iter().enumerate() {
                    let ez = self.project_vec(n, g, i, z);
                    let coords = h
                        .coordinates(&ez)
                        .ok_or_else(|| Error::pre("projected cycle is not a cycle"))?;
                    for (r, v) in coords.into_iter().enumerate() {
                        if !v.is_zero() {
                            per_weight[slot].push((dim + r, dim + c, v));
                        }
                    }
                }
            }
            dim += h.reps.len();
        }
        Ok(weights(n)
            .zip(per_weight)
            .map(|(i, entries)| {
                let mut m = RationalMatrix::zeros(dim, dim);
                for (r, c, v) in entries {
                    m.set(r, c, v);
                }
                EigenProjector { n, d, i, matrix: m }
            })
            .collect())
    }

    pub fn projector_check(&mut self, n: usize, d: usize) -> Result<ProjectorCheck> {
        let ps = self.eigen_projectors(n, d)?;
        let dim = ps.first().map_or(0, |p| p.matrix.rows());
        let idempotent = ps.iter().all(|p| p.matrix.mul(&p.matrix) == p.matrix);
        let orthogonal = ps.iter().enumerate().all(|(a, p)| {
            ps.iter()
                .enumerate()
                .all(|(b, q)| a == b || p.matrix.mul(&q.matrix).is_zero())
        });
        let sum = ps
            .iter()
            .fold(RationalMatrix::zeros(dim, dim), |acc, p| acc.add(&p.matrix));
        let complete = sum == RationalMatrix::identity(dim);
        let mut commutes_with_b = true;
        let mut shifts_with_connes = true;
        for g in self.grades(n + 1, d) {
            let len = self.block(n, g).len();
            for idx in 0..len {
                let bx = self.b_image(n, g, idx);
                let cx = self.connes_image(n, g, idx);
                for i in weights(n) {
                    let ex = self.project(n, g, i, idx);
                    if n > 0 {
                        let lhs = engine::combine_b(self, n, g, &ex);
                        let rhs = self.project_vec(n - 1, g, i, &bx);
                        commutes_with_b &= lhs == rhs;
                    }
                    let mut lhs = SparseVec::new();
                    for (k, c) in ex.iter() {
                        lhs = lhs.add_scaled(c, &self.connes_image(n, g, k));
                    }
                    let rhs = self.project_vec(n + 1, g, i + 1, &cx);
                    shifts_with_connes &= lhs == rhs;
                }
            }
        }
        Ok(ProjectorCheck {
            idempotent,
            orthogonal,
            complete,
            commutes_with_b,
            shifts_with_connes,
        })
    }

    /// Whether `chain` is a `b`-cycle and, if so, whether its class is nonzero.
    pub fn hochschild_class(&mut self, chain: &Chain) -> Result<(bool, bool)> {
        let n = chain.degree;
        let mut by_grade: BTreeMap<Grade, Vec<(Tensor, Rational)>> = BTreeMap::new();
        for (t, c) in &chain.terms {
            by_grade
                .entry(grade_of(t))
                .or_default()
                .push((t.clone(), c.clone()));
        }
        let (mut cycle, mut nonzero) = (true, false);
        for (g, terms) in by_grade {
            let blk = self.block(n, g);
            let v = SparseVec::from_pairs(terms.into_iter().map(|(t, c)| {
                (
                    *blk.index
                        .get(&t)
                        .expect("chain term outside the normalized basis"),
                    c,
                )
            }));
            if n > 0 && !engine::combine_b(self, n, g, &v).is_zero() {
                cycle = false;
                continue;
            }
            let h = self.homology(Kind::Hochschild, n, g);
            let coords = h.coordinates(&v).ok_or_else(|| Error::pre("not a cycle"))?;
            nonzero |= coords.iter().any(|c| !c.is_zero());
        }
        Ok((cycle, cycle && nonzero))
    }

    /// Whether the antisymmetrization is injective on `t·Ω^k` in internal
    /// degree `d`: the classes of the images of a monomial basis are
    /// linearly independent.
    pub fn hkr_injective(&mut self, k: usize, d: usize) -> Result<bool> {
        check_bounds(&self.algebra(), k, d)?;
        let forms = monomial_forms(self.algebra(), k, d);
        let mut by_grade: BTreeMap<Grade, Vec<SparseVec>> = BTreeMap::new();
        for w in &forms {
            let chain = hkr(&self.algebra(), w)?;
            let Some(t) = chain.terms.keys().next() else {
                return Ok(false);
            };
            let g = grade_of(t);
            let blk = self.block(k, g);
            let v =
                SparseVec::from_pairs(chain.terms.iter().map(|(t, c)| (blk.index[t], c.clone())));
            let h = self.homology(Kind::Hochschild, k, g);
            let coords = h
                .coordinates(&v)
                .ok_or_else(|| Error::pre("image is not a cycle"))?;
            by_grade
                .entry(g)
                .or_default()
                .push(SparseVec::from_dense(&coords));
        }
        Ok(by_grade.into_iter().all(|(g, vs)| {
            let len = self.homology(Kind::Hochschild, k, g).reps.len();
            let count = vs.len();
            crate::exactpoly::rank_of(vs, len) == count
        }))
    }

    /// Computed `HC` and `HN` ranks beside `j` copies of the forms pattern.
    pub fn thickening_report(&mut self, max_n: usize, max_d: usize) -> Result<Vec<RankRecord>> {
        let alg = self.algebra();
        let nv = alg.num_vars();
        let mut out = Vec::new();
        for n in 0..=max_n {
            for d in 0..=max_d {
                let hc = self.hc_rank(n, d)?;
                let hn = self.hn_rank(n, d)?;
                for (theory, computed, pattern) in [
                    (Theory::HC, hc, pattern_hc(nv, n as i64, d)),
                    (Theory::HN, hn, pattern_hn(nv, n as i64, d)),
                ] {
                    out.push(RankRecord {
                        theory,
                        base: alg.base,
                        j: alg.j,
                        n,
                        d,
                        i: None,
                        computed,
                        predicted: Some(u64::from(alg.j) * pattern),
                        source: "j copies of the forms pattern (exploratory)",
                    });
                }
            }
        }
        Ok(out)
    }
}

/// `x^a y^b dx_I` with total degree `d` and `|I| = k`.
fn monomial_forms(alg: AlgebraSpec, k: usize, d: usize) -> Vec<DifferentialForm> {
    let vars = match alg.num_vars() {
        0 => crate::exactpoly::Vars::none(),
        1 => crate::exactpoly::Vars::new("x").unwrap(),
        _ => crate::exactpoly::Vars::xy(),
    };
    let nv = alg.num_vars();
    let mut out = Vec::new();
    if d < k {
        return out;
    }
    let rest = (d - k) as u32;
    let monos: Vec<crate::exactpoly::Monomial> = match nv {
        0 if rest == 0 => alloc::vec![crate::exactpoly::Monomial::ONE],
        0 => Vec::new(),
        1 => alloc::vec![crate::exactpoly::Monomial([rest, 0, 0])],
        _ => (0..=rest)
            .map(|a| crate::exactpoly::Monomial([a, rest - a, 0]))
            .collect(),
    };
    for b in Basis::all(k, nv) {
        for m in &monos {
            let p = crate::exactpoly::Polynomial::from_terms(vars, [(*m, Rational::one())]);
            let mut w = DifferentialForm::zero(vars, k);
            w.add_component(b, p);
            out.push(w);
        }
    }
    out
}

pub fn build_slice(alg: &AlgebraSpec, n: usize, d: usize) -> Result<GradedSlice> {
    CyclicEngine::new(*alg).build_slice(n, d)
}

pub fn hh_rank(alg: &AlgebraSpec, n: usize, d: usize) -> Result<u64> {
    CyclicEngine::new(*alg).hh_rank(n, d)
}

pub fn hc_rank(alg: &AlgebraSpec, n: usize, d: usize) -> Result<u64> {
    CyclicEngine::new(*alg).hc_rank(n, d)
}

pub fn hn_rank(alg: &AlgebraSpec, n: usize, d: usize) -> Result<u64> {
    CyclicEngine::new(*alg).hn_rank(n, d)
}

pub fn s_map_matrix(alg: &AlgebraSpec, n: usize, d: usize) -> Result<RationalMatrix> {
    CyclicEngine::new(*alg).s_map_matrix(n, d)
}

pub fn eigen_rank(alg: &AlgebraSpec, n: usize, d: usize, i: usize, theory: Theory) -> Result<u64> {
    CyclicEngine::new(*alg).eigen_rank(theory, n, d, i)
}

pub fn ses_consistency(alg: &AlgebraSpec, n: usize, d: usize, i: usize) -> Result<bool> {
    CyclicEngine::new(*alg).ses_consistency(n, d, i)
}

pub fn thickening_report(alg: &AlgebraSpec, max_n: usize, max_d: usize) -> Result<Vec<RankRecord>> {
    CyclicEngine::new(*alg).thickening_report(max_n, max_d)
}

/// Relative `HH_n` from unnormalized chains, for cross-checking the
/// normalized engine at small `n`.
pub fn hh_rank_unnormalized(alg: &AlgebraSpec, n: usize, d: usize) -> Result<u64> {
    check_bounds(alg, n, d)?;
    if n > 2 {
        return Err(Error::BoundsExceeded(format!(
            "unnormalized chains only up to n = 2, got {n}"
        )));
    }
    let eng = CyclicEngine::new(*alg);
    let (j, nv) = (alg.j, alg.num_vars());
    let mut total = 0;
    for g in eng.grades(n + 1, d) {
        let basis = |m: usize| chains::enumerate(m, g, j, nv, false);
        let index = |b: &[Tensor]| -> BTreeMap<Tensor, usize> {
            b.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect()
        };
        let rank_b = |m: usize| -> usize {
            if m == 0 {
                return 0;
            }
            let src = basis(m);
            let dst = basis(m - 1);
            let idx = index(&dst);
            let cols: Vec<SparseVec> = src
                .iter()
                .map(|x| {
                    SparseVec::from_pairs(
                        hochschild_b(x, j)
                            .into_iter()
                            .map(|(y, c)| (idx[&y], Rational::from_integer(c.into()))),
                    )
                })
                .collect();
            crate::exactpoly::rank_of(cols, dst.len())
        };
        total += (basis(n).len() - rank_b(n) - rank_b(n + 1)) as u64;
    }
    Ok(total)
}
