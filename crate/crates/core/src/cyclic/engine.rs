use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::chains::{
    adams, connes_b, enumerate, hochschild_b, next_permutation, Grade, Mono, Tensor,
};
use super::AlgebraSpec;
use crate::exactpoly::{Echelon, Rational, RationalMatrix, SparseVec};

/// Normalized relative chains of one degree and one fine grade.
pub(crate) struct Block {
    pub basis: Vec<Tensor>,
    pub index: BTreeMap<Tensor, usize>,
}

impl Block {
    fn new(basis: Vec<Tensor>) -> Self {
        let index = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        Block { basis, index }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn vector(&self, terms: &[(Tensor, i64)]) -> SparseVec {
        SparseVec::from_pairs(terms.iter().map(|(t, c)| {
            let i = *self
                .index
                .get(t)
                .expect("operator left the enumerated chain basis");
            (i, Rational::from_integer((*c).into()))
        }))
    }
}

/// Images of the basis under `b` (into degree `m - 1`) and `B` (into `m + 1`).
struct Ops {
    b: Vec<SparseVec>,
    connes: Vec<SparseVec>,
}

/// `ψ²` eigenprojectors on the span of all reorderings of `a_1 … a_n`.
struct Orbit {
    members: Vec<Tensor>,
    index: BTreeMap<Tensor, usize>,
    /// `proj[l][c]` is the image of member `c` under the weight-`l` projector.
    proj: Vec<Vec<SparseVec>>,
}

/// The Hochschild column alone, or the truncated `(b, B)` total complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Kind {
    Hochschild,
    Cyclic,
}

/// Components `(chain degree, offset, block)` of one total degree.
pub(crate) struct Layout {
    pub comps: Vec<(usize, usize, Arc<Block>)>,
    pub len: usize,
}

/// Cycle representatives of a homology group plus what is needed to read
/// off coordinates of other cycles.
pub(crate) struct Homology {
    pub len: usize,
    pub reps: Vec<SparseVec>,
    coords: Echelon,
}

impl Homology {
    /// Coordinates of the class of `x`; `None` when `x` is not a cycle
    /// representable in this basis.
    pub fn coordinates(&self, x: &SparseVec) -> Option<Vec<Rational>> {
        let tagged = x.concat(&SparseVec::unit(0), self.len);
        let rel = self.coords.relation(&tagged)?;
        let lead = rel.get(0);
        if lead.is_zero() {
            return None;
        }
        Some(
            (0..self.reps.len())
                .map(|k| -rel.get(k + 1) / &lead)
                .collect(),
        )
    }
}

/// Weights carried by chains of degree `m` under the λ-decomposition.
pub(crate) fn weights(m: usize) -> core::ops::RangeInclusive<usize> {
    if m == 0 {
        0..=0
    } else {
        1..=m
    }
}

type RankKey = (Kind, usize, Grade, Option<usize>);

/// Memoizing evaluator for one algebra. Results never depend on the order
/// in which queries arrive.
pub struct CyclicEngine {
    alg: AlgebraSpec,
    blocks: BTreeMap<(usize, Grade), Arc<Block>>,
    ops: BTreeMap<(usize, Grade), Arc<Ops>>,
    orbits: BTreeMap<Tensor, Arc<Orbit>>,
    ranks: BTreeMap<RankKey, (usize, usize)>,
    homology: BTreeMap<(Kind, usize, Grade), Arc<Homology>>,
}

impl CyclicEngine {
    pub fn new(alg: AlgebraSpec) -> Self {
        CyclicEngine {
            alg,
            blocks: BTreeMap::new(),
            ops: BTreeMap::new(),
            orbits: BTreeMap::new(),
            ranks: BTreeMap::new(),
            homology: BTreeMap::new(),
        }
    }

    pub fn algebra(&self) -> AlgebraSpec {
        self.alg
    }

    /// Fine grades of internal degree `d` that can occur up to chain degree `n`.
    pub(crate) fn grades(&self, n: usize, d: usize) -> Vec<Grade> {
        let nv = self.alg.num_vars();
        let alphas: Vec<[u8; 2]> = match nv {
            0 if d == 0 => alloc::vec![[0, 0]],
            0 => Vec::new(),
            1 => alloc::vec![[d as u8, 0]],
            _ => (0..=d).map(|a| [a as u8, (d - a) as u8]).collect(),
        };
        let wmax = (n as u32 + 1) * self.alg.j;
        let mut out = Vec::new();
        for alpha in alphas {
            for w in 1..=wmax {
                out.push(Grade { alpha, w });
            }
        }
        out
    }

    pub(crate) fn block(&mut self, m: usize, g: Grade) -> Arc<Block> {
        let (j, nv) = (self.alg.j, self.alg.num_vars());
        self.blocks
            .entry((m, g))
            .or_insert_with(|| Arc::new(Block::new(enumerate(m, g, j, nv, true))))
            .clone()
    }

    fn ops(&mut self, m: usize, g: Grade) -> Arc<Ops> {
        if let Some(o) = self.ops.get(&(m, g)) {
            return o.clone();
        }
        let src = self.block(m, g);
        let up = self.block(m + 1, g);
        let down = (m > 0).then(|| self.block(m - 1, g));
        let j = self.alg.j;
        let b = src
            .basis
            .iter()
            .map(|x| match &down {
                Some(d) => d.vector(&hochschild_b(x, j)),
                None => SparseVec::new(),
            })
            .collect();
        let connes = src.basis.iter().map(|x| up.vector(&connes_b(x))).collect();
        let o = Arc::new(Ops { b, connes });
        self.ops.insert((m, g), o.clone());
        o
    }

    pub(crate) fn b_image(&mut self, m: usize, g: Grade, idx: usize) -> SparseVec {
        self.ops(m, g).b[idx].clone()
    }

    pub(crate) fn connes_image(&mut self, m: usize, g: Grade, idx: usize) -> SparseVec {
        self.ops(m, g).connes[idx].clone()
    }

    fn orbit(&mut self, x: &[Mono]) -> Arc<Orbit> {
        let mut key: Tensor = x.to_vec();
        key[1..].sort();
        if let Some(o) = self.orbits.get(&key) {
            return o.clone();
        }
        let m = x.len() - 1;
        let mut members = Vec::new();
        let mut cur = key.clone();
        loop {
            members.push(cur.clone());
            if !next_permutation(&mut cur[1..]) {
                break;
            }
        }
        let index: BTreeMap<Tensor, usize> = members
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        let psi: Vec<SparseVec> = members
            .iter()
            .map(|t| {
                SparseVec::from_pairs(
                    adams(t, 2)
                        .into_iter()
                        .map(|(y, c)| (index[&y], Rational::from_integer(c.into()))),
                )
            })
            .collect();
        let apply_psi = |v: &SparseVec| {
            let mut acc = SparseVec::new();
            for (i, c) in v.iter() {
                acc = acc.add_scaled(c, &psi[i]);
            }
            acc
        };
        let pow2 = |l: usize| Rational::from_integer(num_bigint::BigInt::one() << l);
        let mut proj = alloc::vec![Vec::new(); m + 1];
        for i in weights(m) {
            let mut cols: Vec<SparseVec> = (0..members.len()).map(SparseVec::unit).collect();
            for l in weights(m).filter(|&l| l != i) {
                let denom = (pow2(i) - pow2(l)).recip();
                cols = cols
                    .iter()
                    .map(|v| apply_psi(v).add_scaled(&-pow2(l), v).scale(&denom))
                    .collect();
            }
            proj[i] = cols;
        }
        let o = Arc::new(Orbit {
            members,
            index,
            proj,
        });
        self.orbits.insert(key, o.clone());
        o
    }

    /// Image of basis element `idx` of `C_m` (grade `g`) under the weight-`l`
    /// projector, in block coordinates.
    pub(crate) fn project(&mut self, m: usize, g: Grade, l: usize, idx: usize) -> SparseVec {
        if !weights(m).contains(&l) {
            return SparseVec::new();
        }
        let block = self.block(m, g);
        let x = &block.basis[idx];
        let orbit = self.orbit(x);
        let col = &orbit.proj[l][orbit.index[x]];
        SparseVec::from_pairs(
            col.iter()
                .map(|(k, c)| (block.index[&orbit.members[k]], c.clone())),
        )
    }

    /// Weight-`l` projector applied to a chain of `C_m`.
    pub(crate) fn project_vec(&mut self, m: usize, g: Grade, l: usize, v: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (i, c) in v.iter() {
            acc = acc.add_scaled(c, &self.project(m, g, l, i));
        }
        acc
    }

    pub(crate) fn layout(&mut self, kind: Kind, n: i64, g: Grade) -> Layout {
        let mut comps = Vec::new();
        let mut len = 0;
        if n >= 0 {
            let n = n as usize;
            let top = match kind {
                Kind::Hochschild => 0,
                Kind::Cyclic => n / 2,
            };
            for p in 0..=top {
                let blk = self.block(n - 2 * p, g);
                comps.push((n - 2 * p, len, blk.clone()));
                len += blk.len();
            }
        }
        Layout { comps, len }
    }

    /// The differential `b` or `b + B` from total degree `n` to `n - 1`.
    pub(crate) fn apply_d(&mut self, kind: Kind, n: usize, g: Grade, v: &SparseVec) -> SparseVec {
        let src = self.layout(kind, n as i64, g);
        let dst = self.layout(kind, n as i64 - 1, g);
        let mut acc = SparseVec::new();
        for (p, (m, off, blk)) in src.comps.iter().enumerate() {
            let part = v.window(*off, off + blk.len());
            for (idx, c) in part.iter() {
                if *m >= 1 {
                    let img = self.b_image(*m, g, idx).shifted(dst.comps[p].1);
                    acc = acc.add_scaled(c, &img);
                }
                if kind == Kind::Cyclic && p >= 1 {
                    let img = self.connes_image(*m, g, idx).shifted(dst.comps[p - 1].1);
                    acc = acc.add_scaled(c, &img);
                }
            }
        }
        acc
    }

    /// Vectors spanning the whole total degree, or its weight-`i` part.
    pub(crate) fn span(
        &mut self,
        kind: Kind,
        n: i64,
        g: Grade,
        weight: Option<usize>,
    ) -> Vec<SparseVec> {
        let lay = self.layout(kind, n, g);
        let mut out = Vec::new();
        for (p, (m, off, blk)) in lay.comps.iter().enumerate() {
            match weight {
                None => out.extend((0..blk.len()).map(|i| SparseVec::unit(off + i))),
                Some(i) => {
                    if i < p {
                        continue;
                    }
                    for idx in 0..blk.len() {
                        let v = self.project(*m, g, i - p, idx);
                        if !v.is_zero() {
                            out.push(v.shifted(*off));
                        }
                    }
                }
            }
        }
        out
    }

    /// `(dimension of the span, rank of the differential on it)`.
    fn dim_and_rank(
        &mut self,
        kind: Kind,
        n: i64,
        g: Grade,
        weight: Option<usize>,
    ) -> (usize, usize) {
        if n < 0 {
            return (0, 0);
        }
        let key = (kind, n as usize, g, weight);
        if let Some(r) = self.ranks.get(&key) {
            return *r;
        }
        let lay = self.layout(kind, n, g);
        let span = self.span(kind, n, g, weight);
        let dim = match weight {
            None => lay.len,
            Some(_) => {
                let mut e = Echelon::new(lay.len);
                for v in &span {
                    e.insert(v);
                }
                e.rank()
            }
        };
        let rank = if n == 0 {
            0
        } else {
            let target = self.layout(kind, n - 1, g).len;
            let mut e = Echelon::new(target);
            for v in &span {
                let dv = self.apply_d(kind, n as usize, g, v);
                e.insert(&dv);
            }
            e.rank()
        };
        self.ranks.insert(key, (dim, rank));
        (dim, rank)
    }

    pub(crate) fn homology_dim(
        &mut self,
        kind: Kind,
        n: i64,
        g: Grade,
        weight: Option<usize>,
    ) -> usize {
        if n < 0 {
            return 0;
        }
        let (dim, r_out) = self.dim_and_rank(kind, n, g, weight);
        let (_, r_in) = self.dim_and_rank(kind, n + 1, g, weight);
        dim - r_out - r_in
    }

    pub(crate) fn homology(&mut self, kind: Kind, n: usize, g: Grade) -> Arc<Homology> {
        if let Some(h) = self.homology.get(&(kind, n, g)) {
            return h.clone();
        }
        let len = self.layout(kind, n as i64, g).len;
        let cycles: Vec<SparseVec> = if n == 0 {
            (0..len).map(SparseVec::unit).collect()
        } else {
            let rows = self.layout(kind, n as i64 - 1, g).len;
            let cols: Vec<SparseVec> = (0..len)
                .map(|i| self.apply_d(kind, n, g, &SparseVec::unit(i)))
                .collect();
            RationalMatrix::from_columns(rows, &cols).kernel()
        };
        let above = self.layout(kind, n as i64 + 1, g).len;
        let boundaries: Vec<SparseVec> = (0..above)
            .map(|i| self.apply_d(kind, n + 1, g, &SparseVec::unit(i)))
            .collect();
        let mut e = Echelon::new(len);
        for v in &boundaries {
            e.insert(v);
        }
        let reps: Vec<SparseVec> = cycles.into_iter().filter(|z| e.insert(z)).collect();
        let mut coords = Echelon::new(len);
        for v in &boundaries {
            coords.insert(v);
        }
        for (k, z) in reps.iter().enumerate() {
            coords.insert(&z.concat(&SparseVec::unit(k + 1), len));
        }
        let h = Arc::new(Homology { len, reps, coords });
        self.homology.insert((kind, n, g), h.clone());
        h
    }
}

/// `b` applied to a chain of `C_m`.
pub(crate) fn combine_b(eng: &mut CyclicEngine, m: usize, g: Grade, v: &SparseVec) -> SparseVec {
    let mut acc = SparseVec::new();
    for (i, c) in v.iter() {
        acc = acc.add_scaled(c, &eng.b_image(m, g, i));
    }
    acc
}
