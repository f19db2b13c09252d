use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

/// Sparse vector with strictly increasing indices and no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec::default()
    }

    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: alloc::vec![(i, Rational::one())],
        }
    }

    /// Sums duplicate indices and drops zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, c) in pairs {
            *map.entry(i).or_insert_with(Rational::zero) += c;
        }
        SparseVec {
            entries: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn from_dense(v: &[Rational]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Rational> {
        let mut v = alloc::vec![Rational::zero(); len];
        for (i, c) in &self.entries {
            v[*i] = c.clone();
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn get(&self, i: usize) -> Rational {
        self.entries
            .binary_search_by_key(&i, |e| e.0)
            .map(|k| self.entries[k].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, a)| (*i, a * c)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Rational, other: &SparseVec) -> Self {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * c));
                        b.next();
                    } else {
                        let s = x + y * c;
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        SparseVec { entries: out }
    }

    /// Adds `offset` to every index.
    pub fn shifted(&self, offset: usize) -> Self {
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, c)| (i + offset, c.clone()))
                .collect(),
        }
    }

    /// Entries with index in `lo..hi`, re-based to start at zero.
    pub fn window(&self, lo: usize, hi: usize) -> Self {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| *i >= lo && *i < hi)
                .map(|(i, c)| (i - lo, c.clone()))
                .collect(),
        }
    }

    pub fn concat(&self, other: &SparseVec, offset: usize) -> Self {
        debug_assert!(self.entries.last().is_none_or(|(i, _)| *i < offset));
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().map(|(i, c)| (i + offset, c.clone())));
        SparseVec { entries }
    }
}

/// Integer row used by [`Echelon`]: content-normalized, sorted.
#[derive(Clone, Debug)]
struct IntRow(Vec<(usize, BigInt)>);

impl IntRow {
    fn from_sparse(v: &SparseVec) -> Self {
        let mut l = BigInt::one();
        for (_, c) in v.iter() {
            l = l.lcm(c.denom());
        }
        let mut row = IntRow(
            v.iter()
                .map(|(i, c)| (i, c.numer() * (&l / c.denom())))
                .collect(),
        );
        row.normalize();
        row
    }

    fn normalize(&mut self) {
        let mut g = BigInt::zero();
        for (_, c) in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                return;
            }
        }
        if !g.is_zero() && !g.is_one() {
            for (_, c) in &mut self.0 {
                *c /= &g;
            }
        }
    }

    fn lead(&self) -> Option<(usize, &BigInt)> {
        self.0.first().map(|(i, c)| (*i, c))
    }

    /// `a * self - b * other`.
    fn combine(&self, a: &BigInt, b: &BigInt, other: &IntRow) -> IntRow {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut x, mut y) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (x.peek(), y.peek()) {
                (Some((i, p)), Some((j, q))) => {
                    if i < j {
                        out.push((*i, a * p));
                        x.next();
                    } else if j < i {
                        out.push((*j, -(b * q)));
                        y.next();
                    } else {
                        let s = a * p - b * q;
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        x.next();
                        y.next();
                    }
                }
                (Some((i, p)), None) => {
                    out.push((*i, a * p));
                    x.next();
                }
                (None, Some((j, q))) => {
                    out.push((*j, -(b * q)));
                    y.next();
                }
                (None, None) => break,
            }
        }
        let mut r = IntRow(out);
        r.normalize();
        r
    }

    fn to_sparse(&self, lo: usize) -> SparseVec {
        SparseVec {
            entries: self
                .0
                .iter()
                .filter(|(i, _)| *i >= lo)
                .map(|(i, c)| (i - lo, Rational::from_integer(c.clone())))
                .collect(),
        }
    }
}

/// Incremental fraction-free row echelon form over `Z`.
///
/// Coordinates `>= main_len` are tag columns: they ride along with every row
/// operation but never hold a pivot, so a vector whose main part reduces to
/// zero leaves behind the linear relation that killed it.
#[derive(Clone, Debug)]
pub struct Echelon {
    main_len: usize,
    pivots: BTreeMap<usize, IntRow>,
}

impl Echelon {
    pub fn new(main_len: usize) -> Self {
        Echelon {
            main_len,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn reduce_row(&self, mut row: IntRow) -> IntRow {
        while let Some((c, rc)) = row.lead() {
            if c >= self.main_len {
                break;
            }
            let Some(p) = self.pivots.get(&c) else {
                break;
            };
            let pc = &p.0[0].1;
            let g = rc.gcd(pc);
            let (a, b) = (pc / &g, rc / &g);
            row = row.combine(&a, &b, p);
        }
        row
    }

    /// Reduces `v` and inserts it if its main part survives. Returns `true`
    /// when the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        self.insert_or_relation(v).is_none()
    }

    /// Like [`Echelon::insert`], but when the main part vanishes returns the
    /// surviving tag part (re-based to start at index zero).
    pub fn insert_or_relation(&mut self, v: &SparseVec) -> Option<SparseVec> {
        let row = self.reduce_row(IntRow::from_sparse(v));
        match row.lead() {
            Some((c, _)) if c < self.main_len => {
                self.pivots.insert(c, row);
                None
            }
            _ => Some(row.to_sparse(self.main_len)),
        }
    }

    /// Whether the main part of `v` lies in the span of the inserted rows.
    pub fn contains(&self, v: &SparseVec) -> bool {
        self.relation(v).is_some()
    }

    /// Tag part left after reducing `v`, or `None` if `v` is independent.
    pub fn relation(&self, v: &SparseVec) -> Option<SparseVec> {
        let row = self.reduce_row(IntRow::from_sparse(v));
        match row.lead() {
            Some((c, _)) if c < self.main_len => None,
            _ => Some(row.to_sparse(self.main_len)),
        }
    }
}

/// Rank of a family of vectors.
pub fn rank_of(vectors: impl IntoIterator<Item = SparseVec>, len: usize) -> usize {
    let mut e = Echelon::new(len);
    for v in vectors {
        e.insert(&v);
    }
    e.rank()
}

/// Sparse exact matrix over `Q`.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, c) in r.iter().enumerate() {
                m.set(i, j, c.clone());
            }
        }
        m
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| Rational::from_integer(x.into()))
                    .collect()
            })
            .collect();
        Self::from_dense(&dense)
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, c) in col.iter() {
                assert!(i < rows, "column entry out of range");
                m.set(i, j, c.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, c: Rational) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        if c.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), c);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, c: &Rational) {
        let s = self.get(i, j) + c;
        self.set(i, j, s);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|((i, j), c)| (*i, *j, c))
    }

    pub fn transpose(&self) -> Self {
        RationalMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|((i, j), c)| ((*j, *i), c.clone()))
                .collect(),
        }
    }

    pub fn row_vectors(&self) -> Vec<SparseVec> {
        let mut rows: Vec<Vec<(usize, Rational)>> = alloc::vec![Vec::new(); self.rows];
        for ((i, j), c) in &self.entries {
            rows[*i].push((*j, c.clone()));
        }
        rows.into_iter().map(|e| SparseVec { entries: e }).collect()
    }

    pub fn column_vectors(&self) -> Vec<SparseVec> {
        self.transpose().row_vectors()
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let dense = v.to_dense(self.cols);
        SparseVec::from_pairs(
            self.entries
                .iter()
                .filter(|((_, j), _)| !dense[*j].is_zero())
                .map(|((i, j), c)| (*i, c * &dense[*j])),
        )
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let other_rows = other.row_vectors();
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        for ((i, k), c) in &self.entries {
            for (j, d) in other_rows[*k].iter() {
                out.add_to(*i, j, &(c * d));
            }
        }
        out
    }

    pub fn add(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for ((i, j), c) in &other.entries {
            out.add_to(*i, *j, c);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> RationalMatrix {
        let mut out = RationalMatrix::zeros(self.rows, self.cols);
        for ((i, j), a) in &self.entries {
            out.set(*i, *j, a * c);
        }
        out
    }

    pub fn rank(&self) -> usize {
        rank_of(self.row_vectors(), self.cols)
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let mut e = Echelon::new(self.rows);
        let mut kernel = Vec::new();
        for (j, col) in self.column_vectors().into_iter().enumerate() {
            let tagged = col.concat(&SparseVec::unit(j), self.rows);
            if let Some(rel) = e.insert_or_relation(&tagged) {
                kernel.push(rel);
            }
        }
        kernel
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            f.write_str("  ")?;
            for j in 0..self.cols {
                let c = self.get(i, j);
                if c.is_negative() {
                    write!(f, "{c} ")?;
                } else {
                    write!(f, " {c} ")?;
                }
            }
            f.write_str("\n")?;
        }
        f.write_str("]")
    }
}

/// Rank together with a kernel basis; `rank + kernel.len() == cols`.
pub fn matrix_rank_kernel(m: &RationalMatrix) -> (usize, Vec<SparseVec>) {
    let kernel = m.kernel();
    (m.cols() - kernel.len(), kernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    #[test]
    fn rank_kernel_examples() {
        let (r, k) = matrix_rank_kernel(&RationalMatrix::identity(3));
        assert_eq!((r, k.len()), (3, 0));
        let (r, k) = matrix_rank_kernel(&RationalMatrix::zeros(2, 5));
        assert_eq!((r, k.len()), (0, 5));
        let m = RationalMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        let (r, k) = matrix_rank_kernel(&m);
        assert_eq!(r, 1);
        assert_eq!(k.len(), 1);
        // kernel spanned by (2, -1)
        let v = &k[0];
        assert_eq!(v.get(0) * rat(-1, 1), v.get(1) * rat(2, 1));
        assert!(m.mul_vec(v).is_zero());
    }

    #[test]
    fn tagged_relations() {
        let mut e = Echelon::new(2);
        assert!(e.insert(&SparseVec::from_dense(&[rat(1, 1), rat(1, 1)])));
        assert!(!e.insert(&SparseVec::from_dense(&[rat(3, 2), rat(3, 2)])));
        assert!(e.contains(&SparseVec::from_dense(&[rat(-1, 7), rat(-1, 7)])));
        assert!(!e.contains(&SparseVec::from_dense(&[rat(0, 1), rat(1, 1)])));
        // v = (1,2) against rep h = (0,1) modulo (1,1): v = (1,1) + h
        let mut e = Echelon::new(2);
        e.insert(&SparseVec::from_dense(&[rat(1, 1), rat(1, 1)]));
        e.insert(&SparseVec::from_dense(&[
            rat(0, 1),
            rat(1, 1),
            rat(1, 1),
            rat(0, 1),
        ]));
        let rel = e
            .relation(&SparseVec::from_dense(&[
                rat(1, 1),
                rat(2, 1),
                rat(0, 1),
                rat(1, 1),
            ]))
            .unwrap();
        // relation: a*v_tag + b*h_tag with coordinate -b/a = 1
        assert_eq!(-rel.get(0) / rel.get(1), rat(1, 1));
    }
}
