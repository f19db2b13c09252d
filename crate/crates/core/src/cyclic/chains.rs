//! Elementary tensors over `R[t]/(t^{j+1})` and the operators `b`, `B`, `ψ^k`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

/// Monomial `x^a y^b t^e` of the thickened algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub x: [u8; 2],
    pub t: u8,
}

impl Mono {
    pub const ONE: Mono = Mono { x: [0, 0], t: 0 };

    pub fn is_one(&self) -> bool {
        *self == Mono::ONE
    }

    /// Product in `R[t]/(t^{j+1})`, `None` when it vanishes.
    pub fn mul(&self, other: &Mono, j: u32) -> Option<Mono> {
        let t = self.t + other.t;
        (u32::from(t) <= j).then(|| Mono {
            x: [self.x[0] + other.x[0], self.x[1] + other.x[1]],
            t,
        })
    }

    pub fn degree(&self) -> u32 {
        u32::from(self.x[0]) + u32::from(self.x[1])
    }

    pub fn format(&self, j: u32) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (name, e) in [("x", self.x[0]), ("y", self.x[1])] {
            match e {
                0 => {}
                1 => parts.push(name.into()),
                _ => parts.push(alloc::format!("{name}^{e}")),
            }
        }
        let gen = if j == 1 { "ε" } else { "t" };
        match self.t {
            0 => {}
            1 => parts.push(gen.into()),
            e => parts.push(alloc::format!("{gen}^{e}")),
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

pub type Tensor = Vec<Mono>;

pub fn format_tensor(t: &[Mono], j: u32) -> String {
    let mut s = String::new();
    for (k, m) in t.iter().enumerate() {
        if k > 0 {
            s.push_str(" ⊗ ");
        }
        let _ = write!(s, "{}", m.format(j));
    }
    s
}

/// Fine grade preserved by `b`, `B` and `ψ^k`: the multidegree in the
/// polynomial variables and the total `t`-exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Grade {
    pub alpha: [u8; 2],
    pub w: u32,
}

/// Relative chains `a_0 ⊗ … ⊗ a_n` of the given grade in a fixed order.
/// With `normalized`, the factors `a_1, …, a_n` avoid `1`.
pub fn enumerate(n: usize, g: Grade, j: u32, num_vars: usize, normalized: bool) -> Vec<Tensor> {
    let mut out = Vec::new();
    if g.w == 0 || (num_vars < 2 && g.alpha[1] > 0) || (num_vars < 1 && g.alpha[0] > 0) {
        return out;
    }
    let mut cur = Vec::with_capacity(n + 1);
    fill(n, 0, g.alpha, g.w, j, normalized, &mut cur, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn fill(
    n: usize,
    pos: usize,
    rem: [u8; 2],
    w: u32,
    j: u32,
    normalized: bool,
    cur: &mut Tensor,
    out: &mut Vec<Tensor>,
) {
    let ok = |m: &Mono| !(normalized && pos > 0 && m.is_one());
    if pos == n {
        let m = Mono { x: rem, t: w as u8 };
        if w <= j && ok(&m) {
            cur.push(m);
            out.push(cur.clone());
            cur.pop();
        }
        return;
    }
    for a in 0..=rem[0] {
        for b in 0..=rem[1] {
            for e in 0..=w.min(j) {
                let m = Mono {
                    x: [a, b],
                    t: e as u8,
                };
                if !ok(&m) {
                    continue;
                }
                cur.push(m);
                fill(
                    n,
                    pos + 1,
                    [rem[0] - a, rem[1] - b],
                    w - e,
                    j,
                    normalized,
                    cur,
                    out,
                );
                cur.pop();
            }
        }
    }
}

/// Hochschild boundary.
pub fn hochschild_b(x: &[Mono], j: u32) -> Vec<(Tensor, i64)> {
    let n = x.len() - 1;
    let mut out = Vec::with_capacity(n + 1);
    if n == 0 {
        return out;
    }
    for i in 0..n {
        if let Some(p) = x[i].mul(&x[i + 1], j) {
            let mut y = Vec::with_capacity(n);
            y.extend_from_slice(&x[..i]);
            y.push(p);
            y.extend_from_slice(&x[i + 2..]);
            out.push((y, if i % 2 == 0 { 1 } else { -1 }));
        }
    }
    if let Some(p) = x[n].mul(&x[0], j) {
        let mut y = Vec::with_capacity(n);
        y.push(p);
        y.extend_from_slice(&x[1..n]);
        out.push((y, if n.is_multiple_of(2) { 1 } else { -1 }));
    }
    out
}

/// Connes' operator on normalized chains.
pub fn connes_b(x: &[Mono]) -> Vec<(Tensor, i64)> {
    let n = x.len() - 1;
    if x[0].is_one() {
        return Vec::new();
    }
    (0..=n)
        .map(|i| {
            let mut y = Vec::with_capacity(n + 2);
            y.push(Mono::ONE);
            y.extend_from_slice(&x[i..]);
            y.extend_from_slice(&x[..i]);
            (y, if (n * i).is_multiple_of(2) { 1 } else { -1 })
        })
        .collect()
}

/// Adams operation `ψ^k`: the signed sum of all shuffles of the `k`
/// consecutive pieces of `a_1 ⊗ … ⊗ a_n`. Each word in `{0..k}^n` picks,
/// slot by slot, the piece the next factor is drawn from.
pub fn adams(x: &[Mono], k: usize) -> Vec<(Tensor, i64)> {
    let n = x.len() - 1;
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    let mut word = alloc::vec![0usize; n];
    loop {
        let mut counts = alloc::vec![0usize; k];
        for &c in &word {
            counts[c] += 1;
        }
        let mut next = alloc::vec![0usize; k];
        let mut start = 0;
        for r in 0..k {
            next[r] = start;
            start += counts[r];
        }
        let mut src = Vec::with_capacity(n);
        for &c in &word {
            src.push(next[c]);
            next[c] += 1;
        }
        let mut y = Vec::with_capacity(n + 1);
        y.push(x[0]);
        y.extend(src.iter().map(|&s| x[s + 1]));
        out.push((y, permutation_sign(&src)));
        // advance the word
        let mut p = 0;
        while p < n {
            word[p] += 1;
            if word[p] < k {
                break;
            }
            word[p] = 0;
            p += 1;
        }
        if p == n {
            break;
        }
    }
    out
}

fn permutation_sign(p: &[usize]) -> i64 {
    let mut inv = 0usize;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if p[a] > p[b] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Next lexicographic permutation in place; `false` after the last one.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut k = v.len() - 1;
    while v[k] <= v[i - 1] {
        k -= 1;
    }
    v.swap(i - 1, k);
    v[i..].reverse();
    true
}
