//! Reference computations that share no code path with the engines they
//! check.

use std::collections::BTreeMap;

use cousinforge_core::exactpoly::{Echelon, Monomial, Polynomial, RationalMatrix, SparseVec};

/// Relative `HH_n` of `Q[t]/(t^{j+1})` from the 2-periodic resolution
/// `A ← A ← A ← …` whose maps alternate between `0` and multiplication by
/// `(j+1) t^j`, minus `HH_n(Q)`.
pub fn periodic_resolution_relative_hh(j: u32, n: usize) -> u64 {
    let dim = j as usize + 1;
    // the map A → A in homological degree k (from C_k to C_{k-1})
    let map = |k: usize| -> RationalMatrix {
        let mut m = RationalMatrix::zeros(dim, dim);
        if k >= 2 && k.is_multiple_of(2) {
            // t^e ↦ (j+1) t^{e+j}, nonzero only for e = 0
            m.set(
                j as usize,
                0,
                cousinforge_core::exactpoly::rat(i64::from(j) + 1, 1),
            );
        }
        m
    };
    let rank = |k: usize| if k == 0 { 0 } else { map(k).rank() };
    let absolute = dim - rank(n) - rank(n + 1);
    let of_q = usize::from(n == 0);
    (absolute - of_q) as u64
}

fn monomials_up_to(num_vars: usize, bound: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let top = |v: usize| if v < num_vars { bound } else { 0 };
    for a in 0..=top(0) {
        for b in 0..=top(1) {
            for c in 0..=top(2) {
                if a + b + c <= bound {
                    out.push(Monomial([a, b, c]));
                }
            }
        }
    }
    out
}

/// Whether `p = Σ h_i g_i` has a solution with every `deg(h_i g_i) ≤ bound`,
/// decided by exact linear algebra on coefficient vectors.
pub fn member_by_linear_algebra(p: &Polynomial, gens: &[Polynomial], bound: u32) -> bool {
    if p.is_zero() {
        return true;
    }
    if p.total_degree().unwrap_or(0) > bound {
        return false;
    }
    let nv = p.vars().len();
    let monos = monomials_up_to(nv, bound);
    let index: BTreeMap<Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let to_vec =
        |q: &Polynomial| SparseVec::from_pairs(q.terms().map(|(m, c)| (index[m], c.clone())));
    let mut e = Echelon::new(monos.len());
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let dg = g.total_degree().unwrap_or(0);
        if dg > bound {
            continue;
        }
        for m in monos.iter().filter(|m| m.degree() + dg <= bound) {
            let mut shifted = Polynomial::zero(g.vars());
            for (gm, c) in g.terms() {
                shifted.add_term(gm.mul(m), c.clone());
            }
            e.insert(&to_vec(&shifted));
        }
    }
    let target = to_vec(p);
    e.contains(&target)
}
