//! Exact arithmetic substrate: rationals, multivariate polynomials over `Q`
//! in at most three variables, monomial orders, division, Buchberger's
//! algorithm and exact linear algebra.

mod groebner;
mod matrix;
mod monomial;
pub(crate) mod parse;
mod polynomial;
mod rational;

pub use groebner::{
    buchberger, buchberger_with, ideal_member, radical_contains_point, zero_dimensional,
    GroebnerBasis, RadicalVerdict,
};
pub use matrix::{matrix_rank_kernel, rank_of, Echelon, RationalMatrix, SparseVec};
pub use monomial::{Monomial, MonomialOrder, OrderKind, Vars, MAX_VARS};
pub use polynomial::{divide_by_single, poly_arith, reduce, ArithOp, Polynomial};
pub use rational::{parse_rational, rat, Rational};
