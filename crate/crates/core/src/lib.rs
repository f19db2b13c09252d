//! Exact computer algebra for infinitesimal deformations of cycles.
//!
//! Everything here works over the rationals with at most three polynomial
//! variables. The crate is `no_std` and only needs `alloc`:
//!
//! * [`exactpoly`] rationals, polynomials, Gröbner bases and exact matrices;
//! * [`differentials`] Kähler forms over `Q[x, y, z]`;
//! * [`localcoh`] first and second local cohomology classes with decidable equality;
//! * [`arcs`] tangents to first-order arcs of divisor pairs and zero-cycles;
//! * [`gersten`] valuations, tame symbols and the Cousin boundary;
//! * [`cyclic`] relative Hochschild, cyclic and negative cyclic homology of
//!   `R[ε]` and `R[t]/(t^{j+1})` with their λ-decomposition.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arcs;
pub mod cyclic;
pub mod differentials;
mod error;
pub mod exactpoly;
pub mod gersten;
pub mod localcoh;

pub use error::{Error, ErrorKind, Result};
