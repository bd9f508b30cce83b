//! Ideal pure-state quantum secret sharing from self-dual linear codes and
//! representable identically self-dual matroids.
//!
//! The crate is organized bottom-up:
//!
//! * [`algebra`]: GF(q) arithmetic and dense matrices.
//! * [`codes`]: linear codes, duals, puncturing, shortening, minimal codewords.
//! * [`matroid`]: matroids from circuits or matrices, duality, induced access
//!   structures.
//! * [`access`]: monotone access structures, self-orthogonality, minors and
//!   the forbidden-minor test for matroid ports.
//! * [`qss`]: the CSS construction of a scheme from a self-dual code, its
//!   encoding and reconstruction gate plans.
//! * [`simver`]: an exact sparse qudit simulator that checks recovery and
//!   perfect privacy of a constructed scheme.

pub mod access;
pub mod algebra;
pub mod codes;
pub mod matroid;
pub mod qss;
pub mod simver;
pub mod subset;

pub use subset::Subset;
