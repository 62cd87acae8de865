//! Exact-arithmetic kernels for computational simplicial homotopy theory and
//! abelian higher gauge theory: finitely presented simplicial sets, integer
//! homology via Smith normal form, the barycentric subdivision operator and its
//! chain homotopies, Dwyer-Kan loop groups and the W/W-bar constructions,
//! symbolic differential forms with rational-function coefficients,
//! Cech-Deligne cocycles with holonomy, and Van Est / triangulation-based
//! Riemann integration.
//!
//! Everything that can be exact is exact: rational coordinates, big-integer
//! matrices, symbolic identities decided by cross-multiplication. Floating
//! point appears only in quadrature (holonomy, Chern numbers) and in the
//! sampling fallback of the cocycle verifier.
//!
//! The crate is `no_std` (with `alloc`); IO, JSON formats and the CLI live in
//! the companion `simpl-cli` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod chains;
pub mod deligne;
pub mod forms;
pub mod loopgroup;
pub mod poly;
pub mod quad;
pub mod simpset;
pub mod subdivision;
pub mod vanest;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Shorthand for an exact rational from a numerator/denominator pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an exact rational integer.
pub fn rint(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}
