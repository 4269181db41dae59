//! Straightening and relation checks for the jet ring of the `SL_h` quotient of
//! `p` vectors and `q` covectors.
//!
//! The crate provides exact arithmetic in the differential polynomial ring
//! `B = Z[a(k)_il, b(k)_jl]` with divided-power derivations, the alphabet of
//! derived minors and its tagged refinement, a standardness test, leading-term
//! straightening onto the standard monomial basis, generation and kernel
//! verification of the relation families, and an infinitesimal invariance
//! check under the current algebra `sl_h[t]`.
//!
//! All structures are generic over the coefficient ring (see [`scalar::Coeff`]);
//! the aliases below fix the integers, which is where the theory lives.

pub mod action;
pub mod diffring;
pub mod error;
pub mod linalg;
pub mod poly;
pub mod relations;
pub mod scalar;
pub mod seqcomb;
pub mod smt;
pub mod tableau;

pub use diffring::{Ambient, DiffVar, Family, PresVar};
pub use error::{Error, Result};
pub use poly::{Monomial, Polynomial};
pub use seqcomb::{ESeq, JSeq, Kind};

/// Arbitrary-precision integers.
pub type Integer = num_bigint::BigInt;
/// Exact rationals; every generic routine also runs over them.
pub type Rational = num_rational::BigRational;
/// A monomial of `B`.
pub type BMonomial = Monomial<DiffVar>;
/// A polynomial of `B` over Z.
pub type Poly = Polynomial<DiffVar, Integer>;
/// A polynomial of the presentation ring over Z.
pub type PresPoly = Polynomial<PresVar, Integer>;
/// A polynomial in the alphabet symbols over Z.
pub type JPoly = Polynomial<JSeq, Integer>;
