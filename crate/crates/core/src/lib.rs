//! Exact invariants of skew-symmetric matrix pencils over the rationals and
//! almost inner derivations of the 2-step nilpotent Lie algebras they define.
//!
//! A skew pencil is a pair of skew-symmetric rational matrices `(A, B)` read
//! as the one-parameter family `μA + λB`. Up to strict congruence such a
//! pencil is classified by its elementary divisors and minimal indices, and
//! every pencil with two independent coefficient matrices is the structure
//! constant data of a 2-step nilpotent Lie algebra with a 2-dimensional
//! commutator ideal. This crate computes
//!
//! * the complete congruence invariant ([`pencil::PencilInvariants`]):
//!   Smith normal form over ℚ\[λ\], finite/infinite/quadratic elementary
//!   divisor pairs and minimal indices,
//! * canonical block pencils realizing a given invariant
//!   ([`canonical::BlockSpec`]),
//! * the derivation spaces of the associated Lie algebra
//!   ([`lie::Genus2Algebra`]): inner derivations, central derivations, and
//! * the space of almost inner derivations two independent ways — a symbolic
//!   constraint solver and closed-form dimension formulas — with a
//!   cross-check that reports any disagreement ([`aid::cross_check`]).
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod aid;
pub mod canonical;
pub mod corpus;
pub mod error;
pub mod json;
pub mod lie;
pub mod matrix;
pub mod pencil;
pub mod poly;
pub mod quad;
pub mod rat;
pub mod rng;
pub mod smith;

pub use aid::{cross_check, formula_dimension, solve_aid, AidResult, FieldMode};
pub use canonical::{build_block, canonical_from_invariants, direct_sum, BlockSpec, CanonicalSpec};
pub use error::Error;
pub use lie::Genus2Algebra;
pub use matrix::RatMatrix;
pub use pencil::{Pencil, PencilInvariants};
pub use poly::Poly;
pub use rat::Rat;
