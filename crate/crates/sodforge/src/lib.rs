//! Exact construction and verification of orthogonal designs over signed groups.
//!
//! A signed group is a group with a distinguished central element `-1` of
//! order two.  Designs here are square matrices whose entries are zero or a
//! signed group element times a commuting variable, subject to the defining
//! identity `X X* = (u_1 x_1^2 + ... + u_k x_k^2) I`.  Everything in this
//! crate is exact integer arithmetic: no floating point is involved in any
//! verification decision.
//!
//! Module map:
//! * [`signed_group`] — presentations, canonical elements, signed permutation
//!   matrices.
//! * [`ring_matrix`] — the restricted group-ring, design matrices, exact and
//!   randomized-modular verification, file formats.
//! * [`constructions`] — Hurwitz-Radon families and the power-of-two /
//!   order-32 design constructions.
//! * [`remrep`] — real monomial representations and design expansion.
//! * [`golay`] — Golay and complex Golay sequence pairs.
//! * [`cod_family`] — circulant arrays built from sequence pairs and the
//!   pipeline that turns them into complex orthogonal designs.
//! * [`nonexistence`] — exhaustive backtracking searches settling small
//!   existence questions.

pub mod cod_family;
pub mod constructions;
pub mod error;
pub mod golay;
pub mod nonexistence;
pub mod remrep;
pub mod ring_matrix;
pub mod signed_group;

pub use error::{Error, Result};
