//! Exact arithmetic for rings of finite rank over the integers.
//!
//! A rank-`n` ring is described by a multiplication table of `n³` integer
//! structure constants. This crate computes the trace-form Gram matrix and
//! discriminant of such rings, checks the Stickelberger congruence
//! `disc ≡ 0, 1 (mod 4)`, evaluates the discriminant pfaffian (an integer
//! square root of the discriminant modulo 4), and emits certificates that a
//! verifier can recheck without trusting the producer.
//!
//! Everything is exact: matrices carry arbitrary-precision integers and all
//! eliminations are fraction-free.

pub mod constructions;
pub mod matrix;
pub mod oracles;
pub mod ring;
pub mod stickelberger;
pub mod unimodular;

mod json_int;

pub use matrix::{IntMatrix, MatrixError};
pub use ring::{FramedRing, MultiplicationTable, RingElement, RingError};
pub use stickelberger::{Certificate, StickelbergerError, TracelikeView};
