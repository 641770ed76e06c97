//! Elliptic groups and elliptic rings.
//!
//! An elliptic group is a set with a commutative operation `x ∗ y` such that
//! `x ∗ (x ∗ y) = y` and `x ∗ (y ∗ (z ∗ w)) = w ∗ (y ∗ (z ∗ x))`. The
//! chord-tangent law on a smooth plane cubic is the motivating example. Every
//! nonempty elliptic group is `_aA`: an abelian group `A` with
//! `x ∗ y = a − x − y`.

pub mod abelian;
pub mod arith;
pub mod classify;
pub mod constructions;
pub mod elliptic;
pub mod morphisms;
pub mod rings;
pub mod curves;
pub mod cli;
pub mod error;

pub use error::{Error, Result};
