//! Term engine and proof checker for Heyting arithmetic in all finite types
//! with equality primitive only at the ground type.
//!
//! * [`syntax`]: finite types, typed combinatory terms, parsing and printing.
//! * [`reduction`]: weak combinatory reduction and normalization.
//! * [`abstraction`]: bracket abstraction and the derived combinators.
//! * [`logic`]: formulas, substitution, alpha-equivalence and observational
//!   equality at higher types.
//! * [`kernel`]: Hilbert-style proof checking, the deduction theorem and a
//!   library of derivations (congruence, equivalence, observational
//!   equivalence).
//! * [`dialectica`]: the Dialectica formula translation and the check that
//!   the universal axioms interpret themselves.
//! * [`suite`] and [`cli`]: the batch driver behind the `ha0w` binary.

#![allow(clippy::result_large_err)]

pub mod abstraction;
pub mod cli;
pub mod corpus;
pub mod dialectica;
pub mod grid;
pub mod kernel;
pub mod logic;
pub mod reduction;
pub mod suite;
pub mod syntax;

pub use syntax::{numeral, ConstTag, FiniteType, Term, Var};
