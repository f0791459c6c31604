//! Engine for conical sigma-strict limits of finite-category-valued
//! 2-functors.
//!
//! The crate computes, at desk scale and by exhaustive enumeration:
//!
//! - finite categories, functors and naturals, with products, inserters and
//!   equifiers ([`fincat`]);
//! - finite strict 2-categories with a marked arrow family Σ, and the
//!   initial-object analysis that recognizes PIE indexing pairs
//!   ([`two_cat`]);
//! - lax and op-lax cones, cone categories, sigma-strict limits, and a
//!   machine check of their defining universal property ([`cones`]);
//! - category-valued weights, the 2-category of elements and its dual, and
//!   the weighted-versus-conical comparison ([`weights`]);
//! - the assembly of any PIE-indexed limit from products, inserters and
//!   equifiers, cross-checked against the direct computation
//!   ([`pie_construct`]);
//! - 2-monads on finite categories, algebras and weak algebra morphisms, and
//!   the lifting of PIE-indexed limits to algebras with strict distinguished
//!   projections ([`algebras`]);
//! - a line-oriented text format plus a CLI that runs every operation and
//!   emits canonical JSON reports ([`dsl`]).

pub mod algebras;
pub mod cones;
pub mod diagnostics;
pub mod dsl;
pub mod fincat;
pub mod pie_construct;
pub mod samples;
pub mod shapes;
pub mod two_cat;
pub mod weights;

pub use diagnostics::{Diagnostics, Violation};
