//! Exact partial fraction decompositions over hyperplane arrangements.
//!
//! Start with the runnable examples (`cargo run --example NAME`):
//!
//! - `intro_pfd`: decompose a rational function in two variables and verify it
//! - `spurious_poles`: remove forms dividing the numerator first
//! - `membership_check`: flats, Groebner bases and linear algebra on the same question
//! - `affine_decomposition`: primary decomposition of an affine arrangement
//! - `minimal_decomposition`: prune redundant components
//! - `braid_flats`: flat types and decomposition census of a braid arrangement
//! - `wavefunction`: a degree-7 decomposition over eleven forms
//! - `restricted_generators`: lower bounds from a subset of the generators
//! - `iterative_refinement`: decompose the terms again
//! - `verify_document`: check a decomposition document against its problem
//! - `parse_render`: problem files and expressions
//! - `feynman_bench`: seeded synthetic benchmarks
//!
//! The library layers bottom-up: [`poly`] and [`linalg`] provide exact
//! arithmetic, [`matroid`] the arrangement and its flats, [`ideal`] the
//! ideals `I_{L,d}` with Groebner bases and bounded-degree solves,
//! [`decomp`] primary decompositions, and [`pfd`] the decompositions
//! themselves. [`cli`] backs the `pfdkit` binary.
pub mod bench;
pub mod cli;
pub mod decomp;
pub mod error;
pub mod fixtures;
pub mod ideal;
pub mod linalg;
pub mod matroid;
pub mod parse;
pub mod pfd;
pub mod poly;

pub use error::{Error, Result};
