//! Exact computations with finite-dimensional algebras given by quivers with
//! relations: modules, syzygies, Krull-Schmidt decompositions, trivial
//! extensions, bounded complexes of projectives and a decision procedure for
//! derived dimension zero.
#![no_std]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod error;
pub mod algebra;
pub mod complexes;
pub mod derdim;
pub mod exactlin;
pub mod graded;
pub mod modules;
pub mod sample;
pub mod trivext;

pub use error::{Error, Result};
