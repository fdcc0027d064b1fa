//! Exact dense linear algebra over the rationals and prime fields.

mod field;
mod matrix;
mod poly;

pub use field::{is_prime, parse_scalar, Field, FieldSpec, PrimeField, Rationals};
pub use matrix::{EchelonBasis, Matrix, Rref};
pub use poly::Poly;
