//! Small families of algebras used throughout: linear and Dynkin quivers,
//! the Kronecker quiver, truncated polynomial rings and products of fields.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::exactlin::Field;

use super::{Algebra, QuiverPresentation};

fn tree<F: Field>(field: F, n: usize, edges: &[(usize, usize)]) -> Result<Algebra<F>> {
    let mut p = QuiverPresentation::new(field);
    for v in 1..=n {
        p.add_vertex(&format!("{v}"))?;
    }
    for (i, &(s, t)) in edges.iter().enumerate() {
        p.add_arrow(&format!("a{}", i + 1), s - 1, t - 1)?;
    }
    p.build()
}

/// Product of `n` copies of the field.
pub fn semisimple<F: Field>(field: F, n: usize) -> Result<Algebra<F>> {
    tree(field, n, &[])
}

/// Path algebra of `1 -> 2 -> ... -> n`.
pub fn linear_a<F: Field>(field: F, n: usize) -> Result<Algebra<F>> {
    let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
    tree(field, n, &edges)
}

/// Path algebra of a type D quiver (branch at vertex 3), `n >= 4`.
pub fn dynkin_d<F: Field>(field: F, n: usize) -> Result<Algebra<F>> {
    let mut edges = vec![(1, 3), (2, 3)];
    edges.extend((3..n).map(|i| (i, i + 1)));
    tree(field, n, &edges)
}

/// Path algebra of a type E quiver, `n` in 6..=8.
pub fn dynkin_e<F: Field>(field: F, n: usize) -> Result<Algebra<F>> {
    let mut edges: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((n, 3));
    tree(field, n, &edges)
}

/// Two arrows `1 -> 2`.
pub fn kronecker<F: Field>(field: F) -> Result<Algebra<F>> {
    tree(field, 2, &[(1, 2), (1, 2)])
}

/// `k[x]/(x^n)`.
pub fn truncated_polynomial<F: Field>(field: F, n: usize) -> Result<Algebra<F>> {
    let mut p = QuiverPresentation::new(field);
    p.add_vertex("1")?;
    p.add_arrow("x", 0, 0)?;
    p.add_relation(vec![(field.one(), vec![0; n])])?;
    p.build()
}

/// Linear `A_n` with all paths of length two set to zero.
pub fn linear_a_rad_square_zero<F: Field>(field: F, n: usize) -> Result<Algebra<F>> {
    let mut p = QuiverPresentation::new(field);
    for v in 1..=n {
        p.add_vertex(&format!("{v}"))?;
    }
    for i in 1..n {
        p.add_arrow(&format!("a{i}"), i - 1, i)?;
    }
    for i in 0..n.saturating_sub(2) {
        p.add_relation(vec![(field.one(), vec![i, i + 1])])?;
    }
    p.build()
}
