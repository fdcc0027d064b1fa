//! The trivial extension `T(A) = A + DA`, graded with `A` in degree 0 and
//! `DA` in degree 1, and self-injectivity checks.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{Algebra, BasisElement};
use crate::error::Result;
use crate::exactlin::{Field, Matrix};
use crate::graded::GradedAlgebra;
use crate::modules::{find_isomorphism, Module};

#[derive(Clone, Debug)]
pub struct TrivialExtension<F: Field> {
    pub base: Arc<Algebra<F>>,
    pub graded: Arc<GradedAlgebra<F>>,
}

/// Basis: the basis of `A` followed by the dual basis of `DA` in the same
/// order. `(a, f)(b, g) = (ab, a.g + f.b)`.
pub fn trivial_extension<F: Field>(a: &Arc<Algebra<F>>) -> Result<TrivialExtension<F>> {
    let f = a.field();
    let n = a.dim();
    let mut basis: Vec<BasisElement> = a.basis().to_vec();
    for b in a.basis() {
        basis.push(BasisElement { name: format!("{}*", b.name), source: b.target, target: b.source });
    }
    let m = 2 * n;
    let mut products = vec![Vec::new(); m * m];
    for i in 0..n {
        for j in 0..n {
            products[i * m + j] = a.product(i, j).to_vec();
        }
    }
    // b_i . b_j* = sum_k [b_j in b_k b_i] b_k*,  b_j* . b_i = sum_k [b_j in b_i b_k] b_k*
    for i in 0..n {
        for k in 0..n {
            for (j, c) in a.product(k, i) {
                products[i * m + n + j].push((n + k, c.clone()));
            }
            for (j, c) in a.product(i, k) {
                products[(n + j) * m + i].push((n + k, c.clone()));
            }
        }
    }
    let alg = Algebra::from_parts(f, a.vertices().to_vec(), basis, a.idempotents().to_vec(), products)?;
    let mut degrees = vec![0u32; n];
    degrees.extend(core::iter::repeat_n(1u32, n));
    let graded = GradedAlgebra::new(Arc::new(alg), degrees)?;
    Ok(TrivialExtension { base: a.clone(), graded: Arc::new(graded) })
}

impl<F: Field> TrivialExtension<F> {
    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        self.graded.algebra()
    }

    /// Gram matrix of `<(a,f),(b,g)> = f(b) + g(a)`.
    pub fn pairing(&self) -> Matrix<F> {
        let f = self.base.field();
        let n = self.base.dim();
        let mut g = Matrix::zeros(f, 2 * n, 2 * n);
        for i in 0..n {
            g.set(i, n + i, f.one());
            g.set(n + i, i, f.one());
        }
        g
    }

    /// Symmetric, nondegenerate and associative: `<xy, z> = <x, yz>`.
    pub fn verify_pairing(&self) -> bool {
        let t = self.algebra();
        let g = self.pairing();
        if g != g.transpose() || !g.is_invertible() {
            return false;
        }
        let d = t.dim();
        let form = |x: &[F::Elem], y: &[F::Elem]| g.mul_vec(y).iter().zip(x).fold(t.field().zero(), |acc, (a, b)| {
            t.field().add(&acc, &t.field().mul(a, b))
        });
        for i in 0..d {
            for j in 0..d {
                let xy = t.mul(&t.basis_vector(i), &t.basis_vector(j));
                for k in 0..d {
                    let yz = t.mul(&t.basis_vector(j), &t.basis_vector(k));
                    if form(&xy, &t.basis_vector(k)) != form(&t.basis_vector(i), &yz) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The embedding `A -> T(A)` is the identity on the first `dim A`
    /// indices; check that it is multiplicative.
    pub fn degree_zero_matches_base(&self) -> bool {
        let n = self.base.dim();
        let t = self.algebra();
        let m = t.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let p = &t.products()[i * m + j];
                p.as_slice() == self.base.product(i, j)
            })
        }) && self.graded.degree0().dim() == n
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SelfInjectivity {
    SelfInjective,
    /// The indecomposable projective at this vertex is not injective.
    Not { projective: usize },
}

/// Whether every indecomposable projective is isomorphic to an
/// indecomposable injective.
pub fn check_selfinjective<F: Field>(a: &Arc<Algebra<F>>) -> Result<SelfInjectivity> {
    let nv = a.num_vertices();
    let injectives: Vec<_> = (0..nv).map(|v| Module::injective(a.clone(), v)).collect();
    for v in 0..nv {
        let p = Module::projective(a.clone(), v);
        let mut hit = false;
        for i in &injectives {
            if find_isomorphism(&p, i, None, 0)?.is_some() {
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(SelfInjectivity::Not { projective: v });
        }
    }
    Ok(SelfInjectivity::SelfInjective)
}
