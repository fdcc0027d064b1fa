use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Rationals};

use super::Algebra;

/// The dual `DA = Hom_k(A, k)` on the dual basis, with
/// `(x . f)(y) = f(y x)` and `(f . x)(y) = f(x y)`.
#[derive(Clone, Debug)]
pub struct DualBimodule<F: Field> {
    /// `left[i]` is the matrix of `f -> b_i . f`.
    pub left: Vec<Matrix<F>>,
    /// `right[i]` is the matrix of `f -> f . b_i`.
    pub right: Vec<Matrix<F>>,
    /// The dual of `b in e_t A e_s` lies in `e_s DA e_t`; this records
    /// `(source, target)` of each dual basis element in that sense.
    pub ends: Vec<(usize, usize)>,
}

impl<F: Field> Algebra<F> {
    /// Cartan matrix: `C[i][j] = dim e_i A e_j`, so column `j` lists the
    /// composition factors of `P_j`.
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        let n = self.num_vertices();
        let mut c = vec![vec![0i64; n]; n];
        for b in self.basis() {
            c[b.target][b.source] += 1;
        }
        c
    }

    /// Characteristic polynomial of `-C^{-T} C`, lowest coefficient first.
    pub fn coxeter_polynomial(&self) -> Result<Vec<i64>> {
        coxeter_polynomial_of(&self.cartan())
    }

    pub fn dual_bimodule(&self) -> DualBimodule<F> {
        let n = self.dim();
        let mut left = Vec::with_capacity(n);
        let mut right = Vec::with_capacity(n);
        for i in 0..n {
            let x = self.basis_vector(i);
            left.push(self.right_mult_matrix(&x).transpose());
            right.push(self.left_mult_matrix(&x).transpose());
        }
        let ends = self.basis().iter().map(|b| (b.target, b.source)).collect();
        DualBimodule { left, right, ends }
    }
}

/// Coxeter polynomial of an integer Cartan matrix; fails unless
/// `det C = +-1`.
pub fn coxeter_polynomial_of(cartan: &[Vec<i64>]) -> Result<Vec<i64>> {
    let q = Rationals;
    let n = cartan.len();
    let c = Matrix::from_rows(q, cartan.iter().map(|r| r.iter().map(|&x| q.from_i64(x)).collect()).collect())?;
    let inv = c.inverse().ok_or(Error::CoxeterUndefined)?;
    if inv.data().iter().any(|x| !x.is_integer()) {
        return Err(Error::CoxeterUndefined);
    }
    let phi = inv.transpose().mul(&c).scale(&q.from_i64(-1));
    // Faddeev-LeVerrier
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut m = Matrix::zeros(q, n, n);
    for k in 1..=n {
        let mut next = phi.mul(&m);
        for i in 0..n {
            let x = next.get(i, i) + &coeffs[n - k + 1];
            next.set(i, i, x);
        }
        m = next;
        let t = phi.mul(&m).trace();
        coeffs[n - k] = -t / BigRational::from_integer(BigInt::from(k as i64));
    }
    coeffs
        .iter()
        .map(|c| c.to_integer().to_i64().filter(|_| c.is_integer()).ok_or(Error::CoxeterUndefined))
        .collect()
}
