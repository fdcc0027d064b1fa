//! Dense matrices over an exact field.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

use super::field::Field;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Output of [`Matrix::rref`]: `transform * m == reduced`.
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    pub reduced: Matrix<F>,
    pub pivot_columns: Vec<usize>,
    pub rank: usize,
    pub transform: Matrix<F>,
}

impl<F: Field> Matrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { field, rows: r, cols: c, data })
    }

    pub fn from_i64(field: F, rows: &[&[i64]]) -> Self {
        let data: Vec<Vec<F::Elem>> =
            rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::from_rows(field, data).expect("ragged rows");
        m.cols = cols;
        m
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> F {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }
    pub fn into_data(self) -> Vec<F::Elem> {
        self.data
    }
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: F::Elem) {
        self.data[r * self.cols + c] = x;
    }
    #[inline]
    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut F::Elem {
        &mut self.data[r * self.cols + c]
    }
    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }
    pub fn columns(&self) -> Vec<Vec<F::Elem>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }
    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.field, self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if f.is_zero(a) {
                    continue;
                }
                let brow = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    f.add_mul_assign(o, a, b);
                }
            }
        }
        out
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        Ok(self.mul(rhs))
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len());
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    f.add_mul_assign(&mut acc, a, b);
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let f = self.field;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f.add(a, b)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let f = self.field;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f.sub(a, b)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let f = self.field;
        let data = self.data.iter().map(|a| f.mul(a, s)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn add_scaled(&mut self, rhs: &Self, s: &F::Elem) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let f = self.field;
        if f.is_zero(s) {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            f.add_mul_assign(a, s, b);
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.field, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.data[i * cols.len() + j] = self.get(r, c).clone();
            }
        }
        m
    }

    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows);
        let mut m = Self::zeros(self.field, self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
            for c in 0..rhs.cols {
                m.set(r, self.cols + c, rhs.get(r, c).clone());
            }
        }
        m
    }

    pub fn vstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.cols);
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Matrix { field: self.field, rows: self.rows + rhs.rows, cols: self.cols, data }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, rhs: &Self) -> Self {
        let mut m = Self::zeros(self.field, self.rows + rhs.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..rhs.rows {
            for c in 0..rhs.cols {
                m.set(self.rows + r, self.cols + c, rhs.get(r, c).clone());
            }
        }
        m
    }

    /// In-place Gauss-Jordan elimination. Pivots are chosen in the leftmost
    /// remaining column at the first row with a nonzero entry. Returns the
    /// pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !f.is_zero(&self.data[i * cols + c])) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(&self.data[r * cols + c]).expect("pivot is nonzero");
            for j in c..cols {
                let x = f.mul(&self.data[r * cols + j], &inv);
                self.data[r * cols + j] = x;
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c].clone();
                if f.is_zero(&factor) {
                    continue;
                }
                let neg = f.neg(&factor);
                for j in c..cols {
                    let (src, dst) = (r * cols + j, i * cols + j);
                    let s = self.data[src].clone();
                    f.add_mul_assign(&mut self.data[dst], &neg, &s);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> Rref<F> {
        let aug = self.hstack(&Self::identity(self.field, self.rows));
        let mut work = aug;
        // Pivots in the identity block never matter: eliminate only over the
        // left block, then read off the transform.
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let total = work.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !f.is_zero(work.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..total {
                    work.data.swap(p * total + j, r * total + j);
                }
            }
            let inv = f.inv(work.get(r, c)).expect("pivot is nonzero");
            for j in 0..total {
                let x = f.mul(work.get(r, j), &inv);
                work.set(r, j, x);
            }
            for i in 0..rows {
                if i == r || f.is_zero(work.get(i, c)) {
                    continue;
                }
                let neg = f.neg(work.get(i, c));
                for j in 0..total {
                    let s = work.get(r, j).clone();
                    f.add_mul_assign(work.get_mut(i, j), &neg, &s);
                }
            }
            pivots.push(c);
            r += 1;
        }
        let left: Vec<usize> = (0..cols).collect();
        let right: Vec<usize> = (cols..total).collect();
        let all_rows: Vec<usize> = (0..rows).collect();
        Rref {
            reduced: work.submatrix(&all_rows, &left),
            rank: pivots.len(),
            pivot_columns: pivots,
            transform: work.submatrix(&all_rows, &right),
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Basis of `{v : self * v = 0}`; empty when `self` is injective.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = self.field;
        let mut r = self.clone();
        let pivots = r.rref_in_place();
        let mut is_pivot = vec![None; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(i);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution of `self * x = b`, or `None` if the system is
    /// inconsistent.
    pub fn solve(&self, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let f = self.field;
        let bcol = Matrix::from_columns(f, self.rows, &[b.to_vec()]);
        let mut aug = self.hstack(&bcol);
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Solve `self * X = rhs` column by column.
    pub fn solve_matrix(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows);
        let f = self.field;
        let mut aug = self.hstack(rhs);
        let pivots = aug.rref_in_place();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(f, self.cols, rhs.cols);
        for (i, &c) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(c, j, aug.get(i, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = self.hstack(&Self::identity(self.field, n));
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let rows: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(aug.submatrix(&rows, &cols))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Basis of the column space (a subset of the columns, leftmost first).
    pub fn column_space(&self) -> Vec<Vec<F::Elem>> {
        let pivots = self.clone().rref_in_place();
        pivots.iter().map(|&c| self.column(c)).collect()
    }

    pub fn trace(&self) -> F::Elem {
        let f = self.field;
        let mut t = f.zero();
        for i in 0..self.rows.min(self.cols) {
            f.add_assign(&mut t, self.get(i, i));
        }
        t
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.rows as u64).is_zero()
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.field.format(self.get(r, c)))?;
            }
        }
        write!(f, "]")
    }
}

/// An incrementally built, fully reduced echelon basis of a subspace of
/// `F^n`. Every accepted vector is remembered so that members of the span can
/// be written in terms of the accepted originals.
#[derive(Clone, Debug)]
pub struct EchelonBasis<F: Field> {
    field: F,
    dim: usize,
    /// (pivot, reduced vector with 1 at pivot, combination of originals)
    rows: Vec<(usize, Vec<F::Elem>, Vec<F::Elem>)>,
    originals: usize,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(field: F, dim: usize) -> Self {
        EchelonBasis { field, dim, rows: Vec::new(), originals: 0 }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the span.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.0).collect()
    }

    /// Reduce `v` against the basis. Returns the residual and the
    /// combination `c` of accepted originals with `v = residual + sum c_i o_i`.
    pub fn reduce(&self, v: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
        let f = self.field;
        let mut res = v.to_vec();
        let mut combo = vec![f.zero(); self.originals];
        for (p, row, rc) in &self.rows {
            let factor = res[*p].clone();
            if f.is_zero(&factor) {
                continue;
            }
            let neg = f.neg(&factor);
            for (x, y) in res.iter_mut().zip(row) {
                f.add_mul_assign(x, &neg, y);
            }
            for (x, y) in combo.iter_mut().zip(rc) {
                f.add_mul_assign(x, &factor, y);
            }
        }
        (res, combo)
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let (res, _) = self.reduce(v);
        res.iter().all(|x| self.field.is_zero(x))
    }

    /// Coordinates of `v` with respect to the accepted originals.
    pub fn coords(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let (res, combo) = self.reduce(v);
        if res.iter().all(|x| self.field.is_zero(x)) {
            Some(combo)
        } else {
            None
        }
    }

    /// Insert `v`; returns `true` if it enlarged the span.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.dim);
        let f = self.field;
        let (mut res, combo) = self.reduce(v);
        let Some(p) = res.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        // new row = (v - sum combo_i o_i) / res[p]
        let inv = f.inv(&res[p]).expect("nonzero");
        for x in res.iter_mut() {
            *x = f.mul(x, &inv);
        }
        let idx = self.originals;
        self.originals += 1;
        for r in self.rows.iter_mut() {
            r.2.push(f.zero());
        }
        let mut rc: Vec<F::Elem> = combo.iter().map(|c| f.neg(&f.mul(c, &inv))).collect();
        rc.push(inv);
        debug_assert_eq!(rc.len(), idx + 1);
        // keep full reduction: clear column p from existing rows
        for (_, row, orc) in self.rows.iter_mut() {
            let factor = row[p].clone();
            if f.is_zero(&factor) {
                continue;
            }
            let neg = f.neg(&factor);
            for (x, y) in row.iter_mut().zip(&res) {
                f.add_mul_assign(x, &neg, y);
            }
            for (x, y) in orc.iter_mut().zip(&rc) {
                f.add_mul_assign(x, &neg, y);
            }
        }
        self.rows.push((p, res, rc));
        true
    }

    /// The reduced basis vectors.
    pub fn basis(&self) -> Vec<Vec<F::Elem>> {
        self.rows.iter().map(|r| r.1.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::field::{PrimeField, Rationals};

    #[test]
    fn rref_identity_and_zero() {
        let q = Rationals;
        let id = Matrix::identity(q, 2);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.pivot_columns, vec![0, 1]);
        assert_eq!(r.rank, 2);
        let z = Matrix::zeros(q, 2, 2);
        let r = z.rref();
        assert_eq!(r.reduced, z);
        assert!(r.pivot_columns.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_over_f2() {
        let f2 = PrimeField::new(2).unwrap();
        let m = Matrix::from_i64(f2, &[&[1, 1], &[1, 1]]);
        let r = m.rref();
        assert_eq!(r.reduced, Matrix::from_i64(f2, &[&[1, 1], &[0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.transform.mul(&m), r.reduced);
    }

    #[test]
    fn solve_examples() {
        let q = Rationals;
        let id = Matrix::identity(q, 2);
        let b = [q.from_i64(3), q.from_i64(5)];
        assert_eq!(id.solve(&b).unwrap(), Some(b.to_vec()));
        let z = Matrix::zeros(q, 2, 2);
        assert_eq!(z.solve(&[q.one(), q.zero()]).unwrap(), None);
        assert!(id.solve(&[q.one()]).is_err());
    }

    #[test]
    fn kernel_of_row() {
        let q = Rationals;
        let m = Matrix::from_i64(q, &[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k, vec![vec![q.from_i64(-1), q.one()]]);
        assert!(Matrix::identity(q, 3).kernel_basis().is_empty());
    }

    #[test]
    fn echelon_coordinates() {
        let q = Rationals;
        let mut e = EchelonBasis::new(q, 3);
        let a = vec![q.from_i64(1), q.from_i64(2), q.from_i64(0)];
        let b = vec![q.from_i64(0), q.from_i64(1), q.from_i64(1)];
        assert!(e.insert(&a));
        assert!(e.insert(&b));
        let c: Vec<_> = a.iter().zip(&b).map(|(x, y)| q.add(&q.mul(&q.from_i64(2), x), &q.mul(&q.from_i64(-3), y))).collect();
        assert!(!e.insert(&c));
        assert_eq!(e.coords(&c), Some(vec![q.from_i64(2), q.from_i64(-3)]));
        assert_eq!(e.coords(&[q.one(), q.zero(), q.zero()]), None);
    }
}
