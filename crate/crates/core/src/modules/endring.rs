//! Finite-dimensional algebras of matrices (endomorphism rings), their
//! Jacobson radical, and idempotent splitting.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactlin::{EchelonBasis, Field, FieldSpec, Matrix, Poly};

/// An algebra given by a basis of square matrices closed under products.
/// Elements are coordinate vectors in that basis.
#[derive(Clone, Debug)]
pub struct EndRing<F: Field> {
    field: F,
    basis: Vec<Matrix<F>>,
    /// `mult[i * d + j]` holds the coordinates of `basis[i] * basis[j]`.
    mult: Vec<Vec<F::Elem>>,
    unit: Vec<F::Elem>,
}

/// Outcome of the structural analysis of a ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingStructure<E> {
    /// Local ring; the residue division ring has this dimension over the
    /// ground field.
    Local { residue_degree: usize },
    /// A nontrivial idempotent, in coordinates.
    Split { idempotent: Vec<E> },
}

fn flatten<F: Field>(m: &Matrix<F>) -> &[F::Elem] {
    m.data()
}

impl<F: Field> EndRing<F> {
    pub fn from_matrices(field: F, basis: Vec<Matrix<F>>) -> Result<Self> {
        let d = basis.len();
        if d == 0 {
            return Err(Error::ZeroObject);
        }
        let n = basis[0].rows();
        let mut ech = EchelonBasis::new(field, n * n);
        for b in &basis {
            if !ech.insert(flatten(b)) {
                return Err(Error::Precondition("ring basis is linearly dependent".into()));
            }
        }
        let coords = |m: &Matrix<F>| {
            ech.coords(flatten(m))
                .ok_or_else(|| Error::Precondition("matrix span is not closed under products".into()))
        };
        let mut mult = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                mult.push(coords(&basis[i].mul(&basis[j]))?);
            }
        }
        let unit = coords(&Matrix::identity(field, n))?;
        Ok(EndRing { field, basis, mult, unit })
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix<F>] {
        &self.basis
    }

    pub fn unit(&self) -> Vec<F::Elem> {
        self.unit.clone()
    }

    pub fn zero(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field;
        let d = self.dim();
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (o, s) in out.iter_mut().zip(&self.mult[i * d + j]) {
                    f.add_mul_assign(o, &c, s);
                }
            }
        }
        out
    }

    pub fn add(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        x.iter().zip(y).map(|(a, b)| self.field.add(a, b)).collect()
    }

    pub fn sub(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        x.iter().zip(y).map(|(a, b)| self.field.sub(a, b)).collect()
    }

    pub fn scale(&self, x: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
        x.iter().map(|a| self.field.mul(a, c)).collect()
    }

    pub fn is_zero(&self, x: &[F::Elem]) -> bool {
        x.iter().all(|a| self.field.is_zero(a))
    }

    /// The matrix represented by coordinates `x`.
    pub fn element(&self, x: &[F::Elem]) -> Matrix<F> {
        let f = self.field;
        let n = self.basis[0].rows();
        let mut m = Matrix::zeros(f, n, n);
        for (c, b) in x.iter().zip(&self.basis) {
            if !f.is_zero(c) {
                m.add_scaled(b, c);
            }
        }
        m
    }

    pub fn coords_of(&self, m: &Matrix<F>) -> Option<Vec<F::Elem>> {
        let n = self.basis[0].rows();
        let mut ech = EchelonBasis::new(self.field, n * n);
        for b in &self.basis {
            ech.insert(flatten(b));
        }
        ech.coords(flatten(m))
    }

    /// Matrix of `y -> x y` on coordinates.
    pub fn left_regular(&self, x: &[F::Elem]) -> Matrix<F> {
        let d = self.dim();
        let cols: Vec<_> = (0..d).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        Matrix::from_columns(self.field, d, &cols)
    }

    fn eval(&self, p: &Poly<F>, x: &[F::Elem]) -> Vec<F::Elem> {
        let mut acc = self.zero();
        for c in p.coeffs().iter().rev() {
            acc = self.mul(&acc, x);
            acc = self.add(&acc, &self.scale(&self.unit, c));
        }
        acc
    }

    pub fn minimal_polynomial(&self, x: &[F::Elem]) -> Poly<F> {
        self.minimal_polynomial_mod(x, &[])
    }

    /// Minimal polynomial of the image of `x` modulo the span of `ideal`.
    pub fn minimal_polynomial_mod(&self, x: &[F::Elem], ideal: &[Vec<F::Elem>]) -> Poly<F> {
        let f = self.field;
        let mut ech = EchelonBasis::new(f, self.dim());
        let mut skip = 0;
        for v in ideal {
            if ech.insert(v) {
                skip += 1;
            }
        }
        let mut power = self.unit.clone();
        let mut k = 0;
        loop {
            if let Some(c) = ech.coords(&power) {
                let mut coeffs: Vec<F::Elem> = c[skip..].iter().map(|a| f.neg(a)).collect();
                coeffs.push(f.one());
                debug_assert_eq!(coeffs.len(), k + 1);
                return Poly::new(f, coeffs);
            }
            ech.insert(&power);
            power = self.mul(&power, x);
            k += 1;
        }
    }

    /// Basis (in coordinates) of the Jacobson radical.
    pub fn radical(&self) -> Vec<Vec<F::Elem>> {
        let f = self.field;
        let d = self.dim();
        let traces: Vec<F::Elem> = (0..d).map(|k| self.left_regular(&self.basis_vector(k)).trace()).collect();
        let tr = |v: &[F::Elem]| {
            let mut t = f.zero();
            for (a, b) in v.iter().zip(&traces) {
                f.add_mul_assign(&mut t, a, b);
            }
            t
        };
        // trace form: x in I_0 iff tr(x b_j) = 0 for all j
        let mut rows = Vec::with_capacity(d);
        for j in 0..d {
            rows.push((0..d).map(|i| tr(&self.mult[i * d + j])).collect::<Vec<_>>());
        }
        let mut ideal = Matrix::from_rows(f, rows).expect("square").kernel_basis();
        if let FieldSpec::PrimeField(p) = f.spec() {
            let p = p as u128;
            let mut l = 0u32;
            while p.pow(l + 1) <= d as u128 {
                l += 1;
            }
            for i in 1..=l {
                if ideal.is_empty() {
                    break;
                }
                let modulus = p.pow(i + 1);
                let pi = p.pow(i);
                let mut rows = Vec::with_capacity(d);
                for j in 0..d {
                    let bj = self.basis_vector(j);
                    let row: Vec<F::Elem> = ideal
                        .iter()
                        .map(|a| {
                            let m = self.left_regular(&self.mul(a, &bj));
                            let t = lifted_power_trace(f, &m, pi as u64, modulus);
                            debug_assert_eq!(t % pi, 0);
                            f.from_i64(((t / pi) % p) as i64)
                        })
                        .collect();
                    rows.push(row);
                }
                let sol = Matrix::from_rows(f, rows).expect("rectangular").kernel_basis();
                ideal = sol
                    .iter()
                    .map(|c| {
                        let mut v = self.zero();
                        for (ck, a) in c.iter().zip(&ideal) {
                            if !f.is_zero(ck) {
                                v = self.add(&v, &self.scale(a, ck));
                            }
                        }
                        v
                    })
                    .collect();
            }
        }
        ideal
    }

    /// Find a nontrivial idempotent or certify that the ring is local.
    pub fn analyze(&self, seed: u64) -> Result<RingStructure<F::Elem>> {
        let f = self.field;
        let d = self.dim();
        let rad = self.radical();
        let q = d - rad.len();
        if q == 1 {
            return Ok(RingStructure::Local { residue_degree: 1 });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut candidates: Vec<Vec<F::Elem>> = (0..d).map(|i| self.basis_vector(i)).collect();
        'outer: for i in 0..d {
            for j in 0..d {
                if candidates.len() > 4 * d + 64 {
                    break 'outer;
                }
                if i != j {
                    candidates.push(self.mult[i * d + j].clone());
                }
            }
        }
        for _ in 0..64 {
            candidates.push((0..d).map(|_| f.random(&mut rng)).collect());
        }
        for x in &candidates {
            let mu = self.minimal_polynomial(x);
            if let Some((g, h)) = mu.coprime_split() {
                let (_, s, _) = g.ext_gcd(&h);
                let e = self.eval(&s.mul(&g).rem(&mu), x);
                return Ok(RingStructure::Split { idempotent: e });
            }
            let mq = self.minimal_polynomial_mod(x, &rad);
            if mq.degree() == Some(q) && mq.is_irreducible() == Some(true) {
                return Ok(RingStructure::Local { residue_degree: q });
            }
        }
        if let Some(order) = f.order() {
            if order.checked_pow(q as u32).is_some_and(|t| t <= 4096) {
                return self.exhaustive_quotient(&rad, q);
            }
        }
        Err(Error::Undecided(format!("no idempotent found in a ring with semisimple quotient of dimension {q}")))
    }

    fn exhaustive_quotient(&self, rad: &[Vec<F::Elem>], q: usize) -> Result<RingStructure<F::Elem>> {
        let f = self.field;
        let order = f.order().unwrap();
        let mut ech = EchelonBasis::new(f, self.dim());
        for v in rad {
            ech.insert(v);
        }
        let mut comp = Vec::new();
        for i in 0..self.dim() {
            let b = self.basis_vector(i);
            if ech.insert(&b) {
                comp.push(b);
            }
        }
        let mut jspan = EchelonBasis::new(f, self.dim());
        for v in rad {
            jspan.insert(v);
        }
        let total = order.pow(q as u32);
        for idx in 1..total {
            let mut k = idx;
            let mut x = self.zero();
            for c in &comp {
                let a = f.element_at(k % order);
                k /= order;
                x = self.add(&x, &self.scale(c, &a));
            }
            let x2 = self.mul(&x, &x);
            if !jspan.contains(&self.sub(&x2, &x)) || jspan.contains(&self.sub(&self.unit, &x)) {
                continue;
            }
            let e = lift_idempotent(self, rad, &x)?;
            return Ok(RingStructure::Split { idempotent: e });
        }
        Ok(RingStructure::Local { residue_degree: q })
    }
}

/// `Tr(m~^e) mod modulus` for the integer lift `m~` of a prime-field matrix.
fn lifted_power_trace<F: Field>(f: F, m: &Matrix<F>, mut e: u64, modulus: u128) -> u128 {
    let n = m.rows();
    let lift: Vec<u128> = m.data().iter().map(|x| f.as_residue(x).unwrap() as u128 % modulus).collect();
    let mul = |a: &[u128], b: &[u128]| {
        let mut c = vec![0u128; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = a[i * n + k];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    c[i * n + j] = (c[i * n + j] + x * b[k * n + j]) % modulus;
                }
            }
        }
        c
    };
    let mut acc = vec![0u128; n * n];
    for i in 0..n {
        acc[i * n + i] = 1;
    }
    let mut base = lift;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    (0..n).fold(0, |t, i| (t + acc[i * n + i]) % modulus)
}

/// Lift `f`, idempotent modulo the nilpotent ideal spanned by `nil`, to an
/// idempotent `e` with `e - f` in that ideal, by iterating
/// `e -> 3e^2 - 2e^3`.
pub fn lift_idempotent<F: Field>(ring: &EndRing<F>, nil: &[Vec<F::Elem>], f: &[F::Elem]) -> Result<Vec<F::Elem>> {
    let k = ring.field();
    let d = ring.dim();
    let mut span = EchelonBasis::new(k, d);
    for v in nil {
        span.insert(v);
    }
    let f2 = ring.mul(f, f);
    if !span.contains(&ring.sub(&f2, f)) {
        return Err(Error::NotIdempotentModIdeal);
    }
    // nilpotency degree of the ideal
    let mut power = span.basis();
    let mut degree = 1usize;
    while !power.is_empty() {
        degree += 1;
        if degree > d + 1 {
            return Err(Error::NotNilpotent);
        }
        let mut next = EchelonBasis::new(k, d);
        for a in &power {
            for b in nil {
                next.insert(&ring.mul(a, b));
            }
        }
        power = next.basis();
    }
    let mut steps_left = usize::BITS - (degree - 1).leading_zeros() + 1;
    let three = k.from_i64(3);
    let two = k.from_i64(2);
    let mut e = f.to_vec();
    loop {
        let e2 = ring.mul(&e, &e);
        if e2 == e {
            return Ok(e);
        }
        if steps_left == 0 {
            return Err(Error::NotNilpotent);
        }
        steps_left -= 1;
        let e3 = ring.mul(&e2, &e);
        e = ring.sub(&ring.scale(&e2, &three), &ring.scale(&e3, &two));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{PrimeField, Rationals};

    fn upper_triangular<F: Field>(f: F) -> EndRing<F> {
        let b = vec![
            Matrix::from_i64(f, &[&[1, 0], &[0, 0]]),
            Matrix::from_i64(f, &[&[0, 1], &[0, 0]]),
            Matrix::from_i64(f, &[&[0, 0], &[0, 1]]),
        ];
        EndRing::from_matrices(f, b).unwrap()
    }

    #[test]
    fn upper_triangular_radical_and_lift() {
        for ring in [upper_triangular(PrimeField::new(2).unwrap())] {
            let rad = ring.radical();
            assert_eq!(rad.len(), 1);
            let fi = ring.coords_of(&Matrix::from_i64(ring.field(), &[&[1, 1], &[0, 0]])).unwrap();
            assert_eq!(lift_idempotent(&ring, &rad, &fi).unwrap(), fi);
        }
        let ring = upper_triangular(Rationals);
        let rad = ring.radical();
        assert_eq!(rad.len(), 1);
        let nil = rad[0].clone();
        assert_eq!(lift_idempotent(&ring, &rad, &nil).unwrap(), ring.zero());
        assert!(matches!(ring.analyze(0).unwrap(), RingStructure::Split { .. }));
    }

    #[test]
    fn lifting_rejects_non_idempotent() {
        let ring = upper_triangular(Rationals);
        let rad = ring.radical();
        let two = ring.scale(&ring.unit(), &Rationals.from_i64(2));
        assert_eq!(lift_idempotent(&ring, &rad, &two), Err(Error::NotIdempotentModIdeal));
    }

    #[test]
    fn lifting_corrects_an_approximate_idempotent() {
        // k[x]/(x^3) x k: f = (1 + x, 0) is idempotent modulo (x)
        let f = Rationals;
        let x = Matrix::from_i64(f, &[&[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 0]]);
        let e1 = Matrix::from_i64(f, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 0]]);
        let e2 = Matrix::identity(f, 4).sub(&e1);
        let ring = EndRing::from_matrices(f, vec![e1.clone(), x.clone(), x.mul(&x), e2]).unwrap();
        let nil = ring.radical();
        assert_eq!(nil.len(), 2);
        let approx = ring.coords_of(&e1.add(&x)).unwrap();
        let e = lift_idempotent(&ring, &nil, &approx).unwrap();
        assert_eq!(ring.mul(&e, &e), e);
    }

    #[test]
    fn group_algebra_radical_in_characteristic_two() {
        let f = PrimeField::new(2).unwrap();
        let swap = Matrix::from_i64(f, &[&[0, 1], &[1, 0]]);
        let ring = EndRing::from_matrices(f, vec![Matrix::identity(f, 2), swap]).unwrap();
        let rad = ring.radical();
        assert_eq!(rad, vec![vec![1, 1]]);
        assert_eq!(ring.analyze(0).unwrap(), RingStructure::Local { residue_degree: 1 });
    }

    #[test]
    fn field_extension_is_flagged() {
        // F_2[t]/(t^2+t+1) acting on itself
        let f = PrimeField::new(2).unwrap();
        let t = Matrix::from_i64(f, &[&[0, 1], &[1, 1]]);
        let ring = EndRing::from_matrices(f, vec![Matrix::identity(f, 2), t]).unwrap();
        assert_eq!(ring.analyze(0).unwrap(), RingStructure::Local { residue_degree: 2 });
    }
}
