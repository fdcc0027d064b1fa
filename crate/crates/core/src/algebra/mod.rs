//! Finite-dimensional basic algebras with a basis adapted to a complete set
//! of primitive orthogonal idempotents.
//!
//! Every basis element `b` lies in some `e_t A e_s`; we call `s` its source
//! and `t` its target. Products `b_i * b_j` are nonzero only when the source
//! of `b_i` is the target of `b_j`. Modules are left modules, so an arrow
//! `a: s -> t` of a quiver is an element of `e_t A e_s` and the projective
//! `P_i = A e_i` is spanned by the paths starting at `i`.

mod invariants;
pub mod named;
mod presentation;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactlin::{EchelonBasis, Field, Matrix};

pub use invariants::{coxeter_polynomial_of, DualBimodule};
pub use presentation::{Arrow, QuiverPresentation, DEFAULT_LENGTH_CAP};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// Structure constants: `products[i * n + j]` lists `(k, c)` with
/// `b_i * b_j = sum c b_k`, sorted by `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra<F: Field> {
    field: F,
    vertices: Vec<String>,
    basis: Vec<BasisElement>,
    idempotents: Vec<usize>,
    radical: Vec<usize>,
    products: Vec<Vec<(usize, F::Elem)>>,
    loewy: usize,
    generators: Vec<usize>,
    /// Products of generators spanning the radical; a word `[g0, g1, ..]`
    /// stands for `... * g1 * g0`.
    monomials: Vec<Vec<usize>>,
    /// For each basis element in the radical, its coordinates in terms of
    /// `monomials`.
    rad_coords: Vec<Option<Vec<F::Elem>>>,
}

impl<F: Field> Algebra<F> {
    /// Validate raw structure constants. The radical is the span of the
    /// basis elements that are not idempotents; it must be a nilpotent ideal.
    pub fn from_parts(
        field: F,
        vertices: Vec<String>,
        basis: Vec<BasisElement>,
        idempotents: Vec<usize>,
        mut products: Vec<Vec<(usize, F::Elem)>>,
    ) -> Result<Self> {
        let f = field;
        let n = basis.len();
        let nv = vertices.len();
        if nv == 0 {
            return Err(Error::InvalidAlgebra("no vertices".into()));
        }
        if products.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: products.len() });
        }
        if idempotents.len() != nv {
            return Err(Error::DimensionMismatch { expected: nv, found: idempotents.len() });
        }
        for (v, &e) in idempotents.iter().enumerate() {
            if e >= n || basis[e].source != v || basis[e].target != v {
                return Err(Error::InvalidAlgebra(format!("idempotent of vertex {v} is misplaced")));
            }
        }
        for b in &basis {
            if b.source >= nv || b.target >= nv {
                return Err(Error::InvalidAlgebra(format!("{} has an unknown vertex", b.name)));
            }
        }
        let is_idem: Vec<bool> = (0..n).map(|i| idempotents.contains(&i)).collect();
        for i in 0..n {
            for j in 0..n {
                let entry = &mut products[i * n + j];
                entry.retain(|(_, c)| !f.is_zero(c));
                entry.sort_by_key(|t| t.0);
                if entry.windows(2).any(|w| w[0].0 == w[1].0) {
                    return Err(Error::InvalidAlgebra(format!("repeated term in product {i}*{j}")));
                }
                for (k, _) in entry.iter() {
                    if *k >= n {
                        return Err(Error::InvalidAlgebra(format!("product {i}*{j} out of range")));
                    }
                    if basis[i].source != basis[j].target
                        || basis[*k].target != basis[i].target
                        || basis[*k].source != basis[j].source
                    {
                        return Err(Error::InvalidAlgebra(format!(
                            "product {}*{} is not compatible with the idempotents",
                            basis[i].name, basis[j].name
                        )));
                    }
                }
                // idempotents act as the identity where allowed
                let expect_unit = if is_idem[i] && basis[i].source == basis[j].target {
                    Some(j)
                } else if is_idem[j] && basis[i].source == basis[j].target {
                    Some(i)
                } else {
                    None
                };
                if let Some(k) = expect_unit {
                    if entry.len() != 1 || entry[0].0 != k || !f.is_one(&entry[0].1) {
                        return Err(Error::InvalidAlgebra(format!(
                            "idempotent does not act as identity in {}*{}",
                            basis[i].name, basis[j].name
                        )));
                    }
                }
                if !is_idem[i] && !is_idem[j] && entry.iter().any(|(k, _)| is_idem[*k]) {
                    return Err(Error::InvalidAlgebra(
                        "radical span is not an ideal, so it is not nilpotent".into(),
                    ));
                }
            }
        }
        let radical: Vec<usize> = (0..n).filter(|&i| !is_idem[i]).collect();
        let mut alg = Algebra {
            field,
            vertices,
            basis,
            idempotents,
            radical,
            products,
            loewy: 0,
            generators: Vec::new(),
            monomials: Vec::new(),
            rad_coords: Vec::new(),
        };
        alg.check_associative()?;
        alg.loewy = alg.compute_loewy()?;
        alg.compute_generators();
        Ok(alg)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.dim();
        let check = |i: usize, j: usize, k: usize| -> Result<()> {
            let l = self.mul(&self.mul(&self.basis_vector(i), &self.basis_vector(j)), &self.basis_vector(k));
            let r = self.mul(&self.basis_vector(i), &self.mul(&self.basis_vector(j), &self.basis_vector(k)));
            if l != r {
                return Err(Error::InvalidAlgebra(format!(
                    "multiplication is not associative on ({}, {}, {})",
                    self.basis[i].name, self.basis[j].name, self.basis[k].name
                )));
            }
            Ok(())
        };
        if n <= 50 {
            for i in 0..n {
                for j in 0..n {
                    if self.products[i * n + j].is_empty() {
                        continue;
                    }
                    for k in 0..n {
                        check(i, j, k)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            for _ in 0..20_000 {
                check(rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n))?;
            }
        }
        Ok(())
    }

    fn compute_loewy(&self) -> Result<usize> {
        let mut power = self.radical_span();
        let mut l = 0;
        while !power.is_empty() {
            l += 1;
            if l > self.dim() {
                return Err(Error::InvalidAlgebra("radical is not nilpotent".into()));
            }
            power = self.product_span(&power.basis(), &self.radical_vectors());
        }
        Ok(l)
    }

    fn radical_vectors(&self) -> Vec<Vec<F::Elem>> {
        self.radical.iter().map(|&i| self.basis_vector(i)).collect()
    }

    fn radical_span(&self) -> EchelonBasis<F> {
        let mut e = EchelonBasis::new(self.field, self.dim());
        for v in self.radical_vectors() {
            e.insert(&v);
        }
        e
    }

    /// Span of all products `x * y`.
    pub fn product_span(&self, xs: &[Vec<F::Elem>], ys: &[Vec<F::Elem>]) -> EchelonBasis<F> {
        let mut e = EchelonBasis::new(self.field, self.dim());
        for x in xs {
            for y in ys {
                if e.is_full() {
                    return e;
                }
                e.insert(&self.mul(x, y));
            }
        }
        e
    }

    fn compute_generators(&mut self) {
        let f = self.field;
        let n = self.dim();
        let rad = self.radical_vectors();
        let mut span = self.product_span(&rad, &rad);
        let mut generators = Vec::new();
        for &r in &self.radical {
            if span.insert(&self.basis_vector(r)) {
                generators.push(r);
            }
        }
        let mut echelon = EchelonBasis::new(f, n);
        let mut monomials: Vec<Vec<usize>> = Vec::new();
        let mut values: Vec<Vec<F::Elem>> = Vec::new();
        let mut frontier = Vec::new();
        for (gi, &g) in generators.iter().enumerate() {
            let v = self.basis_vector(g);
            if echelon.insert(&v) {
                monomials.push(vec![gi]);
                values.push(v);
                frontier.push(monomials.len() - 1);
            }
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for m in frontier {
                for (gi, &g) in generators.iter().enumerate() {
                    let v = self.mul(&self.basis_vector(g), &values[m]);
                    if echelon.insert(&v) {
                        let mut w = monomials[m].clone();
                        w.push(gi);
                        monomials.push(w);
                        values.push(v);
                        next.push(monomials.len() - 1);
                    }
                }
            }
            frontier = next;
        }
        let rad_coords = (0..n)
            .map(|i| {
                if self.idempotents.contains(&i) {
                    None
                } else {
                    Some(echelon.coords(&self.basis_vector(i)).expect("generators span the radical"))
                }
            })
            .collect();
        self.generators = generators;
        self.monomials = monomials;
        self.rad_coords = rad_coords;
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    pub fn radical(&self) -> &[usize] {
        &self.radical
    }

    pub fn is_idempotent_index(&self, i: usize) -> bool {
        self.idempotents.contains(&i)
    }

    /// Radical basis elements complementing the square of the radical; for
    /// path algebras these are the arrows.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn monomials(&self) -> &[Vec<usize>] {
        &self.monomials
    }

    pub fn radical_coords(&self, i: usize) -> Option<&[F::Elem]> {
        self.rad_coords[i].as_deref()
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, F::Elem)] {
        &self.products[i * self.dim() + j]
    }

    pub fn products(&self) -> &[Vec<(usize, F::Elem)>] {
        &self.products
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        let f = self.field;
        let mut v = vec![f.zero(); self.dim()];
        v[i] = f.one();
        v
    }

    pub fn zero_element(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn unit(&self) -> Vec<F::Elem> {
        let mut v = self.zero_element();
        for &e in &self.idempotents {
            v[e] = self.field.one();
        }
        v
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field;
        let n = self.dim();
        let mut out = vec![f.zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (k, s) in &self.products[i * n + j] {
                    f.add_mul_assign(&mut out[*k], &c, s);
                }
            }
        }
        out
    }

    /// `true` when `x` has no idempotent component.
    pub fn in_radical(&self, x: &[F::Elem]) -> bool {
        self.idempotents.iter().all(|&e| self.field.is_zero(&x[e]))
    }

    /// Basis indices of `e_t A e_s`.
    pub fn component(&self, target: usize, source: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.basis[i].target == target && self.basis[i].source == source)
            .collect()
    }

    /// Basis indices of `A e_s`, the projective `P_s`.
    pub fn paths_from(&self, source: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].source == source).collect()
    }

    /// Matrix of `y -> x * y`.
    pub fn left_mult_matrix(&self, x: &[F::Elem]) -> Matrix<F> {
        let cols: Vec<Vec<F::Elem>> = (0..self.dim()).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    /// Matrix of `y -> y * x`.
    pub fn right_mult_matrix(&self, x: &[F::Elem]) -> Matrix<F> {
        let cols: Vec<Vec<F::Elem>> = (0..self.dim()).map(|j| self.mul(&self.basis_vector(j), x)).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    /// Smallest `l` with `rad^(l+1) = 0`.
    pub fn loewy_length(&self) -> usize {
        self.loewy
    }

    pub fn is_semisimple(&self) -> bool {
        self.radical.is_empty()
    }

    /// Spanning vectors of `rad^k` (k >= 1).
    pub fn radical_power(&self, k: usize) -> Vec<Vec<F::Elem>> {
        let mut power = self.radical_span();
        for _ in 1..k {
            if power.is_empty() {
                break;
            }
            power = self.product_span(&power.basis(), &self.radical_vectors());
        }
        power.basis()
    }

    /// The opposite algebra on the same basis, sources and targets swapped.
    /// The same structure constants over another field. Rational constants
    /// reduce to any prime field not dividing a denominator; constants in a
    /// prime field only carry over to the same field.
    pub fn change_field<G: Field>(&self, target: G) -> Result<Algebra<G>> {
        let f = self.field;
        let conv = |c: &F::Elem| -> Result<G::Elem> {
            if let Some(q) = f.to_rational(c) {
                return target.from_ratio(q.numer(), q.denom()).ok_or_else(|| {
                    Error::Unsupported(format!("the constant {} has no image over {}", f.format(c), target.spec()))
                });
            }
            if f.spec() == target.spec() {
                return Ok(target.from_i64(f.as_residue(c).unwrap_or(0) as i64));
            }
            Err(Error::Unsupported(format!("cannot move an algebra from {} to {}", f.spec(), target.spec())))
        };
        let mut products = Vec::with_capacity(self.products.len());
        for entry in &self.products {
            let mut out = Vec::with_capacity(entry.len());
            for (k, c) in entry {
                out.push((*k, conv(c)?));
            }
            products.push(out);
        }
        Algebra::from_parts(target, self.vertices.clone(), self.basis.clone(), self.idempotents.clone(), products)
    }

    pub fn opposite(&self) -> Self {
        let n = self.dim();
        let basis = self
            .basis
            .iter()
            .map(|b| BasisElement { name: b.name.clone(), source: b.target, target: b.source })
            .collect();
        let mut products = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                products[i * n + j] = self.products[j * n + i].clone();
            }
        }
        Algebra::from_parts(self.field, self.vertices.clone(), basis, self.idempotents.clone(), products)
            .expect("opposite of a valid algebra is valid")
    }

    /// Human-readable linear combination of basis names.
    pub fn format_element(&self, x: &[F::Elem]) -> String {
        let f = self.field;
        let mut parts = Vec::new();
        for (i, c) in x.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            if f.is_one(c) {
                parts.push(self.basis[i].name.clone());
            } else {
                parts.push(format!("{}*{}", f.format(c), self.basis[i].name));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}
