//! Finite-dimensional left modules given by the action of the algebra's
//! generators on a vertex-graded vector space.

mod decompose;
mod endring;
mod hom;
mod resolution;

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactlin::{EchelonBasis, Field, Matrix};

pub use decompose::{is_indecomposable, krull_schmidt, same_iso_classes, DecompositionCertificate, Indecomposability, Summand};
pub use endring::{lift_idempotent, EndRing, RingStructure};
pub use hom::{find_isomorphism, hom_space, hom_space_graded, is_isomorphic};
pub use resolution::{
    cosyzygy, gldim, injective_hull, projective_cover, projective_dimension, syzygy, syzygy_with_inclusion, GlobalDimension,
    ProjectiveCover, ProjectiveDimension,
};

pub(crate) fn same_algebra<F: Field>(a: &Arc<Algebra<F>>, b: &Arc<Algebra<F>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A left module. Basis vector `k` lies in `e_{labels[k]} M`; `gens[g]` is
/// the action of the `g`-th generator of the algebra.
#[derive(Clone, Debug)]
pub struct Module<F: Field> {
    algebra: Arc<Algebra<F>>,
    labels: Vec<usize>,
    gens: Vec<Matrix<F>>,
    actions: Vec<Matrix<F>>,
}

impl<F: Field> PartialEq for Module<F> {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.labels == other.labels && self.gens == other.gens
    }
}

impl<F: Field> Module<F> {
    /// Build a module from generator actions, checking that they respect the
    /// vertex decomposition and the multiplication of the algebra.
    pub fn from_generators(algebra: Arc<Algebra<F>>, labels: Vec<usize>, gens: Vec<Matrix<F>>) -> Result<Self> {
        let m = Self::from_generators_unchecked(algebra, labels, gens)?;
        m.check_relations()?;
        Ok(m)
    }

    pub(crate) fn from_generators_unchecked(
        algebra: Arc<Algebra<F>>,
        labels: Vec<usize>,
        gens: Vec<Matrix<F>>,
    ) -> Result<Self> {
        let f = algebra.field();
        let n = labels.len();
        if gens.len() != algebra.generators().len() {
            return Err(Error::DimensionMismatch { expected: algebra.generators().len(), found: gens.len() });
        }
        if let Some(&v) = labels.iter().find(|&&v| v >= algebra.num_vertices()) {
            return Err(Error::InvalidModule(format!("unknown vertex {v}")));
        }
        for (k, g) in gens.iter().enumerate() {
            if g.rows() != n || g.cols() != n {
                return Err(Error::DimensionMismatch { expected: n, found: g.rows().max(g.cols()) });
            }
            let b = &algebra.basis()[algebra.generators()[k]];
            for r in 0..n {
                for c in 0..n {
                    if !f.is_zero(g.get(r, c)) && (labels[c] != b.source || labels[r] != b.target) {
                        return Err(Error::InvalidModule(format!(
                            "action of {} does not map vertex {} to vertex {}",
                            b.name, b.source, b.target
                        )));
                    }
                }
            }
        }
        let mono: Vec<Matrix<F>> = algebra
            .monomials()
            .iter()
            .map(|w| {
                let mut acc = gens[w[0]].clone();
                for &g in &w[1..] {
                    acc = gens[g].mul(&acc);
                }
                acc
            })
            .collect();
        let mut actions = Vec::with_capacity(algebra.dim());
        for i in 0..algebra.dim() {
            let mut a = Matrix::zeros(f, n, n);
            match algebra.radical_coords(i) {
                None => {
                    let v = algebra.basis()[i].source;
                    for k in 0..n {
                        if labels[k] == v {
                            a.set(k, k, f.one());
                        }
                    }
                }
                Some(coords) => {
                    for (c, m) in coords.iter().zip(&mono) {
                        if !f.is_zero(c) {
                            a.add_scaled(m, c);
                        }
                    }
                }
            }
            actions.push(a);
        }
        Ok(Module { algebra, labels, gens, actions })
    }

    /// `rho(g) rho(b) = rho(g b)` for every generator `g` and basis element
    /// `b`; together with the vertex compatibility this makes the action a
    /// representation.
    fn check_relations(&self) -> Result<()> {
        let a = &self.algebra;
        let f = a.field();
        let n = self.dim();
        for (gi, &g) in a.generators().iter().enumerate() {
            for b in 0..a.dim() {
                let lhs = self.gens[gi].mul(&self.actions[b]);
                let mut rhs = Matrix::zeros(f, n, n);
                for (k, c) in a.product(g, b) {
                    rhs.add_scaled(&self.actions[*k], c);
                }
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "action violates the product {} * {}",
                        a.basis()[g].name,
                        a.basis()[b].name
                    )));
                }
            }
        }
        Ok(())
    }

    /// Build a module from the action of every basis element (for example a
    /// regular representation); the vertex labels are read off the
    /// idempotents, which must act diagonally on the given basis.
    pub fn from_actions(algebra: Arc<Algebra<F>>, actions: &[Matrix<F>]) -> Result<Self> {
        let f = algebra.field();
        let n = actions.first().map_or(0, |m| m.rows());
        let mut labels = vec![usize::MAX; n];
        for (v, &e) in algebra.idempotents().iter().enumerate() {
            for k in 0..n {
                if f.is_one(actions[e].get(k, k)) {
                    labels[k] = v;
                }
            }
        }
        if labels.contains(&usize::MAX) {
            return Err(Error::InvalidModule("idempotents do not act diagonally".into()));
        }
        let gens = algebra.generators().iter().map(|&g| actions[g].clone()).collect();
        let m = Self::from_generators(algebra, labels, gens)?;
        if m.actions != actions {
            return Err(Error::InvalidModule("actions are inconsistent".into()));
        }
        Ok(m)
    }

    pub fn zero(algebra: Arc<Algebra<F>>) -> Self {
        let f = algebra.field();
        let gens = vec![Matrix::zeros(f, 0, 0); algebra.generators().len()];
        Self::from_generators_unchecked(algebra, Vec::new(), gens).expect("zero module")
    }

    pub fn simple(algebra: Arc<Algebra<F>>, v: usize) -> Self {
        let f = algebra.field();
        let gens = vec![Matrix::zeros(f, 1, 1); algebra.generators().len()];
        Self::from_generators_unchecked(algebra, vec![v], gens).expect("simple module")
    }

    /// `P_v = A e_v` on the basis elements with source `v`.
    pub fn projective(algebra: Arc<Algebra<F>>, v: usize) -> Self {
        let idx = algebra.paths_from(v);
        Self::spanned_by_basis(algebra, &idx, false)
    }

    /// The regular module `A`.
    pub fn regular(algebra: Arc<Algebra<F>>) -> Self {
        let idx: Vec<usize> = (0..algebra.dim()).collect();
        Self::spanned_by_basis(algebra, &idx, false)
    }

    /// `I_v = D(e_v A)`.
    pub fn injective(algebra: Arc<Algebra<F>>, v: usize) -> Self {
        let idx: Vec<usize> = (0..algebra.dim()).filter(|&i| algebra.basis()[i].target == v).collect();
        Self::spanned_by_basis(algebra, &idx, true)
    }

    /// Submodule of `A` (or of `DA` when `dual`) spanned by basis elements.
    fn spanned_by_basis(algebra: Arc<Algebra<F>>, idx: &[usize], dual: bool) -> Self {
        let f = algebra.field();
        let n = idx.len();
        let pos = |k: usize| idx.iter().position(|&i| i == k);
        let labels = idx
            .iter()
            .map(|&i| if dual { algebra.basis()[i].source } else { algebra.basis()[i].target })
            .collect();
        let gens = algebra
            .generators()
            .iter()
            .map(|&g| {
                let mut m = Matrix::zeros(f, n, n);
                for (c, &j) in idx.iter().enumerate() {
                    if !dual {
                        for (k, s) in algebra.product(g, j) {
                            let r = pos(*k).expect("left ideal");
                            m.set(r, c, s.clone());
                        }
                    } else {
                        // (g . j*)(b_r) = j*(b_r g)
                        for (r, &bi) in idx.iter().enumerate() {
                            for (k, s) in algebra.product(bi, g) {
                                if *k == j {
                                    m.set(r, c, s.clone());
                                }
                            }
                        }
                    }
                }
                m
            })
            .collect();
        Self::from_generators_unchecked(algebra, labels, gens).expect("ideal of the algebra")
    }

    /// Direct sum of projectives `P_{v_1} + P_{v_2} + ...`.
    pub fn projective_sum(algebra: &Arc<Algebra<F>>, vertices: &[usize]) -> Self {
        let parts: Vec<_> = vertices.iter().map(|&v| Self::projective(algebra.clone(), v)).collect();
        Self::direct_sum_of(algebra, &parts)
    }

    pub fn direct_sum_of(algebra: &Arc<Algebra<F>>, parts: &[Self]) -> Self {
        let f = algebra.field();
        let mut labels = Vec::new();
        let mut gens = vec![Matrix::zeros(f, 0, 0); algebra.generators().len()];
        for p in parts {
            labels.extend_from_slice(&p.labels);
            for (g, pg) in gens.iter_mut().zip(&p.gens) {
                *g = g.direct_sum(pg);
            }
        }
        Self::from_generators_unchecked(algebra.clone(), labels, gens).expect("direct sum")
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::direct_sum_of(&self.algebra, &[self.clone(), other.clone()])
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    pub fn field(&self) -> F {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn is_zero(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn dim_vector(&self) -> Vec<usize> {
        let mut d = vec![0; self.algebra.num_vertices()];
        for &v in &self.labels {
            d[v] += 1;
        }
        d
    }

    pub fn generator_actions(&self) -> &[Matrix<F>] {
        &self.gens
    }

    /// Action of basis element `i` of the algebra.
    pub fn action(&self, i: usize) -> &Matrix<F> {
        &self.actions[i]
    }

    pub fn act(&self, x: &[F::Elem]) -> Matrix<F> {
        let f = self.field();
        let mut m = Matrix::zeros(f, self.dim(), self.dim());
        for (c, a) in x.iter().zip(&self.actions) {
            if !f.is_zero(c) {
                m.add_scaled(a, c);
            }
        }
        m
    }

    /// Module over the opposite algebra given by transposed actions.
    pub fn dual_over(&self, target: &Arc<Algebra<F>>) -> Result<Self> {
        if target.dim() != self.algebra.dim() {
            return Err(Error::AlgebraMismatch);
        }
        let gens = self.gens.iter().map(|g| g.transpose()).collect();
        Self::from_generators(target.clone(), self.labels.clone(), gens)
    }

    /// Vertex-homogeneous basis of the span of the vertex components of
    /// `vectors`, ordered by vertex.
    pub(crate) fn homogeneous_span(&self, vectors: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
        let f = self.field();
        let n = self.dim();
        let mut out = Vec::new();
        for v in 0..self.algebra.num_vertices() {
            let mut e = EchelonBasis::new(f, n);
            for x in vectors {
                let y: Vec<_> = (0..n).map(|k| if self.labels[k] == v { x[k].clone() } else { f.zero() }).collect();
                e.insert(&y);
            }
            out.extend(e.basis());
        }
        out
    }

    /// Smallest submodule containing `vectors`.
    pub fn generated_submodule(&self, vectors: &[Vec<F::Elem>]) -> (Self, Matrix<F>) {
        let f = self.field();
        let n = self.dim();
        let mut e = EchelonBasis::new(f, n);
        let mut queue = self.homogeneous_span(vectors);
        while let Some(x) = queue.pop() {
            if !e.insert(&x) {
                continue;
            }
            for g in &self.gens {
                queue.push(g.mul_vec(&x));
            }
        }
        self.restrict(&e.basis()).expect("generated submodule is invariant")
    }

    /// The submodule on an invariant subspace, with its inclusion matrix.
    pub fn restrict(&self, vectors: &[Vec<F::Elem>]) -> Result<(Self, Matrix<F>)> {
        let f = self.field();
        let basis = self.homogeneous_span(vectors);
        let incl = Matrix::from_columns(f, self.dim(), &basis);
        let labels: Vec<usize> = basis
            .iter()
            .map(|x| self.labels[x.iter().position(|c| !f.is_zero(c)).unwrap()])
            .collect();
        let mut gens = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let img = g.mul(&incl);
            let coords = incl
                .solve_matrix(&img)
                .ok_or_else(|| Error::InvalidModule("subspace is not a submodule".into()))?;
            gens.push(coords);
        }
        let m = Self::from_generators_unchecked(self.algebra.clone(), labels, gens)?;
        Ok((m, incl))
    }

    /// The submodule on an invariant subspace with the given basis, used
    /// as is. Each vector must be supported on a single vertex.
    pub fn restrict_exact(&self, basis: &[Vec<F::Elem>]) -> Result<(Self, Matrix<F>)> {
        let f = self.field();
        let incl = Matrix::from_columns(f, self.dim(), basis);
        let mut labels = Vec::with_capacity(basis.len());
        for x in basis {
            let mut support = x.iter().enumerate().filter(|(_, c)| !f.is_zero(c)).map(|(k, _)| self.labels[k]);
            let v = support.next().ok_or_else(|| Error::InvalidModule("zero basis vector".into()))?;
            if support.any(|w| w != v) {
                return Err(Error::InvalidModule("basis vector is not vertex-homogeneous".into()));
            }
            labels.push(v);
        }
        let mut gens = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let coords = incl
                .solve_matrix(&g.mul(&incl))
                .ok_or_else(|| Error::InvalidModule("subspace is not a submodule".into()))?;
            gens.push(coords);
        }
        let m = Self::from_generators_unchecked(self.algebra.clone(), labels, gens)?;
        Ok((m, incl))
    }

    /// Quotient by an invariant subspace, with the projection matrix.
    pub fn quotient(&self, vectors: &[Vec<F::Elem>]) -> Result<(Self, Matrix<F>)> {
        let f = self.field();
        let n = self.dim();
        let sub = self.homogeneous_span(vectors);
        let mut e = EchelonBasis::new(f, n);
        for x in &sub {
            e.insert(x);
        }
        let mut complement = Vec::new();
        for k in 0..n {
            let mut x = vec![f.zero(); n];
            x[k] = f.one();
            if e.insert(&x) {
                complement.push(k);
            }
        }
        let mut cols = sub.clone();
        for &k in &complement {
            let mut x = vec![f.zero(); n];
            x[k] = f.one();
            cols.push(x);
        }
        let b = Matrix::from_columns(f, n, &cols);
        let binv = b.inverse().expect("basis");
        let rows: Vec<usize> = (sub.len()..n).collect();
        let all: Vec<usize> = (0..n).collect();
        let proj = binv.submatrix(&rows, &all);
        let c = Matrix::from_columns(f, n, &cols[sub.len()..]);
        let labels = complement.iter().map(|&k| self.labels[k]).collect();
        let gens = self.gens.iter().map(|g| proj.mul(&g.mul(&c))).collect();
        let m = Self::from_generators_unchecked(self.algebra.clone(), labels, gens)?;
        // invariance check: the subspace is mapped into itself
        for g in &self.gens {
            for x in &sub {
                if !proj.mul_vec(&g.mul_vec(x)).iter().all(|c| f.is_zero(c)) {
                    return Err(Error::InvalidModule("subspace is not a submodule".into()));
                }
            }
        }
        Ok((m, proj))
    }

    /// Kernel of a module map `self -> N` given by its matrix.
    pub fn kernel(&self, map: &Matrix<F>) -> (Self, Matrix<F>) {
        let basis = map.kernel_basis();
        self.restrict(&basis).expect("kernel of a module map is a submodule")
    }

    /// Image of a module map `M -> self`.
    pub fn image(&self, map: &Matrix<F>) -> (Self, Matrix<F>) {
        let cols = map.column_space();
        self.restrict(&cols).expect("image of a module map is a submodule")
    }

    /// `rad(A) M`.
    pub fn radical_vectors(&self) -> Vec<Vec<F::Elem>> {
        let mut v = Vec::new();
        for g in &self.gens {
            v.extend(g.column_space());
        }
        v
    }

    /// Relabel basis vectors by a permutation: new vector `k` is old
    /// vector `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let f = self.field();
        let n = self.dim();
        let labels = perm.iter().map(|&k| self.labels[k]).collect();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut m = Matrix::zeros(f, n, n);
                for r in 0..n {
                    for c in 0..n {
                        m.set(r, c, g.get(perm[r], perm[c]).clone());
                    }
                }
                m
            })
            .collect();
        Self::from_generators_unchecked(self.algebra.clone(), labels, gens).expect("permutation")
    }

    /// Transport the structure along an invertible matrix `t`: the new
    /// module has actions `t^-1 rho t`. `t` must respect vertex labels.
    pub fn conjugate(&self, t: &Matrix<F>) -> Result<Self> {
        let tinv = t.inverse().ok_or_else(|| Error::Precondition("matrix is not invertible".into()))?;
        let gens = self.gens.iter().map(|g| tinv.mul(&g.mul(t))).collect();
        Self::from_generators_unchecked(self.algebra.clone(), self.labels.clone(), gens)
    }
}
