//! Positively graded algebras, graded modules, graded syzygies and the
//! behaviour of their lowest degree parts.

mod census;

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{Algebra, BasisElement};
use crate::error::{Error, Result};
use crate::exactlin::{EchelonBasis, Field, Matrix};
use crate::modules::{
    find_isomorphism, gldim, hom_space_graded, projective_dimension, syzygy, EndRing, GlobalDimension, Module,
    ProjectiveDimension, RingStructure,
};
use crate::trivext::{check_selfinjective, SelfInjectivity};

pub use census::{window_census, window_census_with_budget, WindowCensus};

/// An algebra with a nonnegative grading in which every basis element is
/// homogeneous.
#[derive(Clone, Debug)]
pub struct GradedAlgebra<F: Field> {
    algebra: Arc<Algebra<F>>,
    degrees: Vec<u32>,
    degree0: Arc<Algebra<F>>,
    /// Basis index in the full algebra of each basis element of `degree0`.
    degree0_map: Vec<usize>,
    self_injective: bool,
}

impl<F: Field> GradedAlgebra<F> {
    pub fn new(algebra: Arc<Algebra<F>>, degrees: Vec<u32>) -> Result<Self> {
        let n = algebra.dim();
        if degrees.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: degrees.len() });
        }
        for &e in algebra.idempotents() {
            if degrees[e] != 0 {
                return Err(Error::InvalidAlgebra("idempotents must have degree 0".into()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for (k, _) in algebra.product(i, j) {
                    if degrees[*k] != degrees[i] + degrees[j] {
                        return Err(Error::InvalidAlgebra(format!(
                            "product {} * {} is not homogeneous",
                            algebra.basis()[i].name,
                            algebra.basis()[j].name
                        )));
                    }
                }
            }
        }
        let map: Vec<usize> = (0..n).filter(|&i| degrees[i] == 0).collect();
        let pos = |k: usize| map.iter().position(|&m| m == k).unwrap();
        let basis: Vec<BasisElement> = map.iter().map(|&i| algebra.basis()[i].clone()).collect();
        let d0 = map.len();
        let mut products = vec![Vec::new(); d0 * d0];
        for (a, &i) in map.iter().enumerate() {
            for (b, &j) in map.iter().enumerate() {
                products[a * d0 + b] = algebra.product(i, j).iter().map(|(k, c)| (pos(*k), c.clone())).collect();
            }
        }
        let idem = algebra.idempotents().iter().map(|&e| pos(e)).collect();
        let degree0 = Arc::new(Algebra::from_parts(algebra.field(), algebra.vertices().to_vec(), basis, idem, products)?);
        let self_injective = check_selfinjective(&algebra)? == SelfInjectivity::SelfInjective;
        Ok(GradedAlgebra { algebra, degrees, degree0, degree0_map: map, self_injective })
    }

    /// Everything in degree 0.
    pub fn trivial(algebra: Arc<Algebra<F>>) -> Result<Self> {
        let n = algebra.dim();
        Self::new(algebra, vec![0; n])
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    pub fn field(&self) -> F {
        self.algebra.field()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn degree0(&self) -> &Arc<Algebra<F>> {
        &self.degree0
    }

    pub fn degree0_map(&self) -> &[usize] {
        &self.degree0_map
    }

    pub fn is_self_injective(&self) -> bool {
        self.self_injective
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn generator_degrees(&self) -> Vec<u32> {
        self.algebra.generators().iter().map(|&g| self.degrees[g]).collect()
    }

    pub fn opposite(&self) -> Result<Self> {
        Self::new(Arc::new(self.algebra.opposite()), self.degrees.clone())
    }
}

/// A graded module: `degrees[k]` is the degree of basis vector `k`.
#[derive(Clone, Debug)]
pub struct GradedModule<F: Field> {
    graded: Arc<GradedAlgebra<F>>,
    module: Module<F>,
    degrees: Vec<i64>,
}

/// `b`, `t`, and the extreme components as modules over the degree-0 part.
#[derive(Clone, Debug)]
pub struct Bounds<F: Field> {
    pub b: i64,
    pub t: i64,
    pub bot: Module<F>,
    pub top: Module<F>,
}

impl<F: Field> GradedModule<F> {
    pub fn new(graded: Arc<GradedAlgebra<F>>, module: Module<F>, degrees: Vec<i64>) -> Result<Self> {
        if !Arc::ptr_eq(module.algebra(), graded.algebra()) && **module.algebra() != **graded.algebra() {
            return Err(Error::AlgebraMismatch);
        }
        if degrees.len() != module.dim() {
            return Err(Error::DimensionMismatch { expected: module.dim(), found: degrees.len() });
        }
        let f = graded.field();
        for (gi, &g) in graded.algebra().generators().iter().enumerate() {
            let dg = graded.degrees()[g] as i64;
            let a = &module.generator_actions()[gi];
            for r in 0..module.dim() {
                for c in 0..module.dim() {
                    if !f.is_zero(a.get(r, c)) && degrees[r] != degrees[c] + dg {
                        return Err(Error::InvalidModule(format!(
                            "action of {} is not homogeneous of degree {dg}",
                            graded.algebra().basis()[g].name
                        )));
                    }
                }
            }
        }
        Ok(GradedModule { graded, module, degrees })
    }

    pub fn simple(graded: &Arc<GradedAlgebra<F>>, v: usize, degree: i64) -> Self {
        let m = Module::simple(graded.algebra().clone(), v);
        GradedModule { graded: graded.clone(), module: m, degrees: vec![degree] }
    }

    /// `P_v(-d)`: the projective at `v` generated in degree `d`.
    pub fn projective(graded: &Arc<GradedAlgebra<F>>, v: usize, d: i64) -> Self {
        let a = graded.algebra();
        let m = Module::projective(a.clone(), v);
        let degrees = a.paths_from(v).iter().map(|&b| graded.degrees()[b] as i64 + d).collect();
        GradedModule { graded: graded.clone(), module: m, degrees }
    }

    pub fn projective_sum(graded: &Arc<GradedAlgebra<F>>, parts: &[(usize, i64)]) -> Self {
        let pieces: Vec<_> = parts.iter().map(|&(v, d)| Self::projective(graded, v, d)).collect();
        Self::direct_sum_of(graded, &pieces)
    }

    pub fn direct_sum_of(graded: &Arc<GradedAlgebra<F>>, parts: &[Self]) -> Self {
        let mods: Vec<_> = parts.iter().map(|p| p.module.clone()).collect();
        let module = Module::direct_sum_of(graded.algebra(), &mods);
        let degrees = parts.iter().flat_map(|p| p.degrees.iter().copied()).collect();
        GradedModule { graded: graded.clone(), module, degrees }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::direct_sum_of(&self.graded, &[self.clone(), other.clone()])
    }

    pub fn graded_algebra(&self) -> &Arc<GradedAlgebra<F>> {
        &self.graded
    }

    pub fn module(&self) -> &Module<F> {
        &self.module
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.module.is_zero()
    }

    /// The underlying ungraded module.
    pub fn forget(&self) -> Module<F> {
        self.module.clone()
    }

    /// `M(i)` with `M(i)_j = M_{i+j}`.
    pub fn degree_shift(&self, i: i64) -> Self {
        GradedModule {
            graded: self.graded.clone(),
            module: self.module.clone(),
            degrees: self.degrees.iter().map(|d| d - i).collect(),
        }
    }

    /// Dimensions of the components, as `(degree, dimension)` pairs in
    /// increasing degree.
    pub fn component_dims(&self) -> Vec<(i64, usize)> {
        let mut out: Vec<(i64, usize)> = Vec::new();
        let mut ds = self.degrees.clone();
        ds.sort_unstable();
        for d in ds {
            match out.last_mut() {
                Some((x, n)) if *x == d => *n += 1,
                _ => out.push((d, 1)),
            }
        }
        out
    }

    /// The component of degree `d` as a module over the degree-0 subalgebra.
    pub fn component(&self, d: i64) -> Module<F> {
        let g = &self.graded;
        let idx: Vec<usize> = (0..self.dim()).filter(|&k| self.degrees[k] == d).collect();
        let a0 = g.degree0();
        let gens = a0
            .generators()
            .iter()
            .map(|&b0| {
                let full = self.module.action(g.degree0_map()[b0]);
                full.submatrix(&idx, &idx)
            })
            .collect();
        let labels = idx.iter().map(|&k| self.module.labels()[k]).collect();
        Module::from_generators(a0.clone(), labels, gens).expect("degree-0 part acts on each component")
    }

    pub fn bounds(&self) -> Result<Bounds<F>> {
        if self.is_zero() {
            return Err(Error::ZeroObject);
        }
        let b = *self.degrees.iter().min().unwrap();
        let t = *self.degrees.iter().max().unwrap();
        Ok(Bounds { b, t, bot: self.component(b), top: self.component(t) })
    }

    /// Graded submodule on a basis of homogeneous, vertex-homogeneous
    /// vectors.
    fn restrict_homogeneous(&self, basis: &[Vec<F::Elem>]) -> Result<(Self, Matrix<F>)> {
        let f = self.graded.field();
        let (m, incl) = self.module.restrict_exact(basis)?;
        let degrees = basis
            .iter()
            .map(|x| self.degrees[x.iter().position(|c| !f.is_zero(c)).unwrap()])
            .collect();
        Ok((GradedModule { graded: self.graded.clone(), module: m, degrees }, incl))
    }

    /// Quotient by the submodule generated by degree-homogeneous vectors.
    pub fn quotient(&self, vectors: &[Vec<F::Elem>]) -> Result<(Self, Matrix<F>)> {
        let f = self.graded.field();
        for x in vectors {
            let mut ds = (0..self.dim()).filter(|&k| !f.is_zero(&x[k])).map(|k| self.degrees[k]);
            if let Some(d) = ds.next() {
                if ds.any(|e| e != d) {
                    return Err(Error::InvalidModule("generator of a graded submodule is not homogeneous".into()));
                }
            }
        }
        let (_, incl) = self.module.generated_submodule(vectors);
        let (q, proj) = self.module.quotient(&incl.columns())?;
        let degrees = (0..q.dim())
            .map(|r| self.degrees[(0..self.dim()).find(|&c| !f.is_zero(proj.get(r, c))).unwrap()])
            .collect();
        Ok((GradedModule::new(self.graded.clone(), q, degrees)?, proj))
    }

    /// Index sets of the (vertex, degree) blocks.
    fn blocks(&self) -> Vec<Vec<usize>> {
        let mut keys: Vec<(i64, usize)> =
            (0..self.dim()).map(|k| (self.degrees[k], self.module.labels()[k])).collect();
        keys.sort_unstable();
        keys.dedup();
        keys.iter()
            .map(|key| (0..self.dim()).filter(|&k| (self.degrees[k], self.module.labels()[k]) == *key).collect())
            .collect()
    }

    /// Embed block-local vectors into the full space.
    fn embed(&self, idx: &[usize], v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.graded.field();
        let mut x = vec![f.zero(); self.dim()];
        for (&k, c) in idx.iter().zip(v) {
            x[k] = c.clone();
        }
        x
    }

    pub fn is_isomorphic(&self, other: &Self) -> Result<bool> {
        Ok(find_isomorphism(&self.module, &other.module, Some((&self.degrees, &other.degrees)), 0)?.is_some())
    }
}

/// Graded projective cover with summands `P_v(-d)` matching the
/// generators of `m`, taken in increasing degree.
#[derive(Clone, Debug)]
pub struct GradedCover<F: Field> {
    pub cover: GradedModule<F>,
    pub summands: Vec<(usize, i64)>,
    pub surjection: Matrix<F>,
}

pub fn graded_cover<F: Field>(m: &GradedModule<F>) -> Result<GradedCover<F>> {
    if m.is_zero() {
        return Err(Error::ZeroObject);
    }
    let f = m.graded.field();
    let alg = m.graded.algebra();
    let n = m.dim();
    let mut span = EchelonBasis::new(f, n);
    for v in m.module.radical_vectors() {
        span.insert(&v);
    }
    let mut summands = Vec::new();
    let mut tops = Vec::new();
    for idx in m.blocks() {
        for &k in &idx {
            let mut x = vec![f.zero(); n];
            x[k] = f.one();
            if span.insert(&x) {
                summands.push((m.module.labels()[k], m.degrees[k]));
                tops.push(x);
            }
        }
    }
    let cover = GradedModule::projective_sum(&m.graded, &summands);
    let mut cols = Vec::with_capacity(cover.dim());
    for (&(v, _), t) in summands.iter().zip(&tops) {
        for b in alg.paths_from(v) {
            cols.push(m.module.action(b).mul_vec(t));
        }
    }
    let surjection = Matrix::from_columns(f, n, &cols);
    Ok(GradedCover { cover, summands, surjection })
}

/// Kernel of the graded projective cover, nothing split off.
pub fn raw_graded_syzygy<F: Field>(m: &GradedModule<F>) -> Result<GradedModule<F>> {
    if m.is_zero() {
        return Ok(m.clone());
    }
    let gc = graded_cover(m)?;
    let p = &gc.cover;
    let mut basis = Vec::new();
    for idx in p.blocks() {
        let (d, v) = (p.degrees[idx[0]], p.module.labels()[idx[0]]);
        let rows: Vec<usize> = (0..m.dim()).filter(|&k| m.degrees[k] == d && m.module.labels()[k] == v).collect();
        let block = gc.surjection.submatrix(&rows, &idx);
        for kv in block.kernel_basis() {
            basis.push(p.embed(&idx, &kv));
        }
    }
    Ok(p.restrict_homogeneous(&basis)?.0)
}

/// Graded indecomposable summands.
pub fn graded_pieces<F: Field>(m: &GradedModule<F>, seed: u64) -> Result<Vec<(GradedModule<F>, usize)>> {
    let mut out = Vec::new();
    graded_split(m, seed, &mut out)?;
    Ok(out)
}

fn graded_split<F: Field>(m: &GradedModule<F>, seed: u64, out: &mut Vec<(GradedModule<F>, usize)>) -> Result<()> {
    if m.is_zero() {
        return Ok(());
    }
    let f = m.graded.field();
    let ring = graded_end_ring(m)?;
    match ring.analyze(seed)? {
        RingStructure::Local { residue_degree } => out.push((m.clone(), residue_degree)),
        RingStructure::Split { idempotent } => {
            let eps = ring.element(&idempotent);
            let rest = Matrix::identity(f, m.dim()).sub(&eps);
            for e in [eps, rest] {
                let mut basis = Vec::new();
                for idx in m.blocks() {
                    let cols: Vec<Vec<F::Elem>> = idx.iter().map(|&c| e.column(c)).collect();
                    let sub = Matrix::from_columns(f, m.dim(), &cols);
                    basis.extend(sub.column_space());
                }
                let (piece, _) = m.restrict_homogeneous(&basis)?;
                graded_split(&piece, seed, out)?;
            }
        }
    }
    Ok(())
}

pub fn graded_end_ring<F: Field>(m: &GradedModule<F>) -> Result<EndRing<F>> {
    let basis = hom_space_graded(&m.module, &m.module, Some((&m.degrees, &m.degrees)))?;
    EndRing::from_matrices(m.graded.field(), basis)
}

pub fn is_graded_projective<F: Field>(m: &GradedModule<F>) -> Result<bool> {
    Ok(m.is_zero() || graded_cover(m)?.cover.dim() == m.dim())
}

/// `Omega^n(m)` in the graded category. Over algebras that are not
/// self-injective, projective summands of each kernel are split off; over
/// self-injective algebras kernels of minimal covers have none.
pub fn graded_syzygy<F: Field>(m: &GradedModule<F>, n: usize) -> Result<GradedModule<F>> {
    let mut cur = m.clone();
    for _ in 0..n {
        if cur.is_zero() {
            break;
        }
        cur = raw_graded_syzygy(&cur)?;
        if !cur.graded.is_self_injective() && !cur.is_zero() {
            let pieces = graded_pieces(&cur, 0)?;
            let mut kept = Vec::new();
            for (p, _) in pieces {
                if !is_graded_projective(&p)? {
                    kept.push(p);
                }
            }
            cur = GradedModule::direct_sum_of(&cur.graded, &kept);
        }
    }
    Ok(cur)
}

/// Graded dual over the opposite graded algebra: degrees are negated.
pub fn graded_dual<F: Field>(m: &GradedModule<F>, target: &Arc<GradedAlgebra<F>>) -> Result<GradedModule<F>> {
    let module = m.module.dual_over(target.algebra())?;
    GradedModule::new(target.clone(), module, m.degrees.iter().map(|d| -d).collect())
}

/// `Omega^{-n}(m)`; needs a self-injective algebra.
pub fn graded_cosyzygy<F: Field>(m: &GradedModule<F>, n: usize) -> Result<GradedModule<F>> {
    if !m.graded.is_self_injective() {
        return Err(Error::Precondition("cosyzygies need a self-injective graded algebra".into()));
    }
    let op = Arc::new(m.graded.opposite()?);
    let d = graded_dual(m, &op)?;
    let s = graded_syzygy(&d, n)?;
    graded_dual(&s, &m.graded)
}

/// Which alternative holds for the first syzygy of a graded module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LowestDegree {
    /// `b(Omega M) = b(M)` and `bot(Omega M)` is isomorphic to the syzygy
    /// of `bot(M)` over the degree-0 part. Projective dimensions of the
    /// two bottoms over the degree-0 part are recorded when finite.
    BranchEqual { b: i64, pd_bot: Option<usize>, pd_bot_syzygy: Option<usize> },
    /// The lowest degree went up.
    BranchIncreased { old_b: i64, new_b: i64 },
    /// Neither alternative holds; this would be a bug.
    Violation { reason: alloc::string::String },
}

fn pd_over<F: Field>(m: &Module<F>) -> Result<Option<usize>> {
    let cap = m.dim() + m.algebra().dim() + 2;
    Ok(match projective_dimension(m, cap)? {
        ProjectiveDimension::Finite(d) => Some(d),
        _ => None,
    })
}

/// Compare the lowest degree part of `Omega(m)` with that of `m`.
pub fn lowest_degree_report<F: Field>(m: &GradedModule<F>) -> Result<LowestDegree> {
    if m.is_zero() {
        return Err(Error::ZeroObject);
    }
    let om = raw_graded_syzygy(m)?;
    if om.is_zero() {
        return Err(Error::Precondition("module is projective".into()));
    }
    let bm = m.bounds()?;
    let bo = om.bounds()?;
    if bo.b > bm.b {
        return Ok(LowestDegree::BranchIncreased { old_b: bm.b, new_b: bo.b });
    }
    if bo.b < bm.b {
        return Ok(LowestDegree::Violation { reason: format!("lowest degree dropped from {} to {}", bm.b, bo.b) });
    }
    let expected = syzygy(&bm.bot, 1)?;
    if find_isomorphism(&bo.bot, &expected, None, 0)?.is_none() {
        return Ok(LowestDegree::Violation { reason: "bottom is not the syzygy of the bottom".into() });
    }
    Ok(LowestDegree::BranchEqual { b: bm.b, pd_bot: pd_over(&bm.bot)?, pd_bot_syzygy: pd_over(&bo.bot)? })
}

/// The dual statement for cosyzygies, in terms of the highest degree:
/// reported through the duality, so `BranchIncreased` means `t` went down
/// (with the values negated back to degrees of `m`).
pub fn highest_degree_report<F: Field>(m: &GradedModule<F>) -> Result<LowestDegree> {
    let op = Arc::new(m.graded.opposite()?);
    let d = graded_dual(m, &op)?;
    Ok(match lowest_degree_report(&d)? {
        LowestDegree::BranchIncreased { old_b, new_b } => LowestDegree::BranchIncreased { old_b: -old_b, new_b: -new_b },
        LowestDegree::BranchEqual { b, pd_bot, pd_bot_syzygy } => LowestDegree::BranchEqual { b: -b, pd_bot, pd_bot_syzygy },
        v => v,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitStep {
    pub j: usize,
    pub b: i64,
    pub t: i64,
    pub dims: Vec<(i64, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub steps: Vec<OrbitStep>,
    /// Smallest `j` with `b(Omega^j M) > 0`.
    pub first_escape: Option<usize>,
    /// Global dimension `N` of the degree-0 part.
    pub degree0_gldim: usize,
    /// `(1 - min(b, 0)) * (N + 1)`.
    pub conservative_bound: usize,
    /// `max(1, -b N)`.
    pub literal_bound: usize,
}

impl OrbitReport {
    pub fn conservative_bound_holds(&self) -> Option<bool> {
        self.first_escape.map(|j| j <= self.conservative_bound)
    }

    pub fn literal_bound_holds(&self) -> Option<bool> {
        self.first_escape.map(|j| j <= self.literal_bound)
    }
}

/// Iterate graded syzygies of `m` over a self-injective graded algebra
/// whose degree-0 part has finite global dimension, recording the lowest
/// and highest degrees until the lowest degree becomes positive.
pub fn syzygy_orbit<F: Field>(m: &GradedModule<F>, max_steps: usize) -> Result<OrbitReport> {
    let g = &m.graded;
    if !g.is_self_injective() {
        return Err(Error::Precondition("syzygy orbits need a self-injective graded algebra".into()));
    }
    if m.is_zero() || is_graded_projective(m)? {
        return Err(Error::Precondition("module must be nonzero and not projective".into()));
    }
    let cap = g.degree0().dim() + 1;
    let n = match gldim(g.degree0(), cap)? {
        GlobalDimension::Finite(d) => d,
        _ => {
            return Err(Error::Precondition("the degree-0 part must have finite global dimension".into()));
        }
    };
    let b0 = m.bounds()?.b;
    let conservative_bound = ((1 - b0.min(0)) as usize) * (n + 1);
    let literal_bound = 1.max(-b0 * n as i64) as usize;
    let mut steps = Vec::new();
    let mut first_escape = None;
    let mut cur = m.clone();
    for j in 0..=max_steps {
        if cur.is_zero() {
            break;
        }
        let bd = cur.bounds()?;
        steps.push(OrbitStep { j, b: bd.b, t: bd.t, dims: cur.component_dims() });
        if bd.b > 0 {
            first_escape = Some(j);
            break;
        }
        cur = graded_syzygy(&cur, 1)?;
    }
    Ok(OrbitReport { steps, first_escape, degree0_gldim: n, conservative_bound, literal_bound })
}
