//! Bounded complexes of finitely generated projective modules.
//!
//! A term is a list of vertices `[v_1, ..., v_m]` standing for
//! `P_{v_1} + ... + P_{v_m}`. A map between such terms is a block matrix:
//! the entry in row `r`, column `c` is an element of `e_{src[c]} A e_{tgt[r]}`
//! and acts by right multiplication, sending the generator `e_{src[c]}` to
//! that element of `A e_{tgt[r]}`. Composition is
//! `(g . f)[w][u] = sum_v f[v][u] * g[w][v]`.

pub(crate) mod census;
pub(crate) mod decompose;

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix};
use crate::modules::{syzygy_with_inclusion, Module};

pub use census::{census_indecomposables, census_with_budget, DEFAULT_BUDGET, strong_gldim_search, Census, StrongGlobalDimension};
pub use decompose::{
    chain_maps, find_complex_isomorphism, htp_ideal, is_indecomposable_complex, ks_decompose_complex,
    minimal_decomposition, ComplexDecomposition, HtpIdeal, MinimalDecomposition,
};

/// Offsets of the summands of `P_{v_1} + ... + P_{v_m}` as a vector space,
/// each summand using the basis `paths_from(v)`.
pub(crate) fn offsets<F: Field>(alg: &Algebra<F>, verts: &[usize]) -> (Vec<usize>, usize) {
    let mut off = Vec::with_capacity(verts.len());
    let mut total = 0;
    for &v in verts {
        off.push(total);
        total += alg.paths_from(v).len();
    }
    (off, total)
}

/// Basis indices allowed in an entry from `P_s` to `P_t`.
pub(crate) fn entry_basis<F: Field>(alg: &Algebra<F>, s: usize, t: usize, radical_only: bool) -> Vec<usize> {
    alg.component(s, t).into_iter().filter(|&b| !(radical_only && alg.is_idempotent_index(b))).collect()
}

#[derive(Clone, Debug)]
pub struct ProjMap<F: Field> {
    algebra: Arc<Algebra<F>>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    entries: Vec<Vec<F::Elem>>,
}

impl<F: Field> PartialEq for ProjMap<F> {
    fn eq(&self, other: &Self) -> bool {
        self.src == other.src && self.tgt == other.tgt && self.entries == other.entries
    }
}

impl<F: Field> Eq for ProjMap<F> {}

impl<F: Field> ProjMap<F> {
    pub fn zero(algebra: &Arc<Algebra<F>>, src: &[usize], tgt: &[usize]) -> Self {
        let z = algebra.zero_element();
        ProjMap {
            algebra: algebra.clone(),
            src: src.to_vec(),
            tgt: tgt.to_vec(),
            entries: vec![z; src.len() * tgt.len()],
        }
    }

    pub fn identity(algebra: &Arc<Algebra<F>>, verts: &[usize]) -> Self {
        let mut m = Self::zero(algebra, verts, verts);
        for (i, &v) in verts.iter().enumerate() {
            m.set(i, i, algebra.basis_vector(algebra.idempotent(v)));
        }
        m
    }

    /// Build from entries given row by row; every entry must lie in the
    /// right component.
    pub fn from_entries(
        algebra: &Arc<Algebra<F>>,
        src: &[usize],
        tgt: &[usize],
        entries: Vec<Vec<F::Elem>>,
    ) -> Result<Self> {
        if entries.len() != src.len() * tgt.len() {
            return Err(Error::DimensionMismatch { expected: src.len() * tgt.len(), found: entries.len() });
        }
        let f = algebra.field();
        for (k, e) in entries.iter().enumerate() {
            if e.len() != algebra.dim() {
                return Err(Error::DimensionMismatch { expected: algebra.dim(), found: e.len() });
            }
            let (r, c) = (k / src.len(), k % src.len());
            for (b, x) in e.iter().enumerate() {
                let be = &algebra.basis()[b];
                if !f.is_zero(x) && (be.target != src[c] || be.source != tgt[r]) {
                    return Err(Error::InvalidComplex(format!(
                        "entry ({r}, {c}) has a component {} outside e_{} A e_{}",
                        be.name,
                        algebra.vertices()[src[c]],
                        algebra.vertices()[tgt[r]]
                    )));
                }
            }
        }
        Ok(ProjMap { algebra: algebra.clone(), src: src.to_vec(), tgt: tgt.to_vec(), entries })
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    pub fn source(&self) -> &[usize] {
        &self.src
    }

    pub fn target(&self) -> &[usize] {
        &self.tgt
    }

    pub fn entry(&self, r: usize, c: usize) -> &[F::Elem] {
        &self.entries[r * self.src.len() + c]
    }

    pub(crate) fn entry_mut(&mut self, r: usize, c: usize) -> &mut Vec<F::Elem> {
        let n = self.src.len();
        &mut self.entries[r * n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Vec<F::Elem>) {
        *self.entry_mut(r, c) = x;
    }

    pub fn is_zero(&self) -> bool {
        let f = self.algebra.field();
        self.entries.iter().all(|e| e.iter().all(|x| f.is_zero(x)))
    }

    /// Every entry lies in the radical.
    pub fn is_radical(&self) -> bool {
        self.entries.iter().all(|e| self.algebra.in_radical(e))
    }

    /// `g . self`.
    pub fn then(&self, g: &ProjMap<F>) -> ProjMap<F> {
        assert_eq!(self.tgt, g.src, "composable maps");
        let alg = &self.algebra;
        let f = alg.field();
        let mut out = Self::zero(alg, &self.src, &g.tgt);
        for w in 0..g.tgt.len() {
            for v in 0..self.tgt.len() {
                let gv = g.entry(w, v);
                if gv.iter().all(|x| f.is_zero(x)) {
                    continue;
                }
                for u in 0..self.src.len() {
                    let fv = self.entry(v, u);
                    if fv.iter().all(|x| f.is_zero(x)) {
                        continue;
                    }
                    let p = alg.mul(fv, gv);
                    let e = out.entry_mut(w, u);
                    for (a, b) in e.iter_mut().zip(&p) {
                        f.add_assign(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = self.algebra.field();
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            for (a, b) in e.iter_mut().zip(o) {
                f.add_assign(a, b);
            }
        }
        out
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let f = self.algebra.field();
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            for a in e.iter_mut() {
                *a = f.mul(a, s);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&self.algebra.field().from_i64(-1)))
    }

    /// The map as a matrix over the ground field.
    pub fn to_matrix(&self) -> Matrix<F> {
        let alg = &self.algebra;
        let f = alg.field();
        let (so, sn) = offsets(alg, &self.src);
        let (to, tn) = offsets(alg, &self.tgt);
        let tpos: Vec<Vec<usize>> = {
            let mut idx = vec![usize::MAX; alg.dim()];
            let mut out = Vec::new();
            for &t in &self.tgt {
                for (k, b) in alg.paths_from(t).into_iter().enumerate() {
                    idx[b] = k;
                }
                out.push(idx.clone());
            }
            out
        };
        let mut m = Matrix::zeros(f, tn, sn);
        for c in 0..self.src.len() {
            for (k, b) in alg.paths_from(self.src[c]).into_iter().enumerate() {
                let bv = alg.basis_vector(b);
                for r in 0..self.tgt.len() {
                    let e = self.entry(r, c);
                    if e.iter().all(|x| f.is_zero(x)) {
                        continue;
                    }
                    let p = alg.mul(&bv, e);
                    for (i, x) in p.iter().enumerate() {
                        if !f.is_zero(x) {
                            m.set(to[r] + tpos[r][i], so[c] + k, x.clone());
                        }
                    }
                }
            }
        }
        m
    }

    /// Inverse of [`ProjMap::to_matrix`] for matrices of module maps.
    pub fn from_matrix(algebra: &Arc<Algebra<F>>, src: &[usize], tgt: &[usize], m: &Matrix<F>) -> Self {
        let (so, _) = offsets(algebra, src);
        let cols: Vec<Vec<F::Elem>> = src
            .iter()
            .zip(&so)
            .map(|(&s, &o)| {
                let k = algebra.paths_from(s).iter().position(|&b| b == algebra.idempotent(s)).unwrap();
                m.column(o + k)
            })
            .collect();
        Self::from_generator_images(algebra, src, tgt, &cols)
    }

    /// The map sending the generator of the `c`-th source summand to
    /// `images[c]`, a vector in the target.
    pub fn from_generator_images(
        algebra: &Arc<Algebra<F>>,
        src: &[usize],
        tgt: &[usize],
        images: &[Vec<F::Elem>],
    ) -> Self {
        let (to, _) = offsets(algebra, tgt);
        let mut out = Self::zero(algebra, src, tgt);
        for (c, x) in images.iter().enumerate() {
            for (r, &t) in tgt.iter().enumerate() {
                let e = out.entry_mut(r, c);
                for (k, b) in algebra.paths_from(t).into_iter().enumerate() {
                    e[b] = x[to[r] + k].clone();
                }
            }
        }
        out
    }

    /// Restrict to the given rows and columns.
    pub fn submap(&self, rows: &[usize], cols: &[usize]) -> Self {
        let src: Vec<usize> = cols.iter().map(|&c| self.src[c]).collect();
        let tgt: Vec<usize> = rows.iter().map(|&r| self.tgt[r]).collect();
        let mut out = Self::zero(&self.algebra, &src, &tgt);
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.entry(r, c).to_vec());
            }
        }
        out
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let src: Vec<usize> = self.src.iter().chain(&other.src).copied().collect();
        let tgt: Vec<usize> = self.tgt.iter().chain(&other.tgt).copied().collect();
        let mut out = Self::zero(&self.algebra, &src, &tgt);
        for r in 0..self.tgt.len() {
            for c in 0..self.src.len() {
                out.set(r, c, self.entry(r, c).to_vec());
            }
        }
        let (r0, c0) = (self.tgt.len(), self.src.len());
        for r in 0..other.tgt.len() {
            for c in 0..other.src.len() {
                out.set(r0 + r, c0 + c, other.entry(r, c).to_vec());
            }
        }
        out
    }

    /// Coordinates of the entries on the allowed basis elements, in the
    /// order (row, column, basis index).
    pub(crate) fn coords(&self, radical_only: bool) -> Vec<F::Elem> {
        let alg = &self.algebra;
        let mut out = Vec::new();
        for r in 0..self.tgt.len() {
            for c in 0..self.src.len() {
                for b in entry_basis(alg, self.src[c], self.tgt[r], radical_only) {
                    out.push(self.entry(r, c)[b].clone());
                }
            }
        }
        out
    }

    pub(crate) fn from_coords(
        algebra: &Arc<Algebra<F>>,
        src: &[usize],
        tgt: &[usize],
        x: &[F::Elem],
        radical_only: bool,
    ) -> Self {
        let mut out = Self::zero(algebra, src, tgt);
        let mut k = 0;
        for r in 0..tgt.len() {
            for c in 0..src.len() {
                for b in entry_basis(algebra, src[c], tgt[r], radical_only) {
                    out.entry_mut(r, c)[b] = x[k].clone();
                    k += 1;
                }
            }
        }
        out
    }

    pub(crate) fn num_coords(algebra: &Algebra<F>, src: &[usize], tgt: &[usize], radical_only: bool) -> usize {
        tgt.iter()
            .map(|&t| src.iter().map(|&s| entry_basis(algebra, s, t, radical_only).len()).sum::<usize>())
            .sum()
    }
}

/// A bounded complex `... -> P^n -> P^{n+1} -> ...` with `terms[i]` in
/// position `start + i`.
#[derive(Clone, Debug)]
pub struct ProjComplex<F: Field> {
    algebra: Arc<Algebra<F>>,
    start: i64,
    terms: Vec<Vec<usize>>,
    diffs: Vec<ProjMap<F>>,
}

impl<F: Field> PartialEq for ProjComplex<F> {
    fn eq(&self, other: &Self) -> bool {
        self.start == other.start && self.terms == other.terms && self.diffs == other.diffs
    }
}

impl<F: Field> Eq for ProjComplex<F> {}

impl<F: Field> ProjComplex<F> {
    /// Checks shapes and `d . d = 0`; zero terms at the ends are trimmed.
    pub fn new(algebra: Arc<Algebra<F>>, start: i64, terms: Vec<Vec<usize>>, diffs: Vec<ProjMap<F>>) -> Result<Self> {
        if diffs.len() + 1 != terms.len().max(1) || (terms.is_empty() && !diffs.is_empty()) {
            return Err(Error::InvalidComplex(format!(
                "{} terms need {} differentials, found {}",
                terms.len(),
                terms.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.src != terms[i] || d.tgt != terms[i + 1] {
                return Err(Error::InvalidComplex(format!("differential at position {} has the wrong shape", start + i as i64)));
            }
        }
        for i in 1..diffs.len() {
            if !diffs[i - 1].then(&diffs[i]).is_zero() {
                return Err(Error::InvalidComplex(format!("d . d is not zero at position {}", start + i as i64 - 1)));
            }
        }
        Ok(Self::trimmed(algebra, start, terms, diffs))
    }

    pub(crate) fn trimmed(algebra: Arc<Algebra<F>>, mut start: i64, mut terms: Vec<Vec<usize>>, mut diffs: Vec<ProjMap<F>>) -> Self {
        while terms.last().is_some_and(|t| t.is_empty()) {
            terms.pop();
            diffs.pop();
        }
        while terms.first().is_some_and(|t| t.is_empty()) {
            terms.remove(0);
            if !diffs.is_empty() {
                diffs.remove(0);
            }
            start += 1;
        }
        if terms.is_empty() {
            start = 0;
        }
        ProjComplex { algebra, start, terms, diffs }
    }

    pub fn zero(algebra: Arc<Algebra<F>>) -> Self {
        ProjComplex { algebra, start: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    /// `verts` concentrated in position `pos`.
    pub fn stalk(algebra: Arc<Algebra<F>>, pos: i64, verts: Vec<usize>) -> Self {
        Self::trimmed(algebra, pos, vec![verts], Vec::new())
    }

    /// `P_v --Id--> P_v` in positions `pos`, `pos + 1`.
    pub fn identity_cone(algebra: Arc<Algebra<F>>, pos: i64, v: usize) -> Self {
        let d = ProjMap::identity(&algebra, &[v]);
        ProjComplex { algebra, start: pos, terms: vec![vec![v], vec![v]], diffs: vec![d] }
    }

    /// Two-term complex `src --d--> tgt` with `src` in position `pos`.
    pub fn two_term(algebra: Arc<Algebra<F>>, pos: i64, d: ProjMap<F>) -> Self {
        let terms = vec![d.src.clone(), d.tgt.clone()];
        Self::trimmed(algebra, pos, terms, vec![d])
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    pub fn field(&self) -> F {
        self.algebra.field()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// First position of the stored range.
    pub fn start(&self) -> i64 {
        self.start
    }

    /// One past the last position.
    pub fn end(&self) -> i64 {
        self.start + self.terms.len() as i64
    }

    pub fn terms(&self) -> &[Vec<usize>] {
        &self.terms
    }

    pub fn differentials(&self) -> &[ProjMap<F>] {
        &self.diffs
    }

    pub fn term(&self, n: i64) -> &[usize] {
        if n < self.start || n >= self.end() {
            return &[];
        }
        &self.terms[(n - self.start) as usize]
    }

    /// `d^n: P^n -> P^{n+1}`.
    pub fn differential(&self, n: i64) -> ProjMap<F> {
        if n >= self.start && n + 1 < self.end() {
            return self.diffs[(n - self.start) as usize].clone();
        }
        ProjMap::zero(&self.algebra, self.term(n), self.term(n + 1))
    }

    /// Number of positions with a nonzero term.
    pub fn width(&self) -> usize {
        self.terms.iter().filter(|t| !t.is_empty()).count()
    }

    /// Multiplicity of each vertex in the term at `n`.
    pub fn multiplicities(&self, n: i64) -> Vec<usize> {
        let mut m = vec![0; self.algebra.num_vertices()];
        for &v in self.term(n) {
            m[v] += 1;
        }
        m
    }

    pub fn total_dim(&self) -> usize {
        self.terms.iter().map(|t| offsets(&self.algebra, t).1).sum()
    }

    /// `X[k]`: the term in position `n` moves to `n - k`.
    pub fn shift(&self, k: i64) -> Self {
        let mut out = self.clone();
        out.start -= k;
        out
    }

    /// Translate so that the support starts at 0.
    pub fn normalized(&self) -> Self {
        self.shift(self.start)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.start.min(other.start);
        let hi = self.end().max(other.end());
        let terms: Vec<Vec<usize>> =
            (lo..hi).map(|n| self.term(n).iter().chain(other.term(n)).copied().collect()).collect();
        let diffs = (lo..hi - 1).map(|n| self.differential(n).direct_sum(&other.differential(n))).collect();
        Self::trimmed(self.algebra.clone(), lo, terms, diffs)
    }

    /// All differentials are radical-valued.
    pub fn is_minimal(&self) -> bool {
        self.diffs.iter().all(|d| d.is_radical())
    }

    /// The brutal truncation keeping positions `>= -m`.
    pub fn brutal_truncate(&self, m: i64) -> Self {
        let lo = self.start.max(-m);
        if lo >= self.end() {
            return Self::zero(self.algebra.clone());
        }
        let skip = (lo - self.start) as usize;
        Self::trimmed(self.algebra.clone(), lo, self.terms[skip..].to_vec(), self.diffs[skip.min(self.diffs.len())..].to_vec())
    }

    /// Restrict each term to a subset of its summands. The result is a
    /// complex when the kept summands form a subcomplex that is also a
    /// quotient, as for direct summands in split position.
    pub(crate) fn restrict_summands(&self, keep: &[Vec<usize>]) -> Self {
        let terms: Vec<Vec<usize>> =
            keep.iter().enumerate().map(|(i, k)| k.iter().map(|&j| self.terms[i][j]).collect()).collect();
        let diffs = (0..self.diffs.len()).map(|i| self.diffs[i].submap(&keep[i + 1], &keep[i])).collect();
        Self::trimmed(self.algebra.clone(), self.start, terms, diffs)
    }

    /// A key invariant under isomorphism: positions and term multisets.
    pub fn shape(&self) -> (i64, Vec<Vec<usize>>) {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut t = t.clone();
                t.sort_unstable();
                t
            })
            .collect();
        (self.start, terms)
    }
}

/// `... -> P^{-1} -> P^0` for the minimal projective resolution of `m`,
/// with at most `length + 1` terms.
pub fn minimal_resolution<F: Field>(m: &Module<F>, length: usize) -> Result<ProjComplex<F>> {
    if m.is_zero() {
        return Err(Error::ZeroObject);
    }
    let alg = m.algebra().clone();
    let mut terms: Vec<Vec<usize>> = Vec::new();
    let mut diffs: Vec<ProjMap<F>> = Vec::new();
    let mut cur = m.clone();
    let mut prev: Option<(Vec<usize>, Matrix<F>)> = None;
    for _ in 0..=length {
        if cur.is_zero() {
            break;
        }
        let (om, cover, incl) = syzygy_with_inclusion(&cur)?;
        if let Some((pv, pincl)) = &prev {
            let images: Vec<Vec<F::Elem>> = cover.tops.iter().map(|t| pincl.mul_vec(t)).collect();
            diffs.push(ProjMap::from_generator_images(&alg, &cover.vertices, pv, &images));
        }
        terms.push(cover.vertices.clone());
        prev = Some((cover.vertices, incl));
        cur = om;
    }
    terms.reverse();
    diffs.reverse();
    let start = 1 - terms.len() as i64;
    ProjComplex::new(alg, start, terms, diffs)
}

/// A chain map `X -> Y`: `maps[i]` is the component at position `start + i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap<F: Field> {
    pub start: i64,
    pub maps: Vec<ProjMap<F>>,
}

impl<F: Field> ChainMap<F> {
    pub fn at(&self, n: i64) -> Option<&ProjMap<F>> {
        if n < self.start {
            return None;
        }
        self.maps.get((n - self.start) as usize)
    }

    pub fn identity(x: &ProjComplex<F>) -> Self {
        ChainMap { start: x.start, maps: x.terms.iter().map(|t| ProjMap::identity(&x.algebra, t)).collect() }
    }

    /// `g . self`, both defined on the same position range.
    pub fn then(&self, g: &Self) -> Self {
        assert_eq!(self.start, g.start);
        ChainMap { start: self.start, maps: self.maps.iter().zip(&g.maps).map(|(a, b)| a.then(b)).collect() }
    }

    pub fn is_chain_map(&self, x: &ProjComplex<F>, y: &ProjComplex<F>) -> bool {
        let lo = self.start;
        let hi = self.start + self.maps.len() as i64;
        if x.start < lo || x.end() > hi || y.start < lo || y.end() > hi {
            return false;
        }
        (lo..hi - 1).all(|n| {
            let a = self.maps[(n - lo) as usize].then(&y.differential(n));
            let b = x.differential(n).then(&self.maps[(n + 1 - lo) as usize]);
            a == b
        })
    }

    /// Matrix over the ground field, block diagonal over positions.
    pub fn to_matrix(&self, field: F) -> Matrix<F> {
        self.maps.iter().fold(Matrix::zeros(field, 0, 0), |acc, m| acc.direct_sum(&m.to_matrix()))
    }

    /// The same map over the position range `[lo, hi)`, padded with zero
    /// components.
    pub fn padded(&self, lo: i64, hi: i64, x: &ProjComplex<F>, y: &ProjComplex<F>) -> Self {
        let maps = (lo..hi)
            .map(|n| match self.at(n) {
                Some(m) => m.clone(),
                None => ProjMap::zero(&x.algebra, x.term(n), y.term(n)),
            })
            .collect();
        ChainMap { start: lo, maps }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.start, other.start);
        ChainMap { start: self.start, maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        ChainMap { start: self.start, maps: self.maps.iter().map(|a| a.scale(s)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.start, other.start);
        ChainMap { start: self.start, maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.sub(b)).collect() }
    }

    pub(crate) fn coords(&self) -> Vec<F::Elem> {
        self.maps.iter().flat_map(|m| m.coords(false)).collect()
    }
}
