use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::decompose::{find_complex_isomorphism, ks_decompose_complex};
use super::{minimal_resolution, ProjComplex, ProjMap};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix};
use crate::modules::Module;

/// Default cap on the number of enumerated candidates.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Minimal indecomposable complexes up to shift and isomorphism, complete
/// for widths up to `width_cap` and per-vertex multiplicities up to
/// `mult_cap` in every term.
#[derive(Clone, Debug)]
pub struct Census<F: Field> {
    pub width_cap: usize,
    pub mult_cap: usize,
    /// Sorted by width, then terms, then differentials; each starts in
    /// position 0.
    pub classes: Vec<ProjComplex<F>>,
    /// Number of differentials examined.
    pub candidates: u128,
}

impl<F: Field> Census<F> {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn max_width(&self) -> usize {
        self.classes.iter().map(|c| c.width()).max().unwrap_or(0)
    }
}

pub fn census_indecomposables<F: Field>(alg: &Arc<Algebra<F>>, width_cap: usize, mult_cap: usize) -> Result<Census<F>> {
    census_with_budget(alg, width_cap, mult_cap, DEFAULT_BUDGET)
}

/// Registry of indecomposables normalized to start at 0.
struct Registry<F: Field> {
    classes: Vec<ProjComplex<F>>,
    by_shape: BTreeMap<Vec<Vec<usize>>, Vec<usize>>,
}

impl<F: Field> Registry<F> {
    fn id_of(&mut self, piece: &ProjComplex<F>) -> Result<usize> {
        let q = piece.normalized();
        let shape = q.shape().1;
        if let Some(ids) = self.by_shape.get(&shape) {
            for &i in ids {
                if find_complex_isomorphism(&q, &self.classes[i], 0)?.is_some() {
                    return Ok(i);
                }
            }
        }
        self.classes.push(q);
        let id = self.classes.len() - 1;
        self.by_shape.entry(shape).or_default().push(id);
        Ok(id)
    }
}

fn multiplicity_vectors(nv: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..nv {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=cap).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|&k| k > 0));
    out
}

fn verts_of(m: &[usize]) -> Vec<usize> {
    m.iter().enumerate().flat_map(|(v, &k)| core::iter::repeat_n(v, k)).collect()
}

/// All `m`-dimensional subspaces of `F^n`, each as `m` row vectors in
/// reduced echelon form.
fn subspaces<F: Field>(f: F, n: usize, m: usize) -> Vec<Vec<Vec<F::Elem>>> {
    let q = f.order().expect("finite field");
    let mut out = Vec::new();
    let mut piv: Vec<usize> = (0..m).collect();
    if m > n {
        return out;
    }
    loop {
        let mut free = Vec::new();
        for (i, &p) in piv.iter().enumerate() {
            for j in p + 1..n {
                if !piv.contains(&j) {
                    free.push((i, j));
                }
            }
        }
        let mut digits = vec![0u64; free.len()];
        loop {
            let mut rows = vec![vec![f.zero(); n]; m];
            for (i, &p) in piv.iter().enumerate() {
                rows[i][p] = f.one();
            }
            for (&(i, j), &x) in free.iter().zip(&digits) {
                rows[i][j] = f.element_at(x);
            }
            out.push(rows);
            let mut k = 0;
            while k < digits.len() {
                digits[k] += 1;
                if digits[k] < q {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == digits.len() {
                break;
            }
        }
        // next pivot combination
        let mut i = m;
        while i > 0 && piv[i - 1] == n - m + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        piv[i - 1] += 1;
        for j in i..m {
            piv[j] = piv[j - 1] + 1;
        }
    }
    out
}

fn gaussian_binomial(q: u64, n: usize, m: usize) -> u128 {
    if m > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..m {
        num = num.saturating_mul(q.saturating_pow((n - i) as u32).saturating_sub(1));
        den = den.saturating_mul(q.saturating_pow((i + 1) as u32).saturating_sub(1));
    }
    if num == u128::MAX {
        return u128::MAX;
    }
    num / den
}

/// Radical-valued rows `T -> P_w` killing the previous differential.
pub(crate) fn allowed_rows<F: Field>(alg: &Arc<Algebra<F>>, last: &[usize], prev: Option<&ProjMap<F>>, w: usize) -> Vec<ProjMap<F>> {
    let f = alg.field();
    let n = ProjMap::num_coords(alg, last, &[w], true);
    if n == 0 {
        return Vec::new();
    }
    let unit = |k: usize| {
        let mut x = vec![f.zero(); n];
        x[k] = f.one();
        ProjMap::from_coords(alg, last, &[w], &x, true)
    };
    let basis: Vec<Vec<F::Elem>> = match prev {
        None => (0..n).map(|k| unit(k).coords(true)).collect(),
        Some(p) => {
            let cols: Vec<Vec<F::Elem>> = (0..n)
                .map(|k| {
                    let comp = p.then(&unit(k));
                    let mut v = Vec::new();
                    for c in 0..comp.source().len() {
                        v.extend_from_slice(comp.entry(0, c));
                    }
                    v
                })
                .collect();
            let rows = p.source().len() * alg.dim();
            Matrix::from_columns(f, rows, &cols).kernel_basis()
        }
    };
    basis.iter().map(|x| ProjMap::from_coords(alg, last, &[w], x, true)).collect()
}

fn combine<F: Field>(f: F, basis: &[ProjMap<F>], coeffs: &[F::Elem]) -> ProjMap<F> {
    let mut acc = basis[0].scale(&f.zero());
    for (b, c) in basis.iter().zip(coeffs) {
        if !f.is_zero(c) {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

#[cfg(feature = "parallel")]
fn map_all<T: Send, R: Send>(items: Vec<T>, op: impl Fn(T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    items.into_par_iter().map(op).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_all<T, R>(items: Vec<T>, op: impl Fn(T) -> R) -> Vec<R> {
    items.into_iter().map(op).collect()
}

pub fn census_with_budget<F: Field>(
    alg: &Arc<Algebra<F>>,
    width_cap: usize,
    mult_cap: usize,
    budget: u128,
) -> Result<Census<F>> {
    let f = alg.field();
    let q = match f.order() {
        Some(q) => q,
        None => return Err(Error::NeedsPrimeField(f.spec())),
    };
    if width_cap == 0 || mult_cap == 0 {
        return Err(Error::Precondition("caps must be at least 1".into()));
    }
    let nv = alg.num_vertices();
    let mvecs = multiplicity_vectors(nv, mult_cap);
    let mut reg = Registry { classes: Vec::new(), by_shape: BTreeMap::new() };
    let mut candidates: u128 = 0;
    let mut level: Vec<ProjComplex<F>> = Vec::new();
    for m in &mvecs {
        level.push(ProjComplex::stalk(alg.clone(), 0, verts_of(m)));
    }
    for v in 0..nv {
        reg.id_of(&ProjComplex::stalk(alg.clone(), 0, vec![v]))?;
    }
    for k in 1..width_cap {
        let mut next = Vec::new();
        let mut seen: BTreeSet<Vec<(i64, usize)>> = BTreeSet::new();
        for x in &level {
            let last = x.term(k as i64 - 1).to_vec();
            let prev = if k >= 2 { Some(x.differential(k as i64 - 2)) } else { None };
            let rows: Vec<Vec<ProjMap<F>>> = (0..nv).map(|w| allowed_rows(alg, &last, prev.as_ref(), w)).collect();
            for m in &mvecs {
                if (0..nv).any(|w| rows[w].len() < m[w]) {
                    continue;
                }
                let count = (0..nv).fold(1u128, |acc, w| acc.saturating_mul(gaussian_binomial(q, rows[w].len(), m[w])));
                candidates = candidates.saturating_add(count);
                if candidates > budget {
                    return Err(Error::Budget { count: candidates, limit: budget });
                }
                let choices: Vec<Vec<Vec<Vec<F::Elem>>>> =
                    (0..nv).map(|w| subspaces(f, rows[w].len(), m[w])).collect();
                let mut idx = vec![0usize; nv];
                let mut diffs = Vec::new();
                loop {
                    let mut images: Vec<ProjMap<F>> = Vec::new();
                    for w in 0..nv {
                        for coeffs in &choices[w][idx[w]] {
                            images.push(combine(f, &rows[w], coeffs));
                        }
                    }
                    let new_verts = verts_of(m);
                    let mut d = ProjMap::zero(alg, &last, &new_verts);
                    for (r, row) in images.iter().enumerate() {
                        for c in 0..last.len() {
                            d.set(r, c, row.entry(0, c).to_vec());
                        }
                    }
                    diffs.push(d);
                    let mut w = 0;
                    while w < nv {
                        idx[w] += 1;
                        if idx[w] < choices[w].len() {
                            break;
                        }
                        idx[w] = 0;
                        w += 1;
                    }
                    if w == nv {
                        break;
                    }
                }
                let results = map_all(diffs, |d| -> Result<Option<Vec<ProjComplex<F>>>> {
                    let mut terms = x.terms().to_vec();
                    terms.push(d.target().to_vec());
                    let mut ds = x.differentials().to_vec();
                    ds.push(d);
                    let y = ProjComplex::trimmed(x.algebra().clone(), 0, terms, ds);
                    let dec = ks_decompose_complex(&y, 0)?;
                    if dec.pieces.iter().any(|p| p.end() != k as i64 + 1) {
                        return Ok(None);
                    }
                    let mut out = vec![y];
                    out.extend(dec.pieces);
                    Ok(Some(out))
                });
                for r in results {
                    let Some(mut v) = r? else { continue };
                    let y = v.remove(0);
                    let mut key = Vec::with_capacity(v.len());
                    for p in &v {
                        key.push((p.start(), reg.id_of(p)?));
                    }
                    key.sort_unstable();
                    if seen.insert(key) {
                        next.push(y);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        level = next;
    }
    let mut classes = reg.classes;
    classes.sort_by(|a, b| {
        let ka = (a.width(), a.terms().to_vec());
        let kb = (b.width(), b.terms().to_vec());
        ka.cmp(&kb).then_with(|| {
            let ea: Vec<F::Elem> = a.differentials().iter().flat_map(|d| d.coords(false)).collect();
            let eb: Vec<F::Elem> = b.differentials().iter().flat_map(|d| d.coords(false)).collect();
            ea.cmp(&eb)
        })
    });
    Ok(Census { width_cap, mult_cap, classes, candidates })
}

#[derive(Clone, Debug)]
pub enum StrongGlobalDimension<F: Field> {
    /// An indecomposable minimal complex of this width exists; the search
    /// could not rule out wider ones.
    LowerBound { width: usize, witness: ProjComplex<F> },
    /// Exhaustive up to `width_cap` (at the multiplicity cap): the largest
    /// width is `width` (never reported below 2).
    ExactUpTo { width: usize, width_cap: usize },
}

impl<F: Field> StrongGlobalDimension<F> {
    pub fn width(&self) -> usize {
        match self {
            StrongGlobalDimension::LowerBound { width, .. } | StrongGlobalDimension::ExactUpTo { width, .. } => *width,
        }
    }
}

/// Search for wide indecomposable minimal complexes: truncated minimal
/// resolutions of the simples, then (over finite fields) the census.
pub fn strong_gldim_search<F: Field>(
    alg: &Arc<Algebra<F>>,
    width_cap: usize,
    mult_cap: usize,
) -> Result<StrongGlobalDimension<F>> {
    if width_cap < 2 {
        return Err(Error::Precondition("width cap must be at least 2".into()));
    }
    let mut best: Option<ProjComplex<F>> = None;
    for v in 0..alg.num_vertices() {
        let res = minimal_resolution(&Module::simple(alg.clone(), v), width_cap - 1)?;
        if best.as_ref().is_none_or(|b| res.width() > b.width()) {
            best = Some(res);
        }
    }
    let best = best.ok_or_else(|| Error::InvalidAlgebra("algebra has no vertices".into()))?;
    if best.width() >= width_cap || alg.field().order().is_none() {
        return Ok(StrongGlobalDimension::LowerBound { width: best.width().max(2), witness: best });
    }
    match census_indecomposables(alg, width_cap, mult_cap) {
        Ok(c) => {
            let widest = c.classes.iter().max_by_key(|x| x.width()).cloned().unwrap_or(best.clone());
            let w = widest.width().max(best.width());
            if w >= width_cap {
                let witness = if widest.width() >= best.width() { widest } else { best };
                Ok(StrongGlobalDimension::LowerBound { width: w, witness })
            } else {
                Ok(StrongGlobalDimension::ExactUpTo { width: w.max(2), width_cap })
            }
        }
        Err(Error::Budget { .. }) => Ok(StrongGlobalDimension::LowerBound { width: best.width().max(2), witness: best }),
        Err(e) => Err(e),
    }
}
