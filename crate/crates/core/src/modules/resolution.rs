use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactlin::{EchelonBasis, Field, Matrix};

use super::hom::find_isomorphism;
use super::Module;

#[derive(Clone, Debug)]
pub struct ProjectiveCover<F: Field> {
    pub cover: Module<F>,
    /// Vertex of each indecomposable summand of the cover, in order.
    pub vertices: Vec<usize>,
    /// Images of the summands' generators `e_v`: a basis of a complement
    /// of `rad M` in `M`.
    pub tops: Vec<Vec<F::Elem>>,
    /// The surjection `cover -> m`.
    pub surjection: Matrix<F>,
}

pub fn projective_cover<F: Field>(m: &Module<F>) -> Result<ProjectiveCover<F>> {
    if m.is_zero() {
        return Err(Error::ZeroObject);
    }
    let f = m.field();
    let alg = m.algebra();
    let n = m.dim();
    let mut span = EchelonBasis::new(f, n);
    for v in m.radical_vectors() {
        span.insert(&v);
    }
    let mut vertices = Vec::new();
    let mut tops = Vec::new();
    for v in 0..alg.num_vertices() {
        for k in 0..n {
            if m.labels()[k] != v {
                continue;
            }
            let mut x = vec![f.zero(); n];
            x[k] = f.one();
            if span.insert(&x) {
                vertices.push(v);
                tops.push(x);
            }
        }
    }
    let cover = Module::projective_sum(alg, &vertices);
    let mut cols = Vec::with_capacity(cover.dim());
    for (v, t) in vertices.iter().zip(&tops) {
        for b in alg.paths_from(*v) {
            cols.push(m.action(b).mul_vec(t));
        }
    }
    let surjection = Matrix::from_columns(f, n, &cols);
    Ok(ProjectiveCover { cover, vertices, tops, surjection })
}

/// First syzygy with its inclusion into the projective cover.
pub fn syzygy_with_inclusion<F: Field>(m: &Module<F>) -> Result<(Module<F>, ProjectiveCover<F>, Matrix<F>)> {
    let pc = projective_cover(m)?;
    let (k, incl) = pc.cover.kernel(&pc.surjection);
    Ok((k, pc, incl))
}

/// `Omega^n(m)`; the zero module once a projective is reached.
pub fn syzygy<F: Field>(m: &Module<F>, n: usize) -> Result<Module<F>> {
    let mut cur = m.clone();
    for _ in 0..n {
        if cur.is_zero() {
            break;
        }
        cur = syzygy_with_inclusion(&cur)?.0;
    }
    Ok(cur)
}

/// Injective envelope `m -> I` computed through the duality with modules
/// over the opposite algebra.
pub fn injective_hull<F: Field>(m: &Module<F>) -> Result<(Module<F>, Matrix<F>)> {
    let alg = m.algebra();
    let op = Arc::new(alg.opposite());
    let dm = m.dual_over(&op)?;
    let pc = projective_cover(&dm)?;
    let hull = pc.cover.dual_over(alg)?;
    Ok((hull, pc.surjection.transpose()))
}

/// `Omega^{-n}(m)`.
pub fn cosyzygy<F: Field>(m: &Module<F>, n: usize) -> Result<Module<F>> {
    let alg = m.algebra();
    let op = Arc::new(alg.opposite());
    let dm = m.dual_over(&op)?;
    let s = syzygy(&dm, n)?;
    s.dual_over(alg)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjectiveDimension {
    Finite(usize),
    /// `Omega^repeat(M)` is isomorphic to `Omega^first(M)` and nonzero.
    Periodic { first: usize, repeat: usize },
    ExceedsCap,
}

pub fn projective_dimension<F: Field>(m: &Module<F>, cap: usize) -> Result<ProjectiveDimension> {
    if m.is_zero() {
        return Ok(ProjectiveDimension::Finite(0));
    }
    let mut history = vec![m.clone()];
    for k in 1..=cap + 1 {
        let next = syzygy_with_inclusion(history.last().unwrap())?.0;
        if next.is_zero() {
            return Ok(ProjectiveDimension::Finite(k - 1));
        }
        for (j, old) in history.iter().enumerate() {
            if find_isomorphism(&next, old, None, 0)?.is_some() {
                return Ok(ProjectiveDimension::Periodic { first: j, repeat: k });
            }
        }
        history.push(next);
    }
    Ok(ProjectiveDimension::ExceedsCap)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlobalDimension {
    Finite(usize),
    ExceedsCap { simple: usize },
    /// The syzygies of the simple recur: `Omega^repeat(S) = Omega^first(S)`.
    InfiniteCertified { simple: usize, first: usize, repeat: usize },
}

impl GlobalDimension {
    pub fn finite(&self) -> Option<usize> {
        match self {
            GlobalDimension::Finite(d) => Some(*d),
            _ => None,
        }
    }
}

/// Global dimension as the maximal projective dimension of a simple.
pub fn gldim<F: Field>(algebra: &Arc<Algebra<F>>, cap: usize) -> Result<GlobalDimension> {
    let mut best = 0;
    let mut exceeded = None;
    for v in 0..algebra.num_vertices() {
        match projective_dimension(&Module::simple(algebra.clone(), v), cap)? {
            ProjectiveDimension::Finite(d) => best = best.max(d),
            ProjectiveDimension::Periodic { first, repeat } => {
                return Ok(GlobalDimension::InfiniteCertified { simple: v, first, repeat })
            }
            ProjectiveDimension::ExceedsCap => {
                exceeded.get_or_insert(v);
            }
        }
    }
    Ok(match exceeded {
        Some(simple) => GlobalDimension::ExceedsCap { simple },
        None => GlobalDimension::Finite(best),
    })
}
