use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix};

use super::endring::{EndRing, RingStructure};
use super::hom::{find_isomorphism, hom_space};
use super::Module;

#[derive(Clone, Debug)]
pub struct Summand<F: Field> {
    pub module: Module<F>,
    pub multiplicity: usize,
    /// Dimension of `End/rad End` over the ground field; 1 means the
    /// summand is absolutely indecomposable.
    pub residue_degree: usize,
}

/// `m` is isomorphic to the direct sum of `pieces` (in order) via
/// `inclusion` and `projection`, which are mutually inverse.
#[derive(Clone, Debug)]
pub struct DecompositionCertificate<F: Field> {
    pub summands: Vec<Summand<F>>,
    pub pieces: Vec<Module<F>>,
    /// Iso class (index into `summands`) of each piece.
    pub piece_class: Vec<usize>,
    pub inclusion: Matrix<F>,
    pub projection: Matrix<F>,
}

impl<F: Field> DecompositionCertificate<F> {
    /// Witnesses compose to identities and intertwine the actions.
    pub fn verify(&self, m: &Module<F>) -> bool {
        let n = m.dim();
        if !self.projection.mul(&self.inclusion).is_identity() || !self.inclusion.mul(&self.projection).is_identity()
        {
            return n == 0 && self.pieces.is_empty();
        }
        let sum = Module::direct_sum_of(m.algebra(), &self.pieces);
        m.generator_actions()
            .iter()
            .zip(sum.generator_actions())
            .all(|(a, b)| a.mul(&self.inclusion) == self.inclusion.mul(b))
    }

    pub fn total_dim(&self) -> usize {
        self.summands.iter().map(|s| s.module.dim() * s.multiplicity).sum()
    }
}

#[derive(Clone, Debug)]
pub enum Indecomposability<F: Field> {
    Indecomposable { residue_degree: usize },
    Decomposable { idempotent: Matrix<F> },
}

impl<F: Field> Indecomposability<F> {
    pub fn is_indecomposable(&self) -> bool {
        matches!(self, Indecomposability::Indecomposable { .. })
    }
}

fn end_ring<F: Field>(m: &Module<F>) -> Result<EndRing<F>> {
    EndRing::from_matrices(m.field(), hom_space(m, m)?)
}

pub fn is_indecomposable<F: Field>(m: &Module<F>, seed: u64) -> Result<Indecomposability<F>> {
    if m.is_zero() {
        return Err(Error::ZeroObject);
    }
    let ring = end_ring(m)?;
    Ok(match ring.analyze(seed)? {
        RingStructure::Local { residue_degree } => Indecomposability::Indecomposable { residue_degree },
        RingStructure::Split { idempotent } => Indecomposability::Decomposable { idempotent: ring.element(&idempotent) },
    })
}

struct Piece<F: Field> {
    module: Module<F>,
    inclusion: Matrix<F>,
    projection: Matrix<F>,
    residue_degree: usize,
}

/// Image of an idempotent endomorphism as a summand, with inclusion and
/// projection.
pub(crate) fn split_off<F: Field>(m: &Module<F>, eps: &Matrix<F>) -> (Module<F>, Matrix<F>, Matrix<F>) {
    let (sub, incl) = m.image(eps);
    let proj = incl.solve_matrix(eps).expect("image contains the columns");
    (sub, incl, proj)
}

fn split<F: Field>(m: &Module<F>, seed: u64, out: &mut Vec<Piece<F>>) -> Result<()> {
    if m.is_zero() {
        return Ok(());
    }
    let f = m.field();
    let ring = end_ring(m)?;
    match ring.analyze(seed)? {
        RingStructure::Local { residue_degree } => {
            let id = Matrix::identity(f, m.dim());
            out.push(Piece { module: m.clone(), inclusion: id.clone(), projection: id, residue_degree });
        }
        RingStructure::Split { idempotent } => {
            let eps = ring.element(&idempotent);
            let rest = Matrix::identity(f, m.dim()).sub(&eps);
            for e in [eps, rest] {
                let (sub, incl, proj) = split_off(m, &e);
                let mut inner = Vec::new();
                split(&sub, seed, &mut inner)?;
                for p in inner {
                    out.push(Piece {
                        module: p.module,
                        inclusion: incl.mul(&p.inclusion),
                        projection: p.projection.mul(&proj),
                        residue_degree: p.residue_degree,
                    });
                }
            }
        }
    }
    Ok(())
}

/// Decompose `m` into indecomposable summands with local endomorphism
/// rings, grouped into isomorphism classes.
pub fn krull_schmidt<F: Field>(m: &Module<F>, seed: u64) -> Result<DecompositionCertificate<F>> {
    let f = m.field();
    let mut pieces = Vec::new();
    split(m, seed, &mut pieces)?;
    let mut summands: Vec<Summand<F>> = Vec::new();
    let mut piece_class = Vec::with_capacity(pieces.len());
    for p in &pieces {
        let mut found = None;
        for (i, s) in summands.iter().enumerate() {
            if find_isomorphism(&p.module, &s.module, None, seed)?.is_some() {
                found = Some(i);
                break;
            }
        }
        match found {
            Some(i) => {
                summands[i].multiplicity += 1;
                piece_class.push(i);
            }
            None => {
                piece_class.push(summands.len());
                summands.push(Summand { module: p.module.clone(), multiplicity: 1, residue_degree: p.residue_degree });
            }
        }
    }
    let n = m.dim();
    let mut inclusion = Matrix::zeros(f, n, 0);
    let mut projection = Matrix::zeros(f, 0, n);
    for p in &pieces {
        inclusion = inclusion.hstack(&p.inclusion);
        projection = projection.vstack(&p.projection);
    }
    Ok(DecompositionCertificate {
        summands,
        pieces: pieces.into_iter().map(|p| p.module).collect(),
        piece_class,
        inclusion,
        projection,
    })
}

/// Whether two lists of summands describe the same multiset of
/// isomorphism classes.
pub fn same_iso_classes<F: Field>(a: &[Summand<F>], b: &[Summand<F>]) -> Result<bool> {
    let mut used = alloc::vec![false; b.len()];
    for s in a {
        let mut hit = false;
        for (j, t) in b.iter().enumerate() {
            if used[j] || s.multiplicity != t.multiplicity {
                continue;
            }
            if find_isomorphism(&s.module, &t.module, None, 0)?.is_some() {
                used[j] = true;
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(false);
        }
    }
    Ok(used.iter().all(|&u| u))
}
