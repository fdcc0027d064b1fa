//! Deciding whether the derived dimension is zero: upper bounds, a
//! Coxeter polynomial filter against Dynkin types, the census of
//! indecomposable complexes, and a cross-check through the trivial
//! extension.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{coxeter_polynomial_of, named, Algebra};
use crate::complexes::{census_indecomposables, find_complex_isomorphism, Census, ProjComplex};
use crate::error::{Error, Result};
use crate::exactlin::{Field, FieldSpec, PrimeField, Rationals};
use crate::graded::{syzygy_orbit, window_census, GradedModule, OrbitReport};
use crate::modules::{gldim, GlobalDimension};
use crate::trivext::trivial_extension;

/// Cap used when computing global dimensions here.
fn gldim_cap<F: Field>(a: &Algebra<F>) -> usize {
    2 * a.dim() + 2
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperBound {
    pub loewy_length: usize,
    pub global_dimension: Option<usize>,
    /// Minimum of the available bounds.
    pub bound: usize,
}

pub fn derdim_upper_bound<F: Field>(a: &Arc<Algebra<F>>) -> Result<UpperBound> {
    let ll = a.loewy_length();
    let g = gldim(a, gldim_cap(a))?.finite();
    Ok(UpperBound { loewy_length: ll, global_dimension: g, bound: g.map_or(ll, |g| g.min(ll)) })
}

/// Dynkin diagram types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dynkin {
    A(usize),
    D(usize),
    E(usize),
}

impl core::fmt::Display for Dynkin {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Dynkin::A(n) => write!(f, "A_{n}"),
            Dynkin::D(n) => write!(f, "D_{n}"),
            Dynkin::E(n) => write!(f, "E_{n}"),
        }
    }
}

/// Coxeter polynomials of the Dynkin path algebras, computed from their
/// Cartan matrices.
#[derive(Clone, Debug)]
pub struct DynkinTable {
    pub entries: Vec<(Dynkin, Vec<i64>)>,
}

impl DynkinTable {
    pub fn build() -> Result<Self> {
        let q = Rationals;
        let mut entries = Vec::new();
        for n in 1..=8 {
            entries.push((Dynkin::A(n), named::linear_a(q, n)?.coxeter_polynomial()?));
        }
        for n in 4..=8 {
            entries.push((Dynkin::D(n), named::dynkin_d(q, n)?.coxeter_polynomial()?));
        }
        for n in 6..=8 {
            entries.push((Dynkin::E(n), named::dynkin_e(q, n)?.coxeter_polynomial()?));
        }
        Ok(DynkinTable { entries })
    }

    /// A multiset of Dynkin types whose Coxeter polynomials multiply to
    /// `poly` (lowest coefficient first).
    pub fn match_polynomial(&self, poly: &[i64]) -> Option<Vec<Dynkin>> {
        let mut out = Vec::new();
        if self.search(poly, 0, &mut out) {
            Some(out)
        } else {
            None
        }
    }

    fn search(&self, poly: &[i64], from: usize, out: &mut Vec<Dynkin>) -> bool {
        if poly.len() == 1 {
            return poly[0] == 1;
        }
        for i in from..self.entries.len() {
            let (t, p) = &self.entries[i];
            if p.len() > poly.len() {
                continue;
            }
            if let Some(quot) = divide_monic(poly, p) {
                out.push(*t);
                if self.search(&quot, i, out) {
                    return true;
                }
                out.pop();
            }
        }
        false
    }
}

/// Exact quotient of integer polynomials by a monic divisor.
fn divide_monic(a: &[i64], b: &[i64]) -> Option<Vec<i64>> {
    let db = b.len() - 1;
    if *b.last()? != 1 || a.len() < b.len() {
        return None;
    }
    let mut r = a.to_vec();
    let mut q = vec![0i64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db];
        q[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] -= c * bj;
        }
    }
    r.iter().all(|&x| x == 0).then_some(q)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FilterFailure {
    InfiniteGlobalDimension { simple: usize, first: usize, repeat: usize },
    /// The global dimension was not determined within the cap.
    GlobalDimensionUndetermined { cap: usize },
    CartanNotInvertible,
    CoxeterNotDynkin { polynomial: Vec<i64>, root_one: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FilterResult {
    Pass(Vec<Dynkin>),
    Fail(FilterFailure),
}

/// Passes when the global dimension is finite and the Coxeter polynomial
/// of each block is that of a single Dynkin diagram.
pub fn dynkin_filter<F: Field>(a: &Arc<Algebra<F>>, table: &DynkinTable) -> Result<FilterResult> {
    let cap = gldim_cap(a);
    let g = gldim(a, cap)?;
    if let GlobalDimension::InfiniteCertified { simple, first, repeat } = g {
        return Ok(FilterResult::Fail(FilterFailure::InfiniteGlobalDimension { simple, first, repeat }));
    }
    let types = match block_types(a, table)? {
        Ok(t) => t,
        Err(fail) => return Ok(FilterResult::Fail(fail)),
    };
    if let GlobalDimension::ExceedsCap { .. } = g {
        return Ok(FilterResult::Fail(FilterFailure::GlobalDimensionUndetermined { cap }));
    }
    Ok(FilterResult::Pass(types))
}

/// Vertex sets of the connected components of the quiver.
pub fn blocks<F: Field>(a: &Algebra<F>) -> Vec<Vec<usize>> {
    let n = a.num_vertices();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    for b in a.basis() {
        let (x, y) = (root(&mut parent, b.source), root(&mut parent, b.target));
        parent[x] = y;
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![usize::MAX; n];
    for v in 0..n {
        let r = root(&mut parent, v);
        if index[r] == usize::MAX {
            index[r] = out.len();
            out.push(Vec::new());
        }
        out[index[r]].push(v);
    }
    out
}

fn block_types<F: Field>(a: &Algebra<F>, table: &DynkinTable) -> Result<core::result::Result<Vec<Dynkin>, FilterFailure>> {
    let cartan = a.cartan();
    let mut types = Vec::new();
    for block in blocks(a) {
        let sub: Vec<Vec<i64>> = block.iter().map(|&i| block.iter().map(|&j| cartan[i][j]).collect()).collect();
        let poly = match coxeter_polynomial_of(&sub) {
            Ok(p) => p,
            Err(Error::CoxeterUndefined) => return Ok(Err(FilterFailure::CartanNotInvertible)),
            Err(e) => return Err(e),
        };
        match table.entries.iter().find(|(_, p)| *p == poly) {
            Some((t, _)) => types.push(*t),
            None => {
                let root_one = poly.iter().sum::<i64>() == 0;
                return Ok(Err(FilterFailure::CoxeterNotDynkin { polynomial: poly, root_one }));
            }
        }
    }
    types.sort();
    Ok(Ok(types))
}

#[derive(Clone, Debug)]
pub enum Outcome<F: Field> {
    /// The census saturated; its classes generate the derived category in
    /// one step.
    Zero { certificate: Vec<ProjComplex<F>>, global_dimension: usize },
    Positive(FilterFailure),
    Unknown { report: String },
}

#[derive(Clone, Debug)]
pub struct Verdict<F: Field> {
    pub outcome: Outcome<F>,
    pub field: FieldSpec,
    pub width_cap: usize,
    pub mult_cap: usize,
    /// Census sizes at `(width_cap - 1, mult_cap - 1)` and at the caps.
    pub census_sizes: Option<(usize, usize)>,
    pub dynkin_type: Option<Vec<Dynkin>>,
}

impl<F: Field> Verdict<F> {
    pub fn label(&self) -> &'static str {
        match self.outcome {
            Outcome::Zero { .. } => "Zero",
            Outcome::Positive(_) => "Positive",
            Outcome::Unknown { .. } => "Unknown",
        }
    }
}

/// Positive when the global dimension is infinite or the Coxeter data is
/// not of Dynkin type; Zero when the census of indecomposable complexes
/// over `census_field` is the same at `(width_cap, mult_cap)` and one step
/// below; Unknown otherwise.
pub fn decide_derdim_zero<F: Field>(
    a: &Arc<Algebra<F>>,
    width_cap: usize,
    mult_cap: usize,
    census_field: PrimeField,
) -> Result<Verdict<PrimeField>> {
    if width_cap < 2 || mult_cap < 2 {
        return Err(Error::Precondition("width and multiplicity caps must be at least 2".into()));
    }
    let table = DynkinTable::build()?;
    let mut verdict = Verdict {
        outcome: Outcome::Unknown { report: String::new() },
        field: census_field.spec(),
        width_cap,
        mult_cap,
        census_sizes: None,
        dynkin_type: None,
    };
    let g = match dynkin_filter(a, &table)? {
        FilterResult::Fail(FilterFailure::GlobalDimensionUndetermined { cap }) => {
            verdict.outcome = Outcome::Unknown { report: format!("global dimension exceeds the cap {cap}") };
            return Ok(verdict);
        }
        FilterResult::Fail(reason) => {
            verdict.outcome = Outcome::Positive(reason);
            return Ok(verdict);
        }
        FilterResult::Pass(types) => {
            verdict.dynkin_type = Some(types);
            gldim(a, gldim_cap(a))?.finite().unwrap_or(0)
        }
    };
    let reduced = match a.change_field(census_field) {
        Ok(r) => Arc::new(r),
        Err(e) => {
            verdict.outcome = Outcome::Unknown { report: format!("cannot run the census over {}: {e}", census_field.spec()) };
            return Ok(verdict);
        }
    };
    let run = |w, m| -> Result<Option<Census<PrimeField>>> {
        match census_indecomposables(&reduced, w, m) {
            Ok(c) => Ok(Some(c)),
            Err(Error::Budget { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let (Some(small), Some(big)) = (run(width_cap - 1, mult_cap - 1)?, run(width_cap, mult_cap)?) else {
        verdict.outcome = Outcome::Unknown { report: "census budget exhausted".into() };
        return Ok(verdict);
    };
    verdict.census_sizes = Some((small.len(), big.len()));
    if !big.is_empty() && saturated(&small, &big)? {
        verdict.outcome = Outcome::Zero { certificate: big.classes, global_dimension: g };
    } else {
        let widths: Vec<usize> = big.classes.iter().map(|c| c.width()).collect();
        verdict.outcome = Outcome::Unknown {
            report: format!(
                "census grew from {} to {} classes; widths at the caps: {:?}",
                small.len(),
                big.len(),
                widths
            ),
        };
    }
    Ok(verdict)
}

/// Every class at the larger caps already appears at the smaller ones.
fn saturated(small: &Census<PrimeField>, big: &Census<PrimeField>) -> Result<bool> {
    if small.len() != big.len() {
        return Ok(false);
    }
    for x in &big.classes {
        let mut hit = false;
        for y in &small.classes {
            if find_complex_isomorphism(x, y, 0)?.is_some() {
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct CrossCheck {
    pub dim_cap: usize,
    pub census_size: usize,
    pub census_saturated: bool,
    /// Orbit of each graded simple in degree 0, by vertex.
    pub orbits: Vec<OrbitReport>,
    /// All orbits escape and the window census saturates.
    pub consistent: bool,
}

/// Window census and syzygy orbits of graded simples over the trivial
/// extension, over `census_field`.
pub fn crosscheck_trivext<F: Field>(a: &Arc<Algebra<F>>, dim_cap: usize, census_field: PrimeField) -> Result<CrossCheck> {
    if gldim(a, gldim_cap(a))?.finite().is_none() {
        return Err(Error::Precondition("the global dimension must be finite".into()));
    }
    let reduced = Arc::new(a.change_field(census_field)?);
    let t = trivial_extension(&reduced)?;
    let census = window_census(&t.graded, dim_cap)?;
    let mut orbits = Vec::new();
    for v in 0..reduced.num_vertices() {
        let s = GradedModule::simple(&t.graded, v, 0);
        let probe = syzygy_orbit(&s, 0)?;
        orbits.push(syzygy_orbit(&s, probe.conservative_bound + 1)?);
    }
    let census_saturated = census.saturated();
    let consistent = census_saturated && orbits.iter().all(|o| o.first_escape.is_some());
    Ok(CrossCheck { dim_cap, census_size: census.len(), census_saturated, orbits, consistent })
}
