use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{ChainMap, ProjComplex, ProjMap};
use crate::algebra::Algebra;
use crate::error::Result;
use crate::exactlin::{EchelonBasis, Field, Matrix};
use crate::modules::{EndRing, RingStructure};

fn range<F: Field>(x: &ProjComplex<F>, y: &ProjComplex<F>) -> (i64, i64) {
    match (x.is_zero(), y.is_zero()) {
        (true, true) => (0, 0),
        (true, false) => (y.start(), y.end()),
        (false, true) => (x.start(), x.end()),
        (false, false) => (x.start().min(y.start()), x.end().max(y.end())),
    }
}

fn flatten<F: Field>(m: &ProjMap<F>, out: &mut Vec<F::Elem>) {
    for r in 0..m.target().len() {
        for c in 0..m.source().len() {
            out.extend_from_slice(m.entry(r, c));
        }
    }
}

fn unit_coords<F: Field>(f: F, n: usize, k: usize) -> Vec<F::Elem> {
    let mut x = vec![f.zero(); n];
    x[k] = f.one();
    x
}

/// A basis of the chain maps `x -> y`, each over the union of the supports.
pub fn chain_maps<F: Field>(x: &ProjComplex<F>, y: &ProjComplex<F>) -> Vec<ChainMap<F>> {
    let alg = x.algebra();
    let f = alg.field();
    let (lo, hi) = range(x, y);
    let sizes: Vec<usize> = (lo..hi).map(|n| ProjMap::num_coords(alg, x.term(n), y.term(n), false)).collect();
    let total: usize = sizes.iter().sum();
    if total == 0 {
        return Vec::new();
    }
    // one block of constraints per position n in [lo, hi - 1): X^n -> Y^{n+1}
    let mut cols: Vec<Vec<F::Elem>> = Vec::with_capacity(total);
    let csizes: Vec<usize> = (lo..hi - 1).map(|n| x.term(n).len() * y.term(n + 1).len() * alg.dim()).collect();
    let crows: usize = csizes.iter().sum();
    let mut coff = vec![0; csizes.len() + 1];
    for i in 0..csizes.len() {
        coff[i + 1] = coff[i] + csizes[i];
    }
    let dx: Vec<ProjMap<F>> = (lo - 1..hi).map(|n| x.differential(n)).collect();
    let dy: Vec<ProjMap<F>> = (lo..hi).map(|n| y.differential(n)).collect();
    for (i, n) in (lo..hi).enumerate() {
        for k in 0..sizes[i] {
            let phi = ProjMap::from_coords(alg, x.term(n), y.term(n), &unit_coords(f, sizes[i], k), false);
            let mut col = vec![f.zero(); crows];
            if n + 1 < hi {
                let mut buf = Vec::new();
                flatten(&phi.then(&dy[i]), &mut buf);
                for (j, v) in buf.into_iter().enumerate() {
                    col[coff[i] + j] = v;
                }
            }
            if n > lo {
                let mut buf = Vec::new();
                flatten(&dx[i].then(&phi), &mut buf);
                for (j, v) in buf.into_iter().enumerate() {
                    let t = &mut col[coff[i - 1] + j];
                    *t = f.sub(t, &v);
                }
            }
            cols.push(col);
        }
    }
    let sys = Matrix::from_columns(f, crows, &cols);
    sys.kernel_basis().into_iter().map(|v| chain_map_from_coords(x, y, lo, hi, &sizes, &v)).collect()
}

fn chain_map_from_coords<F: Field>(
    x: &ProjComplex<F>,
    y: &ProjComplex<F>,
    lo: i64,
    hi: i64,
    sizes: &[usize],
    v: &[F::Elem],
) -> ChainMap<F> {
    let mut k = 0;
    let maps = (lo..hi)
        .enumerate()
        .map(|(i, n)| {
            let m = ProjMap::from_coords(x.algebra(), x.term(n), y.term(n), &v[k..k + sizes[i]], false);
            k += sizes[i];
            m
        })
        .collect();
    ChainMap { start: lo, maps }
}

/// The ideal of null-homotopic endomorphisms.
#[derive(Clone, Debug)]
pub struct HtpIdeal<F: Field> {
    pub basis: Vec<ChainMap<F>>,
    /// Smallest `k` with `Htp^k = 0`; `None` when the powers stabilize at
    /// a nonzero ideal, as for complexes with contractible summands.
    pub nilpotency_exponent: Option<usize>,
}

pub fn htp_ideal<F: Field>(x: &ProjComplex<F>) -> HtpIdeal<F> {
    let alg = x.algebra();
    let f = alg.field();
    if x.is_zero() {
        return HtpIdeal { basis: Vec::new(), nilpotency_exponent: Some(1) };
    }
    let (lo, hi) = (x.start(), x.end());
    let sizes: Vec<usize> = (lo..hi).map(|n| ProjMap::num_coords(alg, x.term(n), x.term(n), false)).collect();
    let total: usize = sizes.iter().sum();
    let mut span = EchelonBasis::new(f, total);
    // h^n: X^n -> X^{n-1}; phi = d h + h d
    for n in lo + 1..hi {
        let hs = ProjMap::num_coords(alg, x.term(n), x.term(n - 1), false);
        for k in 0..hs {
            let h = ProjMap::from_coords(alg, x.term(n), x.term(n - 1), &unit_coords(f, hs, k), false);
            let mut maps: Vec<ProjMap<F>> =
                (lo..hi).map(|m| ProjMap::zero(alg, x.term(m), x.term(m))).collect();
            maps[(n - lo) as usize] = h.then(&x.differential(n - 1));
            maps[(n - 1 - lo) as usize] = x.differential(n - 1).then(&h);
            span.insert(&ChainMap { start: lo, maps }.coords());
        }
    }
    let basis: Vec<ChainMap<F>> =
        span.basis().iter().map(|v| chain_map_from_coords(x, x, lo, hi, &sizes, v)).collect();
    let mut power = basis.clone();
    let mut exponent = 1;
    while !power.is_empty() {
        let mut next = EchelonBasis::new(f, total);
        for a in &power {
            for b in &basis {
                next.insert(&a.then(b).coords());
            }
        }
        if next.len() == power.len() {
            return HtpIdeal { basis, nilpotency_exponent: None };
        }
        power = next.basis().iter().map(|v| chain_map_from_coords(x, x, lo, hi, &sizes, v)).collect();
        exponent += 1;
    }
    HtpIdeal { basis, nilpotency_exponent: Some(exponent) }
}

/// `x = minimal + contractible` with mutually inverse witnesses.
#[derive(Clone, Debug)]
pub struct MinimalDecomposition<F: Field> {
    pub minimal: ProjComplex<F>,
    /// A direct sum of complexes `P_v --Id--> P_v`.
    pub contractible: ProjComplex<F>,
    /// `x -> minimal + contractible`, with the summands of each term of the
    /// sum ordered as in `minimal.direct_sum(&contractible)`.
    pub to_sum: ChainMap<F>,
    pub from_sum: ChainMap<F>,
}

fn row_axpy<F: Field>(alg: &Algebra<F>, m: &mut ProjMap<F>, i: usize, j: usize, s: &[F::Elem]) {
    let f = alg.field();
    for y in 0..m.source().len() {
        let p = alg.mul(m.entry(j, y), s);
        for (a, b) in m.entry_mut(i, y).iter_mut().zip(&p) {
            f.add_assign(a, b);
        }
    }
}

fn col_axpy<F: Field>(alg: &Algebra<F>, m: &mut ProjMap<F>, i: usize, j: usize, s: &[F::Elem]) {
    let f = alg.field();
    for x in 0..m.target().len() {
        let p = alg.mul(s, m.entry(x, i));
        for (a, b) in m.entry_mut(x, j).iter_mut().zip(&p) {
            f.add_assign(a, b);
        }
    }
}

fn row_scale<F: Field>(alg: &Algebra<F>, m: &mut ProjMap<F>, i: usize, s: &[F::Elem]) {
    for y in 0..m.source().len() {
        let p = alg.mul(m.entry(i, y), s);
        m.set(i, y, p);
    }
}

fn col_scale<F: Field>(alg: &Algebra<F>, m: &mut ProjMap<F>, j: usize, s: &[F::Elem]) {
    for x in 0..m.target().len() {
        let p = alg.mul(s, m.entry(x, j));
        m.set(x, j, p);
    }
}

fn neg<F: Field>(f: F, x: &[F::Elem]) -> Vec<F::Elem> {
    x.iter().map(|a| f.neg(a)).collect()
}

/// Inverse of a unit `u` of `e_v A e_v`.
pub(crate) fn unit_inverse<F: Field>(alg: &Algebra<F>, v: usize, u: &[F::Elem]) -> Vec<F::Elem> {
    let f = alg.field();
    let e = alg.idempotent(v);
    let lam_inv = f.inv(&u[e]).expect("unit");
    // u = lam (e_v + m) with m nilpotent
    let mut m: Vec<F::Elem> = u.iter().map(|x| f.mul(x, &lam_inv)).collect();
    m[e] = f.zero();
    let mneg = neg(f, &m);
    let mut term = alg.basis_vector(e);
    let mut acc = term.clone();
    loop {
        term = alg.mul(&term, &mneg);
        if term.iter().all(|x| f.is_zero(x)) {
            break;
        }
        for (a, b) in acc.iter_mut().zip(&term) {
            f.add_assign(a, b);
        }
    }
    acc.iter().map(|x| f.mul(x, &lam_inv)).collect()
}

/// Split `x` into a homotopically minimal part and a contractible part by
/// Gaussian elimination on unit entries of the differentials.
pub fn minimal_decomposition<F: Field>(x: &ProjComplex<F>) -> MinimalDecomposition<F> {
    let alg = x.algebra().clone();
    let f = alg.field();
    if x.is_zero() {
        let z = ProjComplex::zero(alg);
        return MinimalDecomposition {
            minimal: z.clone(),
            contractible: z,
            to_sum: ChainMap { start: 0, maps: Vec::new() },
            from_sum: ChainMap { start: 0, maps: Vec::new() },
        };
    }
    let len = x.terms().len();
    let terms = x.terms().to_vec();
    let mut d: Vec<ProjMap<F>> = x.differentials().to_vec();
    let mut psi: Vec<ProjMap<F>> = terms.iter().map(|t| ProjMap::identity(&alg, t)).collect();
    let mut psi_inv = psi.clone();
    let mut removed: Vec<Vec<bool>> = terms.iter().map(|t| vec![false; t.len()]).collect();
    loop {
        let mut pivot = None;
        'search: for n in 0..d.len() {
            for r in 0..terms[n + 1].len() {
                if removed[n + 1][r] {
                    continue;
                }
                for c in 0..terms[n].len() {
                    let v = terms[n][c];
                    if removed[n][c] || terms[n + 1][r] != v {
                        continue;
                    }
                    if !f.is_zero(&d[n].entry(r, c)[alg.idempotent(v)]) {
                        pivot = Some((n, r, c, v));
                        break 'search;
                    }
                }
            }
        }
        let Some((n, r, c, v)) = pivot else { break };
        let u = d[n].entry(r, c).to_vec();
        let uinv = unit_inverse(&alg, v, &u);
        // clear row r of d^n by column operations on P^n
        for c2 in 0..terms[n].len() {
            if c2 == c || removed[n][c2] {
                continue;
            }
            let w = d[n].entry(r, c2).to_vec();
            if w.iter().all(|a| f.is_zero(a)) {
                continue;
            }
            let t = alg.mul(&w, &uinv);
            let mt = neg(f, &t);
            col_axpy(&alg, &mut d[n], c, c2, &mt);
            if n > 0 {
                row_axpy(&alg, &mut d[n - 1], c, c2, &t);
            }
            row_axpy(&alg, &mut psi[n], c, c2, &t);
            col_axpy(&alg, &mut psi_inv[n], c, c2, &mt);
        }
        // clear column c of d^n by row operations on P^{n+1}
        for r2 in 0..terms[n + 1].len() {
            if r2 == r || removed[n + 1][r2] {
                continue;
            }
            let w = d[n].entry(r2, c).to_vec();
            if w.iter().all(|a| f.is_zero(a)) {
                continue;
            }
            let t = alg.mul(&uinv, &w);
            let mt = neg(f, &t);
            row_axpy(&alg, &mut d[n], r2, r, &mt);
            if n + 1 < d.len() {
                col_axpy(&alg, &mut d[n + 1], r2, r, &t);
            }
            row_axpy(&alg, &mut psi[n + 1], r2, r, &mt);
            col_axpy(&alg, &mut psi_inv[n + 1], r2, r, &t);
        }
        row_scale(&alg, &mut d[n], r, &uinv);
        if n + 1 < d.len() {
            col_scale(&alg, &mut d[n + 1], r, &u);
        }
        row_scale(&alg, &mut psi[n + 1], r, &uinv);
        col_scale(&alg, &mut psi_inv[n + 1], r, &u);
        removed[n][c] = true;
        removed[n + 1][r] = true;
    }
    let work = ProjComplex::trimmed(alg.clone(), x.start(), terms.clone(), d);
    let keep: Vec<Vec<usize>> = removed.iter().map(|rm| (0..rm.len()).filter(|&i| !rm[i]).collect()).collect();
    let gone: Vec<Vec<usize>> = removed.iter().map(|rm| (0..rm.len()).filter(|&i| rm[i]).collect()).collect();
    let minimal = work.restrict_summands(&keep);
    let contractible = work.restrict_summands(&gone);
    let mut to_maps = Vec::with_capacity(len);
    let mut from_maps = Vec::with_capacity(len);
    for i in 0..len {
        let order: Vec<usize> = keep[i].iter().chain(&gone[i]).copied().collect();
        let all: Vec<usize> = (0..terms[i].len()).collect();
        to_maps.push(psi[i].submap(&order, &all));
        from_maps.push(psi_inv[i].submap(&all, &order));
    }
    MinimalDecomposition {
        minimal,
        contractible,
        to_sum: ChainMap { start: x.start(), maps: to_maps },
        from_sum: ChainMap { start: x.start(), maps: from_maps },
    }
}

/// Indecomposable summands of a complex with split inclusions and
/// projections; `classes[i]` groups isomorphic pieces.
#[derive(Clone, Debug)]
pub struct ComplexDecomposition<F: Field> {
    pub pieces: Vec<ProjComplex<F>>,
    pub inclusions: Vec<ChainMap<F>>,
    pub projections: Vec<ChainMap<F>>,
    pub classes: Vec<usize>,
}

impl<F: Field> ComplexDecomposition<F> {
    pub fn num_classes(&self) -> usize {
        self.classes.iter().copied().max().map_or(0, |c| c + 1)
    }

    /// Projections after inclusions give identities and zeros, and the
    /// idempotents sum to the identity.
    pub fn verify(&self, x: &ProjComplex<F>) -> bool {
        let f = x.field();
        let n = x.total_dim();
        let mut sum = Matrix::zeros(f, n, n);
        for (i, (a, p)) in self.inclusions.iter().zip(&self.projections).enumerate() {
            if !a.is_chain_map(&self.pieces[i], x) || !p.is_chain_map(x, &self.pieces[i]) {
                return false;
            }
            sum = sum.add(&p.then(a).to_matrix(f));
            for (j, b) in self.inclusions.iter().enumerate() {
                let m = b.then(p).to_matrix(f);
                let ok = if i == j { m.is_identity() } else { m.is_zero() };
                if !ok {
                    return false;
                }
            }
        }
        sum.is_identity()
    }

    /// Multiset of classes, for comparison with another decomposition.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.num_classes()];
        for &c in &self.classes {
            out[c] += 1;
        }
        out
    }
}

fn end_ring<F: Field>(x: &ProjComplex<F>) -> Result<(Vec<ChainMap<F>>, EndRing<F>)> {
    let basis = chain_maps(x, x);
    let mats = basis.iter().map(|b| b.to_matrix(x.field())).collect();
    let ring = EndRing::from_matrices(x.field(), mats)?;
    Ok((basis, ring))
}

pub fn is_indecomposable_complex<F: Field>(x: &ProjComplex<F>, seed: u64) -> Result<bool> {
    if x.is_zero() {
        return Ok(false);
    }
    let (_, ring) = end_ring(x)?;
    Ok(matches!(ring.analyze(seed)?, RingStructure::Local { .. }))
}

/// The summand of `x` cut out by an idempotent chain endomorphism, with
/// its inclusion and projection.
fn image_of<F: Field>(x: &ProjComplex<F>, e: &ChainMap<F>) -> Result<(ProjComplex<F>, ChainMap<F>, ChainMap<F>)> {
    let alg = x.algebra();
    let f = alg.field();
    let (lo, hi) = (x.start(), x.end());
    let mut terms = Vec::new();
    let mut incl = Vec::new();
    for n in lo..hi {
        let en = e.at(n).unwrap();
        let t = x.term(n);
        let mut top = EchelonBasis::new(f, t.len());
        let mut chosen = Vec::new();
        for c in 0..t.len() {
            let col: Vec<F::Elem> = (0..t.len())
                .map(|r| if t[r] == t[c] { en.entry(r, c)[alg.idempotent(t[c])].clone() } else { f.zero() })
                .collect();
            if top.insert(&col) {
                chosen.push(c);
            }
        }
        let all: Vec<usize> = (0..t.len()).collect();
        let i = en.submap(&all, &chosen);
        terms.push(i.source().to_vec());
        incl.push(i);
    }
    let mats: Vec<Matrix<F>> = incl.iter().map(|i| i.to_matrix()).collect();
    let mut diffs = Vec::new();
    for (k, n) in (lo..hi - 1).enumerate() {
        let rhs = incl[k].then(&x.differential(n)).to_matrix();
        let sol = mats[k + 1].solve_matrix(&rhs).expect("image of an idempotent is a subcomplex");
        diffs.push(ProjMap::from_matrix(alg, &terms[k], &terms[k + 1], &sol));
    }
    let mut proj = Vec::new();
    for (k, n) in (lo..hi).enumerate() {
        let em = e.at(n).unwrap().to_matrix();
        let sol = mats[k].solve_matrix(&em).expect("idempotent factors through its image");
        proj.push(ProjMap::from_matrix(alg, x.term(n), &terms[k], &sol));
    }
    let piece = ProjComplex::new(alg.clone(), lo, terms, diffs)?;
    let i = ChainMap { start: lo, maps: incl };
    let p = ChainMap { start: lo, maps: proj };
    let (plo, phi) = (piece.start(), piece.end());
    // drop the components over trimmed positions
    let cut = |m: ChainMap<F>| ChainMap {
        start: plo,
        maps: m.maps[(plo - lo) as usize..(phi - lo) as usize].to_vec(),
    };
    if piece.is_zero() {
        return Ok((piece, ChainMap { start: 0, maps: Vec::new() }, ChainMap { start: 0, maps: Vec::new() }));
    }
    Ok((piece, cut(i), cut(p)))
}

type Piece<F> = (ProjComplex<F>, ChainMap<F>, ChainMap<F>);

fn split<F: Field>(x: &ProjComplex<F>, seed: u64, out: &mut Vec<Piece<F>>) -> Result<()> {
    if x.is_zero() {
        return Ok(());
    }
    let (basis, ring) = end_ring(x)?;
    match ring.analyze(seed)? {
        RingStructure::Local { .. } => {
            out.push((x.clone(), ChainMap::identity(x), ChainMap::identity(x)));
        }
        RingStructure::Split { idempotent } => {
            let f = x.field();
            let zero = ChainMap::identity(x).scale(&f.zero());
            let eps = basis.iter().zip(&idempotent).fold(zero, |acc, (b, c)| acc.add(&b.scale(c)));
            let rest = ChainMap::identity(x).sub(&eps);
            for e in [eps, rest] {
                let (piece, i, p) = image_of(x, &e)?;
                let mut sub = Vec::new();
                split(&piece, seed, &mut sub)?;
                for (q, qi, qp) in sub {
                    let qi = qi.padded(piece.start(), piece.end(), &q, &piece);
                    let qp = qp.padded(piece.start(), piece.end(), &piece, &q);
                    let inc = qi.then(&i).padded(x.start(), x.end(), &q, x);
                    let pr = p.then(&qp).padded(x.start(), x.end(), x, &q);
                    out.push((q, inc, pr));
                }
            }
        }
    }
    Ok(())
}

/// Krull-Schmidt decomposition in the category of complexes.
pub fn ks_decompose_complex<F: Field>(x: &ProjComplex<F>, seed: u64) -> Result<ComplexDecomposition<F>> {
    let mut raw = Vec::new();
    split(x, seed, &mut raw)?;
    let mut pieces: Vec<ProjComplex<F>> = Vec::new();
    let mut inclusions = Vec::new();
    let mut projections = Vec::new();
    let mut classes = Vec::new();
    let mut reps: Vec<usize> = Vec::new();
    for (q, i, p) in raw {
        let mut class = None;
        for (k, &rep) in reps.iter().enumerate() {
            if find_complex_isomorphism(&pieces[rep], &q, seed)?.is_some() {
                class = Some(k);
                break;
            }
        }
        let k = class.unwrap_or_else(|| {
            reps.push(pieces.len());
            reps.len() - 1
        });
        classes.push(k);
        pieces.push(q);
        inclusions.push(i);
        projections.push(p);
    }
    Ok(ComplexDecomposition { pieces, inclusions, projections, classes })
}

/// A chain isomorphism `x -> y`, if one is found. Complete whenever `x`
/// is indecomposable; for decomposable inputs a `None` can be a miss.
pub fn find_complex_isomorphism<F: Field>(x: &ProjComplex<F>, y: &ProjComplex<F>, seed: u64) -> Result<Option<ChainMap<F>>> {
    if x.shape() != y.shape() {
        return Ok(None);
    }
    let f = x.field();
    if x.is_zero() {
        return Ok(Some(ChainMap { start: 0, maps: Vec::new() }));
    }
    let fwd = chain_maps(x, y);
    if fwd.is_empty() {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..20 {
        let zero = fwd[0].scale(&f.zero());
        let cand = fwd.iter().fold(zero, |acc, b| acc.add(&b.scale(&f.random(&mut rng))));
        if cand.to_matrix(f).is_invertible() {
            return Ok(Some(cand));
        }
    }
    let back = chain_maps(y, x);
    for a in &fwd {
        for b in &back {
            if a.then(b).to_matrix(f).is_invertible() {
                return Ok(Some(a.clone()));
            }
        }
    }
    Ok(None)
}
