//! Seeded random objects for property checks.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::algebra::Algebra;
use crate::complexes::census::allowed_rows;
use crate::complexes::decompose::unit_inverse;
use crate::complexes::{ProjComplex, ProjMap};
use crate::exactlin::Field;
use crate::graded::{GradedAlgebra, GradedModule};
use crate::modules::Module;

fn random_combination<F: Field, R: Rng + ?Sized>(f: F, rng: &mut R, vs: &[Vec<F::Elem>], len: usize) -> Vec<F::Elem> {
    let mut v = vec![f.zero(); len];
    for r in vs {
        let c = f.random(rng);
        for (x, y) in v.iter_mut().zip(r) {
            f.add_mul_assign(x, &c, y);
        }
    }
    v
}

/// A quotient of a sum of one to three indecomposable projectives by the
/// submodule generated by up to two random elements of its radical.
pub fn random_module<F: Field, R: Rng + ?Sized>(alg: &Arc<Algebra<F>>, rng: &mut R) -> Module<F> {
    let f = alg.field();
    let nv = alg.num_vertices();
    let k = rng.random_range(1..=3);
    let verts: Vec<usize> = (0..k).map(|_| rng.random_range(0..nv)).collect();
    let p = Module::projective_sum(alg, &verts);
    let rad = p.radical_vectors();
    if rad.is_empty() {
        return p;
    }
    let gens: Vec<Vec<F::Elem>> =
        (0..rng.random_range(0..=2)).map(|_| random_combination(f, rng, &rad, p.dim())).collect();
    let (_, incl) = p.generated_submodule(&gens);
    p.quotient(&incl.columns()).expect("submodule").0
}

/// The graded analogue of [`random_module`]: projectives generated in
/// degrees -1, 0, 1 modulo homogeneous radical elements.
pub fn random_graded_module<F: Field, R: Rng + ?Sized>(g: &Arc<GradedAlgebra<F>>, rng: &mut R) -> GradedModule<F> {
    let f = g.field();
    let nv = g.algebra().num_vertices();
    let k = rng.random_range(1..=3);
    let parts: Vec<(usize, i64)> = (0..k).map(|_| (rng.random_range(0..nv), rng.random_range(-1..=1))).collect();
    let p = GradedModule::projective_sum(g, &parts);
    let rad = p.module().radical_vectors();
    if rad.is_empty() {
        return p;
    }
    let deg = |x: &Vec<F::Elem>| p.degrees()[x.iter().position(|c| !f.is_zero(c)).unwrap()];
    let mut gens = Vec::new();
    for _ in 0..rng.random_range(0..=2) {
        let d = deg(&rad[rng.random_range(0..rad.len())]);
        let same: Vec<Vec<F::Elem>> = rad.iter().filter(|r| deg(r) == d).cloned().collect();
        gens.push(random_combination(f, rng, &same, p.dim()));
    }
    p.quotient(&gens).expect("homogeneous generators").0
}

fn random_term<R: Rng + ?Sized>(nv: usize, mult: usize, rng: &mut R) -> Vec<usize> {
    loop {
        let mut t = Vec::new();
        for v in 0..nv {
            for _ in 0..rng.random_range(0..=mult) {
                t.push(v);
            }
        }
        if !t.is_empty() {
            return t;
        }
    }
}

/// A complex with radical-valued differentials on `width` positions
/// starting at 0; each term has at most `mult` copies of each projective.
pub fn random_minimal_complex<F: Field, R: Rng + ?Sized>(
    alg: &Arc<Algebra<F>>,
    rng: &mut R,
    width: usize,
    mult: usize,
) -> ProjComplex<F> {
    let f = alg.field();
    let nv = alg.num_vertices();
    let terms: Vec<Vec<usize>> = (0..width.max(1)).map(|_| random_term(nv, mult, rng)).collect();
    let mut diffs: Vec<ProjMap<F>> = Vec::new();
    for n in 0..terms.len() - 1 {
        let mut d = ProjMap::zero(alg, &terms[n], &terms[n + 1]);
        for (r, &w) in terms[n + 1].iter().enumerate() {
            let rows = allowed_rows(alg, &terms[n], diffs.last(), w);
            if rows.is_empty() {
                continue;
            }
            let mut row = rows[0].scale(&f.zero());
            for b in &rows {
                row = row.add(&b.scale(&f.random(rng)));
            }
            for c in 0..terms[n].len() {
                d.set(r, c, row.entry(0, c).to_vec());
            }
        }
        diffs.push(d);
    }
    ProjComplex::new(alg.clone(), 0, terms, diffs).expect("d . d = 0 by construction")
}

/// A random automorphism of a sum of projectives and its inverse.
fn random_automorphism<F: Field, R: Rng + ?Sized>(
    alg: &Arc<Algebra<F>>,
    verts: &[usize],
    rng: &mut R,
) -> (ProjMap<F>, ProjMap<F>) {
    let f = alg.field();
    let mut a = ProjMap::identity(alg, verts);
    let mut b = a.clone();
    let n = verts.len();
    for _ in 0..2 * n {
        let (i, j) = (rng.random_range(0..n), rng.random_range(0..n));
        let mut e = ProjMap::identity(alg, verts);
        let mut einv = e.clone();
        if i == j {
            let v = verts[i];
            let mut u = alg.zero_element();
            for k in alg.component(v, v) {
                u[k] = f.random(rng);
            }
            let id = alg.idempotent(v);
            while f.is_zero(&u[id]) {
                u[id] = f.random(rng);
            }
            einv.set(i, i, unit_inverse(alg, v, &u));
            e.set(i, i, u);
        } else {
            let mut s = alg.zero_element();
            for k in alg.component(verts[j], verts[i]) {
                s[k] = f.random(rng);
            }
            einv.set(i, j, s.iter().map(|x| f.neg(x)).collect());
            e.set(i, j, s);
        }
        // a <- e . a, b <- b . einv
        a = a.then(&e);
        b = einv.then(&b);
    }
    (a, b)
}

/// A random minimal complex plus some `P_v --Id--> P_v` summands, with
/// every term then scrambled by a random automorphism.
pub fn random_complex<F: Field, R: Rng + ?Sized>(
    alg: &Arc<Algebra<F>>,
    rng: &mut R,
    width: usize,
    mult: usize,
    cones: usize,
) -> ProjComplex<F> {
    let nv = alg.num_vertices();
    let mut x = random_minimal_complex(alg, rng, width, mult);
    for _ in 0..cones {
        let pos = rng.random_range(0..width.max(2) as i64 - 1);
        x = x.direct_sum(&ProjComplex::identity_cone(alg.clone(), pos, rng.random_range(0..nv)));
    }
    scramble(&x, rng)
}

/// Conjugate every term of `x` by a random automorphism.
pub fn scramble<F: Field, R: Rng + ?Sized>(x: &ProjComplex<F>, rng: &mut R) -> ProjComplex<F> {
    if x.is_zero() {
        return x.clone();
    }
    let alg = x.algebra();
    let autos: Vec<(ProjMap<F>, ProjMap<F>)> =
        x.terms().iter().map(|t| random_automorphism(alg, t, rng)).collect();
    let diffs = x
        .differentials()
        .iter()
        .enumerate()
        .map(|(n, d)| autos[n].1.then(d).then(&autos[n + 1].0))
        .collect();
    ProjComplex::new(alg.clone(), x.start(), x.terms().to_vec(), diffs).expect("conjugate of a complex")
}
