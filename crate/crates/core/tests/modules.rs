use std::sync::Arc;

use derizero::algebra::{named, Algebra};
use derizero::exactlin::{Field, Matrix, PrimeField, Rationals};
use derizero::modules::*;
use derizero::sample::random_module;
use derizero::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f2() -> PrimeField {
    PrimeField::new(2).unwrap()
}

fn a2<F: Field>(f: F) -> Arc<Algebra<F>> {
    Arc::new(named::linear_a(f, 2).unwrap())
}

fn dual_numbers<F: Field>(f: F) -> Arc<Algebra<F>> {
    Arc::new(named::truncated_polynomial(f, 2).unwrap())
}

#[test]
fn hom_space_examples() {
    let a = a2(Rationals);
    let s1 = Module::simple(a.clone(), 0);
    let s2 = Module::simple(a.clone(), 1);
    assert!(hom_space(&s1, &s2).unwrap().is_empty());
    let p1 = Module::projective(a.clone(), 0);
    assert_eq!(p1.dim(), 2);
    assert_eq!(hom_space(&p1, &p1).unwrap().len(), 1);
    let other = Arc::new(named::linear_a(Rationals, 3).unwrap());
    assert_eq!(hom_space(&s1, &Module::simple(other, 0)).unwrap_err(), Error::AlgebraMismatch);
}

#[test]
fn krull_schmidt_examples() {
    let a = a2(f2());
    let s1 = Module::simple(a.clone(), 0);
    let c = krull_schmidt(&s1, 0).unwrap();
    assert_eq!(c.summands.len(), 1);
    let p1 = Module::projective(a.clone(), 0);
    let c = krull_schmidt(&p1.direct_sum(&p1), 0).unwrap();
    assert_eq!(c.summands.len(), 1);
    assert_eq!(c.summands[0].multiplicity, 2);
    let reg = Module::regular(a.clone());
    let c = krull_schmidt(&reg, 0).unwrap();
    assert!(c.verify(&reg));
    assert_eq!(c.summands.len(), 2);
    let mut dims: Vec<_> = c.summands.iter().map(|s| s.module.dim_vector()).collect();
    dims.sort();
    assert_eq!(dims, vec![vec![0, 1], vec![1, 1]]);
}

#[test]
fn indecomposability_examples() {
    let a = a2(Rationals);
    assert!(is_indecomposable(&Module::simple(a.clone(), 0), 0).unwrap().is_indecomposable());
    let s = Module::simple(a.clone(), 0).direct_sum(&Module::simple(a.clone(), 1));
    match is_indecomposable(&s, 0).unwrap() {
        Indecomposability::Decomposable { idempotent } => {
            assert_eq!(idempotent.mul(&idempotent), idempotent);
            assert!(!idempotent.is_zero() && !idempotent.is_identity());
        }
        _ => panic!("S1 + S2 splits"),
    }
    assert!(is_indecomposable(&Module::projective(a.clone(), 0), 0).unwrap().is_indecomposable());
    assert_eq!(is_indecomposable(&Module::zero(a), 0).unwrap_err(), Error::ZeroObject);
}

#[test]
fn syzygy_examples() {
    let a = a2(Rationals);
    let p1 = Module::projective(a.clone(), 0);
    assert!(syzygy(&p1, 1).unwrap().is_zero());
    let s1 = Module::simple(a.clone(), 0);
    let om = syzygy(&s1, 1).unwrap();
    assert!(is_isomorphic(&om, &Module::simple(a.clone(), 1)).unwrap());
    assert!(is_isomorphic(&om, &Module::projective(a.clone(), 1)).unwrap());
    assert!(syzygy(&s1, 2).unwrap().is_zero());
    let d = dual_numbers(Rationals);
    let s = Module::simple(d.clone(), 0);
    for j in 0..4 {
        assert!(is_isomorphic(&syzygy(&s, j).unwrap(), &s).unwrap());
        assert!(is_isomorphic(&cosyzygy(&s, j).unwrap(), &s).unwrap());
    }
}

#[test]
fn cosyzygy_examples() {
    let a = a2(Rationals);
    let i1 = Module::injective(a.clone(), 0);
    assert!(cosyzygy(&i1, 1).unwrap().is_zero());
    let i2 = Module::injective(a.clone(), 1);
    assert_eq!(i2.dim(), 2);
    let s2 = Module::simple(a.clone(), 1);
    let co = cosyzygy(&s2, 1).unwrap();
    assert!(is_isomorphic(&co, &Module::simple(a.clone(), 0)).unwrap());
    let (hull, inj) = injective_hull(&s2).unwrap();
    assert!(is_isomorphic(&hull, &i2).unwrap());
    assert_eq!(inj.rank(), 1);
}

#[test]
fn global_dimension_examples() {
    let f = f2();
    let ss = Arc::new(named::semisimple(f, 2).unwrap());
    assert_eq!(gldim(&ss, 5).unwrap(), GlobalDimension::Finite(0));
    assert_eq!(gldim(&a2(f), 5).unwrap(), GlobalDimension::Finite(1));
    assert_eq!(
        gldim(&dual_numbers(f), 5).unwrap(),
        GlobalDimension::InfiniteCertified { simple: 0, first: 0, repeat: 1 }
    );
    let a3 = Arc::new(named::linear_a_rad_square_zero(f, 4).unwrap());
    assert_eq!(gldim(&a3, 5).unwrap(), GlobalDimension::Finite(3));
}

#[test]
fn kernel_of_cover_lies_in_radical() {
    let alg = Arc::new(named::linear_a(f2(), 3).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..30 {
        let m = random_module(&alg, &mut rng);
        if m.is_zero() {
            continue;
        }
        let (k, pc, incl) = syzygy_with_inclusion(&m).unwrap();
        let rad = pc.cover.radical_vectors();
        let rad = Matrix::from_columns(alg.field(), pc.cover.dim(), &rad);
        for c in incl.columns() {
            assert!(rad.solve(&c).unwrap().is_some());
        }
        assert_eq!(k.dim() + m.dim(), pc.cover.dim());
    }
}

fn check_decomposition<F: Field>(alg: &Arc<Algebra<F>>, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = random_module(alg, &mut rng);
    let a = krull_schmidt(&m, 0).unwrap();
    let b = krull_schmidt(&m, 1).unwrap();
    assert!(a.verify(&m));
    assert_eq!(a.total_dim(), m.dim());
    assert!(same_iso_classes(&a.summands, &b.summands).unwrap());
    for s in &a.summands {
        assert!(is_indecomposable(&s.module, 3).unwrap().is_indecomposable());
    }
    // duality is involutive
    let op = Arc::new(alg.opposite());
    let dd = m.dual_over(&op).unwrap().dual_over(alg).unwrap();
    assert!(is_isomorphic(&dd, &m).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn decompositions_are_unique_over_f3(seed in 0u64..10_000) {
        check_decomposition(&Arc::new(named::linear_a(PrimeField::new(3).unwrap(), 3).unwrap()), seed);
    }

    #[test]
    fn decompositions_are_unique_over_q(seed in 0u64..10_000) {
        check_decomposition(&Arc::new(named::truncated_polynomial(Rationals, 3).unwrap()), seed);
    }
}

/// Brute-force radical over F_2: elements x with x*y nilpotent for all y.
fn brute_radical_dim(ring: &EndRing<PrimeField>) -> usize {
    let d = ring.dim();
    let f = ring.field();
    let elems: Vec<Vec<u32>> = (0..1u32 << d).map(|m| (0..d).map(|i| (m >> i) & 1).collect()).collect();
    let count = elems
        .iter()
        .filter(|x| {
            elems.iter().all(|y| {
                let xy = ring.mul(x, y);
                let mut p = xy.clone();
                for _ in 0..d {
                    p = ring.mul(&p, &xy);
                }
                p.iter().all(|c| f.is_zero(c))
            })
        })
        .count();
    count.trailing_zeros() as usize
}

#[test]
fn radical_matches_brute_force_over_f2() {
    let f = f2();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let algs = [
        Arc::new(named::linear_a(f, 3).unwrap()),
        Arc::new(named::truncated_polynomial(f, 3).unwrap()),
        Arc::new(named::kronecker(f).unwrap()),
    ];
    let mut checked = 0;
    for alg in &algs {
        for _ in 0..12 {
            let m = random_module(alg, &mut rng);
            let m = m.direct_sum(&random_module(alg, &mut rng));
            let basis = hom_space(&m, &m).unwrap();
            if basis.is_empty() || basis.len() > 10 {
                continue;
            }
            let ring = EndRing::from_matrices(f, basis).unwrap();
            assert_eq!(ring.radical().len(), brute_radical_dim(&ring));
            checked += 1;
        }
    }
    assert!(checked > 10);
}
