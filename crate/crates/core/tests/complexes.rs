use std::sync::Arc;
use std::time::Instant;

use derizero::algebra::{named, Algebra};
use derizero::complexes::*;
use derizero::exactlin::{Field, PrimeField, Rationals};
use derizero::modules::{gldim, Module};
use derizero::sample::{random_complex, random_minimal_complex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f2() -> PrimeField {
    PrimeField::new(2).unwrap()
}

fn a_n<F: Field>(f: F, n: usize) -> Arc<Algebra<F>> {
    Arc::new(named::linear_a(f, n).unwrap())
}

fn dual_numbers<F: Field>(f: F) -> Arc<Algebra<F>> {
    Arc::new(named::truncated_polynomial(f, 2).unwrap())
}

/// `[P_2 --a--> P_1]` in positions 0, 1 (vertex indices 1 and 0).
fn arrow_complex<F: Field>(alg: &Arc<Algebra<F>>) -> ProjComplex<F> {
    let a = alg.basis().iter().position(|b| b.name == "a1").unwrap();
    let mut d = ProjMap::zero(alg, &[1], &[0]);
    d.set(0, 0, alg.basis_vector(a));
    ProjComplex::two_term(alg.clone(), 0, d)
}

#[test]
fn minimality_examples() {
    let a = a_n(Rationals, 2);
    assert!(ProjComplex::stalk(a.clone(), 0, vec![0]).is_minimal());
    assert!(!ProjComplex::identity_cone(a.clone(), 0, 0).is_minimal());
    assert!(arrow_complex(&a).is_minimal());
}

#[test]
fn d_squared_is_checked() {
    let a = a_n(Rationals, 3);
    let idx = |n: &str| a.basis().iter().position(|b| b.name == n).unwrap();
    let mut d0 = ProjMap::zero(&a, &[2], &[1]);
    d0.set(0, 0, a.basis_vector(idx("a2")));
    let mut d1 = ProjMap::zero(&a, &[1], &[0]);
    d1.set(0, 0, a.basis_vector(idx("a1")));
    let r = ProjComplex::new(a.clone(), 0, vec![vec![2], vec![1], vec![0]], vec![d0, d1]);
    assert!(r.is_err());
}

#[test]
fn minimal_decomposition_examples() {
    let a = a_n(Rationals, 2);
    let x = arrow_complex(&a);
    let md = minimal_decomposition(&x);
    assert_eq!(md.minimal, x);
    assert!(md.contractible.is_zero());

    let c = ProjComplex::identity_cone(a.clone(), 0, 0);
    let md = minimal_decomposition(&c);
    assert!(md.minimal.is_zero());
    assert_eq!(md.contractible.total_dim(), c.total_dim());

    // (P_2 + P_1) --(a, Id)--> P_1
    let ai = a.basis().iter().position(|b| b.name == "a1").unwrap();
    let mut d = ProjMap::zero(&a, &[1, 0], &[0]);
    d.set(0, 0, a.basis_vector(ai));
    d.set(0, 1, a.basis_vector(a.idempotent(0)));
    let x = ProjComplex::two_term(a.clone(), 0, d);
    let md = minimal_decomposition(&x);
    assert_eq!(md.minimal, ProjComplex::stalk(a.clone(), 0, vec![1]));
    assert_eq!(md.contractible.width(), 2);
}

#[test]
fn htp_examples() {
    let a = a_n(Rationals, 2);
    let h = htp_ideal(&ProjComplex::stalk(a.clone(), 0, vec![0, 1]));
    assert!(h.basis.is_empty());
    assert_eq!(h.nilpotency_exponent, Some(1));

    let c = ProjComplex::identity_cone(a.clone(), 0, 0);
    let h = htp_ideal(&c);
    assert_eq!(h.basis.len(), chain_maps(&c, &c).len());
    assert!(h.basis.iter().any(|m| m.to_matrix(Rationals).is_invertible()));
    assert_eq!(h.nilpotency_exponent, None);

    assert!(htp_ideal(&arrow_complex(&a)).basis.is_empty());
}

#[test]
fn ks_examples() {
    let a = a_n(Rationals, 2);
    let x = arrow_complex(&a);
    let dec = ks_decompose_complex(&x, 0).unwrap();
    assert_eq!(dec.pieces.len(), 1);

    let s = ProjComplex::stalk(a.clone(), 0, vec![0, 1]);
    let dec = ks_decompose_complex(&s, 0).unwrap();
    assert_eq!(dec.pieces.len(), 2);
    assert!(dec.verify(&s));

    let cone = ProjComplex::identity_cone(a.clone(), 0, 0);
    let both = x.direct_sum(&cone);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let scrambled = derizero::sample::scramble(&both, &mut rng);
    let dec = ks_decompose_complex(&scrambled, 0).unwrap();
    assert!(dec.verify(&scrambled));
    assert_eq!(dec.pieces.len(), 2);
    let hits_x = dec.pieces.iter().filter(|p| find_complex_isomorphism(p, &x, 0).unwrap().is_some()).count();
    let hits_c = dec.pieces.iter().filter(|p| find_complex_isomorphism(p, &cone, 0).unwrap().is_some()).count();
    assert_eq!((hits_x, hits_c), (1, 1));
}

#[test]
fn resolutions_and_truncations() {
    let a = a_n(Rationals, 2);
    let r = minimal_resolution(&Module::simple(a.clone(), 0), 2).unwrap();
    assert_eq!(r.start(), -1);
    assert_eq!(r.terms(), &[vec![1], vec![0]]);
    assert!(find_complex_isomorphism(&r, &arrow_complex(&a).shift(1), 0).unwrap().is_some());

    let d = dual_numbers(Rationals);
    let r = minimal_resolution(&Module::simple(d.clone(), 0), 3).unwrap();
    assert_eq!(r.width(), 4);
    assert!(r.is_minimal());
    for m in r.differentials() {
        assert!(!m.is_zero());
    }
    let t = r.brutal_truncate(0);
    assert_eq!(t, ProjComplex::stalk(d.clone(), 0, vec![0]));
    for m in 0..=3 {
        assert!(is_indecomposable_complex(&r.brutal_truncate(m), 0).unwrap());
    }
}

#[test]
fn census_counts() {
    let a = a_n(f2(), 2);
    assert_eq!(census_indecomposables(&a, 2, 1).unwrap().len(), 3);
    assert_eq!(census_indecomposables(&a, 3, 2).unwrap().len(), 3);
    let k = Arc::new(named::semisimple(f2(), 1).unwrap());
    assert_eq!(census_indecomposables(&k, 3, 2).unwrap().len(), 1);
    assert!(census_indecomposables(&a_n(Rationals, 2), 2, 1).is_err());

    let start = Instant::now();
    let c = census_indecomposables(&a_n(f2(), 3), 3, 2).unwrap();
    assert_eq!(c.len(), 6);
    assert!(start.elapsed().as_secs() < 60);

    let again = census_indecomposables(&a, 3, 2).unwrap();
    assert_eq!(again.classes, census_indecomposables(&a, 3, 2).unwrap().classes);
}

#[test]
fn census_budget() {
    let a = a_n(f2(), 3);
    assert!(matches!(census_with_budget(&a, 3, 2, 10), Err(derizero::Error::Budget { .. })));
}

#[test]
fn strong_global_dimension() {
    let a = a_n(f2(), 2);
    match strong_gldim_search(&a, 4, 2).unwrap() {
        StrongGlobalDimension::ExactUpTo { width, width_cap } => assert_eq!((width, width_cap), (2, 4)),
        other => panic!("{other:?}"),
    }
    let k = Arc::new(named::semisimple(f2(), 1).unwrap());
    assert_eq!(strong_gldim_search(&k, 3, 2).unwrap().width(), 2);
    let d = dual_numbers(f2());
    match strong_gldim_search(&d, 5, 1).unwrap() {
        StrongGlobalDimension::LowerBound { width, witness } => {
            assert_eq!(width, 5);
            assert_eq!(witness.width(), 5);
            assert!(is_indecomposable_complex(&witness, 0).unwrap());
        }
        other => panic!("{other:?}"),
    }
}

fn loop_algebras() -> Vec<Arc<Algebra<PrimeField>>> {
    let f = PrimeField::new(3).unwrap();
    vec![a_n(f, 2), a_n(f, 3), dual_numbers(f)]
}

#[test]
fn minimal_decomposition_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for alg in loop_algebras() {
        for _ in 0..30 {
            let x = random_complex(&alg, &mut rng, 3, 1, 2);
            let md = minimal_decomposition(&x);
            let sum = md.minimal.direct_sum(&md.contractible);
            assert!(md.to_sum.is_chain_map(&x, &sum));
            assert!(md.from_sum.is_chain_map(&sum, &x));
            let f = alg.field();
            assert!(md.to_sum.then(&md.from_sum).to_matrix(f).is_identity());
            assert!(md.from_sum.then(&md.to_sum).to_matrix(f).is_identity());
            assert!(md.minimal.is_minimal());
            for d in md.contractible.differentials() {
                for r in 0..d.target().len() {
                    let nonzero: Vec<usize> = (0..d.source().len()).filter(|&c| !d.entry(r, c).iter().all(|e| f.is_zero(e))).collect();
                    assert!(nonzero.len() <= 1);
                }
            }
            assert_eq!(x.is_minimal(), md.contractible.is_zero());
        }
    }
}

#[test]
fn htp_is_nilpotent_on_minimal_complexes() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for alg in loop_algebras() {
        for _ in 0..20 {
            let x = random_minimal_complex(&alg, &mut rng, 3, 1);
            assert!(htp_ideal(&x).nilpotency_exponent.unwrap() <= alg.loewy_length() + 1);
        }
    }
}

#[test]
fn krull_schmidt_is_seed_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for alg in loop_algebras() {
        for _ in 0..15 {
            let x = random_complex(&alg, &mut rng, 3, 1, 1);
            let a = ks_decompose_complex(&x, 0).unwrap();
            let b = ks_decompose_complex(&x, 1).unwrap();
            assert!(a.verify(&x));
            assert_eq!(a.pieces.len(), b.pieces.len());
            let mut sa = a.class_sizes();
            let mut sb = b.class_sizes();
            sa.sort_unstable();
            sb.sort_unstable();
            assert_eq!(sa, sb);
            for p in &a.pieces {
                let n = a.pieces.iter().filter(|q| find_complex_isomorphism(p, q, 0).unwrap().is_some()).count();
                let m = b.pieces.iter().filter(|q| find_complex_isomorphism(p, q, 0).unwrap().is_some()).count();
                assert_eq!(n, m);
            }
        }
    }
}

#[test]
fn strong_bound_is_at_least_the_formula() {
    for alg in [a_n(f2(), 2), a_n(f2(), 3), Arc::new(named::semisimple(f2(), 2).unwrap())] {
        let g = gldim(&alg, 10).unwrap().finite().unwrap();
        assert!(strong_gldim_search(&alg, 4, 1).unwrap().width() >= 2.max(1 + g));
    }
}
