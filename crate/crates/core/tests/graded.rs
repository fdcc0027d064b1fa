use std::sync::Arc;

use derizero::algebra::{named, Algebra};
use derizero::exactlin::{Field, PrimeField, Rationals};
use derizero::graded::*;
use derizero::modules::{is_isomorphic, Module};
use derizero::sample::random_graded_module;
use derizero::trivext::{check_selfinjective, trivial_extension, SelfInjectivity};
use derizero::Error;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn f2() -> PrimeField {
    PrimeField::new(2).unwrap()
}

fn t_of<F: Field>(a: Algebra<F>) -> Arc<GradedAlgebra<F>> {
    trivial_extension(&Arc::new(a)).unwrap().graded
}

fn t_k<F: Field>(f: F) -> Arc<GradedAlgebra<F>> {
    t_of(named::semisimple(f, 1).unwrap())
}

fn t_a2<F: Field>(f: F) -> Arc<GradedAlgebra<F>> {
    t_of(named::linear_a(f, 2).unwrap())
}

fn dual_numbers_flat<F: Field>(f: F) -> Arc<GradedAlgebra<F>> {
    Arc::new(GradedAlgebra::trivial(Arc::new(named::truncated_polynomial(f, 2).unwrap())).unwrap())
}

#[test]
fn trivial_extension_of_a_point_is_dual_numbers() {
    let t = t_k(Rationals);
    assert_eq!(t.algebra().dim(), 2);
    assert!(t.is_self_injective());
    assert_eq!(t.degree0().dim(), 1);
    let x = Arc::new(named::truncated_polynomial(Rationals, 2).unwrap());
    assert_eq!(t.algebra().cartan(), x.cartan());
    assert_eq!(t.algebra().loewy_length(), x.loewy_length());
}

#[test]
fn trivial_extension_invariants() {
    let f = Rationals;
    let algs = vec![
        named::semisimple(f, 2).unwrap(),
        named::linear_a(f, 2).unwrap(),
        named::linear_a(f, 3).unwrap(),
        named::dynkin_d(f, 4).unwrap(),
        named::kronecker(f).unwrap(),
        named::truncated_polynomial(f, 3).unwrap(),
        named::linear_a_rad_square_zero(f, 3).unwrap(),
    ];
    for a in algs {
        let a = Arc::new(a);
        let t = trivial_extension(&a).unwrap();
        assert_eq!(t.algebra().dim(), 2 * a.dim());
        assert!(t.verify_pairing());
        assert!(t.degree_zero_matches_base());
        assert_eq!(check_selfinjective(t.algebra()).unwrap(), SelfInjectivity::SelfInjective);
    }
}

#[test]
fn path_algebra_is_not_self_injective() {
    let a = Arc::new(named::linear_a(Rationals, 2).unwrap());
    assert_eq!(check_selfinjective(&a).unwrap(), SelfInjectivity::Not { projective: 1 });
}

#[test]
fn syzygy_examples() {
    let t = t_a2(Rationals);
    let p = GradedModule::projective(&t, 0, 3);
    assert!(graded_syzygy(&p, 1).unwrap().is_zero());

    let t = t_k(Rationals);
    let s = GradedModule::simple(&t, 0, 0);
    let om = graded_syzygy(&s, 1).unwrap();
    assert_eq!(om.degrees(), &[1]);
    assert!(om.is_isomorphic(&s.degree_shift(-1)).unwrap());

    let d = dual_numbers_flat(Rationals);
    let s = GradedModule::simple(&d, 0, 0);
    let om = graded_syzygy(&s, 1).unwrap();
    assert!(om.is_isomorphic(&s).unwrap());
}

#[test]
fn cosyzygy() {
    let t = t_k(Rationals);
    let s = GradedModule::simple(&t, 0, 0);
    let co = graded_cosyzygy(&s, 1).unwrap();
    assert_eq!(co.degrees(), &[-1]);
    assert!(graded_syzygy(&co, 1).unwrap().is_isomorphic(&s).unwrap());

    let a = Arc::new(GradedAlgebra::trivial(Arc::new(named::linear_a(Rationals, 2).unwrap())).unwrap());
    let s = GradedModule::simple(&a, 0, 0);
    assert!(matches!(graded_cosyzygy(&s, 1), Err(Error::Precondition(_))));
}

#[test]
fn graded_syzygy_splits_projectives_when_not_self_injective() {
    let a = Arc::new(GradedAlgebra::trivial(Arc::new(named::linear_a(Rationals, 3).unwrap())).unwrap());
    // S_1 over A_3: the kernel of P_1 -> S_1 is P_2, so the syzygy is 0 after
    // dropping projectives, and the raw kernel is projective.
    let s = GradedModule::simple(&a, 0, 0);
    assert!(is_graded_projective(&raw_graded_syzygy(&s).unwrap()).unwrap());
    assert!(graded_syzygy(&s, 1).unwrap().is_zero());
}

#[test]
fn lowest_degree_examples() {
    let t = t_k(Rationals);
    let s = GradedModule::simple(&t, 0, 0);
    assert_eq!(lowest_degree_report(&s).unwrap(), LowestDegree::BranchIncreased { old_b: 0, new_b: 1 });

    let d = dual_numbers_flat(Rationals);
    let s = GradedModule::simple(&d, 0, 0);
    assert!(matches!(lowest_degree_report(&s).unwrap(), LowestDegree::BranchEqual { b: 0, .. }));

    let t = t_a2(Rationals);
    let s1 = GradedModule::simple(&t, 0, 0);
    assert_eq!(
        lowest_degree_report(&s1).unwrap(),
        LowestDegree::BranchEqual { b: 0, pd_bot: Some(1), pd_bot_syzygy: Some(0) }
    );
    let om = raw_graded_syzygy(&s1).unwrap();
    let bot = om.bounds().unwrap().bot;
    assert!(is_isomorphic(&bot, &Module::simple(t.degree0().clone(), 1)).unwrap());

    let p = GradedModule::projective(&t, 1, 0);
    assert!(matches!(lowest_degree_report(&p), Err(Error::Precondition(_))));
}

#[test]
fn highest_degree_report_dual() {
    let t = t_k(Rationals);
    let s = GradedModule::simple(&t, 0, 0);
    assert_eq!(highest_degree_report(&s).unwrap(), LowestDegree::BranchIncreased { old_b: 0, new_b: -1 });
}

#[test]
fn orbit_examples() {
    let t = t_k(Rationals);
    let r = syzygy_orbit(&GradedModule::simple(&t, 0, 0), 10).unwrap();
    assert_eq!((r.degree0_gldim, r.conservative_bound, r.first_escape), (0, 1, Some(1)));

    let t = t_a2(Rationals);
    let r = syzygy_orbit(&GradedModule::simple(&t, 0, 0), 10).unwrap();
    assert_eq!((r.degree0_gldim, r.conservative_bound, r.first_escape), (1, 2, Some(2)));
    assert_eq!(r.steps[2].dims, vec![(1, 1)]);
    assert_eq!(r.literal_bound, 1);
    assert_eq!(r.conservative_bound_holds(), Some(true));
    assert_eq!(r.literal_bound_holds(), Some(false));

    let p = GradedModule::projective(&t, 0, 0);
    assert!(matches!(syzygy_orbit(&p, 10), Err(Error::Precondition(_))));

    let d = dual_numbers_flat(Rationals);
    assert!(matches!(syzygy_orbit(&GradedModule::simple(&d, 0, 0), 10), Err(Error::Precondition(_))));
}

#[test]
fn census_examples() {
    let t = t_k(f2());
    let c = window_census(&t, 2).unwrap();
    assert_eq!(c.len(), 3);
    assert!(!c.saturated());
    let again = window_census(&t, 2).unwrap();
    for (a, b) in c.classes.iter().zip(&again.classes) {
        assert_eq!(a.degrees(), b.degrees());
        assert_eq!(a.module(), b.module());
    }
    let c3 = window_census(&t, 3).unwrap();
    assert_eq!(c3.len(), 3);
    assert!(c3.saturated());

    let k = Arc::new(GradedAlgebra::trivial(Arc::new(named::semisimple(f2(), 1).unwrap())).unwrap());
    assert_eq!(window_census(&k, 3).unwrap().len(), 1);

    assert!(matches!(window_census(&t_k(Rationals), 2), Err(Error::NeedsPrimeField(_))));
}

#[test]
fn census_of_trivial_extension_of_a2() {
    let t = t_a2(f2());
    let c = window_census(&t, 4).unwrap();
    assert!(c.saturated());
    // every class is indecomposable with a nonzero degree-0 part
    for m in &c.classes {
        assert!(m.degrees().contains(&0));
        assert_eq!(graded_pieces(m, 0).unwrap().len(), 1);
    }
}

fn check_dichotomy<F: Field>(g: &Arc<GradedAlgebra<F>>, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = random_graded_module(g, &mut rng);
    if m.is_zero() || is_graded_projective(&m).unwrap() {
        return;
    }
    let om = raw_graded_syzygy(&m).unwrap();
    assert!(om.bounds().unwrap().b >= m.bounds().unwrap().b);
    match lowest_degree_report(&m).unwrap() {
        LowestDegree::Violation { reason } => panic!("{reason}"),
        LowestDegree::BranchEqual { pd_bot: Some(p), pd_bot_syzygy, .. } => {
            assert!(p >= 1);
            assert_eq!(pd_bot_syzygy, Some(p - 1));
        }
        _ => {}
    }
    let shifted = m.degree_shift(rng.random_range(-3..=3));
    assert_eq!(shifted.forget(), m.forget());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn dichotomy_over_t_k(seed in any::<u64>()) {
        check_dichotomy(&t_k(PrimeField::new(3).unwrap()), seed);
    }

    #[test]
    fn dichotomy_over_t_a2(seed in any::<u64>()) {
        check_dichotomy(&t_a2(Rationals), seed);
    }

    #[test]
    fn dichotomy_over_flat_dual_numbers(seed in any::<u64>()) {
        check_dichotomy(&dual_numbers_flat(PrimeField::new(5).unwrap()), seed);
    }
}
