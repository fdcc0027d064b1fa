use derizero::algebra::{named, QuiverPresentation};
use derizero::exactlin::{Field, PrimeField, Rationals};
use derizero::Error;

fn pres(vertices: &[&str], arrows: &[(&str, usize, usize)]) -> QuiverPresentation<Rationals> {
    let mut p = QuiverPresentation::new(Rationals);
    for v in vertices {
        p.add_vertex(v).unwrap();
    }
    for (a, s, t) in arrows {
        p.add_arrow(a, *s, *t).unwrap();
    }
    p
}

fn one() -> num_rational::BigRational {
    Rationals.one()
}

#[test]
fn trivial_quiver_is_the_field() {
    let a = pres(&["1"], &[]).build().unwrap();
    assert_eq!(a.dim(), 1);
    assert_eq!(a.loewy_length(), 0);
}

#[test]
fn a2_has_three_paths() {
    let a = named::linear_a(Rationals, 2).unwrap();
    let names: Vec<_> = a.basis().iter().map(|b| b.name.as_str()).collect();
    assert_eq!(names, ["e1", "e2", "a1"]);
    assert_eq!(a.loewy_length(), 1);
    assert_eq!(a.cartan(), vec![vec![1, 0], vec![1, 1]]);
    assert_eq!(a.coxeter_polynomial().unwrap(), vec![1, 1, 1]);
}

#[test]
fn loop_with_square_zero() {
    let a = named::truncated_polynomial(Rationals, 2).unwrap();
    assert_eq!(a.dim(), 2);
    assert_eq!(a.radical(), &[1]);
    let a3 = named::truncated_polynomial(Rationals, 3).unwrap();
    assert_eq!(a3.loewy_length(), 2);
}

#[test]
fn coxeter_polynomials_of_small_algebras() {
    assert_eq!(named::semisimple(Rationals, 2).unwrap().coxeter_polynomial().unwrap(), vec![1, 2, 1]);
    assert_eq!(named::kronecker(Rationals).unwrap().coxeter_polynomial().unwrap(), vec![1, -2, 1]);
    assert!(matches!(
        named::truncated_polynomial(Rationals, 2).unwrap().coxeter_polynomial(),
        Err(Error::CoxeterUndefined)
    ));
}

#[test]
fn commutative_square_reduces_one_path() {
    let mut p = pres(&["1", "2", "3", "4"], &[("a", 0, 1), ("b", 0, 2), ("c", 1, 3), ("d", 2, 3)]);
    p.add_relation(vec![(one(), vec![0, 2]), (-one(), vec![1, 3])]).unwrap();
    let a = p.build().unwrap();
    assert_eq!(a.dim(), 9);
    assert_eq!(a.loewy_length(), 2);
}

#[test]
fn overlaps_are_completed() {
    // k<x,y>/(xy - yx, x^2, y^2) has basis 1, x, y, xy
    let mut p = pres(&["1"], &[("x", 0, 0), ("y", 0, 0)]);
    p.add_relation(vec![(one(), vec![0, 1]), (-one(), vec![1, 0])]).unwrap();
    p.add_relation(vec![(one(), vec![0, 0])]).unwrap();
    p.add_relation(vec![(one(), vec![1, 1])]).unwrap();
    let a = p.build().unwrap();
    assert_eq!(a.dim(), 4);
    // x^2 = y x, y^2 = 0 needs the overlap y.x.x to kill x.y.x
    let mut p = pres(&["1"], &[("x", 0, 0), ("y", 0, 0)]);
    p.add_relation(vec![(one(), vec![0, 0]), (-one(), vec![0, 1])]).unwrap();
    p.add_relation(vec![(one(), vec![1, 1])]).unwrap();
    p.add_relation(vec![(one(), vec![1, 0])]).unwrap();
    let a = p.build().unwrap();
    // x.x = x.y (x first), y.y = 0, y.x = 0: words 1, x, y, x.y, and x.y.? all die
    assert_eq!(a.dim(), 4);
}

#[test]
fn rejects_bad_presentations() {
    let mut p = pres(&["1"], &[("x", 0, 0)]);
    assert!(p.add_relation(vec![(one(), vec![0])]).is_err());
    // x^2 - x^3 is not admissible
    p.add_relation(vec![(one(), vec![0, 0]), (-one(), vec![0, 0, 0])]).unwrap();
    assert!(matches!(p.build(), Err(Error::NonAdmissible(_))));
    // free loop never terminates
    let p = pres(&["1"], &[("x", 0, 0)]);
    assert!(matches!(p.build(), Err(Error::ReductionCap(_))));
    // non-parallel terms
    let mut p = pres(&["1", "2"], &[("a", 0, 1), ("b", 1, 0)]);
    assert!(p.add_relation(vec![(one(), vec![0, 1]), (one(), vec![1, 0])]).is_err());
}

#[test]
fn dual_bimodule_places_arrow_dual() {
    let a = named::linear_a(Rationals, 2).unwrap();
    let d = a.dual_bimodule();
    assert_eq!(d.left.len(), 3);
    // a in e2 A e1, so a* in e1 DA e2
    assert_eq!(d.ends[2], (1, 0));
    // e1 . a* . e2 = a*
    let astar = vec![Rationals.zero(), Rationals.zero(), one()];
    let v = d.left[0].mul_vec(&astar);
    let v = d.right[1].mul_vec(&v);
    assert_eq!(v, astar);
}

#[test]
fn opposite_swaps_ends() {
    let a = named::linear_a(PrimeField::new(2).unwrap(), 3).unwrap();
    let op = a.opposite();
    assert_eq!(op.dim(), a.dim());
    assert_eq!(op.cartan(), {
        let c = a.cartan();
        (0..3).map(|i| (0..3).map(|j| c[j][i]).collect::<Vec<_>>()).collect::<Vec<_>>()
    });
}

#[test]
fn dynkin_dimensions() {
    let q = Rationals;
    // number of paths in a tree quiver = vertices + pairs connected by paths
    assert_eq!(named::linear_a(q, 4).unwrap().dim(), 10);
    assert_eq!(named::dynkin_d(q, 4).unwrap().dim(), 4 + 3 + 2);
    assert_eq!(named::dynkin_e(q, 6).unwrap().coxeter_polynomial().unwrap().len(), 7);
}
