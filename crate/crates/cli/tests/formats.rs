use std::path::{Path, PathBuf};
use std::sync::Arc;

use derizero::algebra::named;
use derizero::complexes::ProjComplex;
use derizero::exactlin::{PrimeField, Rationals};
use derizero::modules::{is_isomorphic, Module};
use derizero::sample::random_complex;
use derizero::trivext::trivial_extension;
use derizero_cli::formats::*;
use derizero_cli::run;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn parse_err(text: &str) -> ParseError {
    match parse_algebra("t.alg", text) {
        Err(e) => e,
        Ok(_) => panic!("accepted {text:?}"),
    }
}

#[test]
fn algebra_matches_named() {
    let text = "FIELD Q\nVERTEX 1\nVERTEX 2\nVERTEX 3\nARROW a1 1 2\nARROW a2 2 3\n";
    let AnyAlgebra::Q(l) = parse_algebra("a3", text).unwrap() else { panic!() };
    assert_eq!(*l.algebra, named::linear_a(Rationals, 3).unwrap());
}

#[test]
fn relations_with_coefficients() {
    let text = "FIELD GF 5 # comment\nVERTEX 1\nVERTEX 2\nVERTEX 3\nVERTEX 4\n\
                ARROW a 1 2\nARROW b 2 4\nARROW c 1 3\nARROW d 3 4\nRELATION 2*a.b - 3/2*c.d\n";
    let AnyAlgebra::P(l) = parse_algebra("sq", text).unwrap() else { panic!() };
    assert_eq!(l.algebra.dim(), 9);
    let text = "FIELD Q\nVERTEX 1\nARROW x 1 1\nRELATION -x.x\n";
    assert!(matches!(parse_algebra("d", text).unwrap(), AnyAlgebra::Q(l) if l.algebra.dim() == 2));
}

#[test]
fn algebra_errors_have_positions() {
    let e = parse_err("FIELD Q\nVERTEX 1\nARROW a 1 2\n");
    assert_eq!((e.line, e.col), (3, 11), "{e}");
    let e = parse_err("FIELD Q\nVERTEX 1\nLOOP x 1\n");
    assert_eq!((e.line, e.col), (3, 1));
    assert!(e.message.contains("unknown directive"));
    let e = parse_err("VERTEX 1\n");
    assert_eq!((e.line, e.col), (1, 1));
    let e = parse_err("FIELD GF 6\nVERTEX 1\n");
    assert_eq!((e.line, e.col), (1, 10));
    let e = parse_err("FIELD Q\nVERTEX 1\nARROW x 1 1\nRELATION x.y\n");
    assert_eq!((e.line, e.col), (4, 10));
    let e = parse_err("FIELD Q\nVERTEX 1\nARROW x 1 1\nRELATION x.x +\n");
    assert_eq!(e.line, 4);
    let e = parse_err("FIELD Q\nVERTEX 1\nARROW x 1 1\nRELATION q*x.x\n");
    assert!(e.message.contains("coefficient"));
    let e = parse_err("FIELD Q\n  VERTEX 1 2\n");
    assert_eq!((e.line, e.col), (2, 12));
    assert_eq!(e.to_string(), "t.alg:2:12: VERTEX expects 1 arguments");
}

#[test]
fn dump_round_trip() {
    for a in [named::linear_a(Rationals, 3).unwrap(), named::kronecker(Rationals).unwrap()] {
        let t = trivial_extension(&Arc::new(a)).unwrap();
        let text = write_dump(t.algebra(), t.graded.degrees());
        let AnyAlgebra::Q(l) = parse_any("dump", &text).unwrap() else { panic!() };
        assert_eq!(*l.algebra, **t.algebra());
        assert_eq!(l.degrees.as_deref(), Some(t.graded.degrees()));
        assert_eq!(write_dump(&l.algebra, l.degrees.as_ref().unwrap()), text);
    }
    let bad = "DERIZERO-ALG v1\nFIELD Q\nVERTEX 1\nBASIS e 1 1 0\nIDEMPOTENT 0\nPRODUCT 0 0 1 1\n";
    let e = parse_dump("bad", bad).unwrap_err();
    assert_eq!((e.line, e.col), (6, 13));
    assert!(parse_dump("v2", "DERIZERO-ALG v2\n").is_err());
}

#[test]
fn module_files() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a2.alg", "FIELD Q\nVERTEX 1\nVERTEX 2\nARROW a1 1 2\n");
    let m = write(dir.path(), "p.mod", "MODULE over a2.alg\nDIM 1 1\nDIM 2 1\nMAP a1 1\nDEG 1 3\n");
    let AnyModule::Q(pm) = parse_module(&m).unwrap() else { panic!() };
    let p = Module::projective(pm.loaded.algebra.clone(), 0);
    assert!(is_isomorphic(&pm.module, &p).unwrap());
    assert_eq!(pm.degrees, Some(vec![0, 3]));
    let bad = write(dir.path(), "b.mod", "MODULE over a2.alg\nDIM 1 2\nDIM 2 1\nMAP a1 1 ; 0\n");
    let e = parse_module(&bad).unwrap_err();
    assert_eq!((e.line, e.col), (4, 8), "{e}");
    let missing = write(dir.path(), "c.mod", "MODULE over nowhere.alg\n");
    assert!(parse_module(&missing).is_err());
}

#[test]
fn complex_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "d.alg", "FIELD GF 3\nVERTEX 1\nVERTEX 2\nARROW a1 1 2\nARROW a2 2 1\nRELATION a1.a2\n");
    let AnyAlgebra::P(l) = load_algebra(&dir.path().join("d.alg")).unwrap() else { panic!() };
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 0..30 {
        let x: ProjComplex<PrimeField> = random_complex(&l.algebra, &mut rng, 3, 2, 1);
        let text = write_complex(&x, "d.alg");
        let p = write(dir.path(), &format!("x{k}.cpx"), &text);
        let AnyComplex::P(y) = parse_complex(&p).unwrap() else { panic!() };
        let text2 = write_complex(&y.complex, "d.alg");
        assert_eq!(text, text2);
        assert_eq!(y.complex.width(), x.width());
        assert_eq!(y.complex.total_dim(), x.total_dim());
    }
}

#[test]
fn complex_errors() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a2.alg", "FIELD Q\nVERTEX 1\nVERTEX 2\nARROW a 1 2\n");
    let cases = [
        ("COMPLEX over a2.alg\nTERM 0 0 1\nTERM 1 1 0\nDIFF 0 [0 1 0]\n", 4),
        ("COMPLEX over a2.alg\nTERM 0 0 1\nTERM 1 1 0\nDIFF 0 [0 0]\n", 4),
        ("COMPLEX over a2.alg\nTERM 0 0 1 1\n", 2),
        ("COMPLEX over a2.alg\nTERM 0 0 1\nDIFF 3 0\n", 3),
        ("MODULE over a2.alg\n", 1),
    ];
    for (k, (text, line)) in cases.iter().enumerate() {
        let p = write(dir.path(), &format!("e{k}.cpx"), text);
        let e = parse_complex(&p).unwrap_err();
        assert_eq!(e.line, *line, "{e}");
        let out = run(["derizero", "minimize", p.to_str().unwrap()]);
        assert_eq!(out.code, 64);
        assert!(out.stderr.contains(&format!(":{line}:")), "{}", out.stderr);
    }
    let p = write(dir.path(), "dd.cpx", "COMPLEX over a2.alg\nTERM 0 0 1\nTERM 1 1 0\nTERM 2 1 0\nDIFF 0 [0 0 1]\nDIFF 1 [1 0 0]\n");
    assert!(parse_complex(&p).unwrap_err().message.contains("d . d"));
}
