//! Acceptance criteria. Runs as a plain binary so that the per-criterion
//! lines are always printed; exits nonzero when any criterion fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use derizero::algebra::{named, Algebra};
use derizero::complexes::*;
use derizero::derdim::{crosscheck_trivext, decide_derdim_zero, FilterFailure, Outcome};
use derizero::exactlin::{Field, PrimeField, Rationals};
use derizero::graded::*;
use derizero::modules::{gldim, krull_schmidt, same_iso_classes, GlobalDimension, Module};
use derizero::sample::{random_complex, random_graded_module, random_minimal_complex, random_module};
use derizero::trivext::{check_selfinjective, trivial_extension, SelfInjectivity};
use derizero_cli::corpus::{default_dir, load_manifest};
use derizero_cli::formats::load_algebra;
use derizero_cli::with_field;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Runtime limits, in seconds, for the timed criteria.
const CENSUS_LIMIT: u64 = 60;
const VERDICT_LIMIT: u64 = 120;

const GRADED_SAMPLES: usize = 500;
const COMPLEX_SAMPLES: usize = 500;
const HTP_SAMPLES: usize = 200;
const KS_SAMPLES: usize = 200;
const CORPUS_ALGEBRAS: usize = 20;

type Check = Result<String, String>;

fn gf(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn arc<F: Field>(a: derizero::Result<Algebra<F>>) -> Arc<Algebra<F>> {
    Arc::new(a.unwrap())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: derizero::Error) -> String {
    e.to_string()
}

fn census_counts() -> Check {
    let f = gf(2);
    let cases = [
        ("kA_2", arc(named::linear_a(f, 2)), 3),
        ("kA_3", arc(named::linear_a(f, 3)), 6),
        ("k", arc(named::semisimple(f, 1)), 1),
    ];
    let mut out = Vec::new();
    for (name, a, want) in cases {
        let t = Instant::now();
        let c = census_indecomposables(&a, 3, 2).map_err(err)?;
        let secs = t.elapsed();
        ensure(c.len() == want, || format!("{name}: {} classes, expected {want}", c.len()))?;
        ensure(secs < Duration::from_secs(CENSUS_LIMIT), || format!("{name}: took {secs:.1?}"))?;
        out.push(format!("{name}={} ({secs:.1?})", c.len()));
    }
    Ok(out.join(", "))
}

fn verdicts() -> Check {
    let f = gf(2);
    let t = Instant::now();
    let mut out = Vec::new();
    for (name, a) in [
        ("kA_2", arc(named::linear_a(f, 2))),
        ("kA_3", arc(named::linear_a(f, 3))),
        ("kxk", arc(named::semisimple(f, 2))),
    ] {
        let v = decide_derdim_zero(&a, 3, 2, f).map_err(err)?;
        ensure(matches!(v.outcome, Outcome::Zero { .. }), || format!("{name}: {}", v.label()))?;
        out.push(format!("{name} Zero"));
    }
    let v = decide_derdim_zero(&arc(named::truncated_polynomial(f, 2)), 3, 2, f).map_err(err)?;
    ensure(matches!(v.outcome, Outcome::Positive(FilterFailure::InfiniteGlobalDimension { .. })), || {
        format!("dual numbers: {:?}", v.outcome)
    })?;
    out.push("k[x]/(x^2) Positive".into());
    let v = decide_derdim_zero(&arc(named::kronecker(f)), 3, 2, f).map_err(err)?;
    ensure(matches!(v.outcome, Outcome::Positive(FilterFailure::CoxeterNotDynkin { .. })), || {
        format!("Kronecker: {:?}", v.outcome)
    })?;
    out.push("Kronecker Positive".into());
    let secs = t.elapsed();
    ensure(secs < Duration::from_secs(VERDICT_LIMIT), || format!("took {secs:.1?}"))?;
    Ok(format!("{} ({secs:.1?})", out.join(", ")))
}

fn t_of<F: Field>(a: Algebra<F>) -> Arc<GradedAlgebra<F>> {
    trivial_extension(&Arc::new(a)).unwrap().graded
}

fn dichotomy_over<F: Field>(g: &Arc<GradedAlgebra<F>>, seed: u64) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    for i in 0..GRADED_SAMPLES {
        let m = random_graded_module(g, &mut rng);
        if m.is_zero() || is_graded_projective(&m).map_err(err)? {
            continue;
        }
        checked += 1;
        match lowest_degree_report(&m).map_err(err)? {
            LowestDegree::Violation { reason } => return Err(format!("sample {i}: {reason}")),
            LowestDegree::BranchEqual { pd_bot: Some(p), pd_bot_syzygy, .. } if p > 0 => {
                ensure(pd_bot_syzygy == Some(p - 1), || format!("sample {i}: pd {p} -> {pd_bot_syzygy:?}"))?;
            }
            _ => {}
        }
    }
    Ok(checked)
}

fn lowest_degree_dichotomy() -> Check {
    let a = dichotomy_over(&t_of(named::semisimple(gf(3), 1).unwrap()), 1)?;
    let b = dichotomy_over(&t_of(named::linear_a(Rationals, 2).unwrap()), 2)?;
    let flat = Arc::new(GradedAlgebra::trivial(arc(named::truncated_polynomial(gf(5), 2))).unwrap());
    let c = dichotomy_over(&flat, 3)?;
    Ok(format!("non-projective samples checked: T(k) {a}, T(kA_2) {b}, k[x]/(x^2) {c}"))
}

fn escape_bounds() -> Check {
    let mut notes = Vec::new();
    for (name, g) in [
        ("T(k)", t_of(named::semisimple(Rationals, 1).unwrap())),
        ("T(kA_2)", t_of(named::linear_a(Rationals, 2).unwrap())),
    ] {
        for v in 0..g.algebra().num_vertices() {
            for d in -2..=2 {
                let r = syzygy_orbit(&GradedModule::simple(&g, v, d), 40).map_err(err)?;
                ensure(r.conservative_bound_holds() == Some(true), || {
                    format!("{name} S_{}<{d}>: escape {:?} above {}", v + 1, r.first_escape, r.conservative_bound)
                })?;
                if d == 0 && r.literal_bound_holds() == Some(false) {
                    notes.push(format!(
                        "{name} S_{}: literal bound {} violated by first escape {}",
                        v + 1,
                        r.literal_bound,
                        r.first_escape.unwrap()
                    ));
                }
            }
        }
    }
    let tk = t_of(named::semisimple(Rationals, 1).unwrap());
    let e1 = syzygy_orbit(&GradedModule::simple(&tk, 0, 0), 10).map_err(err)?.first_escape;
    let ta2 = t_of(named::linear_a(Rationals, 2).unwrap());
    let r2 = syzygy_orbit(&GradedModule::simple(&ta2, 0, 0), 10).map_err(err)?;
    ensure(e1 == Some(1), || format!("T(k): first escape {e1:?}"))?;
    ensure(r2.first_escape == Some(2), || format!("T(kA_2) S_1: first escape {:?}", r2.first_escape))?;
    ensure(r2.literal_bound_holds() == Some(false), || "T(kA_2) S_1: literal bound not violated".into())?;
    Ok(format!("escapes 1 and 2 reproduced; {}", notes.join("; ")))
}

/// Each term summand of `x` meets exactly one nonzero entry, and that
/// entry is the identity of a projective.
fn is_sum_of_identity_cones<F: Field>(x: &ProjComplex<F>) -> bool {
    let alg = x.algebra();
    let f = alg.field();
    let mut hits: Vec<Vec<usize>> = x.terms().iter().map(|t| vec![0; t.len()]).collect();
    for (i, d) in x.differentials().iter().enumerate() {
        for r in 0..d.target().len() {
            for c in 0..d.source().len() {
                let e = d.entry(r, c);
                if e.iter().all(|a| f.is_zero(a)) {
                    continue;
                }
                let v = d.source()[c];
                if d.target()[r] != v {
                    return false;
                }
                let mut id = alg.zero_element();
                id[alg.idempotent(v)] = f.one();
                if e != id.as_slice() {
                    return false;
                }
                hits[i][c] += 1;
                hits[i + 1][r] += 1;
            }
        }
    }
    hits.iter().flatten().all(|&h| h == 1)
}

fn check_minimal_decomposition<F: Field>(a: &Arc<Algebra<F>>, rng: &mut ChaCha8Rng, n: usize) -> Result<(), String> {
    let f = a.field();
    for i in 0..n {
        let width = rng.random_range(1..=4);
        let cones = rng.random_range(0..=2);
        let x = random_complex(a, rng, width, 2, cones);
        let md = minimal_decomposition(&x);
        let sum = md.minimal.direct_sum(&md.contractible);
        let ok = md.to_sum.is_chain_map(&x, &sum)
            && md.from_sum.is_chain_map(&sum, &x)
            && md.to_sum.then(&md.from_sum).to_matrix(f).is_identity()
            && md.from_sum.then(&md.to_sum).to_matrix(f).is_identity();
        ensure(ok, || format!("sample {i}: witnesses are not inverse chain maps"))?;
        ensure(md.minimal.is_minimal(), || format!("sample {i}: minimal part is not minimal"))?;
        ensure(is_sum_of_identity_cones(&md.contractible), || format!("sample {i}: contractible part has a bad shape"))?;
        ensure(x.is_minimal() == md.contractible.is_zero(), || format!("sample {i}: minimality test disagrees"))?;
    }
    Ok(())
}

fn minimal_decompositions() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let per = |k: usize| COMPLEX_SAMPLES / 3 + usize::from(k < COMPLEX_SAMPLES % 3);
    check_minimal_decomposition(&arc(named::linear_a(Rationals, 2)), &mut rng, per(0)).map_err(|e| format!("kA_2: {e}"))?;
    check_minimal_decomposition(&arc(named::linear_a(gf(2), 3)), &mut rng, per(1)).map_err(|e| format!("kA_3: {e}"))?;
    check_minimal_decomposition(&arc(named::truncated_polynomial(gf(3), 2)), &mut rng, per(2))
        .map_err(|e| format!("k[x]/(x^2): {e}"))?;
    Ok(format!("{COMPLEX_SAMPLES} complexes"))
}

fn htp_nilpotency_over<F: Field>(a: &Arc<Algebra<F>>, rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let bound = a.loewy_length() + 1;
    let mut worst = 0;
    for i in 0..HTP_SAMPLES {
        let width = rng.random_range(1..=4);
        let x = random_minimal_complex(a, rng, width, 2);
        let e = htp_ideal(&x).nilpotency_exponent;
        ensure(e.is_some_and(|e| e <= bound), || format!("sample {i}: exponent {e:?}, bound {bound}"))?;
        worst = worst.max(e.unwrap());
    }
    Ok(worst)
}

fn htp_nilpotency() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let a = htp_nilpotency_over(&arc(named::linear_a(gf(2), 2)), &mut rng).map_err(|e| format!("kA_2: {e}"))?;
    let b = htp_nilpotency_over(&arc(named::linear_a(Rationals, 3)), &mut rng).map_err(|e| format!("kA_3: {e}"))?;
    let c = htp_nilpotency_over(&arc(named::truncated_polynomial(gf(3), 2)), &mut rng)
        .map_err(|e| format!("k[x]/(x^2): {e}"))?;
    Ok(format!("largest exponents: kA_2 {a}, kA_3 {b}, k[x]/(x^2) {c}"))
}

fn modules_agree<F: Field>(m: &Module<F>) -> Result<bool, String> {
    let a = krull_schmidt(m, 0).map_err(err)?;
    let b = krull_schmidt(m, 1).map_err(err)?;
    same_iso_classes(&a.summands, &b.summands).map_err(err)
}

fn complexes_agree<F: Field>(x: &ProjComplex<F>) -> Result<bool, String> {
    let a = ks_decompose_complex(x, 0).map_err(err)?;
    let b = ks_decompose_complex(x, 1).map_err(err)?;
    if a.pieces.len() != b.pieces.len() {
        return Ok(false);
    }
    for p in &a.pieces {
        let mut n = 0;
        for q in &a.pieces {
            n += find_complex_isomorphism(p, q, 0).map_err(err)?.is_some() as usize;
        }
        let mut m = 0;
        for q in &b.pieces {
            m += find_complex_isomorphism(p, q, 0).map_err(err)?.is_some() as usize;
        }
        if n != m {
            return Ok(false);
        }
    }
    Ok(true)
}

fn krull_schmidt_uniqueness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let q = [arc(named::linear_a(Rationals, 3)), arc(named::truncated_polynomial(Rationals, 3))];
    let p = [arc(named::kronecker(gf(2))), arc(named::linear_a_rad_square_zero(gf(3), 3))];
    for i in 0..KS_SAMPLES {
        let ok = if i % 2 == 0 {
            let m = random_module(&q[i / 2 % 2], &mut rng);
            let n = random_module(&q[i / 2 % 2], &mut rng);
            modules_agree(&m.direct_sum(&n))?
        } else {
            let m = random_module(&p[i / 2 % 2], &mut rng);
            let n = random_module(&p[i / 2 % 2], &mut rng);
            modules_agree(&m.direct_sum(&n))?
        };
        ensure(ok, || format!("module sample {i}: seeds disagree"))?;
    }
    let a2 = arc(named::linear_a(gf(2), 2));
    let a3 = arc(named::linear_a(Rationals, 3));
    let d = arc(named::truncated_polynomial(gf(3), 2));
    for i in 0..KS_SAMPLES {
        let width = rng.random_range(1..=3);
        let ok = match i % 3 {
            0 => complexes_agree(&random_complex(&a2, &mut rng, width, 2, 1))?,
            1 => complexes_agree(&random_complex(&a3, &mut rng, width, 1, 1))?,
            _ => complexes_agree(&random_complex(&d, &mut rng, width, 2, 1))?,
        };
        ensure(ok, || format!("complex sample {i}: seeds disagree"))?;
    }
    Ok(format!("{KS_SAMPLES} modules, {KS_SAMPLES} complexes"))
}

fn truncations_over<F: Field>(a: &Arc<Algebra<F>>) -> Result<(), String> {
    for v in 0..a.num_vertices() {
        let res = minimal_resolution(&Module::simple(a.clone(), v), 5).map_err(err)?;
        for m in 0..=4 {
            let t = res.brutal_truncate(m);
            ensure(is_indecomposable_complex(&t, 0).map_err(err)?, || format!("S_{} truncated at -{m}", v + 1))?;
        }
    }
    Ok(())
}

fn truncations_and_strong_gldim() -> Check {
    let f = gf(2);
    let a2 = arc(named::linear_a(f, 2));
    let dual = arc(named::truncated_polynomial(f, 2));
    truncations_over(&a2).map_err(|e| format!("kA_2: {e}"))?;
    truncations_over(&arc(named::linear_a(f, 3))).map_err(|e| format!("kA_3: {e}"))?;
    truncations_over(&dual).map_err(|e| format!("k[x]/(x^2): {e}"))?;
    let s = strong_gldim_search(&a2, 4, 2).map_err(err)?;
    ensure(matches!(s, StrongGlobalDimension::ExactUpTo { width: 2, .. }), || format!("kA_2: {s:?}"))?;
    let s = strong_gldim_search(&arc(named::semisimple(f, 1)), 4, 2).map_err(err)?;
    ensure(matches!(s, StrongGlobalDimension::ExactUpTo { width: 2, .. }), || format!("k: {s:?}"))?;
    for cap in 2..=6 {
        let s = strong_gldim_search(&dual, cap, 2).map_err(err)?;
        ensure(matches!(s, StrongGlobalDimension::LowerBound { width, .. } if width == cap), || {
            format!("k[x]/(x^2) at cap {cap}: width {}", s.width())
        })?;
    }
    let gd = gldim(&dual, 8).map_err(err)?;
    ensure(matches!(gd, GlobalDimension::InfiniteCertified { .. }), || format!("k[x]/(x^2): {gd:?}"))?;
    Ok("kA_2 = 2, k = 2, k[x]/(x^2) reaches every cap up to 6 and has infinite global dimension".into())
}

fn trivial_extensions_of_corpus() -> Check {
    let dir = default_dir();
    let m = load_manifest(&dir.join("manifest.toml"))?;
    let mut n = 0;
    for e in m.entries.iter().take(CORPUS_ALGEBRAS) {
        let loaded = load_algebra(&dir.join(&e.file)).map_err(|x| x.to_string())?;
        let res: Result<(), String> = with_field!(loaded, l => {
            let a = l.algebra;
            let t = trivial_extension(&a).map_err(err)?;
            ensure(t.algebra().dim() == 2 * a.dim(), || "dimension is not doubled".into())?;
            ensure(t.verify_pairing(), || "pairing check failed".into())?;
            ensure(
                check_selfinjective(t.algebra()).map_err(err)? == SelfInjectivity::SelfInjective,
                || "not self-injective".into(),
            )?;
            ensure(t.degree_zero_matches_base(), || "degree-0 part differs".into())
        });
        res.map_err(|x| format!("{}: {x}", e.name))?;
        n += 1;
    }
    ensure(n == CORPUS_ALGEBRAS, || format!("only {n} corpus algebras"))?;
    Ok(format!("{n} algebras"))
}

fn trivext_crosscheck() -> Check {
    let f = gf(2);
    let a2 = arc(named::linear_a(f, 2));
    let c = crosscheck_trivext(&a2, 4, f).map_err(err)?;
    ensure(c.census_saturated && c.consistent, || format!("T(kA_2): {c:?}"))?;
    let c_a2_orbits = c.orbits.len();
    let v = decide_derdim_zero(&a2, 3, 2, f).map_err(err)?;
    ensure(matches!(v.outcome, Outcome::Zero { .. }), || format!("kA_2 verdict {}", v.label()))?;
    let k = arc(named::semisimple(f, 1));
    let c = crosscheck_trivext(&k, 3, f).map_err(err)?;
    ensure(c.census_size == 3 && c.census_saturated, || format!("T(k): {} classes", c.census_size))?;
    let w = window_census(&trivial_extension(&k).unwrap().graded, 3).map_err(err)?;
    ensure(w.classes.iter().all(|m| m.degrees().contains(&0)), || "T(k): class without degree 0".into())?;
    Ok(format!("T(kA_2) saturated with {} escaping orbits; T(k) has 3 classes", c_a2_orbits))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("census counts", census_counts),
        ("derived dimension verdicts", verdicts),
        ("lowest degree dichotomy", lowest_degree_dichotomy),
        ("syzygy escape bounds", escape_bounds),
        ("minimal decompositions", minimal_decompositions),
        ("homotopy ideal nilpotency", htp_nilpotency),
        ("Krull-Schmidt uniqueness", krull_schmidt_uniqueness),
        ("truncations and strong global dimension", truncations_and_strong_gldim),
        ("trivial extensions of the corpus", trivial_extensions_of_corpus),
        ("trivial extension cross-check", trivext_crosscheck),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = std::panic::catch_unwind(run).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("criterion {}: PASS {name} [{secs:.1}s] {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} [{secs:.1}s] {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
