use std::fmt::Write;
use std::sync::Arc;

use derizero::algebra::{Algebra, BasisElement};
use derizero::exactlin::{Field, Rationals};

use super::{field_directive, AnyAlgebra, FieldChoice, Loaded, ParseError, Source};

pub const DUMP_HEADER: &str = "DERIZERO-ALG v1";

/// Structure-constant dump, version 1:
///
/// ```text
/// DERIZERO-ALG v1
/// FIELD Q
/// VERTEX <name>                      # in order
/// BASIS <name> <source> <target> <degree>
/// IDEMPOTENT <basis-index>           # one per vertex, in vertex order
/// PRODUCT <i> <j> <k> <coeff>        # b_i * b_j has coefficient coeff on b_k
/// ```
///
/// Indices are 0-based positions among the BASIS lines.
pub fn write_dump<F: Field>(alg: &Algebra<F>, degrees: &[u32]) -> String {
    let f = alg.field();
    let mut out = String::new();
    writeln!(out, "{DUMP_HEADER}").unwrap();
    match f.spec() {
        derizero::exactlin::FieldSpec::Rationals => writeln!(out, "FIELD Q").unwrap(),
        derizero::exactlin::FieldSpec::PrimeField(p) => writeln!(out, "FIELD GF {p}").unwrap(),
    }
    for v in alg.vertices() {
        writeln!(out, "VERTEX {v}").unwrap();
    }
    for (b, d) in alg.basis().iter().zip(degrees) {
        writeln!(out, "BASIS {} {} {} {}", b.name, alg.vertices()[b.source], alg.vertices()[b.target], d).unwrap();
    }
    for &e in alg.idempotents() {
        writeln!(out, "IDEMPOTENT {e}").unwrap();
    }
    let n = alg.dim();
    for i in 0..n {
        for j in 0..n {
            for (k, c) in alg.product(i, j) {
                writeln!(out, "PRODUCT {i} {j} {k} {}", f.format(c)).unwrap();
            }
        }
    }
    out
}

pub fn parse_dump(name: &str, text: &str) -> Result<AnyAlgebra, ParseError> {
    let src = Source::new(name, text, &[]);
    let header = &src.lines[0];
    if header.tokens.len() != 2 || header.tokens[1].text != "v1" {
        return Err(src.at(header, 1, "unsupported dump version"));
    }
    let Some(line) = src.lines.get(1).filter(|l| l.tokens[0].text == "FIELD") else {
        return Err(src.error(header.number + 1, 1, "expected FIELD after the header"));
    };
    match field_directive(&src, line)? {
        FieldChoice::Q => Ok(AnyAlgebra::Q(build(&src, Rationals)?)),
        FieldChoice::P(p) => Ok(AnyAlgebra::P(build(&src, p)?)),
    }
}

fn build<F: Field>(src: &Source, field: F) -> Result<Loaded<F>, ParseError> {
    let mut vertices: Vec<String> = Vec::new();
    let mut basis = Vec::new();
    let mut degrees = Vec::new();
    let mut idempotents = Vec::new();
    let mut entries = Vec::new();
    for line in &src.lines[2..] {
        match line.tokens[0].text.as_str() {
            "VERTEX" => {
                src.arity(line, 2)?;
                vertices.push(line.tokens[1].text.clone());
            }
            "BASIS" => {
                src.arity(line, 5)?;
                let v = |k: usize| {
                    vertices
                        .iter()
                        .position(|x| *x == line.tokens[k].text)
                        .ok_or_else(|| src.at(line, k, format!("unknown vertex {}", line.tokens[k].text)))
                };
                basis.push(BasisElement { name: line.tokens[1].text.clone(), source: v(2)?, target: v(3)? });
                degrees.push(src.integer::<u32>(line, 4)?);
            }
            "IDEMPOTENT" => {
                src.arity(line, 2)?;
                idempotents.push(src.integer::<usize>(line, 1)?);
            }
            "PRODUCT" => {
                src.arity(line, 5)?;
                let n = basis.len();
                let idx = |k: usize| -> Result<usize, ParseError> {
                    let i: usize = src.integer(line, k)?;
                    if i >= n {
                        return Err(src.at(line, k, "basis index out of range"));
                    }
                    Ok(i)
                };
                entries.push((idx(1)?, idx(2)?, idx(3)?, src.scalar(&field, line, 4)?));
            }
            other => return Err(src.at(line, 0, format!("unknown directive {other}"))),
        }
    }
    let n = basis.len();
    let mut products = vec![Vec::new(); n * n];
    for (i, j, k, c) in entries {
        products[i * n + j].push((k, c));
    }
    let alg = Algebra::from_parts(field, vertices, basis, idempotents, products).map_err(|e| src.whole(e.to_string()))?;
    Ok(Loaded { algebra: Arc::new(alg), degrees: Some(degrees) })
}
