use std::sync::Arc;

use derizero::algebra::QuiverPresentation;
use derizero::exactlin::{parse_scalar, Field, Rationals};

use super::{field_directive, AnyAlgebra, FieldChoice, Line, Loaded, ParseError, Source};

/// Parse a quiver presentation:
///
/// ```text
/// FIELD Q            # or FIELD GF 5
/// VERTEX 1
/// VERTEX 2
/// ARROW a 1 2
/// RELATION a.b - 2*c.d
/// ```
pub fn parse_algebra(name: &str, text: &str) -> Result<AnyAlgebra, ParseError> {
    let src = Source::new(name, text, &[]);
    let Some(first) = src.lines.first() else {
        return Err(src.whole("empty algebra file"));
    };
    if first.tokens[0].text != "FIELD" {
        return Err(src.at(first, 0, "the first directive must be FIELD"));
    }
    match field_directive(&src, first)? {
        FieldChoice::Q => Ok(AnyAlgebra::Q(build(&src, Rationals)?)),
        FieldChoice::P(p) => Ok(AnyAlgebra::P(build(&src, p)?)),
    }
}

fn build<F: Field>(src: &Source, field: F) -> Result<Loaded<F>, ParseError> {
    let mut pres = QuiverPresentation::new(field);
    for line in &src.lines[1..] {
        match line.tokens[0].text.as_str() {
            "FIELD" => return Err(src.at(line, 0, "FIELD may appear only once")),
            "VERTEX" => {
                src.arity(line, 2)?;
                pres.add_vertex(&line.tokens[1].text).map_err(|e| src.at(line, 1, e.to_string()))?;
            }
            "ARROW" => {
                src.arity(line, 4)?;
                let s = vertex(src, &pres, line, 2)?;
                let t = vertex(src, &pres, line, 3)?;
                pres.add_arrow(&line.tokens[1].text, s, t).map_err(|e| src.at(line, 1, e.to_string()))?;
            }
            "RELATION" => {
                let terms = relation(src, &pres, line)?;
                pres.add_relation(terms).map_err(|e| src.at(line, 1, e.to_string()))?;
            }
            other => return Err(src.at(line, 0, format!("unknown directive {other}"))),
        }
    }
    if pres.vertices.is_empty() {
        return Err(src.whole("no vertices"));
    }
    let alg = pres.build().map_err(|e| src.whole(e.to_string()))?;
    Ok(Loaded { algebra: Arc::new(alg), degrees: None })
}

fn vertex<F: Field>(src: &Source, pres: &QuiverPresentation<F>, line: &Line, tok: usize) -> Result<usize, ParseError> {
    let name = &line.tokens[tok].text;
    pres.vertex_index(name).ok_or_else(|| src.at(line, tok, format!("unknown vertex {name}")))
}

/// `RELATION [-]term (+|- term)*` where a term is `[coeff*]a1.a2...`.
fn relation<F: Field>(
    src: &Source,
    pres: &QuiverPresentation<F>,
    line: &Line,
) -> Result<Vec<(F::Elem, Vec<usize>)>, ParseError> {
    let f = pres.field;
    let mut terms = Vec::new();
    let mut sign = f.one();
    let mut expect_term = true;
    for (k, tok) in line.tokens.iter().enumerate().skip(1) {
        let t = tok.text.as_str();
        if t == "+" || t == "-" {
            if k == 1 || !expect_term {
                if t == "-" {
                    sign = f.neg(&sign);
                }
                expect_term = true;
                continue;
            }
            return Err(src.at(line, k, "unexpected sign"));
        }
        if !expect_term {
            return Err(src.at(line, k, "expected + or - between terms"));
        }
        let (coeff, path) = match t.rsplit_once('*') {
            Some((c, p)) => {
                let c = parse_scalar(&f, c).ok_or_else(|| src.at(line, k, format!("invalid coefficient {c}")))?;
                (c, p)
            }
            None => match t.strip_prefix('-') {
                Some(p) => (f.neg(&f.one()), p),
                None => (f.one(), t),
            },
        };
        let mut arrows = Vec::new();
        for a in path.split('.') {
            arrows.push(pres.arrow_index(a).ok_or_else(|| src.at(line, k, format!("unknown arrow {a}")))?);
        }
        terms.push((f.mul(&sign, &coeff), arrows));
        sign = f.one();
        expect_term = false;
    }
    if terms.is_empty() || expect_term {
        return Err(src.at(line, line.tokens.len(), "incomplete relation"));
    }
    Ok(terms)
}
