use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::Path;

use derizero::complexes::{ProjComplex, ProjMap};
use derizero::exactlin::Field;

use super::{load_algebra, relative, AnyAlgebra, Line, Loaded, ParseError, Source};

#[derive(Clone, Debug)]
pub struct ParsedComplex<F: Field> {
    pub loaded: Loaded<F>,
    pub complex: ProjComplex<F>,
    /// The algebra path as written in the file.
    pub over: String,
}

#[derive(Clone, Debug)]
pub enum AnyComplex {
    Q(ParsedComplex<derizero::exactlin::Rationals>),
    P(ParsedComplex<derizero::exactlin::PrimeField>),
}

/// Complex file:
///
/// ```text
/// COMPLEX over ka2.alg
/// TERM 0 0 1                  # multiplicity of P_v for each vertex v
/// TERM 1 1 0
/// DIFF 0 [0 0 1]              # block matrix, rows separated by ';'
/// ```
///
/// `DIFF n` maps the term in position `n` to position `n + 1`; its rows
/// index the summands of the target and its columns those of the source.
/// Each entry is a coefficient list over the basis of the algebra or `0`;
/// the entry in row `r`, column `c` acts by right multiplication.
pub fn parse_complex(path: &Path) -> Result<AnyComplex, ParseError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path)
        .map_err(|e| ParseError { source: name.clone(), line: 0, col: 0, message: e.to_string() })?;
    let src = Source::new(&name, &text, &[';', '[', ']', ',']);
    let Some(first) = src.lines.first() else {
        return Err(src.whole("empty complex file"));
    };
    if first.tokens[0].text != "COMPLEX" || first.tokens.get(1).map(|t| t.text.as_str()) != Some("over") {
        return Err(src.at(first, 0, "the first directive must be COMPLEX over <algebra-file>"));
    }
    src.arity(first, 3)?;
    let alg = load_algebra(&relative(path, &first.tokens[2].text))?;
    Ok(match alg {
        AnyAlgebra::Q(l) => AnyComplex::Q(build(&src, l, &first.tokens[2].text)?),
        AnyAlgebra::P(l) => AnyComplex::P(build(&src, l, &first.tokens[2].text)?),
    })
}

fn build<F: Field>(src: &Source, loaded: Loaded<F>, over: &str) -> Result<ParsedComplex<F>, ParseError> {
    let over = over.to_string();
    let alg = loaded.algebra.clone();
    let f = alg.field();
    let nv = alg.num_vertices();
    let mut terms: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    let mut diffs: BTreeMap<i64, &Line> = BTreeMap::new();
    for line in &src.lines[1..] {
        match line.tokens[0].text.as_str() {
            "TERM" => {
                src.arity(line, 2 + nv)?;
                let pos: i64 = src.integer(line, 1)?;
                let mut verts = Vec::new();
                for v in 0..nv {
                    let m: usize = src.integer(line, 2 + v)?;
                    verts.extend(std::iter::repeat_n(v, m));
                }
                if terms.insert(pos, verts).is_some() {
                    return Err(src.at(line, 1, "repeated TERM"));
                }
            }
            "DIFF" => {
                let pos: i64 = src.integer(line, 1)?;
                if diffs.insert(pos, line).is_some() {
                    return Err(src.at(line, 1, "repeated DIFF"));
                }
            }
            other => return Err(src.at(line, 0, format!("unknown directive {other}"))),
        }
    }
    if terms.is_empty() {
        return Ok(ParsedComplex { complex: ProjComplex::zero(alg), loaded, over });
    }
    let lo = *terms.keys().next().unwrap();
    let hi = *terms.keys().last().unwrap();
    let term = |n: i64| terms.get(&n).cloned().unwrap_or_default();
    if let Some((&n, line)) = diffs.iter().find(|(&n, _)| n < lo || n >= hi) {
        return Err(src.at(line, 1, format!("DIFF {n} has no target or source term")));
    }
    let mut maps = Vec::new();
    for n in lo..hi {
        let (s, t) = (term(n), term(n + 1));
        let d = match diffs.get(&n) {
            None => ProjMap::zero(&alg, &s, &t),
            Some(line) => {
                let entries = block_matrix(src, line, &f, alg.dim(), s.len(), t.len())?;
                ProjMap::from_entries(&alg, &s, &t, entries).map_err(|e| src.at(line, 2, e.to_string()))?
            }
        };
        maps.push(d);
    }
    let complex = ProjComplex::new(alg, lo, (lo..=hi).map(term).collect(), maps).map_err(|e| src.whole(e.to_string()))?;
    Ok(ParsedComplex { loaded, complex, over })
}

fn block_matrix<F: Field>(
    src: &Source,
    line: &Line,
    f: &F,
    dim: usize,
    cols: usize,
    rows: usize,
) -> Result<Vec<Vec<F::Elem>>, ParseError> {
    let mut out: Vec<Vec<Vec<F::Elem>>> = vec![Vec::new()];
    let mut k = 2;
    let toks = &line.tokens;
    while k < toks.len() {
        match toks[k].text.as_str() {
            ";" => {
                out.push(Vec::new());
                k += 1;
            }
            "," => k += 1,
            "[" => {
                let mut v = Vec::new();
                k += 1;
                while k < toks.len() && toks[k].text != "]" {
                    if toks[k].text != "," {
                        v.push(src.scalar(f, line, k)?);
                    }
                    k += 1;
                }
                if k == toks.len() {
                    return Err(src.at(line, k, "unclosed ["));
                }
                if v.len() != dim {
                    return Err(src.at(line, k, format!("entry needs {dim} coefficients, found {}", v.len())));
                }
                out.last_mut().unwrap().push(v);
                k += 1;
            }
            "0" => {
                out.last_mut().unwrap().push(vec![f.zero(); dim]);
                k += 1;
            }
            _ => return Err(src.at(line, k, "expected [coefficients], 0 or ;")),
        }
    }
    if out.len() == 1 && out[0].is_empty() {
        out.clear();
    }
    let ok = if rows == 0 || cols == 0 { out.is_empty() } else { out.len() == rows && out.iter().all(|r| r.len() == cols) };
    if !ok {
        return Err(src.at(line, 2, format!("expected a {rows} x {cols} block matrix")));
    }
    Ok(out.into_iter().flatten().collect())
}

/// Render a complex in the format read by [`parse_complex`].
pub fn write_complex<F: Field>(x: &ProjComplex<F>, algebra_file: &str) -> String {
    let alg = x.algebra();
    let f = alg.field();
    let mut out = String::new();
    writeln!(out, "COMPLEX over {algebra_file}").unwrap();
    for n in x.start()..x.end() {
        if x.is_zero() {
            break;
        }
        let m: Vec<String> = x.multiplicities(n).iter().map(|k| k.to_string()).collect();
        writeln!(out, "TERM {n} {}", m.join(" ")).unwrap();
    }
    for n in x.start()..x.end() - 1 {
        let d = x.differential(n);
        if d.is_zero() {
            continue;
        }
        let (rs, cs) = (sorted_order(d.target()), sorted_order(d.source()));
        let rows: Vec<String> = rs
            .iter()
            .map(|&r| {
                let es: Vec<String> = cs
                    .iter()
                    .map(|&c| {
                        let e = d.entry(r, c);
                        if e.iter().all(|a| f.is_zero(a)) {
                            "0".to_string()
                        } else {
                            let cs: Vec<String> = e.iter().map(|a| f.format(a)).collect();
                            format!("[{}]", cs.join(" "))
                        }
                    })
                    .collect();
                es.join(" ")
            })
            .collect();
        writeln!(out, "DIFF {n} {}", rows.join(" ; ")).unwrap();
    }
    out
}

/// Summand indices ordered by vertex, as in the TERM lines.
fn sorted_order(verts: &[usize]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..verts.len()).collect();
    idx.sort_by_key(|&i| verts[i]);
    idx
}
