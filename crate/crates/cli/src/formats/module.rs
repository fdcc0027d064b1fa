use std::path::Path;

use derizero::exactlin::{Field, Matrix};
use derizero::modules::Module;

use super::{load_algebra, relative, AnyAlgebra, Line, Loaded, ParseError, Source};

/// A module read from a file, with degrees when the file has `DEG` lines.
#[derive(Clone, Debug)]
pub struct ParsedModule<F: Field> {
    pub loaded: Loaded<F>,
    pub module: Module<F>,
    pub degrees: Option<Vec<i64>>,
}

#[derive(Clone, Debug)]
pub enum AnyModule {
    Q(ParsedModule<derizero::exactlin::Rationals>),
    P(ParsedModule<derizero::exactlin::PrimeField>),
}

/// Module file:
///
/// ```text
/// MODULE over ka2.alg
/// DIM 1 1
/// DIM 2 1
/// MAP a 1            # rows separated by ';', acting on column vectors
/// DEG 0 0            # optional: degree of basis vector 0
/// ```
///
/// The basis is ordered by vertex, then within each vertex.
pub fn parse_module(path: &Path) -> Result<AnyModule, ParseError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path)
        .map_err(|e| ParseError { source: name.clone(), line: 0, col: 0, message: e.to_string() })?;
    let src = Source::new(&name, &text, &[';']);
    let Some(first) = src.lines.first() else {
        return Err(src.whole("empty module file"));
    };
    if first.tokens[0].text != "MODULE" || first.tokens.get(1).map(|t| t.text.as_str()) != Some("over") {
        return Err(src.at(first, 0, "the first directive must be MODULE over <algebra-file>"));
    }
    src.arity(first, 3)?;
    let alg = load_algebra(&relative(path, &first.tokens[2].text))?;
    Ok(match alg {
        AnyAlgebra::Q(l) => AnyModule::Q(build(&src, l)?),
        AnyAlgebra::P(l) => AnyModule::P(build(&src, l)?),
    })
}

fn build<F: Field>(src: &Source, loaded: Loaded<F>) -> Result<ParsedModule<F>, ParseError> {
    let alg = loaded.algebra.clone();
    let f = alg.field();
    let nv = alg.num_vertices();
    let mut dims: Vec<Option<usize>> = vec![None; nv];
    let mut maps: Vec<Option<(&Line, Vec<Vec<F::Elem>>)>> = vec![None; alg.generators().len()];
    let mut degs: Vec<(&Line, usize, i64)> = Vec::new();
    for line in &src.lines[1..] {
        match line.tokens[0].text.as_str() {
            "DIM" => {
                src.arity(line, 3)?;
                let v = alg
                    .vertices()
                    .iter()
                    .position(|x| *x == line.tokens[1].text)
                    .ok_or_else(|| src.at(line, 1, format!("unknown vertex {}", line.tokens[1].text)))?;
                if dims[v].is_some() {
                    return Err(src.at(line, 1, "repeated DIM"));
                }
                dims[v] = Some(src.integer(line, 2)?);
            }
            "MAP" => {
                if line.tokens.len() < 2 {
                    return Err(src.at(line, 1, "MAP expects a generator name"));
                }
                let g = alg
                    .generators()
                    .iter()
                    .position(|&g| alg.basis()[g].name == line.tokens[1].text)
                    .ok_or_else(|| src.at(line, 1, format!("unknown generator {}", line.tokens[1].text)))?;
                if maps[g].is_some() {
                    return Err(src.at(line, 1, "repeated MAP"));
                }
                let mut rows = vec![Vec::new()];
                for k in 2..line.tokens.len() {
                    if line.tokens[k].text == ";" {
                        rows.push(Vec::new());
                    } else {
                        rows.last_mut().unwrap().push(src.scalar(&f, line, k)?);
                    }
                }
                if rows.len() == 1 && rows[0].is_empty() {
                    rows.clear();
                }
                maps[g] = Some((line, rows));
            }
            "DEG" => {
                src.arity(line, 3)?;
                degs.push((line, src.integer(line, 1)?, src.integer(line, 2)?));
            }
            other => return Err(src.at(line, 0, format!("unknown directive {other}"))),
        }
    }
    let dims: Vec<usize> = dims.into_iter().map(|d| d.unwrap_or(0)).collect();
    let mut offsets = vec![0; nv + 1];
    for v in 0..nv {
        offsets[v + 1] = offsets[v] + dims[v];
    }
    let n = offsets[nv];
    let labels: Vec<usize> = (0..nv).flat_map(|v| std::iter::repeat_n(v, dims[v])).collect();
    let mut gens = Vec::new();
    for (k, &g) in alg.generators().iter().enumerate() {
        let b = &alg.basis()[g];
        let (r0, c0) = (offsets[b.target], offsets[b.source]);
        let (nr, nc) = (dims[b.target], dims[b.source]);
        let mut m = Matrix::zeros(f, n, n);
        if let Some((line, rows)) = &maps[k] {
            let ok = if nr == 0 || nc == 0 { rows.is_empty() } else { rows.len() == nr && rows.iter().all(|r| r.len() == nc) };
            if !ok {
                return Err(src.at(line, 2, format!("{} needs a {nr} x {nc} matrix", b.name)));
            }
            for (i, row) in rows.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    m.set(r0 + i, c0 + j, x.clone());
                }
            }
        }
        gens.push(m);
    }
    let module = Module::from_generators(alg, labels, gens).map_err(|e| src.whole(e.to_string()))?;
    let degrees = if degs.is_empty() {
        None
    } else {
        let mut d = vec![0i64; n];
        for (line, i, x) in degs {
            if i >= n {
                return Err(src.at(line, 1, "basis index out of range"));
            }
            d[i] = x;
        }
        Some(d)
    };
    Ok(ParsedModule { loaded, module, degrees })
}
