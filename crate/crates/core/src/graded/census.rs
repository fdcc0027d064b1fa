use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{graded_end_ring, GradedAlgebra, GradedModule};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix};
use crate::modules::{find_isomorphism, Module, RingStructure};

use crate::complexes::DEFAULT_BUDGET;

/// Graded indecomposables with nonzero degree-0 part, complete up to
/// total dimension `dim_cap`.
#[derive(Clone, Debug)]
pub struct WindowCensus<F: Field> {
    pub dim_cap: usize,
    pub classes: Vec<GradedModule<F>>,
    /// Number of candidate structures examined.
    pub candidates: u128,
}

impl<F: Field> WindowCensus<F> {
    /// True when no class reaches the dimension cap, i.e. raising the
    /// cap by one found nothing new at the boundary.
    pub fn saturated(&self) -> bool {
        self.classes.iter().all(|m| m.dim() < self.dim_cap)
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

pub fn window_census<F: Field>(graded: &Arc<GradedAlgebra<F>>, dim_cap: usize) -> Result<WindowCensus<F>> {
    window_census_with_budget(graded, dim_cap, DEFAULT_BUDGET)
}

type Block = (usize, i64);

pub fn window_census_with_budget<F: Field>(
    graded: &Arc<GradedAlgebra<F>>,
    dim_cap: usize,
    budget: u128,
) -> Result<WindowCensus<F>> {
    let f = graded.field();
    let q = match f.order() {
        Some(q) => q,
        None => return Err(Error::NeedsPrimeField(f.spec())),
    };
    let alg = graded.algebra();
    let nv = alg.num_vertices();
    let dmax = graded.max_degree() as i64;
    let reach = if dmax == 0 { 0 } else { (dim_cap.max(1) as i64 - 1) * dmax };
    let mut blocks: Vec<Block> = Vec::new();
    for d in -reach..=reach {
        for v in 0..nv {
            blocks.push((v, d));
        }
    }
    let gens: Vec<(usize, usize, i64)> = alg
        .generators()
        .iter()
        .map(|&g| (alg.basis()[g].source, alg.basis()[g].target, graded.degrees()[g] as i64))
        .collect();

    let mut dimvecs = Vec::new();
    let mut cur = vec![0usize; blocks.len()];
    collect_dimvecs(&blocks, &gens, dim_cap, 0, 0, &mut cur, &mut dimvecs);

    let mut st = State { candidates: 0, budget, found: BTreeMap::new() };
    for dv in &dimvecs {
        enumerate(graded, &blocks, &gens, dv, q, &mut st)?;
    }
    let mut classes: Vec<GradedModule<F>> = st.found.into_values().flatten().collect();
    classes.sort_by_key(|m| (m.dim(), key_of(m)));
    Ok(WindowCensus { dim_cap, classes, candidates: st.candidates })
}

fn collect_dimvecs(
    blocks: &[Block],
    gens: &[(usize, usize, i64)],
    cap: usize,
    pos: usize,
    total: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if pos == blocks.len() {
        if total > 0 && support_ok(blocks, gens, cur) {
            out.push(cur.clone());
        }
        return;
    }
    for k in 0..=(cap - total) {
        cur[pos] = k;
        collect_dimvecs(blocks, gens, cap, pos + 1, total + k, cur, out);
    }
    cur[pos] = 0;
}

/// Support meets degree 0 and is connected through the generators.
fn support_ok(blocks: &[Block], gens: &[(usize, usize, i64)], dv: &[usize]) -> bool {
    let support: Vec<usize> = (0..blocks.len()).filter(|&i| dv[i] > 0).collect();
    if !support.iter().any(|&i| blocks[i].1 == 0) {
        return false;
    }
    let mut seen = vec![false; blocks.len()];
    let mut stack = vec![support[0]];
    seen[support[0]] = true;
    while let Some(i) = stack.pop() {
        let (v, d) = blocks[i];
        for &j in &support {
            if seen[j] {
                continue;
            }
            let (w, e) = blocks[j];
            let linked = gens.iter().any(|&(s, t, g)| (s == v && t == w && e == d + g) || (s == w && t == v && d == e + g));
            if linked {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    support.iter().all(|&i| seen[i])
}

type Key = (Vec<(usize, i64, usize)>, Vec<usize>);

struct State<F: Field> {
    candidates: u128,
    budget: u128,
    found: BTreeMap<Key, Vec<GradedModule<F>>>,
}

fn key_of<F: Field>(m: &GradedModule<F>) -> Key {
    let mut dims: BTreeMap<(usize, i64), usize> = BTreeMap::new();
    for k in 0..m.dim() {
        *dims.entry((m.module().labels()[k], m.degrees()[k])).or_default() += 1;
    }
    let dims = dims.into_iter().map(|((v, d), n)| (v, d, n)).collect();
    let alg = m.graded_algebra().algebra();
    let ranks = (0..alg.dim()).filter(|&b| !alg.is_idempotent_index(b)).map(|b| m.module().action(b).rank()).collect();
    (dims, ranks)
}

fn enumerate<F: Field>(
    graded: &Arc<GradedAlgebra<F>>,
    blocks: &[Block],
    gens: &[(usize, usize, i64)],
    dv: &[usize],
    q: u64,
    st: &mut State<F>,
) -> Result<()> {
    let f = graded.field();
    let alg = graded.algebra();
    let mut labels = Vec::new();
    let mut degrees = Vec::new();
    for (i, &(v, d)) in blocks.iter().enumerate() {
        for _ in 0..dv[i] {
            labels.push(v);
            degrees.push(d);
        }
    }
    let n = labels.len();
    // (generator, row, column) of every free entry
    let mut slots = Vec::new();
    for (gi, &(s, t, dg)) in gens.iter().enumerate() {
        for c in 0..n {
            if labels[c] != s {
                continue;
            }
            for r in 0..n {
                if labels[r] == t && degrees[r] == degrees[c] + dg {
                    slots.push((gi, r, c));
                }
            }
        }
    }
    let count = (q as u128).checked_pow(slots.len() as u32).unwrap_or(u128::MAX);
    st.candidates = st.candidates.saturating_add(count);
    if st.candidates > st.budget {
        return Err(Error::Budget { count: st.candidates, limit: st.budget });
    }
    let mut digits = vec![0u64; slots.len()];
    loop {
        if connected(n, &slots, &digits) {
            let mut mats = vec![Matrix::zeros(f, n, n); gens.len()];
            for (&(gi, r, c), &x) in slots.iter().zip(&digits) {
                if x != 0 {
                    mats[gi].set(r, c, f.element_at(x));
                }
            }
            if let Ok(module) = Module::from_generators(alg.clone(), labels.clone(), mats) {
                let gm = GradedModule { graded: graded.clone(), module, degrees: degrees.clone() };
                consider(gm, st)?;
            }
        }
        if !advance(&mut digits, q) {
            break;
        }
    }
    Ok(())
}

fn advance(digits: &mut [u64], q: u64) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < q {
            return true;
        }
        *d = 0;
    }
    false
}

/// The basis vectors are linked by the nonzero entries.
fn connected(n: usize, slots: &[(usize, usize, usize)], digits: &[u64]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut comps = n;
    for (&(_, r, c), &x) in slots.iter().zip(digits) {
        if x != 0 {
            let (a, b) = (find(&mut parent, r), find(&mut parent, c));
            if a != b {
                parent[a] = b;
                comps -= 1;
            }
        }
    }
    comps == 1
}

fn consider<F: Field>(m: GradedModule<F>, st: &mut State<F>) -> Result<()> {
    let key = key_of(&m);
    if let Some(bucket) = st.found.get(&key) {
        for other in bucket {
            if find_isomorphism(m.module(), other.module(), Some((m.degrees(), other.degrees())), 0)?.is_some() {
                return Ok(());
            }
        }
    }
    if !matches!(graded_end_ring(&m)?.analyze(0)?, RingStructure::Local { .. }) {
        return Ok(());
    }
    st.found.entry(key).or_default().push(m);
    Ok(())
}
