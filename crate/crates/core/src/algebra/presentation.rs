//! Quivers with relations and the path-reduction (noncommutative Gröbner)
//! procedure that turns them into structure constants.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exactlin::Field;

use super::{Algebra, BasisElement};

pub const DEFAULT_LENGTH_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A path is a sequence of arrow indices in traversal order (first arrow
/// first). The empty path is never used; trivial paths are handled apart.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Word(Vec<usize>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

type Lin<F> = BTreeMap<Word, <F as Field>::Elem>;

/// Rewriting rule `lead -> tail`, all tail words smaller than `lead`.
#[derive(Clone, Debug)]
struct Rule<F: Field> {
    lead: Vec<usize>,
    tail: Lin<F>,
}

/// A finite quiver with relations over `field`.
#[derive(Clone, Debug)]
pub struct QuiverPresentation<F: Field> {
    pub field: F,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    /// Each relation is a list of `(coefficient, path)`.
    pub relations: Vec<Vec<(F::Elem, Vec<usize>)>>,
}

impl<F: Field> QuiverPresentation<F> {
    pub fn new(field: F) -> Self {
        QuiverPresentation { field, vertices: Vec::new(), arrows: Vec::new(), relations: Vec::new() }
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize> {
        if self.vertex_index(name).is_some() || self.arrow_index(name).is_some() {
            return Err(Error::InvalidAlgebra(format!("duplicate name {name}")));
        }
        self.vertices.push(name.into());
        Ok(self.vertices.len() - 1)
    }

    pub fn add_arrow(&mut self, name: &str, source: usize, target: usize) -> Result<usize> {
        if self.vertex_index(name).is_some() || self.arrow_index(name).is_some() {
            return Err(Error::InvalidAlgebra(format!("duplicate name {name}")));
        }
        if source >= self.vertices.len() || target >= self.vertices.len() {
            return Err(Error::InvalidAlgebra(format!("arrow {name} has an unknown endpoint")));
        }
        self.arrows.push(Arrow { name: name.into(), source, target });
        Ok(self.arrows.len() - 1)
    }

    /// Add a relation after checking that every path has length at least
    /// two, is composable, and that all paths are parallel.
    pub fn add_relation(&mut self, terms: Vec<(F::Elem, Vec<usize>)>) -> Result<()> {
        let mut ends = None;
        for (_, p) in &terms {
            if p.len() < 2 {
                return Err(Error::NonAdmissible(format!(
                    "relation term {} has length {} < 2",
                    self.path_name(p),
                    p.len()
                )));
            }
            for w in p.windows(2) {
                if self.arrows[w[0]].target != self.arrows[w[1]].source {
                    return Err(Error::InvalidAlgebra(format!(
                        "path {} is not composable",
                        self.path_name(p)
                    )));
                }
            }
            let e = (self.arrows[p[0]].source, self.arrows[*p.last().unwrap()].target);
            match ends {
                None => ends = Some(e),
                Some(x) if x != e => {
                    return Err(Error::InvalidAlgebra(format!(
                        "relation terms are not parallel ({})",
                        self.path_name(p)
                    )))
                }
                _ => {}
            }
        }
        self.relations.push(terms);
        Ok(())
    }

    pub fn path_name(&self, p: &[usize]) -> String {
        let names: Vec<&str> = p.iter().map(|&a| self.arrows[a].name.as_str()).collect();
        names.join(".")
    }

    pub fn build(&self) -> Result<Algebra<F>> {
        self.build_with_cap(DEFAULT_LENGTH_CAP)
    }

    /// Compute a reduction system by completing overlaps up to `cap`, read
    /// off the irreducible paths as a basis, and assemble the structure
    /// constants.
    pub fn build_with_cap(&self, cap: usize) -> Result<Algebra<F>> {
        let f = self.field;
        if self.vertices.is_empty() {
            return Err(Error::InvalidAlgebra("no vertices".into()));
        }
        let rules = self.complete(cap)?;

        // Irreducible paths, grown by appending arrows.
        let mut paths: Vec<Vec<usize>> = Vec::new();
        let mut frontier: Vec<Vec<usize>> = Vec::new();
        for (a, _) in self.arrows.iter().enumerate() {
            frontier.push(vec![a]);
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in frontier {
                if rules.iter().any(|r| p.ends_with(&r.lead)) {
                    continue;
                }
                if p.len() > cap {
                    return Err(Error::ReductionCap(cap));
                }
                let end = self.arrows[*p.last().unwrap()].target;
                for (a, arrow) in self.arrows.iter().enumerate() {
                    if arrow.source == end {
                        let mut q = p.clone();
                        q.push(a);
                        next.push(q);
                    }
                }
                paths.push(p);
            }
            frontier = next;
        }
        paths.sort_by(|a, b| Word(a.clone()).cmp(&Word(b.clone())));

        let nv = self.vertices.len();
        let mut basis = Vec::with_capacity(nv + paths.len());
        for (v, name) in self.vertices.iter().enumerate() {
            basis.push(BasisElement { name: format!("e{name}"), source: v, target: v });
        }
        let mut index: BTreeMap<Word, usize> = BTreeMap::new();
        for p in &paths {
            index.insert(Word(p.clone()), basis.len());
            basis.push(BasisElement {
                name: self.path_name(p),
                source: self.arrows[p[0]].source,
                target: self.arrows[*p.last().unwrap()].target,
            });
        }
        let n = basis.len();
        let mut mult = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                if basis[i].source != basis[j].target {
                    continue;
                }
                let entry = if i < nv {
                    vec![(j, f.one())]
                } else if j < nv {
                    vec![(i, f.one())]
                } else {
                    // b_i * b_j: first b_j, then b_i
                    let mut w = paths[j - nv].clone();
                    w.extend_from_slice(&paths[i - nv]);
                    let mut lin = Lin::<F>::new();
                    lin.insert(Word(w), f.one());
                    let red = reduce(f, lin, &rules);
                    red.into_iter().map(|(w, c)| (index[&w], c)).collect()
                };
                mult[i * n + j] = entry;
            }
        }
        let idempotents = (0..nv).collect();
        let alg = Algebra::from_parts(f, self.vertices.clone(), basis, idempotents, mult)
            .map_err(|e| match e {
                Error::InvalidAlgebra(m) if m.contains("nilpotent") => Error::NonAdmissible(m),
                e => e,
            })?;
        Ok(alg)
    }

    fn complete(&self, cap: usize) -> Result<Vec<Rule<F>>> {
        let f = self.field;
        let mut rules: Vec<Rule<F>> = Vec::new();
        let mut queue: VecDeque<Lin<F>> = VecDeque::new();
        for rel in &self.relations {
            let mut lin = Lin::<F>::new();
            for (c, p) in rel {
                add_term(f, &mut lin, Word(p.clone()), c.clone());
            }
            queue.push_back(lin);
        }
        let mut steps = 0usize;
        while let Some(p) = queue.pop_front() {
            steps += 1;
            if steps > 200_000 {
                return Err(Error::ReductionCap(cap));
            }
            let mut r = reduce(f, p, &rules);
            let Some((lead, c)) = r.pop_last() else { continue };
            let inv = f.inv(&c).expect("nonzero");
            let neg = f.neg(&inv);
            let tail: Lin<F> = r.into_iter().map(|(w, x)| (w, f.mul(&x, &neg))).collect();
            let rule = Rule { lead: lead.0, tail };
            // rules whose lead becomes reducible are re-queued
            let mut kept = Vec::with_capacity(rules.len());
            for old in rules.drain(..) {
                if contains(&old.lead, &rule.lead) {
                    queue.push_back(as_poly(f, &old));
                } else {
                    kept.push(old);
                }
            }
            rules = kept;
            rules.push(rule);
            let new = rules.len() - 1;
            for other in 0..rules.len() {
                for (a, b) in [(new, other), (other, new)] {
                    for s in overlaps(f, &rules[a], &rules[b], cap)? {
                        queue.push_back(s);
                    }
                    if a == b {
                        break;
                    }
                }
            }
        }
        Ok(rules)
    }
}

fn add_term<F: Field>(f: F, lin: &mut Lin<F>, w: Word, c: F::Elem) {
    use alloc::collections::btree_map::Entry;
    match lin.entry(w) {
        Entry::Vacant(v) => {
            if !f.is_zero(&c) {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            let s = f.add(o.get(), &c);
            if f.is_zero(&s) {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

fn find(hay: &[usize], needle: &[usize]) -> Option<usize> {
    if needle.len() > hay.len() {
        return None;
    }
    (0..=hay.len() - needle.len()).find(|&i| hay[i..i + needle.len()] == *needle)
}

fn contains(hay: &[usize], needle: &[usize]) -> bool {
    find(hay, needle).is_some()
}

fn as_poly<F: Field>(f: F, r: &Rule<F>) -> Lin<F> {
    let mut lin: Lin<F> = r.tail.iter().map(|(w, c)| (w.clone(), f.neg(c))).collect();
    lin.insert(Word(r.lead.clone()), f.one());
    lin
}

/// Full reduction; terms are rewritten largest first, so results never
/// collide with already-final terms.
fn reduce<F: Field>(f: F, mut work: Lin<F>, rules: &[Rule<F>]) -> Lin<F> {
    let mut out = Lin::<F>::new();
    while let Some((w, c)) = work.pop_last() {
        let hit = rules.iter().find_map(|r| find(&w.0, &r.lead).map(|pos| (r, pos)));
        match hit {
            None => {
                out.insert(w, c);
            }
            Some((r, pos)) => {
                for (t, tc) in &r.tail {
                    let mut nw = Vec::with_capacity(w.0.len() - r.lead.len() + t.0.len());
                    nw.extend_from_slice(&w.0[..pos]);
                    nw.extend_from_slice(&t.0);
                    nw.extend_from_slice(&w.0[pos + r.lead.len()..]);
                    add_term(f, &mut work, Word(nw), f.mul(&c, tc));
                }
            }
        }
    }
    out
}

/// S-polynomials from a suffix of `a.lead` overlapping a prefix of `b.lead`.
fn overlaps<F: Field>(f: F, a: &Rule<F>, b: &Rule<F>, cap: usize) -> Result<Vec<Lin<F>>> {
    let (u, v) = (&a.lead, &b.lead);
    let mut out = Vec::new();
    for k in 1..u.len().min(v.len()) {
        if u[u.len() - k..] != v[..k] {
            continue;
        }
        if u.len() + v.len() - k > cap {
            return Err(Error::ReductionCap(cap));
        }
        // (u - tailA) v' - u' (v - tailB) = u' tailB - tailA v'
        let vr = &v[k..];
        let ul = &u[..u.len() - k];
        let mut s = Lin::<F>::new();
        for (t, c) in &b.tail {
            let mut w = ul.to_vec();
            w.extend_from_slice(&t.0);
            add_term(f, &mut s, Word(w), c.clone());
        }
        for (t, c) in &a.tail {
            let mut w = t.0.clone();
            w.extend_from_slice(vr);
            add_term(f, &mut s, Word(w), f.neg(c));
        }
        out.push(s);
    }
    Ok(out)
}
