use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix};

use super::{same_algebra, Module};

/// Basis of `Hom_A(m, n)` as matrices `dim n x dim m`.
pub fn hom_space<F: Field>(m: &Module<F>, n: &Module<F>) -> Result<Vec<Matrix<F>>> {
    hom_space_graded(m, n, None)
}

/// Homomorphisms that additionally preserve a grading of the basis vectors.
pub fn hom_space_graded<F: Field>(
    m: &Module<F>,
    n: &Module<F>,
    degrees: Option<(&[i64], &[i64])>,
) -> Result<Vec<Matrix<F>>> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let (lm, ln) = (m.labels(), n.labels());
    let allowed = |r: usize, c: usize| {
        ln[r] == lm[c] && degrees.is_none_or(|(gm, gn)| gn[r] == gm[c])
    };
    let mut var = vec![usize::MAX; dn * dm];
    let mut vars = Vec::new();
    for r in 0..dn {
        for c in 0..dm {
            if allowed(r, c) {
                var[r * dm + c] = vars.len();
                vars.push((r, c));
            }
        }
    }
    if vars.is_empty() {
        return Ok(Vec::new());
    }
    let alg = m.algebra();
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for (gi, &g) in alg.generators().iter().enumerate() {
        let (s, t) = (alg.basis()[g].source, alg.basis()[g].target);
        let am = &m.generator_actions()[gi];
        let an = &n.generator_actions()[gi];
        // (phi am - an phi)[r][c] = 0 for r at t, c at s
        for r in 0..dn {
            if ln[r] != t {
                continue;
            }
            for c in 0..dm {
                if lm[c] != s {
                    continue;
                }
                let mut eq = vec![f.zero(); vars.len()];
                let mut nonzero = false;
                for k in 0..dm {
                    let x = am.get(k, c);
                    if !f.is_zero(x) && var[r * dm + k] != usize::MAX {
                        f.add_assign(&mut eq[var[r * dm + k]], x);
                        nonzero = true;
                    }
                }
                for k in 0..dn {
                    let x = an.get(r, k);
                    if !f.is_zero(x) && var[k * dm + c] != usize::MAX {
                        let v = var[k * dm + c];
                        eq[v] = f.sub(&eq[v], x);
                        nonzero = true;
                    }
                }
                if nonzero {
                    rows.push(eq);
                }
            }
        }
    }
    let sol = if rows.is_empty() {
        (0..vars.len())
            .map(|i| {
                let mut v = vec![f.zero(); vars.len()];
                v[i] = f.one();
                v
            })
            .collect()
    } else {
        Matrix::from_rows(f, rows)?.kernel_basis()
    };
    Ok(sol
        .into_iter()
        .map(|x| {
            let mut phi = Matrix::zeros(f, dn, dm);
            for (i, &(r, c)) in vars.iter().enumerate() {
                phi.set(r, c, x[i].clone());
            }
            phi
        })
        .collect())
}

fn combine<F: Field>(f: F, basis: &[Matrix<F>], coeffs: &[F::Elem]) -> Matrix<F> {
    let mut acc = Matrix::zeros(f, basis[0].rows(), basis[0].cols());
    for (b, c) in basis.iter().zip(coeffs) {
        if !f.is_zero(c) {
            acc.add_scaled(b, c);
        }
    }
    acc
}

/// Search for an isomorphism `m -> n`. Sound always; complete when `m` is
/// indecomposable (an isomorphism exists iff some `g_j f_i` is invertible
/// for basis maps `f_i: m -> n`, `g_j: n -> m`), and complete over small
/// fields when the hom space is small enough to enumerate.
pub fn find_isomorphism<F: Field>(
    m: &Module<F>,
    n: &Module<F>,
    degrees: Option<(&[i64], &[i64])>,
    seed: u64,
) -> Result<Option<Matrix<F>>> {
    if m.dim() != n.dim() || m.dim_vector() != n.dim_vector() {
        return Ok(None);
    }
    if let Some((a, b)) = degrees {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Ok(None);
        }
    }
    let f = m.field();
    if m.dim() == 0 {
        return Ok(Some(Matrix::zeros(f, 0, 0)));
    }
    let hom = hom_space_graded(m, n, degrees)?;
    if hom.is_empty() {
        return Ok(None);
    }
    let back = hom_space_graded(n, m, degrees.map(|(a, b)| (b, a)))?;
    if back.is_empty() {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..20 {
        let coeffs: Vec<_> = (0..hom.len()).map(|_| f.random(&mut rng)).collect();
        let phi = combine(f, &hom, &coeffs);
        if phi.is_invertible() {
            return Ok(Some(phi));
        }
    }
    for fi in &hom {
        if fi.is_invertible() {
            return Ok(Some(fi.clone()));
        }
        for gj in &back {
            if gj.mul(fi).is_invertible() {
                return Ok(Some(fi.clone()));
            }
        }
    }
    if let Some(q) = f.order() {
        let d = hom.len() as u32;
        if d <= 4 && q.checked_pow(d).is_some_and(|t| t <= 1 << 16) {
            let total = q.pow(d);
            for idx in 0..total {
                let mut k = idx;
                let coeffs: Vec<_> = (0..d)
                    .map(|_| {
                        let c = f.element_at(k % q);
                        k /= q;
                        c
                    })
                    .collect();
                let phi = combine(f, &hom, &coeffs);
                if phi.is_invertible() {
                    return Ok(Some(phi));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_isomorphic<F: Field>(m: &Module<F>, n: &Module<F>) -> Result<bool> {
    Ok(find_isomorphism(m, n, None, 0)?.is_some())
}
