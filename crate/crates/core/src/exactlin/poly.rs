//! Univariate polynomials over an exact field, with just enough factoring to
//! split a polynomial into coprime parts.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{Field, FieldSpec};
use super::matrix::Matrix;

/// Coefficients are stored lowest degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Poly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: F) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: F) -> Self {
        Poly::constant(field, field.one())
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Poly::new(field, vec![c])
    }

    /// `t - a`
    pub fn linear(field: F, a: F::Elem) -> Self {
        Poly::new(field, vec![field.neg(&a), field.one()])
    }

    pub fn monomial(field: F, deg: usize) -> Self {
        let mut c = vec![field.zero(); deg + 1];
        c[deg] = field.one();
        Poly::new(field, c)
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has no degree.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = self.field.inv(l).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let f = self.field;
        Poly::new(f, self.coeffs.iter().map(|c| f.mul(c, s)).collect())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = f.zero();
        let c = (0..n)
            .map(|i| f.add(self.coeffs.get(i).unwrap_or(&z), rhs.coeffs.get(i).unwrap_or(&z)))
            .collect();
        Poly::new(f, c)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = f.zero();
        let c = (0..n)
            .map(|i| f.sub(self.coeffs.get(i).unwrap_or(&z), rhs.coeffs.get(i).unwrap_or(&z)))
            .collect();
        Poly::new(f, c)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let f = self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut c = vec![f.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                f.add_mul_assign(&mut c[i + j], a, b);
            }
        }
        Poly::new(f, c)
    }

    /// Euclidean division; panics on division by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let f = self.field;
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(d.leading().unwrap()).unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul(&r[k + dd], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            let neg = f.neg(&c);
            for (j, dj) in d.coeffs.iter().enumerate() {
                f.add_mul_assign(&mut r[k + j], &neg, dj);
            }
            q[k] = c;
        }
        (Poly::new(f, q), Poly::new(f, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*rhs = g`, `g` monic.
    pub fn ext_gcd(&self, rhs: &Self) -> (Self, Self, Self) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = core::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = core::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = core::mem::replace(&mut t1, t);
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = f.inv(l).unwrap();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn derivative(&self) -> Self {
        let f = self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| f.mul(a, &f.from_i64(i as i64)))
            .collect();
        Poly::new(f, c)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    /// Evaluate at a square matrix.
    pub fn eval_matrix(&self, m: &Matrix<F>) -> Matrix<F> {
        let f = self.field;
        let n = m.rows();
        let mut acc = Matrix::zeros(f, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            for i in 0..n {
                let x = f.add(acc.get(i, i), c);
                acc.set(i, i, x);
            }
        }
        acc
    }

    pub fn mulmod(&self, rhs: &Self, m: &Self) -> Self {
        self.mul(rhs).rem(m)
    }

    pub fn powmod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(&base, m);
            }
        }
        acc
    }

    /// Product of the distinct monic irreducible factors.
    pub fn radical(&self) -> Self {
        let f = self.field;
        if self.deg_or_zero() == 0 {
            return Poly::one(f);
        }
        let p = self.monic();
        let d = p.derivative();
        if d.is_zero() {
            // p(t) = g(t^p) = g(t)^p over a prime field
            let ch = f.characteristic() as usize;
            let c = (0..=p.deg_or_zero() / ch).map(|i| p.coeffs[i * ch].clone()).collect();
            return Poly::new(f, c).radical();
        }
        let c = p.gcd(&d);
        let w = p.exact_div(&c);
        if c.deg_or_zero() == 0 {
            return w;
        }
        let rc = c.radical();
        let g = w.gcd(&rc);
        w.mul(&rc).exact_div(&g).monic()
    }

    /// A nontrivial monic factor of a squarefree polynomial, if one can be
    /// found. Over prime fields this is complete (Berlekamp); over the
    /// rationals only linear factors are detected.
    pub fn proper_factor_of_squarefree(&self) -> Option<Self> {
        let n = self.degree()?;
        if n < 2 {
            return None;
        }
        match self.field.spec() {
            FieldSpec::PrimeField(p) => berlekamp_factor(self, p as u64),
            FieldSpec::Rationals => rational_root(self).map(|r| Poly::linear(self.field, r)),
        }
    }

    /// Split `self` (monic) as `g * h` with `g`, `h` nonconstant and coprime.
    pub fn coprime_split(&self) -> Option<(Self, Self)> {
        let me = self.monic();
        let rad = me.radical();
        let q = rad.proper_factor_of_squarefree()?;
        let mut g = Poly::one(self.field);
        let mut rest = me.clone();
        loop {
            let t = rest.gcd(&q);
            if t.deg_or_zero() == 0 {
                break;
            }
            g = g.mul(&t);
            rest = rest.exact_div(&t);
        }
        if g.deg_or_zero() == 0 || rest.deg_or_zero() == 0 {
            return None;
        }
        Some((g.monic(), rest.monic()))
    }

    /// `Some(true)` if irreducible, `Some(false)` if reducible, `None` when
    /// this toolkit cannot decide (higher-degree rational polynomials).
    pub fn is_irreducible(&self) -> Option<bool> {
        let n = self.degree()?;
        if n == 0 {
            return Some(false);
        }
        if n == 1 {
            return Some(true);
        }
        if self.radical().degree() != Some(n) {
            return Some(false);
        }
        match self.field.spec() {
            FieldSpec::PrimeField(p) => Some(berlekamp_rank(self, p as u64) == 1),
            FieldSpec::Rationals => {
                if rational_root(self).is_some() {
                    Some(false)
                } else if n <= 3 {
                    Some(true)
                } else {
                    None
                }
            }
        }
    }

    /// If `self = (t - a)^k`, return `a`.
    pub fn single_root(&self) -> Option<F::Elem> {
        let rad = self.radical();
        if rad.degree() == Some(1) {
            let f = self.field;
            Some(f.neg(&rad.coeffs[0]))
        } else {
            None
        }
    }
}

/// Kernel of `v -> v^p - v` on `F_p[t]/f`, as polynomials.
fn berlekamp_kernel<F: Field>(f: &Poly<F>, p: u64) -> Vec<Poly<F>> {
    let field = f.field();
    let n = f.degree().unwrap();
    let xp = Poly::monomial(field, 1).powmod(p, f);
    let mut cols = Vec::with_capacity(n);
    let mut cur = Poly::one(field);
    for _ in 0..n {
        let mut c = cur.coeffs().to_vec();
        c.resize(n, field.zero());
        cols.push(c);
        cur = cur.mulmod(&xp, f);
    }
    let mut b = Matrix::from_columns(field, n, &cols);
    for i in 0..n {
        let x = field.sub(b.get(i, i), &field.one());
        b.set(i, i, x);
    }
    b.kernel_basis().into_iter().map(|v| Poly::new(field, v)).collect()
}

fn berlekamp_rank<F: Field>(f: &Poly<F>, p: u64) -> usize {
    berlekamp_kernel(&f.monic(), p).len()
}

fn berlekamp_factor<F: Field>(f: &Poly<F>, p: u64) -> Option<Poly<F>> {
    let field = f.field();
    let f = f.monic();
    let n = f.degree()?;
    let kernel = berlekamp_kernel(&f, p);
    if kernel.len() <= 1 {
        return None;
    }
    let nonconst: Vec<&Poly<F>> = kernel.iter().filter(|v| v.degree().unwrap_or(0) > 0).collect();
    if p <= 256 {
        for v in &nonconst {
            for s in 0..p {
                let g = f.gcd(&v.sub(&Poly::constant(field, field.element_at(s))));
                let d = g.degree().unwrap_or(0);
                if d > 0 && d < n {
                    return Some(g);
                }
            }
        }
        return None;
    }
    // odd p: random element of the Berlekamp subalgebra, Cantor-Zassenhaus style
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 ^ n as u64);
    for _ in 0..128 {
        let mut v = Poly::zero(field);
        for k in &kernel {
            v = v.add(&k.scale(&field.random(&mut rng)));
        }
        if v.degree().unwrap_or(0) == 0 {
            continue;
        }
        let w = v.powmod((p - 1) / 2, &f).sub(&Poly::one(field));
        let g = f.gcd(&w);
        let d = g.degree().unwrap_or(0);
        if d > 0 && d < n {
            return Some(g);
        }
    }
    None
}

/// A rational root, by the rational root theorem. Gives up on polynomials
/// whose extreme coefficients are too large to factor by trial division.
fn rational_root<F: Field>(f: &Poly<F>) -> Option<F::Elem> {
    let field = f.field();
    let coeffs: Vec<_> = f.coeffs().iter().map(|c| field.to_rational(c)).collect::<Option<_>>()?;
    if coeffs.first().is_some_and(|c| c.is_zero()) {
        return Some(field.zero());
    }
    let mut lcm = BigInt::one();
    for c in &coeffs {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
    let a0 = ints.first()?.abs();
    let an = ints.last()?.abs();
    let limit = BigInt::from(1u64 << 40);
    if a0 > limit || an > limit {
        return None;
    }
    let num_divs = divisors(a0.to_u64()?);
    let den_divs = divisors(an.to_u64()?);
    for q in &den_divs {
        for p in &num_divs {
            for sign in [1i64, -1] {
                let num = BigInt::from(*p) * sign;
                let den = BigInt::from(*q);
                if num.gcd(&den) != BigInt::one() {
                    continue;
                }
                // evaluate sum ints[i] num^i den^(n-i)
                let n = ints.len() - 1;
                let mut acc = BigInt::zero();
                for (i, c) in ints.iter().enumerate() {
                    acc += c * num.pow(i as u32) * den.pow((n - i) as u32);
                }
                if acc.is_zero() {
                    return field.from_ratio(&num, &den);
                }
            }
        }
    }
    None
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::field::{PrimeField, Rationals};

    fn q(c: &[i64]) -> Poly<Rationals> {
        Poly::new(Rationals, c.iter().map(|&x| Rationals.from_i64(x)).collect())
    }

    fn fp(p: u32, c: &[i64]) -> Poly<PrimeField> {
        let f = PrimeField::new(p).unwrap();
        Poly::new(f, c.iter().map(|&x| f.from_i64(x)).collect())
    }

    #[test]
    fn radical_strips_multiplicity() {
        // (t-1)^2 (t+2) = t^3 - 3t + 2
        let p = q(&[2, -3, 0, 1]);
        assert_eq!(p.radical(), q(&[-2, 1, 1]));
        // over F_2: t^4 + 1 = (t+1)^4
        assert_eq!(fp(2, &[1, 0, 0, 0, 1]).radical(), fp(2, &[1, 1]));
    }

    #[test]
    fn coprime_split_rational() {
        // t^2 (t - 1)
        let p = q(&[0, 0, -1, 1]);
        let (g, h) = p.coprime_split().unwrap();
        assert_eq!(g.mul(&h), p);
        assert_eq!(g.gcd(&h), q(&[1]));
        // t^2 + 1 has no rational split
        assert!(q(&[1, 0, 1]).coprime_split().is_none());
    }

    #[test]
    fn berlekamp_finds_factors() {
        // t^2 + t + 1 irreducible over F_2, (t^2+t+1)(t+1) = t^3 + 1
        assert_eq!(fp(2, &[1, 1, 1]).is_irreducible(), Some(true));
        let p = fp(2, &[1, 0, 0, 1]);
        let (g, h) = p.coprime_split().unwrap();
        assert_eq!(g.mul(&h), p);
        // large prime path: t^2 - 1 over F_1000003
        let p = fp(1_000_003, &[-1, 0, 1]);
        assert!(p.coprime_split().is_some());
        assert_eq!(fp(1_000_003, &[1, 0, 1]).is_irreducible(), Some(true).filter(|_| 1_000_003 % 4 == 3));
    }

    #[test]
    fn ext_gcd_identity() {
        let a = q(&[-1, 0, 1]);
        let b = q(&[0, 1, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert_eq!(g, q(&[1, 1]));
    }
}
