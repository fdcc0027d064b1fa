//! Exact scalar fields: the rationals (arbitrary precision) and prime fields
//! with machine-word arithmetic.

use alloc::string::String;
use core::fmt::{self, Debug, Display};
use core::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Which field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u32),
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self> {
        if is_prime(p as u64) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(Error::InvalidField(p))
        }
    }
}

impl Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field. Field values are cheap handles (`Copy`); elements carry
/// no reference to the field, so every operation goes through the handle.
pub trait Field: Copy + Debug + PartialEq + Eq + Hash + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Image of the rational `num/den`; `None` when `den` vanishes in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Self::Elem>;
    /// Number of elements for finite fields.
    fn order(&self) -> Option<u64>;
    /// The `idx`-th element in a fixed enumeration (finite fields only).
    fn element_at(&self, idx: u64) -> Self::Elem;
    /// A random element; over the rationals a small integer.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// Lift a prime-field element to its representative in `[0, p)`.
    fn as_residue(&self, a: &Self::Elem) -> Option<u64>;
    fn to_rational(&self, a: &Self::Elem) -> Option<BigRational>;
    fn format(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn characteristic(&self) -> u64 {
        match self.spec() {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => p as u64,
        }
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    /// `a += b * c`
    fn add_mul_assign(&self, a: &mut Self::Elem, b: &Self::Elem, c: &Self::Elem) {
        let t = self.mul(b, c);
        self.add_assign(a, &t);
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|i| self.mul(a, &i))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The field of rational numbers with arbitrary-precision numerators and
/// denominators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<BigRational> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn element_at(&self, idx: u64) -> BigRational {
        // 0, 1, -1, 2, -2, ...
        let k = idx.div_ceil(2) as i64;
        self.from_i64(if idx % 2 == 1 { k } else { -k })
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.random_range(-3i64..=3))
    }
    fn as_residue(&self, _a: &BigRational) -> Option<u64> {
        None
    }
    fn to_rational(&self, a: &BigRational) -> Option<BigRational> {
        Some(a.clone())
    }
    fn format(&self, a: &BigRational) -> String {
        use alloc::string::ToString;
        if a.is_integer() {
            a.numer().to_string()
        } else {
            alloc::format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn add_assign(&self, a: &mut BigRational, b: &BigRational) {
        *a += b;
    }
    fn add_mul_assign(&self, a: &mut BigRational, b: &BigRational, c: &BigRational) {
        if b.is_zero() || c.is_zero() {
            return;
        }
        *a += b * c;
    }
}

/// The prime field `Z/pZ`, `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p >= (1 << 31) || !is_prime(p as u64) {
            return Err(Error::InvalidField(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn reduce_bigint(&self, n: &BigInt) -> u32 {
        let p = BigInt::from(self.p);
        let r = n.mod_floor(&p);
        r.to_u32().unwrap_or(0)
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField(self.p)
    }
    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1 % self.p
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.p as u64) as u32
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + self.p as u64 - *b as u64;
        (s % self.p as u64) as u32
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        Some(self.pow(a, self.p as u64 - 2))
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<u32> {
        let d = self.reduce_bigint(den);
        let n = self.reduce_bigint(num);
        self.inv(&d).map(|di| self.mul(&n, &di))
    }
    fn order(&self) -> Option<u64> {
        Some(self.p as u64)
    }
    fn element_at(&self, idx: u64) -> u32 {
        (idx % self.p as u64) as u32
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.random_range(0..self.p)
    }
    fn as_residue(&self, a: &u32) -> Option<u64> {
        Some(*a as u64)
    }
    fn to_rational(&self, _a: &u32) -> Option<BigRational> {
        None
    }
    fn format(&self, a: &u32) -> String {
        use alloc::string::ToString;
        a.to_string()
    }
    #[inline]
    fn add_mul_assign(&self, a: &mut u32, b: &u32, c: &u32) {
        *a = ((*a as u64 + *b as u64 * *c as u64) % self.p as u64) as u32;
    }
}

/// Parse a decimal integer or fraction `n/d` into a field element.
pub fn parse_scalar<F: Field>(field: &F, text: &str) -> Option<F::Elem> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_negative() {
        return field.from_ratio(&-num, &-den);
    }
    field.from_ratio(&num, &den)
}
