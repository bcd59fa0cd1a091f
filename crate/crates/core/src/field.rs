//! Coefficient fields: prime fields F_p and the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, RngCore};

use crate::error::{Error, Result};
use crate::ore::OrePoly;
use crate::poly::Poly;

/// Characteristic of a coefficient field: a prime `p`, or `0` for the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    characteristic: u64,
}

impl FieldSpec {
    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic != 0 && !is_prime_u64(characteristic) {
            return Err(Error::InvalidCharacteristic(characteristic));
        }
        Ok(FieldSpec { characteristic })
    }

    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0 }
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "Q"),
            p => write!(f, "F_{p}"),
        }
    }
}

/// A commutative field with an explicit element type.
///
/// Field values are small descriptors (a modulus, or nothing); elements are
/// plain data so that polynomials stay `Send + Sync`.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// Random element; for the rationals a small integer.
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem;
    fn format_elem(&self, a: &Self::Elem) -> String;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;

    fn characteristic(&self) -> u64 {
        self.spec().characteristic()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
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

    fn sample_nonzero(&self, rng: &mut dyn RngCore) -> Self::Elem {
        loop {
            let c = self.sample(rng);
            if !self.is_zero(&c) {
                return c;
            }
        }
    }

    /// A nonzero scalar `s` such that `s * e` is "integral and primitive" for
    /// all `e`, with the last nonzero entry made canonical. Over F_p this is
    /// just the inverse of the last nonzero entry.
    fn integral_scale(&self, elems: &[Self::Elem]) -> Self::Elem {
        match elems.iter().rev().find(|e| !self.is_zero(e)) {
            Some(e) => self.inv(e),
            None => self.one(),
        }
    }

    /// Dense product of coefficient slices.
    fn mul_coeffs(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Vec<Self::Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero(); a.len() + b.len() - 1];
        for (i, ai) in a.iter().enumerate() {
            if self.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                out[i + j] = self.add(&out[i + j], &self.mul(ai, bj));
            }
        }
        out
    }

    /// Monic gcd of a list of polynomials.
    fn gcd_polys(&self, polys: &[Poly<Self>]) -> Poly<Self>
    where
        Self: Sized,
    {
        let mut g = Poly::zero(self);
        for f in polys {
            g = g.euclid_gcd(f);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Field-specific fast path for `prim(lclm(a, b))`; `None` means use the
    /// generic Euclidean algorithm.
    fn lclm_prim_fast(&self, _a: &OrePoly<Self>, _b: &OrePoly<Self>) -> Option<Result<OrePoly<Self>>>
    where
        Self: Sized,
    {
        None
    }
}

/// The prime field F_p, with `p < 2^63`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p >= 1 << 63 || !is_prime_u64(p) {
            return Err(Error::InvalidCharacteristic(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Image of a rational; `None` if `p` divides the denominator.
    pub fn from_rational(&self, v: &BigRational) -> Option<u64> {
        let d = self.from_bigint(v.denom());
        if d == 0 {
            return None;
        }
        Some(self.div(&self.from_bigint(v.numer()), &d))
    }

    /// Symmetric representative in (-p/2, p/2].
    pub fn to_i64(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            -((self.p - a) as i64)
        } else {
            a as i64
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec { characteristic: self.p }
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in F_{}", self.p);
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        s0.rem_euclid(self.p as i128) as u64
    }
    fn sample(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        let m = v.mod_floor(&BigInt::from(self.p));
        m.iter_u64_digits().next().unwrap_or(0)
    }

    fn mul_coeffs(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let p = self.p as u128;
        let n = a.len() + b.len() - 1;
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let lo = k.saturating_sub(b.len() - 1);
            let hi = k.min(a.len() - 1);
            let mut acc: u128 = 0;
            for i in lo..=hi {
                acc += a[i] as u128 * b[k - i] as u128;
                if acc >= 1 << 127 {
                    acc %= p;
                }
            }
            out.push((acc % p) as u64);
        }
        out
    }
}

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::rationals()
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_integer() && b.is_integer() {
            return BigRational::from_integer(a.numer() + b.numer());
        }
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_integer() && b.is_integer() {
            return BigRational::from_integer(a.numer() - b.numer());
        }
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_integer() && b.is_integer() {
            return BigRational::from_integer(a.numer() * b.numer());
        }
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in Q");
        a.recip()
    }
    fn sample(&self, rng: &mut dyn RngCore) -> BigRational {
        self.from_i64(rng.gen_range(-99..=99))
    }
    fn format_elem(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }

    fn integral_scale(&self, elems: &[BigRational]) -> BigRational {
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for e in elems {
            if e.is_zero() {
                continue;
            }
            den = den.lcm(e.denom());
            num = num.gcd(e.numer());
        }
        if num.is_zero() {
            return BigRational::one();
        }
        let last_negative = elems
            .iter()
            .rev()
            .find(|e| !e.is_zero())
            .is_some_and(|e| e.is_negative());
        let s = BigRational::new(den, num);
        if last_negative {
            -s
        } else {
            s
        }
    }

    fn gcd_polys(&self, polys: &[Poly<Self>]) -> Poly<Self> {
        crate::modular::gcd_rational(polys)
    }

    fn lclm_prim_fast(&self, a: &OrePoly<Self>, b: &OrePoly<Self>) -> Option<Result<OrePoly<Self>>> {
        Some(crate::modular::lclm_rational(a, b))
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
