//! The center F_p(Z)[T] with Z = x^p - x, T = τ^p, and the norm map into it.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ore::OrePoly;
use crate::poly::Poly;
use crate::ratfun::RatFun;

fn char_p<F: Field>(field: &F) -> Result<u64> {
    match field.characteristic() {
        0 => Err(Error::NeedsPositiveCharacteristic),
        p => Ok(p),
    }
}

/// `f(x) f(x+1) ... f(x+p-1)`, as a polynomial in x.
pub fn shifted_product<F: Field>(f: &Poly<F>) -> Result<Poly<F>> {
    let p = char_p(f.field())?;
    let mut factors: Vec<Poly<F>> = (0..p as i64).map(|i| f.shift(i)).collect();
    while factors.len() > 1 {
        factors = factors
            .chunks(2)
            .map(|c| if c.len() == 2 { &c[0] * &c[1] } else { c[0].clone() })
            .collect();
    }
    Ok(factors.pop().expect("p >= 2"))
}

/// The norm N(f) as a polynomial in Z.
pub fn norm<F: Field>(f: &Poly<F>) -> Result<Poly<F>> {
    to_center(&shifted_product(f)?)
}

/// The norm of a nonzero rational function, as a rational function in Z.
pub fn norm_ratfun<F: Field>(r: &RatFun<F>) -> Result<RatFun<F>> {
    if r.is_zero() {
        return Err(Error::ZeroInput);
    }
    RatFun::new(norm(r.numer())?, norm(r.denom())?)
}

/// Rewrite a shift-invariant polynomial `f(x)` as `g(Z)` with `g(x^p - x) = f`.
pub fn to_center<F: Field>(f: &Poly<F>) -> Result<Poly<F>> {
    let field = f.field();
    let p = char_p(field)? as usize;
    let mut out = Vec::new();
    let mut cur: Vec<F::Elem> = f.coeffs().to_vec();
    while !cur.is_empty() {
        // Divide by x^p - x: each top term c x^i becomes c x^(i-p) in the
        // quotient and adds c x^(i-p+1) back into the dividend.
        let mut q = vec![field.zero(); cur.len().saturating_sub(p)];
        for i in (p..cur.len()).rev() {
            let t = std::mem::replace(&mut cur[i], field.zero());
            if field.is_zero(&t) {
                continue;
            }
            cur[i + 1 - p] = field.add(&cur[i + 1 - p], &t);
            q[i - p] = t;
        }
        cur.truncate(p.min(cur.len()));
        if cur.iter().skip(1).any(|c| !field.is_zero(c)) {
            return Err(Error::NotCentral);
        }
        out.push(cur.first().cloned().unwrap_or_else(|| field.zero()));
        cur = Poly::new(field, q).into_coeffs();
    }
    Ok(Poly::new(field, out))
}

/// Evaluate `g(Z)` at `Z = x^p - x`.
pub fn from_center<F: Field>(g: &Poly<F>) -> Result<Poly<F>> {
    let field = g.field();
    let p = char_p(field)? as usize;
    let z = &Poly::monomial(field, field.one(), p) - &Poly::x(field);
    Ok(g.compose(&z))
}

/// `u` with `u * b ≡ 1 (mod Z^m)`.
pub fn series_inverse<F: Field>(b: &Poly<F>, m: usize) -> Result<Poly<F>> {
    let field = b.field();
    let b0 = b.coeff(0);
    if field.is_zero(&b0) {
        return Err(Error::NotAUnit);
    }
    let inv0 = field.inv(&b0);
    let mut u: Vec<F::Elem> = Vec::with_capacity(m);
    for k in 0..m {
        let mut s = if k == 0 { field.one() } else { field.zero() };
        for j in 1..=k.min(b.deg()) {
            s = field.sub(&s, &field.mul(&b.coeff(j), &u[k - j]));
        }
        u.push(field.mul(&s, &inv0));
    }
    Ok(Poly::new(field, u))
}

/// An element of F(Z)[T], stored by ascending power of T.
#[derive(Clone, PartialEq, Eq)]
pub struct CenterPoly<F: Field> {
    field: F,
    coeffs: Vec<RatFun<F>>,
}

impl<F: Field> CenterPoly<F> {
    pub fn new(field: &F, mut coeffs: Vec<RatFun<F>>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        CenterPoly { field: field.clone(), coeffs }
    }

    pub fn from_polys(field: &F, coeffs: Vec<Poly<F>>) -> Self {
        Self::new(field, coeffs.into_iter().map(RatFun::from_poly).collect())
    }

    pub fn one(field: &F) -> Self {
        Self::new(field, vec![RatFun::one(field)])
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[RatFun<F>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree_t(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_polynomial())
    }

    /// Coefficient polynomials; `None` unless integral.
    pub fn polys(&self) -> Option<Vec<Poly<F>>> {
        self.coeffs.iter().map(|c| c.as_poly().cloned()).collect()
    }

    /// Largest Z-degree among the coefficient numerators.
    pub fn deg_z(&self) -> usize {
        self.coeffs.iter().map(|c| c.numer().deg()).max().unwrap_or(0)
    }

    /// Monic lcm of the coefficient denominators.
    pub fn denom(&self) -> Poly<F> {
        self.coeffs.iter().fold(Poly::one(&self.field), |acc, c| acc.lcm(c.denom()))
    }

    pub fn scale(&self, r: &RatFun<F>) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|c| c * r).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(&self.field, Vec::new());
        }
        let mut out = vec![RatFun::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(&self.field, out)
    }

    pub fn pow(&self, e: u64) -> Self {
        (0..e).fold(Self::one(&self.field), |acc, _| acc.mul(self))
    }

    /// Clear denominators, remove the polynomial content and make the leading
    /// coefficient monic. Zero maps to zero.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let d = RatFun::from_poly(self.denom());
        let cleared: Vec<Poly<F>> = self.coeffs.iter().map(|c| (c * &d).numer().clone()).collect();
        let g = self.field.gcd_polys(&cleared);
        let mut polys: Vec<Poly<F>> =
            cleared.iter().map(|c| c.exact_div(&g).expect("content divides")).collect();
        let lead = polys.last().and_then(|p| p.leading()).cloned().expect("nonzero");
        let inv = self.field.inv(&lead);
        for p in polys.iter_mut() {
            *p = p.scale(&inv);
        }
        Self::from_polys(&self.field, polys)
    }

    /// Reduce every (polynomial) coefficient modulo `Z^m`.
    pub fn truncate_z(&self, m: usize) -> Result<Self> {
        let polys = self.polys().ok_or(Error::NotIntegral)?;
        Ok(Self::from_polys(&self.field, polys.iter().map(|p| p.truncate(m)).collect()))
    }

    /// The operator `Σ c_i(x^p - x) τ^(p i)`; requires integral coefficients.
    pub fn to_operator(&self) -> Result<OrePoly<F>> {
        let p = char_p(&self.field)? as usize;
        let polys = self.polys().ok_or(Error::NotIntegral)?;
        let mut coeffs = vec![Poly::zero(&self.field); polys.len().saturating_sub(1) * p + 1];
        for (i, c) in polys.iter().enumerate() {
            coeffs[i * p] = from_center(c)?;
        }
        Ok(OrePoly::from_polys(&self.field, coeffs))
    }
}

impl<F: Field> fmt::Display for CenterPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.fmt_var("Z");
            let t = match i {
                0 => s,
                _ => {
                    let tp = if i == 1 { "T".to_string() } else { format!("T^{i}") };
                    if c.is_one() {
                        tp
                    } else {
                        format!("({s})*{tp}")
                    }
                }
            };
            terms.push(t);
        }
        f.write_str(&terms.join(" + "))
    }
}

impl<F: Field> fmt::Debug for CenterPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CenterPoly[{}]({})", self.field.spec(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn fp(p: u64, c: &[i64]) -> Poly<PrimeField> {
        Poly::from_i64s(&PrimeField::new(p).unwrap(), c)
    }

    #[test]
    fn norm_examples() {
        for p in [3, 5, 7] {
            assert_eq!(norm(&fp(p, &[0, 1])).unwrap(), fp(p, &[0, 1]));
            assert_eq!(norm(&fp(p, &[1])).unwrap(), fp(p, &[1]));
        }
        assert_eq!(norm(&fp(5, &[-1, 1])).unwrap(), fp(5, &[0, 1]));
        assert_eq!(norm(&fp(5, &[0, 0, 1])).unwrap(), fp(5, &[0, 0, 1]));
        assert_eq!(norm(&Poly::from_i64s(&Rationals, &[0, 1])), Err(Error::NeedsPositiveCharacteristic));
    }

    #[test]
    fn norm_ratfun_examples() {
        let f = PrimeField::new(5).unwrap();
        let r = RatFun::new(fp(5, &[0, 1]), fp(5, &[-1, 1])).unwrap();
        assert!(norm_ratfun(&r).unwrap().is_one());
        let c = RatFun::constant(&f, 3);
        assert_eq!(norm_ratfun(&c).unwrap(), c);
        assert_eq!(norm_ratfun(&RatFun::zero(&f)), Err(Error::ZeroInput));
    }

    #[test]
    fn to_center_examples() {
        assert_eq!(to_center(&fp(3, &[0, -1, 0, 1])).unwrap(), fp(3, &[0, 1]));
        assert_eq!(to_center(&fp(3, &[7])).unwrap(), fp(3, &[7]));
        let z = fp(3, &[0, -1, 0, 1]);
        let f = &(&(&z * &z) + &z.scale(&2)) + &fp(3, &[1]);
        assert_eq!(to_center(&f).unwrap(), fp(3, &[1, 2, 1]));
        assert_eq!(to_center(&fp(3, &[0, 1])), Err(Error::NotCentral));
    }

    #[test]
    fn series_inverse_examples() {
        assert_eq!(series_inverse(&fp(7, &[1]), 5).unwrap(), fp(7, &[1]));
        assert_eq!(series_inverse(&fp(7, &[1, -1]), 3).unwrap(), fp(7, &[1, 1, 1]));
        assert_eq!(series_inverse(&fp(7, &[2, 1]), 2).unwrap(), fp(7, &[4, 5]));
        assert_eq!(series_inverse(&fp(7, &[0, 1]), 2), Err(Error::NotAUnit));
    }

    #[test]
    fn center_primitive() {
        let f = PrimeField::new(5).unwrap();
        let c = CenterPoly::from_polys(&f, vec![fp(5, &[0, 2]), fp(5, &[0, 0, 3])]);
        let p = c.primitive();
        assert_eq!(p.polys().unwrap(), vec![fp(5, &[4]), fp(5, &[0, 1])]);
    }
}
