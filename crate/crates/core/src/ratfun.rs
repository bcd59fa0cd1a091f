//! Rational functions in lowest terms with a monic denominator.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// `num / den` with `gcd(num, den) = 1` and `den` monic; zero is `0/1`.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFun<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFun<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        let field = num.field().clone();
        let lead = den.leading().cloned().ok_or(Error::DivisionByZero)?;
        if num.is_zero() {
            return Ok(Self::zero(&field));
        }
        if den.is_constant() {
            let inv = field.inv(&lead);
            return Ok(RatFun { num: num.scale(&inv), den: Poly::one(&field) });
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        let inv = field.inv(den.leading().expect("nonzero"));
        Ok(RatFun { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        let field = p.field().clone();
        RatFun { num: p, den: Poly::one(&field) }
    }

    pub fn zero(field: &F) -> Self {
        RatFun { num: Poly::zero(field), den: Poly::one(field) }
    }

    pub fn one(field: &F) -> Self {
        Self::from_poly(Poly::one(field))
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::from_poly(Poly::constant(field, c))
    }

    pub fn field(&self) -> &F {
        self.num.field()
    }

    pub fn numer(&self) -> &Poly<F> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The numerator when the denominator is 1.
    pub fn as_poly(&self) -> Option<&Poly<F>> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field().is_zero(c) {
            return Self::zero(self.field());
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &Poly<F>) -> Self {
        if self.is_polynomial() {
            return Self::from_poly(&self.num * p);
        }
        Self::new(&self.num * p, self.den.clone()).expect("nonzero denominator")
    }

    /// `r(x + k)`.
    pub fn shift(&self, k: i64) -> Self {
        RatFun { num: self.num.shift(k), den: self.den.shift(k) }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u64) -> Self {
        RatFun { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.den.is_one() {
            return self.num.fmt_var(var);
        }
        format!("({})/({})", self.num.fmt_var(var), self.den.fmt_var(var))
    }
}

impl<F: Field> fmt::Display for RatFun<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("x"))
    }
}

impl<F: Field> fmt::Debug for RatFun<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun[{}]({})", self.field().spec(), self)
    }
}

impl<F: Field> Add for &RatFun<F> {
    type Output = RatFun<F>;
    fn add(self, rhs: &RatFun<F>) -> RatFun<F> {
        if self.den == rhs.den {
            if self.den.is_one() {
                return RatFun::from_poly(&self.num + &rhs.num);
            }
            return RatFun::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFun::new(num, &self.den * &rhs.den).expect("nonzero")
    }
}

impl<F: Field> Sub for &RatFun<F> {
    type Output = RatFun<F>;
    fn sub(self, rhs: &RatFun<F>) -> RatFun<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Neg for &RatFun<F> {
    type Output = RatFun<F>;
    fn neg(self) -> RatFun<F> {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl<F: Field> Mul for &RatFun<F> {
    type Output = RatFun<F>;
    fn mul(self, rhs: &RatFun<F>) -> RatFun<F> {
        if self.den.is_one() && rhs.den.is_one() {
            return RatFun::from_poly(&self.num * &rhs.num);
        }
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero(self.field());
        }
        // Cross-cancel first to keep intermediate degrees down.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).expect("divides");
        let d2 = rhs.den.exact_div(&g1).expect("divides");
        let n2 = rhs.num.exact_div(&g2).expect("divides");
        let d1 = self.den.exact_div(&g2).expect("divides");
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let field = num.field().clone();
        let inv = field.inv(den.leading().expect("nonzero"));
        RatFun { num: num.scale(&inv), den: den.scale(&inv) }
    }
}

impl<F: Field> Div for &RatFun<F> {
    type Output = RatFun<F>;
    /// Panics on division by zero.
    fn div(self, rhs: &RatFun<F>) -> RatFun<F> {
        self * &rhs.inv().expect("rational function division by zero")
    }
}
