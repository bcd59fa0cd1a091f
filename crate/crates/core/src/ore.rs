//! Shift Ore operators `Σ a_i(x) τ^i` with `τ r(x) = r(x+1) τ`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::poly::Poly;
use crate::ratfun::RatFun;

/// An operator in F(x)[τ], coefficients indexed by the power of τ.
#[derive(Clone, PartialEq, Eq)]
pub struct OrePoly<F: Field> {
    field: F,
    coeffs: Vec<RatFun<F>>,
}

/// Matrix of τ acting on the basis `1, τ, ..., τ^(n-1)` of D/DL.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompanionMatrix<F: Field> {
    pub size: usize,
    pub entries: Vec<Vec<RatFun<F>>>,
}

/// Result of reducing a rational operator modulo a prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModReduction {
    pub operator: OrePoly<PrimeField>,
    /// Set when the leading coefficient vanished modulo p.
    pub order_dropped: bool,
}

impl<F: Field> OrePoly<F> {
    pub fn new(field: &F, mut coeffs: Vec<RatFun<F>>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        OrePoly { field: field.clone(), coeffs }
    }

    pub fn from_polys(field: &F, coeffs: Vec<Poly<F>>) -> Self {
        Self::new(field, coeffs.into_iter().map(RatFun::from_poly).collect())
    }

    pub fn zero(field: &F) -> Self {
        OrePoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &F) -> Self {
        Self::new(field, vec![RatFun::one(field)])
    }

    /// `r τ^k`.
    pub fn monomial(r: RatFun<F>, k: usize) -> Self {
        let field = r.field().clone();
        let mut v = vec![RatFun::zero(&field); k];
        v.push(r);
        Self::new(&field, v)
    }

    pub fn tau(field: &F) -> Self {
        Self::monomial(RatFun::one(field), 1)
    }

    /// `Σ c_i τ^i` with constant coefficients.
    pub fn from_constants(field: &F, cs: &[F::Elem]) -> Self {
        Self::new(field, cs.iter().map(|c| RatFun::constant(field, c.clone())).collect())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[RatFun<F>] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RatFun<F> {
        self.coeffs.get(i).cloned().unwrap_or_else(|| RatFun::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&RatFun<F>> {
        self.coeffs.last()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_polynomial())
    }

    /// Polynomial coefficients; `None` unless integral.
    pub fn polys(&self) -> Option<Vec<Poly<F>>> {
        self.coeffs.iter().map(|c| c.as_poly().cloned()).collect()
    }

    /// Polynomial coefficient `a_i` of an integral operator (zero past the order).
    pub fn poly_coeff(&self, i: usize) -> Poly<F> {
        match self.coeffs.get(i) {
            Some(c) => c.as_poly().cloned().expect("integral operator"),
            None => Poly::zero(&self.field),
        }
    }

    /// Largest x-degree among the numerators.
    pub fn x_degree(&self) -> usize {
        self.coeffs.iter().map(|c| c.numer().deg().max(c.denom().deg())).max().unwrap_or(0)
    }

    /// Lowest index with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// `r · self`.
    pub fn scale_left(&self, r: &RatFun<F>) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|c| r * c).collect())
    }

    /// `τ^k · self`.
    pub fn tau_left(&self, k: usize) -> Self {
        let mut v = vec![RatFun::zero(&self.field); k];
        v.extend(self.coeffs.iter().map(|c| c.shift(k as i64)));
        Self::new(&self.field, v)
    }

    /// Left-multiply by the inverse of the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale_left(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Euclidean right division: `self = Q·b + R` with `ord R < ord b`.
    pub fn right_divide(&self, b: &Self) -> Result<(Self, Self)> {
        self.same_field(b)?;
        let m = b.order().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let lb = b.leading().expect("nonzero");
        let mut r = self.coeffs.clone();
        let mut q = vec![RatFun::zero(f); r.len().saturating_sub(m)];
        while r.len() > m {
            let top = r.len() - 1;
            let k = top - m;
            let c = &r[top] / &lb.shift(k as i64);
            for (j, bj) in b.coeffs.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let t = &c * &bj.shift(k as i64);
                r[j + k] = &r[j + k] - &t;
            }
            debug_assert!(r[top].is_zero());
            q[k] = c;
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Ok((Self::new(f, q), Self::new(f, r)))
    }

    /// Content of an integral operator: monic gcd of its coefficients.
    pub fn content(&self) -> Result<Poly<F>> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let polys = self.polys().ok_or(Error::NotIntegral)?;
        Ok(self.field.gcd_polys(&polys))
    }

    /// Clear denominators and divide out the content; the result has
    /// polynomial coefficients with trivial gcd.
    fn clear_content(&self) -> Result<Vec<Poly<F>>> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let polys = match self.polys() {
            Some(p) => p,
            None => {
                let d = self
                    .coeffs
                    .iter()
                    .fold(Poly::one(&self.field), |acc, c| acc.lcm(c.denom()));
                self.coeffs.iter().map(|c| c.mul_poly(&d).numer().clone()).collect()
            }
        };
        let g = self.field.gcd_polys(&polys);
        if g.is_one() {
            return Ok(polys);
        }
        // An integral-primitive divisor keeps the quotients integral over Q.
        let g = g.scale(&self.field.integral_scale(g.coeffs()));
        Ok(polys.iter().map(|c| c.exact_div(&g).expect("content divides")).collect())
    }

    /// Canonical primitive part: integral, content 1, leading polynomial monic.
    pub fn prim(&self) -> Result<Self> {
        let polys = self.clear_content()?;
        let lead = polys.last().and_then(|p| p.leading()).cloned().expect("nonzero");
        let inv = self.field.inv(&lead);
        Ok(Self::from_polys(&self.field, polys.iter().map(|p| p.scale(&inv)).collect()))
    }

    /// Primitive part scaled by [`Field::integral_scale`]; over Q the
    /// coefficients are coprime integers, over F_p this equals [`prim`].
    ///
    /// [`prim`]: OrePoly::prim
    pub fn prim_scaled(&self) -> Result<Self> {
        let polys = self.clear_content()?;
        let flat: Vec<F::Elem> = polys.iter().flat_map(|p| p.coeffs().iter().cloned()).collect();
        let s = self.field.integral_scale(&flat);
        Ok(Self::from_polys(&self.field, polys.iter().map(|p| p.scale(&s)).collect()))
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.is_integral() && self.content().is_ok_and(|c| c.is_one())
    }

    /// Adjusted leading coefficient `a_n(x - n)`, made monic.
    pub fn lc_star(&self) -> Result<Poly<F>> {
        let n = self.order().ok_or(Error::ZeroInput)?;
        let a = self.coeffs[n].as_poly().ok_or(Error::NotIntegral)?;
        Ok(a.shift(-(n as i64)).monic())
    }

    /// Trailing coefficient `a_0`, made monic.
    pub fn tc_star(&self) -> Result<Poly<F>> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        if self.coeffs[0].is_zero() {
            return Err(Error::ZeroTrailing);
        }
        Ok(self.coeffs[0].as_poly().ok_or(Error::NotIntegral)?.monic())
    }

    /// Trailing coefficient after dividing out the largest left power of τ:
    /// `a_m(x - m)` made monic, with `m` the valuation.
    pub fn tc_star_shifted(&self) -> Result<Poly<F>> {
        let m = self.valuation().ok_or(Error::ZeroInput)?;
        let a = self.coeffs[m].as_poly().ok_or(Error::NotIntegral)?;
        Ok(a.shift(-(m as i64)).monic())
    }

    pub fn companion(&self) -> Result<CompanionMatrix<F>> {
        let n = self.order().ok_or(Error::ZeroInput)?;
        if n == 0 {
            return Err(Error::OrderZero);
        }
        let f = &self.field;
        let lead = self.coeffs[n].inv().expect("nonzero");
        let mut entries = vec![vec![RatFun::zero(f); n]; n];
        for (i, row) in entries.iter_mut().enumerate().take(n - 1) {
            row[i + 1] = RatFun::one(f);
        }
        for j in 0..n {
            entries[n - 1][j] = -&(&self.coeffs[j] * &lead);
        }
        Ok(CompanionMatrix { size: n, entries })
    }

    /// Apply `f` to every polynomial coefficient of an integral operator.
    pub fn map_polys(&self, mut f: impl FnMut(&Poly<F>) -> Poly<F>) -> Result<Self> {
        let polys = self.polys().ok_or(Error::NotIntegral)?;
        Ok(Self::from_polys(&self.field, polys.iter().map(&mut f).collect()))
    }

    pub fn fmt_with(&self, var: &str, op: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.fmt_var(var);
            let tp = match i {
                0 => String::new(),
                1 => op.to_string(),
                _ => format!("{op}^{i}"),
            };
            terms.push(match (i, c.is_one()) {
                (0, _) => format!("({s})"),
                (_, true) => tp,
                _ => format!("({s})*{tp}"),
            });
        }
        terms.join(" + ")
    }
}

impl OrePoly<Rationals> {
    /// Reduce modulo `p` after clearing denominators. Integer content is
    /// kept, so `2τ - 2` is degenerate modulo 2.
    pub fn reduce_mod_p(&self, p: u64) -> Result<ModReduction> {
        use num_integer::Integer;
        let fp = PrimeField::new(p)?;
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let d = self.coeffs.iter().fold(Poly::one(&Rationals), |acc, c| acc.lcm(c.denom()));
        let polys: Vec<Poly<Rationals>> =
            self.coeffs.iter().map(|c| c.mul_poly(&d).numer().clone()).collect();
        let den = polys
            .iter()
            .flat_map(|c| c.coeffs().iter())
            .fold(num_bigint::BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        let den = num_rational::BigRational::from_integer(den);
        let reduced: Vec<Poly<PrimeField>> =
            polys.iter().map(|c| poly_mod_p(&c.scale(&den), &fp)).collect();
        let operator = OrePoly::from_polys(&fp, reduced);
        if operator.is_zero() {
            return Err(Error::DegenerateReduction(p));
        }
        let order_dropped = operator.order() != self.order();
        Ok(ModReduction { operator, order_dropped })
    }
}

/// Image of a rational polynomial in F_p[x]. Panics if `p` divides a
/// denominator.
pub fn poly_mod_p(f: &Poly<Rationals>, fp: &PrimeField) -> Poly<PrimeField> {
    Poly::new(
        fp,
        f.coeffs()
            .iter()
            .map(|c| fp.from_rational(c).expect("p divides a denominator"))
            .collect(),
    )
}

/// Product in the Ore ring.
pub fn ore_mul<F: Field>(a: &OrePoly<F>, b: &OrePoly<F>) -> Result<OrePoly<F>> {
    a.same_field(b)?;
    Ok(a * b)
}

/// Greatest common right divisor, made monic.
pub fn gcrd<F: Field>(a: &OrePoly<F>, b: &OrePoly<F>) -> Result<OrePoly<F>> {
    a.same_field(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::AllZero);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_zero() {
        let (_, r) = r0.right_divide(&r1)?;
        r0 = r1;
        r1 = r.monic();
    }
    Ok(r0.monic())
}

/// Least common left multiple, made monic.
pub fn lclm<F: Field>(a: &OrePoly<F>, b: &OrePoly<F>) -> Result<OrePoly<F>> {
    Ok(lclm_prim(a, b)?.monic())
}

/// `prim(lclm(a, b))`, avoiding the monic normalization where possible.
pub fn lclm_prim<F: Field>(a: &OrePoly<F>, b: &OrePoly<F>) -> Result<OrePoly<F>> {
    a.same_field(b)?;
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    if let Some(r) = a.field.lclm_prim_fast(a, b) {
        return r;
    }
    lclm_euclid(a, b)
}

/// Fraction-free extended Euclidean scheme over F[x][τ].
///
/// Keeps pairs `(R_i, U_i)` with `R_i = U_i a + V_i b`; when a remainder
/// vanishes, `U a` is the least common left multiple. Returns its canonical
/// primitive part.
pub fn lclm_euclid<F: Field>(a: &OrePoly<F>, b: &OrePoly<F>) -> Result<OrePoly<F>> {
    a.same_field(b)?;
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let f = &a.field;
    let a = a.prim_scaled()?;
    let b = b.prim_scaled()?;
    let mut r0 = a.polys().expect("integral");
    let mut u0 = vec![Poly::one(f)];
    let mut r1 = b.polys().expect("integral");
    let mut u1: Vec<Poly<F>> = Vec::new();
    loop {
        let (r, u) = pseudo_reduce(f, &r0, &u0, &r1, &u1);
        if r.is_empty() {
            return (&OrePoly::from_polys(f, u) * &a).prim();
        }
        r0 = std::mem::replace(&mut r1, r);
        u0 = std::mem::replace(&mut u1, u);
    }
}

fn trim<F: Field>(v: &mut Vec<Poly<F>>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// `s·x - c·τ^k·y` on coefficient vectors.
fn combine<F: Field>(s: &Poly<F>, x: &[Poly<F>], c: &Poly<F>, k: usize, y: &[Poly<F>]) -> Vec<Poly<F>> {
    let f = s.field();
    let n = x.len().max(y.len() + k);
    let mut out = vec![Poly::zero(f); n];
    for (i, xi) in x.iter().enumerate() {
        out[i] = s * xi;
    }
    for (j, yj) in y.iter().enumerate() {
        if !yj.is_zero() {
            out[j + k] = &out[j + k] - &(c * &yj.shift(k as i64));
        }
    }
    trim(&mut out);
    out
}

/// Pseudo right remainder of `r0` by `r1`, applying the same row operations
/// to the cofactors, then removing the joint content.
fn pseudo_reduce<F: Field>(
    f: &F,
    r0: &[Poly<F>],
    u0: &[Poly<F>],
    r1: &[Poly<F>],
    u1: &[Poly<F>],
) -> (Vec<Poly<F>>, Vec<Poly<F>>) {
    let m = r1.len() - 1;
    let l1 = r1.last().expect("nonzero divisor");
    let (mut r, mut u) = (r0.to_vec(), u0.to_vec());
    while r.len() > m {
        let k = r.len() - 1 - m;
        let mut s = l1.shift(k as i64);
        let mut c = r.last().expect("nonempty").clone();
        let g = s.gcd(&c);
        if !g.is_one() {
            s = s.exact_div(&g).expect("divides");
            c = c.exact_div(&g).expect("divides");
        }
        let len = r.len();
        r = combine(&s, &r, &c, k, r1);
        debug_assert!(r.len() < len);
        u = combine(&s, &u, &c, k, u1);
    }
    if !r.is_empty() {
        let all: Vec<Poly<F>> = r.iter().chain(u.iter()).cloned().collect();
        let g = f.gcd_polys(&all);
        if !g.is_one() {
            let g = g.scale(&f.integral_scale(g.coeffs()));
            r = r.iter().map(|c| c.exact_div(&g).expect("divides")).collect();
            u = u.iter().map(|c| c.exact_div(&g).expect("divides")).collect();
        }
    }
    (r, u)
}

/// Whether `b` right-divides `l`, by fraction-free pseudo-division.
pub fn right_divides<F: Field>(b: &OrePoly<F>, l: &OrePoly<F>) -> Result<bool> {
    l.same_field(b)?;
    let b = b.prim_scaled()?;
    if l.is_zero() {
        return Ok(true);
    }
    let f = &b.field;
    let bp = b.polys().expect("integral");
    let lp = l.prim_scaled()?.polys().expect("integral");
    let (r, _) = pseudo_reduce(f, &lp, &[], &bp, &[]);
    Ok(r.is_empty())
}

impl<F: Field> fmt::Display for OrePoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with("x", "t"))
    }
}

impl<F: Field> fmt::Debug for OrePoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrePoly[{}]({})", self.field.spec(), self)
    }
}

impl<F: Field> Add for &OrePoly<F> {
    type Output = OrePoly<F>;
    fn add(self, rhs: &OrePoly<F>) -> OrePoly<F> {
        assert!(self.field == rhs.field, "field mismatch");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        OrePoly::new(&self.field, (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl<F: Field> Sub for &OrePoly<F> {
    type Output = OrePoly<F>;
    fn sub(self, rhs: &OrePoly<F>) -> OrePoly<F> {
        assert!(self.field == rhs.field, "field mismatch");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        OrePoly::new(&self.field, (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl<F: Field> Neg for &OrePoly<F> {
    type Output = OrePoly<F>;
    fn neg(self) -> OrePoly<F> {
        OrePoly::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl<F: Field> Mul for &OrePoly<F> {
    type Output = OrePoly<F>;
    /// Panics on a field mismatch; see [`ore_mul`] for the checked version.
    fn mul(self, rhs: &OrePoly<F>) -> OrePoly<F> {
        assert!(self.field == rhs.field, "field mismatch");
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return OrePoly::zero(f);
        }
        let mut out = vec![RatFun::zero(f); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * &b.shift(i as i64));
            }
        }
        OrePoly::new(f, out)
    }
}
