//! p-curvature of difference operators over F_p(x), its characteristic
//! polynomial χ(L) in F_p(Z)[T], and the reduced norm χ̃(L).
//!
//! Matrices act on row vectors: row `j` of the companion matrix `C` holds
//! the coordinates of `τ·τ^j` in `D/DL`, and the p-curvature is
//! `M = σ^(p-1)(C) ··· σ(C) C`, so that `σ(M) = C M C^(-1)`.

use crate::center::{norm, norm_ratfun, series_inverse, shifted_product, to_center, CenterPoly};
use crate::desing::{lc0, lc1_algorithm2};
use crate::error::{Error, Result};
use crate::factor::factor;
use crate::field::PrimeField;
use crate::ore::{ore_mul, OrePoly};
use crate::poly::Poly;
use crate::ratfun::RatFun;

type Fp = Poly<PrimeField>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PCurvOptions {
    pub prime_cap: u64,
}

impl Default for PCurvOptions {
    fn default() -> Self {
        PCurvOptions { prime_cap: 211 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PCurvMatrix {
    pub size: usize,
    pub entries: Vec<Vec<RatFun<PrimeField>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiResult {
    /// Monic in T, coefficients in F_p(Z).
    pub chi: CenterPoly<PrimeField>,
    /// `N(lc*(L))·χ(L)`; present for integral `L`.
    pub chi_tilde: Option<CenterPoly<PrimeField>>,
    /// Monic denominator of `chi`, as a polynomial in Z.
    pub denom: Fp,
    pub prim_chi: CenterPoly<PrimeField>,
}

/// Output of the precision-reduced pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiDesing {
    pub prim_chi: CenterPoly<PrimeField>,
    pub lc1: Fp,
    pub alpha: Fp,
    /// `deg_x(L)`.
    pub d: usize,
    /// `deg_Z(β)` with `N(α) = Z^v β`.
    pub d1: usize,
    pub v: usize,
    /// Z-adic precision at which `χ̃` was requested.
    pub precision: usize,
}

/// Integral primitive form with its order, after checking the prime cap.
fn prepare(l: &OrePoly<PrimeField>, opts: &PCurvOptions) -> Result<(OrePoly<PrimeField>, usize)> {
    let p = l.field().modulus();
    if p > opts.prime_cap {
        return Err(Error::PrimeTooLarge { p, cap: opts.prime_cap });
    }
    let n = l.order().ok_or(Error::ZeroInput)?;
    if n == 0 {
        return Err(Error::OrderZero);
    }
    Ok((l.prim()?, n))
}

/// `σ^(p-1)(C̃) ··· C̃` where `C̃ = a_n C`, together with `N = Π σ^i(a_n)`.
fn scaled_product(l: &OrePoly<PrimeField>, n: usize) -> Result<(Vec<Vec<Fp>>, Fp)> {
    let field = *l.field();
    let p = field.modulus() as i64;
    let a = l.polys().ok_or(Error::NotIntegral)?;
    let zero = Poly::zero(&field);
    let mut m = vec![vec![zero.clone(); n]; n];
    for j in 0..n - 1 {
        m[j][j + 1] = a[n].clone();
    }
    for k in 0..n {
        m[n - 1][k] = -&a[k];
    }
    for i in 1..p {
        let s: Vec<Fp> = a.iter().map(|c| c.shift(i)).collect();
        let mut last = vec![zero.clone(); n];
        for (k, row) in m.iter().enumerate() {
            if s[k].is_zero() {
                continue;
            }
            for (acc, e) in last.iter_mut().zip(row) {
                *acc = &*acc - &(&s[k] * e);
            }
        }
        let mut next: Vec<Vec<Fp>> = m[1..].iter().map(|row| row.iter().map(|e| &s[n] * e).collect()).collect();
        next.push(last);
        m = next;
    }
    Ok((m, shifted_product(&a[n])?))
}

/// Coefficients `[1, c_(n-1), ..., c_0]` of `det(Y - A)`, division free.
fn berkowitz(a: &[Vec<Fp>], field: &PrimeField) -> Vec<Fp> {
    let n = a.len();
    let mut poly = vec![Poly::one(field), -&a[0][0]];
    for r in 1..n {
        let col: Vec<Fp> = (0..r).map(|i| a[i][r].clone()).collect();
        let row = &a[r][..r];
        let dot = |v: &[Fp]| row.iter().zip(v).fold(Poly::zero(field), |acc, (x, y)| &acc + &(x * y));
        let mut toeplitz = vec![Poly::one(field), -&a[r][r]];
        let mut v = col;
        for k in 0..r {
            toeplitz.push(-&dot(&v));
            if k + 1 < r {
                v = (0..r)
                    .map(|i| (0..r).fold(Poly::zero(field), |acc, j| &acc + &(&a[i][j] * &v[j])))
                    .collect();
            }
        }
        poly = (0..r + 2)
            .map(|i| {
                (0..=i.min(r)).fold(Poly::zero(field), |acc, j| &acc + &(&toeplitz[i - j] * &poly[j]))
            })
            .collect();
    }
    poly
}

pub fn p_curvature(l: &OrePoly<PrimeField>, opts: &PCurvOptions) -> Result<PCurvMatrix> {
    let (l, n) = prepare(l, opts)?;
    let (m, den) = scaled_product(&l, n)?;
    let entries = m
        .into_iter()
        .map(|row| row.into_iter().map(|e| RatFun::new(e, den.clone())).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(PCurvMatrix { size: n, entries })
}

pub fn chi(l: &OrePoly<PrimeField>, opts: &PCurvOptions) -> Result<ChiResult> {
    let field = *l.field();
    let (prim, n) = prepare(l, opts)?;
    let (m, den) = scaled_product(&prim, n)?;
    let cs = berkowitz(&m, &field);
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut den_pow = Poly::one(&field);
    for c in &cs {
        // cs[i] is the coefficient of Y^(n-i); divide by N^i.
        let r = RatFun::new(c.clone(), den_pow.clone())?;
        coeffs.push(RatFun::new(to_center(r.numer())?, to_center(r.denom())?)?);
        den_pow = &den_pow * &den;
    }
    coeffs.reverse();
    let chi = CenterPoly::new(&field, coeffs);
    let chi_tilde = if l.is_integral() {
        let t = chi.scale(&RatFun::from_poly(norm(&l.lc_star()?)?));
        if !t.is_integral() {
            return Err(Error::Internal("reduced norm is not integral".into()));
        }
        Some(t)
    } else {
        None
    };
    Ok(ChiResult { denom: chi.denom(), prim_chi: chi.primitive(), chi, chi_tilde })
}

pub fn denom_chi(l: &OrePoly<PrimeField>, opts: &PCurvOptions) -> Result<Fp> {
    Ok(chi(l, opts)?.denom)
}

/// `N(lc0(L)) == denom(χ(L))`, i.e. `L` has no apparent singularities.
pub fn is_gaussian(l: &OrePoly<PrimeField>, opts: &PCurvOptions) -> Result<bool> {
    if !l.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    Ok(norm(&lc0(l)?)? == denom_chi(l, opts)?)
}

/// One monic irreducible factor of `q(x^p - x)` per irreducible factor `q`
/// of `denom(χ(L))`, with multiplicity.
pub fn true_singularity_classes(l: &OrePoly<PrimeField>, opts: &PCurvOptions) -> Result<Vec<(Fp, usize)>> {
    let d = denom_chi(l, opts)?;
    let mut out = Vec::new();
    for (q, m) in factor(&d) {
        let lifted = crate::center::from_center(&q)?;
        let rep = factor(&lifted)
            .into_iter()
            .map(|(f, _)| f)
            .min_by(|a, b| (a.coeff(0), a.coeffs()).cmp(&(b.coeff(0), b.coeffs())))
            .ok_or_else(|| Error::Internal("empty factorization".into()))?;
        out.push((rep, m));
    }
    Ok(out)
}

/// `χ̃(L) mod Z^precision`, from the exact characteristic polynomial.
pub fn chi_tilde_truncated(
    l: &OrePoly<PrimeField>,
    precision: usize,
    opts: &PCurvOptions,
) -> Result<CenterPoly<PrimeField>> {
    chi(l, opts)?.chi_tilde.ok_or(Error::NotIntegral)?.truncate_z(precision)
}

pub fn xi_p_desing(l: &OrePoly<PrimeField>, opts: &PCurvOptions) -> Result<XiDesing> {
    xi_p_desing_with(l, opts, chi_tilde_truncated)
}

/// As `xi_p_desing`, with `oracle(L, m, opts)` supplying `χ̃(L) mod Z^m`.
pub fn xi_p_desing_with(
    l: &OrePoly<PrimeField>,
    opts: &PCurvOptions,
    oracle: impl Fn(&OrePoly<PrimeField>, usize, &PCurvOptions) -> Result<CenterPoly<PrimeField>>,
) -> Result<XiDesing> {
    let field = *l.field();
    if !l.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    let report = lc1_algorithm2(l)?;
    let alpha = report.rp1;
    let na = norm(&alpha)?;
    let v = na.valuation().ok_or(Error::ZeroInput)?;
    let beta = na.shr(v);
    let d = l.x_degree();
    let d1 = beta.deg();
    let deg_alpha = alpha.deg();
    if deg_alpha > d {
        return Err(Error::Internal("removable part exceeds the x-degree".into()));
    }
    // χ̃ / N(α) has Z-degree at most bound = d - deg α = d - d1 - v.
    let bound = d - deg_alpha;
    let precision = d - d1 + 1;
    let truncated = oracle(l, precision, opts)?;
    let polys = truncated.polys().ok_or(Error::NotIntegral)?;
    let u = series_inverse(&beta, bound + 1)?;
    let mut out = Vec::with_capacity(polys.len());
    for c in &polys {
        let c = c.truncate(precision);
        if c.valuation().is_some_and(|k| k < v) {
            return Err(Error::PrecisionContract(format!("coefficient {c} is not divisible by Z^{v}")));
        }
        out.push((&c.shr(v) * &u).truncate(bound + 1));
    }
    let prim_chi = CenterPoly::from_polys(&field, out).primitive();
    Ok(XiDesing { prim_chi, lc1: report.lc1, alpha, d, d1, v, precision })
}

/// `denom(χ(AL)) == denom(χ(A)) denom(χ(L))`.
pub fn denom_multiplicativity_check(
    a: &OrePoly<PrimeField>,
    l: &OrePoly<PrimeField>,
    opts: &PCurvOptions,
) -> Result<bool> {
    let prod = ore_mul(a, l)?;
    let lhs = denom_chi(&prod, opts)?;
    let rhs = &denom_chi(a, opts)? * &denom_chi(l, opts)?;
    Ok(lhs == rhs)
}

/// `r1 ~ r2` iff `r1 / r2 = τ(f) / f` for some nonzero `f`.
pub fn shift_equivalent(r1: &RatFun<PrimeField>, r2: &RatFun<PrimeField>) -> Result<bool> {
    Ok(norm_ratfun(r1)? == norm_ratfun(r2)?)
}
