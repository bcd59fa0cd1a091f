//! Essential and removable parts of the leading coefficient.
//!
//! `lc_k(L)` generates the ideal of adjusted leading coefficients of integral
//! left multiples `A·L` with `ord A ≤ k`; `rp_k(L) = lc(L) / lc_k(L)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ore::{lclm_prim, OrePoly};
use crate::poly::Poly;
use crate::ratfun::RatFun;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DesingMethod {
    Algorithm2,
    Algorithm3,
    LclmMc,
}

impl DesingMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            DesingMethod::Algorithm2 => "algorithm2",
            DesingMethod::Algorithm3 => "algorithm3",
            DesingMethod::LclmMc => "lclm_mc",
        }
    }
}

/// An intermediate value: `lc0(L_i)` for Algorithms 2 and 3, or the
/// per-trial candidate for the LCLM method (indexed by trial).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness<F: Field> {
    pub index: usize,
    pub value: Poly<F>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesingReport<F: Field> {
    pub lc0: Poly<F>,
    /// `lc_1(L)`, or for Algorithm 3 the bound `l` with `lc_1 | l | lc`.
    pub lc1: Poly<F>,
    pub rp1: Poly<F>,
    /// Algorithm 3 only: `t` with `tc_1 | t | tc`.
    pub tc_bound: Option<Poly<F>>,
    pub method: DesingMethod,
    pub witnesses: Vec<Witness<F>>,
}

impl<F: Field> DesingReport<F> {
    fn new(lc0: Poly<F>, lc1: Poly<F>, method: DesingMethod, witnesses: Vec<Witness<F>>) -> Result<Self> {
        let rp1 = lc0
            .exact_div(&lc1)
            .ok_or_else(|| Error::Internal(format!("{} does not divide {}", lc1, lc0)))?;
        Ok(DesingReport { lc0, lc1, rp1, tc_bound: None, method, witnesses })
    }
}

/// `lc_star(prim(L))`.
pub fn lc0<F: Field>(l: &OrePoly<F>) -> Result<Poly<F>> {
    l.prim_scaled()?.lc_star()
}

/// Order of a primitive operator of positive order.
fn primitive_order<F: Field>(l: &OrePoly<F>) -> Result<usize> {
    let n = l.order().ok_or(Error::ZeroInput)?;
    if !l.is_integral() || !l.content()?.is_one() {
        return Err(Error::NotPrimitive);
    }
    if n == 0 {
        return Err(Error::OrderZero);
    }
    Ok(n)
}

/// `L_i = (a_i τ - a_{i-1}(x+1))·L`, with `a_j = 0` outside `0..=n`.
pub fn build_li<F: Field>(l: &OrePoly<F>, i: usize) -> Result<OrePoly<F>> {
    let n = l.order().ok_or(Error::ZeroInput)?;
    if !l.is_integral() {
        return Err(Error::NotIntegral);
    }
    if i > n + 1 {
        return Err(Error::IndexOutOfRange { index: i, max: n + 1 });
    }
    let f = l.field();
    let prev = if i == 0 { Poly::zero(f) } else { l.poly_coeff(i - 1).shift(1) };
    let left = OrePoly::from_polys(f, vec![-&prev, l.poly_coeff(i)]);
    Ok(&left * l)
}

/// Indices whose coefficients have gcd 1, chosen greedily by ascending
/// degree; an index is admitted only if it lowers the running gcd.
pub fn select_index_set<F: Field>(l: &OrePoly<F>) -> Result<Vec<usize>> {
    if l.is_zero() {
        return Err(Error::ZeroInput);
    }
    let polys = l.polys().ok_or(Error::NotPrimitive)?;
    let mut order: Vec<usize> = (0..polys.len()).filter(|&i| !polys[i].is_zero()).collect();
    order.sort_by_key(|&i| (polys[i].deg(), i));
    let mut g: Option<Poly<F>> = None;
    let mut chosen = Vec::new();
    for i in order {
        let next = match &g {
            None => polys[i].monic(),
            Some(g) => g.gcd(&polys[i]),
        };
        if g.as_ref().is_none_or(|g| next.deg() < g.deg()) {
            chosen.push(i);
            g = Some(next);
        }
        if g.as_ref().is_some_and(|g| g.is_one()) {
            chosen.sort_unstable();
            return Ok(chosen);
        }
    }
    Err(Error::NotPrimitive)
}

/// Exact `lc_1(L)` as the gcd of `lc0(L_i)` over a coprime index set.
pub fn lc1_algorithm2<F: Field>(l: &OrePoly<F>) -> Result<DesingReport<F>> {
    primitive_order(l)?;
    let l = &l.prim_scaled()?;
    let lc = l.lc_star()?;
    let idx = select_index_set(l)?;
    let witnesses = idx
        .par_iter()
        .map(|&i| Ok(Witness { index: i, value: lc0(&build_li(l, i)?)? }))
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<Poly<F>> = witnesses.iter().map(|w| w.value.clone()).collect();
    let lc1 = l.field().gcd_polys(&values);
    DesingReport::new(lc, lc1, DesingMethod::Algorithm2, witnesses)
}

/// Bounds `l` and `t` from the single multiple `L_i`, `i = ⌊n/2⌋`.
pub fn lc1_tc1_algorithm3<F: Field>(l: &OrePoly<F>) -> Result<DesingReport<F>> {
    let n = primitive_order(l)?;
    if l.coeff(0).is_zero() {
        return Err(Error::ZeroTrailing);
    }
    let l = &l.prim_scaled()?;
    let i = n / 2;
    let lc = l.lc_star()?;
    let li = build_li(l, i)?;
    if li.is_zero() {
        // a_i = a_(i-1) = 0: the multiple carries no information.
        let mut report = DesingReport::new(lc.clone(), lc, DesingMethod::Algorithm3, Vec::new())?;
        report.tc_bound = Some(l.tc_star()?);
        return Ok(report);
    }
    let li = li.prim_scaled()?;
    let li_lc = li.lc_star()?;
    let lbound = lc.gcd(&li_lc);
    let t = l.tc_star()?.gcd(&li.tc_star_shifted()?);
    let mut report =
        DesingReport::new(lc, lbound, DesingMethod::Algorithm3, vec![Witness { index: i, value: li_lc }])?;
    report.tc_bound = Some(t);
    Ok(report)
}

/// Algorithm 3 for operators `L = L̃·τ^m` with a vanishing low part.
///
/// `L̃ = Σ a_i τ^(i-m)` has the same coefficients and nonzero trailing term;
/// integral left multiples of `L` and `L̃` correspond, so the leading bounds
/// are shifted back by `m` and the trailing bound refers to `a_m`.
pub fn lc1_tc1_algorithm3_stripped<F: Field>(l: &OrePoly<F>) -> Result<DesingReport<F>> {
    let m = l.valuation().ok_or(Error::ZeroInput)?;
    if m == 0 {
        return lc1_tc1_algorithm3(l);
    }
    let stripped = OrePoly::new(l.field(), l.coeffs()[m..].to_vec());
    let mut r = lc1_tc1_algorithm3(&stripped)?;
    let back = |p: &Poly<F>| p.shift(-(m as i64));
    r.lc0 = back(&r.lc0);
    r.lc1 = back(&r.lc1);
    r.rp1 = back(&r.rp1);
    for w in r.witnesses.iter_mut() {
        w.value = back(&w.value);
    }
    Ok(r)
}

/// Randomized bound: `gcd(lc(L), lc(prim(lclm(Σ c_i τ^i, L))))`, combined
/// over `trials` independent draws.
pub fn lclm_method<F: Field>(l: &OrePoly<F>, k: usize, trials: usize, seed: u64) -> Result<DesingReport<F>> {
    primitive_order(l)?;
    let f = l.field();
    let p = f.characteristic();
    if p != 0 && p <= k as u64 + 1 {
        return Err(Error::FieldTooSmall { p, k });
    }
    let l = &l.prim_scaled()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lc = l.lc_star()?;
    let mut witnesses = Vec::new();
    let mut acc = lc.clone();
    for trial in 0..trials.max(1) {
        let mut cs: Vec<F::Elem> = (0..k).map(|_| f.sample(&mut rng)).collect();
        cs.push(f.sample_nonzero(&mut rng));
        let a = OrePoly::from_constants(f, &cs);
        let lp = lclm_prim(&a, l)?;
        let cand = lc.gcd(&lp.lc_star()?);
        acc = acc.gcd(&cand);
        witnesses.push(Witness { index: trial, value: cand });
    }
    DesingReport::new(lc, acc, DesingMethod::LclmMc, witnesses)
}

/// Removable part `lc(L) / lc_k(L)` for `k ∈ {0, 1}`.
pub fn rp<F: Field>(l: &OrePoly<F>, k: usize) -> Result<Poly<F>> {
    let integral = if l.is_integral() { l.clone() } else { l.prim()? };
    let lc = integral.lc_star()?;
    let lck = match k {
        0 => lc0(l)?,
        1 => lc1_algorithm2(&l.prim()?)?.lc1,
        _ => return Err(Error::IndexOutOfRange { index: k, max: 1 }),
    };
    lc.exact_div(&lck).ok_or_else(|| Error::Internal("lc_k does not divide lc".into()))
}

/// `(C_1, C_0)` with `C_1 = Σ c_i a_i` and `C_0 = Σ c_i a_{i-1}(x+1)`, so that
/// `Σ c_i L_i = (C_1 τ - C_0)·L`.
pub fn sandwich_multipliers<F: Field>(l: &OrePoly<F>, c: &[F::Elem]) -> Result<(Poly<F>, Poly<F>)> {
    let n = l.order().ok_or(Error::ZeroInput)?;
    if c.len() != n + 2 {
        return Err(Error::IndexOutOfRange { index: c.len(), max: n + 2 });
    }
    let f = l.field();
    let mut c1 = Poly::zero(f);
    let mut c0 = Poly::zero(f);
    for (i, ci) in c.iter().enumerate() {
        c1 = &c1 + &l.poly_coeff(i).scale(ci);
        if i > 0 {
            c0 = &c0 + &l.poly_coeff(i - 1).shift(1).scale(ci);
        }
    }
    Ok((c1, c0))
}

/// Checks `lc1 | lc0(L') | C_1(x-n-1)·lc1` for `L' = (C_1 τ - C_0)·L`.
pub fn sandwich_check<F: Field>(l: &OrePoly<F>, c: &[F::Elem]) -> Result<bool> {
    let n = primitive_order(l)?;
    let (c1, c0) = sandwich_multipliers(l, c)?;
    if c1.is_zero() {
        return Err(Error::ZeroInput);
    }
    let left = OrePoly::from_polys(l.field(), vec![-&c0, c1.clone()]);
    let lp = lc0(&(&left * l))?;
    let lc1 = lc1_algorithm2(l)?.lc1;
    let upper = &c1.shift(-(n as i64) - 1) * &lc1;
    Ok(lc1.divides(&lp) && lp.divides(&upper))
}

/// A polynomial `b` with `deg b < deg g` such that `g` divides every
/// coefficient of `(τ - b)·L`, if one exists.
pub fn order_one_desingularizer<F: Field>(l: &OrePoly<F>, g: &Poly<F>) -> Result<Option<Poly<F>>> {
    let n = l.order().ok_or(Error::ZeroInput)?;
    if !l.is_integral() {
        return Err(Error::NotIntegral);
    }
    let f = l.field();
    let gd = g.degree().ok_or(Error::DivisionByZero)?;
    if gd == 0 {
        return Ok(Some(Poly::zero(f)));
    }
    // Unknowns: the gd coefficients of b. One block of gd equations per j.
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for j in 0..=n + 1 {
        let aj = l.poly_coeff(j).rem(g);
        let rhs = if j == 0 { Poly::zero(f) } else { l.poly_coeff(j - 1).shift(1).rem(g) };
        let cols: Vec<Poly<F>> = (0..gd).map(|k| aj.shl(k).rem(g)).collect();
        for r in 0..gd {
            let mut row: Vec<F::Elem> = cols.iter().map(|c| c.coeff(r)).collect();
            row.push(rhs.coeff(r));
            rows.push(row);
        }
    }
    Ok(solve_affine(f, rows, gd).map(|sol| Poly::new(f, sol)))
}

/// One solution of an augmented linear system, or `None` if inconsistent.
fn solve_affine<F: Field>(f: &F, mut rows: Vec<Vec<F::Elem>>, nvars: usize) -> Option<Vec<F::Elem>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..nvars {
        let Some(pr) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][col])) else { continue };
        rows.swap(r, pr);
        let inv = f.inv(&rows[r][col]);
        for v in rows[r].iter_mut() {
            *v = f.mul(v, &inv);
        }
        for i in 0..rows.len() {
            if i != r && !f.is_zero(&rows[i][col]) {
                let m = rows[i][col].clone();
                for c in 0..=nvars {
                    let t = f.mul(&m, &rows[r][c]);
                    rows[i][c] = f.sub(&rows[i][c], &t);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !f.is_zero(&row[nvars])) {
        return None;
    }
    let mut sol = vec![f.zero(); nvars];
    for (i, &col) in pivots.iter().enumerate() {
        sol[col] = rows[i][nvars].clone();
    }
    Some(sol)
}

/// A `b` realizing `Cont((τ - b)·L) = rp_1(L)(x + n + 1)`, when `rp_1 ≠ 1`
/// this witnesses that the removable part is reached at order one.
pub fn content_realizer<F: Field>(l: &OrePoly<F>) -> Result<Option<Poly<F>>> {
    let n = primitive_order(l)?;
    let target = lc1_algorithm2(l)?.rp1.shift(n as i64 + 1);
    let Some(b) = order_one_desingularizer(l, &target)? else { return Ok(None) };
    let f = l.field();
    let left = OrePoly::new(f, vec![RatFun::from_poly(-&b), RatFun::one(f)]);
    let content = (&left * l).content()?;
    Ok((content == target.monic()).then_some(b))
}
