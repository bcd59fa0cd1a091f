//! Multi-modular algorithms over Q: polynomial gcds and left common multiples.
//!
//! Both work on integer images: reduce modulo many word-size primes, solve
//! over F_p, combine by Chinese remaindering, and verify the lifted candidate
//! exactly over Q.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{is_prime_u64, Field, PrimeField, Rationals};
use crate::ore::{lclm_euclid, right_divides, OrePoly};
use crate::poly::Poly;

/// Primes below 2^62 in decreasing order.
#[derive(Debug, Clone)]
pub struct PrimeStream {
    next: u64,
}

impl Default for PrimeStream {
    fn default() -> Self {
        PrimeStream { next: (1 << 62) - 1 }
    }
}

impl Iterator for PrimeStream {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        while self.next > 3 {
            let c = self.next;
            self.next -= 2;
            if is_prime_u64(c) {
                return Some(c);
            }
        }
        None
    }
}

pub fn bigint_mod(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.iter_u64_digits().next().unwrap_or(0)
}

/// Coprime integer coefficients with positive leading term.
pub fn int_primitive(f: &Poly<Rationals>) -> Vec<BigInt> {
    let s = Rationals.integral_scale(f.coeffs());
    f.coeffs().iter().map(|c| (c * &s).to_integer()).collect()
}

fn int_poly(v: &[BigInt]) -> Poly<Rationals> {
    Poly::new(&Rationals, v.iter().map(|c| BigRational::from_integer(c.clone())).collect())
}

fn image(v: &[BigInt], fp: &PrimeField) -> Poly<PrimeField> {
    Poly::new(fp, v.iter().map(|c| bigint_mod(c, fp.modulus())).collect())
}

/// Chinese remainder accumulator for a vector of residues, holding
/// symmetric representatives in (-M/2, M/2].
#[derive(Debug, Clone)]
pub struct Crt {
    modulus: BigInt,
    values: Vec<BigInt>,
}

impl Crt {
    pub fn new(p: u64, residues: &[u64]) -> Self {
        let fp = PrimeField::new(p).expect("prime");
        Crt {
            modulus: BigInt::from(p),
            values: residues.iter().map(|&r| BigInt::from(fp.to_i64(r))).collect(),
        }
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    /// Combine with residues modulo a new prime; returns whether any
    /// representative changed.
    pub fn absorb(&mut self, p: u64, residues: &[u64]) -> bool {
        let fp = PrimeField::new(p).expect("prime");
        let inv = fp.inv(&bigint_mod(&self.modulus, p));
        let new_mod = &self.modulus * p;
        let half = &new_mod >> 1u32;
        let mut changed = false;
        for (v, &r) in self.values.iter_mut().zip(residues) {
            let t = fp.mul(&fp.sub(&r, &bigint_mod(v, p)), &inv);
            if t != 0 {
                changed = true;
                *v += &self.modulus * t;
                if *v > half {
                    *v -= &new_mod;
                }
            }
        }
        self.modulus = new_mod;
        changed
    }

    /// Symmetric representative of `v` modulo M.
    pub fn symmetric(&self, v: &BigInt) -> BigInt {
        let r = v.mod_floor(&self.modulus);
        if &r + &r > self.modulus {
            r - &self.modulus
        } else {
            r
        }
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }
}

/// Wang's rational reconstruction of `u mod m` with numerator and
/// denominator bounded by `sqrt(m/2)`.
pub fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    if t1.abs() > bound || t1.is_zero() || !r1.gcd(&t1).is_one() {
        return None;
    }
    if t1.sign() == Sign::Minus {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

/// Monic gcd over Q of a list of polynomials.
///
/// Long lists are first collapsed to two polynomials with a fixed linear
/// combination; the result is checked against every input and the full
/// list is used if the shortcut was unlucky.
pub fn gcd_rational(polys: &[Poly<Rationals>]) -> Poly<Rationals> {
    let mut nz: Vec<&Poly<Rationals>> = polys.iter().filter(|p| !p.is_zero()).collect();
    if nz.is_empty() {
        return Poly::zero(&Rationals);
    }
    if nz.iter().any(|p| p.is_constant()) {
        return Poly::one(&Rationals);
    }
    nz.sort_by_key(|p| p.deg());
    nz.dedup();
    if nz.len() == 1 {
        return nz[0].monic();
    }
    if nz.iter().all(|p| p.deg() <= 2) {
        return nz.iter().fold(Poly::zero(&Rationals), |g, p| g.euclid_gcd(p));
    }
    let ints: Vec<Vec<BigInt>> = nz.iter().map(|p| int_primitive(p)).collect();
    if ints.len() > 2 {
        let mut comb = int_poly(&ints[1]);
        for (i, v) in ints.iter().enumerate().skip(2) {
            let r = BigRational::from_integer(BigInt::from(2 * i as i64 + 1));
            comb = &comb + &int_poly(v).scale(&r);
        }
        if !comb.is_zero() {
            let g = gcd_ints(&[ints[0].clone(), int_primitive(&comb)]);
            if g.is_one() || nz.iter().all(|f| divides_int(&g, f)) {
                return g.monic();
            }
        }
    }
    gcd_ints(&ints).monic()
}

/// Exact division test with an integer-primitive divisor, staying in Z[x].
fn divides_int(g: &Poly<Rationals>, f: &Poly<Rationals>) -> bool {
    let gi = int_poly(&int_primitive(g));
    let fi = int_poly(&int_primitive(f));
    fi.exact_div(&gi).is_some()
}

/// Primitive integer gcd of primitive integer polynomials of positive degree.
fn gcd_ints(ints: &[Vec<BigInt>]) -> Poly<Rationals> {
    let gamma = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v.last().expect("nonzero")));
    let mut best: Option<usize> = None;
    let mut crt: Option<Crt> = None;
    for p in PrimeStream::default() {
        if ints.iter().any(|v| bigint_mod(v.last().expect("nonzero"), p) == 0) {
            continue;
        }
        let fp = PrimeField::new(p).expect("prime");
        let mut g = Poly::zero(&fp);
        for v in ints {
            g = g.euclid_gcd(&image(v, &fp));
            if g.is_one() {
                return Poly::one(&Rationals);
            }
        }
        let d = g.deg();
        match best {
            Some(b) if d > b => continue,
            Some(b) if d == b => {}
            _ => {
                best = Some(d);
                crt = None;
            }
        }
        let mut res = g.scale(&bigint_mod(&gamma, p)).into_coeffs();
        res.resize(d + 1, 0);
        let changed = match crt.as_mut() {
            None => {
                crt = Some(Crt::new(p, &res));
                true
            }
            Some(c) => c.absorb(p, &res),
        };
        if changed {
            continue;
        }
        let c = crt.as_ref().expect("set");
        let cand = int_poly(&int_primitive(&int_poly(c.values())));
        if ints.iter().all(|f| int_poly(f).exact_div(&cand).is_some()) {
            return cand;
        }
    }
    unreachable!("prime stream exhausted")
}

/// One modular image of `prim(lclm(a, b))`: coefficient polynomials with
/// the leading one monic.
fn lclm_image(a: &[Vec<BigInt>], b: &[Vec<BigInt>], p: u64) -> Option<Vec<Poly<PrimeField>>> {
    let fp = PrimeField::new(p).ok()?;
    let ap = OrePoly::from_polys(&fp, a.iter().map(|c| image(c, &fp)).collect());
    let bp = OrePoly::from_polys(&fp, b.iter().map(|c| image(c, &fp)).collect());
    if ap.order()? + 1 != a.len() || bp.order()? + 1 != b.len() {
        return None;
    }
    lclm_euclid(&ap, &bp).ok()?.polys()
}

/// Shape of a modular image, used to discard unlucky primes: larger order
/// and then larger total degree win.
fn shape(polys: &[Poly<PrimeField>]) -> (usize, usize, Vec<usize>) {
    let lens: Vec<usize> = polys.iter().map(|c| c.coeffs().len()).collect();
    (polys.len(), lens.iter().sum(), lens)
}

/// Rebuild integer coefficients `D·c` from residues of rationals `c` sharing a
/// common denominator; `None` when more primes are needed.
fn reconstruct_scaled(crt: &Crt) -> Option<Vec<BigInt>> {
    let m = crt.modulus();
    let bound: BigInt = m >> 64u32;
    if bound.is_zero() {
        return None;
    }
    let mut d = BigInt::one();
    for u in crt.values() {
        let v = crt.symmetric(&(u * &d));
        if v.abs() < bound {
            continue;
        }
        let (_, den) = rational_reconstruct(&(u * &d), m)?;
        d *= den;
        if crt.symmetric(&(u * &d)).abs() >= bound {
            return None;
        }
    }
    let out: Vec<BigInt> = crt.values().iter().map(|u| crt.symmetric(&(u * &d))).collect();
    out.iter().all(|v| v.abs() < bound).then_some(out)
}

/// `prim(lclm(a, b))` over Q by Chinese remaindering of F_p images.
///
/// The candidate is accepted only after exact right-division checks against
/// both inputs. Its order matches the modular images, which can only
/// undershoot the true order, so it is the least common left multiple.
pub fn lclm_rational(a: &OrePoly<Rationals>, b: &OrePoly<Rationals>) -> Result<OrePoly<Rationals>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let a = a.prim_scaled()?;
    let b = b.prim_scaled()?;
    if a.order() == Some(0) {
        return b.prim();
    }
    if b.order() == Some(0) {
        return a.prim();
    }
    let ai: Vec<Vec<BigInt>> = a.polys().expect("integral").iter().map(int_coeffs).collect();
    let bi: Vec<Vec<BigInt>> = b.polys().expect("integral").iter().map(int_coeffs).collect();
    let batch = rayon::current_num_threads().clamp(4, 16);
    let mut primes = PrimeStream::default();
    let mut best: Option<(usize, usize, Vec<usize>)> = None;
    let mut crt: Option<Crt> = None;
    let mut used = 0usize;
    let mut next_attempt = 2usize;
    loop {
        let ps: Vec<u64> = primes.by_ref().take(batch).collect();
        let images: Vec<(u64, Vec<Poly<PrimeField>>)> = ps
            .par_iter()
            .filter_map(|&p| lclm_image(&ai, &bi, p).map(|im| (p, im)))
            .collect();
        for (p, im) in images {
            let sh = shape(&im);
            let better = match &best {
                None => true,
                Some(b) => (sh.0, sh.1) > (b.0, b.1),
            };
            if better {
                best = Some(sh.clone());
                crt = None;
                used = 0;
                next_attempt = 2;
            } else if best.as_ref() != Some(&sh) {
                continue;
            }
            let flat: Vec<u64> = im.iter().flat_map(|c| {
                let mut v = c.coeffs().to_vec();
                if v.is_empty() {
                    v.push(0);
                }
                v
            }).collect();
            match crt.as_mut() {
                None => crt = Some(Crt::new(p, &flat)),
                Some(c) => {
                    c.absorb(p, &flat);
                }
            }
            used += 1;
        }
        if used < next_attempt {
            continue;
        }
        next_attempt = used + used / 4 + 1;
        let c = crt.as_ref().expect("nonempty");
        let Some(vals) = reconstruct_scaled(c) else { continue };
        let lens = &best.as_ref().expect("set").2;
        let mut it = vals.into_iter();
        let polys: Vec<Poly<Rationals>> = lens
            .iter()
            .map(|&n| {
                let v: Vec<BigInt> = it.by_ref().take(n.max(1)).collect();
                int_poly(&v)
            })
            .collect();
        let cand = OrePoly::from_polys(&Rationals, polys);
        if right_divides(&a, &cand)? && right_divides(&b, &cand)? {
            return cand.prim();
        }
    }
}

fn int_coeffs(f: &Poly<Rationals>) -> Vec<BigInt> {
    f.coeffs()
        .iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> Poly<Rationals> {
        Poly::from_i64s(&Rationals, c)
    }

    #[test]
    fn reconstruct() {
        let m = BigInt::from(1_000_003i64) * BigInt::from(999_983i64);
        let inv13 = BigInt::from(13).extended_gcd(&m).x.mod_floor(&m);
        let u = (BigInt::from(-7) * inv13).mod_floor(&m);
        assert_eq!(rational_reconstruct(&u, &m), Some((BigInt::from(-7), BigInt::from(13))));
    }

    #[test]
    fn modular_gcd() {
        let a = &q(&[1, 2, 3, 4, 5]) * &q(&[-3, 0, 7, 1]);
        let b = &q(&[1, 2, 3, 4, 5]) * &q(&[2, 0, 0, 0, 1, -9]);
        assert_eq!(gcd_rational(&[a.clone(), b.clone()]), q(&[1, 2, 3, 4, 5]).monic());
        assert_eq!(gcd_rational(&[a, q(&[5])]), q(&[1]));
    }

    #[test]
    fn modular_lclm_matches_euclid() {
        let a = OrePoly::from_polys(&Rationals, vec![q(&[3, 1, 2]), q(&[0, 5]), q(&[1, 0, 7])]);
        let b = OrePoly::from_polys(&Rationals, vec![q(&[-1, 4]), q(&[2, 0, 1])]);
        let fast = lclm_rational(&a, &b).unwrap();
        let slow = lclm_euclid(&a, &b).unwrap();
        assert_eq!(fast, slow);
        assert_eq!(fast.order(), Some(3));
    }
}
