//! Factorization in F_p[x]: square-free, distinct-degree and equal-degree
//! (Cantor–Zassenhaus) splitting.

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::{Field, PrimeField};
use crate::poly::Poly;

type Fp = Poly<PrimeField>;

fn pow_mod(base: &Fp, e: &BigUint, m: &Fp) -> Fp {
    let mut acc = Poly::one(base.field());
    let b = base.rem(m);
    for i in (0..e.bits()).rev() {
        acc = (&acc * &acc).rem(m);
        if e.bit(i) {
            acc = (&acc * &b).rem(m);
        }
    }
    acc
}

fn exact(a: &Fp, b: &Fp) -> Fp {
    a.exact_div(b).expect("exact division")
}

/// `g` with `g(x)^p = f(x)`, for `f` with zero derivative.
fn pth_root(f: &Fp) -> Fp {
    let p = f.field().modulus() as usize;
    Poly::new(f.field(), f.coeffs().iter().step_by(p).cloned().collect())
}

/// Square-free decomposition of a monic polynomial: pairs `(g, m)` with
/// `f = Π g^m` and every `g` square-free.
pub fn squarefree(f: &Fp) -> Vec<(Fp, usize)> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let f = f.monic();
    let p = f.field().modulus() as usize;
    let d = f.derivative();
    let mut c = f.gcd(&d);
    let mut w = exact(&f, &c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = exact(&w, &y);
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = exact(&c, &w);
    }
    if !c.is_one() {
        for (g, m) in squarefree(&pth_root(&c)) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree split of a square-free monic polynomial: pairs `(g, d)`
/// where `g` is the product of all irreducible factors of degree `d`.
pub fn distinct_degree(f: &Fp) -> Vec<(Fp, usize)> {
    let field = f.field();
    let p = BigUint::from(field.modulus());
    let x = Poly::x(field);
    let mut out = Vec::new();
    let mut f = f.monic();
    let mut h = x.clone();
    let mut d = 1;
    while f.deg() >= 2 * d {
        h = pow_mod(&h, &p, &f);
        let g = f.gcd(&(&h - &x));
        if !g.is_one() {
            f = exact(&f, &g);
            h = h.rem(&f);
            out.push((g, d));
        }
        d += 1;
    }
    if f.deg() > 0 {
        let d = f.deg();
        out.push((f, d));
    }
    out
}

/// Split a product of distinct irreducibles of degree `d`.
pub fn equal_degree(f: &Fp, d: usize, rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let field = f.field();
    let n = f.deg();
    if n == d {
        return vec![f.monic()];
    }
    let p = field.modulus();
    let exp = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a = Poly::new(field, (0..n).map(|_| field.sample(rng)).collect());
        if a.is_constant() {
            continue;
        }
        let b = if p == 2 {
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = (&t * &t).rem(f);
                acc = &acc + &t;
            }
            acc
        } else {
            &pow_mod(&a, &exp, f) - &Poly::one(field)
        };
        let g = f.gcd(&b);
        if g.deg() > 0 && g.deg() < n {
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&exact(f, &g), d, rng));
            return out;
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted by degree and then coefficients. Deterministic.
pub fn factor(f: &Fp) -> Vec<(Fp, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    for (g, m) in squarefree(f) {
        for (h, d) in distinct_degree(&g) {
            for q in equal_degree(&h, d, &mut rng) {
                out.push((q, m));
            }
        }
    }
    out.sort_by(|a, b| (a.0.deg(), a.0.coeffs()).cmp(&(b.0.deg(), b.0.coeffs())));
    out
}

pub fn is_irreducible(f: &Fp) -> bool {
    f.deg() > 0 && matches!(factor(f).as_slice(), [(_, 1)]) && factor(f)[0].0.deg() == f.deg()
}
