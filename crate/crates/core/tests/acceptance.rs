//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ore_curvature::center::{from_center, norm, shifted_product, to_center, CenterPoly};
use ore_curvature::desing::{
    content_realizer, lc1_algorithm2, lc1_tc1_algorithm3, lc1_tc1_algorithm3_stripped, lclm_method, rp,
    sandwich_check,
};
use ore_curvature::format::parse_expr;
use ore_curvature::ore::{gcrd, lclm, lclm_prim, ore_mul};
use ore_curvature::pcurv::{chi, denom_chi, is_gaussian, shift_equivalent, xi_p_desing, PCurvOptions};
use ore_curvature::random::{gaussian_seed, lclm_built, product, random_central, random_poly, random_primitive};
use ore_curvature::{Error, Field, OrePoly, Poly, PrimeField, RatFun, Rationals};

type Check = Result<String, String>;
type Fp = Poly<PrimeField>;
type Op = OrePoly<PrimeField>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn q(c: &[i64]) -> Poly<Rationals> {
    Poly::from_i64s(&Rationals, c)
}

fn fp(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn opts() -> PCurvOptions {
    PCurvOptions::default()
}

// Criterion 1

fn worked_example() -> Check {
    let l = OrePoly::from_polys(&Rationals, vec![-&(&q(&[1, 1]) * &q(&[2, 2, 1])), &q(&[0, 0, 1]) * &q(&[1, 0, 1])]);
    let xm1 = q(&[-1, 1]);
    let sq = &(&xm1 * &xm1) + &q(&[1]);
    ensure!(l.lc_star().map_err(e)? == &(&xm1 * &xm1) * &sq, "lc*(L) = {}", l.lc_star().unwrap());

    let den = RatFun::from_poly(&q(&[1, 1]) * &q(&[2, 2, 1])).inv().map_err(e)?;
    let a = OrePoly::new(&Rationals, vec![&RatFun::from_poly(q(&[14, 15, 11])) * &den, &RatFun::from_poly(q(&[10])) * &den]);
    let al = ore_mul(&a, &l).map_err(e)?;
    let printed = OrePoly::from_polys(&Rationals, vec![q(&[-14, -15, -11]), q(&[-50, 35, -18, 11]), q(&[10, 10])]);
    ensure!(al == printed, "A·L = {al}");
    ensure!(al.lc_star().map_err(e)? == xm1, "lc*(AL) = {}", al.lc_star().unwrap());

    let r = lc1_algorithm2(&l).map_err(e)?;
    ensure!(r.lc1 == xm1, "lc1 = {}", r.lc1);
    let rp1 = rp(&l, 1).map_err(e)?;
    ensure!(rp1 == &xm1 * &sq, "rp1 = {rp1}");
    Ok(format!("lc1 = {}, rp1 = {}", r.lc1, rp1))
}

// Criterion 2

fn large_lclm() -> Check {
    let l1 = parse_expr(&Rationals, "(26*x^4+20)*t^11 - 96*x^3*t^9 + 64*x^5*t^8 + 45*x^11*t^4 - x^2*t^3").map_err(e)?;
    let l2 = parse_expr(&Rationals, "-55*x^3*t^7 + 85*x^3*t^4 + 64*x^4*t^3 + (-14*x^8 - 20*x^4)*t + 79*x")
        .map_err(e)?;
    let l = lclm_prim(&l1, &l2).map_err(e)?;
    ensure!(l.x_degree() == 109, "x-degree of L is {}", l.x_degree());
    ensure!(matches!(lc1_tc1_algorithm3(&l), Err(Error::ZeroTrailing)), "L has a nonzero trailing coefficient");

    let t = Instant::now();
    let r2 = lc1_algorithm2(&l).map_err(e)?;
    let t2 = t.elapsed();
    let t = Instant::now();
    let r3 = lc1_tc1_algorithm3_stripped(&l).map_err(e)?;
    let t3 = t.elapsed();
    let t = Instant::now();
    let rl = lclm_method(&l, 1, 1, 7).map_err(e)?;
    let tl = t.elapsed();

    ensure!(r2.lc1.deg() == 6, "algorithm 2 output degree {}", r2.lc1.deg());
    ensure!(r3.lc1.deg() == 6, "algorithm 3 output degree {}", r3.lc1.deg());
    ensure!(rl.lc1.deg() == 6, "LCLM output degree {}", rl.lc1.deg());
    ensure!(r2.lc1 == rl.lc1, "algorithm 2 and LCLM disagree");
    ensure!(r2.lc1.divides(&r3.lc1), "algorithm 2 output does not divide algorithm 3 bound");
    ensure!(r2.lc1.divides(&r2.lc0), "lc1 does not divide lc0");
    Ok(format!(
        "xdeg 109, outputs of degree 6; alg2 {:.2}s, alg3 {:.2}s, lclm {:.2}s, alg2 faster than lclm: {}",
        t2.as_secs_f64(),
        t3.as_secs_f64(),
        tl.as_secs_f64(),
        t2 < tl
    ))
}

// Criterion 3

fn random_op(f: &PrimeField, rng: &mut ChaCha8Rng, max_order: usize, max_deg: usize) -> Op {
    let order = rng.gen_range(1..=max_order);
    random_primitive(f, order, max_deg, rng)
}

fn chi_properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(28);
    let primes = [3u64, 5, 7];
    let mut degree_checks = 0;
    let mut degree_bound = |l: &Op, t: &CenterPoly<PrimeField>| -> Check {
        degree_checks += 1;
        ensure!(t.deg_z() <= l.x_degree(), "deg_Z(chi~) = {} > deg_x = {} for {l}", t.deg_z(), l.x_degree());
        Ok(String::new())
    };

    for k in 0..200 {
        let f = fp(primes[k % 3]);
        let a = random_op(&f, &mut rng, 2, 3);
        let b = random_op(&f, &mut rng, 2, 3);
        let ab = ore_mul(&a, &b).map_err(e)?;
        let (ca, cb, cab) = (chi(&a, &opts()).map_err(e)?, chi(&b, &opts()).map_err(e)?, chi(&ab, &opts()).map_err(e)?);
        ensure!(cab.chi == ca.chi.mul(&cb.chi), "chi not multiplicative on {a} and {b}");
        for (l, c) in [(&a, &ca), (&b, &cb), (&ab, &cab)] {
            degree_bound(l, c.chi_tilde.as_ref().unwrap())?;
        }
    }

    let mut coprime = 0;
    while coprime < 50 {
        let f = fp(primes[coprime % 3]);
        let a = random_op(&f, &mut rng, 2, 2);
        let b = random_op(&f, &mut rng, 2, 2);
        if !gcrd(&a, &b).map_err(e)?.is_one_operator() {
            continue;
        }
        coprime += 1;
        let m = lclm(&a, &b).map_err(e)?.prim().map_err(e)?;
        let cm = chi(&m, &opts()).map_err(e)?;
        let expect = chi(&a, &opts()).map_err(e)?.chi.mul(&chi(&b, &opts()).map_err(e)?.chi);
        ensure!(cm.chi == expect, "chi(lclm) differs on {a} and {b}");
        degree_bound(&m, cm.chi_tilde.as_ref().unwrap())?;
    }

    for k in 0..50 {
        let f = fp(primes[k % 3]);
        let l = random_op(&f, &mut rng, 3, 3);
        let c = chi(&l, &opts()).map_err(e)?;
        let op = c.prim_chi.to_operator().map_err(e)?;
        let (_, r) = op.right_divide(&l).map_err(e)?;
        ensure!(r.is_zero(), "Prim(chi) not a left multiple of {l}");
        degree_bound(&l, c.chi_tilde.as_ref().unwrap())?;
    }

    for k in 0..20 {
        let p = [3u64, 5][k % 2];
        let f = fp(p);
        let t_deg = rng.gen_range(1..=2);
        let c = random_central(&f, t_deg, 1, &mut rng);
        let l = c.to_operator().map_err(e)?;
        let r = chi(&l, &opts()).map_err(e)?;
        let t = r.chi_tilde.unwrap();
        ensure!(t == c.pow(p), "chi~ differs from the p-th power for {c}");
        degree_bound(&l, &t)?;
    }
    Ok(format!("200 products, 50 coprime lclms, 50 left multiples, 20 central powers, {degree_checks} degree bounds"))
}

trait OneOp {
    fn is_one_operator(&self) -> bool;
}

impl OneOp for Op {
    fn is_one_operator(&self) -> bool {
        self.order() == Some(0) && self.coeff(0).is_one()
    }
}

// Corpus shared by criteria 4, 6 and 7.

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Kind {
    Seed,
    Lclm,
    Product,
}

fn corpus() -> Vec<(Kind, Op)> {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut out = Vec::new();
    for p in [5u64, 7, 11] {
        let f = fp(p);
        let mut seeds = Vec::new();
        for k in 0..4 {
            let order = 1 + k % 2;
            seeds.push(gaussian_seed(&f, order, 2 + k % 2, &opts(), &mut rng).unwrap());
        }
        for s in &seeds {
            out.push((Kind::Seed, s.clone()));
            if let Some(m) = lclm_built(s, 40, &mut rng).unwrap() {
                out.push((Kind::Lclm, m));
            }
        }
        for k in 0..3 {
            out.push((Kind::Product, product(&seeds[k], &seeds[(k + 1) % 4]).unwrap()));
        }
    }
    out
}

// Criterion 4

fn divides(a: &Fp, b: &Fp) -> bool {
    b.rem(a).is_zero()
}

fn main_theorem(corpus: &[(Kind, Op)]) -> Check {
    ensure!(corpus.len() >= 30, "corpus has only {} operators", corpus.len());
    let mut complete = 0;
    let mut incomplete = Vec::new();
    for (kind, l) in corpus {
        let d = denom_chi(l, &opts()).map_err(e)?;
        let r = lc1_algorithm2(l).map_err(e)?;
        let n1 = norm(&r.lc1).map_err(e)?;
        let n0 = norm(&l.lc_star().map_err(e)?).map_err(e)?;
        ensure!(divides(&d, &n1), "denom(chi) does not divide N(lc1) for {kind:?} {l}");
        ensure!(divides(&n1, &n0), "N(lc1) does not divide N(lc0) for {kind:?} {l}");
        if d == n1 {
            complete += 1;
        } else {
            let r2 = lclm_method(l, 2, 3, 5).map_err(e)?;
            let n2 = norm(&r2.lc1).map_err(e)?;
            ensure!(divides(&d, &n2), "denom(chi) does not divide N(lc2) for {l}");
            incomplete.push(format!("{kind:?} (order 2 complete: {})", d == n2));
        }
        if *kind == Kind::Seed {
            ensure!(is_gaussian(l, &opts()).map_err(e)?, "seed is not Gaussian");
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for k in 0..100 {
        let f = fp([5u64, 7][k % 2]);
        let a = random_op(&f, &mut rng, 2, 2);
        let l = random_op(&f, &mut rng, 2, 2);
        let lhs = denom_chi(&ore_mul(&a, &l).map_err(e)?, &opts()).map_err(e)?;
        let rhs = &denom_chi(&a, &opts()).map_err(e)? * &denom_chi(&l, &opts()).map_err(e)?;
        ensure!(lhs == rhs, "denominators not multiplicative on {a} and {l}");
    }
    Ok(format!(
        "{} operators, {complete} complete at order 1, incomplete: [{}]; 100 product pairs",
        corpus.len(),
        incomplete.join(", ")
    ))
}

// Criterion 5: exhaustive order-one oracle.

fn monic_polys(f: &PrimeField, deg: usize) -> Vec<Fp> {
    let p = f.modulus();
    let count = p.pow(deg as u32);
    (0..count)
        .map(|mut idx| {
            let mut c = Vec::with_capacity(deg + 1);
            for _ in 0..deg {
                c.push(idx % p);
                idx /= p;
            }
            c.push(1);
            Poly::new(f, c)
        })
        .collect()
}

fn polys_below(f: &PrimeField, deg: usize) -> Vec<Fp> {
    let p = f.modulus();
    (0..p.pow(deg as u32))
        .map(|mut idx| {
            let c = (0..deg)
                .map(|_| {
                    let d = idx % p;
                    idx /= p;
                    d
                })
                .collect();
            Poly::new(f, c)
        })
        .collect()
}

/// `lc_1(L)` from scratch: `G` is removable at order one iff some `b` with
/// `deg b < deg G` makes `G` divide every coefficient of `(τ - b)·L`.
fn lc1_oracle(l: &Op) -> Fp {
    let f = *l.field();
    let n = l.order().unwrap();
    let a: Vec<Fp> = (0..=n).map(|i| l.poly_coeff(i)).collect();
    let top = a[n].shift(1);
    let mut best = Poly::one(&f);
    for deg in 1..=top.deg() {
        for g in monic_polys(&f, deg) {
            if !divides(&g, &top) || divides(&g, &best) {
                continue;
            }
            let ok = polys_below(&f, deg).into_iter().any(|b| {
                (0..=n).all(|j| {
                    let prev = if j == 0 { Poly::zero(&f) } else { a[j - 1].shift(1) };
                    (&prev - &(&b * &a[j])).rem(&g).is_zero()
                })
            });
            if ok {
                best = best.lcm(&g);
            }
        }
    }
    let lc0 = a[n].shift(-(n as i64)).monic();
    lc0.exact_div(&best.shift(-(n as i64) - 1)).expect("removable part divides")
}

fn algorithm2_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut nontrivial = 0;
    for k in 0..100 {
        let f = fp([5u64, 7][k % 2]);
        let l = random_op(&f, &mut rng, 3, 4);
        let got = lc1_algorithm2(&l).map_err(e)?.lc1;
        let want = lc1_oracle(&l);
        ensure!(got == want, "lc1 = {got}, oracle {want} for {l}");
        if got != l.lc_star().map_err(e)? {
            nontrivial += 1;
        }
    }
    Ok(format!("100 operators, {nontrivial} with a removable part"))
}

// Criterion 6

fn content(polys: &[Fp]) -> Fp {
    polys.iter().fold(Poly::zero(&polys[0].field().clone()), |g, c| g.gcd(c))
}

fn sandwich_and_content(corpus: &[(Kind, Op)]) -> Check {
    let f = fp(11);
    let mut rng = ChaCha8Rng::seed_from_u64(63);
    let mut done = 0;
    while done < 100 {
        let l = random_op(&f, &mut rng, 3, 3);
        let n = l.order().unwrap();
        let c: Vec<u64> = (0..n + 2).map(|_| f.sample(&mut rng)).collect();
        // Σ c_i (a_i τ - a_{i-1}(x+1)) L, independently of the library helper.
        let mut c1 = Poly::zero(&f);
        let mut c0 = Poly::zero(&f);
        for i in 0..=n + 1 {
            c1 = &c1 + &l.poly_coeff(i).scale(&c[i]);
            if i > 0 {
                c0 = &c0 + &l.poly_coeff(i - 1).shift(1).scale(&c[i]);
            }
        }
        if c1.is_zero() {
            continue;
        }
        done += 1;
        let left = OrePoly::from_polys(&f, vec![-&c0, c1.clone()]);
        let lp = ore_mul(&left, &l).map_err(e)?;
        let cs = lp.polys().unwrap();
        let g = content(&cs);
        let lc0p = cs.last().unwrap().exact_div(&g).unwrap().shift(-(n as i64) - 1).monic();
        let lc1 = lc1_algorithm2(&l).map_err(e)?.lc1;
        let upper = &c1.shift(-(n as i64) - 1) * &lc1;
        ensure!(divides(&lc1, &lc0p) && divides(&lc0p, &upper), "sandwich fails for {l}");
        ensure!(sandwich_check(&l, &c).map_err(e)?, "library sandwich check fails for {l}");
    }

    let mut realized = 0;
    for (_, l) in corpus {
        let n = l.order().unwrap();
        let rp1 = lc1_algorithm2(l).map_err(e)?.rp1;
        if rp1.is_one() {
            continue;
        }
        let b = content_realizer(l).map_err(e)?.ok_or_else(|| format!("no realizer for {l}"))?;
        let fld = *l.field();
        let tb = OrePoly::from_polys(&fld, vec![-&b, Poly::one(&fld)]);
        let cs = ore_mul(&tb, l).map_err(e)?.polys().unwrap();
        ensure!(content(&cs) == rp1.shift(n as i64 + 1).monic(), "content mismatch for {l}");
        realized += 1;
    }
    ensure!(realized > 0, "no corpus operator with a removable part");
    Ok(format!("100 sandwiches over F_11, {realized} contents realized"))
}

// Criterion 7

fn pipeline(corpus: &[(Kind, Op)]) -> Check {
    let mut d1_total = 0;
    for (kind, l) in corpus {
        let exact = chi(l, &opts()).map_err(e)?;
        let xi = xi_p_desing(l, &opts()).map_err(e)?;
        ensure!(xi.prim_chi == exact.prim_chi, "pipeline differs for {l}");
        ensure!(xi.prim_chi.to_string() == exact.prim_chi.to_string(), "rendering differs for {l}");
        match kind {
            Kind::Lclm => ensure!(xi.d1 > 0, "d1 = 0 on an LCLM-built operator {l}"),
            Kind::Seed => ensure!(xi.d1 == 0, "d1 = {} on a seed {l}", xi.d1),
            Kind::Product => {}
        }
        d1_total += xi.d1;
        let na = norm(&xi.alpha).map_err(e)?;
        let bound = l.x_degree() - xi.alpha.deg();
        for c in exact.chi_tilde.unwrap().polys().unwrap() {
            let reduced = c.exact_div(&na).ok_or_else(|| format!("N(alpha) does not divide chi~ for {l}"))?;
            ensure!(reduced.is_zero() || reduced.deg() <= bound, "degree bound fails for {l}");
        }
    }
    Ok(format!("{} operators, total d1 = {d1_total}", corpus.len()))
}

// Criterion 8

fn naive_norm(f: &Fp) -> Fp {
    let p = f.field().modulus();
    let mut acc = Poly::one(f.field());
    for i in 0..p {
        let xi = Poly::from_i64s(f.field(), &[i as i64, 1]);
        acc = &acc * &f.compose(&xi);
    }
    acc
}

fn eval_at_z(g: &Fp) -> Fp {
    let f = g.field();
    let p = f.modulus() as usize;
    let mut zc = vec![0u64; p + 1];
    zc[1] = f.from_i64(-1);
    zc[p] = 1;
    let z = Poly::new(f, zc);
    g.coeffs().iter().rev().fold(Poly::zero(f), |acc, c| &(&acc * &z) + &Poly::constant(f, *c))
}

fn norms() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for p in [2u64, 3, 5, 7, 11] {
        let f = fp(p);
        ensure!(norm(&Poly::x(&f)).map_err(e)? == Poly::x(&f), "N(x) != Z over F_{p}");
    }
    for k in 0..200 {
        let f = fp([3u64, 5, 7, 11][k % 4]);
        let a = random_poly(&f, 4, &mut rng);
        let b = random_poly(&f, 4, &mut rng);
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let (na, nb) = (norm(&a).map_err(e)?, norm(&b).map_err(e)?);
        ensure!(norm(&(&a * &b)).map_err(e)? == &na * &nb, "norm not multiplicative");
        ensure!(na.deg() == a.deg(), "deg N(f) != deg f");
        ensure!(eval_at_z(&na) == naive_norm(&a), "norm differs from the shifted product");
        ensure!(shifted_product(&a).map_err(e)? == naive_norm(&a), "shifted product");
        let g = random_poly(&f, 3, &mut rng);
        ensure!(to_center(&eval_at_z(&g)).map_err(e)? == g, "to_center round trip");
        ensure!(from_center(&g).map_err(e)? == eval_at_z(&g), "from_center");
        let shift = rng.gen_range(0..f.modulus()) as i64;
        let r = RatFun::new(a.clone(), b.clone()).map_err(e)?;
        let ra = RatFun::from_poly(a.clone());
        ensure!(shift_equivalent(&r, &r.shift(shift)).map_err(e)?, "q(x) and q(x+k) not equivalent");
        if a.deg() > 0 {
            let sq = RatFun::from_poly(&a * &a);
            ensure!(!shift_equivalent(&ra, &sq).map_err(e)?, "f and f^2 equivalent");
        }
    }
    Ok("200 random cases over F_3..F_11".into())
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
}

fn main() {
    let mut failed = 0;
    let mut report = |c: Criterion, f: &dyn Fn() -> Check| {
        let start = Instant::now();
        let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(f))
            .unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = match result {
            Ok(d) if elapsed > c.limit => Err(format!("{d}; exceeded {:?}", c.limit)),
            other => other,
        };
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => {
                failed += 1;
                ("FAIL", d.clone())
            }
        };
        println!("criterion {} [{}] {tag} ({:.2}s): {detail}", c.id, c.name, elapsed.as_secs_f64());
    };

    let secs = Duration::from_secs;
    report(Criterion { id: 1, name: "worked example", limit: secs(1) }, &worked_example);
    report(Criterion { id: 2, name: "degree-109 lclm desingularization", limit: secs(60) }, &large_lclm);
    report(Criterion { id: 3, name: "properties of chi", limit: secs(300) }, &chi_properties);
    let start = Instant::now();
    let corpus = corpus();
    let build = start.elapsed();
    println!("corpus: {} operators built in {:.2}s", corpus.len(), build.as_secs_f64());
    report(Criterion { id: 4, name: "denominator of chi", limit: secs(600) }, &|| main_theorem(&corpus));
    report(Criterion { id: 5, name: "algorithm 2 versus exhaustive oracle", limit: secs(600) }, &algorithm2_oracle);
    report(Criterion { id: 6, name: "sandwich and content realization", limit: secs(300) }, &|| {
        sandwich_and_content(&corpus)
    });
    report(Criterion { id: 7, name: "precision-reduced pipeline", limit: secs(600) }, &|| pipeline(&corpus));
    report(Criterion { id: 8, name: "norm and center", limit: secs(60) }, &norms);

    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
