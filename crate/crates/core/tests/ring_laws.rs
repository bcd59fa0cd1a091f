use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ore_curvature::center::{norm, norm_ratfun, series_inverse, shifted_product, to_center};
use ore_curvature::ore::{gcrd, lclm, ore_mul};
use ore_curvature::random::{random_operator, random_poly};
use ore_curvature::{Field, OrePoly, Poly, PrimeField, RatFun, Rationals};

fn fp(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7, 11])
}

fn small_op<F: Field>(f: &F, r: &mut ChaCha8Rng, max_order: usize, max_deg: usize) -> OrePoly<F> {
    let n = r.gen_range(0..=max_order);
    random_operator(f, n, max_deg, r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn shift_is_a_ring_automorphism(seed: u64, p in prime(), a in -20i64..20, b in -20i64..20) {
        let f = fp(p);
        let mut r = rng(seed);
        let (u, v) = (random_poly(&f, 5, &mut r), random_poly(&f, 5, &mut r));
        prop_assert_eq!((&u * &v).shift(a), &u.shift(a) * &v.shift(a));
        prop_assert_eq!((&u + &v).shift(a), &u.shift(a) + &v.shift(a));
        prop_assert_eq!(u.shift(a).shift(b), u.shift(a + b));
        prop_assert_eq!(u.shift(a).degree(), u.degree());
    }

    #[test]
    fn shift_over_q(seed: u64, a in -5i64..5) {
        let mut r = rng(seed);
        let u = random_poly(&Rationals, 4, &mut r);
        let v = random_poly(&Rationals, 3, &mut r);
        prop_assert_eq!((&u * &v).shift(a), &u.shift(a) * &v.shift(a));
        prop_assert_eq!(u.shift(a).shift(-a), u);
    }

    #[test]
    fn norm_is_multiplicative(seed: u64, p in prime()) {
        let f = fp(p);
        let mut r = rng(seed);
        let (u, v) = (random_poly(&f, 4, &mut r), random_poly(&f, 4, &mut r));
        prop_assume!(!u.is_zero() && !v.is_zero());
        prop_assert_eq!(norm(&(&u * &v)).unwrap(), &norm(&u).unwrap() * &norm(&v).unwrap());
        prop_assert_eq!(norm(&u).unwrap().degree(), u.degree());
    }

    #[test]
    fn norm_matches_shifted_product(seed: u64, p in prime()) {
        let f = fp(p);
        let u = random_poly(&f, 4, &mut rng(seed));
        prop_assume!(!u.is_zero());
        let mut direct = Poly::one(&f);
        for i in 0..p as i64 {
            direct = &direct * &u.shift(i);
        }
        prop_assert_eq!(shifted_product(&u).unwrap(), direct.clone());
        let z = Poly::from_i64s(&f, &{
            let mut c = vec![0i64; p as usize + 1];
            c[1] = -1;
            c[p as usize] = 1;
            c
        });
        prop_assert_eq!(norm(&u).unwrap().compose(&z), direct.clone());
        prop_assert_eq!(to_center(&direct).unwrap(), norm(&u).unwrap());
    }

    #[test]
    fn series_inverse_inverts(seed: u64, p in prime(), m in 1usize..12) {
        let f = fp(p);
        let mut r = rng(seed);
        let mut b = random_poly(&f, 5, &mut r);
        b = &b.shl(1) + &Poly::constant(&f, f.sample_nonzero(&mut r));
        let u = series_inverse(&b, m).unwrap();
        prop_assert!(u.degree().unwrap_or(0) < m);
        prop_assert!((&u * &b).truncate(m).is_one());
    }

    #[test]
    fn ratfun_normal_form(seed: u64, p in prime()) {
        let f = fp(p);
        let mut r = rng(seed);
        let (a, b, c) = (random_poly(&f, 3, &mut r), random_poly(&f, 3, &mut r), random_poly(&f, 2, &mut r));
        prop_assume!(!b.is_zero() && !c.is_zero());
        let x = RatFun::new(&a * &c, &b * &c).unwrap();
        let y = RatFun::new(a.clone(), b.clone()).unwrap();
        prop_assert_eq!(&x, &y);
        prop_assert!(y.denom().is_monic());
        prop_assert!(y.numer().gcd(y.denom()).is_one());
    }

    #[test]
    fn ore_mul_associative_and_distributive(seed: u64, p in prime()) {
        let f = fp(p);
        let mut r = rng(seed);
        let a = small_op(&f, &mut r, 2, 2);
        let b = small_op(&f, &mut r, 2, 2);
        let c = small_op(&f, &mut r, 2, 2);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).order(), Some(a.order().unwrap() + b.order().unwrap()));
    }

    #[test]
    fn right_division_reconstructs(seed: u64, p in prime()) {
        let f = fp(p);
        let mut r = rng(seed);
        let a = small_op(&f, &mut r, 4, 3);
        let b = small_op(&f, &mut r, 3, 3);
        let (qq, rr) = a.right_divide(&b).unwrap();
        prop_assert_eq!(&(&qq * &b) + &rr, a);
        prop_assert!(rr.is_zero() || rr.order() < b.order());
    }

    #[test]
    fn lclm_and_gcrd_orders(seed: u64, p in prime()) {
        let f = fp(p);
        let mut r = rng(seed);
        let a = random_operator(&f, r.gen_range(1..=3), 2, &mut r);
        let b = random_operator(&f, r.gen_range(1..=3), 2, &mut r);
        let m = lclm(&a, &b).unwrap();
        let g = gcrd(&a, &b).unwrap();
        prop_assert!(m.right_divide(&a).unwrap().1.is_zero());
        prop_assert!(m.right_divide(&b).unwrap().1.is_zero());
        prop_assert!(a.right_divide(&g).unwrap().1.is_zero());
        prop_assert_eq!(m.order().unwrap() + g.order().unwrap(), a.order().unwrap() + b.order().unwrap());
    }

    #[test]
    fn gcrd_of_common_right_factor(seed: u64, p in prime()) {
        let f = fp(p);
        let mut r = rng(seed);
        let a = random_operator(&f, 1, 2, &mut r);
        let b = random_operator(&f, 1, 2, &mut r);
        let c = random_operator(&f, r.gen_range(1..=2), 2, &mut r);
        let g = gcrd(&(&a * &c), &(&b * &c)).unwrap();
        prop_assert!(g.right_divide(&c).unwrap().1.is_zero());
    }

    #[test]
    fn prim_is_idempotent(seed: u64, p in prime()) {
        let f = fp(p);
        let mut r = rng(seed);
        let l = random_operator(&f, r.gen_range(0..=3), 3, &mut r);
        let scaled = l.scale_left(&RatFun::new(random_poly(&f, 2, &mut r), Poly::from_i64s(&f, &[1, 1])).unwrap());
        prop_assume!(!scaled.is_zero());
        let once = scaled.prim().unwrap();
        prop_assert!(once.is_primitive());
        prop_assert_eq!(once.prim().unwrap(), once);
    }

    #[test]
    fn adjusted_leading_coefficient_of_products(seed: u64, p in prime()) {
        let f = fp(p);
        let mut r = rng(seed);
        let a = random_operator(&f, r.gen_range(0..=2), 2, &mut r);
        let l = random_operator(&f, r.gen_range(1..=2), 2, &mut r);
        let (m, n) = (a.order().unwrap() as i64, l.order().unwrap() as i64);
        let raw = |o: &OrePoly<PrimeField>, k: i64| o.leading().unwrap().as_poly().unwrap().shift(-k);
        let expect = (&raw(&a, m).shift(-n) * &raw(&l, n)).monic();
        prop_assert_eq!(ore_mul(&a, &l).unwrap().lc_star().unwrap(), expect);
    }

    #[test]
    fn norm_of_rational_functions(seed: u64, p in prime(), k in 0i64..10) {
        let f = fp(p);
        let mut r = rng(seed);
        let (a, b) = (random_poly(&f, 3, &mut r), random_poly(&f, 3, &mut r));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let q = RatFun::new(a, b).unwrap();
        prop_assert_eq!(norm_ratfun(&q).unwrap(), norm_ratfun(&q.shift(k)).unwrap());
    }
}

#[test]
fn lclm_with_first_order_is_the_sum_of_multiples() {
    let f = fp(13);
    let mut r = rng(9);
    let mut checked = 0;
    while checked < 20 {
        let l = random_operator(&f, r.gen_range(1..=3), 2, &mut r);
        let c = f.sample_nonzero(&mut r);
        let first = OrePoly::from_constants(&f, &[f.neg(&c), 1]);
        if gcrd(&l, &first).unwrap().order() != Some(0) {
            continue;
        }
        let n = l.order().unwrap();
        let mut sum = OrePoly::zero(&f);
        let mut ci = 1u64;
        for i in 0..=n + 1 {
            let prev = if i == 0 { Poly::zero(&f) } else { l.poly_coeff(i - 1).shift(1) };
            let li = ore_mul(&OrePoly::from_polys(&f, vec![-&prev, l.poly_coeff(i)]), &l).unwrap();
            sum = &sum + &li.scale_left(&RatFun::constant(&f, ci));
            ci = f.mul(&ci, &c);
        }
        if sum.order() != Some(n + 1) {
            continue;
        }
        assert_eq!(sum.monic(), lclm(&l, &first).unwrap());
        checked += 1;
    }
}

#[test]
fn gauss_lemma_fails() {
    let q = |c: &[i64]| Poly::from_i64s(&Rationals, c);
    let l = OrePoly::from_polys(&Rationals, vec![-&(&q(&[1, 1]) * &q(&[2, 2, 1])), &q(&[0, 0, 1]) * &q(&[1, 0, 1])]);
    let den = RatFun::from_poly(&q(&[1, 1]) * &q(&[2, 2, 1])).inv().unwrap();
    let a = OrePoly::new(&Rationals, vec![&RatFun::from_poly(q(&[14, 15, 11])) * &den, &RatFun::from_poly(q(&[10])) * &den]);
    assert!(!a.is_integral());
    assert!(ore_mul(&a, &l).unwrap().is_integral());
}
