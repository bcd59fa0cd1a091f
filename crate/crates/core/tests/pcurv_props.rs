use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ore_curvature::center::norm;
use ore_curvature::ore::{gcrd, lclm, ore_mul};
use ore_curvature::pcurv::{
    chi, denom_chi, denom_multiplicativity_check, is_gaussian, p_curvature, shift_equivalent,
    true_singularity_classes, xi_p_desing, PCurvOptions,
};
use ore_curvature::random::{gaussian_seed, lclm_with_first_order, random_central, random_poly, random_primitive};
use ore_curvature::{Error, OrePoly, Poly, PrimeField, RatFun};

fn fp(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn opts() -> PCurvOptions {
    PCurvOptions::default()
}

fn op(p: u64, seed: u64, max_order: usize, max_deg: usize) -> OrePoly<PrimeField> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let n = r.gen_range(1..=max_order);
    random_primitive(&fp(p), n, max_deg, &mut r)
}

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn chi_is_central_and_monic(seed: u64, p in small_prime()) {
        let l = op(p, seed, 3, 3);
        let r = chi(&l, &opts()).unwrap();
        prop_assert_eq!(r.chi.degree_t(), l.order());
        prop_assert!(r.chi.coeffs().last().unwrap().is_one());
        prop_assert!(r.denom.is_monic());
        prop_assert!(r.chi_tilde.unwrap().deg_z() <= l.x_degree());
    }

    #[test]
    fn chi_is_multiplicative(seed: u64, p in small_prime()) {
        let a = op(p, seed, 2, 3);
        let b = op(p, seed.wrapping_add(1), 2, 3);
        let ab = ore_mul(&a, &b).unwrap();
        let lhs = chi(&ab, &opts()).unwrap().chi;
        prop_assert_eq!(lhs, chi(&a, &opts()).unwrap().chi.mul(&chi(&b, &opts()).unwrap().chi));
        prop_assert!(denom_multiplicativity_check(&a, &b, &opts()).unwrap());
    }

    #[test]
    fn chi_of_coprime_lclm(seed: u64, p in small_prime()) {
        let a = op(p, seed, 2, 2);
        let b = op(p, seed.wrapping_add(7), 2, 2);
        prop_assume!(gcrd(&a, &b).unwrap().order() == Some(0));
        let m = lclm(&a, &b).unwrap();
        let expect = chi(&a, &opts()).unwrap().chi.mul(&chi(&b, &opts()).unwrap().chi);
        prop_assert_eq!(chi(&m, &opts()).unwrap().chi, expect);
    }

    #[test]
    fn prim_chi_is_a_left_multiple(seed: u64, p in small_prime()) {
        let l = op(p, seed, 3, 2);
        let central = chi(&l, &opts()).unwrap().prim_chi.to_operator().unwrap();
        prop_assert!(central.right_divide(&l).unwrap().1.is_zero());
    }

    #[test]
    fn denominator_bounds(seed: u64, p in prop::sample::select(vec![5u64, 7, 11])) {
        let l = op(p, seed, 2, 3);
        let d = denom_chi(&l, &opts()).unwrap();
        let n0 = norm(&l.lc_star().unwrap()).unwrap();
        prop_assert!(n0.rem(&d).is_zero());
        let classes = true_singularity_classes(&l, &opts()).unwrap();
        let prod = classes.iter().fold(Poly::one(&fp(p)), |acc, (q, m)| &acc * &norm(q).unwrap().pow(*m as u64));
        prop_assert_eq!(prod, d);
    }

    #[test]
    fn pipeline_matches_exact(seed: u64, p in prop::sample::select(vec![5u64, 7, 11])) {
        let l = op(p, seed, 2, 3);
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let m = lclm_with_first_order(&l, &mut r).unwrap();
        for x in [&l, &m] {
            let xi = xi_p_desing(x, &opts()).unwrap();
            prop_assert_eq!(xi.prim_chi, chi(x, &opts()).unwrap().prim_chi);
        }
    }

    #[test]
    fn shift_equivalence_of_translates(seed: u64, k in 0i64..50, p in prop::sample::select(vec![5u64, 7, 11])) {
        let f = fp(p);
        let q = random_poly(&f, 4, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assume!(!q.is_zero());
        prop_assert!(shift_equivalent(&RatFun::from_poly(q.clone()), &RatFun::from_poly(q.shift(k))).unwrap());
    }
}

#[test]
fn central_operators() {
    let mut r = ChaCha8Rng::seed_from_u64(3);
    for p in [3u64, 5] {
        let f = fp(p);
        for _ in 0..10 {
            let c = random_central(&f, r.gen_range(1..=2), 1, &mut r);
            let l = c.to_operator().unwrap();
            let res = chi(&l, &opts()).unwrap();
            assert_eq!(res.chi_tilde.unwrap(), c.pow(p));
            assert!(res.denom.is_one());
            assert!(true_singularity_classes(&l, &opts()).unwrap().is_empty());
        }
    }
}

#[test]
fn first_order_denominators_by_hand() {
    // χ(x·τ - 1) = T - 1/N(x) = T - 1/Z.
    let f = fp(5);
    let l = OrePoly::from_polys(&f, vec![Poly::from_i64s(&f, &[-1]), Poly::x(&f)]);
    assert_eq!(denom_chi(&l, &opts()).unwrap(), Poly::x(&f));
    let a = l.clone();
    let b = OrePoly::from_polys(&f, vec![Poly::from_i64s(&f, &[0, -1]), Poly::one(&f)]);
    let ab = ore_mul(&a, &b).unwrap();
    assert_eq!(denom_chi(&ab, &opts()).unwrap(), Poly::x(&f));
    assert!(denom_multiplicativity_check(&a, &b, &opts()).unwrap());
    let classes = true_singularity_classes(&ab, &opts()).unwrap();
    assert_eq!(classes, vec![(Poly::x(&f), 1)]);
    let one = OrePoly::from_polys(&f, vec![Poly::from_i64s(&f, &[-1]), Poly::one(&f)]);
    assert!(denom_multiplicativity_check(&one, &one, &opts()).unwrap());
}

#[test]
fn gaussian_detection() {
    let f = fp(7);
    let o = opts();
    let mut r = ChaCha8Rng::seed_from_u64(17);
    let mut non_gaussian = 0;
    for _ in 0..10 {
        let g = gaussian_seed(&f, 2, 2, &o, &mut r).unwrap();
        assert!(is_gaussian(&g, &o).unwrap());
        let m = lclm_with_first_order(&g, &mut r).unwrap();
        if !is_gaussian(&m, &o).unwrap() {
            non_gaussian += 1;
        }
    }
    assert!(non_gaussian >= 5, "only {non_gaussian} of 10 lclms acquired apparent singularities");
    let not_prim = OrePoly::from_polys(&f, vec![Poly::x(&f), Poly::x(&f)]);
    assert_eq!(is_gaussian(&not_prim, &o), Err(Error::NotPrimitive));
}

#[test]
fn p_curvature_of_first_order_is_the_norm() {
    let mut r = ChaCha8Rng::seed_from_u64(4);
    for p in [3u64, 5, 7, 11] {
        let f = fp(p);
        let g = random_poly(&f, 3, &mut r);
        if g.is_zero() {
            continue;
        }
        let l = OrePoly::from_polys(&f, vec![-&g, Poly::one(&f)]);
        let m = p_curvature(&l, &opts()).unwrap();
        let direct = (0..p as i64).fold(Poly::one(&f), |acc, i| &acc * &g.shift(i));
        assert_eq!(m.entries[0][0], RatFun::from_poly(direct));
    }
}
