//! Seeded generators for test and benchmark corpora.

use rand::RngCore;

use crate::center::{norm, CenterPoly};
use crate::desing::lc1_algorithm2;
use crate::error::Result;
use crate::field::{Field, PrimeField};
use crate::ore::{lclm_prim, ore_mul, OrePoly};
use crate::pcurv::{is_gaussian, PCurvOptions};
use crate::poly::Poly;

/// Uniform polynomial of degree at most `max_deg`.
pub fn random_poly<F: Field>(field: &F, max_deg: usize, rng: &mut dyn RngCore) -> Poly<F> {
    Poly::new(field, (0..=max_deg).map(|_| field.sample(rng)).collect())
}

/// Polynomial of exact degree `deg`.
pub fn random_poly_exact<F: Field>(field: &F, deg: usize, rng: &mut dyn RngCore) -> Poly<F> {
    let mut c: Vec<F::Elem> = (0..deg).map(|_| field.sample(rng)).collect();
    c.push(field.sample_nonzero(rng));
    Poly::new(field, c)
}

/// Integral operator of exact order `order` with nonzero trailing
/// coefficient and coefficients of degree at most `max_deg`.
pub fn random_operator<F: Field>(field: &F, order: usize, max_deg: usize, rng: &mut dyn RngCore) -> OrePoly<F> {
    loop {
        let cs: Vec<Poly<F>> = (0..=order).map(|_| random_poly(field, max_deg, rng)).collect();
        if cs[0].is_zero() || cs[order].is_zero() {
            continue;
        }
        return OrePoly::from_polys(field, cs);
    }
}

/// Primitive operator of exact order `order`, x-degree between 1 and `max_deg`.
pub fn random_primitive<F: Field>(field: &F, order: usize, max_deg: usize, rng: &mut dyn RngCore) -> OrePoly<F> {
    loop {
        let l = random_operator(field, order, max_deg, rng).prim().expect("nonzero");
        if l.x_degree() > 0 || max_deg == 0 {
            return l;
        }
    }
}

/// Monic element of F_p[Z][T] of T-degree `t_deg`.
pub fn random_central(field: &PrimeField, t_deg: usize, z_deg: usize, rng: &mut dyn RngCore) -> CenterPoly<PrimeField> {
    let mut cs: Vec<Poly<PrimeField>> = (0..t_deg).map(|_| random_poly(field, z_deg, rng)).collect();
    cs.push(Poly::one(field));
    CenterPoly::from_polys(field, cs)
}

/// A primitive operator without apparent singularities.
pub fn gaussian_seed(
    field: &PrimeField,
    order: usize,
    max_deg: usize,
    opts: &PCurvOptions,
    rng: &mut dyn RngCore,
) -> Result<OrePoly<PrimeField>> {
    loop {
        let l = random_primitive(field, order, max_deg, rng);
        if l.lc_star()?.deg() > 0 && is_gaussian(&l, opts)? {
            return Ok(l);
        }
    }
}

/// `prim(lclm(L, τ - c))` for a random polynomial `c` of degree at most one.
pub fn lclm_with_first_order<F: Field>(l: &OrePoly<F>, rng: &mut dyn RngCore) -> Result<OrePoly<F>> {
    let field = l.field();
    let c = loop {
        let c = random_poly(field, 1, rng);
        if !c.is_zero() {
            break c;
        }
    };
    let first = OrePoly::from_polys(field, vec![-&c, Poly::one(field)]);
    lclm_prim(l, &first)
}

/// An LCLM-built operator whose removable part has an irreducible factor
/// of degree at least two, so that `N(rp_1)` is not a power of `Z`.
pub fn lclm_built(l: &OrePoly<PrimeField>, attempts: usize, rng: &mut dyn RngCore) -> Result<Option<OrePoly<PrimeField>>> {
    for _ in 0..attempts {
        let m = lclm_with_first_order(l, rng)?;
        let rp1 = lc1_algorithm2(&m)?.rp1;
        let n = norm(&rp1)?;
        if n.deg() > n.valuation().unwrap_or(0) {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// `prim(A·B)`.
pub fn product<F: Field>(a: &OrePoly<F>, b: &OrePoly<F>) -> Result<OrePoly<F>> {
    ore_mul(a, b)?.prim()
}
