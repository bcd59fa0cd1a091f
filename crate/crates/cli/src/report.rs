//! JSON report types. Polynomials are coefficient lists, lowest degree
//! first, each coefficient in the field's canonical text form.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use ore_curvature::{CenterPoly, Field, Poly, PrimeField, RatFun};

pub const SCHEMA: &str = "ore-curvature/1";

pub type PolyJson = Vec<String>;

pub fn poly_json<F: Field>(p: &Poly<F>) -> PolyJson {
    p.coeffs().iter().map(|c| p.field().format_elem(c)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatJson {
    pub num: PolyJson,
    pub den: PolyJson,
}

impl RatJson {
    pub fn from_ratfun(r: &RatFun<PrimeField>) -> Self {
        RatJson { num: poly_json(r.numer()), den: poly_json(r.denom()) }
    }
}

pub fn center_json(c: &CenterPoly<PrimeField>) -> Vec<RatJson> {
    c.coeffs().iter().map(RatJson::from_ratfun).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub input: String,
    pub input_digest: String,
    pub name: Option<String>,
    pub field: String,
    pub characteristic: u64,
    pub order: usize,
    pub x_degree: usize,
    pub desing: Option<DesingJson>,
    pub chi: Option<ChiJson>,
    pub timings_ms: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesingJson {
    pub method: String,
    pub lc0: PolyJson,
    /// For Algorithm 3, the upper bound `l` on `lc_1`.
    pub lc1: PolyJson,
    pub rp1: PolyJson,
    /// Algorithm 3 only: the bound `t` on `tc_1`.
    pub tc_bound: Option<PolyJson>,
    /// Degree in Z of the norm of `rp1` with its Z-adic valuation removed
    /// (positive characteristic only).
    pub d1: Option<usize>,
    pub lc1_degree: usize,
    pub witnesses: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassJson {
    pub factor: PolyJson,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XiJson {
    pub alpha: PolyJson,
    pub d: usize,
    pub d1: usize,
    pub v: usize,
    pub precision: usize,
    pub matches_exact: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChiJson {
    pub p: u64,
    /// Monic, as a polynomial in Z.
    pub denom_chi: PolyJson,
    pub lc1: PolyJson,
    pub d1: usize,
    pub gaussian: bool,
    pub true_singularities: Vec<ClassJson>,
    /// Coefficients in T, each a rational function in Z (with `--full`).
    pub prim_chi: Option<Vec<RatJson>>,
    /// Coefficients in T, each a polynomial in Z (with `--full`).
    pub chi_tilde: Option<Vec<PolyJson>>,
    pub xi_desing: Option<XiJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckJson {
    pub id: String,
    pub source: String,
    pub suite: String,
    pub property: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyJson {
    pub schema: String,
    pub command: String,
    pub suites: Vec<String>,
    pub seed: u64,
    pub operators: usize,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckJson>,
}
