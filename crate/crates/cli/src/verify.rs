//! Property suites over a corpus of operator files or random operators.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use ore_curvature::center::norm;
use ore_curvature::desing::{content_realizer, lc1_tc1_algorithm3_stripped, sandwich_check};
use ore_curvature::format::{to_text, AnyOperator, Statement};
use ore_curvature::ore::{gcrd, lclm, ore_mul};
use ore_curvature::pcurv::denom_multiplicativity_check;
use ore_curvature::random::{random_central, random_primitive};
use ore_curvature::{
    chi, lc1_algorithm2, lc1_tc1_algorithm3, lclm_method, xi_p_desing, Error, Field, OrePoly, PCurvOptions, Poly,
    PrimeField,
};

use crate::error::{CliError, CliResult};
use crate::input::{corpus_files, load, metadata_poly, modular, prim_any};
use crate::report::{CheckJson, VerifyJson, SCHEMA};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lemma28,
    MainTheorem,
    Desing,
    All,
}

impl Suite {
    fn includes(self, s: Suite) -> bool {
        self == Suite::All || self == s
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Directory of operator files (searched recursively for *.ore), or one file.
    pub corpus: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// Also check this many random operators.
    #[arg(long)]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Prime for random operators (default 5) and for reducing rational files.
    #[arg(long = "mod")]
    pub modp: Option<u64>,
    #[arg(long, default_value_t = 211)]
    pub prime_cap: u64,
    #[arg(long)]
    pub json: bool,
}

struct Item {
    source: String,
    text: String,
    op: AnyOperator,
    modular: Option<OrePoly<PrimeField>>,
    expect_lc1: Option<Statement>,
    expect_denom: Option<Statement>,
}

#[derive(Default)]
struct Checks {
    out: Vec<CheckJson>,
}

impl Checks {
    fn push(&mut self, source: &str, suite: &str, property: &str, passed: bool, detail: impl Into<String>) {
        self.out.push(CheckJson {
            id: format!("{source}::{suite}.{property}"),
            source: source.into(),
            suite: suite.into(),
            property: property.into(),
            passed,
            detail: detail.into(),
        });
    }

    /// Records a check whose evaluation may fail with an error.
    fn record(&mut self, source: &str, suite: &str, property: &str, f: impl FnOnce() -> Result<(bool, String), Error>) {
        match f() {
            Ok((ok, detail)) => self.push(source, suite, property, ok, detail),
            Err(e) => self.push(source, suite, property, false, format!("error: {e}")),
        }
    }
}

fn divides(a: &Poly<PrimeField>, b: &Poly<PrimeField>) -> bool {
    b.rem(a).is_zero()
}

fn item_rng(seed: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (index as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn load_items(root: &Path, modp: Option<u64>) -> CliResult<Vec<Item>> {
    let mut items = Vec::new();
    for path in corpus_files(root)? {
        let loaded = load(&path)?;
        let rel = path.strip_prefix(root).unwrap_or(&path).display().to_string();
        let rel = if rel.is_empty() { path.display().to_string() } else { rel };
        let single = loaded.operators.len() == 1;
        for (i, (op, st)) in loaded.operators.iter().zip(&loaded.file.operators).enumerate() {
            let op = prim_any(op)?;
            let reduced = match (&op, modp) {
                (AnyOperator::Rational(_), None) => None,
                _ => Some(modular(&op, modp)?),
            };
            items.push(Item {
                source: if single { rel.clone() } else { format!("{rel}#{i}") },
                text: st.text.clone(),
                op,
                modular: reduced,
                expect_lc1: if single { loaded.file.expect_lc1.clone() } else { None },
                expect_denom: if single { loaded.file.expect_denom_chi.clone() } else { None },
            });
        }
    }
    Ok(items)
}

fn random_items(n: usize, p: u64, seed: u64) -> CliResult<Vec<Item>> {
    let f = PrimeField::new(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n)
        .map(|i| {
            let order = rng.gen_range(1..=3);
            let l = random_primitive(&f, order, 3, &mut rng);
            Item {
                source: format!("random/{i:03}"),
                text: format!("p={p}; {}", to_text(&l)),
                op: AnyOperator::Modular(l.clone()),
                modular: Some(l),
                expect_lc1: None,
                expect_denom: None,
            }
        })
        .collect())
}

fn lemma28_single(c: &mut Checks, src: &str, l: &OrePoly<PrimeField>, opts: &PCurvOptions) {
    let s = "lemma28";
    let r = match chi(l, opts) {
        Ok(r) => r,
        Err(e) => return c.push(src, s, "chi", false, format!("error: {e}")),
    };
    let n = l.order().unwrap_or(0);
    let monic = r.chi.degree_t() == Some(n) && r.chi.coeffs().last().is_some_and(|c| c.is_one());
    c.push(src, s, "chi_monic_of_order", monic, format!("degree in T {:?}, order {n}", r.chi.degree_t()));
    c.record(src, s, "prim_chi_right_divisible", || {
        let central = r.prim_chi.to_operator()?;
        Ok((central.right_divide(l)?.1.is_zero(), "remainder of prim(chi) by L".into()))
    });
    let bound = r.chi_tilde.as_ref().map(|t| t.deg_z());
    c.push(
        src,
        s,
        "reduced_norm_degree_bound",
        bound.is_some_and(|b| b <= l.x_degree()),
        format!("deg_Z {:?} vs x-degree {}", bound, l.x_degree()),
    );
    c.record(src, s, "denominator_divides_norm_lc", || {
        let n0 = norm(&l.lc_star()?)?;
        Ok((divides(&r.denom, &n0), format!("denom {} | N(lc*) {}", r.denom.fmt_var("Z"), n0.fmt_var("Z"))))
    });
}

fn lemma28_pair(c: &mut Checks, src: &str, a: &OrePoly<PrimeField>, b: &OrePoly<PrimeField>, opts: &PCurvOptions) {
    let s = "lemma28";
    c.record(src, s, "chi_multiplicative", || {
        let lhs = chi(&ore_mul(a, b)?, opts)?.chi;
        let rhs = chi(a, opts)?.chi.mul(&chi(b, opts)?.chi);
        Ok((lhs == rhs, "chi(AB) = chi(A) chi(B)".into()))
    });
    c.record(src, s, "chi_lclm_multiplicative", || {
        if gcrd(a, b)?.order() != Some(0) {
            return Ok((true, "skipped: common right factor".into()));
        }
        let lhs = chi(&lclm(a, b)?, opts)?.chi;
        let rhs = chi(a, opts)?.chi.mul(&chi(b, opts)?.chi);
        Ok((lhs == rhs, "chi(lclm(A, B)) = chi(A) chi(B)".into()))
    });
}

fn main_theorem_single(c: &mut Checks, src: &str, l: &OrePoly<PrimeField>, opts: &PCurvOptions, seed: u64) {
    let s = "main-theorem";
    let r = match chi(l, opts) {
        Ok(r) => r,
        Err(e) => return c.push(src, s, "chi", false, format!("error: {e}")),
    };
    let d = r.denom.clone();
    let norms = (|| -> Result<_, Error> {
        let r2 = lc1_algorithm2(l)?;
        Ok((norm(&r2.lc1)?, norm(&r2.lc0)?, r2.rp1))
    })();
    let (n1, n0, alpha) = match norms {
        Ok(v) => v,
        Err(e) => return c.push(src, s, "lc1", false, format!("error: {e}")),
    };
    c.push(src, s, "denominator_divides_norm_lc1", divides(&d, &n1), format!("denom {}", d.fmt_var("Z")));
    c.push(src, s, "norm_lc1_divides_norm_lc0", divides(&n1, &n0), format!("N(lc1) {}", n1.fmt_var("Z")));
    c.record(src, s, "order_one_completeness", || {
        if d == n1 {
            return Ok((true, "denom(chi) = N(lc1)".into()));
        }
        match lclm_method(l, 2, 3, seed) {
            Ok(r) => {
                let n2 = norm(&r.lc1)?;
                Ok((divides(&d, &n2), format!("incomplete at order 1; order 2 complete: {}", d == n2)))
            }
            Err(Error::FieldTooSmall { .. }) => Ok((true, "incomplete at order 1; field too small to recheck".into())),
            Err(e) => Err(e),
        }
    });
    c.record(src, s, "pipeline_matches_exact", || {
        let xi = xi_p_desing(l, opts)?;
        Ok((xi.prim_chi == r.prim_chi, format!("d1 = {}", xi.d1)))
    });
    c.record(src, s, "pipeline_degree_bound", || {
        let na = norm(&alpha)?;
        let bound = l.x_degree() - alpha.deg();
        let polys = r.chi_tilde.as_ref().and_then(|t| t.polys()).ok_or(Error::NotIntegral)?;
        let ok = polys.iter().all(|p| p.exact_div(&na).is_some_and(|q| q.degree().unwrap_or(0) <= bound));
        Ok((ok, format!("deg_Z(chi~ / N(alpha)) <= {bound}")))
    });
}

fn desing_single<F: Field>(c: &mut Checks, src: &str, l: &OrePoly<F>, rng: &mut ChaCha8Rng, seed: u64) {
    let s = "desing";
    let r = match lc1_algorithm2(l) {
        Ok(r) => r,
        Err(e) => return c.push(src, s, "algorithm2", false, format!("error: {e}")),
    };
    let chain = r.lc1.divides(&r.lc0) && &r.lc1 * &r.rp1 == r.lc0;
    c.push(src, s, "lc1_divides_lc0", chain, format!("lc1 = {}", r.lc1));
    c.record(src, s, "algorithm3_bounds", || {
        if l.valuation() == l.order() {
            return Ok((true, "skipped: monomial in t".into()));
        }
        let (r3, stripped) = match lc1_tc1_algorithm3(l) {
            Ok(r3) => (r3, false),
            Err(Error::ZeroTrailing) => (lc1_tc1_algorithm3_stripped(l)?, true),
            Err(e) => return Err(e),
        };
        let mut ok = r.lc1.divides(&r3.lc1) && r3.lc1.divides(&r.lc0);
        if !stripped {
            ok &= r3.tc_bound.as_ref().is_some_and(|t| l.tc_star().is_ok_and(|tc| t.divides(&tc)));
        }
        Ok((ok, format!("l = {}{}", r3.lc1, if stripped { " (right power of t removed)" } else { "" })))
    });
    c.record(src, s, "lclm_method_bracketed", || match lclm_method(l, 1, 2, seed) {
        Ok(rl) => Ok((
            r.lc1.divides(&rl.lc1) && rl.lc1.divides(&r.lc0),
            format!("equal to algorithm 2: {}", rl.lc1 == r.lc1),
        )),
        Err(Error::FieldTooSmall { .. }) => Ok((true, "skipped: field too small".into())),
        Err(e) => Err(e),
    });
    c.record(src, s, "sandwich", || {
        let n = l.order().unwrap_or(0);
        let f = l.field();
        let cs: Vec<F::Elem> = (0..n + 2).map(|_| f.sample(rng)).collect();
        match sandwich_check(l, &cs) {
            Ok(ok) => Ok((ok, "lc1 | lc0(L') | C1(x-n-1) lc1".into())),
            Err(Error::ZeroInput) => Ok((true, "skipped: C1 = 0".into())),
            Err(e) => Err(e),
        }
    });
    c.record(src, s, "content_realized", || {
        if r.rp1.is_one() {
            return Ok((true, "rp1 = 1".into()));
        }
        let b = content_realizer(l)?;
        Ok((b.is_some(), format!("rp1 = {}", r.rp1)))
    });
}

fn expect_lc1<F: Field>(l: &OrePoly<F>, st: &Statement) -> CliResult<(bool, String)> {
    let want = metadata_poly(l.field(), st, 'x')?.monic();
    let got = lc1_algorithm2(l)?.lc1;
    Ok((got == want, format!("expected {want}, computed {got}")))
}

fn check_item(item: &Item, index: usize, args: &VerifyArgs, opts: &PCurvOptions) -> Vec<CheckJson> {
    let mut c = Checks::default();
    let src = item.source.as_str();
    let mut rng = item_rng(args.seed, index);
    if let Some(l) = &item.modular {
        if args.suite.includes(Suite::Lemma28) {
            lemma28_single(&mut c, src, l, opts);
        }
        if args.suite.includes(Suite::MainTheorem) {
            main_theorem_single(&mut c, src, l, opts, args.seed);
        }
    }
    if args.suite.includes(Suite::Desing) {
        match &item.op {
            AnyOperator::Rational(l) => desing_single(&mut c, src, l, &mut rng, args.seed),
            AnyOperator::Modular(l) => desing_single(&mut c, src, l, &mut rng, args.seed),
        }
    }
    if let Some(st) = &item.expect_lc1 {
        let res = match &item.op {
            AnyOperator::Rational(l) => expect_lc1(l, st),
            AnyOperator::Modular(l) => expect_lc1(l, st),
        };
        match res {
            Ok((ok, d)) => c.push(src, "expect", "lc1", ok, d),
            Err(e) => c.push(src, "expect", "lc1", false, format!("error: {e}")),
        }
    }
    if let Some(st) = &item.expect_denom {
        let res = (|| -> CliResult<(bool, String)> {
            let l = item.modular.as_ref().ok_or_else(|| CliError::precondition("expect_denom_chi needs p > 0"))?;
            let want = metadata_poly(l.field(), st, 'Z')?.monic();
            let got = chi(l, opts)?.denom;
            Ok((got == want, format!("expected {}, computed {}", want.fmt_var("Z"), got.fmt_var("Z"))))
        })();
        match res {
            Ok((ok, d)) => c.push(src, "expect", "denom_chi", ok, d),
            Err(e) => c.push(src, "expect", "denom_chi", false, format!("error: {e}")),
        }
    }
    c.out
}

/// Pairs of consecutive operators over the same prime. The entries of the
/// p-curvature of a product have x-degree about p·order·x-degree, so pairs
/// above a fixed budget are left out.
fn pairs(items: &[Item]) -> Vec<(usize, usize)> {
    const BUDGET: usize = 3000;
    let mut by_p: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (i, it) in items.iter().enumerate() {
        if let Some(l) = &it.modular {
            by_p.entry(l.field().modulus()).or_default().push(i);
        }
    }
    let size = |i: usize| {
        let l = items[i].modular.as_ref().expect("grouped");
        (l.order().unwrap_or(0), l.x_degree())
    };
    let mut out = Vec::new();
    for (p, idx) in by_p {
        for w in idx.windows(2) {
            let ((na, da), (nb, db)) = (size(w[0]), size(w[1]));
            if p as usize * (na + nb) * (da + db) <= BUDGET {
                out.push((w[0], w[1]));
            }
        }
    }
    out
}

fn check_pair(items: &[Item], (i, j): (usize, usize), args: &VerifyArgs, opts: &PCurvOptions) -> Vec<CheckJson> {
    let mut c = Checks::default();
    let (a, b) = (items[i].modular.as_ref().expect("paired"), items[j].modular.as_ref().expect("paired"));
    let src = format!("{}+{}", items[i].source, items[j].source);
    if args.suite.includes(Suite::Lemma28) {
        lemma28_pair(&mut c, &src, a, b, opts);
    }
    if args.suite.includes(Suite::MainTheorem) {
        c.record(&src, "main-theorem", "denominator_multiplicative", || {
            Ok((denom_multiplicativity_check(a, b, opts)?, "denom(chi(AB)) = denom(chi(A)) denom(chi(B))".into()))
        });
    }
    c.out
}

fn central_checks(primes: &[u64], seed: u64, opts: &PCurvOptions) -> Vec<CheckJson> {
    let mut c = Checks::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // A central operator of T-degree k has order k·p, so large primes are skipped.
    for &p in primes.iter().filter(|&&p| p <= 13) {
        let Ok(f) = PrimeField::new(p) else { continue };
        for i in 0..3 {
            let z = random_central(&f, 1 + i % 2, 1, &mut rng);
            let src = format!("central/F_{p}/{i}");
            c.record(&src, "lemma28", "reduced_norm_of_central", || {
                let l = z.to_operator()?;
                let t = chi(&l, opts)?.chi_tilde.ok_or(Error::NotIntegral)?;
                Ok((t == z.pow(p), "chi~(L) = L^p".into()))
            });
        }
    }
    c.out
}

pub struct Outcome {
    pub summary: VerifyJson,
    /// Failed check id, detail and the offending operator text.
    pub failures: Vec<(String, String, String)>,
}

pub fn run_verify(args: &VerifyArgs) -> CliResult<Outcome> {
    let opts = PCurvOptions { prime_cap: args.prime_cap };
    let mut items = Vec::new();
    if let Some(root) = &args.corpus {
        items.extend(load_items(root, args.modp)?);
    }
    if let Some(n) = args.random {
        items.extend(random_items(n, args.modp.unwrap_or(5), args.seed)?);
    }
    if items.is_empty() {
        return Err(CliError::precondition("nothing to verify: give a corpus path or --random N"));
    }

    let mut checks: Vec<CheckJson> =
        items.par_iter().enumerate().flat_map(|(i, it)| check_item(it, i, args, &opts)).collect();
    let ps = pairs(&items);
    checks.extend(ps.par_iter().flat_map(|&pr| check_pair(&items, pr, args, &opts)).collect::<Vec<_>>());
    if args.suite.includes(Suite::Lemma28) {
        let mut primes: Vec<u64> = items.iter().filter_map(|it| it.modular.as_ref().map(|l| l.field().modulus())).collect();
        primes.sort_unstable();
        primes.dedup();
        checks.extend(central_checks(&primes, args.seed, &opts));
    }
    checks.sort_by(|a, b| a.id.cmp(&b.id));

    let text_of = |source: &str| -> String {
        source
            .split('+')
            .filter_map(|s| items.iter().find(|it| it.source == s).map(|it| it.text.clone()))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let failures: Vec<(String, String, String)> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| (c.id.clone(), c.detail.clone(), text_of(&c.source)))
        .collect();
    let suites = match args.suite {
        Suite::All => vec!["lemma28", "main-theorem", "desing"],
        Suite::Lemma28 => vec!["lemma28"],
        Suite::MainTheorem => vec!["main-theorem"],
        Suite::Desing => vec!["desing"],
    };
    let summary = VerifyJson {
        schema: SCHEMA.into(),
        command: "verify".into(),
        suites: suites.into_iter().map(String::from).collect(),
        seed: args.seed,
        operators: items.len(),
        passed: checks.iter().filter(|c| c.passed).count(),
        failed: failures.len(),
        checks,
    };
    Ok(Outcome { summary, failures })
}
