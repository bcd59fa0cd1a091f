//! Regenerates the checked-in corpus: `cargo run --example make_corpus -- corpus`.
//! The deliberately corrupted fixture goes to the sibling `corpus_corrupted`.

use std::fs;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ore_curvature::format::to_text;
use ore_curvature::random::{gaussian_seed, lclm_built, lclm_with_first_order, product, random_primitive};
use ore_curvature::{denom_chi, lc1_algorithm2, norm, OrePoly, PCurvOptions, Poly, PrimeField};

type Op = OrePoly<PrimeField>;

struct Fixture<'a> {
    comment: &'a str,
    name: String,
    p: u64,
    expect: bool,
    operators: Vec<String>,
}

fn fp(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn expectations(l: &Op) -> (String, String) {
    let lc1 = lc1_algorithm2(l).unwrap().lc1;
    let d = denom_chi(l, &PCurvOptions::default()).unwrap();
    (lc1.to_string(), d.fmt_var("Z"))
}

fn write(dir: &Path, fx: Fixture, modular: Option<&Op>) {
    fs::create_dir_all(dir).unwrap();
    let mut s = format!("# {}\nname={}\np={}\n", fx.comment, fx.name, fx.p);
    if fx.expect {
        let (lc1, d) = expectations(modular.expect("modular operator"));
        s.push_str(&format!("expect_lc1={lc1}\nexpect_denom_chi={d}\n"));
    }
    for op in &fx.operators {
        s.push_str(op);
        s.push('\n');
    }
    fs::write(dir.join(format!("{}.ore", fx.name)), s).unwrap();
}

fn d1(l: &Op) -> usize {
    let n = norm(&lc1_algorithm2(l).unwrap().rp1).unwrap();
    n.deg() - n.valuation().unwrap_or(0)
}

fn modular_fixture(dir: &Path, comment: &str, name: String, l: &Op) {
    let p = l.field().modulus();
    write(dir, Fixture { comment, name, p, expect: true, operators: vec![to_text(l)] }, Some(l));
}

fn fixtures(root: &Path) {
    let dir = root.join("fixtures");
    let plain = |comment: &str, name: &str, p: u64, ops: &[&str], extra: &str| {
        fs::create_dir_all(&dir).unwrap();
        let mut s = format!("# {comment}\nname={name}\np={p}\n{extra}");
        for op in ops {
            s.push_str(op);
            s.push('\n');
        }
        fs::write(dir.join(format!("{name}.ore")), s).unwrap();
    };
    plain(
        "first-order operator with an apparent singular factor (x-1)((x-1)^2+1)",
        "worked_example",
        0,
        &["(x^2*(x^2+1))*t - (x+1)*(x^2+2*x+2)"],
        "expect_lc1=x - 1\n",
    );
    plain(
        "two operators over Q; their primitive LCLM has x-degree 109 (use --compose-lclm)",
        "large_lclm",
        0,
        &[
            "(26*x^4+20)*t^11 - 96*x^3*t^9 + 64*x^5*t^8 + 45*x^11*t^4 - x^2*t^3",
            "-55*x^3*t^7 + 85*x^3*t^4 + 64*x^4*t^3 + (-14*x^8 - 20*x^4)*t + 79*x",
        ],
        "",
    );
    plain("Gaussian operator", "shift_one", 7, &["t - 1"], "expect_lc1=1\nexpect_denom_chi=1\n");
    plain("first-order operator with polynomial coefficient", "t_minus_x", 5, &["t - x"], "expect_denom_chi=1\n");
    plain("input written with the shift to the left of x: (x+1)*t + 1", "commutation", 5, &["t*x + 1"], "");

    // Order 9, x-degree 18, d1 = 10: an LCLM with a first-order operator.
    let f = fp(11);
    let mut r = ChaCha8Rng::seed_from_u64(26);
    let seed = random_primitive(&f, 8, 5, &mut r);
    let l = lclm_with_first_order(&seed, &mut r).unwrap();
    assert_eq!((l.order(), l.x_degree(), d1(&l)), (Some(9), 18, 10));
    modular_fixture(&dir, "order 9, x-degree 18, d1 = 10 over F_11", "order9_xdeg18".into(), &l);

    // Order 4, x-degree 3, lc1 = lc0.
    let mut s = 0;
    let l = loop {
        let mut r = ChaCha8Rng::seed_from_u64(s);
        let l = random_primitive(&f, 4, 3, &mut r);
        let rep = lc1_algorithm2(&l).unwrap();
        if l.x_degree() == 3 && rep.rp1.is_one() && rep.lc0.deg() > 0 {
            break l;
        }
        s += 1;
    };
    modular_fixture(&dir, "order 4, x-degree 3, d1 = 0 over F_11", "order4_xdeg3".into(), &l);
}

/// Gaussian seeds, their LCLMs with first-order operators, and products.
fn main_corpus(root: &Path) -> Option<Op> {
    let dir = root.join("main");
    let opts = PCurvOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut corrupt = None;
    for p in [5u64, 7, 11] {
        let f = fp(p);
        let seeds: Vec<Op> =
            (0..4).map(|k| gaussian_seed(&f, 1 + k % 2, 2 + k % 2, &opts, &mut rng).unwrap()).collect();
        for (k, s) in seeds.iter().enumerate() {
            modular_fixture(&dir, "Gaussian seed", format!("p{p}_seed{k}"), s);
            if let Some(m) = lclm_built(s, 40, &mut rng).unwrap() {
                modular_fixture(&dir, "LCLM of a seed with a first-order operator", format!("p{p}_lclm{k}"), &m);
                corrupt.get_or_insert(m);
            }
        }
        for k in 0..3 {
            let m = product(&seeds[k], &seeds[(k + 1) % 4]).unwrap();
            modular_fixture(&dir, "product of two seeds", format!("p{p}_product{k}"), &m);
        }
    }
    corrupt
}

fn lclm_101(root: &Path) {
    let dir = root.join("lclm101");
    let opts = PCurvOptions::default();
    let f = fp(101);
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for k in 0..6 {
        let s = gaussian_seed(&f, 1 + k % 2, 2, &opts, &mut rng).unwrap();
        if k == 0 {
            modular_fixture(&dir, "Gaussian seed over F_101", "seed0".into(), &s);
        }
        if let Some(m) = lclm_built(&s, 40, &mut rng).unwrap() {
            modular_fixture(&dir, "LCLM-built operator over F_101", format!("lclm{k}"), &m);
        }
    }
}

fn corrupted(dir: &Path, l: &Op) {
    fs::create_dir_all(&dir).unwrap();
    let (lc1, d) = expectations(l);
    let f = *l.field();
    let wrong = &denom_chi(l, &PCurvOptions::default()).unwrap() * &Poly::from_i64s(&f, &[1, 1]);
    assert_ne!(wrong.fmt_var("Z"), d);
    let s = format!(
        "# deliberately wrong expect_denom_chi: verify must fail on this file\nname=corrupted\np={}\nexpect_lc1={lc1}\nexpect_denom_chi={}\n{}\n",
        f.modulus(),
        wrong.fmt_var("Z"),
        to_text(l)
    );
    fs::write(dir.join("corrupted.ore"), s).unwrap();
}

fn main() {
    let root = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "corpus".into()));
    fixtures(&root);
    let first_lclm = main_corpus(&root).expect("at least one LCLM-built operator");
    lclm_101(&root);
    let mut bad = root.clone().into_os_string();
    bad.push("_corrupted");
    corrupted(Path::new(&bad), &first_lclm);
}
