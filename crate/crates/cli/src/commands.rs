use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};

use ore_curvature::center::norm;
use ore_curvature::desing::lc1_tc1_algorithm3_stripped;
use ore_curvature::format::AnyOperator;
use ore_curvature::pcurv::true_singularity_classes;
use ore_curvature::{
    chi, is_gaussian, lc1_algorithm2, lc1_tc1_algorithm3, lclm_method, xi_p_desing, DesingReport, Field, OrePoly,
    PCurvOptions, Poly, PrimeField,
};

use crate::error::{CliError, CliResult, EXIT_INVARIANT};
use crate::input::{load, modular, select, Loaded};
use crate::report::{center_json, poly_json, ChiJson, ClassJson, DesingJson, Report, XiJson, SCHEMA};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Alg2,
    Alg3,
    Lclm,
}

#[derive(Debug, Args)]
pub struct DesingArgs {
    pub file: PathBuf,
    #[arg(long, value_enum, default_value = "alg2")]
    pub method: Method,
    /// Order of the LCLM method.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Number of Monte-Carlo trials of the LCLM method.
    #[arg(long, default_value_t = 2)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Reduce a rational operator modulo this prime first.
    #[arg(long = "mod")]
    pub modp: Option<u64>,
    /// Work on prim(lclm(L1, L2, ...)) of all operators in the file.
    #[arg(long)]
    pub compose_lclm: bool,
    /// With alg3: factor out a right power of τ instead of rejecting a_0 = 0.
    #[arg(long)]
    pub strip: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ChiArgs {
    pub file: PathBuf,
    #[arg(long = "mod")]
    pub modp: Option<u64>,
    #[arg(long, default_value_t = 211)]
    pub prime_cap: u64,
    /// Also run the reduced-precision pipeline and require equal results.
    #[arg(long)]
    pub xi_desing: bool,
    /// Include prim(χ) and χ̃ in the report.
    #[arg(long)]
    pub full: bool,
    #[arg(long)]
    pub compose_lclm: bool,
    #[arg(long)]
    pub json: bool,
}

pub fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

/// `deg_Z(N(α) / Z^v)` where `Z^v` is the exact power of Z dividing `N(α)`.
pub fn d1_of(alpha: &Poly<PrimeField>) -> CliResult<usize> {
    let n = norm(alpha)?;
    Ok(n.deg() - n.valuation().unwrap_or(0))
}

fn base_report(command: &str, loaded: &Loaded, field: String, characteristic: u64, order: usize, xdeg: usize) -> Report {
    Report {
        schema: SCHEMA.into(),
        command: command.into(),
        input: loaded.path.display().to_string(),
        input_digest: loaded.digest.clone(),
        name: loaded.file.name.clone(),
        field,
        characteristic,
        order,
        x_degree: xdeg,
        desing: None,
        chi: None,
        timings_ms: BTreeMap::new(),
    }
}

fn desing_generic<F: Field>(l: &OrePoly<F>, args: &DesingArgs) -> CliResult<DesingReport<F>> {
    Ok(match args.method {
        Method::Alg2 => lc1_algorithm2(l)?,
        Method::Alg3 if args.strip => lc1_tc1_algorithm3_stripped(l)?,
        Method::Alg3 => lc1_tc1_algorithm3(l)?,
        Method::Lclm => lclm_method(l, args.k, args.trials, args.seed)?,
    })
}

fn desing_json<F: Field>(r: &DesingReport<F>, d1: Option<usize>) -> DesingJson {
    DesingJson {
        method: r.method.as_str().into(),
        lc0: poly_json(&r.lc0),
        lc1: poly_json(&r.lc1),
        rp1: poly_json(&r.rp1),
        tc_bound: r.tc_bound.as_ref().map(poly_json),
        d1,
        lc1_degree: r.lc1.deg(),
        witnesses: r.witnesses.len(),
    }
}

pub fn run_desing(args: &DesingArgs) -> CliResult<Report> {
    let loaded = load(&args.file)?;
    let t = Instant::now();
    let mut op = select(&loaded, args.compose_lclm)?;
    let prepare = ms(t);
    if args.modp.is_some() {
        op = AnyOperator::Modular(modular(&op, args.modp)?);
    }
    let t = Instant::now();
    let (mut report, phase) = match &op {
        AnyOperator::Rational(l) => {
            let r = desing_generic(l, args)?;
            let phase = ms(t);
            let mut rep = base_report("desing", &loaded, "Q".into(), 0, l.order().unwrap_or(0), l.x_degree());
            rep.desing = Some(desing_json(&r, None));
            (rep, phase)
        }
        AnyOperator::Modular(l) => {
            let r = desing_generic(l, args)?;
            let phase = ms(t);
            let d1 = d1_of(&r.rp1)?;
            let p = l.field().modulus();
            let mut rep = base_report("desing", &loaded, format!("F_{p}"), p, l.order().unwrap_or(0), l.x_degree());
            rep.desing = Some(desing_json(&r, Some(d1)));
            (rep, phase)
        }
    };
    report.timings_ms.insert("prepare".into(), prepare);
    report.timings_ms.insert(args.method_label().into(), phase);
    Ok(report)
}

impl DesingArgs {
    fn method_label(&self) -> &'static str {
        match self.method {
            Method::Alg2 => "algorithm2",
            Method::Alg3 => "algorithm3",
            Method::Lclm => "lclm_method",
        }
    }
}

pub fn run_chi(args: &ChiArgs) -> CliResult<Report> {
    let loaded = load(&args.file)?;
    let t = Instant::now();
    let op = select(&loaded, args.compose_lclm)?;
    let l = modular(&op, args.modp)?;
    let prepare = ms(t);
    let opts = PCurvOptions { prime_cap: args.prime_cap };
    let p = l.field().modulus();
    let mut report = base_report("chi", &loaded, format!("F_{p}"), p, l.order().unwrap_or(0), l.x_degree());

    let t = Instant::now();
    let exact = chi(&l, &opts)?;
    report.timings_ms.insert("chi_exact".into(), ms(t));

    let t = Instant::now();
    let r2 = lc1_algorithm2(&l)?;
    let d1 = d1_of(&r2.rp1)?;
    let classes = true_singularity_classes(&l, &opts)?;
    let gaussian = is_gaussian(&l, &opts)?;
    report.timings_ms.insert("singularities".into(), ms(t));

    let xi = if args.xi_desing {
        let t = Instant::now();
        let xi = xi_p_desing(&l, &opts)?;
        report.timings_ms.insert("xi_desing".into(), ms(t));
        let matches = xi.prim_chi == exact.prim_chi;
        if !matches {
            return Err(CliError::new(
                EXIT_INVARIANT,
                format!("reduced pipeline disagrees with the exact prim(chi) on {}", loaded.path.display()),
            ));
        }
        Some(XiJson {
            alpha: poly_json(&xi.alpha),
            d: xi.d,
            d1: xi.d1,
            v: xi.v,
            precision: xi.precision,
            matches_exact: matches,
        })
    } else {
        None
    };

    report.timings_ms.insert("prepare".into(), prepare);
    report.chi = Some(ChiJson {
        p,
        denom_chi: poly_json(&exact.denom),
        lc1: poly_json(&r2.lc1),
        d1,
        gaussian,
        true_singularities: classes
            .iter()
            .map(|(q, m)| ClassJson { factor: poly_json(q), multiplicity: *m })
            .collect(),
        prim_chi: args.full.then(|| center_json(&exact.prim_chi)),
        chi_tilde: if args.full {
            exact.chi_tilde.as_ref().and_then(|c| c.polys()).map(|ps| ps.iter().map(poly_json).collect())
        } else {
            None
        },
        xi_desing: xi,
    });
    Ok(report)
}

/// Plain-text rendering of a report.
pub fn render(r: &Report) -> String {
    let mut out = Vec::new();
    out.push(format!("input     {} ({})", r.input, r.input_digest));
    if let Some(n) = &r.name {
        out.push(format!("name      {n}"));
    }
    out.push(format!("field     {}", r.field));
    out.push(format!("order     {}", r.order));
    out.push(format!("x-degree  {}", r.x_degree));
    let var = |cs: &[String], v: &str| render_poly(cs, v);
    if let Some(d) = &r.desing {
        out.push(format!("method    {}", d.method));
        out.push(format!("lc0       {}", var(&d.lc0, "x")));
        out.push(format!("lc1       {}", var(&d.lc1, "x")));
        out.push(format!("rp1       {}", var(&d.rp1, "x")));
        if let Some(t) = &d.tc_bound {
            out.push(format!("tc bound  {}", var(t, "x")));
        }
        if let Some(d1) = d.d1 {
            out.push(format!("d1        {d1}"));
        }
    }
    if let Some(c) = &r.chi {
        out.push(format!("denom_chi {}", var(&c.denom_chi, "Z")));
        out.push(format!("lc1       {}", var(&c.lc1, "x")));
        out.push(format!("d1        {}", c.d1));
        out.push(format!("gaussian  {}", c.gaussian));
        for cl in &c.true_singularities {
            out.push(format!("class     {} (multiplicity {})", var(&cl.factor, "x"), cl.multiplicity));
        }
        if let Some(xi) = &c.xi_desing {
            out.push(format!("xi_desing d={} d1={} v={} precision={} matches={}", xi.d, xi.d1, xi.v, xi.precision, xi.matches_exact));
        }
        if let Some(pc) = &c.prim_chi {
            let terms: Vec<String> = pc
                .iter()
                .enumerate()
                .map(|(i, q)| match q.den.as_slice() {
                    [one] if one == "1" => format!("({})*T^{i}", var(&q.num, "Z")),
                    _ => format!("({})/({})*T^{i}", var(&q.num, "Z"), var(&q.den, "Z")),
                })
                .collect();
            out.push(format!("prim_chi  {}", terms.join(" + ")));
        }
    }
    for (k, v) in &r.timings_ms {
        out.push(format!("time      {k} {v:.3} ms"));
    }
    out.join("\n")
}

fn render_poly(cs: &[String], var: &str) -> String {
    let mut out = String::new();
    for (i, c) in cs.iter().enumerate().rev() {
        if c == "0" {
            continue;
        }
        let (neg, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, c.as_str()),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        match (i, mag) {
            (0, _) => out.push_str(mag),
            (_, "1") => out.push_str(&mono),
            _ => out.push_str(&format!("{mag}*{mono}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
