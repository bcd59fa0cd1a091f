//! Operator files on disk and the field juggling around them.

use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use walkdir::WalkDir;

use ore_curvature::format::{parse_expr_at, parse_operators, AnyOperator, OperatorFile, Statement};
use ore_curvature::ore::lclm_prim;
use ore_curvature::{Field, OrePoly, Poly, PrimeField};

use crate::error::{CliError, CliResult, EXIT_PARSE};

pub const EXTENSION: &str = "ore";

pub struct Loaded {
    pub path: PathBuf,
    pub digest: String,
    pub file: OperatorFile,
    pub operators: Vec<AnyOperator>,
}

impl Loaded {
    pub fn label(&self) -> String {
        match &self.file.name {
            Some(n) => n.clone(),
            None => self.path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(),
        }
    }
}

pub fn load(path: &Path) -> CliResult<Loaded> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::new(EXIT_PARSE, format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| CliError::new(EXIT_PARSE, format!("{} is not UTF-8", path.display())))?;
    let file = OperatorFile::parse(&text).map_err(|e| in_file(path, e))?;
    let operators = parse_operators(&file).map_err(|e| in_file(path, e))?;
    if operators.is_empty() {
        return Err(CliError::new(EXIT_PARSE, format!("{}: no operator", path.display())));
    }
    let digest = format!("sha256:{:x}", Sha256::digest(&bytes));
    Ok(Loaded { path: path.to_path_buf(), digest, file, operators })
}

fn in_file(path: &Path, e: ore_curvature::format::ParseError) -> CliError {
    CliError::new(EXIT_PARSE, format!("{}:{e}", path.display()))
}

/// Operator files under `root` (or `root` itself), in path order.
pub fn corpus_files(root: &Path) -> CliResult<Vec<PathBuf>> {
    if root.is_file() {
        return Ok(vec![root.to_path_buf()]);
    }
    if !root.is_dir() {
        return Err(CliError::new(EXIT_PARSE, format!("{} does not exist", root.display())));
    }
    let mut out = Vec::new();
    for entry in WalkDir::new(root).sort_by_file_name() {
        let entry = entry.map_err(|e| CliError::new(EXIT_PARSE, e.to_string()))?;
        if entry.file_type().is_file() && entry.path().extension().is_some_and(|e| e == EXTENSION) {
            out.push(entry.into_path());
        }
    }
    Ok(out)
}

/// The operator a single-operator command works on: the only operator of the
/// file, or with `compose` the primitive LCLM of all of them.
pub fn select(loaded: &Loaded, compose: bool) -> CliResult<AnyOperator> {
    let ops = &loaded.operators;
    if !compose {
        if ops.len() != 1 {
            return Err(CliError::precondition(format!(
                "{} holds {} operators; pass --compose-lclm to take their LCLM",
                loaded.path.display(),
                ops.len()
            )));
        }
        return prim_any(&ops[0]);
    }
    match &ops[0] {
        AnyOperator::Rational(first) => {
            let mut acc = first.prim()?;
            for op in &ops[1..] {
                let AnyOperator::Rational(l) = op else { unreachable!("one field per file") };
                acc = lclm_prim(&acc, l)?;
            }
            Ok(AnyOperator::Rational(acc))
        }
        AnyOperator::Modular(first) => {
            let mut acc = first.prim()?;
            for op in &ops[1..] {
                let AnyOperator::Modular(l) = op else { unreachable!("one field per file") };
                acc = lclm_prim(&acc, l)?;
            }
            Ok(AnyOperator::Modular(acc))
        }
    }
}

pub fn prim_any(op: &AnyOperator) -> CliResult<AnyOperator> {
    Ok(match op {
        AnyOperator::Rational(l) => AnyOperator::Rational(l.prim()?),
        AnyOperator::Modular(l) => AnyOperator::Modular(l.prim()?),
    })
}

/// The operator over F_p: either the file's own field, or the reduction of a
/// rational operator modulo `modp`.
pub fn modular(op: &AnyOperator, modp: Option<u64>) -> CliResult<OrePoly<PrimeField>> {
    match (op, modp) {
        (AnyOperator::Modular(l), None) => Ok(l.clone()),
        (AnyOperator::Modular(l), Some(p)) if p == l.field().modulus() => Ok(l.clone()),
        (AnyOperator::Modular(l), Some(p)) => Err(CliError::precondition(format!(
            "operator is over F_{}, cannot use --mod {p}",
            l.field().modulus()
        ))),
        (AnyOperator::Rational(_), None) => {
            Err(CliError::precondition("operator is over Q; pass --mod <prime> to reduce it"))
        }
        (AnyOperator::Rational(l), Some(p)) => {
            let red = l.reduce_mod_p(p)?;
            if red.order_dropped {
                return Err(CliError::precondition(format!("order drops modulo {p}")));
            }
            Ok(red.operator.prim()?)
        }
    }
}

/// A metadata polynomial, e.g. `expect_lc1`; `var` names its variable.
pub fn metadata_poly<F: Field>(field: &F, st: &Statement, var: char) -> CliResult<Poly<F>> {
    let text: String = st.text.chars().map(|c| if c == var { 'x' } else { c }).collect();
    let op = parse_expr_at(field, &text, st.line, st.column)?;
    let bad = || CliError::new(EXIT_PARSE, format!("{}:{}: expected a polynomial in {var}", st.line, st.column));
    match op.order() {
        None => Ok(Poly::zero(field)),
        Some(0) => op.coeff(0).as_poly().cloned().ok_or_else(bad),
        Some(_) => Err(bad()),
    }
}
