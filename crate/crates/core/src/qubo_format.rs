//! qbsolv-style `.qubo` text documents.
//!
//! ```text
//! p qubo 0 <n_vars> <n_diag> <n_offdiag>
//! i i <h_i>        one per nonzero linear term, ascending i
//! i j <J_ij>       one per nonzero coupler, i < j, ascending (i, j)
//! ```
//!
//! Positions are 0-based in label order. Integer coefficients are written as
//! integers, anything else with six fractional digits. Lines starting with
//! `c` are comments on input.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_traits::ToPrimitive;

use crate::model::{Coeff, QuboModel};
use crate::{Error, Result};

fn render(c: Coeff) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{:.6}", c.to_f64().expect("rational converts to f64"))
    }
}

pub fn export_qubo(model: &QuboModel) -> String {
    let linear: Vec<_> = model.linear_terms().collect();
    let quadratic: Vec<_> = model.quadratic_terms().collect();
    let mut out = String::new();
    writeln!(out, "p qubo 0 {} {} {}", model.n_vars(), linear.len(), quadratic.len()).unwrap();
    for (i, h) in linear {
        writeln!(out, "{i} {i} {}", render(h)).unwrap();
    }
    for ((i, j), c) in quadratic {
        writeln!(out, "{i} {j} {}", render(c)).unwrap();
    }
    out
}

pub fn write_qubo(model: &QuboModel, path: &Path) -> Result<()> {
    std::fs::write(path, export_qubo(model))?;
    Ok(())
}

/// Decimal or integer literal to an exact rational.
fn parse_coeff(s: &str) -> Option<Coeff> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) || frac.len() > 12 {
        return None;
    }
    let digits = format!("{int}{frac}");
    let numer: i64 = if digits.is_empty() { 0 } else { digits.parse().ok()? };
    let denom = 10i64.checked_pow(frac.len() as u32)?;
    let c = Coeff::new(numer, denom);
    Some(if neg { -c } else { c })
}

/// Parse a document into a model over plain labels `x0..x{n-1}`; use
/// [`QuboModel::relabel`] to restore names.
pub fn import_qubo(text: &str) -> Result<QuboModel> {
    let err = |line: usize, message: String| Error::Parse { line, message };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('c'));

    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing header".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 6 || fields[0] != "p" || fields[1] != "qubo" {
        return Err(err(hline, format!("expected `p qubo 0 <n> <diag> <offdiag>`, got {header:?}")));
    }
    let num = |s: &str| -> Result<usize> {
        s.parse()
            .map_err(|_| err(hline, format!("invalid count {s:?}")))
    };
    let (n, n_diag, n_off) = (num(fields[3])?, num(fields[4])?, num(fields[5])?);

    let mut linear = BTreeMap::new();
    let mut quadratic = BTreeMap::new();
    for (line, body) in lines {
        let f: Vec<&str> = body.split_whitespace().collect();
        if f.len() != 3 {
            return Err(err(line, format!("expected `i j value`, got {body:?}")));
        }
        let idx = |s: &str| -> Result<usize> {
            let v: usize = s
                .parse()
                .map_err(|_| err(line, format!("invalid index {s:?}")))?;
            if v >= n {
                return Err(err(line, format!("index {v} out of range for {n} variables")));
            }
            Ok(v)
        };
        let (i, j) = (idx(f[0])?, idx(f[1])?);
        let c = parse_coeff(f[2]).ok_or_else(|| err(line, format!("invalid coefficient {:?}", f[2])))?;
        if i > j {
            return Err(err(line, format!("coupler {i} {j} must have i < j")));
        }
        let previous = if i == j {
            linear.insert(i, c)
        } else {
            quadratic.insert((i, j), c)
        };
        if previous.is_some() {
            return Err(Error::Validation(format!("duplicate entry {i} {j} on line {line}")));
        }
    }

    if linear.len() != n_diag || quadratic.len() != n_off {
        return Err(Error::Validation(format!(
            "header declares {n_diag} diagonal and {n_off} off-diagonal terms, body has {} and {}",
            linear.len(),
            quadratic.len()
        )));
    }

    let mut model = QuboModel::plain(n);
    for (i, c) in linear {
        model.add_linear_at(i, c)?;
    }
    for ((i, j), c) in quadratic {
        model.add_quadratic_at(i, j, c)?;
    }
    if model.linear_terms().count() != n_diag || model.quadratic_terms().count() != n_off {
        return Err(Error::Validation("explicit zero coefficients are not allowed".into()));
    }
    Ok(model)
}

pub fn read_qubo(path: &Path) -> Result<QuboModel> {
    import_qubo(&std::fs::read_to_string(path)?)
}
