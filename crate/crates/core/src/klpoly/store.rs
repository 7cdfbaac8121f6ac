//! Line-oriented persistence for [`KlTable`].
//!
//! One record per nonzero entry: `n;x;w;c0,c1,...` with permutations in
//! one-line notation and coefficients from low to high degree. Records are
//! written in canonical order (by `w`, then `x`), so writing a loaded table
//! reproduces the file byte for byte.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;

use super::group::GroupIndex;
use super::poly::IntPolynomial;
use super::table::{check_entry, KlTable};
use crate::coxeter::Permutation;
use crate::error::{Error, Result};
use crate::limits::Limits;

pub fn to_records(table: &KlTable) -> String {
    let mut out = String::new();
    let n = table.rank();
    for (x, w, p) in table.nonzero_entries() {
        let coeffs: Vec<String> = p.coefficients().iter().map(BigInt::to_string).collect();
        writeln!(out, "{n};{x};{w};{}", coeffs.join(",")).unwrap();
    }
    out
}

/// Parses and validates every record. Pairs that are Bruhat-comparable but
/// absent from the text leave holes; the result then reports
/// `is_complete() == false`.
pub fn from_records(text: &str, limits: &Limits) -> Result<KlTable> {
    let mut rank: Option<usize> = None;
    let mut parsed = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Cache {
            line: lineno,
            message,
        };
        let fields: Vec<&str> = line.split(';').collect();
        if fields.len() != 4 {
            return Err(err(format!("expected 4 fields, found {}", fields.len())));
        }
        let n: usize = fields[0]
            .parse()
            .map_err(|_| err(format!("bad rank {:?}", fields[0])))?;
        match rank {
            None => rank = Some(n),
            Some(r) if r != n => return Err(err(format!("rank {n} differs from {r}"))),
            _ => {}
        }
        let x: Permutation = fields[1].parse().map_err(|e: Error| err(e.to_string()))?;
        let w: Permutation = fields[2].parse().map_err(|e: Error| err(e.to_string()))?;
        if x.rank() != n || w.rank() != n {
            return Err(err("permutation rank differs from record rank".into()));
        }
        let coeffs = if fields[3].is_empty() {
            Vec::new()
        } else {
            fields[3]
                .split(',')
                .map(|c| c.parse::<BigInt>().map_err(|_| err(format!("bad coefficient {c:?}"))))
                .collect::<Result<Vec<_>>>()?
        };
        if coeffs.last().is_some_and(|c| *c == BigInt::default()) {
            return Err(err("trailing zero coefficient".into()));
        }
        parsed.push((lineno, x, w, IntPolynomial::from_coefficients(coeffs)));
    }
    let n = rank.ok_or_else(|| Error::Cache {
        line: 0,
        message: "empty table".into(),
    })?;
    Limits::check("kl_table", n, limits.kl_table)?;
    let group = Arc::new(GroupIndex::new(n)?);
    let size = group.size();
    let mut entries: Vec<Option<IntPolynomial>> = vec![None; size * size];
    for w in 0..size {
        for x in 0..size {
            if !group.leq(x, w) {
                entries[w * size + x] = Some(IntPolynomial::zero());
            }
        }
    }
    for (lineno, x, w, p) in parsed {
        let (xi, wi) = (group.position(&x)?, group.position(&w)?);
        check_entry(&group, xi, wi, &p).map_err(|message| Error::Cache {
            line: lineno,
            message,
        })?;
        let slot = &mut entries[wi * size + xi];
        if slot.is_some() && group.leq(xi, wi) {
            return Err(Error::Cache {
                line: lineno,
                message: format!("duplicate record for ({x}, {w})"),
            });
        }
        *slot = Some(p);
    }
    Ok(KlTable::from_parts(group, entries))
}

pub fn save(table: &KlTable, path: &Path) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    fs::write(path, to_records(table))?;
    Ok(())
}

pub fn load(path: &Path, limits: &Limits) -> Result<KlTable> {
    from_records(&fs::read_to_string(path)?, limits)
}

/// Conventional file name inside a cache directory.
pub fn cache_file_name(n: usize) -> String {
    format!("kl_table_s{n}.txt")
}
