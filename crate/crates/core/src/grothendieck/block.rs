use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::vector::GrothendieckVector;
use crate::coxeter::{enumerate_sn, longest_element, Permutation};
use crate::error::{Error, Result};
use crate::klpoly::KlCache;
use crate::limits::Limits;
use crate::zelevinsky::{CuspidalLine, Multisegment, Segment};

/// The family `m^w = {[a_i, b_{w(i)}]}` for interleaved integer endpoints
/// `b_1 > ... > b_n > a_1 > ... > a_n` on a single self-dual line.
#[derive(Debug, Clone, Serialize)]
pub struct RegularBlock {
    pub n: usize,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub line: CuspidalLine,
    pub members: BTreeMap<Permutation, Multisegment>,
}

/// Default line for regular blocks: unramified characters of `GL_1`.
pub const BLOCK_LINE: &str = "nu";

pub fn regular_block(n: usize, a: &[i64], b: &[i64], limits: &Limits) -> Result<RegularBlock> {
    regular_block_on(CuspidalLine::self_dual(BLOCK_LINE, 1)?, n, a, b, limits)
}

pub fn regular_block_on(
    line: CuspidalLine,
    n: usize,
    a: &[i64],
    b: &[i64],
    limits: &Limits,
) -> Result<RegularBlock> {
    if a.len() != n || b.len() != n {
        return Err(Error::Argument(format!(
            "expected {n} endpoints on each side, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    let chain: Vec<i64> = b.iter().chain(a).copied().collect();
    if chain.windows(2).any(|p| p[0] <= p[1]) {
        return Err(Error::Argument(
            "endpoints must satisfy b_1 > ... > b_n > a_1 > ... > a_n".into(),
        ));
    }
    let mut members = BTreeMap::new();
    for w in enumerate_sn(n, limits)? {
        let segments = (1..=n)
            .map(|i| Segment::integral(&line, a[i - 1], b[w.image(i) - 1]))
            .collect::<Result<Vec<_>>>()?;
        members.insert(w, Multisegment::new(segments));
    }
    Ok(RegularBlock {
        n,
        a: a.to_vec(),
        b: b.to_vec(),
        line,
        members,
    })
}

impl RegularBlock {
    /// A block with `b = (2n-1, ..., n)` and `a = (n-1, ..., 0)`.
    pub fn standard(n: usize, limits: &Limits) -> Result<RegularBlock> {
        let n_i = n as i64;
        let b: Vec<i64> = (0..n_i).map(|i| 2 * n_i - 1 - i).collect();
        let a: Vec<i64> = (0..n_i).map(|i| n_i - 1 - i).collect();
        regular_block(n, &a, &b, limits)
    }

    pub fn member(&self, w: &Permutation) -> Result<&Multisegment> {
        self.members.get(w).ok_or_else(|| {
            Error::Argument(format!("{w} is not an element of S_{}", self.n))
        })
    }
}

fn to_i64(v: BigInt, what: &str) -> Result<i64> {
    v.to_i64()
        .ok_or_else(|| Error::Overflow(format!("{what} does not fit in 64 bits")))
}

/// `[St(m^w)] = sum_{w'} (-1)^{l(w') + l(w)} P_{w_0 w', w_0 w}(1) [λ(m^{w'})]`.
pub fn decompose_irreducible(
    block: &RegularBlock,
    w: &Permutation,
    cache: &KlCache,
) -> Result<GrothendieckVector> {
    block.member(w)?;
    let table = cache.table(block.n)?;
    let w0 = longest_element(block.n);
    let w0w = w0.compose(w)?;
    let lw = w.length();
    let mut v = GrothendieckVector::zero();
    for (w_prime, m) in &block.members {
        let p = table.get(&w0.compose(w_prime)?, &w0w)?;
        if p.is_zero() {
            continue;
        }
        let value = to_i64(p.eval_at_one(), "P(1)")?;
        let sign = if (w_prime.length() + lw).is_multiple_of(2) { 1 } else { -1 };
        v.add_term(m.clone(), sign * value)?;
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityRecord {
    pub w: Permutation,
    pub length: usize,
    pub sum: i64,
    pub expected: i64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub n: usize,
    /// Number of `w != w_0` checked against the vanishing sum.
    pub checked: usize,
    pub records: Vec<IdentityRecord>,
    pub failures: Vec<Permutation>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `S(w) = sum_{w'} (-1)^{l(w') + l(w)} P_{w_0 w', w_0 w}(1)` for every `w`;
/// expected `0` for `w != w_0` and `1` at `w_0`.
pub fn verify_kl_identity(n: usize, cache: &KlCache) -> Result<IdentityReport> {
    let table = cache.table(n)?;
    let w0 = longest_element(n);
    let elements = table.elements().to_vec();
    let mut records = Vec::with_capacity(elements.len());
    let mut failures = Vec::new();
    for w in &elements {
        let w0w = w0.compose(w)?;
        let lw = w.length();
        let mut sum = BigInt::default();
        for w_prime in &elements {
            let value = table.get(&w0.compose(w_prime)?, &w0w)?.eval_at_one();
            if (w_prime.length() + lw).is_multiple_of(2) {
                sum += value;
            } else {
                sum -= value;
            }
        }
        let sum = to_i64(sum, "identity sum")?;
        let expected = i64::from(*w == w0);
        let pass = sum == expected;
        if !pass {
            failures.push(w.clone());
        }
        records.push(IdentityRecord {
            w: w.clone(),
            length: lw,
            sum,
            expected,
            pass,
        });
    }
    Ok(IdentityReport {
        n,
        checked: elements.len() - 1,
        records,
        failures,
    })
}
