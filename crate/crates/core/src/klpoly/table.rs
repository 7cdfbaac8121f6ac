use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::group::GroupIndex;
use super::poly::IntPolynomial;
use crate::coxeter::Permutation;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Kazhdan-Lusztig polynomials `P_{x,w}` for every ordered pair of `S_n`.
///
/// Entries are stored row-major by `w` in canonical order. A table built by
/// [`KlTable::build`] is always complete; a table loaded from a cache file
/// may have holes, reported through [`KlTable::is_complete`].
#[derive(Debug, Clone)]
pub struct KlTable {
    group: Arc<GroupIndex>,
    entries: Vec<Option<IntPolynomial>>,
}

/// R-polynomials `R_{x,w}` for every ordered pair of `S_n`.
#[derive(Debug, Clone)]
pub struct RTable {
    group: Arc<GroupIndex>,
    entries: Vec<IntPolynomial>,
}

/// Outcome of checking `q^{l(w)-l(x)} P_{x,w}(1/q) - P_{x,w}(q) = sum R_{x,z} P_{z,w}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InversionReport {
    pub rank: usize,
    pub checked: usize,
    pub failures: Vec<(Permutation, Permutation)>,
}

impl InversionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl KlTable {
    /// Bottom-up computation over Bruhat intervals using the first left
    /// descent of each `w`.
    pub fn build(n: usize, limits: &Limits) -> Result<Self> {
        if n == 0 {
            return Err(Error::Argument("rank must be positive".into()));
        }
        Limits::check("kl_table", n, limits.kl_table)?;
        let group = Arc::new(GroupIndex::new(n)?);
        Ok(Self::build_on(group))
    }

    pub(crate) fn build_on(group: Arc<GroupIndex>) -> Self {
        let size = group.size();
        let mut entries: Vec<Option<IntPolynomial>> = vec![None; size * size];
        // mu_lists[v] = (z, mu(z, v)) for z < v with nonzero mu
        let mut mu_lists: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); size];

        for w in 0..size {
            let row = w * size;
            match group.first_left_descent[w] {
                None => {
                    for x in 0..size {
                        entries[row + x] = Some(if x == w {
                            IntPolynomial::one()
                        } else {
                            IntPolynomial::zero()
                        });
                    }
                }
                Some(s) => {
                    let mul = &group.left_mul[s - 1];
                    let v = mul[w];
                    let lw = group.lengths[w];
                    let corrections: Vec<&(usize, BigInt)> =
                        mu_lists[v].iter().filter(|(z, _)| group.lengths[mul[*z]] < group.lengths[*z]).collect();
                    for x in 0..size {
                        if !group.leq(x, w) {
                            entries[row + x] = Some(IntPolynomial::zero());
                            continue;
                        }
                        let sx = mul[x];
                        let c = usize::from(group.lengths[sx] < group.lengths[x]);
                        let mut p = IntPolynomial::zero();
                        let get = |a: usize, b: usize| entries[b * size + a].as_ref().unwrap();
                        if group.leq(sx, v) {
                            p.add_scaled_shifted(get(sx, v), &BigInt::one(), 1 - c);
                        }
                        if group.leq(x, v) {
                            p.add_scaled_shifted(get(x, v), &BigInt::one(), c);
                        }
                        for (z, mu) in &corrections {
                            if group.leq(x, *z) {
                                let k = (lw - group.lengths[*z]) / 2;
                                p.add_scaled_shifted(get(x, *z), &-mu, k);
                            }
                        }
                        entries[row + x] = Some(p);
                    }
                }
            }
            let lw = group.lengths[w];
            for z in 0..size {
                let lz = group.lengths[z];
                if z != w && group.leq(z, w) && (lw - lz) % 2 == 1 {
                    let coeff = entries[row + z].as_ref().unwrap().coefficient((lw - lz - 1) / 2);
                    if !coeff.is_zero() {
                        mu_lists[w].push((z, coeff));
                    }
                }
            }
        }
        KlTable { group, entries }
    }

    pub(crate) fn from_parts(group: Arc<GroupIndex>, entries: Vec<Option<IntPolynomial>>) -> Self {
        KlTable { group, entries }
    }

    pub fn rank(&self) -> usize {
        self.group.n
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.group.elements
    }

    pub fn is_complete(&self) -> bool {
        self.entries.iter().all(Option::is_some)
    }

    pub(crate) fn entry_at(&self, x: usize, w: usize) -> Option<&IntPolynomial> {
        self.entries[w * self.group.size() + x].as_ref()
    }

    pub fn get(&self, x: &Permutation, w: &Permutation) -> Result<&IntPolynomial> {
        let (xi, wi) = (self.group.position(x)?, self.group.position(w)?);
        self.entry_at(xi, wi)
            .ok_or_else(|| Error::Argument(format!("no table entry for ({x}, {w})")))
    }

    pub fn mu(&self, x: &Permutation, w: &Permutation) -> Result<BigInt> {
        let p = self.get(x, w)?;
        let (lx, lw) = (x.length(), w.length());
        if p.is_zero() || x == w || lw <= lx || (lw - lx) % 2 == 0 {
            return Ok(BigInt::zero());
        }
        Ok(p.coefficient((lw - lx - 1) / 2))
    }

    /// Nonzero entries in canonical order: by `w`, then by `x`.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (&Permutation, &Permutation, &IntPolynomial)> {
        let size = self.group.size();
        self.entries.iter().enumerate().filter_map(move |(i, p)| {
            let p = p.as_ref()?;
            if p.is_zero() {
                return None;
            }
            Some((&self.group.elements[i % size], &self.group.elements[i / size], p))
        })
    }

    /// Checks the structural invariants of every present entry: `P_{w,w} = 1`,
    /// vanishing exactly off the Bruhat order, unit constant term and the
    /// degree bound `deg P_{x,w} <= (l(w) - l(x) - 1) / 2` for `x < w`.
    pub fn check_invariants(&self) -> Result<()> {
        let size = self.group.size();
        for w in 0..size {
            for x in 0..size {
                if let Some(p) = self.entry_at(x, w) {
                    check_entry(&self.group, x, w, p).map_err(|message| Error::Cache { line: 0, message })?;
                }
            }
        }
        Ok(())
    }

    /// Verifies the inversion identity against an independently computed
    /// R-polynomial table for the given `(x, w)` index pairs.
    pub(crate) fn verify_inversion_pairs(
        &self,
        r: &RTable,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> InversionReport {
        let size = self.group.size();
        let mut checked = 0;
        let mut failures = Vec::new();
        for (x, w) in pairs {
            checked += 1;
            if !self.inversion_holds(r, x, w, size) {
                failures.push((self.group.elements[x].clone(), self.group.elements[w].clone()));
            }
        }
        InversionReport {
            rank: self.group.n,
            checked,
            failures,
        }
    }

    fn inversion_holds(&self, r: &RTable, x: usize, w: usize, size: usize) -> bool {
        let Some(p) = self.entry_at(x, w) else {
            return false;
        };
        if !self.group.leq(x, w) {
            return p.is_zero();
        }
        let d = self.group.lengths[w] - self.group.lengths[x];
        let Ok(reflected) = p.bar_shift(d) else {
            return false;
        };
        let lhs = &reflected - p;
        let mut rhs = IntPolynomial::zero();
        for z in 0..size {
            if z == x || !self.group.leq(x, z) || !self.group.leq(z, w) {
                continue;
            }
            let Some(pzw) = self.entry_at(z, w) else {
                return false;
            };
            rhs = &rhs + &(r.entry_at(x, z) * pzw);
        }
        lhs == rhs
    }

    /// Inversion identity over every ordered pair.
    pub fn verify_inversion(&self, r: &RTable) -> InversionReport {
        let size = self.group.size();
        self.verify_inversion_pairs(r, (0..size).flat_map(move |w| (0..size).map(move |x| (x, w))))
    }

    /// Inversion identity over the listed pairs.
    pub fn verify_inversion_for(
        &self,
        r: &RTable,
        pairs: &[(Permutation, Permutation)],
    ) -> Result<InversionReport> {
        let idx = pairs
            .iter()
            .map(|(x, w)| Ok((self.group.position(x)?, self.group.position(w)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.verify_inversion_pairs(r, idx))
    }
}

pub(crate) fn check_entry(group: &GroupIndex, x: usize, w: usize, p: &IntPolynomial) -> Result<(), String> {
    let (px, pw) = (&group.elements[x], &group.elements[w]);
    if !group.leq(x, w) {
        if !p.is_zero() {
            return Err(format!("P_({px},{pw}) must vanish off the Bruhat order"));
        }
        return Ok(());
    }
    if x == w {
        if !p.is_one() {
            return Err(format!("P_({pw},{pw}) must equal 1"));
        }
        return Ok(());
    }
    if p.coefficient(0) != BigInt::one() {
        return Err(format!("P_({px},{pw}) must have constant term 1"));
    }
    let d = group.lengths[w] - group.lengths[x];
    if 2 * p.degree().unwrap_or(0) > d - 1 {
        return Err(format!("P_({px},{pw}) violates the degree bound"));
    }
    Ok(())
}

impl RTable {
    pub fn build(n: usize, limits: &Limits) -> Result<Self> {
        if n == 0 {
            return Err(Error::Argument("rank must be positive".into()));
        }
        Limits::check("r_table", n, limits.kl_table)?;
        Ok(Self::build_on(Arc::new(GroupIndex::new(n)?)))
    }

    pub(crate) fn build_on(group: Arc<GroupIndex>) -> Self {
        let size = group.size();
        let mut entries = vec![IntPolynomial::zero(); size * size];
        let q_minus_one = IntPolynomial::from_i64s(&[-1, 1]);
        for w in 0..size {
            let row = w * size;
            match group.first_left_descent[w] {
                None => entries[row + w] = IntPolynomial::one(),
                Some(s) => {
                    let mul = &group.left_mul[s - 1];
                    let v = mul[w];
                    for x in 0..size {
                        if !group.leq(x, w) {
                            continue;
                        }
                        let sx = mul[x];
                        let r_sx_v = &entries[v * size + sx];
                        entries[row + x] = if group.lengths[sx] < group.lengths[x] {
                            r_sx_v.clone()
                        } else {
                            let r_x_v = &entries[v * size + x];
                            &(&q_minus_one * r_x_v) + &r_sx_v.shift(1)
                        };
                    }
                }
            }
        }
        RTable { group, entries }
    }

    pub fn rank(&self) -> usize {
        self.group.n
    }

    pub(crate) fn entry_at(&self, x: usize, w: usize) -> &IntPolynomial {
        &self.entries[w * self.group.size() + x]
    }

    pub fn get(&self, x: &Permutation, w: &Permutation) -> Result<&IntPolynomial> {
        Ok(self.entry_at(self.group.position(x)?, self.group.position(w)?))
    }
}
