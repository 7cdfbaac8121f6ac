//! R-polynomials and Kazhdan-Lusztig polynomials of the symmetric group.
//!
//! [`KlTable::build`] computes every `P_{x,w}` of `S_n` bottom-up; the
//! [`KlCache`] memoizes finished tables per rank and is what
//! [`kl_polynomial`] and [`mu`] read from. [`kl_polynomial_direct`] is an
//! independent top-down recursion, and the inversion identity against an
//! [`RTable`] is the correctness oracle for both.

mod direct;
mod group;
mod poly;
pub mod store;
mod table;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;

pub use direct::{kl_polynomial_direct, r_polynomial, DescentSide};
pub use poly::IntPolynomial;
pub use table::{InversionReport, KlTable, RTable};

use crate::coxeter::Permutation;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Per-rank memo of complete KL tables.
///
/// Tables are built outside the lock and published whole, so readers never
/// see a partially computed table. Concurrent builds of the same rank are
/// idempotent; the first published table wins.
#[derive(Debug, Default)]
pub struct KlCache {
    limits: Limits,
    tables: RwLock<HashMap<usize, Arc<KlTable>>>,
}

impl KlCache {
    pub fn new(limits: Limits) -> Self {
        KlCache {
            limits,
            tables: RwLock::default(),
        }
    }

    /// Process-wide cache with default limits.
    pub fn global() -> &'static KlCache {
        static GLOBAL: OnceLock<KlCache> = OnceLock::new();
        GLOBAL.get_or_init(KlCache::default)
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn table(&self, n: usize) -> Result<Arc<KlTable>> {
        if let Some(t) = self.tables.read().unwrap().get(&n) {
            return Ok(Arc::clone(t));
        }
        let built = Arc::new(KlTable::build(n, &self.limits)?);
        let mut guard = self.tables.write().unwrap();
        Ok(Arc::clone(guard.entry(n).or_insert(built)))
    }

    /// Publishes an externally obtained table (e.g. loaded from disk). Only
    /// complete tables are accepted.
    pub fn insert(&self, table: KlTable) -> Result<Arc<KlTable>> {
        if !table.is_complete() {
            return Err(Error::Argument("refusing to cache an incomplete table".into()));
        }
        let n = table.rank();
        let mut guard = self.tables.write().unwrap();
        Ok(Arc::clone(guard.entry(n).or_insert_with(|| Arc::new(table))))
    }

    pub fn kl_polynomial(&self, x: &Permutation, w: &Permutation) -> Result<IntPolynomial> {
        check_same_rank(x, w)?;
        Ok(self.table(w.rank())?.get(x, w)?.clone())
    }

    pub fn mu(&self, x: &Permutation, w: &Permutation) -> Result<BigInt> {
        check_same_rank(x, w)?;
        self.table(w.rank())?.mu(x, w)
    }
}

fn check_same_rank(x: &Permutation, w: &Permutation) -> Result<()> {
    if x.rank() != w.rank() {
        return Err(Error::RankMismatch {
            left: x.rank(),
            right: w.rank(),
        });
    }
    Ok(())
}

/// `P_{x,w}`, memoized in the global [`KlCache`].
pub fn kl_polynomial(x: &Permutation, w: &Permutation) -> Result<IntPolynomial> {
    KlCache::global().kl_polynomial(x, w)
}

/// Coefficient of `q^{(l(w)-l(x)-1)/2}` in `P_{x,w}`; zero unless `x < w`
/// with odd length difference.
pub fn mu(x: &Permutation, w: &Permutation) -> Result<BigInt> {
    KlCache::global().mu(x, w)
}

/// A freshly built, complete table for `S_n`.
pub fn kl_table(n: usize, limits: &Limits) -> Result<KlTable> {
    KlTable::build(n, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{enumerate_sn, longest_element};

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn r_polynomial_examples() {
        let w = p("321");
        assert!(r_polynomial(&w, &w).unwrap().is_one());
        assert!(r_polynomial(&p("321"), &p("123")).unwrap().is_zero());
        assert_eq!(
            r_polynomial(&p("12"), &p("21")).unwrap(),
            IntPolynomial::from_i64s(&[-1, 1])
        );
        assert!(r_polynomial(&p("12"), &p("123")).is_err());
    }

    #[test]
    fn r_polynomial_degree_is_length_difference() {
        let lim = Limits::default();
        let all = enumerate_sn(4, &lim).unwrap();
        let table = RTable::build(4, &lim).unwrap();
        for w in &all {
            for x in &all {
                let r = r_polynomial(x, w).unwrap();
                assert_eq!(&r, table.get(x, w).unwrap());
                if crate::coxeter::bruhat_leq(x, w).unwrap() {
                    assert_eq!(r.degree(), Some(w.length() - x.length()));
                }
            }
        }
    }

    #[test]
    fn kl_examples() {
        assert!(kl_polynomial(&p("321"), &p("123")).unwrap().is_zero());
        assert!(kl_polynomial(&p("123"), &p("321")).unwrap().is_one());
        assert_eq!(
            kl_polynomial(&p("1324"), &p("3412")).unwrap(),
            IntPolynomial::from_i64s(&[1, 1])
        );
        assert!(matches!(
            kl_polynomial(&p("12"), &p("123")),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu(&p("12"), &p("21")).unwrap(), BigInt::from(1));
        assert_eq!(mu(&p("1324"), &p("3412")).unwrap(), BigInt::from(1));
        // even length difference
        assert_eq!(mu(&p("123"), &p("231")).unwrap(), BigInt::from(0));
    }

    #[test]
    fn s3_table_is_trivial() {
        let t = kl_table(3, &Limits::default()).unwrap();
        let nonzero: Vec<_> = t.nonzero_entries().collect();
        // one entry per Bruhat interval of S_3
        assert_eq!(nonzero.len(), 19);
        assert!(nonzero.iter().all(|(_, _, p)| p.is_one()));
        t.check_invariants().unwrap();
    }

    #[test]
    fn row_at_longest_element_is_one() {
        for n in 1..=5 {
            let t = kl_table(n, &Limits::default()).unwrap();
            let w0 = longest_element(n);
            for x in t.elements() {
                assert!(t.get(x, &w0).unwrap().is_one(), "n={n} x={x}");
            }
        }
    }

    #[test]
    fn table_ceiling() {
        let lim = Limits {
            kl_table: 3,
            ..Limits::default()
        };
        assert!(kl_table(4, &lim).unwrap_err().is_resource_limit());
        assert!(KlCache::new(lim).table(4).unwrap_err().is_resource_limit());
    }

    #[test]
    fn cache_rejects_incomplete_tables() {
        let t = kl_table(3, &Limits::default()).unwrap();
        let text = store::to_records(&t);
        let partial: String = text.lines().skip(1).map(|l| format!("{l}\n")).collect();
        let loaded = store::from_records(&partial, &Limits::default()).unwrap();
        assert!(!loaded.is_complete());
        assert!(KlCache::default().insert(loaded).is_err());
    }

    #[test]
    fn loader_rejects_invalid_records() {
        let lim = Limits::default();
        // not Bruhat comparable
        assert!(store::from_records("3;321;123;1\n", &lim).is_err());
        // diagonal must be 1
        assert!(store::from_records("3;123;123;2\n", &lim).is_err());
        // degree bound
        assert!(store::from_records("3;123;321;1,0,1\n", &lim).is_err());
        // mixed ranks
        assert!(store::from_records("2;12;12;1\n3;123;123;1\n", &lim).is_err());
        assert!(store::from_records("3;123;123\n", &lim).is_err());
        assert!(store::from_records("2;12;12;1\n2;12;12;1\n", &lim).is_err());
    }
}
