//! Symmetric-group combinatorics in one-line notation.
//!
//! Values are 1-based: `w.image(i)` is `w(i)` for `i` in `1..=n`. Composition
//! follows function composition, `(u * v)(i) = u(v(i))`, so left
//! multiplication by a simple transposition swaps *values* and right
//! multiplication swaps *positions*.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

/// Length together with both descent sets. Descents are 1-based indices `i`
/// of the simple transposition `s_i = (i, i+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LengthAndDescents {
    pub length: usize,
    pub left_descents: BTreeSet<usize>,
    pub right_descents: BTreeSet<usize>,
}

impl Permutation {
    /// Builds a permutation from its one-line notation, checking that the
    /// images form a bijection of `{1, ..., n}`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::InvalidPermutation("rank must be positive".into()));
        }
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The simple transposition `s_i = (i, i+1)` in `S_n`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::Argument(format!(
                "simple transposition s_{i} does not exist in S_{n}"
            )));
        }
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, i);
        Ok(Permutation { images })
    }

    /// The order-reversing permutation `w_0(i) = n + 1 - i`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            images: (1..=n).rev().collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `w(i)` for 1-based `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.rank()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    /// `self * other`, i.e. `i -> self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        check_rank(self, other)?;
        Ok(Permutation {
            images: other.images.iter().map(|&v| self.images[v - 1]).collect(),
        })
    }

    /// `s_i * self`: swaps the values `i` and `i+1`.
    pub fn left_mul_simple(&self, i: usize) -> Self {
        let images = self
            .images
            .iter()
            .map(|&v| {
                if v == i {
                    i + 1
                } else if v == i + 1 {
                    i
                } else {
                    v
                }
            })
            .collect();
        Permutation { images }
    }

    /// `self * s_i`: swaps the entries in positions `i` and `i+1`.
    pub fn right_mul_simple(&self, i: usize) -> Self {
        let mut images = self.images.clone();
        images.swap(i - 1, i);
        Permutation { images }
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.images;
        (0..w.len())
            .map(|i| w[i + 1..].iter().filter(|&&v| v < w[i]).count())
            .sum()
    }

    pub fn right_descents(&self) -> BTreeSet<usize> {
        (1..self.rank())
            .filter(|&i| self.images[i - 1] > self.images[i])
            .collect()
    }

    pub fn left_descents(&self) -> BTreeSet<usize> {
        self.inverse().right_descents()
    }

    /// Smallest `i` with `l(s_i w) < l(w)`.
    pub fn first_left_descent(&self) -> Option<usize> {
        let inv = self.inverse();
        (1..self.rank()).find(|&i| inv.images[i - 1] > inv.images[i])
    }

    /// Smallest `i` with `l(w s_i) < l(w)`.
    pub fn first_right_descent(&self) -> Option<usize> {
        (1..self.rank()).find(|&i| self.images[i - 1] > self.images[i])
    }

    pub fn length_and_descents(&self) -> LengthAndDescents {
        LengthAndDescents {
            length: self.length(),
            left_descents: self.left_descents(),
            right_descents: self.right_descents(),
        }
    }

    /// The permutation of `S_{n+1}` that agrees with `self` on `1..=n` and
    /// fixes `n+1`.
    pub fn embed(&self) -> Self {
        let mut images = self.images.clone();
        images.push(self.rank() + 1);
        Permutation { images }
    }

    /// Canonical sort key: length first, then one-line notation.
    pub fn sort_key(&self) -> (usize, &[usize]) {
        (self.length(), &self.images)
    }
}

fn check_rank(x: &Permutation, w: &Permutation) -> Result<()> {
    if x.rank() != w.rank() {
        return Err(Error::RankMismatch {
            left: x.rank(),
            right: w.rank(),
        });
    }
    Ok(())
}

/// Bruhat order via the tableau criterion: `x <= w` iff for every prefix
/// length `i` the sorted prefix of `x` is dominated entrywise by the sorted
/// prefix of `w`.
pub fn bruhat_leq(x: &Permutation, w: &Permutation) -> Result<bool> {
    check_rank(x, w)?;
    Ok(bruhat_leq_unchecked(x, w))
}

pub(crate) fn bruhat_leq_unchecked(x: &Permutation, w: &Permutation) -> bool {
    let n = x.rank();
    let mut xs = Vec::with_capacity(n);
    let mut ws = Vec::with_capacity(n);
    for i in 0..n {
        insert_sorted(&mut xs, x.images[i]);
        insert_sorted(&mut ws, w.images[i]);
        if xs.iter().zip(&ws).any(|(a, b)| a > b) {
            return false;
        }
    }
    true
}

fn insert_sorted(v: &mut Vec<usize>, value: usize) {
    let pos = v.partition_point(|&e| e < value);
    v.insert(pos, value);
}

/// All of `S_n`, sorted by (length, one-line notation). This is a linear
/// extension of Bruhat order.
pub fn enumerate_sn(n: usize, limits: &Limits) -> Result<Vec<Permutation>> {
    if n == 0 {
        return Err(Error::Argument("rank must be positive".into()));
    }
    Limits::check("enumerate_sn", n, limits.symmetric_group)?;
    let mut all = Vec::new();
    let mut current: Vec<usize> = (1..=n).collect();
    loop {
        all.push(Permutation {
            images: current.clone(),
        });
        if !next_lexicographic(&mut current) {
            break;
        }
    }
    all.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(all)
}

fn next_lexicographic(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub fn longest_element(n: usize) -> Permutation {
    Permutation::longest(n)
}

/// `x_k = (n+1-k, ..., n, n+1)` as a cycle in `S_{n+1}`; `x_0` is the identity.
pub fn coset_representative(n: usize, k: usize) -> Result<Permutation> {
    if k >= n {
        return Err(Error::Argument(format!(
            "coset index {k} outside 0..{n}"
        )));
    }
    let mut images: Vec<usize> = (1..=n + 1).collect();
    if k > 0 {
        let start = n + 1 - k;
        for v in start..=n {
            images[v - 1] = v + 1;
        }
        images[n] = start;
    }
    Ok(Permutation { images })
}

/// One Schubert cell `C_w = B \ BwB` of the stratification of the closed
/// orbit, indexed by `w` in `x_k S_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumDescriptor {
    pub element: Permutation,
    pub coset_index: usize,
    pub cell_dim: usize,
    /// Pairs `(a, b)` with `a > b` and `w^{-1}(a) > w^{-1}(b)`: the variables
    /// of the transversal power series ring.
    pub y_pairs: BTreeSet<(usize, usize)>,
}

impl StratumDescriptor {
    fn new(element: Permutation, coset_index: usize) -> Self {
        let inv = element.inverse();
        let m = element.rank();
        let mut y_pairs = BTreeSet::new();
        for a in 1..=m {
            for b in 1..a {
                if inv.image(a) > inv.image(b) {
                    y_pairs.insert((a, b));
                }
            }
        }
        StratumDescriptor {
            cell_dim: element.length(),
            element,
            coset_index,
            y_pairs,
        }
    }

    /// `w(n+1) != 1`.
    pub fn last_image_is_not_one(&self) -> bool {
        let m = self.element.rank();
        self.element.image(m) != 1
    }

    /// Every structural invariant of the descriptor.
    pub fn is_consistent(&self) -> bool {
        let m = self.element.rank();
        let n = m - 1;
        let in_coset = coset_representative(n, self.coset_index)
            .map(|x| {
                let w_prime = x.inverse().compose(&self.element).unwrap();
                w_prime.image(m) == m
            })
            .unwrap_or(false);
        in_coset
            && self.last_image_is_not_one()
            && self.cell_dim == self.element.length()
            && self.cell_dim + self.y_pairs.len() == n * (n + 1) / 2
    }
}

/// `W~ = S_n ⊔ x_1 S_n ⊔ ... ⊔ x_{n-1} S_n` inside `S_{n+1}`, sorted by
/// (length, one-line notation) so that Bruhat-smaller cells come first.
pub fn enumerate_wtilde(n: usize, limits: &Limits) -> Result<Vec<StratumDescriptor>> {
    if n == 0 {
        return Err(Error::Argument("rank must be positive".into()));
    }
    Limits::check("enumerate_wtilde", n, limits.stratification)?;
    let base = enumerate_sn(n, &Limits { symmetric_group: n, ..*limits })?;
    let mut out = Vec::with_capacity(n * base.len());
    for k in 0..n {
        let x = coset_representative(n, k)?;
        for w in &base {
            out.push(StratumDescriptor::new(x.compose(&w.embed())?, k));
        }
    }
    out.sort_by(|a, b| a.element.sort_key().cmp(&b.element.sort_key()));
    Ok(out)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank() <= 9 {
            for v in &self.images {
                write!(f, "{v}")?;
            }
        } else {
            for (i, v) in self.images.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let images = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidPermutation(format!("bad entry {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::InvalidPermutation(format!("bad digit {c:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        let perm = Permutation::new(images)?;
        // digit strings are only canonical up to rank 9
        if perm.rank() > 9 && !s.contains(',') {
            return Err(Error::InvalidPermutation(
                "ranks above 9 must be comma separated".into(),
            ));
        }
        Ok(perm)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn inversions_brute(w: &Permutation) -> usize {
        let n = w.rank();
        let mut count = 0;
        for i in 1..=n {
            for j in i + 1..=n {
                if w.image(i) > w.image(j) {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![]).is_err());
        assert!("1a".parse::<Permutation>().is_err());
    }

    #[test]
    fn small_enumerations() {
        let lim = Limits::default();
        assert_eq!(enumerate_sn(1, &lim).unwrap(), vec![p("1")]);
        assert_eq!(enumerate_sn(2, &lim).unwrap(), vec![p("12"), p("21")]);
        let s3 = enumerate_sn(3, &lim).unwrap();
        assert_eq!(s3.len(), 6);
        assert_eq!(s3[0], p("123"));
        assert_eq!(s3[5], p("321"));
        let lengths: Vec<_> = s3.iter().map(inversions_brute).collect();
        assert_eq!(lengths, vec![0, 1, 1, 2, 2, 3]);
    }

    #[test]
    fn enumeration_ceiling() {
        let lim = Limits {
            symmetric_group: 3,
            ..Limits::default()
        };
        assert!(enumerate_sn(4, &lim).unwrap_err().is_resource_limit());
        assert!(enumerate_sn(9, &Limits::default()).unwrap_err().is_resource_limit());
    }

    #[test]
    fn lengths_and_descents() {
        let id = Permutation::identity(5).length_and_descents();
        assert_eq!(id.length, 0);
        assert!(id.left_descents.is_empty() && id.right_descents.is_empty());
        let w = p("321").length_and_descents();
        assert_eq!(w.length, 3);
        assert_eq!(w.right_descents, BTreeSet::from([1, 2]));
        assert_eq!(p("3412").length(), 4);
        // 231: right descent at 2; inverse 312 has right descent at 1
        let d = p("231").length_and_descents();
        assert_eq!(d.right_descents, BTreeSet::from([2]));
        assert_eq!(d.left_descents, BTreeSet::from([1]));
    }

    #[test]
    fn simple_multiplication_conventions() {
        let w = p("231");
        let s1 = Permutation::simple(3, 1).unwrap();
        assert_eq!(w.left_mul_simple(1), s1.compose(&w).unwrap());
        assert_eq!(w.right_mul_simple(1), w.compose(&s1).unwrap());
        assert!(Permutation::simple(3, 3).is_err());
    }

    #[test]
    fn bruhat_examples() {
        let id = Permutation::identity(3);
        for w in enumerate_sn(3, &Limits::default()).unwrap() {
            assert!(bruhat_leq(&id, &w).unwrap());
        }
        assert!(bruhat_leq(&p("213"), &p("231")).unwrap());
        assert!(!bruhat_leq(&p("321"), &p("312")).unwrap());
        assert!(matches!(
            bruhat_leq(&p("12"), &p("123")),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn longest_element_is_involution() {
        assert_eq!(longest_element(2), p("21"));
        let w0 = longest_element(4);
        assert_eq!(w0, p("4321"));
        assert_eq!(w0.length(), 6);
        assert!(w0.compose(&w0).unwrap().is_identity());
    }

    #[test]
    fn coset_representatives() {
        assert!(coset_representative(3, 0).unwrap().is_identity());
        assert_eq!(coset_representative(2, 1).unwrap(), p("132"));
        assert_eq!(coset_representative(3, 2).unwrap(), p("1342"));
        assert!(coset_representative(3, 3).is_err());
    }

    #[test]
    fn wtilde_rank_two() {
        let strata = enumerate_wtilde(2, &Limits::default()).unwrap();
        let elements: Vec<String> = strata.iter().map(|d| d.element.to_string()).collect();
        // e, (1 2), (2 3), (2 3)(1 2)
        assert_eq!(elements, vec!["123", "132", "213", "312"]);
        assert!(strata.iter().all(|d| d.last_image_is_not_one() && d.is_consistent()));
        let e = &strata[0];
        assert_eq!(e.cell_dim, 0);
        assert_eq!(e.y_pairs, BTreeSet::from([(2, 1), (3, 1), (3, 2)]));
    }

    #[test]
    fn wtilde_counts() {
        let lim = Limits::default();
        assert_eq!(enumerate_wtilde(3, &lim).unwrap().len(), 18);
        assert!(enumerate_wtilde(8, &lim).unwrap_err().is_resource_limit());
    }

    #[test]
    fn display_round_trip() {
        let w = p("3412");
        assert_eq!(w.to_string(), "3412");
        let big = Permutation::longest(10);
        let text = big.to_string();
        assert_eq!(text, "10,9,8,7,6,5,4,3,2,1");
        assert_eq!(text.parse::<Permutation>().unwrap(), big);
    }
}
