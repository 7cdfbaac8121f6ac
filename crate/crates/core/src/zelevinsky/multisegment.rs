use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use serde::{Serialize, Serializer};

use super::line::{CuspidalPoint, LineClass};
use super::segment::Segment;

/// A multiset of segments, always held in canonical standard order.
///
/// Within one line class segments are sorted by descending `b`, ties by
/// descending `a`; classes are ordered by line name, then by the fractional
/// part of the exponents. Any such order satisfies `Δ_i ≮ Δ_j` for `i < j`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multisegment {
    segments: Vec<Segment>,
}

fn canonical_key(s: &Segment) -> (LineClass, Reverse<Rational64>, Reverse<Rational64>) {
    (s.class(), Reverse(s.b()), Reverse(s.a()))
}

impl Multisegment {
    pub fn empty() -> Self {
        Multisegment::default()
    }

    pub fn new(segments: impl IntoIterator<Item = Segment>) -> Self {
        standard_order(segments.into_iter().collect::<Vec<_>>().as_slice())
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// `n(m)`, the rank of the general linear group `λ(m)` lives on.
    pub fn absolute_length(&self) -> usize {
        self.segments.iter().map(Segment::absolute_length).sum()
    }

    pub fn dual(&self) -> Multisegment {
        Multisegment::new(self.segments.iter().map(Segment::dual))
    }

    pub fn twist(&self, c: Rational64) -> Multisegment {
        Multisegment::new(self.segments.iter().map(|s| s.twist(c)))
    }

    pub fn with_segment(&self, segment: Segment) -> Multisegment {
        Multisegment::new(self.segments.iter().cloned().chain(std::iter::once(segment)))
    }

    /// Drops the segment at `index` (canonical position).
    pub fn without(&self, index: usize) -> Multisegment {
        let mut segments = self.segments.clone();
        segments.remove(index);
        Multisegment { segments }
    }

    pub fn union(&self, other: &Multisegment) -> Multisegment {
        Multisegment::new(self.segments.iter().chain(&other.segments).cloned())
    }

    pub fn csupp(&self) -> CuspidalSupport {
        let mut support = CuspidalSupport::default();
        for s in &self.segments {
            for p in s.points() {
                support.insert(p);
            }
        }
        support
    }

    /// Pairwise unlinked, i.e. `λ(m)` is irreducible and generic.
    pub fn is_generic(&self) -> bool {
        self.segments.iter().enumerate().all(|(i, s)| {
            self.segments[i + 1..].iter().all(|t| !s.is_linked(t))
        })
    }
}

impl From<Vec<Segment>> for Multisegment {
    fn from(segments: Vec<Segment>) -> Self {
        Multisegment::new(segments)
    }
}

/// Stable sort into the canonical order described on [`Multisegment`].
pub fn standard_order(segments: &[Segment]) -> Multisegment {
    let mut segments = segments.to_vec();
    segments.sort_by_cached_key(canonical_key);
    Multisegment { segments }
}

/// Whether `segments`, in the given order, already satisfies
/// `Δ_i ≮ Δ_j` for all `i < j`, so that their product is a standard module.
pub fn is_standard_sequence(segments: &[Segment]) -> bool {
    segments
        .iter()
        .enumerate()
        .all(|(i, s)| segments[i + 1..].iter().all(|t| !s.precedes(t)))
}

/// Cuspidal support with multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CuspidalSupport {
    counts: BTreeMap<CuspidalPoint, usize>,
}

impl CuspidalSupport {
    pub fn insert(&mut self, p: CuspidalPoint) {
        *self.counts.entry(p).or_default() += 1;
    }

    pub fn multiplicity(&self, p: &CuspidalPoint) -> usize {
        self.counts.get(p).copied().unwrap_or(0)
    }

    pub fn contains(&self, p: &CuspidalPoint) -> bool {
        self.counts.contains_key(p)
    }

    /// Total size counted with multiplicity.
    pub fn size(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CuspidalPoint, usize)> {
        self.counts.iter().map(|(p, &c)| (p, c))
    }

    pub fn twist(&self, c: Rational64) -> CuspidalSupport {
        CuspidalSupport {
            counts: self.counts.iter().map(|(p, &m)| (p.twist(c), m)).collect(),
        }
    }
}

impl Serialize for CuspidalSupport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(
            self.counts
                .iter()
                .flat_map(|(p, &m)| std::iter::repeat_n(p.to_string(), m)),
        )
    }
}

/// `L(nu^{1/2} m, m'^∨)`: pairs `(Δ, Δ')` in `nu^{1/2} m × m'^∨` lying on a
/// common cuspidal line.
pub fn lstar(m: &Multisegment, m_prime: &Multisegment) -> usize {
    let left = m.twist(Rational64::new(1, 2));
    let right = m_prime.dual();
    left.segments
        .iter()
        .map(|s| right.segments.iter().filter(|t| s.same_line_class(t)).count())
        .sum()
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.segments.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for Multisegment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
