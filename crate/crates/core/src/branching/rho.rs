use std::collections::BTreeSet;

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::zelevinsky::{lstar, CuspidalPoint, LineClass, Multisegment, Segment};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseKind {
    /// `ρ* = ν^{1/2} b(Δ_l)` for a segment of `m`.
    Case1,
    /// `ρ* = b(Δ'^∨)` for a segment of `m'`.
    Case2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RhoStar {
    pub point: CuspidalPoint,
    pub case: CaseKind,
    /// The segment carrying `ρ*`: from `m` in Case 1, from `m'` (undualized)
    /// in Case 2.
    pub anchor: Segment,
    /// Canonical position of `anchor` in its multisegment.
    pub anchor_index: usize,
}

/// Picks the maximal point of `csupp(ν^{1/2} m) ∪ csupp(m'^∨)` on the first
/// line class (by name, then fractional exponent) meeting both sides.
pub fn select_rho_star(m: &Multisegment, m_prime: &Multisegment) -> Result<RhoStar> {
    if lstar(m, m_prime) == 0 {
        return Err(Error::Precondition(
            "L* = 0: no cuspidal line meets both sides".into(),
        ));
    }
    let half = Rational64::new(1, 2);
    let left = m.twist(half);
    let right = m_prime.dual();
    let left_classes: BTreeSet<LineClass> = left.segments().iter().map(Segment::class).collect();
    let class = right
        .segments()
        .iter()
        .map(Segment::class)
        .filter(|c| left_classes.contains(c))
        .min()
        .expect("L* > 0 implies a shared class");

    let top = |ms: &Multisegment| {
        ms.segments()
            .iter()
            .filter(|s| s.class() == class)
            .map(Segment::b)
            .max()
    };
    let left_top = top(&left).expect("class meets the left side");
    let right_top = top(&right).expect("class meets the right side");

    if right_top >= left_top {
        let anchor_index = m_prime
            .segments()
            .iter()
            .position(|s| s.dual().class() == class && -s.a() == right_top)
            .expect("maximum is attained");
        let anchor = m_prime.segments()[anchor_index].clone();
        Ok(RhoStar {
            point: anchor.dual().end(),
            case: CaseKind::Case2,
            anchor,
            anchor_index,
        })
    } else {
        let anchor_index = m
            .segments()
            .iter()
            .position(|s| s.twist(half).class() == class && s.b() + half == left_top)
            .expect("maximum is attained");
        let anchor = m.segments()[anchor_index].clone();
        Ok(RhoStar {
            point: anchor.end().twist(half),
            case: CaseKind::Case1,
            anchor,
            anchor_index,
        })
    }
}
