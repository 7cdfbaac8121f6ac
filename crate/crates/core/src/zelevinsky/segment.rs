use std::fmt;

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::line::{CuspidalLine, CuspidalPoint, LineClass};
use crate::error::{Error, Result};

/// Which end of a segment a derivative truncates.
///
/// The right derivative of `St(Δ)` is `St` of `Δ` truncated from the left,
/// and the left derivative truncates from the right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    /// Exponent of the global twist carried by shifted derivatives:
    /// `pi^{[i]} = nu^{1/2} pi^{(i)}` and `^{[i]}pi = nu^{-1/2} ^{(i)}pi`.
    pub fn shift_twist(self) -> Rational64 {
        match self {
            Side::Right => Rational64::new(1, 2),
            Side::Left => Rational64::new(-1, 2),
        }
    }

    pub fn mirror(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            _ => Err(Error::Argument(format!("side must be left or right, got {s:?}"))),
        }
    }
}

/// `[nu^a rho, nu^b rho]` with `b - a` a non-negative integer.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segment {
    line: CuspidalLine,
    a: Rational64,
    b: Rational64,
}

impl Segment {
    pub fn new(line: CuspidalLine, a: Rational64, b: Rational64) -> Result<Self> {
        let gap = b - a;
        if !gap.is_integer() {
            return Err(Error::InvalidSegment(format!(
                "[{a},{b}]: endpoints differ by a non-integer"
            )));
        }
        if gap < Rational64::zero() {
            return Err(Error::InvalidSegment(format!("[{a},{b}]: negative length")));
        }
        Ok(Segment { line, a, b })
    }

    /// Convenience constructor for integral endpoints.
    pub fn integral(line: &CuspidalLine, a: i64, b: i64) -> Result<Self> {
        Segment::new(line.clone(), Rational64::from_integer(a), Rational64::from_integer(b))
    }

    pub fn line(&self) -> &CuspidalLine {
        &self.line
    }

    pub fn a(&self) -> Rational64 {
        self.a
    }

    pub fn b(&self) -> Rational64 {
        self.b
    }

    /// `a(Δ) = nu^a rho`.
    pub fn begin(&self) -> CuspidalPoint {
        CuspidalPoint::new(self.line.clone(), self.a)
    }

    /// `b(Δ) = nu^b rho`.
    pub fn end(&self) -> CuspidalPoint {
        CuspidalPoint::new(self.line.clone(), self.b)
    }

    /// Number of cuspidal points, `b - a + 1`.
    pub fn relative_length(&self) -> usize {
        (self.b - self.a).to_integer().to_usize().unwrap() + 1
    }

    /// `n(St(Δ)) = degree * (b - a + 1)`.
    pub fn absolute_length(&self) -> usize {
        self.line.degree() as usize * self.relative_length()
    }

    pub fn class(&self) -> LineClass {
        LineClass::of(&self.line, self.a)
    }

    pub fn points(&self) -> impl Iterator<Item = CuspidalPoint> + '_ {
        (0..self.relative_length() as i64)
            .map(move |k| CuspidalPoint::new(self.line.clone(), self.a + k))
    }

    pub fn contains_point(&self, p: &CuspidalPoint) -> bool {
        p.line == self.line && (p.shift - self.a).is_integer() && self.a <= p.shift && p.shift <= self.b
    }

    /// Same line name and an integral gap between exponents.
    pub fn same_line_class(&self, other: &Segment) -> bool {
        self.line == other.line && (self.a - other.a).is_integer()
    }

    /// `Δ^∨ = [nu^{-b} rho^∨, nu^{-a} rho^∨]`.
    pub fn dual(&self) -> Segment {
        Segment {
            line: self.line.dual(),
            a: -self.b,
            b: -self.a,
        }
    }

    pub fn twist(&self, c: Rational64) -> Segment {
        Segment {
            line: self.line.clone(),
            a: self.a + c,
            b: self.b + c,
        }
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Segment) -> bool {
        self.same_line_class(other) && self.a <= other.a && other.b <= self.b
    }

    /// The union is a segment and neither contains the other.
    pub fn is_linked(&self, other: &Segment) -> bool {
        if !self.same_line_class(other) {
            return false;
        }
        let one = Rational64::from_integer(1);
        let union_is_segment = other.a <= self.b + one && self.a <= other.b + one;
        union_is_segment && !self.contains(other) && !other.contains(self)
    }

    /// `Δ < Δ'`: same line class and `b(Δ) < b(Δ')`.
    pub fn precedes(&self, other: &Segment) -> bool {
        self.same_line_class(other) && self.b < other.b
    }

    /// Truncation by `i` points: from the left for the right derivative,
    /// from the right for the left derivative. `None` is the empty segment,
    /// reached at `i = b - a + 1`. `shifted` applies the `nu^{±1/2}` twist of
    /// the shifted derivatives.
    pub fn derivative(&self, side: Side, i: usize, shifted: bool) -> Result<Option<Segment>> {
        let len = self.relative_length();
        if i > len {
            return Err(Error::Argument(format!(
                "derivative order {i} exceeds segment length {len}"
            )));
        }
        if i == len {
            return Ok(None);
        }
        let k = Rational64::from_integer(i as i64);
        let truncated = match side {
            Side::Right => Segment {
                line: self.line.clone(),
                a: self.a + k,
                b: self.b,
            },
            Side::Left => Segment {
                line: self.line.clone(),
                a: self.a,
                b: self.b - k,
            },
        };
        Ok(Some(if shifted {
            truncated.twist(side.shift_twist())
        } else {
            truncated
        }))
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]@{}", self.a, self.b, self.line)
    }
}

impl Serialize for Segment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
