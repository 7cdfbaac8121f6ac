use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::zelevinsky::{parse_multisegment, Multisegment};

/// An integer combination of standard modules `[λ(m)]`, keyed by canonical
/// multisegment. Zero coefficients are never stored and all keys share one
/// absolute length.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GrothendieckVector {
    coeffs: BTreeMap<Multisegment, i64>,
}

impl GrothendieckVector {
    pub fn zero() -> Self {
        GrothendieckVector::default()
    }

    /// The basis vector `[λ(m)]`.
    pub fn basis(m: Multisegment) -> Self {
        GrothendieckVector {
            coeffs: BTreeMap::from([(m, 1)]),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, m: &Multisegment) -> i64 {
        self.coeffs.get(m).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Multisegment, i64)> {
        self.coeffs.iter().map(|(m, &c)| (m, c))
    }

    /// Common absolute length of the support; `None` for the zero vector.
    pub fn absolute_length(&self) -> Option<usize> {
        self.coeffs.keys().next().map(Multisegment::absolute_length)
    }

    pub fn add_term(&mut self, m: Multisegment, c: i64) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        if let Some(n) = self.absolute_length() {
            if m.absolute_length() != n {
                return Err(Error::Argument(format!(
                    "term {m} has absolute length {}, vector has {n}",
                    m.absolute_length()
                )));
            }
        }
        let entry = self.coeffs.entry(m).or_insert(0);
        *entry = entry
            .checked_add(c)
            .ok_or_else(|| Error::Overflow("Grothendieck coefficient".into()))?;
        if *entry == 0 {
            self.coeffs.retain(|_, c| *c != 0);
        }
        Ok(())
    }

    pub fn add(&self, other: &GrothendieckVector) -> Result<GrothendieckVector> {
        let mut out = self.clone();
        for (m, c) in other.iter() {
            out.add_term(m.clone(), c)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: i64) -> Result<GrothendieckVector> {
        let mut out = GrothendieckVector::zero();
        for (m, a) in self.iter() {
            let v = a
                .checked_mul(c)
                .ok_or_else(|| Error::Overflow("Grothendieck coefficient".into()))?;
            out.add_term(m.clone(), v)?;
        }
        Ok(out)
    }

    /// Applies `f` to every key, re-collecting coefficients.
    pub fn map_keys(&self, f: impl Fn(&Multisegment) -> Multisegment) -> Result<GrothendieckVector> {
        let mut out = GrothendieckVector::zero();
        for (m, c) in self.iter() {
            out.add_term(f(m), c)?;
        }
        Ok(out)
    }

    /// Sum of coefficients; every standard module has a one-dimensional
    /// space of Whittaker functionals.
    pub fn whittaker_dim(&self) -> Result<i64> {
        self.coeffs.values().try_fold(0i64, |acc, &c| {
            acc.checked_add(c)
                .ok_or_else(|| Error::Overflow("Whittaker dimension".into()))
        })
    }
}

pub fn whittaker_dim(v: &GrothendieckVector) -> Result<i64> {
    v.whittaker_dim()
}

/// Euler-Poincare pairing for a `GL(N+1) x GL(N)` pair: the product of the
/// Whittaker dimensions. With `check_ranks`, `v1` must be supported in
/// absolute length `N+1` and `v2` in length `N`.
pub fn ep_pairing(v1: &GrothendieckVector, v2: &GrothendieckVector, check_ranks: bool) -> Result<i64> {
    if check_ranks {
        if let (Some(n1), Some(n2)) = (v1.absolute_length(), v2.absolute_length()) {
            if n1 != n2 + 1 {
                return Err(Error::Argument(format!(
                    "EP pairing needs ranks N+1 and N, got {n1} and {n2}"
                )));
            }
        }
    }
    v1.whittaker_dim()?
        .checked_mul(v2.whittaker_dim()?)
        .ok_or_else(|| Error::Overflow("EP pairing".into()))
}

/// `{..} - 2*{..} + ...`; the zero vector prints as `0`.
impl fmt::Display for GrothendieckVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            if c.unsigned_abs() != 1 {
                write!(f, "{}*", c.unsigned_abs())?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl FromStr for GrothendieckVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let mut out = GrothendieckVector::zero();
        if trimmed == "0" {
            return Ok(out);
        }
        let bytes = s.as_bytes();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let mut first = true;
        loop {
            skip_ws(&mut pos);
            if pos == bytes.len() {
                if first {
                    return Err(Error::parse(pos, "empty vector"));
                }
                break;
            }
            let mut sign = 1i64;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
                skip_ws(&mut pos);
            } else if !first {
                return Err(Error::parse(pos, "expected '+' or '-'"));
            }
            let digits_start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let mut coeff = 1i64;
            if pos > digits_start {
                coeff = s[digits_start..pos]
                    .parse()
                    .map_err(|_| Error::parse(digits_start, "coefficient out of range"))?;
                skip_ws(&mut pos);
                if pos >= bytes.len() || bytes[pos] != b'*' {
                    return Err(Error::parse(pos, "expected '*'"));
                }
                pos += 1;
                skip_ws(&mut pos);
            }
            if pos >= bytes.len() || bytes[pos] != b'{' {
                return Err(Error::parse(pos, "expected '{'"));
            }
            let close = s[pos..]
                .find('}')
                .map(|i| pos + i)
                .ok_or_else(|| Error::parse(pos, "unterminated multisegment"))?;
            let m = parse_multisegment(&s[pos..=close]).map_err(|e| match e {
                Error::Parse { offset, message } => Error::parse(pos + offset, message),
                other => other,
            })?;
            out.add_term(m, sign * coeff)?;
            pos = close + 1;
            first = false;
        }
        Ok(out)
    }
}

/// Serialized as a list of `{"multisegment": .., "coefficient": ..}` records.
impl Serialize for GrothendieckVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            multisegment: &'a Multisegment,
            coefficient: i64,
        }
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for (m, c) in self.iter() {
            seq.serialize_element(&Term {
                multisegment: m,
                coefficient: c,
            })?;
        }
        seq.end()
    }
}
