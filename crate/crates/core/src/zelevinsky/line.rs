use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An opaque cuspidal representation `rho` of some `GL_d`, identified by
/// name. Only the name, the degree `d` and the name of `rho^∨` matter.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CuspidalLine {
    name: Arc<str>,
    dual: Arc<str>,
    degree: u32,
}

impl CuspidalLine {
    /// A self-dual line.
    pub fn self_dual(name: &str, degree: u32) -> Result<Self> {
        validate_name(name)?;
        validate_degree(degree)?;
        let name: Arc<str> = Arc::from(name);
        Ok(CuspidalLine {
            dual: Arc::clone(&name),
            name,
            degree,
        })
    }

    /// A line whose contragredient is the line called `dual`.
    pub fn with_dual(name: &str, dual: &str, degree: u32) -> Result<Self> {
        validate_name(name)?;
        validate_name(dual)?;
        validate_degree(degree)?;
        Ok(CuspidalLine {
            name: Arc::from(name),
            dual: Arc::from(dual),
            degree,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dual_name(&self) -> &str {
        &self.dual
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_self_dual(&self) -> bool {
        self.name == self.dual
    }

    pub fn dual(&self) -> Self {
        CuspidalLine {
            name: Arc::clone(&self.dual),
            dual: Arc::clone(&self.name),
            degree: self.degree,
        }
    }
}

pub(crate) fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '\'' | '*' | '#')
}

fn validate_name(name: &str) -> Result<()> {
    if name.is_empty() || !name.chars().all(is_name_char) {
        return Err(Error::Argument(format!("invalid line name {name:?}")));
    }
    Ok(())
}

fn validate_degree(degree: u32) -> Result<()> {
    if degree == 0 {
        return Err(Error::Argument("line degree must be positive".into()));
    }
    Ok(())
}

/// `@name`, `@name(d)`, `@name~dual` or `@name~dual(d)`; defaults omitted.
impl fmt::Display for CuspidalLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if !self.is_self_dual() {
            write!(f, "~{}", self.dual)?;
        }
        if self.degree != 1 {
            write!(f, "({})", self.degree)?;
        }
        Ok(())
    }
}

impl Serialize for CuspidalLine {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The cuspidal representation `nu^shift rho`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CuspidalPoint {
    pub line: CuspidalLine,
    pub shift: Rational64,
}

impl CuspidalPoint {
    pub fn new(line: CuspidalLine, shift: Rational64) -> Self {
        CuspidalPoint { line, shift }
    }

    /// Integer-shift class: points in one class are comparable under `<`.
    pub fn class(&self) -> LineClass {
        LineClass::of(&self.line, self.shift)
    }

    pub fn twist(&self, c: Rational64) -> Self {
        CuspidalPoint {
            line: self.line.clone(),
            shift: self.shift + c,
        }
    }

    pub fn dual(&self) -> Self {
        CuspidalPoint {
            line: self.line.dual(),
            shift: -self.shift,
        }
    }
}

impl fmt::Display for CuspidalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.shift, self.line)
    }
}

impl Serialize for CuspidalPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A cuspidal line through a fixed `rho` up to integer twists: the line name
/// together with the fractional part of the exponent in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LineClass {
    pub line: CuspidalLine,
    pub fraction: Rational64,
}

impl LineClass {
    pub fn of(line: &CuspidalLine, shift: Rational64) -> Self {
        let fraction = shift - shift.floor();
        debug_assert!(fraction >= Rational64::zero());
        LineClass {
            line: line.clone(),
            fraction,
        }
    }
}

impl fmt::Display for LineClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+Z@{}", self.fraction, self.line)
    }
}
