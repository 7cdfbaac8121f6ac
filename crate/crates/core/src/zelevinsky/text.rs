//! Text grammar for segments and multisegments.
//!
//! ```text
//! multisegment := "{" [ segment { "," segment } ] "}"
//! segment      := "[" rational "," rational "]" "@" line
//! line         := name [ "~" name ] [ "(" degree ")" ]
//! rational     := ["-"] digits [ "/" digits ]
//! ```
//!
//! `name~dual` declares a line whose contragredient is `dual`; a bare name
//! is self-dual. The degree defaults to 1. Whitespace between tokens is
//! ignored, and printing a parsed value reproduces canonical input exactly.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_rational::Rational64;

use super::line::{is_name_char, CuspidalLine};
use super::multisegment::Multisegment;
use super::segment::Segment;
use crate::error::{Error, Result};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected {c:?}")))
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if !f(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.text[start..self.pos]
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let negative = self.eat('-');
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return Err(Error::parse(start, "expected an integer"));
        }
        let v: i64 = digits
            .parse()
            .map_err(|_| Error::parse(start, "integer out of range"))?;
        Ok(if negative { -v } else { v })
    }

    fn rational(&mut self) -> Result<Rational64> {
        let start = self.pos;
        let p = self.integer()?;
        if self.eat('/') {
            let q = self.integer()?;
            if q <= 0 {
                return Err(Error::parse(start, "denominator must be positive"));
            }
            Ok(Rational64::new(p, q))
        } else {
            Ok(Rational64::from_integer(p))
        }
    }

    fn name(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        let name = self.take_while(is_name_char);
        if name.is_empty() {
            return Err(Error::parse(start, "expected a line name"));
        }
        Ok(name)
    }

    fn line(&mut self) -> Result<CuspidalLine> {
        let start = self.pos;
        let name = self.name()?;
        let dual = if self.eat('~') { Some(self.name()?) } else { None };
        let degree = if self.eat('(') {
            let d = self.integer()?;
            self.expect(')')?;
            u32::try_from(d).map_err(|_| Error::parse(start, "degree must be positive"))?
        } else {
            1
        };
        let line = match dual {
            Some(dual) if dual != name => CuspidalLine::with_dual(name, dual, degree),
            _ => CuspidalLine::self_dual(name, degree),
        };
        line.map_err(|e| Error::parse(start, e.to_string()))
    }

    fn segment(&mut self) -> Result<Segment> {
        self.expect('[')?;
        let start = self.pos;
        let a = self.rational()?;
        self.expect(',')?;
        let b = self.rational()?;
        self.expect(']')?;
        self.expect('@')?;
        let line = self.line()?;
        Segment::new(line, a, b).map_err(|e| Error::parse(start, e.to_string()))
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos != self.text.len() {
            return Err(Error::parse(self.pos, "trailing input"));
        }
        Ok(())
    }
}

pub fn parse_segment(text: &str) -> Result<Segment> {
    let mut cur = Cursor::new(text);
    let s = cur.segment()?;
    cur.finish()?;
    Ok(s)
}

/// Parses a multisegment, keeping segments in input order so callers can
/// check whether that order was already standard.
pub fn parse_segment_list(text: &str) -> Result<Vec<Segment>> {
    let mut cur = Cursor::new(text);
    cur.expect('{')?;
    let mut segments = Vec::new();
    if !cur.eat('}') {
        loop {
            segments.push(cur.segment()?);
            if cur.eat('}') {
                break;
            }
            cur.expect(',')?;
        }
    }
    cur.finish()?;
    check_line_consistency(&segments)?;
    Ok(segments)
}

pub fn parse_multisegment(text: &str) -> Result<Multisegment> {
    Ok(Multisegment::new(parse_segment_list(text)?))
}

/// Every name must carry one degree and one dual, and dual pairs must agree.
pub fn check_line_consistency<'a>(segments: impl IntoIterator<Item = &'a Segment>) -> Result<()> {
    let mut seen: BTreeMap<String, CuspidalLine> = BTreeMap::new();
    for s in segments {
        let line = s.line();
        for expected in [line.clone(), line.dual()] {
            match seen.get(expected.name()) {
                Some(prev) if *prev != expected => {
                    return Err(Error::Argument(format!(
                        "line {:?} used inconsistently: {prev} vs {expected}",
                        expected.name()
                    )));
                }
                Some(_) => {}
                None => {
                    seen.insert(expected.name().to_string(), expected);
                }
            }
        }
    }
    Ok(())
}

impl FromStr for Segment {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_segment(s)
    }
}

impl FromStr for Multisegment {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_multisegment(s)
    }
}
