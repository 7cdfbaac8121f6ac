//! Top-down recursions that do not touch the shared table cache. They are
//! slow and exist to cross-check the bottom-up builders.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::IntPolynomial;
use crate::coxeter::{bruhat_leq, bruhat_leq_unchecked, enumerate_sn, Permutation};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Which side the recursion peels a simple reflection from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DescentSide {
    Left,
    Right,
}

/// `R_{x,w}` by the left-descent recursion
/// `R_{x,w} = R_{sx,sw}` if `sx < x`, else `(q-1) R_{x,sw} + q R_{sx,sw}`.
pub fn r_polynomial(x: &Permutation, w: &Permutation) -> Result<IntPolynomial> {
    if !bruhat_leq(x, w)? {
        return Ok(IntPolynomial::zero());
    }
    Ok(r_rec(x, w))
}

fn r_rec(x: &Permutation, w: &Permutation) -> IntPolynomial {
    if !bruhat_leq_unchecked(x, w) {
        return IntPolynomial::zero();
    }
    let Some(s) = w.first_left_descent() else {
        return IntPolynomial::one();
    };
    let sw = w.left_mul_simple(s);
    let sx = x.left_mul_simple(s);
    if sx.length() < x.length() {
        r_rec(&sx, &sw)
    } else {
        &(&IntPolynomial::from_i64s(&[-1, 1]) * &r_rec(x, &sw)) + &r_rec(&sx, &sw).shift(1)
    }
}

/// `P_{x,w}` computed top-down with a memo local to this call.
pub fn kl_polynomial_direct(
    x: &Permutation,
    w: &Permutation,
    side: DescentSide,
) -> Result<IntPolynomial> {
    if x.rank() != w.rank() {
        return Err(Error::RankMismatch {
            left: x.rank(),
            right: w.rank(),
        });
    }
    let limits = Limits::default();
    Limits::check("kl_polynomial_direct", w.rank(), limits.kl_table)?;
    let mut solver = Direct {
        side,
        all: enumerate_sn(w.rank(), &limits)?,
        memo: HashMap::new(),
    };
    Ok(solver.p(x, w))
}

struct Direct {
    side: DescentSide,
    all: Vec<Permutation>,
    memo: HashMap<(Permutation, Permutation), IntPolynomial>,
}

impl Direct {
    fn descent(&self, w: &Permutation) -> Option<usize> {
        match self.side {
            DescentSide::Left => w.first_left_descent(),
            DescentSide::Right => w.first_right_descent(),
        }
    }

    fn mul(&self, w: &Permutation, s: usize) -> Permutation {
        match self.side {
            DescentSide::Left => w.left_mul_simple(s),
            DescentSide::Right => w.right_mul_simple(s),
        }
    }

    fn mu(&mut self, z: &Permutation, v: &Permutation) -> BigInt {
        let (lz, lv) = (z.length(), v.length());
        if lv <= lz || (lv - lz) % 2 == 0 {
            return BigInt::zero();
        }
        self.p(z, v).coefficient((lv - lz - 1) / 2)
    }

    fn p(&mut self, x: &Permutation, w: &Permutation) -> IntPolynomial {
        if !bruhat_leq_unchecked(x, w) {
            return IntPolynomial::zero();
        }
        if x == w {
            return IntPolynomial::one();
        }
        let key = (x.clone(), w.clone());
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let s = self.descent(w).expect("x < w forces w != e");
        let v = self.mul(w, s);
        let sx = self.mul(x, s);
        let c = usize::from(sx.length() < x.length());
        let mut p = IntPolynomial::zero();
        p.add_scaled_shifted(&self.p(&sx, &v), &BigInt::one(), 1 - c);
        p.add_scaled_shifted(&self.p(x, &v), &BigInt::one(), c);
        let lw = w.length();
        let candidates: Vec<Permutation> = self
            .all
            .iter()
            .filter(|z| {
                *z != &v
                    && bruhat_leq_unchecked(x, z)
                    && bruhat_leq_unchecked(z, &v)
                    && self.mul(z, s).length() < z.length()
            })
            .cloned()
            .collect();
        for z in candidates {
            let mu = self.mu(&z, &v);
            if !mu.is_zero() {
                let pxz = self.p(x, &z);
                p.add_scaled_shifted(&pxz, &-mu, (lw - z.length()) / 2);
            }
        }
        self.memo.insert(key, p.clone());
        p
    }
}
