use std::collections::HashMap;

use crate::coxeter::{bruhat_leq_unchecked, enumerate_sn, Permutation};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Dense indexing of `S_n` in canonical (length, lex) order, with the
/// multiplication and Bruhat data the table builders need.
#[derive(Debug)]
pub(crate) struct GroupIndex {
    pub n: usize,
    pub elements: Vec<Permutation>,
    pub index: HashMap<Permutation, usize>,
    pub lengths: Vec<usize>,
    /// `left_mul[i - 1][w] = index of s_i * w`.
    pub left_mul: Vec<Vec<usize>>,
    /// `first_left_descent[w]`, `None` for the identity.
    pub first_left_descent: Vec<Option<usize>>,
    bruhat: Vec<bool>,
}

impl GroupIndex {
    pub fn new(n: usize) -> Result<Self> {
        let elements = enumerate_sn(
            n,
            &Limits {
                symmetric_group: n,
                ..Limits::default()
            },
        )?;
        let index: HashMap<Permutation, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let lengths = elements.iter().map(Permutation::length).collect();
        let left_mul = (1..n)
            .map(|i| {
                elements
                    .iter()
                    .map(|w| index[&w.left_mul_simple(i)])
                    .collect()
            })
            .collect();
        let first_left_descent = elements.iter().map(Permutation::first_left_descent).collect();
        let size = elements.len();
        let mut bruhat = vec![false; size * size];
        for (wi, w) in elements.iter().enumerate() {
            for (xi, x) in elements.iter().enumerate() {
                bruhat[wi * size + xi] = bruhat_leq_unchecked(x, w);
            }
        }
        Ok(GroupIndex {
            n,
            elements,
            index,
            lengths,
            left_mul,
            first_left_descent,
            bruhat,
        })
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn leq(&self, x: usize, w: usize) -> bool {
        self.bruhat[w * self.size() + x]
    }

    pub fn position(&self, w: &Permutation) -> Result<usize> {
        if w.rank() != self.n {
            return Err(Error::RankMismatch {
                left: w.rank(),
                right: self.n,
            });
        }
        Ok(self.index[w])
    }
}
