use std::fmt;

use serde::{Serialize, Serializer};

use super::vector::GrothendieckVector;
use crate::error::Result;
use crate::zelevinsky::{CuspidalPoint, Multisegment, Segment, Side};

/// The model applied to the inner factor of a restriction-filtration layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelTag {
    /// Restriction to the mirabolic-sized subgroup.
    Restriction,
    /// Equal-rank Fourier-Jacobi model `⊗ ζ^F`.
    FourierJacobi,
    /// Its transpose-inverse twin `⊗ \hat ζ^F`.
    FourierJacobiDual,
    RankinSelberg(usize),
    RankinSelbergBar(usize),
}

impl ModelTag {
    /// Tag of the `k`-th layer.
    pub fn for_layer(side: Side, k: usize) -> ModelTag {
        match (side, k) {
            (_, 0) => ModelTag::Restriction,
            (Side::Right, 1) => ModelTag::FourierJacobi,
            (Side::Left, 1) => ModelTag::FourierJacobiDual,
            (Side::Right, k) => ModelTag::RankinSelberg(k - 2),
            (Side::Left, k) => ModelTag::RankinSelbergBar(k - 2),
        }
    }
}

impl fmt::Display for ModelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelTag::Restriction => f.write_str("Restriction"),
            ModelTag::FourierJacobi => f.write_str("FourierJacobi"),
            ModelTag::FourierJacobiDual => f.write_str("FourierJacobiDual"),
            ModelTag::RankinSelberg(r) => write!(f, "RankinSelberg({r})"),
            ModelTag::RankinSelbergBar(r) => write!(f, "RankinSelbergBar({r})"),
        }
    }
}

impl Serialize for ModelTag {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// One successive quotient `derived_factor × model(inner)` of the
/// restriction of `λ(outer) × λ(inner)` (right side), or its mirror
/// `model(inner) × derived_factor` (left side).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationLayer {
    pub side: Side,
    pub k: usize,
    /// Total shifted `k`-th derivative of `λ(outer)` as a formal sum of
    /// standard labels. The empty multisegment labels the trivial
    /// representation of `GL_0`; the zero sum means the derivative vanishes.
    pub derived_factor: GrothendieckVector,
    pub model: ModelTag,
    pub inner: Multisegment,
}

/// Leibniz expansion of the total `k`-th derivative of `λ(m)`: the sum over
/// all ways to truncate each segment `Δ_j` by `t_j` points with
/// `sum_j degree_j * t_j = k`.
pub fn derivative_multisegment(
    m: &Multisegment,
    side: Side,
    k: usize,
    shifted: bool,
) -> Result<GrothendieckVector> {
    let mut out = GrothendieckVector::zero();
    let mut chosen: Vec<Segment> = Vec::new();
    expand(m.segments(), side, k, shifted, &mut chosen, &mut out)?;
    Ok(out)
}

fn expand(
    rest: &[Segment],
    side: Side,
    k: usize,
    shifted: bool,
    chosen: &mut Vec<Segment>,
    out: &mut GrothendieckVector,
) -> Result<()> {
    let Some((first, tail)) = rest.split_first() else {
        if k == 0 {
            out.add_term(Multisegment::new(chosen.iter().cloned()), 1)?;
        }
        return Ok(());
    };
    let degree = first.line().degree() as usize;
    for t in 0..=first.relative_length() {
        let used = degree * t;
        if used > k {
            break;
        }
        let pushed = match first.derivative(side, t, shifted)? {
            Some(s) => {
                chosen.push(s);
                true
            }
            None => false,
        };
        expand(tail, side, k - used, shifted, chosen, out)?;
        if pushed {
            chosen.pop();
        }
    }
    Ok(())
}

/// Layers `k = 0 ..= n(outer)` of the right (or left) filtration.
pub fn bz_layers(outer: &Multisegment, inner: &Multisegment, side: Side) -> Result<Vec<FiltrationLayer>> {
    (0..=outer.absolute_length())
        .map(|k| {
            Ok(FiltrationLayer {
                side,
                k,
                derived_factor: derivative_multisegment(outer, side, k, true)?,
                model: ModelTag::for_layer(side, k),
                inner: inner.clone(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Vanishing {
    pub vanishes: bool,
    pub witness: Option<CuspidalPoint>,
}

/// Cuspidal-support vanishing test for `Ext(layer, λ(target)^∨)`: the layer
/// contributes nothing when `point` lies in the support of every term of the
/// derived factor but not in `csupp(target^∨)`. A derived factor with no
/// terms is reported as not vanishing by this criterion.
pub fn layer_vanishing(layer: &FiltrationLayer, target: &Multisegment, point: &CuspidalPoint) -> Vanishing {
    let in_every_term = !layer.derived_factor.is_zero()
        && layer
            .derived_factor
            .iter()
            .all(|(m, _)| m.csupp().contains(point));
    let vanishes = in_every_term && !target.dual().csupp().contains(point);
    Vanishing {
        vanishes,
        witness: vanishes.then(|| point.clone()),
    }
}
