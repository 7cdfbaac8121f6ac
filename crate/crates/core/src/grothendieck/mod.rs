//! Grothendieck-group computations over the standard-module basis.
//!
//! Regular blocks turn Kazhdan-Lusztig values into decomposition
//! coefficients of irreducibles in standard modules; the Euler-Poincare
//! pairing and Whittaker dimension are linear functionals on those
//! coefficients. The restriction-filtration layers supply the derivative
//! labels used by the cuspidal-support vanishing test.

mod block;
mod layers;
mod vector;

pub use block::{
    decompose_irreducible, regular_block, regular_block_on, verify_kl_identity, IdentityRecord,
    IdentityReport, RegularBlock, BLOCK_LINE,
};
pub use layers::{
    bz_layers, derivative_multisegment, layer_vanishing, FiltrationLayer, ModelTag, Vanishing,
};
pub use vector::{ep_pairing, whittaker_dim, GrothendieckVector};
