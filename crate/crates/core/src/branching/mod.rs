//! Ext-multiplicity oracle for standard modules of `(GL_{n+1}, GL_n)` and a
//! mechanized trace of the induction on `L*` behind it.
//!
//! [`proof_trace`] replays the induction: each round picks a maximal point
//! `ρ*`, removes one segment carrying it (after a dual swap when `ρ*` comes
//! from the smaller side) and replaces it by a cuspidal on a fresh line.
//! Every round must strictly decrease `L*`; the engine checks this instead
//! of assuming it. [`ext_dims`] wraps the trace into an Ext profile and
//! [`random`] generates seeded instances for the randomized suite.

pub mod random;
mod rho;
mod trace;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::zelevinsky::Multisegment;

pub use random::{random_instance, run_random_suite, InstanceOutcome, RandomSuiteReport, SuiteConfig};
pub use rho::{select_rho_star, CaseKind, RhoStar};
pub use trace::{proof_trace, ProofTrace, StepKind, TraceStep};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtMode {
    /// `n(m) = n(m') + 1`.
    Branching,
    /// `n(m) = n(m')`.
    EqualRank,
}

impl std::str::FromStr for ExtMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "branching" => Ok(ExtMode::Branching),
            "equal_rank" | "equal-rank" => Ok(ExtMode::EqualRank),
            other => Err(Error::Argument(format!("unknown mode {other:?}"))),
        }
    }
}

/// Dimensions of `Ext^i(λ(m), λ(m')^∨)`.
///
/// When `determined` is false the theorem does not decide the answer and
/// both dimension fields are `None`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtProfile {
    pub mode: ExtMode,
    pub determined: bool,
    pub hom_dim: Option<u64>,
    /// All `Ext^i` vanish for `i` at least this degree.
    pub ext_vanishing_degree: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<ProofTrace>,
}

pub fn ext_dims(m: &Multisegment, m_prime: &Multisegment, mode: ExtMode) -> Result<ExtProfile> {
    let (n, n_prime) = (m.absolute_length(), m_prime.absolute_length());
    match mode {
        ExtMode::Branching => {
            if n != n_prime + 1 {
                return Err(Error::Argument(format!(
                    "branching mode needs n(m) = n(m') + 1, got {n} and {n_prime}"
                )));
            }
            let trace = proof_trace(m, m_prime)?;
            if let Some(reason) = &trace.failure {
                return Err(Error::InductionFailure {
                    reason: reason.clone(),
                    state: trace.final_state(),
                });
            }
            Ok(ExtProfile {
                mode,
                determined: true,
                hom_dim: Some(1),
                ext_vanishing_degree: Some(1),
                evidence: Some(trace),
            })
        }
        ExtMode::EqualRank => {
            if n != n_prime {
                return Err(Error::Argument(format!(
                    "equal-rank mode needs n(m) = n(m'), got {n} and {n_prime}"
                )));
            }
            let determined = m != m_prime;
            Ok(ExtProfile {
                mode,
                determined,
                hom_dim: determined.then_some(0),
                ext_vanishing_degree: determined.then_some(0),
                evidence: None,
            })
        }
    }
}
