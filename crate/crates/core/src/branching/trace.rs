use std::collections::BTreeSet;
use std::fmt;

use num_rational::Rational64;
use serde::Serialize;

use super::rho::{select_rho_star, CaseKind, RhoStar};
use crate::error::{Error, Result};
use crate::grothendieck::{bz_layers, layer_vanishing};
use crate::zelevinsky::{
    check_line_consistency, lstar, CuspidalLine, CuspidalPoint, Multisegment, Segment, Side,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StepKind {
    BaseCase,
    Case1Removal,
    SwapDual,
    FreshCuspidalInsertion,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub round: usize,
    pub kind: StepKind,
    pub lstar_before: usize,
    pub lstar_after: usize,
    pub rho_star: Option<CuspidalPoint>,
    pub detail: String,
    /// Segment taken out of the larger side by a removal step.
    pub removed: Option<Segment>,
    /// Segment added by a swap or an insertion step.
    pub inserted: Option<Segment>,
    /// The instance after this step.
    pub m: Multisegment,
    pub m_prime: Multisegment,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofTrace {
    pub m: Multisegment,
    pub m_prime: Multisegment,
    pub initial_lstar: usize,
    pub rounds: usize,
    pub steps: Vec<TraceStep>,
    /// Set when a round failed to decrease `L*` or a layer check failed; the
    /// trace stops at that point.
    pub failure: Option<String>,
}

impl ProofTrace {
    pub fn is_complete(&self) -> bool {
        self.failure.is_none() && matches!(self.steps.last(), Some(s) if s.kind == StepKind::BaseCase)
    }

    pub fn final_state(&self) -> String {
        match self.steps.last() {
            Some(s) => format!("m = {}, m' = {}", s.m, s.m_prime),
            None => format!("m = {}, m' = {}", self.m, self.m_prime),
        }
    }
}

struct Engine {
    m: Multisegment,
    m_prime: Multisegment,
    round: usize,
    steps: Vec<TraceStep>,
    used_names: BTreeSet<String>,
    fresh_counter: usize,
}

impl Engine {
    fn lstar(&self) -> usize {
        lstar(&self.m, &self.m_prime)
    }

    fn push(
        &mut self,
        kind: StepKind,
        lstar_before: usize,
        rho_star: Option<&CuspidalPoint>,
        detail: String,
        removed: Option<Segment>,
        inserted: Option<Segment>,
    ) {
        let lstar_after = self.lstar();
        self.steps.push(TraceStep {
            round: self.round,
            kind,
            lstar_before,
            lstar_after,
            rho_star: rho_star.cloned(),
            detail,
            removed,
            inserted,
            m: self.m.clone(),
            m_prime: self.m_prime.clone(),
        });
    }

    fn fresh_line(&mut self, degree: u32) -> CuspidalLine {
        loop {
            self.fresh_counter += 1;
            let name = format!("sigma#{}", self.fresh_counter);
            if self.used_names.insert(name.clone()) {
                return CuspidalLine::self_dual(&name, degree).expect("fresh names are valid");
            }
        }
    }

    fn fresh_point_segment(&mut self, degree: u32) -> Segment {
        let line = self.fresh_line(degree);
        Segment::integral(&line, 0, 0).expect("a single point is a segment")
    }

    /// Removes `m[index]` after checking that it commutes to the front (right
    /// filtration) or the back (left filtration) and that every proper layer
    /// of that filtration vanishes at `point` against `target`. Returns a
    /// description of the checks or the reason they failed.
    fn remove_anchor(
        &mut self,
        index: usize,
        side: Side,
        point: &CuspidalPoint,
    ) -> std::result::Result<(Segment, String), String> {
        let anchor = self.m.segments()[index].clone();
        let passed: Vec<&Segment> = match side {
            Side::Right => self.m.segments()[..index].iter().collect(),
            Side::Left => self.m.segments()[index + 1..].iter().collect(),
        };
        if let Some(blocker) = passed.iter().find(|s| s.is_linked(&anchor)) {
            return Err(format!("{anchor} cannot commute past linked segment {blocker}"));
        }
        let passed_count = passed.len();
        let rest = self.m.without(index);
        let layers = bz_layers(&Multisegment::new([anchor.clone()]), &rest, side)
            .map_err(|e| e.to_string())?;
        let full = anchor.absolute_length();
        let mut zero = 0;
        let mut vanishing = 0;
        for layer in &layers[..full] {
            if layer.derived_factor.is_zero() {
                zero += 1;
            } else if layer_vanishing(layer, &self.m_prime, point).vanishes {
                vanishing += 1;
            } else {
                return Err(format!(
                    "layer k={} of {anchor} does not vanish at {point}",
                    layer.k
                ));
            }
        }
        self.m = rest;
        let end = match side {
            Side::Right => "front",
            Side::Left => "back",
        };
        let detail = format!(
            "removed {anchor} (moved to the {end} past {} unlinked segments); {vanishing} layers vanish at {point}, {zero} are zero; surviving layer k={full} ({}), i* read as the maximal derivative index; reduced term uses m minus the removed segment",
            passed_count,
            layers[full].model,
        );
        Ok((anchor, detail))
    }

    fn insert_fresh(&mut self, degree: usize, rho: &CuspidalPoint) {
        let before = self.lstar();
        let sigma = self.fresh_point_segment(degree as u32);
        self.m = self.m.with_segment(sigma.clone());
        self.push(
            StepKind::FreshCuspidalInsertion,
            before,
            Some(rho),
            format!("inserted {sigma}: cuspidal of GL_{degree} on a fresh line"),
            None,
            Some(sigma),
        );
    }

    fn swap(&mut self, rho: &CuspidalPoint) -> Segment {
        let before = self.lstar();
        let sigma = self.fresh_point_segment(2);
        let grown = self.m_prime.with_segment(sigma.clone());
        self.m_prime = std::mem::replace(&mut self.m, grown);
        self.push(
            StepKind::SwapDual,
            before,
            Some(rho),
            format!("sides swapped; m'' = m' + {sigma} (cuspidal of GL_2 on a fresh line)"),
            None,
            Some(sigma.clone()),
        );
        sigma
    }

    /// One induction round; `Err` carries a failure reason.
    fn round(&mut self, choice: &RhoStar) -> std::result::Result<(), String> {
        let rho = &choice.point;
        let (index, side, point) = match choice.case {
            CaseKind::Case1 => (choice.anchor_index, Side::Right, rho.clone()),
            CaseKind::Case2 => {
                self.swap(rho);
                let index = self
                    .m
                    .segments()
                    .iter()
                    .position(|s| *s == choice.anchor)
                    .ok_or_else(|| format!("anchor {} lost in the swap", choice.anchor))?;
                let point = choice.anchor.begin().twist(Rational64::new(-1, 2));
                (index, Side::Left, point)
            }
        };
        let before = self.lstar();
        let (removed, mut detail) = self.remove_anchor(index, side, &point)?;
        if choice.case == CaseKind::Case2 {
            detail.push_str("; left filtration after the swap");
        }
        let degree = removed.absolute_length();
        self.push(StepKind::Case1Removal, before, Some(rho), detail, Some(removed), None);
        self.insert_fresh(degree, rho);
        Ok(())
    }
}

/// Replays the induction on `L*` for `λ(m)` on `GL_{n+1}` against
/// `λ(m')` on `GL_n`.
pub fn proof_trace(m: &Multisegment, m_prime: &Multisegment) -> Result<ProofTrace> {
    let (n, n_prime) = (m.absolute_length(), m_prime.absolute_length());
    if n != n_prime + 1 {
        return Err(Error::Argument(format!(
            "proof_trace needs n(m) = n(m') + 1, got {n} and {n_prime}"
        )));
    }
    check_line_consistency(m.segments().iter().chain(m_prime.segments()))?;

    let used_names = m
        .segments()
        .iter()
        .chain(m_prime.segments())
        .flat_map(|s| [s.line().name().to_string(), s.line().dual_name().to_string()])
        .collect();
    let mut engine = Engine {
        m: m.clone(),
        m_prime: m_prime.clone(),
        round: 0,
        steps: Vec::new(),
        used_names,
        fresh_counter: 0,
    };
    let initial_lstar = engine.lstar();
    let mut failure = None;

    loop {
        let current = engine.lstar();
        if current == 0 {
            engine.push(
                StepKind::BaseCase,
                0,
                None,
                "no shared cuspidal line: multiplicity one for Whittaker models, Ext vanishing from projectivity of the Gelfand-Graev representation Pi_n".into(),
                None,
                None,
            );
            break;
        }
        engine.round += 1;
        if engine.round > initial_lstar + 1 {
            return Err(Error::InductionFailure {
                reason: format!("more than {} rounds", initial_lstar + 1),
                state: format!("m = {}, m' = {}", engine.m, engine.m_prime),
            });
        }
        let choice = select_rho_star(&engine.m, &engine.m_prime)?;
        if let Err(reason) = engine.round(&choice) {
            failure = Some(format!("round {}: {reason}", engine.round));
            break;
        }
        let after = engine.lstar();
        if after >= current {
            failure = Some(format!(
                "round {}: L* did not decrease ({current} -> {after})",
                engine.round
            ));
            break;
        }
    }

    Ok(ProofTrace {
        m: m.clone(),
        m_prime: m_prime.clone(),
        initial_lstar,
        rounds: engine.round,
        steps: engine.steps,
        failure,
    })
}
