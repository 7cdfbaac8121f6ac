//! Seeded random instances for the randomized trace suite.

use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::trace::{proof_trace, StepKind};
use super::{ext_dims, ExtMode};
use crate::zelevinsky::{lstar, CuspidalLine, Multisegment, Segment};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub max_lines: usize,
    pub max_segments: usize,
    /// Exponents lie in `[-shift_bound, shift_bound]` with denominator 1 or 2.
    pub shift_bound: i64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_lines: 3,
            max_segments: 4,
            shift_bound: 5,
        }
    }
}

fn line_pool() -> Vec<CuspidalLine> {
    vec![
        CuspidalLine::self_dual("rho", 1).unwrap(),
        CuspidalLine::with_dual("pi", "pic", 1).unwrap(),
        CuspidalLine::with_dual("pic", "pi", 1).unwrap(),
        CuspidalLine::self_dual("tau", 2).unwrap(),
    ]
}

fn random_segment<R: Rng>(rng: &mut R, lines: &[CuspidalLine], bound: i64) -> Segment {
    let line = lines.choose(rng).expect("at least one line").clone();
    let a = Rational64::new(rng.gen_range(-2 * bound..=2 * bound), 2);
    let top = Rational64::from_integer(bound);
    let mut len = rng.gen_range(0..3i64);
    while a + len > top {
        len -= 1;
    }
    Segment::new(line, a, a + len).expect("integral length")
}

fn random_multisegment<R: Rng>(
    rng: &mut R,
    lines: &[CuspidalLine],
    count: usize,
    bound: i64,
) -> Multisegment {
    Multisegment::new((0..count).map(|_| random_segment(rng, lines, bound)))
}

/// A pair `(m, m')` with `n(m) = n(m') + 1`, drawn by rejection sampling.
pub fn random_instance<R: Rng>(rng: &mut R, config: &SuiteConfig) -> (Multisegment, Multisegment) {
    let mut pool = line_pool();
    loop {
        pool.shuffle(rng);
        let lines = &pool[..rng.gen_range(1..=config.max_lines.clamp(1, pool.len()))];
        let count = rng.gen_range(0..=config.max_segments);
        let m_prime = random_multisegment(
            rng,
            lines,
            count,
            config.shift_bound,
        );
        let target = m_prime.absolute_length() + 1;
        for _ in 0..64 {
            let count = rng.gen_range(1..=config.max_segments.max(1));
            let m = random_multisegment(
                rng,
                lines,
                count,
                config.shift_bound,
            );
            if m.absolute_length() == target {
                return (m, m_prime);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceOutcome {
    pub index: usize,
    pub m: Multisegment,
    pub m_prime: Multisegment,
    pub initial_lstar: usize,
    pub rounds: usize,
    pub problems: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RandomSuiteReport {
    pub seed: u64,
    pub count: usize,
    pub config: SuiteConfig,
    pub passed: usize,
    pub induction_failures: usize,
    pub max_rounds: usize,
    pub case1_rounds: usize,
    pub case2_rounds: usize,
    pub swap_checks: usize,
    pub removal_checks: usize,
    pub insertion_checks: usize,
    /// Instances with at least one problem.
    pub failures: Vec<InstanceOutcome>,
}

impl RandomSuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Number of same-line pairs between `ν^{1/2} segment` and `m'^∨`.
fn pairs_with(segment: &Segment, m_prime: &Multisegment) -> usize {
    lstar(&Multisegment::new([segment.clone()]), m_prime)
}

pub fn run_random_suite(count: usize, seed: u64, config: &SuiteConfig) -> RandomSuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = RandomSuiteReport {
        seed,
        count,
        config: *config,
        passed: 0,
        induction_failures: 0,
        max_rounds: 0,
        case1_rounds: 0,
        case2_rounds: 0,
        swap_checks: 0,
        removal_checks: 0,
        insertion_checks: 0,
        failures: Vec::new(),
    };

    for index in 0..count {
        let (m, m_prime) = random_instance(&mut rng, config);
        let initial_lstar = lstar(&m, &m_prime);
        let mut problems = Vec::new();
        let mut rounds = 0;

        match proof_trace(&m, &m_prime) {
            Err(e) => {
                report.induction_failures += 1;
                problems.push(e.to_string());
            }
            Ok(trace) => {
                rounds = trace.rounds;
                if let Some(reason) = &trace.failure {
                    report.induction_failures += 1;
                    problems.push(reason.clone());
                }
                if rounds > initial_lstar + 1 {
                    problems.push(format!("{rounds} rounds for L* = {initial_lstar}"));
                }
                let base: Vec<_> = trace.steps.iter().filter(|s| s.kind == StepKind::BaseCase).collect();
                let last_is_base =
                    matches!(trace.steps.last(), Some(s) if s.kind == StepKind::BaseCase && s.lstar_before == 0);
                if base.len() != 1 || !last_is_base {
                    problems.push("BaseCase is not the unique final step".into());
                }

                let (mut cur_m, mut cur_mp) = (m.clone(), m_prime.clone());
                let mut round_start = initial_lstar;
                for (i, step) in trace.steps.iter().enumerate() {
                    if step.lstar_before != lstar(&cur_m, &cur_mp) || step.lstar_after != lstar(&step.m, &step.m_prime) {
                        problems.push(format!("step {i}: recorded L* disagrees with recomputation"));
                    }
                    match step.kind {
                        StepKind::SwapDual => {
                            report.swap_checks += 1;
                            report.case2_rounds += 1;
                            if step.lstar_after != step.lstar_before {
                                problems.push(format!(
                                    "step {i}: SwapDual changed L* {} -> {}",
                                    step.lstar_before, step.lstar_after
                                ));
                            }
                        }
                        StepKind::Case1Removal => {
                            report.removal_checks += 1;
                            let removed = step.removed.as_ref().expect("removal records its segment");
                            let expected = pairs_with(removed, &cur_mp);
                            let drop = step.lstar_before as i64 - step.lstar_after as i64;
                            if drop != expected as i64 {
                                problems.push(format!(
                                    "step {i}: removal of {removed} dropped L* by {drop} instead of {expected}"
                                ));
                            }
                        }
                        StepKind::FreshCuspidalInsertion => {
                            report.insertion_checks += 1;
                            if step.lstar_after != step.lstar_before {
                                problems.push(format!("step {i}: fresh insertion changed L*"));
                            }
                            if step.lstar_after >= round_start {
                                problems.push(format!("round {}: no strict decrease", step.round));
                            }
                            round_start = step.lstar_after;
                        }
                        StepKind::BaseCase => {}
                    }
                    cur_m = step.m.clone();
                    cur_mp = step.m_prime.clone();
                }
                report.case1_rounds += rounds.saturating_sub(
                    trace.steps.iter().filter(|s| s.kind == StepKind::SwapDual).count(),
                );

                match ext_dims(&m, &m_prime, ExtMode::Branching) {
                    Ok(p) if p.hom_dim == Some(1) && p.ext_vanishing_degree == Some(1) => {
                        let mut shuffled_m = m.segments().to_vec();
                        let mut shuffled_mp = m_prime.segments().to_vec();
                        shuffled_m.shuffle(&mut rng);
                        shuffled_mp.shuffle(&mut rng);
                        let again = ext_dims(
                            &Multisegment::new(shuffled_m),
                            &Multisegment::new(shuffled_mp),
                            ExtMode::Branching,
                        );
                        if again.as_ref().ok() != Some(&p) {
                            problems.push("ext_dims depends on input order".into());
                        }
                    }
                    Ok(p) => problems.push(format!("unexpected profile {p:?}")),
                    Err(e) => problems.push(e.to_string()),
                }
            }
        }

        report.max_rounds = report.max_rounds.max(rounds);
        if problems.is_empty() {
            report.passed += 1;
        } else {
            report.failures.push(InstanceOutcome {
                index,
                m,
                m_prime,
                initial_lstar,
                rounds,
                problems,
            });
        }
    }
    report
}
