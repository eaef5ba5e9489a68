//! Deciding Clique with nothing but the β-approximation: pick β so that the
//! inflated NO threshold stays below the YES threshold, then compare the
//! approximate maximizer against the NO threshold.

use crate::ball::{beta_approx_with_ball, blowup_pow, build_ball_approx_with, ApproxBall, ApproxResult};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::gadget::{build_gadget, GadgetInstance, Graph};
use crate::geometry::{pnorm_pow, PNormExponent};
use crate::rational::{to_fraction_string, Rational};

/// The accuracy `beta` with its certificate
/// `(beta/(beta-1))^p * no_threshold = inflated_no < yes`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccuracySchedule {
    pub beta: u64,
    pub inflated_no: Rational,
    pub yes: Rational,
}

impl AccuracySchedule {
    pub fn holds(&self) -> bool {
        self.inflated_no < self.yes
    }
}

/// Smallest `beta >= 2` with `(beta/(beta-1))^p * no < yes`, found by
/// doubling and then bisection.
pub fn choose_beta_for(no: &Rational, yes: &Rational, p: PNormExponent) -> Result<AccuracySchedule> {
    if no >= yes {
        return Err(Error::GapViolation {
            value: to_fraction_string(no),
            no: to_fraction_string(no),
            yes: to_fraction_string(yes),
        });
    }
    let ok = |beta: u64| blowup_pow(beta, p) * no < *yes;
    let mut hi = 2u64;
    while !ok(hi) {
        hi = hi
            .checked_mul(2)
            .ok_or_else(|| Error::InvalidArgument("accuracy search overflowed".into()))?;
    }
    // ok(hi) holds; every beta below lo fails
    let mut lo = hi / 2 + 1;
    if hi == 2 {
        lo = 2;
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(AccuracySchedule {
        beta: hi,
        inflated_no: blowup_pow(hi, p) * no,
        yes: yes.clone(),
    })
}

pub fn choose_beta(inst: &GadgetInstance) -> Result<AccuracySchedule> {
    choose_beta_for(&inst.no_threshold, &inst.yes_threshold, inst.p)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxDecision {
    pub instance: GadgetInstance,
    pub schedule: AccuracySchedule,
    pub approx: ApproxResult,
    /// `||witness||_p^p`
    pub value: Rational,
    pub decision: bool,
}

/// Builds the gadget, chooses `beta`, runs the β-approximation and answers
/// YES iff the approximate maximizer beats the NO threshold.
pub fn decide_clique_via_approx(graph: &Graph, k: usize, p: PNormExponent) -> Result<bool> {
    Ok(decide_clique_via_approx_with(graph, k, p, &Limits::from_env())?.decision)
}

pub fn decide_clique_via_approx_with(
    graph: &Graph,
    k: usize,
    p: PNormExponent,
    limits: &Limits,
) -> Result<ApproxDecision> {
    let instance = build_gadget(graph, k, p)?;
    limits.check_dim(instance.dim())?;
    let schedule = choose_beta(&instance)?;
    let ball = build_ball_approx_with(p, schedule.beta, instance.dim(), limits)?;
    decide_gadget_with_ball(instance, schedule, &ball)
}

/// The decision step alone, for a ball built with `schedule.beta` in the
/// gadget's dimension. Balls depend only on `(p, beta, dim)`, so callers
/// deciding many graphs can build each one once.
pub fn decide_gadget_with_ball(
    instance: GadgetInstance,
    schedule: AccuracySchedule,
    ball: &ApproxBall,
) -> Result<ApproxDecision> {
    if ball.beta != schedule.beta || ball.p != instance.p {
        return Err(Error::InvalidArgument(format!(
            "ball has beta {} and p {}, the schedule needs beta {} and p {}",
            ball.beta,
            ball.p.get(),
            schedule.beta,
            instance.p.get()
        )));
    }
    let approx = beta_approx_with_ball(&instance.polytope, ball)?;
    let value = pnorm_pow(&approx.witness, instance.p);
    let decision = value > instance.no_threshold;
    Ok(ApproxDecision {
        instance,
        schedule,
        approx,
        value,
        decision,
    })
}
