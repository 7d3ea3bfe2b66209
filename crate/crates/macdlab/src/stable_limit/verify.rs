//! Claimed-limit certificates: t-adic valuations of finite-stage differences.

use std::ops::RangeInclusive;

use serde::Serialize;

use crate::almost_sym::AlmostSym;
use crate::error::Result;
use crate::finite_daha::FinitePoly;

/// The smallest t-adic valuation among the coefficients of `g_m - pi_m(g)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepValuation {
    pub m: usize,
    /// `None` when the difference vanishes.
    pub valuation: Option<i64>,
    /// `valuation - (m - slack)`; `None` when exact.
    pub margin: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvergenceReport {
    pub slack: i64,
    pub steps: Vec<StepValuation>,
    pub min_margin: Option<i64>,
    pub monotone: bool,
    /// A worst coefficient of the first failing step.
    pub witness: Option<String>,
}

impl ConvergenceReport {
    pub fn passed(&self) -> bool {
        self.monotone && self.steps.iter().all(|s| s.margin.is_none_or(|x| x >= 0))
    }
}

/// Checks `val_t(g_m - pi_m(g)) >= m - slack` coefficientwise for every `m` in range,
/// and that the valuations never decrease. The limit itself is supplied, not computed.
pub fn verify_claimed_limit(
    mut generator: impl FnMut(usize) -> Result<FinitePoly>,
    claimed: &AlmostSym,
    ms: RangeInclusive<usize>,
    slack: i64,
) -> Result<ConvergenceReport> {
    let mut steps = Vec::new();
    let mut witness = None;
    for m in ms {
        let g = generator(m)?;
        let diff = &g - &claimed.truncate_pi(m)?;
        let worst = diff.terms().iter().filter_map(|(e, c)| c.t_adic_val().map(|v| (v, e, c))).min_by_key(|x| x.0);
        let valuation = worst.as_ref().map(|x| x.0);
        let margin = valuation.map(|v| v - (m as i64 - slack));
        if witness.is_none() && margin.is_some_and(|x| x < 0) {
            let (_, e, c) = worst.expect("margin implies a term");
            witness = Some(format!("m={m}: coefficient of x^{e:?} is {c}"));
        }
        steps.push(StepValuation { m, valuation, margin });
    }
    let monotone = steps.windows(2).all(|w| match (w[0].valuation, w[1].valuation) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(a), Some(b)) => a <= b,
    });
    if witness.is_none() && !monotone {
        witness = Some("valuations decrease".into());
    }
    let min_margin = steps.iter().filter_map(|s| s.margin).min();
    Ok(ConvergenceReport { slack, steps, min_margin, monotone, witness })
}
