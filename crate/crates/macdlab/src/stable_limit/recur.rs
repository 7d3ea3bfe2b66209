//! Recurrences among the `E~_(mu|lambda)`.

use serde::Serialize;

use super::{composition_weight, e_tilde, e_tilde_pair, gamma, StableIndex};
use crate::almost_sym::{lower, omega_star, omega_tilde, partial_symmetrize, AlmostSym};
use crate::combinatorics::{compositions, partitions, reduced_compositions, Composition, Partition};
use crate::error::{Error, Result};
use crate::qt_field::RatQT;

/// One checked instance of a recurrence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecurrenceCheck {
    /// `lowering`, `raising`, `zero-insertion` or `knop-sahi`.
    pub suite: &'static str,
    pub instance: String,
    pub passed: bool,
}

fn pairs(max_size: usize, max_len: usize) -> Vec<StableIndex> {
    let mut out = Vec::new();
    for d in 0..=max_size {
        for s in 0..=d {
            for mu in reduced_compositions(s, max_len) {
                for lambda in partitions(d - s) {
                    out.push(StableIndex { mu: mu.clone(), lambda });
                }
            }
        }
    }
    out
}

fn check(suite: &'static str, instance: String, lhs: &AlmostSym, rhs: &AlmostSym) -> RecurrenceCheck {
    RecurrenceCheck { suite, instance, passed: lhs == rhs }
}

/// `lower_r E~_(mu|lambda) = E~_(mu_1..mu_{r-1} | mu_r, lambda)` when `mu_r >= lambda_1`, `mu_{r-1} != 0`.
fn lowering(i: &StableIndex) -> Option<RecurrenceCheck> {
    let mu = &i.mu.0;
    let r = mu.len();
    if r == 0 || (r >= 2 && mu[r - 2] == 0) || i.lambda.0.first().is_some_and(|&l| l > mu[r - 1]) {
        return None;
    }
    let lhs = lower(r, &e_tilde_pair(i)).ok()?;
    let target = StableIndex { mu: Composition(mu[..r - 1].to_vec()), lambda: i.lambda.insert_part(mu[r - 1]) };
    Some(check("lowering", format!("{i} -> {target}"), &lhs, &e_tilde_pair(&target)))
}

/// `E~_(s_i mu|lambda) = (T_i + (1-t) a(i+1)/(a(i) - a(i+1))) E~_(mu|lambda)` with `a` the weight of `mu * lambda`.
fn raising(i: &StableIndex) -> Vec<RecurrenceCheck> {
    let mu = &i.mu.0;
    let a = composition_weight(&i.joined());
    let mut out = Vec::new();
    for k in 1..mu.len() {
        let (x, y) = (mu[k - 1], mu[k]);
        if x <= y || (k + 1 == mu.len() && x == 0) {
            continue;
        }
        let mut smu = mu.clone();
        smu.swap(k - 1, k);
        let target = StableIndex { mu: Composition(smu), lambda: i.lambda.clone() };
        let e = e_tilde_pair(i);
        let (ai, aj) = (a.get(k), a.get(k + 1));
        let c = &(&(RatQT::one() - RatQT::t()) * &aj) / &(&ai - &aj);
        let mut rhs = e.act_t(k).expect("positive index");
        rhs.add_assign_scaled(&e, &c);
        out.push(check("raising", format!("s_{k} {i} -> {target}"), &e_tilde_pair(&target), &rhs));
    }
    out
}

/// `T_r E~_(mu|lambda) = gamma_{mu*lambda}/gamma_{mu'*lambda} E~_(mu'|lambda)`, `mu' = (mu_1..mu_{r-1}, 0, mu_r)`.
fn zero_insertion(i: &StableIndex) -> Option<RecurrenceCheck> {
    let mu = &i.mu.0;
    let r = mu.len();
    if r == 0 {
        return None;
    }
    let mut mu2 = mu[..r - 1].to_vec();
    mu2.extend([0, mu[r - 1]]);
    let target = StableIndex { mu: Composition(mu2), lambda: i.lambda.clone() };
    let ratio = &gamma(&i.joined()) / &gamma(&target.joined());
    let lhs = e_tilde_pair(i).act_t(r).expect("positive index");
    Some(check("zero-insertion", format!("T_{r} {i} -> {target}"), &lhs, &e_tilde_pair(&target).scale(&ratio)))
}

/// `t^{#nonzero} omega~(E~_mu) = x_1 omega*(E~_mu) = E~_{1 * mu}`.
fn knop_sahi(mu: &[usize]) -> Vec<RecurrenceCheck> {
    let e = e_tilde(mu);
    let nz = mu.iter().filter(|&&p| p != 0).count() as i64;
    let lhs = omega_tilde(&e).scale(&RatQT::qt(0, nz));
    let mid = omega_star(&e).act_x(1).expect("positive index");
    let mut one_mu = vec![1];
    one_mu.extend_from_slice(mu);
    let rhs = e_tilde(&one_mu);
    vec![check("knop-sahi", format!("omega~ {mu:?}"), &lhs, &rhs), check("knop-sahi", format!("x1 omega* {mu:?}"), &mid, &rhs)]
}

/// Runs the four recurrence families on every valid index with `|mu| + |lambda| <= max_size`
/// and `len(mu) <= max_len`.
pub fn check_recurrences(max_size: usize, max_len: usize) -> Vec<RecurrenceCheck> {
    let mut out = Vec::new();
    for i in pairs(max_size, max_len) {
        out.extend(lowering(&i));
        out.extend(raising(&i));
        out.extend(zero_insertion(&i));
    }
    for s in 0..=max_size {
        for len in 0..=max_len {
            let comps = if len == 0 {
                if s == 0 {
                    vec![Composition::default()]
                } else {
                    vec![]
                }
            } else {
                compositions(s, len)
            };
            for mu in comps {
                out.extend(knop_sahi(&mu.0));
            }
        }
    }
    out
}

/// The scalar `c` with `E~_(mu*0|lambda) = c E~_(mu|lambda)`, where the left side is
/// the partial symmetrization of `E~_{mu*0*lambda}` to window `len(mu) + 1`.
pub fn nonreduced_ratio(mu: &[usize], lambda: &Partition) -> Result<RatQT> {
    let idx = StableIndex::new(mu.to_vec(), lambda.0.clone())?;
    let base = e_tilde_pair(&idx);
    let mut joined = mu.to_vec();
    joined.push(0);
    let k = joined.len();
    joined.extend_from_slice(&lambda.0);
    let padded = partial_symmetrize(k, &e_tilde(&joined));
    let (key, c0) = base.terms().iter().next().ok_or_else(|| Error::Internal("zero basis element".into()))?;
    let wide = padded.widen(k.max(base.window()));
    let mut key_w = key.0.clone();
    key_w.resize(wide.window(), 0);
    let c = &wide.coeff(&key_w, &key.1) / c0;
    if padded != base.scale(&c) {
        return Err(Error::Internal(format!("{idx} with an extra zero is not proportional")));
    }
    Ok(c)
}
