//! Non-symmetric Macdonald polynomials `E_mu` by three independent routes.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::ops::{cherednik_y, t_raw};
use super::poly::FinitePoly;
use crate::combinatorics::{beta, bruhat_rank_key, compositions, enumerate_nonattacking, RowOneFactor};
use crate::error::{Error, Result};
use crate::qt_field::RatQT;

/// A weight `(alpha(1), ..., alpha(n))` for the commuting family `Y_1, ..., Y_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteWeight(pub Vec<RatQT>);

/// `alpha_mu(i) = q^{mu_i} t^{1 - beta_mu(i)}`.
pub fn weight(mu: &[usize]) -> FiniteWeight {
    FiniteWeight((1..=mu.len()).map(|i| RatQT::qt(mu[i - 1] as i64, 1 - beta(mu, i).expect("in range") as i64)).collect())
}

/// `E_mu` from non-attacking fillings, in `len(mu)` variables.
pub fn e_hhl(mu: &[usize]) -> FinitePoly {
    let n = mu.len();
    let mut out = FinitePoly::zero(n);
    for f in enumerate_nonattacking(mu, n, None) {
        out.add_term(f.label_counts(n), &f.weight(RowOneFactor::Finite));
    }
    out
}

/// `E_mu` as the joint eigenvector of the `Y_i` on homogeneous polynomials.
///
/// Coefficients are found by back-substitution along a linear extension of
/// Bruhat order, then the eigen-equations are checked exactly.
pub fn e_eigensolve(mu: &[usize]) -> Result<FinitePoly> {
    let n = mu.len();
    let d: usize = mu.iter().sum();
    let top = bruhat_rank_key(mu);
    let mut support: Vec<Vec<usize>> =
        compositions(d, n).into_iter().map(|c| c.0).filter(|c| bruhat_rank_key(c) <= top).collect();
    // Ties in the key are Bruhat-incomparable, so mu may go first among them.
    support.sort_by_key(|c| (std::cmp::Reverse(bruhat_rank_key(c)), c.as_slice() != mu));
    let index: HashMap<&Vec<usize>, usize> = support.iter().enumerate().map(|(k, c)| (c, k)).collect();
    // images[i][k] = Y_{i+1} x^{support[k]}
    let images: Vec<Vec<FinitePoly>> = (1..=n)
        .map(|i| {
            support.iter().map(|c| cherednik_y(i, &FinitePoly::monomial(c.clone(), RatQT::one())).expect("valid index")).collect()
        })
        .collect();
    let target = weight(mu);
    let mut coeffs = vec![RatQT::zero(); support.len()];
    coeffs[0] = RatQT::one();
    for k in 1..support.len() {
        let lam = &support[k];
        let diag = weight(lam);
        let Some(i) = (0..n).find(|&i| target.0[i] != diag.0[i]) else {
            return Err(Error::Internal(format!("weights of {mu:?} and {lam:?} coincide")));
        };
        // (alpha_mu(i) - alpha_lam(i)) c_lam = sum_{kappa above lam} [Y_i]_{lam,kappa} c_kappa
        let mut rhs = RatQT::zero();
        for j in 0..k {
            if coeffs[j].is_zero() {
                continue;
            }
            let entry = images[i][j].coeff(lam);
            if !entry.is_zero() {
                rhs += &(&entry * &coeffs[j]);
            }
        }
        coeffs[k] = rhs.try_div(&(&target.0[i] - &diag.0[i]))?;
    }
    let e = FinitePoly::from_terms(n, support.iter().cloned().zip(coeffs.iter().cloned()));
    for i in 0..n {
        let mut ye = FinitePoly::zero(n);
        for (c, a) in e.terms() {
            ye.add_assign_scaled(&images[i][index[c]], a);
        }
        if ye != e.scale(&target.0[i]) {
            return Err(Error::Internal(format!("Y_{} eigen-equation fails for {mu:?}", i + 1)));
        }
    }
    Ok(e)
}

type ETable = HashMap<Vec<usize>, Arc<FinitePoly>>;

fn intertwiner_cache() -> &'static Mutex<ETable> {
    static CACHE: OnceLock<Mutex<ETable>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `(T_i + (1 - t) alpha(i+1)/(alpha(i) - alpha(i+1))) E_nu`, which is `E_{s_i nu}`
/// when `nu_i > nu_{i+1}`; `i` is 1-based and `alpha` is the weight of `nu`.
pub fn intertwine(i: usize, nu: &[usize], e_nu: &FinitePoly) -> Result<FinitePoly> {
    if i == 0 || i >= nu.len() {
        return Err(Error::IndexOutOfRange(format!("intertwiner {i} for length {}", nu.len())));
    }
    let a = weight(nu).0;
    let den = &a[i - 1] - &a[i];
    let c = (&(RatQT::one() - RatQT::t()) * &a[i]).try_div(&den)?;
    let mut out = t_raw(i - 1, e_nu);
    out.add_assign_scaled(e_nu, &c);
    Ok(out)
}

/// `E_mu` from the eigen-solved `E_{sort(mu)}` along a Bruhat-increasing chain.
pub fn e_intertwiner(mu: &[usize]) -> Result<FinitePoly> {
    if let Some(v) = intertwiner_cache().lock().unwrap().get(mu) {
        return Ok((**v).clone());
    }
    let e = match (0..mu.len().saturating_sub(1)).find(|&i| mu[i] < mu[i + 1]) {
        None => e_eigensolve(mu)?,
        Some(i) => {
            let mut nu = mu.to_vec();
            nu.swap(i, i + 1);
            intertwine(i + 1, &nu, &e_intertwiner(&nu)?)?
        }
    };
    intertwiner_cache().lock().unwrap().insert(mu.to_vec(), Arc::new(e.clone()));
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::bruhat_less;

    #[test]
    fn small_cases() {
        assert_eq!(e_hhl(&[0, 0, 0]), FinitePoly::one(3));
        assert_eq!(e_hhl(&[1, 0]), FinitePoly::var(2, 1));
        let c = &(RatQT::q() * (RatQT::one() - RatQT::t())) / &(RatQT::q() - RatQT::t());
        let want = &FinitePoly::var(2, 2) + &FinitePoly::var(2, 1).scale(&c);
        assert_eq!(e_hhl(&[0, 1]), want);
        assert_eq!(intertwine(1, &[1, 0], &FinitePoly::var(2, 1)).unwrap(), want);
    }

    #[test]
    fn oracles_agree_small() {
        for d in 0..=3 {
            for n in 1..=3 {
                for mu in compositions(d, n) {
                    let h = e_hhl(&mu.0);
                    assert_eq!(e_eigensolve(&mu.0).unwrap(), h, "{mu:?}");
                    assert_eq!(e_intertwiner(&mu.0).unwrap(), h, "{mu:?}");
                }
            }
        }
    }

    #[test]
    fn triangular_and_monic() {
        for mu in compositions(3, 3) {
            let e = e_hhl(&mu.0);
            assert!(e.coeff(&mu.0).is_one());
            for lam in e.terms().keys() {
                assert!(lam == &mu.0 || bruhat_less(lam, &mu.0).unwrap(), "{lam:?} in E_{mu:?}");
            }
        }
    }

    #[test]
    fn eigenvalues_match_beta_formula() {
        for mu in compositions(2, 3) {
            let e = e_hhl(&mu.0);
            let w = weight(&mu.0);
            for i in 1..=3 {
                assert_eq!(cherednik_y(i, &e).unwrap(), e.scale(&w.0[i - 1]), "{mu:?} Y_{i}");
            }
        }
    }

    #[test]
    fn deformed_y_on_padded_nonzero_compositions() {
        use super::super::ops::deformed_y;
        for mu in [vec![1], vec![2], vec![1, 1], vec![1, 2], vec![2, 1]] {
            for m in 0..=2 {
                let padded: Vec<usize> = mu.iter().copied().chain(std::iter::repeat_n(0, m)).collect();
                let big_n = padded.len() as i64;
                let e = e_hhl(&padded);
                let w = weight(&padded);
                for i in 1..=mu.len() {
                    let want = e.scale(&(&RatQT::qt(0, big_n) * &w.0[i - 1]));
                    assert_eq!(deformed_y(i, &e).unwrap(), want, "{padded:?} i={i}");
                }
            }
        }
    }
}
