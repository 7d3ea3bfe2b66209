//! Stable limits `E~_mu`, the basis `E~_(mu|lambda)` of almost-symmetric
//! functions, their weights, and operators diagonal in that basis.

mod expand;
mod recur;
mod verify;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::almost_sym::{partial_symmetrize, AlmostSym};
use crate::combinatorics::{beta, enumerate_nonattacking, partitions_up_to, Composition, Partition, RowOneFactor};
use crate::error::{Error, Result};
use crate::finite_daha::{e_hhl, epsilon, FinitePoly};
use crate::qt_field::RatQT;
use crate::symfunc::{jing, SymFunc};

pub use expand::{
    basis_indices, basis_keys, coefficient_matrix, expand_in_stable_basis, limit_cherednik, limit_cherednik_finite,
    psi_f_diagonal, psi_p1, psi_p1_finite, psi_p1_formula, reconstruct, Expansion,
};
pub use recur::{check_recurrences, nonreduced_ratio, RecurrenceCheck};
pub use verify::{verify_claimed_limit, ConvergenceReport, StepValuation};

/// A basis label `(mu | lambda)` with `mu` reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StableIndex {
    pub mu: Composition,
    pub lambda: Partition,
}

impl StableIndex {
    pub fn new(mu: Vec<usize>, lambda: Vec<usize>) -> Result<Self> {
        let mu = Composition(mu);
        if !mu.is_reduced() {
            return Err(Error::Precondition(format!("{:?} is not reduced", mu.0)));
        }
        Ok(StableIndex { mu, lambda: Partition::new(lambda)? })
    }

    /// `mu * lambda`.
    pub fn joined(&self) -> Vec<usize> {
        self.mu.concat(&self.lambda.0).0
    }

    pub fn degree(&self) -> usize {
        self.mu.size() + self.lambda.size()
    }
}

impl fmt::Display for StableIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({}|{})", join(&self.mu.0), join(&self.lambda.0))
    }
}

/// Eigenvalues `alpha(1), alpha(2), ...` of the limit Cherednik operators; zero past the end.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StableWeight(pub Vec<RatQT>);

impl StableWeight {
    /// `alpha(i)`, 1-based.
    pub fn get(&self, i: usize) -> RatQT {
        if i == 0 {
            return RatQT::zero();
        }
        self.0.get(i - 1).cloned().unwrap_or_else(RatQT::zero)
    }
}

impl fmt::Display for StableWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        while parts.last().is_some_and(|s| s == "0") {
            parts.pop();
        }
        parts.push("0".into());
        parts.push("...".into());
        write!(f, "({})", parts.join(", "))
    }
}

/// `alpha~_mu(i) = q^{mu_i} t^{n + 1 - beta_mu(i)}` for `mu_i != 0`, else 0; `n = len(mu)`.
pub fn composition_weight(mu: &[usize]) -> StableWeight {
    let n = mu.len() as i64;
    StableWeight(
        (1..=mu.len())
            .map(|i| match mu[i - 1] {
                0 => RatQT::zero(),
                p => RatQT::qt(p as i64, n + 1 - beta(mu, i).expect("in range") as i64),
            })
            .collect(),
    )
}

/// The weight of `E~_(mu|lambda)`: that of `mu * lambda` cut to the first `len(mu)` entries.
pub fn stable_weight(idx: &StableIndex) -> StableWeight {
    let mut w = composition_weight(&idx.joined());
    w.0.truncate(idx.mu.len());
    w
}

/// `kappa_mu = sum_{mu_i != 0} q^{mu_i} t^{n + 1 - beta_mu(i)} + t^{1 + #nonzero}/(1 - t)`.
pub fn kappa(mu: &[usize]) -> RatQT {
    let nz = mu.iter().filter(|&&p| p != 0).count() as i64;
    let mut k = &RatQT::qt(0, 1 + nz) / &(RatQT::one() - RatQT::t());
    for a in composition_weight(mu).0 {
        k += &a;
    }
    k
}

/// `gamma_mu`, with `sigma~(E~_mu) = gamma_mu A_{sort(mu)}`; 1 on partitions.
pub fn gamma(mu: &[usize]) -> RatQT {
    let Some(i) = (0..mu.len().saturating_sub(1)).find(|&i| mu[i] < mu[i + 1]) else {
        return RatQT::one();
    };
    let mut nu = mu.to_vec();
    nu.swap(i, i + 1);
    let a = composition_weight(&nu);
    let (ai, aj) = (a.get(i + 1), a.get(i + 2));
    let factor = (&ai - &(&RatQT::t() * &aj)) / (&ai - &aj);
    &factor * &gamma(&nu)
}

type Cache<K> = Mutex<HashMap<K, Arc<AlmostSym>>>;

fn e_cache() -> &'static Cache<Vec<usize>> {
    static C: OnceLock<Cache<Vec<usize>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn pair_cache() -> &'static Cache<StableIndex> {
    static C: OnceLock<Cache<StableIndex>> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// Groups tail-constrained fillings of `mu * 0^{len(nu)}` into `x^a m_nu[X_n]`, `n = len(mu)`.
fn tail_expansion(mu: &[usize], row_one: impl Fn(usize) -> Option<RowOneFactor>) -> AlmostSym {
    let n = mu.len();
    let mut out = AlmostSym::zero(n);
    for nu in partitions_up_to(mu.iter().sum()) {
        let Some(factor) = row_one(nu.len()) else { continue };
        let shape = Composition(mu.to_vec()).padded(nu.len()).0;
        for f in enumerate_nonattacking(&shape, n + nu.len(), Some(&nu.0)) {
            out.add_term(f.label_counts(n), nu.clone(), &f.weight(factor));
        }
    }
    out
}

/// The stable limit `E~_mu` of `E_{mu * 0^m}`, with window `len(mu)`.
pub fn e_tilde(mu: &[usize]) -> Arc<AlmostSym> {
    if let Some(e) = e_cache().lock().unwrap().get(mu) {
        return e.clone();
    }
    let e = Arc::new(tail_expansion(mu, |_| Some(RowOneFactor::Stable)));
    e_cache().lock().unwrap().insert(mu.to_vec(), e.clone());
    e
}

/// `E_{mu * 0^m}` from the tail expansion, in `len(mu) + m` variables.
pub fn e_tail_expansion(mu: &[usize], m: usize) -> FinitePoly {
    let g = tail_expansion(mu, |l| (l <= m).then(|| RowOneFactor::Shifted(m - l)));
    g.truncate_pi(mu.len() + m).expect("window fits")
}

/// `E~_(mu|lambda)`: the partial symmetrization of `E~_{mu * lambda}` down to window `len(mu)`.
pub fn e_tilde_pair(idx: &StableIndex) -> Arc<AlmostSym> {
    if let Some(e) = pair_cache().lock().unwrap().get(idx) {
        return e.clone();
    }
    let e = Arc::new(partial_symmetrize(idx.mu.len(), &e_tilde(&idx.joined())));
    pair_cache().lock().unwrap().insert(idx.clone(), e.clone());
    e
}

/// `E~_(mu|lambda)` by the direct filling formula: Jing operators applied to `m_nu`
/// for the label counts of the `lambda` columns.
pub fn e_tilde_pair_direct(idx: &StableIndex) -> AlmostSym {
    let k = idx.mu.len();
    let l = idx.lambda.len();
    let shape0 = idx.joined();
    let mut out = AlmostSym::zero(k);
    let mut memo: HashMap<(Vec<usize>, Partition), SymFunc> = HashMap::new();
    for nu in partitions_up_to(idx.degree()) {
        let shape = Composition(shape0.clone()).padded(nu.len()).0;
        for f in enumerate_nonattacking(&shape, k + l + nu.len(), Some(&nu.0)) {
            let counts = f.label_counts(k + l);
            let w = f.weight(RowOneFactor::Stable);
            let inner = counts[k..].to_vec();
            let sym = memo
                .entry((inner.clone(), nu.clone()))
                .or_insert_with(|| inner.iter().rev().fold(SymFunc::m(&nu), |g, &c| jing(c, &g)));
            for (p, c) in sym.terms() {
                out.add_term(counts[..k].to_vec(), p.clone(), &(c * &w));
            }
        }
    }
    out
}

/// `epsilon_{len(mu)}^(m)(E_{mu * lambda * 0^{m - len(mu) - len(lambda)}})`, the finite approximant.
pub fn e_tilde_pair_finite(idx: &StableIndex, m: usize) -> Result<FinitePoly> {
    let joined = idx.joined();
    if m < joined.len() || m == idx.mu.len() {
        return Err(Error::Precondition(format!("m = {m} too small for {idx}")));
    }
    let e = e_hhl(&Composition(joined).padded(m - idx.joined().len()).0);
    epsilon(idx.mu.len(), &e)
}

/// `A_lambda = E~_(empty|lambda)`.
pub fn a_lambda(lambda: &Partition) -> SymFunc {
    let idx = StableIndex { mu: Composition::default(), lambda: lambda.clone() };
    e_tilde_pair(&idx).as_symmetric().expect("window 0")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::almost_sym::sigma_tilde;
    use crate::combinatorics::{compositions, partitions};
    use crate::symfunc::{macdonald_p, v_lambda, Basis};

    fn idx(mu: &[usize], la: &[usize]) -> StableIndex {
        StableIndex::new(mu.to_vec(), la.to_vec()).unwrap()
    }

    #[test]
    fn worked_examples() {
        let c = &RatQT::qt(-1, 0) / &(RatQT::one() - RatQT::qt(-1, 1));
        let p = |v: &[usize]| Partition(v.to_vec());
        let hl = |f: &AlmostSym| f.display_in(Basis::HallLittlewood);

        let e = e_tilde_pair(&idx(&[], &[2]));
        let mut want = AlmostSym::tail_sym(&Basis::HallLittlewood.element(&p(&[2])), 0);
        want.add_assign_scaled(&AlmostSym::tail_sym(&Basis::HallLittlewood.element(&p(&[1, 1])), 0), &c);
        assert_eq!(*e, want);

        let e = e_tilde(&[2]);
        let mut want = AlmostSym::monomial(vec![2]);
        let hl1 = AlmostSym::tail_sym(&Basis::HallLittlewood.element(&p(&[1])), 1);
        want.add_assign_scaled(&hl1.act_x(1).unwrap(), &c);
        assert_eq!(*e, want);

        assert_eq!(hl(&e_tilde(&[1, 1, 1])), "x1*x2*x3");
        assert_eq!(hl(&e_tilde_pair(&idx(&[1, 1], &[1]))), "x1*x2*P[1](x3+...)");
        assert_eq!(hl(&e_tilde_pair(&idx(&[1], &[1, 1]))), "x1*P[1,1](x2+...)");
    }

    #[test]
    fn worked_weights() {
        let w = |m: &[usize], l: &[usize]| stable_weight(&idx(m, l));
        assert_eq!(w(&[1, 1, 1], &[]).0, vec![RatQT::qt(1, 3), RatQT::qt(1, 2), RatQT::qt(1, 1)]);
        assert_eq!(w(&[2], &[]).0, vec![RatQT::qt(2, 1)]);
        assert_eq!(w(&[1, 1], &[1]).0, vec![RatQT::qt(1, 3), RatQT::qt(1, 2)]);
        assert_eq!(w(&[1], &[1, 1]).0, vec![RatQT::qt(1, 3)]);
        assert!(w(&[], &[2]).0.is_empty());
        assert_eq!(w(&[2], &[]).to_string(), "(q^2*t, 0, ...)");
        assert_eq!(w(&[0, 1], &[]).get(1), RatQT::zero());
    }

    #[test]
    fn trailing_zeros_do_not_matter() {
        for mu in [vec![1], vec![2, 1], vec![0, 2], vec![1, 0, 1]] {
            let mut z = mu.clone();
            z.push(0);
            assert_eq!(*e_tilde(&mu), *e_tilde(&z), "{mu:?}");
            assert_eq!(kappa(&mu), kappa(&z));
        }
        assert_eq!(*e_tilde(&[0, 0]), AlmostSym::one());
    }

    #[test]
    fn tail_expansion_matches_hhl() {
        for s in 0..=3 {
            for len in 1..=2 {
                for mu in compositions(s, len) {
                    for m in 0..=3 {
                        let full = Composition(mu.0.clone()).padded(m).0;
                        assert_eq!(e_tail_expansion(&mu.0, m), e_hhl(&full), "{mu:?} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn partitions_stabilize_early() {
        for la in [vec![1], vec![2], vec![1, 1], vec![2, 1]] {
            let n: usize = la.iter().sum();
            let big = Composition(la.clone()).padded(n).0;
            let lifted = AlmostSym::lift(&e_hhl(&big), la.len()).unwrap();
            assert_eq!(lifted, *e_tilde(&la), "{la:?}");
        }
    }

    #[test]
    fn pair_paths_agree() {
        for d in 0..=3 {
            for k in 0..=2 {
                for (mu, la) in crate::combinatorics::reduced_compositions(d, k)
                    .into_iter()
                    .flat_map(|m| partitions_up_to(3 - d).into_iter().map(move |l| (m.clone(), l)))
                {
                    let i = StableIndex { mu, lambda: la };
                    assert_eq!(*e_tilde_pair(&i), e_tilde_pair_direct(&i), "{i}");
                }
            }
        }
    }

    #[test]
    fn a_lambda_is_macdonald() {
        for n in 0..=3 {
            for la in partitions(n) {
                let omt = (RatQT::one() - RatQT::t()).pow(la.len() as i64);
                let want = macdonald_p(&la).subs_q_inv().scale(&(&omt * &v_lambda(&la)));
                assert_eq!(a_lambda(&la), want, "{la:?}");
            }
        }
    }

    #[test]
    fn gamma_symmetrizes() {
        for s in 0..=3 {
            for len in 1..=3 {
                for mu in compositions(s, len) {
                    let g = gamma(&mu.0);
                    assert!(!g.is_zero());
                    let lhs = sigma_tilde(&e_tilde(&mu.0));
                    assert_eq!(lhs, a_lambda(&mu.sort()).scale(&g), "{mu:?}");
                }
            }
        }
    }

    #[test]
    fn kappa_values() {
        assert_eq!(kappa(&[]).to_string(), "t/(1 - t)");
        assert_eq!(kappa(&[0]), kappa(&[]));
        for n in 0..=4 {
            for la in partitions(n) {
                // sum_i q^{la_i} t^i with the zero tail summed
                let mut want = &RatQT::qt(0, la.len() as i64 + 1) / &(RatQT::one() - RatQT::t());
                for (i, &p) in la.0.iter().enumerate() {
                    want += &RatQT::qt(p as i64, i as i64 + 1);
                }
                assert_eq!(kappa(&la.0), want);
            }
        }
        assert_eq!(kappa(&[0, 2, 1]), kappa(&[2, 0, 1]));
    }
}
