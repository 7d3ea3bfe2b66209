//! Partial trivial idempotents `epsilon_k^(n)` of the finite Hecke algebra.
//!
//! `epsilon_k^(n) = t^{C(N,2)}/[N]_t! sum_{sigma} t^{-l(sigma)} T_sigma` over
//! permutations of positions `k+1..n`, `N = n - k`.

use std::collections::{BTreeMap, HashMap};

use super::ops::t_raw;
use super::poly::FinitePoly;
use crate::combinatorics::Partition;
use crate::error::{Error, Result};
use crate::qt_field::{t_factorial, RatQT};
use crate::symfunc::{schur_jacobi_trudi, SymFunc};

fn check(k: usize, n: usize) -> Result<()> {
    if k >= n.max(1) {
        return Err(Error::IndexOutOfRange(format!("epsilon_{k} on {n} variables")));
    }
    Ok(())
}

fn normalizer(k: usize, n: usize) -> RatQT {
    let big_n = n - k;
    let c2 = (big_n * big_n.saturating_sub(1) / 2) as i64;
    &RatQT::qt(0, c2) / &t_factorial(big_n)
}

/// `epsilon_k^(n)(f)`, evaluated by minimal coset representatives.
///
/// `sum_{S_{[j,n]}} t^{-l} T = (1 + t^{-1} T_j + t^{-2} T_{j+1} T_j + ...) sum_{S_{[j+1,n]}} t^{-l} T`.
pub fn epsilon(k: usize, f: &FinitePoly) -> Result<FinitePoly> {
    let n = f.nvars();
    check(k, n)?;
    let tinv = RatQT::qt(0, -1);
    let mut g = f.clone();
    // 0-based positions: stage s sums over permutations of s..n-1.
    for s in (k..n.saturating_sub(1)).rev() {
        let mut acc = g.clone();
        let mut cur = g;
        for j in s..n - 1 {
            cur = t_raw(j, &cur).scale(&tinv);
            acc.add_assign_scaled(&cur, &RatQT::one());
        }
        g = acc;
    }
    Ok(g.scale(&normalizer(k, n)))
}

/// `epsilon_k^(n)(f)` by summing `T_sigma f` over every permutation.
pub fn epsilon_defining_sum(k: usize, f: &FinitePoly) -> Result<FinitePoly> {
    let n = f.nvars();
    check(k, n)?;
    let tinv = RatQT::qt(0, -1);
    // Breadth-first by length; T_{s sigma} = T_s T_sigma when the length goes up.
    let id: Vec<usize> = (0..n).collect();
    let mut layer: HashMap<Vec<usize>, FinitePoly> = HashMap::from([(id, f.clone())]);
    let mut total = f.clone();
    let mut scale = RatQT::one();
    while !layer.is_empty() {
        scale = &scale * &tinv;
        let mut next: HashMap<Vec<usize>, FinitePoly> = HashMap::new();
        for (w, val) in &layer {
            for s in k..n.saturating_sub(1) {
                // left multiplication by s swaps the values s and s+1 in the one-line word
                let pos_a = w.iter().position(|&x| x == s).unwrap();
                let pos_b = w.iter().position(|&x| x == s + 1).unwrap();
                if pos_a > pos_b {
                    continue;
                }
                let mut w2 = w.clone();
                w2.swap(pos_a, pos_b);
                next.entry(w2).or_insert_with(|| t_raw(s, val));
            }
        }
        for v in next.values() {
            total.add_assign_scaled(v, &scale);
        }
        layer = next;
    }
    Ok(total.scale(&normalizer(k, n)))
}

/// `(1/[n]_t!) sum_sigma sigma(f prod_{i<j} (x_i - t x_j)/(x_i - x_j))`.
///
/// Each monomial `x^e` of the numerator antisymmetrizes to `+-a_{sort(e)}`, and
/// `a_{nu + delta} / a_delta = s_nu`, so no permutation is ever applied.
pub fn omega_symmetrizer(f: &FinitePoly) -> Result<FinitePoly> {
    let n = f.nvars();
    let t = RatQT::t();
    let mut g = f.clone();
    for i in 1..=n {
        for j in i + 1..=n {
            let lin = &FinitePoly::var(n, i) - &FinitePoly::var(n, j).scale(&t);
            g = &g * &lin;
        }
    }
    let mut schur: BTreeMap<Partition, RatQT> = BTreeMap::new();
    for (e, c) in g.terms() {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| e[i] < e[j]).count();
        let mut v = e.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        if v.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let nu: Vec<usize> = v.iter().enumerate().map(|(i, &x)| x - (n - 1 - i)).filter(|&x| x > 0).collect();
        let c = if inversions % 2 == 0 { c.clone() } else { -c };
        *schur.entry(Partition(nu)).or_insert_with(RatQT::zero) += &c;
    }
    let mut sym = SymFunc::zero();
    for (nu, c) in &schur {
        if !c.is_zero() {
            sym.add_assign_scaled(&schur_jacobi_trudi(nu), c);
        }
    }
    Ok(FinitePoly::from_symfunc(&sym, n).scale(&t_factorial(n).inv()?))
}
