//! Jing vertex operators and Hall-Littlewood functions.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::plethysm::{plethysm, Alphabet};
use super::SymFunc;
use crate::combinatorics::Partition;
use crate::qt_field::{t_factorial, RatQT};

type JingTable = HashMap<(usize, Partition), Arc<SymFunc>>;

fn jing_cache() -> &'static Mutex<JingTable> {
    static CACHE: OnceLock<Mutex<JingTable>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `B_n(m_lambda)`, memoized.
pub(crate) fn jing_m(n: usize, lambda: &Partition) -> Arc<SymFunc> {
    let key = (n, lambda.clone());
    if let Some(v) = jing_cache().lock().unwrap().get(&key) {
        return v.clone();
    }
    let m = SymFunc::m(lambda);
    let mut acc = SymFunc::zero();
    for i in 0..=lambda.size() {
        let perp = m.e_perp(i);
        if perp.is_zero() {
            continue;
        }
        let term = &SymFunc::h_one_minus_t(n + i) * &perp;
        let sign = if i % 2 == 0 { RatQT::one() } else { -RatQT::one() };
        acc.add_assign_scaled(&term, &sign);
    }
    let v = Arc::new(acc);
    jing_cache().lock().unwrap().insert(key, v.clone());
    v
}

/// The Jing operator `B_n(F) = sum_i (-1)^i h_{n+i}[(1-t)X] e_i^perp F`.
pub fn jing(n: usize, f: &SymFunc) -> SymFunc {
    let mut acc = SymFunc::zero();
    for (p, c) in f.terms() {
        acc.add_assign_scaled(&jing_m(n, p), c);
    }
    acc
}

/// `B_n(F)` as `<z^n> F[X - z^{-1}] Exp[(1-t) z X]`, through power-sum plethysm.
pub fn jing_kernel(n: usize, f: &SymFunc) -> SymFunc {
    let d = f.degree().unwrap_or(0);
    let shifted =
        plethysm(f, &Alphabet::x().plus(&Alphabet::z(-1).scaled(&-RatQT::one())), d, (-(d as i64), 0)).expect("within caps");
    let omt_x = Alphabet::x().scaled(&(RatQT::one() - RatQT::t()));
    let mut acc = SymFunc::zero();
    for (key, g) in shifted.terms() {
        let i = (-key[0]) as usize;
        let h = plethysm(&SymFunc::h(n + i), &omt_x, n + i, (0, 0)).expect("within caps");
        acc = &acc + &(&h.sym_part() * g);
    }
    acc
}

type HlTable = HashMap<Partition, Arc<SymFunc>>;

fn hl_cache() -> &'static Mutex<HlTable> {
    static CACHE: OnceLock<Mutex<HlTable>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `P_lambda = B_{lambda_1} ... B_{lambda_r}(1)`, which equals `Q_lambda[X; t]`.
pub fn hall_littlewood_p(lambda: &Partition) -> SymFunc {
    if let Some(v) = hl_cache().lock().unwrap().get(lambda) {
        return (**v).clone();
    }
    let mut f = SymFunc::one();
    for &r in lambda.0.iter().rev() {
        f = jing(r, &f);
    }
    hl_cache().lock().unwrap().insert(lambda.clone(), Arc::new(f.clone()));
    f
}

/// `v_lambda(t) = prod_i [m_i(lambda)]_t!`.
pub fn v_lambda(lambda: &Partition) -> RatQT {
    let mut v = RatQT::one();
    for &m in lambda.multiplicities().iter().skip(1) {
        v *= &t_factorial(m);
    }
    v
}

/// Macdonald's `P_lambda[X; t] = P_lambda / (v_lambda(t) (1-t)^{l(lambda)})`.
pub fn hl_classical_p(lambda: &Partition) -> SymFunc {
    let omt = RatQT::one() - RatQT::t();
    let norm = &v_lambda(lambda) * &omt.pow(lambda.len() as i64);
    hall_littlewood_p(lambda).scale(&norm.inv().expect("nonzero"))
}

/// `<z^lambda> Exp[(1-t)(z_1 + ... + z_r) X] prod_{i<j} Exp[(t-1) z_j / z_i]`.
///
/// The second factor is expanded in nonnegative powers of `z_j / z_i`, and
/// `h_k[t - 1] = t^{k-1}(t - 1)` for `k >= 1`.
pub fn dual_q_kernel(lambda: &Partition) -> SymFunc {
    let r = lambda.len();
    if r == 0 {
        return SymFunc::one();
    }
    let lam = &lambda.0;
    // k[i][j] for i < j, 0-based.
    let mut k = vec![vec![0usize; r]; r];
    let mut grouped: BTreeMap<Vec<usize>, RatQT> = BTreeMap::new();
    fn coeff(kk: usize) -> RatQT {
        if kk == 0 {
            RatQT::one()
        } else {
            RatQT::qt(0, kk as i64 - 1) * (RatQT::t() - RatQT::one())
        }
    }
    fn rec(j: usize, lam: &[usize], k: &mut Vec<Vec<usize>>, grouped: &mut BTreeMap<Vec<usize>, RatQT>) {
        let r = lam.len();
        if j == 0 {
            let mut d = Vec::with_capacity(r);
            let mut c = RatQT::one();
            for i in 0..r {
                let plus: usize = (i + 1..r).map(|m| k[i][m]).sum();
                let minus: usize = (0..i).map(|m| k[m][i]).sum();
                d.push(lam[i] + plus - minus);
                for m in i + 1..r {
                    c *= &coeff(k[i][m]);
                }
            }
            d.sort_unstable_by(|a, b| b.cmp(a));
            *grouped.entry(d).or_default() += &c;
            return;
        }
        // choose k[0..j][j] with sum <= lam[j] + sum_{m>j} k[j][m]
        let bound = lam[j] + (j + 1..r).map(|m| k[j][m]).sum::<usize>();
        fn fill(i: usize, j: usize, left: usize, lam: &[usize], k: &mut Vec<Vec<usize>>, g: &mut BTreeMap<Vec<usize>, RatQT>) {
            if i == j {
                rec(j - 1, lam, k, g);
                return;
            }
            for v in 0..=left {
                k[i][j] = v;
                fill(i + 1, j, left - v, lam, k, g);
            }
            k[i][j] = 0;
        }
        fill(0, j, bound, lam, k, grouped);
    }
    rec(r - 1, lam, &mut k, &mut grouped);
    let mut acc = SymFunc::zero();
    for (d, c) in grouped {
        if c.is_zero() {
            continue;
        }
        let mut prod = SymFunc::one();
        for &di in &d {
            prod = &prod * &SymFunc::h_one_minus_t(di);
        }
        acc.add_assign_scaled(&prod, &c);
    }
    acc
}
