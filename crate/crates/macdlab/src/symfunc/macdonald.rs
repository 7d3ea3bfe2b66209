//! Macdonald `P_lambda[X; q, t]` by Gram-Schmidt, and Schur functions.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{Basis, SymFunc};
use crate::combinatorics::{partitions, Partition};
use crate::qt_field::{one_minus, RatQT};

/// `<F, G>_{q,t}` with `<p_lambda, p_mu> = delta z_lambda prod (1 - q^{lambda_i})/(1 - t^{lambda_i})`.
pub fn qt_pairing(f: &SymFunc, g: &SymFunc) -> RatQT {
    let fp = f.expand(Basis::PowerSum);
    let gp = g.expand(Basis::PowerSum);
    let mut acc = RatQT::zero();
    for (rho, a) in &fp {
        let Some(b) = gp.get(rho) else { continue };
        let mut w = RatQT::from_int(rho.z());
        for &r in &rho.0 {
            w = &w * &(&one_minus(r as i64, 0) / &one_minus(0, r as i64));
        }
        acc += &(&(a * b) * &w);
    }
    acc
}

type MacTable = HashMap<Partition, Arc<SymFunc>>;

fn mac_cache() -> &'static Mutex<MacTable> {
    static CACHE: OnceLock<Mutex<MacTable>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Macdonald's `P_lambda[X; q, t]`, monic in `m_lambda`.
///
/// Gram-Schmidt runs over the partitions of `|lambda|` in increasing
/// lexicographic order, a linear extension of dominance.
pub fn macdonald_p(lambda: &Partition) -> SymFunc {
    if let Some(v) = mac_cache().lock().unwrap().get(lambda) {
        return (**v).clone();
    }
    let mut order = partitions(lambda.size());
    order.reverse();
    let mut done: Vec<(SymFunc, RatQT)> = Vec::new();
    for mu in &order {
        let cached = mac_cache().lock().unwrap().get(mu).cloned();
        let p = match cached {
            Some(p) => (*p).clone(),
            None => {
                let m = SymFunc::m(mu);
                let mut p = m.clone();
                for (prev, norm) in &done {
                    let c = &qt_pairing(&m, prev) / norm;
                    p.add_assign_scaled(prev, &-c);
                }
                mac_cache().lock().unwrap().insert(mu.clone(), Arc::new(p.clone()));
                p
            }
        };
        if mu == lambda {
            return p;
        }
        let norm = qt_pairing(&p, &p);
        done.push((p, norm));
    }
    unreachable!("lambda is among the partitions of its size")
}

/// `s_lambda = det(h_{lambda_i - i + j})`.
pub fn schur_jacobi_trudi(lambda: &Partition) -> SymFunc {
    let n = lambda.len();
    if n == 0 {
        return SymFunc::one();
    }
    let entry = |i: usize, j: usize| -> SymFunc {
        let k = lambda.0[i] as i64 - i as i64 + j as i64;
        if k < 0 {
            SymFunc::zero()
        } else {
            SymFunc::h(k as usize)
        }
    };
    // Laplace expansion along the first row, recursive on column subsets.
    fn det(rows: &[usize], cols: &[usize], entry: &dyn Fn(usize, usize) -> SymFunc) -> SymFunc {
        if rows.is_empty() {
            return SymFunc::one();
        }
        let mut acc = SymFunc::zero();
        for (idx, &c) in cols.iter().enumerate() {
            let e = entry(rows[0], c);
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = det(&rows[1..], &rest, entry);
            let sign = if idx % 2 == 0 { RatQT::one() } else { -RatQT::one() };
            acc.add_assign_scaled(&(&e * &minor), &sign);
        }
        acc
    }
    let idx: Vec<usize> = (0..n).collect();
    det(&idx, &idx, &entry)
}
