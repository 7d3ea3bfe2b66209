//! Integer structure constants of the monomial basis, memoized.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::SymFunc;
use crate::combinatorics::{distinct_permutations, partitions, sort, Partition};
use crate::qt_field::RatQT;

type ProductTable = HashMap<(Partition, Partition), Arc<Vec<(Partition, i64)>>>;

fn product_cache() -> &'static Mutex<ProductTable> {
    static CACHE: OnceLock<Mutex<ProductTable>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `m_a * m_b = sum_nu c_nu m_nu`.
///
/// `c_nu` counts rearrangements `alpha` of `a` (padded to `l(nu)`) such that
/// `nu - alpha` is a rearrangement of `b`.
pub(crate) fn m_product(a: &Partition, b: &Partition) -> Arc<Vec<(Partition, i64)>> {
    let key = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    if let Some(v) = product_cache().lock().unwrap().get(&key) {
        return v.clone();
    }
    let (a, b) = (&key.0, &key.1);
    let mut out = Vec::new();
    let n = a.size() + b.size();
    let (lo, hi) = (a.len().max(b.len()), a.len() + b.len());
    for nu in partitions(n) {
        if nu.len() < lo || nu.len() > hi {
            continue;
        }
        let mut pa = a.0.clone();
        pa.resize(nu.len(), 0);
        let mut count = 0i64;
        for alpha in distinct_permutations(&pa) {
            if alpha.iter().zip(&nu.0).any(|(x, y)| x > y) {
                continue;
            }
            let rest: Vec<usize> = nu.0.iter().zip(&alpha).map(|(y, x)| y - x).collect();
            if sort(&rest) == *b {
                count += 1;
            }
        }
        if count != 0 {
            out.push((nu, count));
        }
    }
    let v = Arc::new(out);
    product_cache().lock().unwrap().insert(key, v.clone());
    v
}

type PerpTable = HashMap<(usize, Partition), Arc<SymFunc>>;

fn perp_cache() -> &'static Mutex<PerpTable> {
    static CACHE: OnceLock<Mutex<PerpTable>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `e_k^perp m_lambda`, from `sum_i (-1)^i e_i^perp h_{k-i}^perp = 0` for `k >= 1`.
pub(crate) fn e_perp_m(k: usize, lambda: &Partition) -> Arc<SymFunc> {
    if k == 0 {
        return Arc::new(SymFunc::m(lambda));
    }
    if k > lambda.size() {
        return Arc::new(SymFunc::zero());
    }
    let key = (k, lambda.clone());
    if let Some(v) = perp_cache().lock().unwrap().get(&key) {
        return v.clone();
    }
    // e_k^perp = sum_{j=1}^{k} (-1)^{j-1} e_{k-j}^perp h_j^perp
    let mut acc: BTreeMap<Partition, RatQT> = BTreeMap::new();
    for j in 1..=k {
        let Some(rest) = lambda.remove_part(j) else { continue };
        let inner = e_perp_m(k - j, &rest);
        let sign = if j % 2 == 1 { 1 } else { -1 };
        for (p, c) in inner.terms() {
            *acc.entry(p.clone()).or_default() += &c.mul_int(sign);
        }
    }
    let v = Arc::new(SymFunc::from_terms(acc));
    perp_cache().lock().unwrap().insert(key, v.clone());
    v
}
