//! Named bases and change of basis.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::{hall_littlewood_p, macdonald_p, SymFunc};
use crate::combinatorics::{partitions, Partition};
use crate::linalg;
use crate::qt_field::RatQT;

/// The bases a [`SymFunc`] can be read in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    #[serde(rename = "m")]
    Monomial,
    #[serde(rename = "e")]
    Elementary,
    #[serde(rename = "h")]
    Complete,
    #[serde(rename = "p")]
    PowerSum,
    /// The transformed Hall-Littlewood functions `P_lambda = Q_lambda[X; t]`.
    #[serde(rename = "HL")]
    HallLittlewood,
    /// Macdonald `P_lambda[X; q, t]`.
    #[serde(rename = "MacP")]
    Macdonald,
}

impl Basis {
    pub fn symbol(self) -> &'static str {
        match self {
            Basis::Monomial => "m",
            Basis::Elementary => "e",
            Basis::Complete => "h",
            Basis::PowerSum => "p",
            Basis::HallLittlewood => "P",
            Basis::Macdonald => "MacP",
        }
    }

    /// The basis element indexed by `lambda`, in the monomial basis.
    pub fn element(self, lambda: &Partition) -> SymFunc {
        let prod = |f: fn(usize) -> SymFunc| lambda.0.iter().fold(SymFunc::one(), |acc, &r| &acc * &f(r));
        match self {
            Basis::Monomial => SymFunc::m(lambda),
            Basis::Elementary => prod(SymFunc::e),
            Basis::Complete => prod(SymFunc::h),
            Basis::PowerSum => prod(SymFunc::p),
            Basis::HallLittlewood => hall_littlewood_p(lambda),
            Basis::Macdonald => macdonald_p(lambda),
        }
    }
}

type InverseTable = HashMap<(Basis, usize), Arc<(Vec<Partition>, Vec<Vec<RatQT>>)>>;

fn inverse_cache() -> &'static Mutex<InverseTable> {
    static CACHE: OnceLock<Mutex<InverseTable>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Partitions of `d` and the matrix taking m-coordinates to `basis`-coordinates.
fn to_basis_matrix(basis: Basis, d: usize) -> Arc<(Vec<Partition>, Vec<Vec<RatQT>>)> {
    if let Some(v) = inverse_cache().lock().unwrap().get(&(basis, d)) {
        return v.clone();
    }
    let parts = partitions(d);
    // a[i][j] = coefficient of m_{parts[i]} in b_{parts[j]}
    let cols: Vec<SymFunc> = parts.iter().map(|p| basis.element(p)).collect();
    let a: Vec<Vec<RatQT>> = parts.iter().map(|pi| cols.iter().map(|c| c.coeff(pi)).collect()).collect();
    let inv = linalg::inverse(&a).expect("basis transition matrices are invertible");
    let v = Arc::new((parts, inv));
    inverse_cache().lock().unwrap().insert((basis, d), v.clone());
    v
}

pub(super) fn expand(f: &SymFunc, basis: Basis) -> BTreeMap<Partition, RatQT> {
    if basis == Basis::Monomial {
        return f.terms().clone();
    }
    let mut degrees: Vec<usize> = f.terms().keys().map(|p| p.size()).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let mut out = BTreeMap::new();
    for d in degrees {
        let table = to_basis_matrix(basis, d);
        let (parts, inv) = (&table.0, &table.1);
        let x: Vec<RatQT> = parts.iter().map(|p| f.coeff(p)).collect();
        for (i, row) in inv.iter().enumerate() {
            let mut acc = RatQT::zero();
            for (r, xj) in row.iter().zip(&x) {
                if !r.is_zero() && !xj.is_zero() {
                    acc += &(r * xj);
                }
            }
            if !acc.is_zero() {
                out.insert(parts[i].clone(), acc);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let f = &(&SymFunc::h(2) * &SymFunc::e(1)).scale(&"q".parse().unwrap()) + &SymFunc::p(3);
        for b in [Basis::Elementary, Basis::Complete, Basis::PowerSum, Basis::HallLittlewood, Basis::Macdonald] {
            let c = f.expand(b);
            assert_eq!(SymFunc::from_basis(b, &c), f, "{b:?}");
        }
    }

    #[test]
    fn h_in_p_basis() {
        // h_2 = (p_2 + p_11)/2
        let c = SymFunc::h(2).expand(Basis::PowerSum);
        let half = RatQT::from_ratio(1, 2).unwrap();
        assert_eq!(c[&Partition(vec![2])], half);
        assert_eq!(c[&Partition(vec![1, 1])], half);
    }
}
