//! Compositions, partitions, Bruhat order and non-attacking fillings.

mod bruhat;
mod filling;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bruhat::{bruhat_covers_up, bruhat_length, bruhat_less, bruhat_rank_key};
pub use filling::{enumerate_nonattacking, enumerate_nonattacking_brute, Filling, FillingStats, RowOneFactor};

/// A finite sequence of nonnegative integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition(pub Vec<usize>);

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(pub Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        Composition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Empty or with nonzero last part.
    pub fn is_reduced(&self) -> bool {
        self.0.last().is_none_or(|&p| p != 0)
    }

    /// `self * other`, concatenation.
    pub fn concat(&self, other: &[usize]) -> Composition {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Composition(v)
    }

    pub fn padded(&self, zeros: usize) -> Composition {
        let mut v = self.0.clone();
        v.resize(v.len() + zeros, 0);
        Composition(v)
    }

    /// Drops trailing zeros.
    pub fn reduced(&self) -> Composition {
        let mut v = self.0.clone();
        while v.last() == Some(&0) {
            v.pop();
        }
        Composition(v)
    }

    pub fn sort(&self) -> Partition {
        sort(&self.0)
    }

    pub fn nonzero_count(&self) -> usize {
        self.0.iter().filter(|&&p| p != 0).count()
    }
}

impl Partition {
    /// Builds a partition, checking it is weakly decreasing and positive.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Precondition(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Multiplicities `m_i` of each part size `i >= 1`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.0.first().copied().unwrap_or(0) + 1];
        for &p in &self.0 {
            m[p] += 1;
        }
        m
    }

    /// Removes one copy of the part `r`, if present.
    pub fn remove_part(&self, r: usize) -> Option<Partition> {
        let pos = self.0.iter().position(|&p| p == r)?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some(Partition(v))
    }

    /// Inserts a part, keeping the order.
    pub fn insert_part(&self, r: usize) -> Partition {
        if r == 0 {
            return self.clone();
        }
        let mut v = self.0.clone();
        let pos = v.iter().position(|&p| p < r).unwrap_or(v.len());
        v.insert(pos, r);
        Partition(v)
    }

    pub fn as_composition(&self) -> Composition {
        Composition(self.0.clone())
    }

    /// `z_lambda = prod_i i^{m_i} m_i!`.
    pub fn z(&self) -> num_bigint::BigInt {
        let mut z = num_bigint::BigInt::from(1);
        for (i, &m) in self.multiplicities().iter().enumerate().skip(1) {
            for k in 1..=m {
                z *= i * k;
            }
        }
        z
    }

    /// Dominance order, `self <= other`, for partitions of equal size.
    pub fn dominated_by(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let (mut a, mut b) = (0usize, 0usize);
        for i in 0..self.len().max(other.len()) {
            a += self.0.get(i).copied().unwrap_or(0);
            b += other.0.get(i).copied().unwrap_or(0);
            if a > b {
                return false;
            }
        }
        true
    }
}

/// Sorts the nonzero parts into weakly decreasing order.
pub fn sort(mu: &[usize]) -> Partition {
    let mut v: Vec<usize> = mu.iter().copied().filter(|&p| p != 0).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    Partition(v)
}

/// `beta_mu(i) = #{j <= i : mu_j <= mu_i} + #{j > i : mu_i > mu_j}`, 1-based `i`.
pub fn beta(mu: &[usize], i: usize) -> Result<usize> {
    if i == 0 || i > mu.len() {
        return Err(Error::IndexOutOfRange(format!("beta index {i} for length {}", mu.len())));
    }
    let m = mu[i - 1];
    let left = mu[..i].iter().filter(|&&x| x <= m).count();
    let right = mu[i..].iter().filter(|&&x| m > x).count();
    Ok(left + right)
}

/// All partitions of `n`, in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

/// Partitions of size at most `n`.
pub fn partitions_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(partitions).collect()
}

/// Weak compositions of `n` with exactly `k` parts.
pub fn compositions(n: usize, k: usize) -> Vec<Composition> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(rem: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if k == 0 {
            if rem == 0 {
                out.push(Composition(cur.clone()));
            }
            return;
        }
        if k == 1 {
            cur.push(rem);
            out.push(Composition(cur.clone()));
            cur.pop();
            return;
        }
        for p in (0..=rem).rev() {
            cur.push(p);
            rec(rem - p, k - 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, &mut cur, &mut out);
    out
}

/// Reduced compositions of size `n` with length at most `k`.
pub fn reduced_compositions(n: usize, k: usize) -> Vec<Composition> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(Composition::default());
        return out;
    }
    for len in 1..=k {
        for c in compositions(n, len) {
            if c.is_reduced() {
                out.push(c);
            }
        }
    }
    out
}

/// Number of distinct rearrangements of a sequence.
pub fn rearrangement_count(parts: &[usize]) -> u128 {
    let mut counts = std::collections::BTreeMap::new();
    for &p in parts {
        *counts.entry(p).or_insert(0u32) += 1;
    }
    let mut n = 0u32;
    let mut r: u128 = 1;
    for (_, c) in counts {
        for k in 1..=c {
            n += 1;
            r = r * n as u128 / k as u128;
        }
    }
    r
}

/// Distinct permutations of `v`, in lexicographic order.
pub fn distinct_permutations(v: &[usize]) -> Vec<Vec<usize>> {
    let mut a = v.to_vec();
    a.sort_unstable();
    let mut out = vec![a.clone()];
    loop {
        let n = a.len();
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && a[i - 1] >= a[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while a[j] <= a[i - 1] {
            j -= 1;
        }
        a.swap(i - 1, j);
        a[i..].reverse();
        out.push(a.clone());
    }
    out
}

fn fmt_parts(f: &mut fmt::Formatter<'_>, v: &[usize]) -> fmt::Result {
    let s: Vec<String> = v.iter().map(|p| p.to_string()).collect();
    write!(f, "{}", s.join(","))
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_parts(f, &self.0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_parts(f, &self.0)
    }
}

fn parse_parts(s: &str) -> Result<Vec<usize>> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|p| p.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{p:?}: {e}")))).collect()
}

impl FromStr for Composition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(Composition(parse_parts(s)?))
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_parts(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sort_examples() {
        assert_eq!(sort(&[0, 2, 0, 1]), Partition(vec![2, 1]));
        assert_eq!(sort(&[]), Partition(vec![]));
        assert_eq!(sort(&[3, 3, 1]), Partition(vec![3, 3, 1]));
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta(&[1], 1).unwrap(), 1);
        assert_eq!(beta(&[1, 1, 1], 2).unwrap(), 2);
        assert_eq!(beta(&[2, 0], 1).unwrap(), 2);
        assert!(beta(&[2, 0], 3).is_err());
        let b: Vec<usize> = (1..=3).map(|i| beta(&[1, 1, 1], i).unwrap()).collect();
        assert_eq!(b, vec![1, 2, 3]);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
        assert_eq!(compositions(4, 3).len(), 15);
        assert_eq!(reduced_compositions(2, 2).len(), 3);
    }

    #[test]
    fn parse_and_display() {
        let c: Composition = "3,2,0,1".parse().unwrap();
        assert_eq!(c.to_string(), "3,2,0,1");
        assert_eq!("".parse::<Composition>().unwrap(), Composition::default());
        assert!("1,2".parse::<Partition>().is_err());
    }

    #[test]
    fn rearrangements() {
        assert_eq!(rearrangement_count(&[2, 1, 1]), 3);
        assert_eq!(distinct_permutations(&[1, 0, 1]).len(), 3);
    }

    #[test]
    fn z_lambda() {
        assert_eq!(Partition(vec![2, 1, 1]).z(), 4.into());
        assert_eq!(Partition(vec![3]).z(), 3.into());
    }
}
