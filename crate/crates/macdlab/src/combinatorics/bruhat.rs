//! Bruhat order on `Z_{>=0}^n`.
//!
//! Vectors with different sorted rearrangements compare by dominance. Within
//! one permutation orbit the order is read off prefix counts: `a <= b` when
//! every prefix of `a` has at least as many entries `>= v` as the same prefix
//! of `b`, for every threshold `v`. Weakly decreasing vectors are minimal.

use super::sort;
use crate::error::{Error, Result};

/// Number of pairs `i < j` with `a_i < a_j`.
pub fn bruhat_length(a: &[usize]) -> usize {
    let mut n = 0;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if a[i] < a[j] {
                n += 1;
            }
        }
    }
    n
}

/// A key whose lexicographic order is a linear extension of Bruhat order.
pub fn bruhat_rank_key(a: &[usize]) -> (Vec<usize>, usize) {
    (sort(a).0, bruhat_length(a))
}

fn orbit_le(a: &[usize], b: &[usize]) -> bool {
    let max = a.iter().copied().max().unwrap_or(0);
    for v in 1..=max {
        let (mut ca, mut cb) = (0usize, 0usize);
        for i in 0..a.len() {
            ca += (a[i] >= v) as usize;
            cb += (b[i] >= v) as usize;
            if ca < cb {
                return false;
            }
        }
    }
    true
}

/// Strict Bruhat comparison `a < b`.
pub fn bruhat_less(a: &[usize], b: &[usize]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    if a == b {
        return Ok(false);
    }
    let (sa, sb) = (sort(a), sort(b));
    if sa != sb {
        return Ok(sa.dominated_by(&sb));
    }
    Ok(orbit_le(a, b))
}

/// The elements of the permutation orbit of `a` covering it.
pub fn bruhat_covers_up(a: &[usize]) -> Vec<Vec<usize>> {
    let len = bruhat_length(a);
    let mut out = Vec::new();
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if a[i] > a[j] {
                let mut b = a.to_vec();
                b.swap(i, j);
                if bruhat_length(&b) == len + 1 {
                    out.push(b);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::distinct_permutations;
    use std::collections::{BTreeMap, BTreeSet};

    #[test]
    fn basic_comparisons() {
        assert!(bruhat_less(&[1, 0], &[0, 1]).unwrap());
        assert!(!bruhat_less(&[0, 1], &[0, 1]).unwrap());
        assert!(!bruhat_less(&[0, 1], &[1, 0]).unwrap());
        assert!(bruhat_less(&[1, 1], &[0, 2]).unwrap());
        assert!(bruhat_less(&[1], &[0, 2]).is_err());
    }

    #[test]
    fn decreasing_vectors_are_orbit_minimal() {
        for v in [[2usize, 1, 1, 0], [3, 1, 0, 0], [1, 1, 0, 0]] {
            for w in distinct_permutations(&v) {
                if w != v {
                    assert!(bruhat_less(&v, &w).unwrap());
                }
            }
        }
    }

    /// Transitive closure of the swap covers `a > (ij)(a)` for `a_i < a_j`.
    fn closure(orbit: &[Vec<usize>]) -> BTreeMap<Vec<usize>, BTreeSet<Vec<usize>>> {
        let mut below: BTreeMap<Vec<usize>, BTreeSet<Vec<usize>>> = BTreeMap::new();
        for a in orbit {
            let mut set = BTreeSet::new();
            for i in 0..a.len() {
                for j in i + 1..a.len() {
                    if a[i] < a[j] {
                        let mut b = a.clone();
                        b.swap(i, j);
                        set.insert(b);
                    }
                }
            }
            below.insert(a.clone(), set);
        }
        loop {
            let mut changed = false;
            for a in orbit {
                let cur: Vec<Vec<usize>> = below[a].iter().cloned().collect();
                for b in cur {
                    let extra: Vec<Vec<usize>> = below[&b].iter().cloned().collect();
                    for c in extra {
                        changed |= below.get_mut(a).unwrap().insert(c);
                    }
                }
            }
            if !changed {
                return below;
            }
        }
    }

    #[test]
    fn orbit_order_matches_cover_closure() {
        for v in [vec![0, 1, 2, 3], vec![0, 0, 1, 2], vec![0, 1, 1, 2], vec![1, 1, 2, 2], vec![0, 0, 0, 1]] {
            let orbit = distinct_permutations(&v);
            let below = closure(&orbit);
            for a in &orbit {
                for b in &orbit {
                    assert_eq!(bruhat_less(b, a).unwrap(), below[a].contains(b), "{b:?} < {a:?}");
                }
            }
            for a in &orbit {
                assert!(!bruhat_less(a, a).unwrap());
                for b in &orbit {
                    if bruhat_less(a, b).unwrap() {
                        assert!(!bruhat_less(b, a).unwrap());
                        for c in &orbit {
                            if bruhat_less(b, c).unwrap() {
                                assert!(bruhat_less(a, c).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn covers_are_minimal_upper_elements() {
        for a in distinct_permutations(&[0, 1, 1, 2]) {
            for c in bruhat_covers_up(&a) {
                assert!(bruhat_less(&a, &c).unwrap());
                for b in distinct_permutations(&a) {
                    assert!(!(bruhat_less(&a, &b).unwrap() && bruhat_less(&b, &c).unwrap()));
                }
            }
        }
    }

    #[test]
    fn rank_key_extends_order() {
        let all: Vec<Vec<usize>> =
            [vec![0, 1, 2], vec![1, 1, 1], vec![0, 0, 3]].iter().flat_map(|v| distinct_permutations(v)).collect();
        for a in &all {
            for b in &all {
                if bruhat_less(a, b).unwrap() {
                    assert!(bruhat_rank_key(a) < bruhat_rank_key(b));
                }
            }
        }
    }
}
