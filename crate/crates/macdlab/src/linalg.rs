//! Dense linear algebra over `Q(q, t)` and over `Z/p`.

use crate::error::{Error, Result};
use crate::qt_field::RatQT;

/// Size heuristic used for pivot choice.
fn weight(x: &RatQT) -> usize {
    x.num().nterms() + x.den().nterms()
}

/// Solves `a * x = b` for square invertible `a`, with several right-hand sides.
///
/// `b[i]` is row `i` of the right-hand side matrix.
pub fn solve(a: &[Vec<RatQT>], b: &[Vec<RatQT>]) -> Result<Vec<Vec<RatQT>>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::LengthMismatch(n, b.len()));
    }
    let nrhs = b.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<RatQT>> = a.iter().zip(b).map(|(r, s)| r.iter().chain(s).cloned().collect()).collect();
    for col in 0..n {
        let piv = (col..n)
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| weight(&m[r][col]))
            .ok_or_else(|| Error::Singular(format!("no pivot in column {col}")))?;
        m.swap(col, piv);
        let inv = m[col][col].inv()?;
        let prow: Vec<RatQT> = m[col].iter().map(|x| x * &inv).collect();
        m[col] = prow;
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..n + nrhs {
                if !m[col][c].is_zero() {
                    let d = &f * &m[col][c];
                    m[r][c] -= &d;
                }
            }
        }
    }
    Ok(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Inverse of a square matrix.
pub fn inverse(a: &[Vec<RatQT>]) -> Result<Vec<Vec<RatQT>>> {
    let n = a.len();
    let id: Vec<Vec<RatQT>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { RatQT::one() } else { RatQT::zero() }).collect()).collect();
    solve(a, &id)
}

/// Rank by fraction-field elimination; exact.
pub fn rank(a: &[Vec<RatQT>]) -> usize {
    let mut m: Vec<Vec<RatQT>> = a.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).filter(|&i| !m[i][c].is_zero()).min_by_key(|&i| weight(&m[i][c])) else {
            continue;
        };
        m.swap(r, piv);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..cols {
                if !m[r][j].is_zero() {
                    let d = &f * &m[r][j];
                    m[i][j] -= &d;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Reduced row echelon form over `Z/p`; returns the pivot `(row, column)` pairs
/// in the original row numbering.
pub fn echelon_mod_p(m: &mut [Vec<u64>], p: u64) -> Vec<(usize, usize)> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut order: Vec<usize> = (0..rows).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_multiple_of(p)) else {
            continue;
        };
        m.swap(r, piv);
        order.swap(r, piv);
        let inv = powmod(m[r][c], p - 2, p);
        for j in c..cols {
            m[r][j] = mulmod(m[r][j], inv, p);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = m[i][c] % p;
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let d = mulmod(f, m[r][j], p);
                m[i][j] = (m[i][j] + p - d) % p;
            }
        }
        pivots.push((order[r], c));
        r += 1;
    }
    pivots
}

/// Rank over the prime field `Z/p`.
pub fn rank_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_multiple_of(p)) else {
            continue;
        };
        m.swap(r, piv);
        let inv = powmod(m[r][c], p - 2, p);
        for i in r + 1..rows {
            let f = mulmod(m[i][c], inv, p);
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let d = mulmod(f, m[r][j], p);
                m[i][j] = (m[i][j] + p - d) % p;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}
