//! Dense univariate integer polynomials, lowest degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type UPoly = Vec<BigInt>;

pub fn trim(p: &mut UPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &[BigInt]) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> UPoly {
    let mut out: UPoly = (0..a.len().max(b.len()))
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            match b.get(i) {
                Some(y) => x + y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> UPoly {
    let mut out: UPoly = (0..a.len().max(b.len()))
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn scale(a: &[BigInt], c: &BigInt) -> UPoly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

pub fn content(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Primitive part with positive leading coefficient.
pub fn primitive(a: &[BigInt]) -> UPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut c = content(a);
    if a.last().unwrap().is_negative() {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

pub fn eval(a: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in a.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Exact division over `Z`; `None` if not exact.
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<UPoly> {
    let db = degree(b)?;
    if a.is_empty() {
        return Some(Vec::new());
    }
    let da = degree(a).unwrap();
    if da < db {
        return None;
    }
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); da - db + 1];
    let lc = &b[db];
    for k in (0..=da - db).rev() {
        let c = &rem[k + db];
        if c.is_zero() {
            continue;
        }
        let (qc, r) = c.div_rem(lc);
        if !r.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &qc * bj;
        }
        quot[k] = qc;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut quot);
    Some(quot)
}

/// Pseudo-remainder of `a` by `b`.
pub fn prem(a: &[BigInt], b: &[BigInt]) -> UPoly {
    let db = degree(b).expect("prem by zero");
    let mut r = a.to_vec();
    let lc = b[db].clone();
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = r[dr].clone();
        r = scale(&r, &lc);
        for (j, bj) in b.iter().enumerate() {
            r[dr - db + j] -= &c * bj;
        }
        trim(&mut r);
    }
    r
}

fn prs_gcd(a: &[BigInt], b: &[BigInt]) -> UPoly {
    let (mut x, mut y) = (primitive(a), primitive(b));
    if degree(&x) < degree(&y) {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = prem(&x, &y);
        x = y;
        y = primitive(&r);
    }
    primitive(&x)
}

/// Symmetric-range integer digits of `v` in base `xi`, lowest first.
pub(crate) fn xi_adic(v: &BigInt, xi: &BigInt) -> UPoly {
    let mut out = Vec::new();
    let mut v = v.clone();
    let half = xi / 2;
    while !v.is_zero() {
        let mut d = v.mod_floor(xi);
        if d > half {
            d -= xi;
        }
        v = (&v - &d) / xi;
        out.push(d);
    }
    out
}

/// Gcd in `Z[x]` including the integer content, leading coefficient positive.
pub fn gcd(a: &[BigInt], b: &[BigInt]) -> UPoly {
    if a.is_empty() {
        return primitive_signed(b);
    }
    if b.is_empty() {
        return primitive_signed(a);
    }
    let ca = content(a);
    let cb = content(b);
    let c = ca.gcd(&cb);
    let pa: UPoly = a.iter().map(|x| x / &ca).collect();
    let pb: UPoly = b.iter().map(|x| x / &cb).collect();
    let g = primitive_gcd(&pa, &pb);
    scale(&g, &c)
}

fn primitive_signed(a: &[BigInt]) -> UPoly {
    if a.last().is_some_and(|c| c.is_negative()) {
        a.iter().map(|x| -x).collect()
    } else {
        a.to_vec()
    }
}

fn primitive_gcd(a: &[BigInt], b: &[BigInt]) -> UPoly {
    if a.len() == 1 || b.len() == 1 {
        return vec![BigInt::one()];
    }
    let na = a.iter().map(|c| c.abs()).max().unwrap();
    let nb = b.iter().map(|c| c.abs()).max().unwrap();
    let mut xi: BigInt = 2 * na.min(nb) + 29;
    for _ in 0..6 {
        let g = eval(a, &xi).gcd(&eval(b, &xi));
        if !g.is_zero() {
            let cand = primitive(&xi_adic(&g, &xi));
            if !cand.is_empty() && div_exact(a, &cand).is_some() && div_exact(b, &cand).is_some() {
                return cand;
            }
        }
        xi = &xi * 73794 / 27011;
    }
    prs_gcd(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> UPoly {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let f = v(&[1, -1]);
        let a = mul(&f, &v(&[2, 0, 3]));
        let b = mul(&f, &v(&[5, 7]));
        assert_eq!(gcd(&a, &b), v(&[-1, 1]));
        assert_eq!(prs_gcd(&a, &b), v(&[-1, 1]));
    }

    #[test]
    fn prem_is_zero_on_multiples() {
        let a = mul(&v(&[1, 2, 3]), &v(&[4, 5]));
        assert!(prem(&a, &v(&[4, 5])).is_empty());
    }

    #[test]
    fn xi_adic_round_trip() {
        let xi = BigInt::from(101);
        for n in [-5000i64, -1, 0, 7, 123456] {
            let d = xi_adic(&BigInt::from(n), &xi);
            assert_eq!(eval(&d, &xi), BigInt::from(n));
        }
    }
}
