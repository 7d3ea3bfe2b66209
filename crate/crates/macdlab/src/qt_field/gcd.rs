//! Greatest common divisors in `Z[q, t]`.
//!
//! The fast path is the heuristic gcd: evaluate `q` at a large integer,
//! take a univariate gcd, and read the answer back off in base `xi`. Every
//! candidate is confirmed by exact division, and a primitive remainder
//! sequence over `Z[q][t]` is the fallback.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{IntPoly2, Mono};
use super::upoly::{self, UPoly};

/// Normalizes sign so the lowest graded-lex term is positive.
pub fn normalize_sign(p: IntPoly2) -> IntPoly2 {
    match p.lowest() {
        Some((_, c)) if c.is_negative() => p.neg(),
        _ => p,
    }
}

fn mono_content(p: &IntPoly2) -> Mono {
    Mono::new(p.min_q(), p.min_t())
}

/// Gcd of two polynomials, normalized so its lowest term is positive.
pub fn gcd(a: &IntPoly2, b: &IntPoly2) -> IntPoly2 {
    if a.is_zero() {
        return normalize_sign(b.clone());
    }
    if b.is_zero() {
        return normalize_sign(a.clone());
    }
    let ma = mono_content(a);
    let mb = mono_content(b);
    let gm = Mono::new(ma.q.min(mb.q), ma.t.min(mb.t));
    let ca = a.content();
    let cb = b.content();
    let c = ca.gcd(&cb);
    let pa = a.div_mono(ma).div_int(&ca);
    let pb = b.div_mono(mb).div_int(&cb);
    let core = primitive_gcd(&pa, &pb);
    normalize_sign(core.mul_term(&c, gm))
}

/// Gcd of two polynomials with trivial monomial and integer content.
fn primitive_gcd(a: &IntPoly2, b: &IntPoly2) -> IntPoly2 {
    if a.is_constant() || b.is_constant() {
        return IntPoly2::one();
    }
    if a == b || *a == b.neg() {
        return a.clone();
    }
    if a.deg_q() == 0 && b.deg_q() == 0 {
        let g = upoly::gcd(&a.eval_q(&BigInt::zero()), &b.eval_q(&BigInt::zero()));
        return IntPoly2::from_t_major(&g.into_iter().map(|c| vec![c]).collect::<Vec<_>>());
    }
    if let Some(g) = heuristic(a, b) {
        return g;
    }
    prs(a, b)
}

fn heuristic(a: &IntPoly2, b: &IntPoly2) -> Option<IntPoly2> {
    let norm = a.max_norm().min(b.max_norm());
    let mut xi: BigInt = 2 * norm + 29;
    for _ in 0..6 {
        let ea = a.eval_q(&xi);
        let eb = b.eval_q(&xi);
        if ea.len() == a.deg_t() as usize + 1 && eb.len() == b.deg_t() as usize + 1 {
            let g = upoly::gcd(&ea, &eb);
            let rows: Vec<UPoly> = g.iter().map(|c| upoly::xi_adic(c, &xi)).collect();
            let mut cand = IntPoly2::from_t_major(&rows);
            if !cand.is_zero() {
                let ct = cand.content();
                cand = cand.div_int(&ct);
                if a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
                    return Some(cand);
                }
            }
        }
        xi = &xi * 73794 / 27011;
    }
    None
}

type QtPoly = Vec<UPoly>;

fn content_q(p: &QtPoly) -> UPoly {
    let mut g: UPoly = Vec::new();
    for c in p {
        g = upoly::gcd(&g, c);
        if g.len() == 1 && g[0].is_one() {
            break;
        }
    }
    g
}

fn pp_q(p: &QtPoly) -> QtPoly {
    let c = content_q(p);
    p.iter().map(|x| upoly::div_exact(x, &c).expect("content divides")).collect()
}

fn trim_q(p: &mut QtPoly) {
    while p.last().is_some_and(|c| c.is_empty()) {
        p.pop();
    }
}

fn prem_q(a: &QtPoly, b: &QtPoly) -> QtPoly {
    let db = b.len() - 1;
    let lc = b[db].clone();
    let mut r = a.clone();
    trim_q(&mut r);
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr].clone();
        for x in r.iter_mut() {
            *x = upoly::mul(x, &lc);
        }
        for (j, bj) in b.iter().enumerate() {
            let prod = upoly::mul(&c, bj);
            r[dr - db + j] = upoly::sub(&r[dr - db + j], &prod);
        }
        trim_q(&mut r);
    }
    r
}

fn prs(a: &IntPoly2, b: &IntPoly2) -> IntPoly2 {
    let to = |p: &IntPoly2| -> QtPoly {
        let mut rows = p.to_t_major();
        for r in rows.iter_mut() {
            upoly::trim(r);
        }
        rows
    };
    let (xa, xb) = (to(a), to(b));
    let cont = upoly::gcd(&content_q(&xa), &content_q(&xb));
    let (mut x, mut y) = (pp_q(&xa), pp_q(&xb));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = prem_q(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { pp_q(&r) };
    }
    let rows: QtPoly = x.iter().map(|c| upoly::mul(c, &cont)).collect();
    let g = IntPoly2::from_t_major(&rows);
    let ct = g.content();
    g.div_int(&ct)
}
