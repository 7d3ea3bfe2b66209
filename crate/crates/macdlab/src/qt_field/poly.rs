//! Sparse bivariate integer polynomials in `q` and `t`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A monomial `q^q t^t`, ordered graded-lexicographically with `q < t`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mono {
    pub q: u32,
    pub t: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { q: 0, t: 0 };

    pub fn new(q: u32, t: u32) -> Self {
        Mono { q, t }
    }

    pub fn degree(self) -> u32 {
        self.q + self.t
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Mono) -> Mono {
        Mono { q: self.q + other.q, t: self.t + other.t }
    }

    pub fn divides(self, other: Mono) -> bool {
        self.q <= other.q && self.t <= other.t
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(self, other: Mono) -> Mono {
        Mono { q: self.q - other.q, t: self.t - other.t }
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then(self.t.cmp(&other.t))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `Z[q, t]`. Terms are kept sorted ascending in graded-lex
/// order with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly2 {
    terms: Vec<(Mono, BigInt)>,
}

impl IntPoly2 {
    pub fn zero() -> Self {
        IntPoly2 { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            IntPoly2 { terms: vec![(Mono::ONE, c)] }
        }
    }

    pub fn monomial(c: BigInt, m: Mono) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            IntPoly2 { terms: vec![(m, c)] }
        }
    }

    pub fn q() -> Self {
        Self::monomial(BigInt::one(), Mono::new(1, 0))
    }

    pub fn t() -> Self {
        Self::monomial(BigInt::one(), Mono::new(0, 1))
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms<I: IntoIterator<Item = (Mono, BigInt)>>(it: I) -> Self {
        let mut v: Vec<(Mono, BigInt)> = it.into_iter().collect();
        v.sort_by_key(|a| a.0);
        Self::from_sorted_with_dups(v)
    }

    fn from_sorted_with_dups(v: Vec<(Mono, BigInt)>) -> Self {
        let mut out: Vec<(Mono, BigInt)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        IntPoly2 { terms: out }
    }

    pub fn terms(&self) -> &[(Mono, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Mono::ONE && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == Mono::ONE)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    /// Smallest term in graded-lex order; this is the term whose sign is
    /// normalized in canonical fractions.
    pub fn lowest(&self) -> Option<&(Mono, BigInt)> {
        self.terms.first()
    }

    pub fn leading(&self) -> Option<&(Mono, BigInt)> {
        self.terms.last()
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 if self.terms[0].0 == Mono::ONE => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn deg_q(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.q).max().unwrap_or(0)
    }

    pub fn deg_t(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.t).max().unwrap_or(0)
    }

    pub fn min_q(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.q).min().unwrap_or(0)
    }

    pub fn min_t(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.t).min().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.last().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    /// Gcd of the integer coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn max_norm(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c.abs()).max().unwrap_or_default()
    }

    pub fn neg(&self) -> Self {
        IntPoly2 { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Greater
            } else if j == b.len() {
                Ordering::Less
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        IntPoly2 { terms: out }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].1, other.terms[0].0);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].1, self.terms[0].0);
        }
        let mut acc: BTreeMap<Mono, BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(*mb);
                let p = ca * cb;
                match acc.get_mut(&m) {
                    Some(c) => *c += p,
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        IntPoly2 { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn mul_term(&self, c: &BigInt, m: Mono) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly2 { terms: self.terms.iter().map(|(mm, cc)| (mm.mul(m), cc * c)).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        self.mul_term(c, Mono::ONE)
    }

    /// Divides every coefficient by `c`, which must divide them exactly.
    pub fn div_int(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        IntPoly2 { terms: self.terms.iter().map(|(m, cc)| (*m, cc / c)).collect() }
    }

    /// Divides by a monomial that divides every term.
    pub fn div_mono(&self, m: Mono) -> Self {
        if m == Mono::ONE {
            return self.clone();
        }
        IntPoly2 { terms: self.terms.iter().map(|(mm, c)| (mm.div(m), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact division; `None` if `d` does not divide `self` in `Z[q,t]`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.terms.len() == 1 {
            let (dm, dc) = &d.terms[0];
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !dm.divides(*m) {
                    return None;
                }
                let (qq, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return None;
                }
                out.push((m.div(*dm), qq));
            }
            return Some(IntPoly2 { terms: out });
        }
        if d.deg_q() > self.deg_q() || d.deg_t() > self.deg_t() || d.terms.len() > self.terms.len() && self.terms.len() == 1 {
            return None;
        }
        let (lm, lc) = d.terms.last().unwrap();
        let mut rem: BTreeMap<Mono, BigInt> = self.terms.iter().cloned().collect();
        let mut quot: Vec<(Mono, BigInt)> = Vec::new();
        while let Some((&m, c)) = rem.iter().next_back() {
            if !lm.divides(m) {
                return None;
            }
            let (qc, r) = c.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            let qm = m.div(*lm);
            for (dm, dc) in &d.terms {
                let key = dm.mul(qm);
                let prod = dc * &qc;
                let remove = match rem.get_mut(&key) {
                    Some(v) => {
                        *v -= prod;
                        v.is_zero()
                    }
                    None => {
                        rem.insert(key, -prod);
                        false
                    }
                };
                if remove {
                    rem.remove(&key);
                }
            }
            quot.push((qm, qc));
        }
        quot.reverse();
        Some(IntPoly2 { terms: quot })
    }

    /// Evaluates `q` at an integer, giving a dense univariate polynomial in `t`.
    pub fn eval_q(&self, x: &BigInt) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.deg_t() as usize + 1];
        let mut powers: Vec<BigInt> = vec![BigInt::one()];
        for (m, c) in &self.terms {
            while powers.len() <= m.q as usize {
                let next = powers.last().unwrap() * x;
                powers.push(next);
            }
            out[m.t as usize] += c * &powers[m.q as usize];
        }
        super::upoly::trim(&mut out);
        out
    }

    /// Coefficients as dense polynomials in `q`, indexed by the power of `t`.
    pub fn to_t_major(&self) -> Vec<Vec<BigInt>> {
        let mut out: Vec<Vec<BigInt>> = vec![Vec::new(); self.deg_t() as usize + 1];
        for (m, c) in &self.terms {
            let row = &mut out[m.t as usize];
            if row.len() <= m.q as usize {
                row.resize(m.q as usize + 1, BigInt::zero());
            }
            row[m.q as usize] = c.clone();
        }
        if self.is_zero() {
            out.clear();
        }
        out
    }

    pub fn from_t_major(rows: &[Vec<BigInt>]) -> Self {
        let mut terms = Vec::new();
        for (tj, row) in rows.iter().enumerate() {
            for (qi, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    terms.push((Mono::new(qi as u32, tj as u32), c.clone()));
                }
            }
        }
        Self::from_terms(terms)
    }

    /// Substitutes `q -> q^k`, `t -> t^k`.
    pub fn dilate(&self, k: u32) -> Self {
        IntPoly2 { terms: self.terms.iter().map(|(m, c)| (Mono::new(m.q * k, m.t * k), c.clone())).collect() }
    }

    /// Returns `q^{deg_q} p(1/q, t)`.
    pub fn reverse_q(&self) -> Self {
        let d = self.deg_q();
        Self::from_terms(self.terms.iter().map(|(m, c)| (Mono::new(d - m.q, m.t), c.clone())))
    }

    /// Substitutes `q -> t`.
    pub fn q_to_t(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (Mono::new(0, m.q + m.t), c.clone())))
    }

    pub fn eval_mod(&self, p: u64, q0: u64, t0: u64) -> u64 {
        let mut acc: u64 = 0;
        for (m, c) in &self.terms {
            let cm = bigint_mod(c, p);
            let v = mulmod(mulmod(cm, powmod(q0, m.q as u64, p), p), powmod(t0, m.t as u64, p), p);
            acc = addmod(acc, v, p);
        }
        acc
    }
}

pub(crate) fn bigint_mod(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    r.try_into().unwrap()
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn addmod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

pub(crate) fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

fn write_mono(f: &mut fmt::Formatter<'_>, m: Mono) -> fmt::Result {
    let mut parts = Vec::new();
    match m.q {
        0 => {}
        1 => parts.push("q".to_string()),
        e => parts.push(format!("q^{e}")),
    }
    match m.t {
        0 => {}
        1 => parts.push("t".to_string()),
        e => parts.push(format!("t^{e}")),
    }
    write!(f, "{}", parts.join("*"))
}

impl fmt::Display for IntPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if *m == Mono::ONE {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_mono(f, *m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
