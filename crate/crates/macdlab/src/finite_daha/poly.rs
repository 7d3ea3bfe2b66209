//! Polynomials in `x_1, ..., x_n` over `Q(q, t)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinatorics::distinct_permutations;
use crate::error::{Error, Result};
use crate::qt_field::RatQT;
use crate::symfunc::SymFunc;

/// A polynomial in `n` variables, keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinitePoly {
    n: usize,
    terms: BTreeMap<Vec<usize>, RatQT>,
}

impl FinitePoly {
    pub fn zero(n: usize) -> Self {
        FinitePoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        FinitePoly::monomial(vec![0; n], RatQT::one())
    }

    pub fn monomial(exps: Vec<usize>, c: RatQT) -> Self {
        let n = exps.len();
        let mut p = FinitePoly::zero(n);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The variable `x_i`, 1-based.
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i - 1] = 1;
        FinitePoly::monomial(e, RatQT::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<usize>, RatQT)>>(n: usize, it: I) -> Self {
        let mut p = FinitePoly::zero(n);
        for (e, c) in it {
            p.add_term(e, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, RatQT> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Vec<usize>, RatQT> {
        self.terms
    }

    pub fn coeff(&self, e: &[usize]) -> RatQT {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add_term(&mut self, e: Vec<usize>, c: &RatQT) {
        debug_assert_eq!(e.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_assign_scaled(&mut self, other: &FinitePoly, c: &RatQT) {
        assert_eq!(self.n, other.n, "variable count mismatch");
        if c.is_zero() {
            return;
        }
        let one = c.is_one();
        for (e, a) in &other.terms {
            if one {
                self.add_term(e.clone(), a);
            } else {
                self.add_term(e.clone(), &(a * c));
            }
        }
    }

    pub fn scale(&self, c: &RatQT) -> Self {
        if c.is_zero() {
            return FinitePoly::zero(self.n);
        }
        FinitePoly { n: self.n, terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect() }
    }

    pub fn map_coeffs(&self, f: impl Fn(&RatQT) -> RatQT) -> Self {
        FinitePoly::from_terms(self.n, self.terms.iter().map(|(e, a)| (e.clone(), f(a))))
    }

    /// Multiplication by `x_i`, 1-based.
    pub fn mul_var(&self, i: usize) -> Self {
        self.mul_monomial(&unit(self.n, i))
    }

    pub fn mul_monomial(&self, m: &[usize]) -> Self {
        let terms = self.terms.iter().map(|(e, a)| (e.iter().zip(m).map(|(x, y)| x + y).collect(), a.clone())).collect();
        FinitePoly { n: self.n, terms }
    }

    pub fn mul_ref(&self, other: &FinitePoly) -> Self {
        assert_eq!(self.n, other.n, "variable count mismatch");
        let mut out = FinitePoly::zero(self.n);
        for (e1, a) in &self.terms {
            for (e2, b) in &other.terms {
                out.add_term(e1.iter().zip(e2).map(|(x, y)| x + y).collect(), &(a * b));
            }
        }
        out
    }

    /// Applies a permutation of variables: `x_i -> x_{perm[i]}` (0-based).
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut out = FinitePoly::zero(self.n);
        for (e, a) in &self.terms {
            let mut f = vec![0; self.n];
            for (i, &x) in e.iter().enumerate() {
                f[perm[i]] = x;
            }
            out.terms.insert(f, a.clone());
        }
        out
    }

    /// Keeps the terms whose exponent vectors satisfy `keep`.
    pub fn filter(&self, keep: impl Fn(&[usize]) -> bool) -> Self {
        FinitePoly { n: self.n, terms: self.terms.iter().filter(|(e, _)| keep(e)).map(|(e, a)| (e.clone(), a.clone())).collect() }
    }

    /// Exact quotient by `x_i - c x_j` (1-based), or an error if it leaves a remainder.
    pub fn div_linear(&self, i: usize, j: usize, c: &RatQT) -> Result<Self> {
        if i == 0 || j == 0 || i > self.n || j > self.n || i == j {
            return Err(Error::IndexOutOfRange(format!("divisor x_{i} - c x_{j} in {} variables", self.n)));
        }
        let (i, j) = (i - 1, j - 1);
        // Group by the exponents away from x_i, then synthetic division in x_i.
        let mut groups: BTreeMap<Vec<usize>, BTreeMap<usize, RatQT>> = BTreeMap::new();
        for (e, a) in &self.terms {
            let mut rest = e.clone();
            rest[i] = 0;
            groups.entry(rest).or_default().insert(e[i], a.clone());
        }
        // Coefficients of x_i^k are polynomials in the other variables; x_j
        // couples groups, so divide with those coefficients as FinitePolys.
        let mut by_power: BTreeMap<usize, FinitePoly> = BTreeMap::new();
        for (rest, row) in groups {
            for (k, a) in row {
                by_power.entry(k).or_insert_with(|| FinitePoly::zero(self.n)).add_term(rest.clone(), &a);
            }
        }
        let Some(&top) = by_power.keys().next_back() else {
            return Ok(FinitePoly::zero(self.n));
        };
        let shift_j = |p: &FinitePoly| p.mul_monomial(&unit(self.n, j + 1)).scale(c);
        let mut quotient = FinitePoly::zero(self.n);
        let mut carry = FinitePoly::zero(self.n);
        for k in (0..=top).rev() {
            let mut b = by_power.remove(&k).unwrap_or_else(|| FinitePoly::zero(self.n));
            b.add_assign_scaled(&carry, &RatQT::one());
            if k == 0 {
                if !b.is_zero() {
                    return Err(Error::Precondition(format!("x_{} - c x_{} does not divide", i + 1, j + 1)));
                }
                break;
            }
            let mut lift = unit(self.n, i + 1);
            lift[i] = k - 1;
            quotient.add_assign_scaled(&b.mul_monomial(&lift), &RatQT::one());
            carry = shift_j(&b);
        }
        Ok(quotient)
    }

    /// The restriction `F[x_1 + ... + x_n]` of a symmetric function.
    pub fn from_symfunc(f: &SymFunc, n: usize) -> Self {
        let mut out = FinitePoly::zero(n);
        for (lam, c) in f.terms() {
            if lam.len() > n {
                continue;
            }
            let mut padded = lam.0.clone();
            padded.resize(n, 0);
            for e in distinct_permutations(&padded) {
                out.add_term(e, c);
            }
        }
        out
    }

    /// Terms in graded-lexicographic order, highest first.
    pub fn sorted_terms(&self) -> Vec<(&Vec<usize>, &RatQT)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            let da: usize = a.0.iter().sum();
            let db: usize = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        v
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<usize> {
    let mut e = vec![0; n];
    e[i - 1] = 1;
    e
}

impl fmt::Display for FinitePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.sorted_terms() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, x) })
                .collect();
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (mono.is_empty(), c.is_one()) {
                (true, _) => write!(f, "({c})")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "({c})*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl Serialize for FinitePoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in self.sorted_terms() {
            let key: Vec<String> = e.iter().map(|x| x.to_string()).collect();
            seq.serialize_element(&format!("{}: {}", key.join(","), c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for FinitePoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let items = Vec::<String>::deserialize(d)?;
        let mut n = None;
        let mut terms = Vec::new();
        for item in items {
            let (k, v) = item.split_once(':').ok_or_else(|| D::Error::custom("expected `exponents: coeff`"))?;
            let e: Vec<usize> = k
                .split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(D::Error::custom)?;
            if *n.get_or_insert(e.len()) != e.len() {
                return Err(D::Error::custom("inconsistent exponent lengths"));
            }
            let c: RatQT = v.trim().parse().map_err(|e: Error| D::Error::custom(e.to_string()))?;
            terms.push((e, c));
        }
        Ok(FinitePoly::from_terms(n.unwrap_or(0), terms))
    }
}

impl Add for &FinitePoly {
    type Output = FinitePoly;
    fn add(self, o: &FinitePoly) -> FinitePoly {
        let mut r = self.clone();
        r.add_assign_scaled(o, &RatQT::one());
        r
    }
}

impl Sub for &FinitePoly {
    type Output = FinitePoly;
    fn sub(self, o: &FinitePoly) -> FinitePoly {
        let mut r = self.clone();
        r.add_assign_scaled(o, &-RatQT::one());
        r
    }
}

impl Mul for &FinitePoly {
    type Output = FinitePoly;
    fn mul(self, o: &FinitePoly) -> FinitePoly {
        self.mul_ref(o)
    }
}

impl Neg for &FinitePoly {
    type Output = FinitePoly;
    fn neg(self) -> FinitePoly {
        self.scale(&-RatQT::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Partition;

    fn x(n: usize, i: usize) -> FinitePoly {
        FinitePoly::var(n, i)
    }

    #[test]
    fn linear_division() {
        let t = RatQT::t();
        let f = &(&x(3, 1) - &x(3, 2).scale(&t)) * &(&(&x(3, 1) * &x(3, 3)) + &x(3, 2));
        let g = f.div_linear(1, 2, &t).unwrap();
        assert_eq!(g, &(&x(3, 1) * &x(3, 3)) + &x(3, 2));
        assert!(x(3, 1).div_linear(2, 3, &RatQT::one()).is_err());
    }

    #[test]
    fn symfunc_restriction() {
        let p = FinitePoly::from_symfunc(&SymFunc::m(&Partition(vec![2, 1])), 2);
        assert_eq!(p, FinitePoly::from_terms(2, [(vec![2, 1], RatQT::one()), (vec![1, 2], RatQT::one())]));
        assert!(FinitePoly::from_symfunc(&SymFunc::m(&Partition(vec![1, 1, 1])), 2).is_zero());
    }

    #[test]
    fn json_round_trip() {
        let p = &x(2, 1).scale(&"q/(1-t)".parse().unwrap()) + &FinitePoly::one(2);
        let s = serde_json::to_string(&p).unwrap();
        let back: FinitePoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
