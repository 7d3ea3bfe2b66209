//! Symmetric functions over `Q(q, t)`.
//!
//! Elements are stored in the monomial basis; other bases are reached through
//! [`SymFunc::expand`] and [`SymFunc::from_basis`].

mod bases;
mod jing;
mod macdonald;
mod plethysm;
mod structure;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::combinatorics::{partitions, Partition};
use crate::qt_field::RatQT;

pub use bases::Basis;
pub(crate) use jing::jing_m;
pub use jing::{dual_q_kernel, hall_littlewood_p, hl_classical_p, jing, jing_kernel, v_lambda};
pub use macdonald::{macdonald_p, qt_pairing, schur_jacobi_trudi};
pub use plethysm::{exp_truncated, plethysm, plethysm_scalar, Alphabet, Atom, PlethysmResult};

/// A symmetric function, stored as `sum c_lambda m_lambda`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SymFunc {
    terms: BTreeMap<Partition, RatQT>,
}

impl SymFunc {
    pub fn zero() -> Self {
        SymFunc::default()
    }

    pub fn one() -> Self {
        SymFunc::scalar(RatQT::one())
    }

    pub fn scalar(c: RatQT) -> Self {
        SymFunc::from_terms([(Partition::empty(), c)])
    }

    /// The monomial symmetric function `m_lambda`.
    pub fn m(lambda: &Partition) -> Self {
        SymFunc::from_terms([(lambda.clone(), RatQT::one())])
    }

    /// Collects terms, summing repeats and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Partition, RatQT)>>(it: I) -> Self {
        let mut terms: BTreeMap<Partition, RatQT> = BTreeMap::new();
        for (p, c) in it {
            if c.is_zero() {
                continue;
            }
            match terms.entry(p) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    *o.get_mut() += &c;
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
            }
        }
        SymFunc { terms }
    }

    pub fn terms(&self) -> &BTreeMap<Partition, RatQT> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Partition, RatQT> {
        self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> RatQT {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest degree present; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|p| p.size()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|p| p.size());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn homogeneous_part(&self, d: usize) -> SymFunc {
        SymFunc { terms: self.terms.iter().filter(|(p, _)| p.size() == d).map(|(p, c)| (p.clone(), c.clone())).collect() }
    }

    pub fn scale(&self, c: &RatQT) -> SymFunc {
        if c.is_zero() {
            return SymFunc::zero();
        }
        SymFunc { terms: self.terms.iter().map(|(p, x)| (p.clone(), x * c)).collect() }
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&RatQT) -> RatQT) -> SymFunc {
        SymFunc::from_terms(self.terms.iter().map(|(p, c)| (p.clone(), f(c))))
    }

    pub fn add_ref(&self, o: &SymFunc) -> SymFunc {
        let mut out = self.clone();
        out.add_assign_scaled(o, &RatQT::one());
        out
    }

    /// `self += c * o`.
    pub fn add_assign_scaled(&mut self, o: &SymFunc, c: &RatQT) {
        if c.is_zero() {
            return;
        }
        for (p, x) in &o.terms {
            let v = if c.is_one() { x.clone() } else { x * c };
            match self.terms.entry(p.clone()) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(v);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += &v;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
    }

    pub fn mul_ref(&self, o: &SymFunc) -> SymFunc {
        let mut acc: BTreeMap<Partition, RatQT> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let c = ca * cb;
                for (nu, k) in structure::m_product(a, b).iter() {
                    let v = c.mul_int(*k);
                    *acc.entry(nu.clone()).or_default() += &v;
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        SymFunc { terms: acc }
    }

    pub fn pow(&self, e: usize) -> SymFunc {
        let mut r = SymFunc::one();
        for _ in 0..e {
            r = r.mul_ref(self);
        }
        r
    }

    /// `e_n`.
    pub fn e(n: usize) -> SymFunc {
        SymFunc::m(&Partition(vec![1; n]))
    }

    /// `h_n = sum_{|lambda| = n} m_lambda`.
    pub fn h(n: usize) -> SymFunc {
        SymFunc::from_terms(partitions(n).into_iter().map(|p| (p, RatQT::one())))
    }

    /// `p_n = m_(n)`, and `p_0 = 1`.
    pub fn p(n: usize) -> SymFunc {
        if n == 0 {
            return SymFunc::one();
        }
        SymFunc::m(&Partition(vec![n]))
    }

    /// `h_n[(1 - t) X] = sum_{|lambda| = n} (1-t)^{l(lambda)} m_lambda`.
    pub fn h_one_minus_t(n: usize) -> SymFunc {
        let omt = RatQT::one() - RatQT::t();
        SymFunc::from_terms(partitions(n).into_iter().map(|p| {
            let c = omt.pow(p.len() as i64);
            (p, c)
        }))
    }

    /// The adjoint of multiplication by `h_k` under the Hall pairing.
    pub fn h_perp(&self, k: usize) -> SymFunc {
        if k == 0 {
            return self.clone();
        }
        SymFunc::from_terms(self.terms.iter().filter_map(|(p, c)| p.remove_part(k).map(|r| (r, c.clone()))))
    }

    /// The adjoint of multiplication by `e_k` under the Hall pairing.
    pub fn e_perp(&self, k: usize) -> SymFunc {
        let mut acc = SymFunc::zero();
        for (p, c) in &self.terms {
            acc.add_assign_scaled(&structure::e_perp_m(k, p), c);
        }
        acc
    }

    /// Substitutes `q -> 1/q` in every coefficient.
    pub fn subs_q_inv(&self) -> SymFunc {
        self.map_coeffs(|c| c.subs_q_inv())
    }

    /// Expansion in another basis, degree by degree.
    pub fn expand(&self, basis: Basis) -> BTreeMap<Partition, RatQT> {
        bases::expand(self, basis)
    }

    /// Builds `sum c_lambda b_lambda` for the basis elements `b_lambda`.
    pub fn from_basis(basis: Basis, coeffs: &BTreeMap<Partition, RatQT>) -> SymFunc {
        let mut acc = SymFunc::zero();
        for (p, c) in coeffs {
            acc.add_assign_scaled(&basis.element(p), c);
        }
        acc
    }

    /// Renders in a named basis, e.g. `P[2] + (1/(q - t))*P[1,1]`.
    pub fn display_in(&self, basis: Basis, alphabet: &str) -> String {
        let coeffs = if basis == Basis::Monomial { self.terms.clone() } else { self.expand(basis) };
        render_terms(coeffs.iter().rev(), basis.symbol(), alphabet)
    }
}

pub(crate) fn render_terms<'a, I>(terms: I, symbol: &str, alphabet: &str) -> String
where
    I: Iterator<Item = (&'a Partition, &'a RatQT)>,
{
    let mut parts = Vec::new();
    for (p, c) in terms {
        let base = if p.is_empty() { String::new() } else { format!("{symbol}[{p}]{alphabet}") };
        parts.push(render_coeff_times(c, &base));
    }
    join_signed(parts)
}

/// `c*base`, with the conventions `1*base = base` and `-1*base = -base`.
pub(crate) fn render_coeff_times(c: &RatQT, base: &str) -> String {
    if base.is_empty() {
        return c.to_string();
    }
    if c.is_one() {
        return base.to_string();
    }
    if (-c).is_one() {
        return format!("-{base}");
    }
    let s = c.to_string();
    let atomic = c.den().is_one() && c.num().nterms() == 1;
    if atomic {
        format!("{s}*{base}")
    } else {
        format!("({s})*{base}")
    }
}

pub(crate) fn join_signed(parts: Vec<String>) -> String {
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, s) in parts.into_iter().enumerate() {
        if i == 0 {
            out.push_str(&s);
        } else if let Some(rest) = s.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&s);
        }
    }
    out
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_terms(self.terms.iter().rev(), "m", ""))
    }
}

impl fmt::Debug for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymFunc({self})")
    }
}

impl Add<&SymFunc> for &SymFunc {
    type Output = SymFunc;
    fn add(self, o: &SymFunc) -> SymFunc {
        self.add_ref(o)
    }
}

impl Sub<&SymFunc> for &SymFunc {
    type Output = SymFunc;
    fn sub(self, o: &SymFunc) -> SymFunc {
        let mut out = self.clone();
        out.add_assign_scaled(o, &-RatQT::one());
        out
    }
}

impl Mul<&SymFunc> for &SymFunc {
    type Output = SymFunc;
    fn mul(self, o: &SymFunc) -> SymFunc {
        self.mul_ref(o)
    }
}

impl Neg for &SymFunc {
    type Output = SymFunc;
    fn neg(self) -> SymFunc {
        self.scale(&-RatQT::one())
    }
}

#[derive(Serialize, Deserialize)]
struct SymFuncRepr {
    basis: Basis,
    terms: Vec<(Partition, RatQT)>,
}

impl Serialize for SymFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SymFuncRepr { basis: Basis::Monomial, terms: self.terms.iter().map(|(p, c)| (p.clone(), c.clone())).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = SymFuncRepr::deserialize(d)?;
        let coeffs: BTreeMap<Partition, RatQT> = r.terms.into_iter().collect();
        Ok(SymFunc::from_basis(r.basis, &coeffs))
    }
}
