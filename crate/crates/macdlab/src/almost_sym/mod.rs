//! Almost-symmetric functions `sum c x^a m_lambda[X_k]`, where
//! `X_k = x_{k+1} + x_{k+2} + ...` is the tail alphabet past the window `k`.

mod ops;
mod serial;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::combinatorics::{distinct_permutations, rearrangement_count, sort, Partition};
use crate::error::{Error, Result};
use crate::finite_daha::FinitePoly;
use crate::qt_field::RatQT;
use crate::symfunc::{plethysm, Alphabet, Atom, SymFunc};

pub use ops::{lower, lower_ct_check, omega_star, omega_star_full, omega_tilde, partial_symmetrize, sigma_tilde};

/// Key of a term: the window exponents `a` and the tail partition `lambda`.
pub type TermKey = (Vec<usize>, Partition);

/// An element of the ring of almost-symmetric functions, stored at a fixed window.
///
/// Equality widens both sides to the larger window first.
#[derive(Clone, Debug)]
pub struct AlmostSym {
    window: usize,
    terms: BTreeMap<TermKey, RatQT>,
}

impl AlmostSym {
    pub fn zero(window: usize) -> Self {
        AlmostSym { window, terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::term(Vec::new(), Partition::empty(), RatQT::one())
    }

    /// `c x^a m_lambda[X_k]` with `k = len(a)`.
    pub fn term(a: Vec<usize>, lambda: Partition, c: RatQT) -> Self {
        let mut f = AlmostSym::zero(a.len());
        f.add_term(a, lambda, &c);
        f
    }

    /// The monomial `x^a` at window `len(a)`.
    pub fn monomial(a: Vec<usize>) -> Self {
        Self::term(a, Partition::empty(), RatQT::one())
    }

    /// `x_i` at window `i`.
    pub fn var(i: usize) -> Self {
        let mut a = vec![0; i];
        a[i - 1] = 1;
        Self::monomial(a)
    }

    /// `F[X_k]`.
    pub fn tail_sym(f: &SymFunc, k: usize) -> Self {
        let mut out = AlmostSym::zero(k);
        for (p, c) in f.terms() {
            out.add_term(vec![0; k], p.clone(), c);
        }
        out
    }

    /// `F[X]` for the full alphabet `X = x_1 + x_2 + ...`.
    pub fn sym(f: &SymFunc) -> Self {
        Self::tail_sym(f, 0)
    }

    pub fn from_terms<I: IntoIterator<Item = (TermKey, RatQT)>>(window: usize, it: I) -> Result<Self> {
        let mut out = AlmostSym::zero(window);
        for ((a, p), c) in it {
            if a.len() != window {
                return Err(Error::LengthMismatch(a.len(), window));
            }
            out.add_term(a, p, &c);
        }
        Ok(out)
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn terms(&self) -> &BTreeMap<TermKey, RatQT> {
        &self.terms
    }

    pub fn coeff(&self, a: &[usize], lambda: &Partition) -> RatQT {
        self.terms.get(&(a.to_vec(), lambda.clone())).cloned().unwrap_or_default()
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

    /// Highest `|a| + |lambda|`, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(term_degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(term_degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn add_term(&mut self, a: Vec<usize>, lambda: Partition, c: &RatQT) {
        debug_assert_eq!(a.len(), self.window);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((a, lambda)) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * other`, widening as needed.
    pub fn add_assign_scaled(&mut self, other: &AlmostSym, c: &RatQT) {
        if c.is_zero() {
            return;
        }
        let w = self.window.max(other.window);
        if self.window < w {
            *self = self.widen(w);
        }
        let o = other.widen(w);
        for ((a, p), x) in o.terms {
            self.add_term(a, p, &(&x * c));
        }
    }

    pub fn scale(&self, c: &RatQT) -> Self {
        let mut out = AlmostSym::zero(self.window);
        for ((a, p), x) in &self.terms {
            out.add_term(a.clone(), p.clone(), &(x * c));
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&RatQT) -> RatQT) -> Self {
        let mut out = AlmostSym::zero(self.window);
        for ((a, p), x) in &self.terms {
            out.add_term(a.clone(), p.clone(), &f(x));
        }
        out
    }

    /// The part of degree `d`.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        AlmostSym {
            window: self.window,
            terms: self.terms.iter().filter(|(k, _)| term_degree(k) == d).map(|(k, c)| (k.clone(), c.clone())).collect(),
        }
    }

    /// The same element presented at window `max(k, window)`.
    ///
    /// One step uses `m_lambda[X_k] = m_lambda[X_{k+1}] + sum_r x_{k+1}^r m_{lambda - r}[X_{k+1}]`
    /// over the distinct parts `r` of `lambda`.
    pub fn widen(&self, k: usize) -> Self {
        let mut cur = self.clone();
        while cur.window < k {
            let mut next = AlmostSym::zero(cur.window + 1);
            for ((a, p), c) in &cur.terms {
                let mut a0 = a.clone();
                a0.push(0);
                next.add_term(a0, p.clone(), c);
                let mut last = None;
                for &r in &p.0 {
                    if last == Some(r) {
                        continue;
                    }
                    last = Some(r);
                    let mut ar = a.clone();
                    ar.push(r);
                    next.add_term(ar, p.remove_part(r).expect("r is a part"), c);
                }
            }
            cur = next;
        }
        cur
    }

    /// `pi_m`: sets `x_{m+1} = x_{m+2} = ... = 0`.
    pub fn truncate_pi(&self, m: usize) -> Result<FinitePoly> {
        let k = self.window;
        if m < k {
            return Err(Error::Precondition(format!("truncation to {m} variables below window {k}")));
        }
        let mut out = FinitePoly::zero(m);
        for ((a, p), c) in &self.terms {
            if p.len() > m - k {
                continue;
            }
            let mut padded = p.0.clone();
            padded.resize(m - k, 0);
            for perm in distinct_permutations(&padded) {
                let mut e = a.clone();
                e.extend_from_slice(&perm);
                out.add_term(e, c);
            }
        }
        Ok(out)
    }

    /// The unique `g` at window `k` with `pi_m(g) = f`, for `f` in `m` variables
    /// symmetric in `x_{k+1}, ..., x_m` with `m - k >= deg f`.
    pub fn lift(f: &FinitePoly, k: usize) -> Result<Self> {
        let m = f.nvars();
        if k > m {
            return Err(Error::Precondition(format!("window {k} above variable count {m}")));
        }
        let d = f.degree().unwrap_or(0);
        if m - k < d {
            return Err(Error::Precondition(format!("{} tail variables cannot determine degree {d}", m - k)));
        }
        let mut out = AlmostSym::zero(k);
        let mut seen: BTreeMap<TermKey, u128> = BTreeMap::new();
        for (e, c) in f.terms() {
            let lam = sort(&e[k..]);
            let mut canon = e[..k].to_vec();
            let mut tail = lam.0.clone();
            tail.resize(m - k, 0);
            canon.extend_from_slice(&tail);
            if f.coeff(&canon) != *c {
                return Err(Error::Precondition(format!("not symmetric past window {k}: {e:?}")));
            }
            let key = (e[..k].to_vec(), lam);
            *seen.entry(key.clone()).or_default() += 1;
            if &canon == e {
                out.add_term(key.0, key.1, c);
            }
        }
        for ((_, lam), count) in seen {
            let mut tail = lam.0.clone();
            tail.resize(m - k, 0);
            if count != rearrangement_count(&tail) {
                return Err(Error::Precondition(format!("not symmetric past window {k}: orbit of {lam} incomplete")));
            }
        }
        Ok(out)
    }

    pub fn mul_ref(&self, o: &AlmostSym) -> Self {
        let w = self.window.max(o.window);
        let (a, b) = (self.widen(w), o.widen(w));
        let mut out = AlmostSym::zero(w);
        for ((ea, pa), ca) in &a.terms {
            for ((eb, pb), cb) in &b.terms {
                let e: Vec<usize> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = ca * cb;
                for (nu, n) in SymFunc::m(pa).mul_ref(&SymFunc::m(pb)).into_terms() {
                    out.add_term(e.clone(), nu, &(&n * &c));
                }
            }
        }
        out
    }

    /// Groups the terms by tail partition as polynomials in the window variables.
    pub(crate) fn by_tail(&self) -> BTreeMap<Partition, FinitePoly> {
        let mut out: BTreeMap<Partition, FinitePoly> = BTreeMap::new();
        for ((a, p), c) in &self.terms {
            out.entry(p.clone()).or_insert_with(|| FinitePoly::zero(self.window)).add_term(a.clone(), c);
        }
        out
    }

    /// Groups the terms by window exponent as symmetric functions of the tail.
    pub fn by_window(&self) -> BTreeMap<Vec<usize>, SymFunc> {
        let mut out: BTreeMap<Vec<usize>, BTreeMap<Partition, RatQT>> = BTreeMap::new();
        for ((a, p), c) in &self.terms {
            out.entry(a.clone()).or_default().insert(p.clone(), c.clone());
        }
        out.into_iter().map(|(a, m)| (a, SymFunc::from_terms(m))).collect()
    }

    /// Applies `op` to the window part of every tail group.
    pub(crate) fn map_window_part(&self, op: impl Fn(&FinitePoly) -> FinitePoly) -> Self {
        let mut out = AlmostSym::zero(self.window);
        for (p, poly) in self.by_tail() {
            for (a, c) in op(&poly).terms() {
                out.add_term(a.clone(), p.clone(), c);
            }
        }
        out
    }

    /// The full-alphabet presentation `sum c x^a m_lambda[X]`, with `X = x_1 + x_2 + ...`.
    ///
    /// `m_lambda[X - x_1 - ... - x_k]` is expanded plethystically.
    pub fn to_full(&self) -> BTreeMap<TermKey, RatQT> {
        let k = self.window;
        let neg: Alphabet = (1..=k).fold(Alphabet::x(), |acc, i| acc.plus(&Alphabet::letter(i).scaled(&-RatQT::one())));
        let mut cache: BTreeMap<Partition, Vec<(Vec<usize>, SymFunc)>> = BTreeMap::new();
        let mut out: BTreeMap<TermKey, RatQT> = BTreeMap::new();
        for ((a, p), c) in &self.terms {
            let pieces = cache.entry(p.clone()).or_insert_with(|| {
                let r = plethysm(&SymFunc::m(p), &neg, p.size(), (0, 0)).expect("no z letters");
                debug_assert!(r.alphabet.is_none_or(|x| x == Atom::X));
                r.terms()
                    .iter()
                    .map(|(key, g)| {
                        let mut b = vec![0usize; k];
                        for (i, &e) in key.iter().skip(1).enumerate() {
                            b[i] = e as usize;
                        }
                        (b, g.clone())
                    })
                    .collect()
            });
            for (b, g) in pieces.iter() {
                let e: Vec<usize> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                for (nu, x) in g.terms() {
                    let entry = out.entry((e.clone(), nu.clone())).or_default();
                    *entry += &(x * c);
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Inverse of [`AlmostSym::to_full`], landing at window `k`.
    pub fn from_full(k: usize, terms: &BTreeMap<TermKey, RatQT>) -> Result<Self> {
        let mut out = AlmostSym::zero(k);
        for ((a, p), c) in terms {
            if a.len() != k {
                return Err(Error::LengthMismatch(a.len(), k));
            }
            let piece = AlmostSym::term(Vec::new(), p.clone(), c.clone()).widen(k);
            out.add_assign_scaled(&piece.mul_ref(&AlmostSym::monomial(a.clone())), &RatQT::one());
        }
        Ok(out)
    }

    /// `F` with `F[X] = self`, when the element is symmetric.
    pub fn as_symmetric(&self) -> Option<SymFunc> {
        let full = self.to_full();
        if full.keys().any(|(a, _)| a.iter().any(|&e| e != 0)) {
            return None;
        }
        Some(SymFunc::from_terms(full.into_iter().map(|((_, p), c)| (p, c))))
    }

    /// Coefficients at `keys`, in order.
    pub fn coefficient_vector(&self, keys: &[TermKey]) -> Vec<RatQT> {
        keys.iter().map(|(a, p)| self.coeff(a, p)).collect()
    }
}

fn term_degree(k: &TermKey) -> usize {
    k.0.iter().sum::<usize>() + k.1.size()
}

impl PartialEq for AlmostSym {
    fn eq(&self, o: &Self) -> bool {
        let w = self.window.max(o.window);
        self.widen(w).terms == o.widen(w).terms
    }
}

impl Eq for AlmostSym {}

impl Add for &AlmostSym {
    type Output = AlmostSym;
    fn add(self, o: &AlmostSym) -> AlmostSym {
        let mut r = self.clone();
        r.add_assign_scaled(o, &RatQT::one());
        r
    }
}

impl Sub for &AlmostSym {
    type Output = AlmostSym;
    fn sub(self, o: &AlmostSym) -> AlmostSym {
        let mut r = self.clone();
        r.add_assign_scaled(o, &-RatQT::one());
        r
    }
}

impl Mul for &AlmostSym {
    type Output = AlmostSym;
    fn mul(self, o: &AlmostSym) -> AlmostSym {
        self.mul_ref(o)
    }
}

impl Neg for &AlmostSym {
    type Output = AlmostSym;
    fn neg(self) -> AlmostSym {
        self.scale(&-RatQT::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::partitions_up_to;
    use proptest::prelude::*;

    fn part(v: &[usize]) -> Partition {
        Partition(v.to_vec())
    }

    #[test]
    fn widen_examples() {
        let f = AlmostSym::term(vec![0], part(&[1]), RatQT::one());
        let want = &AlmostSym::monomial(vec![0, 1]) + &AlmostSym::term(vec![0, 0], part(&[1]), RatQT::one());
        assert_eq!(f.widen(2).terms(), want.terms());
        let g = AlmostSym::sym(&SymFunc::m(&part(&[1, 1])));
        let want = &AlmostSym::term(vec![1], part(&[1]), RatQT::one()) + &AlmostSym::term(vec![0], part(&[1, 1]), RatQT::one());
        assert_eq!(g.widen(1).terms(), want.terms());
        assert_eq!(g.widen(3), g);
        assert!((&g.widen(3) - &g).is_zero());
    }

    #[test]
    fn truncation_examples() {
        let x1sq = AlmostSym::monomial(vec![2]);
        for m in 1..=4 {
            let mut e = vec![0; m];
            e[0] = 2;
            assert_eq!(x1sq.truncate_pi(m).unwrap(), FinitePoly::monomial(e, RatQT::one()));
        }
        let f = AlmostSym::term(vec![0], part(&[1]), RatQT::one());
        assert_eq!(f.truncate_pi(2).unwrap(), FinitePoly::var(2, 2));
        assert!(AlmostSym::monomial(vec![0, 0, 1]).truncate_pi(2).is_err());
    }

    #[test]
    fn lift_examples() {
        let f = &FinitePoly::var(4, 2) + &(&FinitePoly::var(4, 3) + &FinitePoly::var(4, 4));
        assert_eq!(AlmostSym::lift(&f, 1).unwrap(), AlmostSym::term(vec![0], part(&[1]), RatQT::one()));
        assert!(AlmostSym::lift(&FinitePoly::var(3, 2), 1).is_err());
        assert!(AlmostSym::lift(&FinitePoly::monomial(vec![0, 2, 1], RatQT::one()), 1).is_err());
    }

    #[test]
    fn full_presentation_round_trip() {
        for lam in partitions_up_to(4) {
            for k in 0..=3 {
                let f = AlmostSym::term(vec![1; k], lam.clone(), RatQT::q());
                let full = f.to_full();
                assert_eq!(AlmostSym::from_full(k, &full).unwrap(), f, "{lam} k={k}");
            }
        }
        let x1 = AlmostSym::var(1);
        assert_eq!(x1.as_symmetric(), None);
        let p1 = &x1 + &AlmostSym::term(vec![0], part(&[1]), RatQT::one());
        assert_eq!(p1.as_symmetric(), Some(SymFunc::m(&part(&[1]))));
    }

    #[test]
    fn json_layout() {
        let f = &AlmostSym::monomial(vec![2]) + &AlmostSym::term(vec![1], part(&[1]), RatQT::qt(-1, 0));
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"window":1,"terms":[{"x":[1],"tail":[1],"coeff":"1/q"},{"x":[2],"tail":[],"coeff":"1"}]}"#);
        let back: AlmostSym = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }

    pub(crate) fn arb_almost(window: usize, deg: usize) -> impl Strategy<Value = AlmostSym> {
        let lams: Vec<Partition> = partitions_up_to(deg);
        let nl = lams.len();
        prop::collection::vec((prop::collection::vec(0..=deg, window), 0..nl, -3i64..=3, -1i64..=1), 1..4).prop_map(move |ts| {
            let mut f = AlmostSym::zero(window);
            for (a, li, c, e) in ts {
                f.add_term(a, lams[li].clone(), &(&RatQT::from_int(c) * &RatQT::qt(0, e)));
            }
            f
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn truncation_is_multiplicative(f in arb_almost(2, 2), g in arb_almost(1, 2)) {
            let m = 2 + 4 + 1;
            let lhs = f.mul_ref(&g).truncate_pi(m).unwrap();
            let rhs = &f.truncate_pi(m).unwrap() * &g.truncate_pi(m).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn lift_inverts_truncation(f in arb_almost(2, 2)) {
            let d = f.degree().unwrap_or(0);
            let m = 2 + 2 * d + 1;
            let back = AlmostSym::lift(&f.truncate_pi(m).unwrap(), 2).unwrap();
            prop_assert_eq!(back, f);
        }

        #[test]
        fn widening_preserves_truncation(f in arb_almost(1, 3), extra in 0usize..3) {
            prop_assert_eq!(f.widen(1 + extra).truncate_pi(8).unwrap(), f.truncate_pi(8).unwrap());
        }
    }
}
