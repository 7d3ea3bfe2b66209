//! Plethystic substitution through the power-sum basis.
//!
//! `p_k[c * a] = c(q^k, t^k) * p_k[a]`, where `p_k` of a single letter or of
//! `z^e` is its `k`-th power and `p_k` of an alphabet `X` or a tail alphabet
//! stays symbolic.

use std::collections::BTreeMap;

use super::{Basis, SymFunc};
use crate::combinatorics::Partition;
use crate::error::{Error, Result};
use crate::qt_field::RatQT;

/// A building block of an alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Atom {
    /// The scalar alphabet `1`.
    One,
    /// The full alphabet `x_1 + x_2 + ...`.
    X,
    /// `x_{k+1} + x_{k+2} + ...`.
    Tail(usize),
    /// The single letter `x_i`, 1-based.
    Letter(usize),
    /// The formal letter `z`.
    Z,
}

/// A `Q(q,t)`-combination of atoms, each raised to an integer power.
#[derive(Clone, Debug, Default)]
pub struct Alphabet {
    terms: Vec<(RatQT, Atom, i64)>,
}

impl Alphabet {
    fn single(a: Atom, e: i64) -> Self {
        Alphabet { terms: vec![(RatQT::one(), a, e)] }
    }

    pub fn x() -> Self {
        Self::single(Atom::X, 1)
    }

    pub fn tail(k: usize) -> Self {
        Self::single(Atom::Tail(k), 1)
    }

    pub fn letter(i: usize) -> Self {
        Self::single(Atom::Letter(i), 1)
    }

    /// The monomial `z^e`.
    pub fn z(e: i64) -> Self {
        Self::single(Atom::Z, e)
    }

    /// A scalar alphabet such as `1 + 5t + q t^2`.
    pub fn scalar(c: RatQT) -> Self {
        Alphabet { terms: vec![(c, Atom::One, 0)] }
    }

    pub fn plus(&self, o: &Alphabet) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        Alphabet { terms }
    }

    pub fn scaled(&self, c: &RatQT) -> Self {
        Alphabet { terms: self.terms.iter().map(|(x, a, e)| (x * c, *a, *e)).collect() }
    }

    fn symmetric_atom(&self) -> Result<Option<Atom>> {
        let mut found = None;
        for (_, a, _) in &self.terms {
            if matches!(a, Atom::X | Atom::Tail(_)) {
                match found {
                    None => found = Some(*a),
                    Some(b) if b == *a => {}
                    Some(_) => return Err(Error::Precondition("at most one symmetric alphabet per plethysm".into())),
                }
            }
        }
        Ok(found)
    }

    fn max_letter(&self) -> usize {
        self.terms.iter().filter_map(|(_, a, _)| if let Atom::Letter(i) = a { Some(*i) } else { None }).max().unwrap_or(0)
    }
}

/// `F[A]`: monomials in `z` and the letters, with symmetric-function coefficients
/// in the (at most one) symmetric alphabet of `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlethysmResult {
    pub alphabet: Option<Atom>,
    /// Keys are `[z-exponent, x_1 exponent, ..., x_L exponent]`.
    terms: BTreeMap<Vec<i64>, SymFunc>,
}

impl PlethysmResult {
    pub fn terms(&self) -> &BTreeMap<Vec<i64>, SymFunc> {
        &self.terms
    }

    /// The coefficient of `z^{e} x^{letters}`.
    pub fn coeff(&self, z: i64, letters: &[i64]) -> SymFunc {
        let width = self.terms.keys().next().map_or(1, |k| k.len());
        if letters.iter().skip(width - 1).any(|&e| e != 0) {
            return SymFunc::zero();
        }
        let mut key = vec![0i64; width];
        key[0] = z;
        for (i, &e) in letters.iter().take(width - 1).enumerate() {
            key[i + 1] = e;
        }
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    /// The coefficient of the constant monomial.
    pub fn sym_part(&self) -> SymFunc {
        self.terms.iter().filter(|(k, _)| k.iter().all(|&e| e == 0)).map(|(_, v)| v.clone()).next().unwrap_or_default()
    }

    /// The value when `A` is purely scalar.
    pub fn scalar_value(&self) -> RatQT {
        self.sym_part().coeff(&Partition::empty())
    }
}

type Work = BTreeMap<(Vec<i64>, Vec<usize>), RatQT>;

fn p_k_of(a: &Alphabet, k: usize, width: usize) -> Work {
    let mut out = Work::new();
    for (c, atom, e) in &a.terms {
        let c = c.dilate(k as u32);
        let mut mono = vec![0i64; width];
        let mut sym = Vec::new();
        match atom {
            Atom::One => {}
            Atom::X | Atom::Tail(_) => sym.push(k),
            Atom::Letter(i) => mono[*i] = k as i64 * e,
            Atom::Z => mono[0] = k as i64 * e,
        }
        *out.entry((mono, sym)).or_default() += &c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn mul_work(a: &Work, b: &Work) -> Work {
    let mut out = Work::new();
    for ((ma, sa), ca) in a {
        for ((mb, sb), cb) in b {
            let m: Vec<i64> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            let mut s = sa.clone();
            s.extend_from_slice(sb);
            s.sort_unstable_by(|x, y| y.cmp(x));
            *out.entry((m, s)).or_default() += &(ca * cb);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Plethystic substitution `F[A]`, exact up to the degree cap.
///
/// Any resulting `z`-exponent outside `z_window` is an error.
pub fn plethysm(f: &SymFunc, a: &Alphabet, degree_cap: usize, z_window: (i64, i64)) -> Result<PlethysmResult> {
    if f.degree().unwrap_or(0) > degree_cap {
        return Err(Error::CapExceeded(format!("degree {} above cap {degree_cap}", f.degree().unwrap_or(0))));
    }
    let sym_atom = a.symmetric_atom()?;
    let width = a.max_letter() + 1;
    let mut cache: BTreeMap<usize, Work> = BTreeMap::new();
    let mut total = Work::new();
    for (rho, coeff) in f.expand(Basis::PowerSum) {
        let mut acc: Work = [((vec![0; width], Vec::new()), RatQT::one())].into_iter().collect();
        for &k in &rho.0 {
            let pk = cache.entry(k).or_insert_with(|| p_k_of(a, k, width));
            acc = mul_work(&acc, pk);
        }
        for (key, c) in acc {
            *total.entry(key).or_default() += &(&c * &coeff);
        }
    }
    let mut terms: BTreeMap<Vec<i64>, SymFunc> = BTreeMap::new();
    for ((mono, sym), c) in total {
        if c.is_zero() {
            continue;
        }
        if mono[0] < z_window.0 || mono[0] > z_window.1 {
            return Err(Error::CapExceeded(format!("z-exponent {} outside window {z_window:?}", mono[0])));
        }
        let g = Basis::PowerSum.element(&Partition(sym)).scale(&c);
        let entry = terms.entry(mono).or_default();
        *entry = &*entry + &g;
    }
    terms.retain(|_, v| !v.is_zero());
    Ok(PlethysmResult { alphabet: sym_atom, terms })
}

/// `F[a]` for a scalar `a` in `Q(q,t)`.
pub fn plethysm_scalar(f: &SymFunc, a: &RatQT) -> RatQT {
    let mut acc = RatQT::zero();
    for (rho, c) in f.expand(Basis::PowerSum) {
        let mut v = c;
        for &k in &rho.0 {
            v *= &a.dilate(k as u32);
        }
        acc += &v;
    }
    acc
}

/// `Exp[A] = sum_n h_n[A]`, truncated at degree `cap`.
pub fn exp_truncated(a: &Alphabet, cap: usize, z_window: (i64, i64)) -> Result<PlethysmResult> {
    let mut terms: BTreeMap<Vec<i64>, SymFunc> = BTreeMap::new();
    let mut sym_atom = None;
    for n in 0..=cap {
        let r = plethysm(&SymFunc::h(n), a, cap, z_window)?;
        sym_atom = sym_atom.or(r.alphabet);
        for (k, v) in r.terms {
            let e = terms.entry(k).or_default();
            *e = &*e + &v;
        }
    }
    terms.retain(|_, v| !v.is_zero());
    Ok(PlethysmResult { alphabet: sym_atom, terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RatQT {
        s.parse().unwrap()
    }

    #[test]
    fn p3_of_scalar_alphabet() {
        let v = plethysm_scalar(&SymFunc::p(3), &r("1 + 5*t + q*t^2"));
        assert_eq!(v, r("1 + 5*t^3 + q^3*t^6"));
        let a = Alphabet::scalar(r("1 + 5*t + q*t^2"));
        assert_eq!(plethysm(&SymFunc::p(3), &a, 3, (0, 0)).unwrap().scalar_value(), r("1 + 5*t^3 + q^3*t^6"));
    }

    #[test]
    fn identity_alphabet() {
        let f = &SymFunc::h(2) * &SymFunc::e(1);
        assert_eq!(plethysm(&f, &Alphabet::x(), 3, (0, 0)).unwrap().sym_part(), f);
    }

    #[test]
    fn schur_two_of_one_minus_t() {
        // s_2 = h_2; s_2[(1-t)X] = ((1-t^2) p_2 + (1-t)^2 p_11)/2
        let got = plethysm(&SymFunc::h(2), &Alphabet::x().scaled(&r("1 - t")), 2, (0, 0)).unwrap().sym_part();
        let p2 = SymFunc::p(2).scale(&r("(1 - t^2)/2"));
        let p11 = (&SymFunc::p(1) * &SymFunc::p(1)).scale(&r("(1 - t)^2/2"));
        assert_eq!(got, &p2 + &p11);
        assert_eq!(got, SymFunc::h_one_minus_t(2));
    }

    #[test]
    fn exp_is_additive() {
        let a = Alphabet::x().scaled(&r("1 - t")).plus(&Alphabet::z(1).scaled(&r("q")));
        let b = Alphabet::z(1).scaled(&r("t"));
        let ab = exp_truncated(&a.plus(&b), 4, (0, 4)).unwrap();
        let ea = exp_truncated(&a, 4, (0, 4)).unwrap();
        let eb = exp_truncated(&b, 4, (0, 4)).unwrap();
        // compare graded pieces of total degree <= 4 (z counts 1, X counts 1)
        for deg in 0..=4i64 {
            for zexp in 0..=deg {
                let sdeg = (deg - zexp) as usize;
                let lhs = ab.coeff(zexp, &[]).homogeneous_part(sdeg);
                let mut rhs = SymFunc::zero();
                for i in 0..=zexp {
                    let fa = ea.coeff(i, &[]);
                    let fb = eb.coeff(zexp - i, &[]);
                    rhs = &rhs + &(&fa * &fb).homogeneous_part(sdeg);
                }
                assert_eq!(lhs, rhs, "z^{zexp} degree {sdeg}");
            }
        }
    }

    #[test]
    fn z_window_is_enforced() {
        let a = Alphabet::x().plus(&Alphabet::z(-1));
        assert!(plethysm(&SymFunc::h(2), &a, 2, (-1, 0)).is_err());
        assert!(plethysm(&SymFunc::h(2), &a, 2, (-2, 0)).is_ok());
        assert!(plethysm(&SymFunc::h(3), &a, 2, (-3, 0)).is_err());
    }

    #[test]
    fn single_letter_shift() {
        // h_2[X + x_1] = h_2 + x_1 h_1 + x_1^2
        let a = Alphabet::x().plus(&Alphabet::letter(1));
        let res = plethysm(&SymFunc::h(2), &a, 2, (0, 0)).unwrap();
        assert_eq!(res.coeff(0, &[0]), SymFunc::h(2));
        assert_eq!(res.coeff(0, &[1]), SymFunc::h(1));
        assert_eq!(res.coeff(0, &[2]), SymFunc::one());
    }
}
