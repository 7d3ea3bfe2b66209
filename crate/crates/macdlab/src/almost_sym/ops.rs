//! Operators on almost-symmetric functions.

use std::collections::BTreeMap;

use super::AlmostSym;
use crate::combinatorics::Partition;
use crate::error::{Error, Result};
use crate::finite_daha::{t_inv_raw, t_raw};
use crate::qt_field::RatQT;
use crate::symfunc::{jing_m, plethysm, Alphabet, SymFunc};

fn check_index(i: usize) -> Result<()> {
    if i == 0 {
        return Err(Error::IndexOutOfRange("operator indices start at 1".into()));
    }
    Ok(())
}

impl AlmostSym {
    /// Multiplication by `x_i`.
    pub fn act_x(&self, i: usize) -> Result<Self> {
        check_index(i)?;
        let mut e = vec![0; i];
        e[i - 1] = 1;
        Ok(self.mul_ref(&AlmostSym::monomial(e)))
    }

    /// The Demazure-Lusztig operator `T_i`.
    pub fn act_t(&self, i: usize) -> Result<Self> {
        check_index(i)?;
        Ok(self.widen(i + 1).map_window_part(|p| t_raw(i - 1, p)))
    }

    /// `T_i^{-1} = t^{-1}(T_i + t - 1)`.
    pub fn act_t_inv(&self, i: usize) -> Result<Self> {
        check_index(i)?;
        Ok(self.widen(i + 1).map_window_part(|p| t_inv_raw(i - 1, p)))
    }
}

/// The lowering operator: `x_k^n F[X_k] -> B_n(F)[X_{k-1}]`, linear over the first `k - 1` variables.
pub fn lower(k: usize, f: &AlmostSym) -> Result<AlmostSym> {
    check_index(k)?;
    if f.window() > k {
        return Err(Error::Precondition(format!("lowering at {k} needs window <= {k}, got {}", f.window())));
    }
    let g = f.widen(k);
    let mut out = AlmostSym::zero(k - 1);
    for ((a, p), c) in g.terms() {
        let head = a[..k - 1].to_vec();
        for (nu, x) in jing_m(a[k - 1], p).terms() {
            out.add_term(head.clone(), nu.clone(), &(x * c));
        }
    }
    Ok(out)
}

/// The lowering operator by the constant-term formula
/// `c_{x_k} f F[X_k - x_k] Exp[(1 - t) x_k^{-1} X_k]`, with the tail then read as `X_{k-1}`.
pub fn lower_ct_check(k: usize, f: &AlmostSym) -> Result<AlmostSym> {
    check_index(k)?;
    if f.window() > k {
        return Err(Error::Precondition(format!("lowering at {k} needs window <= {k}, got {}", f.window())));
    }
    let g = f.widen(k);
    let omt_x = Alphabet::x().scaled(&(RatQT::one() - RatQT::t()));
    let minus_z = Alphabet::x().plus(&Alphabet::z(1).scaled(&-RatQT::one()));
    let mut h_cache: BTreeMap<usize, SymFunc> = BTreeMap::new();
    let mut out = AlmostSym::zero(k - 1);
    for ((a, p), c) in g.terms() {
        let n = a[k - 1];
        let d = p.size();
        let shifted = plethysm(&SymFunc::m(p), &minus_z, d, (0, d as i64))?;
        let mut acc = SymFunc::zero();
        for i in 0..=d {
            let gi = shifted.coeff(i as i64, &[]);
            if gi.is_zero() {
                continue;
            }
            // only x_k^{-(n+i)} from the exponential meets x_k^{n+i}
            let j = n + i;
            let h = match h_cache.get(&j) {
                Some(h) => h.clone(),
                None => {
                    let h = plethysm(&SymFunc::h(j), &omt_x, j, (0, 0))?.sym_part();
                    h_cache.insert(j, h.clone());
                    h
                }
            };
            acc = &acc + &(&h * &gi);
        }
        let head = a[..k - 1].to_vec();
        for (nu, x) in acc.terms() {
            out.add_term(head.clone(), nu.clone(), &(x * c));
        }
    }
    Ok(out)
}

/// `sigma~_k`: lowers from the window of `f` down to window `k`.
pub fn partial_symmetrize(k: usize, f: &AlmostSym) -> AlmostSym {
    let mut g = f.clone();
    for j in (k + 1..=f.window()).rev() {
        g = lower(j, &g).expect("window matches");
    }
    g
}

/// `sigma~ = sigma~_0`, read as a symmetric function of `X`.
pub fn sigma_tilde(f: &AlmostSym) -> SymFunc {
    let g = partial_symmetrize(0, f);
    SymFunc::from_terms(g.terms().iter().map(|((_, p), c)| (p.clone(), c.clone())))
}

/// `omega~ f = x_1 T_1^{-1} ... T_k^{-1} f`, with `k` the window of `f`.
pub fn omega_tilde(f: &AlmostSym) -> AlmostSym {
    let k = f.window();
    let mut g = f.widen(k + 1);
    for i in (1..=k).rev() {
        g = g.act_t_inv(i).expect("positive index");
    }
    g.act_x(1).expect("positive index")
}

/// `omega* (x^a m_lambda[X_k]) = x_2^{a_1} ... x_{k+1}^{a_k} m_lambda[q x_1 + X_{k+1}]`.
pub fn omega_star(f: &AlmostSym) -> AlmostSym {
    let k = f.window();
    let mut out = AlmostSym::zero(k + 1);
    for ((a, p), c) in f.terms() {
        let mut shifted = vec![0];
        shifted.extend_from_slice(a);
        out.add_term(shifted.clone(), p.clone(), c);
        let mut last = None;
        for &r in &p.0 {
            if last == Some(r) {
                continue;
            }
            last = Some(r);
            let mut e = shifted.clone();
            e[0] = r;
            out.add_term(e, p.remove_part(r).expect("r is a part"), &(c * &RatQT::qt(r as i64, 0)));
        }
    }
    out
}

/// `omega*` through the full-alphabet presentation:
/// `x^a F[X] -> x_2^{a_1} ... x_{k+1}^{a_k} F[X + (q - 1) x_1]`.
pub fn omega_star_full(f: &AlmostSym) -> AlmostSym {
    let k = f.window();
    let shift = Alphabet::x().plus(&Alphabet::letter(1).scaled(&(RatQT::q() - RatQT::one())));
    let mut full: BTreeMap<(Vec<usize>, Partition), RatQT> = BTreeMap::new();
    for ((a, p), c) in f.to_full() {
        let r = plethysm(&SymFunc::m(&p), &shift, p.size(), (0, 0)).expect("no z letters");
        for (key, g) in r.terms() {
            let mut e = vec![key.get(1).copied().unwrap_or(0) as usize];
            e.extend_from_slice(&a);
            for (nu, x) in g.terms() {
                *full.entry((e.clone(), nu.clone())).or_default() += &(x * &c);
            }
        }
    }
    full.retain(|_, c| !c.is_zero());
    AlmostSym::from_full(k + 1, &full).expect("consistent lengths")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{compositions, partitions, partitions_up_to};
    use crate::finite_daha::{demazure_lusztig, epsilon};
    use crate::symfunc::hall_littlewood_p;
    use proptest::prelude::*;

    fn part(v: &[usize]) -> Partition {
        Partition(v.to_vec())
    }

    fn arb(window: usize, deg: usize) -> impl Strategy<Value = AlmostSym> {
        super::super::tests::arb_almost(window, deg)
    }

    #[test]
    fn x_and_t_examples() {
        let p1 = AlmostSym::sym(&SymFunc::m(&part(&[1])));
        let want = &AlmostSym::monomial(vec![2]) + &AlmostSym::term(vec![1], part(&[1]), RatQT::one());
        assert_eq!(p1.act_x(1).unwrap(), want);
        for lam in partitions_up_to(3) {
            let f = AlmostSym::sym(&SymFunc::m(&lam));
            for i in 1..=3 {
                assert_eq!(f.act_t(i).unwrap(), f, "T_{i} m_{lam}");
            }
        }
    }

    #[test]
    fn lowering_examples() {
        for n in 0..=5 {
            let want = AlmostSym::sym(&SymFunc::h_one_minus_t(n));
            let x1n = AlmostSym::monomial(vec![n]);
            assert_eq!(lower(1, &x1n).unwrap(), want, "n={n}");
            assert_eq!(lower_ct_check(1, &x1n).unwrap(), want, "n={n}");
        }
        let f = AlmostSym::term(vec![1, 1], part(&[1]), RatQT::one());
        assert_eq!(lower(2, &f).unwrap(), lower_ct_check(2, &f).unwrap());
        assert_eq!(lower_ct_check(1, &AlmostSym::one()).unwrap(), AlmostSym::one());
        assert!(lower(1, &AlmostSym::var(2)).is_err());
    }

    #[test]
    fn lowering_is_a_projection() {
        for lam in partitions_up_to(4) {
            for k in 1..=3 {
                let f = AlmostSym::tail_sym(&SymFunc::m(&lam), k - 1);
                assert_eq!(lower(k, &f).unwrap(), f, "{lam} k={k}");
            }
        }
    }

    #[test]
    fn symmetrizing_monomials_gives_hall_littlewood() {
        for d in 0..=4 {
            for lam in partitions(d) {
                assert_eq!(sigma_tilde(&AlmostSym::monomial(lam.0.clone())), hall_littlewood_p(&lam), "{lam}");
            }
        }
    }

    #[test]
    fn symmetrizing_absorbs_t() {
        for n in 2..=3 {
            for e in compositions(2, n) {
                let f = AlmostSym::monomial(e.0.clone());
                for i in 1..n {
                    assert_eq!(sigma_tilde(&f.act_t(i).unwrap()), sigma_tilde(&f), "{e:?} T_{i}");
                }
            }
        }
    }

    #[test]
    fn t_commutes_with_truncation() {
        let f = &AlmostSym::term(vec![2, 0], part(&[1]), RatQT::q()) + &AlmostSym::term(vec![0, 1], part(&[1, 1]), RatQT::t());
        for i in 1..=3 {
            let m = 6;
            let lhs = f.act_t(i).unwrap().truncate_pi(m).unwrap();
            let rhs = demazure_lusztig(i, &f.truncate_pi(m).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "T_{i}");
        }
    }

    #[test]
    fn omega_star_paths_agree() {
        let f = &AlmostSym::term(vec![1, 0], part(&[2, 1]), RatQT::t()) + &AlmostSym::sym(&SymFunc::m(&part(&[1, 1])));
        assert_eq!(omega_star(&f), omega_star_full(&f));
        let p2 = SymFunc::p(2);
        let want = &AlmostSym::sym(&p2) + &AlmostSym::monomial(vec![2]).scale(&(RatQT::qt(2, 0) - RatQT::one()));
        assert_eq!(omega_star(&AlmostSym::sym(&p2)), want);
    }

    #[test]
    fn omega_tilde_raises_degree() {
        let f = &AlmostSym::term(vec![1, 0], part(&[1]), RatQT::one()) + &AlmostSym::monomial(vec![0, 2]);
        let g = omega_tilde(&f);
        assert!(g.is_homogeneous());
        assert_eq!(g.degree(), Some(3));
        assert_eq!(omega_tilde(&AlmostSym::one()), AlmostSym::var(1));
    }

    #[test]
    fn epsilon_lifts_approach_sigma() {
        // sigma~_1 agrees with epsilon_1^(m) up to t-adic order growing with m
        let f = AlmostSym::monomial(vec![1, 0, 1]);
        let target = partial_symmetrize(1, &f);
        let mut last = -1i64;
        for m in 4..=6 {
            let g = epsilon(1, &f.truncate_pi(m).unwrap()).unwrap();
            let diff = &AlmostSym::lift(&g, 1).unwrap() - &target;
            let v = diff.terms().values().map(|c| c.t_adic_val().unwrap()).min().unwrap_or(i64::MAX);
            assert!(v > last, "m={m} valuation {v}");
            last = v;
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn lowering_paths_agree(f in arb(2, 2)) {
            prop_assert_eq!(lower(2, &f).unwrap(), lower_ct_check(2, &f).unwrap());
        }

        #[test]
        fn lowering_is_symmetric_linear(f in arb(2, 2), li in 0usize..4) {
            let g = SymFunc::m(&partitions_up_to(2)[li]);
            let gf = AlmostSym::sym(&g).mul_ref(&f);
            prop_assert_eq!(lower(2, &gf).unwrap(), AlmostSym::sym(&g).mul_ref(&lower(2, &f).unwrap()));
            prop_assert_eq!(partial_symmetrize(0, &gf), AlmostSym::sym(&g).mul_ref(&partial_symmetrize(0, &f)));
        }

        #[test]
        fn partial_symmetrizers_compose(f in arb(3, 2), k in 0usize..=3, l in 0usize..=3) {
            let (k, l) = (k.min(l), k.max(l));
            prop_assert_eq!(partial_symmetrize(k, &partial_symmetrize(l, &f)), partial_symmetrize(k, &f));
        }

        #[test]
        fn t_and_inverse(f in arb(2, 2), i in 1usize..=3) {
            prop_assert_eq!(f.act_t(i).unwrap().act_t_inv(i).unwrap(), f);
        }

        #[test]
        fn omega_star_paths(f in arb(2, 2)) {
            prop_assert_eq!(omega_star(&f), omega_star_full(&f));
        }
    }
}
