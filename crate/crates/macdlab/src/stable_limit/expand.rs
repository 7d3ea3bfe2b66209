//! Change of basis to `E~_(mu|lambda)` and the operators diagonal in it.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{e_tilde_pair, kappa, stable_weight, StableIndex};
use crate::almost_sym::{omega_star, partial_symmetrize, AlmostSym, TermKey};
use crate::combinatorics::{compositions, partitions, reduced_compositions, Composition, Partition};
use crate::error::{Error, Result};
use crate::finite_daha::{cherednik_y, deformed_y, FinitePoly};
use crate::linalg::{echelon_mod_p, solve};
use crate::qt_field::RatQT;
use crate::symfunc::{Basis, SymFunc};

/// Coefficients in the `E~_(mu|lambda)` basis.
pub type Expansion = BTreeMap<StableIndex, RatQT>;

const PRIME: u64 = (1 << 61) - 1;
const MAX_DEGREE: usize = 8;
const MAX_WINDOW: usize = 6;
const DRAWS: usize = 8;

/// Basis labels of degree `d` with `len(mu) <= k`.
pub fn basis_indices(d: usize, k: usize) -> Vec<StableIndex> {
    let mut out = Vec::new();
    for s in 0..=d {
        for mu in reduced_compositions(s, k) {
            for lambda in partitions(d - s) {
                out.push(StableIndex { mu: mu.clone(), lambda });
            }
        }
    }
    out
}

/// Monomial keys `x^a m_nu[X_k]` of degree `d`, `len(a) = k`.
pub fn basis_keys(d: usize, k: usize) -> Vec<TermKey> {
    let mut out = Vec::new();
    for s in 0..=d {
        let comps = if k == 0 {
            if s == 0 {
                vec![Composition::default()]
            } else {
                vec![]
            }
        } else {
            compositions(s, k)
        };
        for a in comps {
            for nu in partitions(d - s) {
                out.push((a.0.clone(), nu));
            }
        }
    }
    out
}

type Matrix = Arc<Vec<Vec<RatQT>>>;

/// Column `j` holds the coefficients of the `j`-th basis element over [`basis_keys`].
pub fn coefficient_matrix(d: usize, k: usize) -> Matrix {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Matrix>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(m) = cache.lock().unwrap().get(&(d, k)) {
        return m.clone();
    }
    let keys = basis_keys(d, k);
    let cols: Vec<Vec<RatQT>> = basis_indices(d, k).iter().map(|i| e_tilde_pair(i).widen(k).coefficient_vector(&keys)).collect();
    let rows: Vec<Vec<RatQT>> = (0..keys.len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let m = Arc::new(rows);
    cache.lock().unwrap().insert((d, k), m.clone());
    m
}

fn eval_all(m: &[Vec<RatQT>], q0: u64, t0: u64) -> Option<Vec<Vec<u64>>> {
    m.iter().map(|row| row.iter().map(|x| x.eval_mod(PRIME, q0, t0)).collect()).collect()
}

/// Solves `m c = b` modulo the prime at a random point; `None` on a pole or singularity.
fn solve_at_point(m: &[Vec<RatQT>], b: &[RatQT], rng: &mut ChaCha8Rng) -> Option<Vec<u64>> {
    let q0 = rng.gen_range(2..PRIME);
    let t0 = rng.gen_range(2..PRIME);
    let mut aug = eval_all(m, q0, t0)?;
    for (row, x) in aug.iter_mut().zip(b) {
        row.push(x.eval_mod(PRIME, q0, t0)?);
    }
    let n = m.len();
    let piv = echelon_mod_p(&mut aug, PRIME);
    if piv.len() != n || piv.iter().any(|&(_, c)| c >= n) {
        return None;
    }
    let mut sol = vec![0; n];
    for (r, (_, c)) in piv.iter().enumerate() {
        sol[*c] = aug[r][n];
    }
    Some(sol)
}

fn expand_homogeneous(f: &AlmostSym, d: usize, k: usize) -> Result<Expansion> {
    let basis = basis_indices(d, k);
    let keys = basis_keys(d, k);
    let b = f.widen(k).coefficient_vector(&keys);
    let m = coefficient_matrix(d, k);
    if m.len() != basis.len() {
        return Err(Error::Internal(format!("{} keys for {} basis elements", m.len(), basis.len())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(((d as u64) << 32) ^ k as u64);
    let mut support = vec![false; basis.len()];
    let mut found = 0;
    for _ in 0..DRAWS {
        if let Some(sol) = solve_at_point(&m, &b, &mut rng) {
            for (s, v) in support.iter_mut().zip(&sol) {
                *s |= *v != 0;
            }
            found += 1;
            if found == 2 {
                break;
            }
        }
    }
    if found < 2 {
        return Err(Error::Singular(format!("change of basis in degree {d}, window {k}")));
    }
    let cols: Vec<usize> = (0..basis.len()).filter(|&j| support[j]).collect();
    let coeffs = solve_on_support(&m, &b, &cols, &mut rng).or_else(|_| {
        let all: Vec<usize> = (0..basis.len()).collect();
        solve_on_support(&m, &b, &all, &mut rng)
    })?;
    Ok(cols.iter().zip(coeffs).filter(|(_, c)| !c.is_zero()).map(|(&j, c)| (basis[j].clone(), c)).collect())
}

/// Exact solve restricted to the columns `cols`, on rows independent at a random point;
/// the reconstruction is checked on every row.
fn solve_on_support(m: &[Vec<RatQT>], b: &[RatQT], cols: &[usize], rng: &mut ChaCha8Rng) -> Result<Vec<RatQT>> {
    if cols.is_empty() {
        return if b.iter().all(|x| x.is_zero()) { Ok(vec![]) } else { Err(Error::Internal("empty support".into())) };
    }
    let sub: Vec<Vec<RatQT>> = m.iter().map(|row| cols.iter().map(|&j| row[j].clone()).collect()).collect();
    let rows = (0..DRAWS)
        .find_map(|_| {
            let (q0, t0) = (rng.gen_range(2..PRIME), rng.gen_range(2..PRIME));
            let mut ev = eval_all(&sub, q0, t0)?;
            let piv = echelon_mod_p(&mut ev, PRIME);
            (piv.len() == cols.len()).then(|| piv.into_iter().map(|(r, _)| r).collect::<Vec<_>>())
        })
        .ok_or_else(|| Error::Singular("no independent rows".into()))?;
    let a: Vec<Vec<RatQT>> = rows.iter().map(|&r| sub[r].clone()).collect();
    let rhs: Vec<Vec<RatQT>> = rows.iter().map(|&r| vec![b[r].clone()]).collect();
    let c: Vec<RatQT> = solve(&a, &rhs)?.into_iter().map(|mut v| v.remove(0)).collect();
    for (row, want) in sub.iter().zip(b) {
        let mut got = RatQT::zero();
        for (x, y) in row.iter().zip(&c) {
            if !x.is_zero() && !y.is_zero() {
                got += &(x * y);
            }
        }
        if &got != want {
            return Err(Error::Internal("reconstruction failed".into()));
        }
    }
    Ok(c)
}

/// Coefficients of `f` in the basis `E~_(mu|lambda)`, `len(mu) <= window(f)`.
pub fn expand_in_stable_basis(f: &AlmostSym) -> Result<Expansion> {
    let k = f.window();
    let degrees: std::collections::BTreeSet<usize> = f.terms().keys().map(|(a, p)| a.iter().sum::<usize>() + p.size()).collect();
    let mut out = Expansion::new();
    for d in degrees {
        if d > MAX_DEGREE || k > MAX_WINDOW {
            return Err(Error::CapExceeded(format!("expansion in degree {d}, window {k}")));
        }
        out.extend(expand_homogeneous(&f.homogeneous_part(d), d, k)?);
    }
    Ok(out)
}

/// `sum_j c_j E~_j`, presented in window `window` (or wider if needed).
pub fn reconstruct(e: &Expansion, window: usize) -> AlmostSym {
    let mut out = AlmostSym::zero(window);
    for (i, c) in e {
        out.add_assign_scaled(&e_tilde_pair(i), c);
    }
    out
}

fn diagonal(f: &AlmostSym, eigen: impl Fn(&StableIndex) -> RatQT) -> Result<AlmostSym> {
    let mut e = expand_in_stable_basis(f)?;
    for (i, c) in e.iter_mut() {
        *c = &*c * &eigen(i);
    }
    e.retain(|_, c| !c.is_zero());
    Ok(reconstruct(&e, f.window()))
}

/// The limit Cherednik operator `Y_i`, acting by the weights of the basis.
pub fn limit_cherednik(i: usize, f: &AlmostSym) -> Result<AlmostSym> {
    if i == 0 {
        return Err(Error::IndexOutOfRange("operator indices start at 1".into()));
    }
    diagonal(f, |idx| stable_weight(idx).get(i))
}

/// The finite approximant `Y~_i^(m)(pi_m f)`.
pub fn limit_cherednik_finite(i: usize, f: &AlmostSym, m: usize) -> Result<FinitePoly> {
    deformed_y(i, &f.truncate_pi(m)?)
}

/// `Psi_{p_1}`: multiplies `E~_(mu|lambda)` by `kappa_{mu * lambda}`.
pub fn psi_p1(f: &AlmostSym) -> Result<AlmostSym> {
    diagonal(f, |idx| kappa(&idx.joined()))
}

/// `Psi_F`: multiplies `E~_(mu|lambda)` by the plethystic evaluation `F[kappa_{mu * lambda}]`.
pub fn psi_f_diagonal(big_f: &SymFunc, f: &AlmostSym) -> Result<AlmostSym> {
    let pexp = big_f.expand(Basis::PowerSum);
    diagonal(f, |idx| {
        let k = kappa(&idx.joined());
        let mut v = RatQT::zero();
        for (rho, c) in &pexp {
            let mut term = c.clone();
            for &r in &rho.0 {
                term = &term * &k.dilate(r as u32);
            }
            v += &term;
        }
        v
    })
}

/// `Psi_{p_1}^(m) = t^m (Y_1 + ... + Y_m)` on `pi_m f`.
pub fn psi_p1_finite(f: &AlmostSym, m: usize) -> Result<FinitePoly> {
    let g = f.truncate_pi(m)?;
    let mut out = FinitePoly::zero(m);
    for i in 1..=m {
        out.add_assign_scaled(&cherednik_y(i, &g)?, &RatQT::one());
    }
    Ok(out.scale(&RatQT::qt(0, m as i64)))
}

/// `Psi_{p_1}` through the limit of the finite operators on `x^a F[X]`:
///
/// `(Y_1 + ... + Y_k)(x^a F[X]) + t/(1-t) sigma~_k(T_k ... T_1 x_2^{a_1} ... x_{k+1}^{a_k} F[X + (q-1) x_1])`
///
/// for `a` with all `k` parts positive; other exponents are first moved into
/// that shape with `T_i`, which commutes with `Psi_{p_1}`.
pub fn psi_p1_formula(f: &AlmostSym) -> Result<AlmostSym> {
    let mut memo = HashMap::new();
    let mut out = AlmostSym::zero(f.window());
    for ((a, nu), c) in f.to_full() {
        let g = psi_full_term(&Composition(a).reduced().0, &nu, &mut memo)?;
        out.add_assign_scaled(&g, &c);
    }
    Ok(out)
}

type Memo = HashMap<(Vec<usize>, Partition), AlmostSym>;

/// `Psi_{p_1}(x^a m_nu[X])` with `X` the full alphabet.
fn psi_full_term(a: &[usize], nu: &Partition, memo: &mut Memo) -> Result<AlmostSym> {
    let key = (a.to_vec(), nu.clone());
    if let Some(v) = memo.get(&key) {
        return Ok(v.clone());
    }
    let k = a.len();
    let res = match a.iter().rposition(|&x| x == 0) {
        Some(z) => {
            // x^a = T_i x^{s_i a} - (T_i x^{s_i a} - x^a), i = z + 1, and a_{i+1} > 0
            let mut b = a.to_vec();
            b.swap(z, z + 1);
            let lead = psi_full_term(&Composition(b.clone()).reduced().0, nu, memo)?.act_t(z + 1)?;
            let mut rest = AlmostSym::monomial(b).act_t(z + 1)?;
            rest.add_term(a.to_vec(), Partition::empty(), &-RatQT::one());
            let mut out = lead;
            for ((e, _), c) in rest.terms() {
                let g = psi_full_term(&Composition(e.clone()).reduced().0, nu, memo)?;
                out.add_assign_scaled(&g, &-c);
            }
            out
        }
        None => {
            let g = AlmostSym::from_full(k, &BTreeMap::from([((a.to_vec(), nu.clone()), RatQT::one())]))?;
            let mut out = AlmostSym::zero(k);
            for i in 1..=k {
                out.add_assign_scaled(&limit_cherednik(i, &g)?, &RatQT::one());
            }
            let mut h = omega_star(&g);
            for i in 1..=k {
                h = h.act_t(i)?;
            }
            let c = &RatQT::t() / &(RatQT::one() - RatQT::t());
            out.add_assign_scaled(&partial_symmetrize(k, &h), &c);
            out
        }
    };
    memo.insert(key, res.clone());
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stable_limit::{a_lambda, e_tilde, kappa, StableWeight};
    use crate::symfunc::SymFunc;

    fn idx(mu: &[usize], la: &[usize]) -> StableIndex {
        StableIndex::new(mu.to_vec(), la.to_vec()).unwrap()
    }

    #[test]
    fn dimensions_match() {
        for d in 0..=4 {
            for k in 0..=3 {
                assert_eq!(basis_indices(d, k).len(), basis_keys(d, k).len());
            }
        }
    }

    #[test]
    fn basis_elements_expand_to_deltas() {
        for i in basis_indices(3, 2) {
            let e = expand_in_stable_basis(&e_tilde_pair(&i)).unwrap();
            assert_eq!(e, Expansion::from([(i.clone(), RatQT::one())]), "{i}");
        }
    }

    #[test]
    fn x1_expansion() {
        // x_1 is itself E~_(1|), so the 2x2 solve returns a delta
        let e = expand_in_stable_basis(&AlmostSym::var(1)).unwrap();
        assert_eq!(e, Expansion::from([(idx(&[1], &[]), RatQT::one())]));
        assert_eq!(*e_tilde(&[1]), AlmostSym::var(1));
        let p1 = AlmostSym::sym(&SymFunc::p(1)).widen(1);
        let e = expand_in_stable_basis(&p1).unwrap();
        assert_eq!(e.keys().collect::<Vec<_>>(), vec![&idx(&[], &[1])]);
        assert_eq!(reconstruct(&e, 1), p1);
    }

    #[test]
    fn cherednik_on_examples() {
        let f = e_tilde(&[2]);
        assert_eq!(limit_cherednik(1, &f).unwrap(), f.scale(&RatQT::qt(2, 1)));
        let sym = AlmostSym::sym(&SymFunc::h(2));
        for i in 1..=3 {
            assert!(limit_cherednik(i, &sym).unwrap().is_zero());
        }
        let g = &AlmostSym::term(vec![1, 0], Partition(vec![1]), RatQT::one()) + &AlmostSym::monomial(vec![0, 2]);
        let y1y2 = limit_cherednik(1, &limit_cherednik(2, &g).unwrap()).unwrap();
        let y2y1 = limit_cherednik(2, &limit_cherednik(1, &g).unwrap()).unwrap();
        assert_eq!(y1y2, y2y1);
    }

    #[test]
    fn weights_from_finite_deformed_operators() {
        // on all-nonzero mu the finite residual vanishes identically
        for mu in [vec![1], vec![2], vec![1, 1], vec![2, 1], vec![1, 2]] {
            let n = mu.len();
            for m in 0..=2 {
                let full = Composition(mu.clone()).padded(m).0;
                let e = crate::finite_daha::e_hhl(&full);
                let a = crate::finite_daha::weight(&full);
                for i in 1..=n {
                    let lhs = deformed_y(i, &e).unwrap();
                    let c = &RatQT::qt(0, (n + m) as i64) * &a.0[i - 1];
                    assert_eq!(lhs, e.scale(&c), "{mu:?} m={m} i={i}");
                }
            }
        }
        let w: StableWeight = super::super::composition_weight(&[2]);
        assert_eq!(w.get(1), RatQT::qt(2, 1));
    }

    #[test]
    fn psi_paths_agree_on_basis() {
        for d in 0..=2 {
            for k in 0..=2 {
                for i in basis_indices(d, k) {
                    let e = e_tilde_pair(&i);
                    let want = e.scale(&kappa(&i.joined()));
                    assert_eq!(psi_p1(&e).unwrap(), want, "{i}");
                    assert_eq!(psi_p1_formula(&e).unwrap(), want, "{i}");
                }
            }
        }
    }

    #[test]
    fn psi_on_symmetric_functions() {
        assert_eq!(psi_p1_formula(&AlmostSym::one()).unwrap(), AlmostSym::one().scale(&kappa(&[])));
        for n in 0..=3 {
            for la in partitions(n) {
                let a = AlmostSym::sym(&a_lambda(&la));
                let want = a.scale(&kappa(&la.0));
                assert_eq!(psi_p1_formula(&a).unwrap(), want, "{la:?}");
            }
        }
    }

    #[test]
    fn psi_f_generalizes_psi_p1() {
        let f = &AlmostSym::term(vec![1], Partition(vec![1]), RatQT::one()) + &AlmostSym::monomial(vec![2]);
        assert_eq!(psi_f_diagonal(&SymFunc::p(1), &f).unwrap(), psi_p1(&f).unwrap());
        assert_eq!(psi_f_diagonal(&SymFunc::one(), &f).unwrap(), f);
        let a = psi_f_diagonal(&SymFunc::e(2), &limit_cherednik(1, &f).unwrap()).unwrap();
        let b = limit_cherednik(1, &psi_f_diagonal(&SymFunc::e(2), &f).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
