//! The defining relations, checked as operator identities on monomials.

use super::ops::{cherednik_y, t_inv_raw, t_raw};
use super::poly::FinitePoly;
use crate::combinatorics::compositions;
use crate::qt_field::RatQT;
use crate::symfunc::SymFunc;

type Op = Box<dyn Fn(&FinitePoly) -> FinitePoly>;

/// One failed identity: its name and the monomial exposing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationFailure {
    pub relation: String,
    pub input: Vec<usize>,
}

fn t(i: usize) -> Op {
    Box::new(move |f| t_raw(i - 1, f))
}

fn tinv(i: usize) -> Op {
    Box::new(move |f| t_inv_raw(i - 1, f))
}

fn x(i: usize) -> Op {
    Box::new(move |f| f.mul_var(i))
}

fn y(i: usize) -> Op {
    Box::new(move |f| cherednik_y(i, f).expect("index checked by caller"))
}

fn scal(c: RatQT) -> Op {
    Box::new(move |f| f.scale(&c))
}

/// Composes a word written left to right; the rightmost letter acts first.
fn word(ops: Vec<Op>) -> Op {
    Box::new(move |f| ops.iter().rev().fold(f.clone(), |g, o| o(&g)))
}

fn sum(a: Op, b: Op) -> Op {
    Box::new(move |f| &a(f) + &b(f))
}

/// Every identity of the presentation, plus commutation with symmetric
/// polynomials in the `X` and in the `Y`, for `n` variables.
fn relation_list(n: usize) -> Vec<(String, Op, Op)> {
    let mut rels: Vec<(String, Op, Op)> = Vec::new();
    let tt = RatQT::t();
    for i in 1..n {
        // (T - 1)(T + t) = 0
        let lhs = word(vec![sum(t(i), scal(-RatQT::one())), sum(t(i), scal(tt.clone()))]);
        rels.push((format!("quadratic T{i}"), lhs, scal(RatQT::zero())));
        rels.push((
            format!("T{i}^-1 X{i} T{i}^-1 = t^-1 X{}", i + 1),
            word(vec![tinv(i), x(i), tinv(i)]),
            word(vec![scal(RatQT::qt(0, -1)), x(i + 1)]),
        ));
        rels.push((
            format!("T{i} Y{i} T{i} = t Y{}", i + 1),
            word(vec![t(i), y(i), t(i)]),
            word(vec![scal(tt.clone()), y(i + 1)]),
        ));
        if i + 1 < n {
            rels.push((format!("braid {i}"), word(vec![t(i), t(i + 1), t(i)]), word(vec![t(i + 1), t(i), t(i + 1)])));
        }
        for j in 1..n {
            if i.abs_diff(j) > 1 {
                rels.push((format!("T{i} T{j} commute"), word(vec![t(i), t(j)]), word(vec![t(j), t(i)])));
            }
        }
        for j in 1..=n {
            if j != i && j != i + 1 {
                rels.push((format!("T{i} X{j} commute"), word(vec![t(i), x(j)]), word(vec![x(j), t(i)])));
                rels.push((format!("T{i} Y{j} commute"), word(vec![t(i), y(j)]), word(vec![y(j), t(i)])));
            }
        }
        for k in 1..=n {
            let ek = move |f: &FinitePoly| f.mul_ref(&FinitePoly::from_symfunc(&SymFunc::e(k), f.nvars()));
            rels.push((format!("T{i} e{k}(X) commute"), word(vec![t(i), Box::new(ek)]), word(vec![Box::new(ek), t(i)])));
        }
        let p1y = move |f: &FinitePoly| (1..=n).fold(FinitePoly::zero(f.nvars()), |acc, j| &acc + &cherednik_y(j, f).unwrap());
        rels.push((format!("T{i} p1(Y) commute"), word(vec![t(i), Box::new(p1y)]), word(vec![Box::new(p1y), t(i)])));
    }
    for i in 1..=n {
        for j in i + 1..=n {
            rels.push((format!("Y{i} Y{j} commute"), word(vec![y(i), y(j)]), word(vec![y(j), y(i)])));
        }
    }
    if n >= 2 {
        rels.push(("Y1 T1 X1 = X2 Y1 T1".into(), word(vec![y(1), t(1), x(1)]), word(vec![x(2), y(1), t(1)])));
    }
    let all_x: Vec<usize> = vec![1; n];
    let all_x2 = all_x.clone();
    let xs: Op = Box::new(move |f| f.mul_monomial(&all_x));
    let xs2: Op = Box::new(move |f| f.mul_monomial(&all_x2));
    rels.push(("Y1 X1..Xn = q X1..Xn Y1".into(), word(vec![y(1), xs]), word(vec![scal(RatQT::q()), xs2, y(1)])));
    rels
}

/// Checks every relation on every monomial of degree `<= max_degree` in `n` variables.
pub fn check_relations(n: usize, max_degree: usize) -> Vec<RelationFailure> {
    let rels = relation_list(n);
    let mut failures = Vec::new();
    for d in 0..=max_degree {
        for c in compositions(d, n) {
            let f = FinitePoly::monomial(c.0.clone(), RatQT::one());
            for (name, lhs, rhs) in &rels {
                if lhs(&f) != rhs(&f) {
                    failures.push(RelationFailure { relation: name.clone(), input: c.0.clone() });
                }
            }
        }
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_hold_small() {
        for n in 1..=3 {
            assert_eq!(check_relations(n, 2), vec![], "n={n}");
        }
    }

    #[test]
    fn a_broken_relation_is_caught() {
        let bad = word(vec![t(1), x(1)]);
        let f = FinitePoly::one(2);
        assert_ne!(bad(&f), word(vec![x(1), t(1)])(&f));
    }
}
