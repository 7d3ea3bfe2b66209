//! The scalar field `Q(q, t)`.

pub mod gcd;
pub mod poly;
mod ratqt;
pub mod upoly;

pub use poly::{IntPoly2, Mono};
pub use ratqt::{int_mod, RatQT};

/// `[n]_t = 1 + t + ... + t^{n-1}`.
pub fn t_int(n: usize) -> RatQT {
    let mut acc = RatQT::zero();
    for i in 0..n {
        acc += RatQT::qt(0, i as i64);
    }
    acc
}

/// `[n]_t! = [1]_t [2]_t ... [n]_t`.
pub fn t_factorial(n: usize) -> RatQT {
    let mut acc = RatQT::one();
    for i in 1..=n {
        acc *= &t_int(i);
    }
    acc
}

/// `1 - q^a t^b` for integer (possibly negative) exponents.
pub fn one_minus(a: i64, b: i64) -> RatQT {
    RatQT::one() - RatQT::qt(a, b)
}
