use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::gcd::gcd;
use super::poly::{bigint_mod, mulmod, powmod, IntPoly2, Mono};
use crate::error::{Error, Result};

/// An element of `Q(q, t)` in lowest terms.
///
/// The numerator and denominator share no common factor, and the lowest
/// graded-lex term of the denominator (the first one printed) is positive.
/// Equal values therefore have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatQT {
    num: IntPoly2,
    den: IntPoly2,
}

impl Default for RatQT {
    fn default() -> Self {
        Self::zero()
    }
}

impl RatQT {
    pub fn from_poly(p: IntPoly2) -> Self {
        RatQT { num: p, den: IntPoly2::one() }
    }

    /// Builds `num/den`, reducing to canonical form.
    pub fn new(num: IntPoly2, den: IntPoly2) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: IntPoly2, den: IntPoly2) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = gcd(&num, &den);
        let (n, d) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        Self::fix_sign(n, d)
    }

    fn fix_sign(n: IntPoly2, d: IntPoly2) -> Self {
        if d.lowest().is_some_and(|(_, c)| c.is_negative()) {
            RatQT { num: n.neg(), den: d.neg() }
        } else {
            RatQT { num: n, den: d }
        }
    }

    pub fn from_int<T: Into<BigInt>>(c: T) -> Self {
        Self::from_poly(IntPoly2::constant(c.into()))
    }

    pub fn from_ratio<A: Into<BigInt>, B: Into<BigInt>>(a: A, b: B) -> Result<Self> {
        Self::new(IntPoly2::constant(a.into()), IntPoly2::constant(b.into()))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::reduce(IntPoly2::constant(r.numer().clone()), IntPoly2::constant(r.denom().clone()))
    }

    pub fn q() -> Self {
        Self::from_poly(IntPoly2::q())
    }

    pub fn t() -> Self {
        Self::from_poly(IntPoly2::t())
    }

    /// The Laurent monomial `q^a t^b`.
    pub fn qt(a: i64, b: i64) -> Self {
        let num = Mono::new(a.max(0) as u32, b.max(0) as u32);
        let den = Mono::new((-a).max(0) as u32, (-b).max(0) as u32);
        RatQT { num: IntPoly2::monomial(BigInt::one(), num), den: IntPoly2::monomial(BigInt::one(), den) }
    }

    pub fn zero() -> Self {
        RatQT { num: IntPoly2::zero(), den: IntPoly2::one() }
    }

    pub fn one() -> Self {
        RatQT { num: IntPoly2::one(), den: IntPoly2::one() }
    }

    pub fn num(&self) -> &IntPoly2 {
        &self.num
    }

    pub fn den(&self) -> &IntPoly2 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The rational constant, if this element does not involve `q` or `t`.
    pub fn as_constant(&self) -> Option<BigRational> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(BigRational::new(n, d))
    }

    pub fn neg_ref(&self) -> Self {
        RatQT { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return Self::from_poly(self.num.add(&o.num));
            }
            return Self::reduce(self.num.add(&o.num), self.den.clone());
        }
        if self.den.is_one() {
            return RatQT { num: self.num.mul(&o.den).add(&o.num), den: o.den.clone() };
        }
        if o.den.is_one() {
            return RatQT { num: o.num.mul(&self.den).add(&self.num), den: self.den.clone() };
        }
        let g = gcd(&self.den, &o.den);
        if g.is_one() {
            let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            if num.is_zero() {
                return Self::zero();
            }
            return RatQT { num, den: self.den.mul(&o.den) };
        }
        let d1 = self.den.div_exact(&g).unwrap();
        let d2 = o.den.div_exact(&g).unwrap();
        let num = self.num.mul(&d2).add(&o.num.mul(&d1));
        if num.is_zero() {
            return Self::zero();
        }
        let h = gcd(&num, &g);
        let (num, g) = if h.is_one() { (num, g) } else { (num.div_exact(&h).unwrap(), g.div_exact(&h).unwrap()) };
        Self::fix_sign(num, g.mul(&d1).mul(&d2))
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(self.num.mul(&o.num));
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = o.den.div_exact(&g1).unwrap();
        let n2 = o.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        Self::fix_sign(n1.mul(&n2), d1.mul(&d2))
    }

    /// Multiplies by an integer.
    pub fn mul_int<T: Into<BigInt>>(&self, k: T) -> Self {
        let k: BigInt = k.into();
        if k.is_one() {
            return self.clone();
        }
        self.mul_ref(&Self::from_int(k))
    }

    /// Multiplies by an integer polynomial.
    pub fn mul_poly(&self, p: &IntPoly2) -> Self {
        self.mul_ref(&Self::from_poly(p.clone()))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::fix_sign(self.den.clone(), self.num.clone()))
    }

    pub fn try_div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul_ref(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().expect("negative power of zero").pow(-e);
        }
        let e = e as u32;
        if self.is_zero() {
            return if e == 0 { Self::one() } else { Self::zero() };
        }
        RatQT { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// `ord_t` of numerator minus `ord_t` of denominator; `None` encodes `+inf`.
    pub fn t_adic_val(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.num.min_t() as i64 - self.den.min_t() as i64)
        }
    }

    /// Exact evaluation at rational `(q0, t0)`.
    pub fn specialize(&self, q0: &BigRational, t0: &BigRational) -> Result<BigRational> {
        let d = eval_rational(&self.den, q0, t0);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(eval_rational(&self.num, q0, t0) / d)
    }

    /// Evaluation modulo the prime `p`; `None` at a pole.
    pub fn eval_mod(&self, p: u64, q0: u64, t0: u64) -> Option<u64> {
        let d = self.den.eval_mod(p, q0, t0);
        if d == 0 {
            return None;
        }
        let n = self.num.eval_mod(p, q0, t0);
        Some(mulmod(n, powmod(d, p - 2, p), p))
    }

    /// Substitutes `q -> 1/q`.
    pub fn subs_q_inv(&self) -> Self {
        let dn = self.num.deg_q();
        let dd = self.den.deg_q();
        let num = self.num.reverse_q();
        let den = self.den.reverse_q();
        let (num, den) = if dn >= dd {
            (num, den.mul_term(&BigInt::one(), Mono::new(dn - dd, 0)))
        } else {
            (num.mul_term(&BigInt::one(), Mono::new(dd - dn, 0)), den)
        };
        Self::reduce(num, den)
    }

    /// Substitutes `q -> t`.
    pub fn subs_q_to_t(&self) -> Self {
        let den = self.den.q_to_t();
        assert!(!den.is_zero(), "q -> t hits a pole");
        Self::reduce(self.num.q_to_t(), den)
    }

    /// Substitutes `q -> q^k, t -> t^k`.
    pub fn dilate(&self, k: u32) -> Self {
        if k == 1 {
            return self.clone();
        }
        RatQT { num: self.num.dilate(k), den: self.den.dilate(k) }
    }
}

fn eval_rational(p: &IntPoly2, q0: &BigRational, t0: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for (m, c) in p.terms() {
        acc += BigRational::from_integer(c.clone()) * pow_rat(q0, m.q) * pow_rat(t0, m.t);
    }
    acc
}

fn pow_rat(x: &BigRational, e: u32) -> BigRational {
    num_traits::pow(x.clone(), e as usize)
}

/// Reduces an integer modulo `p`.
pub fn int_mod(c: &BigInt, p: u64) -> u64 {
    bigint_mod(c, p)
}

impl Zero for RatQT {
    fn zero() -> Self {
        RatQT::zero()
    }
    fn is_zero(&self) -> bool {
        RatQT::is_zero(self)
    }
}

impl One for RatQT {
    fn one() -> Self {
        RatQT::one()
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $imp:ident) => {
        impl $tr<&RatQT> for &RatQT {
            type Output = RatQT;
            fn $f(self, o: &RatQT) -> RatQT {
                self.$imp(o)
            }
        }
        impl $tr<RatQT> for RatQT {
            type Output = RatQT;
            fn $f(self, o: RatQT) -> RatQT {
                self.$imp(&o)
            }
        }
        impl $tr<&RatQT> for RatQT {
            type Output = RatQT;
            fn $f(self, o: &RatQT) -> RatQT {
                self.$imp(o)
            }
        }
        impl $tr<RatQT> for &RatQT {
            type Output = RatQT;
            fn $f(self, o: RatQT) -> RatQT {
                self.$imp(&o)
            }
        }
    };
}

binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);

impl RatQT {
    fn div_panicking(&self, o: &RatQT) -> RatQT {
        self.try_div(o).expect("division by zero in Q(q,t)")
    }
}

binop!(Div, div, div_panicking);

impl Neg for RatQT {
    type Output = RatQT;
    fn neg(self) -> RatQT {
        self.neg_ref()
    }
}

impl Neg for &RatQT {
    type Output = RatQT;
    fn neg(self) -> RatQT {
        self.neg_ref()
    }
}

impl AddAssign<&RatQT> for RatQT {
    fn add_assign(&mut self, o: &RatQT) {
        *self = self.add_ref(o);
    }
}

impl AddAssign<RatQT> for RatQT {
    fn add_assign(&mut self, o: RatQT) {
        *self = self.add_ref(&o);
    }
}

impl SubAssign<&RatQT> for RatQT {
    fn sub_assign(&mut self, o: &RatQT) {
        *self = self.sub_ref(o);
    }
}

impl MulAssign<&RatQT> for RatQT {
    fn mul_assign(&mut self, o: &RatQT) {
        *self = self.mul_ref(o);
    }
}

impl From<i64> for RatQT {
    fn from(c: i64) -> Self {
        RatQT::from_int(c)
    }
}

impl fmt::Display for RatQT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.nterms() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        let atomic = self.den.is_constant()
            || (self.den.nterms() == 1 && {
                let (m, c) = &self.den.terms()[0];
                c.is_one() && (m.q == 0 || m.t == 0)
            });
        if !atomic {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

impl fmt::Debug for RatQT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for RatQT {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(Error::Parse(format!("trailing input at {} in {s:?}", p.pos)));
        }
        Ok(v)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {}", self.pos))
    }

    fn expr(&mut self) -> Result<RatQT> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc += self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatQT> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.try_div(&d)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatQT> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            if e < 0 && base.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.s.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().map_err(|_| self.err("expected integer exponent"))
    }

    fn atom(&mut self) -> Result<RatQT> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(RatQT::q())
            }
            Some(b't') => {
                self.pos += 1;
                Ok(RatQT::t())
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().unwrap();
                Ok(RatQT::from_int(n))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

impl Serialize for RatQT {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RatQT {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
