//! The field `Q(q)` in canonical form.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{BigRat, ZPoly};
use crate::error::{Error, Result};

/// An element of `Q(q)`.
///
/// Stored as `num / den` with `num, den` in `Z[q]`, coprime in `Z[q]`
/// (integer content included) and `den` having a positive leading
/// coefficient. This form is unique, so `==` decides equality in the field.
/// Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: ZPoly,
    den: ZPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: ZPoly::zero(), den: ZPoly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: ZPoly::one(), den: ZPoly::one() }
    }

    pub fn from_int(c: i64) -> Self {
        RatFunc { num: ZPoly::constant(BigInt::from(c)), den: ZPoly::one() }
    }

    pub fn from_rat(c: &BigRat) -> Self {
        RatFunc {
            num: ZPoly::constant(c.numer().clone()),
            den: ZPoly::constant(c.denom().clone()),
        }
    }

    pub fn from_poly(p: ZPoly) -> Self {
        RatFunc { num: p, den: ZPoly::one() }
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        let mono = ZPoly::monomial(BigInt::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            RatFunc { num: mono, den: ZPoly::one() }
        } else {
            RatFunc { num: ZPoly::one(), den: mono }
        }
    }

    /// `q - q^{-1}`.
    pub fn q_minus_qinv() -> Self {
        Self::sub(&Self::q(), &Self::q_pow(-1))
    }

    /// Reduced canonical form of `num / den`.
    pub fn normalize(num: ZPoly, den: ZPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        if den.lc().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Ok(RatFunc { num, den })
    }

    fn from_coprime(mut num: ZPoly, mut den: ZPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.lc().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RatFunc { num, den }
    }

    pub fn numer(&self) -> &ZPoly {
        &self.num
    }

    pub fn denom(&self) -> &ZPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value does not depend on `q`.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<BigRat> {
        if self.is_constant() {
            Some(BigRat::new(self.num.coeff(0), self.den.coeff(0)))
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let s = self.num.add(&other.num);
            if self.den.is_one() {
                return Self::from_coprime(s, ZPoly::one());
            }
            return Self::normalize(s, self.den.clone()).expect("nonzero denominator");
        }
        // Henrici: with g = gcd(b, d), gcd(a d' + c b', b' d' g) = gcd(a d' + c b', g).
        let g = self.den.gcd(&other.den);
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = other.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d1).add(&other.num.mul(&b1));
        if num.is_zero() {
            return Self::zero();
        }
        let den = b1.mul(&d1);
        if g.is_one() {
            return Self::from_coprime(num, den);
        }
        let h = num.gcd(&g);
        let num = num.div_exact(&h).expect("gcd divides");
        let g1 = g.div_exact(&h).expect("gcd divides");
        Self::from_coprime(num, den.mul(&g1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFunc { num: self.num.mul(&other.num), den: ZPoly::one() };
        }
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = other.den.div_exact(&g1).expect("gcd divides");
        let c = other.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        Self::from_coprime(a.mul(&c), b.mul(&d))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..k.unsigned_abs() {
            out = Self::mul(&out, &base);
        }
        Ok(out)
    }

    /// Exact value at `q = q0`.
    pub fn eval_at(&self, q0: &BigRat) -> Result<BigRat> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(Error::EvaluationAtPole);
        }
        Ok(self.num.eval(q0) / d)
    }

    /// `eval_at` re-embedded as a constant of `Q(q)`.
    pub fn specialize(&self, q0: &BigRat) -> Result<Self> {
        Ok(Self::from_rat(&self.eval_at(q0)?))
    }

    /// Formal derivative in `q`.
    pub fn derivative(&self) -> Self {
        let n1 = self.num.derivative().mul(&self.den);
        let n2 = self.num.mul(&self.den.derivative());
        Self::normalize(n1.sub(&n2), self.den.mul(&self.den)).expect("nonzero denominator")
    }

    /// Multiplicity of the root `q = 1` in the numerator minus that in the
    /// denominator.
    pub fn order_at_one(&self) -> i64 {
        fn mult(p: &ZPoly) -> i64 {
            let qm1 = ZPoly::from_i64s(&[-1, 1]);
            let mut p = p.clone();
            let mut k = 0;
            while let Some(r) = p.div_exact(&qm1) {
                p = r;
                k += 1;
            }
            k
        }
        assert!(!self.is_zero());
        mult(&self.num) - mult(&self.den)
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $call:expr) => {
        impl<'a> $tr<&'a RatFunc> for &'a RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &'a RatFunc) -> RatFunc {
                $call(self, rhs)
            }
        }
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                $call(&self, &rhs)
            }
        }
    };
}
binop!(Add, add, RatFunc::add);
binop!(Sub, sub, RatFunc::sub);
binop!(Mul, mul, RatFunc::mul);
binop!(Div, div, |a: &RatFunc, b: &RatFunc| a.div(b).expect("division by zero"));

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(&self)
    }
}

impl FromStr for RatFunc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match split_quotient(s) {
            Some((a, b)) => {
                Self::normalize(parse_poly(strip_parens(a))?, parse_poly(strip_parens(b))?)
            }
            None => Ok(Self::from_poly(parse_poly(strip_parens(s))?)),
        }
    }
}

/// Splits `A/B` at a top-level slash.
fn split_quotient(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

fn strip_parens(s: &str) -> &str {
    let s = s.trim();
    if s.starts_with('(') && s.ends_with(')') {
        s[1..s.len() - 1].trim()
    } else {
        s
    }
}

/// Parses integer-coefficient polynomials such as `3*q^2 - q + 1`.
pub(crate) fn parse_poly(s: &str) -> Result<ZPoly> {
    let err = || Error::Parse(format!("bad polynomial `{s}`"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err());
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && !(i > 0 && cur.ends_with('^')) {
            if i > 0 {
                if cur.is_empty() {
                    return Err(err());
                }
                terms.push((neg, std::mem::take(&mut cur)));
            }
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(err());
    }
    terms.push((neg, cur));
    let mut out = ZPoly::zero();
    for (neg, t) in terms {
        let (coef, pow) = match t.find('q') {
            None => (t.parse::<BigInt>().map_err(|_| err())?, 0usize),
            Some(pos) => {
                let c = t[..pos].trim_end_matches('*');
                let c = if c.is_empty() { BigInt::one() } else { c.parse().map_err(|_| err())? };
                let rest = &t[pos + 1..];
                let k = if rest.is_empty() {
                    1
                } else if let Some(e) = rest.strip_prefix('^') {
                    e.parse::<usize>().map_err(|_| err())?
                } else {
                    return Err(err());
                };
                (c, k)
            }
        };
        let coef = if neg { -coef } else { coef };
        out = out.add(&ZPoly::monomial(coef, pow));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn normalize_cancels_common_factor() {
        let f = RatFunc::normalize(ZPoly::from_i64s(&[-1, 0, 1]), ZPoly::from_i64s(&[-1, 1])).unwrap();
        assert_eq!(f, rf("q + 1"));
    }

    #[test]
    fn normalize_zero_numerator() {
        let f = RatFunc::normalize(ZPoly::zero(), ZPoly::from_i64s(&[0, 0, 0, 1])).unwrap();
        assert!(f.is_zero());
        assert!(f.denom().is_one());
    }

    #[test]
    fn normalize_rejects_zero_denominator() {
        let e = RatFunc::normalize(ZPoly::one(), ZPoly::zero()).unwrap_err();
        assert_eq!(e.to_string(), "division by zero polynomial");
    }

    #[test]
    fn eval_removable_singularity() {
        // (q^2 - 1)/(q - 1) is stored as q + 1.
        let f = rf("(q^2 - 1)/(q - 1)");
        assert_eq!(f.eval_at(&BigRat::from_integer(1.into())).unwrap(), BigRat::from_integer(2.into()));
    }

    #[test]
    fn eval_direct_substitution() {
        let f = RatFunc::q() + RatFunc::q_pow(-1);
        let v = f.eval_at(&BigRat::from_integer(2.into())).unwrap();
        assert_eq!(v, BigRat::new(5.into(), 2.into()));
    }

    #[test]
    fn eval_genuine_pole() {
        let f = rf("(1)/(q - 1)");
        let e = f.eval_at(&BigRat::one()).unwrap_err();
        assert_eq!(e.to_string(), "evaluation at pole");
    }

    #[test]
    fn text_form_round_trips() {
        for s in ["(q^2 - 1)/(q)", "q + 1", "0", "-3", "(2*q^3 - q)/(3*q^2 + 1)", "(1)/(2)"] {
            assert_eq!(rf(s).to_string(), s);
        }
    }

    #[test]
    fn negative_denominator_is_flipped() {
        assert_eq!(rf("(1)/(-q)").to_string(), "(-1)/(q)");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("q^".parse::<RatFunc>().is_err());
        assert!("x + 1".parse::<RatFunc>().is_err());
        assert!("(1)/(0)".parse::<RatFunc>().is_err());
    }

    #[test]
    fn derivative_of_quotient() {
        // d/dq (1/q) = -1/q^2
        assert_eq!(RatFunc::q_pow(-1).derivative(), RatFunc::q_pow(-2).neg());
    }
}
