//! Dense univariate polynomials in `q` with integer coefficients.
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so the
//! zero polynomial is the empty vector and structural equality is equality of
//! polynomials.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::BigRat;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * q^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        ZPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Largest `k` with `q^k` dividing `self` (0 for the zero polynomial).
    pub fn trailing_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    fn is_monomial(&self) -> bool {
        !self.is_zero() && self.trailing_zeros() == self.degree()
    }

    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(k <= self.trailing_zeros());
        ZPoly { coeffs: self.coeffs[k.min(self.coeffs.len())..].to_vec() }
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        ZPoly { coeffs }
    }

    pub fn neg(&self) -> Self {
        ZPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(short.coeffs.iter()) {
            *c += s;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, BigInt::zero());
        for (c, s) in coeffs.iter_mut().zip(other.coeffs.iter()) {
            *c -= s;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ZPoly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Divides every coefficient by `c`; `c` must divide all of them.
    pub fn div_int(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        ZPoly { coeffs: self.coeffs.iter().map(|x| x / c).collect() }
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        self.div_int(&c)
    }

    /// Exact quotient in `Z[q]`, or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if divisor.is_one() {
            return Some(self.clone());
        }
        if self.coeffs.len() < divisor.coeffs.len() {
            return None;
        }
        if divisor.is_constant() {
            let d = &divisor.coeffs[0];
            let mut out = Vec::with_capacity(self.coeffs.len());
            for c in &self.coeffs {
                let (quo, rem) = c.div_rem(d);
                if !rem.is_zero() {
                    return None;
                }
                out.push(quo);
            }
            return Some(ZPoly { coeffs: out });
        }
        let mut rem = self.coeffs.clone();
        let dl = divisor.coeffs.len();
        let lc = divisor.lc();
        let mut quot = vec![BigInt::zero(); rem.len() - dl + 1];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dl - 1];
            if top.is_zero() {
                continue;
            }
            let (qk, r) = top.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[k + j] -= &qk * d;
                }
            }
            quot[k] = qk;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(Self::from_coeffs(quot))
        } else {
            None
        }
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
    fn pseudo_rem(&self, b: &Self) -> Self {
        let mut r = self.clone();
        let lc = b.lc();
        let db = b.degree();
        while !r.is_zero() && r.degree() >= db {
            let shift = r.degree() - db;
            let lr = r.lc();
            r = r.scale(&lc).sub(&b.scale(&lr).shift_up(shift));
        }
        r
    }

    fn max_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRat::from_integer(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Greatest common divisor in `Z[q]`, normalized to a positive leading
    /// coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalize_sign();
        }
        if other.is_zero() {
            return self.normalize_sign();
        }
        if self.is_constant() || other.is_constant() {
            return Self::constant(self.content().gcd(&other.content()));
        }
        let tz = self.trailing_zeros().min(other.trailing_zeros());
        if self.is_monomial() || other.is_monomial() {
            return Self::monomial(self.content().gcd(&other.content()), tz);
        }
        let a = self.shift_down(self.trailing_zeros());
        let b = other.shift_down(other.trailing_zeros());
        let cont = a.content().gcd(&b.content());
        let pa = a.primitive();
        let pb = b.primitive();
        let g = primitive_gcd(&pa, &pb);
        g.scale(&cont).shift_up(tz)
    }

    fn normalize_sign(&self) -> Self {
        if self.lc().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub(crate) fn fmt_with(&self, f: &mut impl fmt::Write, var: &str) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let neg = c.sign() == Sign::Minus;
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag = c.abs();
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                f.write_str(var)?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

/// gcd of two primitive polynomials with positive leading coefficients.
fn primitive_gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a == b {
        return a.clone();
    }
    let (small, large) = if a.degree() <= b.degree() { (a, b) } else { (b, a) };
    if large.div_exact(small).is_some() {
        return small.clone();
    }
    if let Some(g) = heuristic_gcd(a, b) {
        return g;
    }
    prs_gcd(a, b)
}

/// Heuristic gcd: evaluate at a large integer, take the integer gcd and
/// lift it back by balanced base-`x` expansion. The lift is accepted only
/// after exact division checks, so a wrong guess just falls through.
fn heuristic_gcd(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let bound = a.max_norm().min(b.max_norm());
    let two = BigInt::from(2);
    let mut x = (&bound * &two + BigInt::from(29)).max(bound.sqrt() * 99);
    for _ in 0..6 {
        let va = a.eval_int(&x);
        let vb = b.eval_int(&x);
        if !va.is_zero() && !vb.is_zero() {
            let h = va.gcd(&vb);
            let cand = interpolate(&h, &x).primitive();
            if !cand.is_zero()
                && a.div_exact(&cand).is_some()
                && b.div_exact(&cand).is_some()
            {
                return Some(cand);
            }
        }
        x = &x * BigInt::from(73794) / BigInt::from(27011) + BigInt::from(7);
    }
    None
}

fn interpolate(h: &BigInt, x: &BigInt) -> ZPoly {
    let mut coeffs = Vec::new();
    let mut h = h.clone();
    let half = x / 2;
    while !h.is_zero() {
        let mut g = h.mod_floor(x);
        if g > half {
            g -= x;
        }
        h = (&h - &g) / x;
        coeffs.push(g);
    }
    ZPoly::from_coeffs(coeffs)
}

/// Primitive polynomial remainder sequence; slow but always correct.
fn prs_gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let (mut a, mut b) = if a.degree() >= b.degree() {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    while !b.is_zero() {
        let r = a.pseudo_rem(&b);
        a = b;
        b = r.primitive();
    }
    a.primitive()
}

impl PartialOrd for ZPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ZPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "q")
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> ZPoly {
        ZPoly::from_i64s(cs)
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (q^2 - 1)(q^2 + 1) and (q - 1)(q^3 + 2)
        let a = p(&[-1, 0, 1]).mul(&p(&[1, 0, 1]));
        let b = p(&[-1, 1]).mul(&p(&[2, 0, 0, 1]));
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
    }

    #[test]
    fn gcd_keeps_integer_content() {
        let a = p(&[6, 6]);
        let b = p(&[-4, 0, 4]);
        assert_eq!(a.gcd(&b), p(&[2, 2]));
    }

    #[test]
    fn gcd_with_monomials() {
        assert_eq!(p(&[0, 0, 3, 6]).gcd(&p(&[0, 0, 0, 9])), p(&[0, 0, 3]));
    }

    #[test]
    fn prs_agrees_with_heuristic() {
        let f = p(&[3, -1, 4, 1, -5, 9]);
        let g = p(&[2, 6, -5, 3]);
        let h = p(&[1, 1, 0, 2]);
        let a = f.mul(&h).primitive();
        let b = g.mul(&h).primitive();
        assert_eq!(prs_gcd(&a, &b), heuristic_gcd(&a, &b).unwrap());
        assert_eq!(a.gcd(&b), h);
    }

    #[test]
    fn exact_division() {
        let a = p(&[-1, 0, 1]);
        assert_eq!(a.div_exact(&p(&[-1, 1])), Some(p(&[1, 1])));
        assert_eq!(a.div_exact(&p(&[2, 1])), None);
        assert_eq!(p(&[2, 4]).div_exact(&p(&[2])), Some(p(&[1, 2])));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 0, 1]).to_string(), "q^2 - 1");
        assert_eq!(p(&[0, -2, 0, 3]).to_string(), "3*q^3 - 2*q");
        assert_eq!(p(&[]).to_string(), "0");
        assert_eq!(p(&[-7]).to_string(), "-7");
    }
}
