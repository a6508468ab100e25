//! Exact scalars: rationals, `Z[q]`, the field `Q(q)`, and polynomials in `t`.

mod ratfunc;
mod tpoly;
mod zpoly;

pub use ratfunc::RatFunc;
pub use tpoly::TPoly;
pub use zpoly::ZPoly;

/// Arbitrary-precision rational number.
pub type BigRat = num_rational::BigRational;

/// Shorthand for the rational constant `n / d`.
pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(n.into(), d.into())
}
