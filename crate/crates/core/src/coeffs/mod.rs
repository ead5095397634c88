//! The coefficient algebra: polynomials with exact rational coefficients over
//! a fixed list of coordinates, together with polynomial vector fields and
//! polynomial maps between coordinate spaces.

mod field;
mod poly;
mod space;

pub use field::{SmoothMap, VectorField};
pub use poly::{ArithOp, Exponents, Poly};
pub use space::Space;

pub use num_rational::BigRational as Rational;

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// The rational `num/den`. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
