use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{SmoothMap, Space};
use crate::error::{Error, Result};

/// Exponent vector of a polynomial term, one entry per coordinate.
///
/// Ordered graded-lexicographically: total degree first, then
/// lexicographically with earlier coordinates dominant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponents(Vec<u32>);

impl Exponents {
    pub fn new(exps: Vec<u32>) -> Self {
        Exponents(exps)
    }

    pub fn constant(dim: usize) -> Self {
        Exponents(vec![0; dim])
    }

    pub fn unit(dim: usize, index: usize) -> Self {
        let mut exps = vec![0; dim];
        exps[index] = 1;
        Exponents(exps)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// A polynomial with exact rational coefficients over a [`Space`].
///
/// Terms with zero coefficient are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    space: Space,
    terms: BTreeMap<Exponents, BigRational>,
}

impl Poly {
    pub fn zero(space: &Space) -> Self {
        Poly { space: space.clone(), terms: BTreeMap::new() }
    }

    pub fn one(space: &Space) -> Self {
        Self::constant(space, BigRational::one())
    }

    pub fn constant(space: &Space, value: BigRational) -> Self {
        let mut p = Self::zero(space);
        if !value.is_zero() {
            p.terms.insert(Exponents::constant(space.dim()), value);
        }
        p
    }

    pub fn integer(space: &Space, value: i64) -> Self {
        Self::constant(space, BigRational::from_integer(BigInt::from(value)))
    }

    /// The coordinate function `x^index`.
    pub fn var(space: &Space, index: usize) -> Self {
        assert!(index < space.dim(), "coordinate index out of range");
        let mut p = Self::zero(space);
        p.terms.insert(Exponents::unit(space.dim(), index), BigRational::one());
        p
    }

    pub fn var_named(space: &Space, name: &str) -> Result<Self> {
        Ok(Self::var(space, space.index_of(name)?))
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// dropping zeros.
    pub fn from_terms<I>(space: &Space, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, BigRational)>,
    {
        let mut p = Self::zero(space);
        for (exps, coeff) in terms {
            if exps.0.len() != space.dim() {
                return Err(Error::ComponentCount { expected: space.dim(), found: exps.0.len() });
            }
            p.add_term(exps, coeff);
        }
        Ok(p)
    }

    fn add_term(&mut self, exps: Exponents, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.is_constant().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponents::total_degree).max()
    }

    pub fn scale(&self, factor: &BigRational) -> Poly {
        if factor.is_zero() {
            return Self::zero(&self.space);
        }
        Poly {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * factor)).collect(),
        }
    }

    pub fn arith(&self, other: &Poly, op: ArithOp) -> Result<Poly> {
        self.space.ensure_same(&other.space)?;
        Ok(match op {
            ArithOp::Add => self.add_unchecked(other, false),
            ArithOp::Sub => self.add_unchecked(other, true),
            ArithOp::Mul => self.mul_unchecked(other),
        })
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.arith(other, ArithOp::Add)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.arith(other, ArithOp::Sub)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.arith(other, ArithOp::Mul)
    }

    fn add_unchecked(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), if negate { -c } else { c.clone() });
        }
        out
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        let mut out = Self::zero(&self.space);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.mul(eb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut result = Self::one(&self.space);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    /// Divides by a constant polynomial.
    pub fn try_div(&self, divisor: &Poly) -> Result<Poly> {
        self.space.ensure_same(&divisor.space)?;
        let value = divisor.constant_value().ok_or(Error::NonConstantDivision)?;
        if value.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.scale(&value.recip()))
    }

    /// Formal partial derivative with respect to the coordinate at `index`.
    pub fn partial(&self, index: usize) -> Poly {
        assert!(index < self.space.dim(), "coordinate index out of range");
        let mut out = Self::zero(&self.space);
        for (e, c) in &self.terms {
            let k = e.0[index];
            if k == 0 {
                continue;
            }
            let mut exps = e.0.clone();
            exps[index] -= 1;
            out.add_term(Exponents(exps), c * BigRational::from_integer(BigInt::from(k)));
        }
        out
    }

    pub fn partial_named(&self, coord: &str) -> Result<Poly> {
        Ok(self.partial(self.space.index_of(coord)?))
    }

    /// Composition `self ∘ map`: `self` lives over the map's target and the
    /// result over its source.
    pub fn substitute(&self, map: &SmoothMap) -> Result<Poly> {
        self.space.ensure_same(map.target())?;
        let source = map.source();
        let mut powers: Vec<Vec<Poly>> = map
            .components()
            .iter()
            .map(|c| vec![Poly::one(source), c.clone()])
            .collect();
        let mut out = Poly::zero(source);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(source, c.clone());
            for (var, &k) in e.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let cache = &mut powers[var];
                while cache.len() <= k as usize {
                    let next = cache.last().unwrap().mul_unchecked(&cache[1]);
                    cache.push(next);
                }
                term = term.mul_unchecked(&cache[k as usize]);
            }
            out = out.add_unchecked(&term, false);
        }
        Ok(out)
    }

    /// Leading coefficient sign in the printing order, used by renderers.
    pub fn is_single_negative_term(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().unwrap().is_negative()
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;

    /// Panics if the operands live over different spaces.
    fn add(self, rhs: &'a Poly) -> Poly {
        self.try_add(rhs).expect("polynomial addition across spaces")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn sub(self, rhs: &'a Poly) -> Poly {
        self.try_sub(rhs).expect("polynomial subtraction across spaces")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn mul(self, rhs: &'a Poly) -> Poly {
        self.try_mul(rhs).expect("polynomial product across spaces")
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Space {
        Space::new(["x", "y"]).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn difference_of_squares() {
        let s = xy();
        let x = Poly::var(&s, 0);
        let y = Poly::var(&s, 1);
        let lhs = (&x + &y).try_mul(&(&x - &y)).unwrap();
        assert_eq!(lhs, &x.pow(2) - &y.pow(2));
    }

    #[test]
    fn additive_identity_and_cancellation() {
        let s = xy();
        let x = Poly::var(&s, 0);
        assert_eq!(&x + &Poly::zero(&s), x);
        let z = &x - &x;
        assert!(z.is_zero());
        assert_eq!(z.num_terms(), 0);
    }

    #[test]
    fn partials() {
        let s = xy();
        let x = Poly::var(&s, 0);
        let y = Poly::var(&s, 1);
        let f = &x.pow(2) * &y;
        assert_eq!(f.partial(0), &Poly::integer(&s, 2) * &(&x * &y));
        assert!(y.partial(0).is_zero());
        assert_eq!(x.pow(3).partial_named("x").unwrap(), &Poly::integer(&s, 3) * &x.pow(2));
        assert_eq!(x.partial_named("w"), Err(Error::UnknownCoordinate("w".into())));
    }

    #[test]
    fn space_mismatch_is_an_error() {
        let a = Poly::var(&xy(), 0);
        let b = Poly::var(&Space::new(["x"]).unwrap(), 0);
        assert!(matches!(a.try_add(&b), Err(Error::SpaceMismatch { .. })));
        assert!(matches!(a.arith(&b, ArithOp::Mul), Err(Error::SpaceMismatch { .. })));
    }

    #[test]
    fn substitution() {
        let src = Space::new(["x"]).unwrap();
        let tgt = Space::new(["y"]).unwrap();
        let x = Poly::var(&src, 0);
        let y = Poly::var(&tgt, 0);

        let shift = SmoothMap::new(&src, &tgt, vec![&x + &Poly::one(&src)]).unwrap();
        let expected = &(&x.pow(2) + &(&Poly::integer(&src, 2) * &x)) + &Poly::one(&src);
        assert_eq!(y.pow(2).substitute(&shift).unwrap(), expected);
        assert_eq!(Poly::one(&tgt).substitute(&shift).unwrap(), Poly::one(&src));

        let square = SmoothMap::new(&src, &tgt, vec![x.pow(2)]).unwrap();
        assert_eq!(y.substitute(&square).unwrap(), x.pow(2));
        assert!(x.substitute(&square).is_err());
    }

    #[test]
    fn division_by_constants_only() {
        let s = xy();
        let x = Poly::var(&s, 0);
        let half = x.try_div(&Poly::integer(&s, 2)).unwrap();
        assert_eq!(half, x.scale(&q(1, 2)));
        assert_eq!(x.try_div(&x), Err(Error::NonConstantDivision));
        assert_eq!(x.try_div(&Poly::zero(&s)), Err(Error::DivisionByZero));
    }

    #[test]
    fn graded_lex_order() {
        let a = Exponents::new(vec![0, 2]);
        let b = Exponents::new(vec![1, 0]);
        let c = Exponents::new(vec![1, 1]);
        let d = Exponents::new(vec![2, 0]);
        assert!(b < a && a < c && c < d);
    }
}
