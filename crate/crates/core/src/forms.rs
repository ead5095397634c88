//! The algebra of iterated differential forms over a coordinate space.
//!
//! A form is a finite sum of monomials `f · g₁^{a₁} ∧ ⋯ ∧ g_r^{a_r}` where the
//! `g_i` are generators `d_K x^μ` listed in canonical order. A generator has
//! multidegree `e_K`, so it is odd exactly when `|K|` is odd; odd generators
//! square to zero, even ones behave like polynomial variables.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::coeffs::{Poly, Rational, Space};
use crate::error::{Error, Result};
use crate::grading::{koszul_sign, IndexSet, MultiDegree, Sign};

/// The generator `d_K x^μ`.
///
/// Ordered by the slot set (as a sorted sequence, lexicographically) and then
/// by coordinate index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    slots: IndexSet,
    coord: usize,
}

impl Generator {
    pub fn new(slots: IndexSet, coord: usize) -> Result<Self> {
        if slots.is_empty() {
            return Err(Error::InvalidIndexSet("a generator needs at least one slot".into()));
        }
        Ok(Generator { slots, coord })
    }

    /// `d_k x^μ`.
    pub fn single(slot: u32, coord: usize) -> Self {
        Generator { slots: IndexSet::singleton(slot), coord }
    }

    pub fn slots(&self) -> &IndexSet {
        &self.slots
    }

    pub fn coord(&self) -> usize {
        self.coord
    }

    pub fn degree(&self) -> MultiDegree {
        self.slots.degree()
    }

    pub fn is_odd(&self) -> bool {
        self.slots.len() % 2 == 1
    }
}

/// A generator raised to a positive power.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factor {
    pub generator: Generator,
    pub exp: u32,
}

/// Canonical factor list of a monomial, strictly increasing by generator.
pub type FactorList = Vec<Factor>;

/// Multidegree `Σ exp · e_K` of a factor list.
pub fn factors_degree(factors: &[Factor]) -> MultiDegree {
    factors.iter().fold(MultiDegree::zero(), |acc, f| {
        &acc + &f.generator.degree().scaled(f.exp as i64)
    })
}

/// Degree of a factor list in a single slot.
pub fn factors_slot_degree(factors: &[Factor], slot: u32) -> i64 {
    factors
        .iter()
        .filter(|f| f.generator.slots.contains(slot))
        .map(|f| f.exp as i64)
        .sum()
}

/// Expands a factor list into its generators with repetition.
pub fn flatten(factors: &[Factor]) -> Vec<Generator> {
    factors
        .iter()
        .flat_map(|f| std::iter::repeat_n(f.generator.clone(), f.exp as usize))
        .collect()
}

/// Sorts a product of generators into canonical order. Returns `None` when
/// an odd generator repeats, since the product then vanishes.
pub fn normalize_product(generators: &[Generator]) -> Option<(Sign, FactorList)> {
    let mut order: Vec<usize> = (0..generators.len()).collect();
    order.sort_by(|&a, &b| generators[a].cmp(&generators[b]));
    let degrees: Vec<MultiDegree> = generators.iter().map(Generator::degree).collect();
    let sign = koszul_sign(&degrees, &order);

    let mut factors: FactorList = Vec::new();
    for &i in &order {
        let g = &generators[i];
        match factors.last_mut() {
            Some(last) if &last.generator == g => {
                if g.is_odd() {
                    return None;
                }
                last.exp += 1;
            }
            _ => factors.push(Factor { generator: g.clone(), exp: 1 }),
        }
    }
    Some((sign, factors))
}

/// An element of the algebra of iterated forms, always in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    space: Space,
    terms: BTreeMap<FactorList, Poly>,
}

/// Accumulates terms into a normalized [`Form`].
#[derive(Clone, Debug)]
pub struct FormBuilder {
    space: Space,
    terms: BTreeMap<FactorList, Poly>,
}

impl FormBuilder {
    pub fn new(space: &Space) -> Self {
        FormBuilder { space: space.clone(), terms: BTreeMap::new() }
    }

    /// Adds `coeff · factors` for a factor list already in canonical form.
    pub fn add_canonical(&mut self, coeff: Poly, factors: FactorList) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(factors) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Adds `coeff · g₁ ∧ ⋯ ∧ g_r` for generators in arbitrary order.
    pub fn add_product(&mut self, coeff: Poly, generators: &[Generator]) {
        if coeff.is_zero() {
            return;
        }
        if let Some((sign, factors)) = normalize_product(generators) {
            let coeff = if sign.is_minus() { -&coeff } else { coeff };
            self.add_canonical(coeff, factors);
        }
    }

    pub fn add_form(&mut self, form: &Form) {
        for (k, c) in &form.terms {
            self.add_canonical(c.clone(), k.clone());
        }
    }

    /// Adds `coeff · prefix ∧ form ∧ suffix`.
    pub fn add_sandwich(&mut self, coeff: &Poly, prefix: &[Generator], form: &Form, suffix: &[Generator]) {
        let mut buf = Vec::with_capacity(prefix.len() + suffix.len() + 4);
        for (k, c) in &form.terms {
            buf.clear();
            buf.extend_from_slice(prefix);
            buf.extend(flatten(k));
            buf.extend_from_slice(suffix);
            self.add_product(coeff * c, &buf);
        }
    }

    pub fn finish(self) -> Form {
        Form { space: self.space, terms: self.terms }
    }
}

/// Builds a normalized form from unordered products of generators.
pub fn normalize(space: &Space, raw: Vec<(Poly, Vec<Generator>)>) -> Result<Form> {
    let mut b = FormBuilder::new(space);
    for (coeff, gens) in raw {
        space.ensure_same(coeff.space())?;
        if let Some(g) = gens.iter().find(|g| g.coord >= space.dim()) {
            return Err(Error::UnknownCoordinate(format!("#{}", g.coord)));
        }
        b.add_product(coeff, &gens);
    }
    Ok(b.finish())
}

impl Form {
    pub fn zero(space: &Space) -> Self {
        Form { space: space.clone(), terms: BTreeMap::new() }
    }

    pub fn one(space: &Space) -> Self {
        Self::from_poly(Poly::one(space))
    }

    pub fn from_poly(coeff: Poly) -> Self {
        let mut b = FormBuilder::new(coeff.space());
        b.add_canonical(coeff, Vec::new());
        b.finish()
    }

    pub fn constant(space: &Space, value: Rational) -> Self {
        Self::from_poly(Poly::constant(space, value))
    }

    /// The form consisting of one generator with unit coefficient.
    pub fn generator(space: &Space, generator: Generator) -> Result<Self> {
        normalize(space, vec![(Poly::one(space), vec![generator])])
    }

    /// `d_K x^μ` by coordinate name.
    pub fn d_coord(space: &Space, slots: &[u32], coord: &str) -> Result<Self> {
        let g = Generator::new(IndexSet::new(slots.iter().copied())?, space.index_of(coord)?)?;
        Self::generator(space, g)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FactorList, &Poly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Returns the coefficient if the form has no generators at all.
    pub fn as_poly(&self) -> Option<Poly> {
        match self.terms.len() {
            0 => Some(Poly::zero(&self.space)),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    /// Largest slot that occurs; `0` for pure coefficients.
    pub fn max_slot(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|k| k.iter().filter_map(|f| f.generator.slots.largest()))
            .max()
            .unwrap_or(0)
    }

    /// Splits into homogeneous pieces keyed by multidegree.
    pub fn multidegree_components(&self) -> BTreeMap<MultiDegree, Form> {
        let mut out: BTreeMap<MultiDegree, FormBuilder> = BTreeMap::new();
        for (k, c) in &self.terms {
            out.entry(factors_degree(k))
                .or_insert_with(|| FormBuilder::new(&self.space))
                .add_canonical(c.clone(), k.clone());
        }
        out.into_iter().map(|(d, b)| (d, b.finish())).collect()
    }

    /// The common multidegree of all terms, if the form is homogeneous.
    /// Zero is homogeneous of every degree and yields `None`.
    pub fn homogeneous_degree(&self) -> Option<MultiDegree> {
        let mut degrees = self.terms.keys().map(|k| factors_degree(k));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Keeps the terms whose factor list satisfies `keep`.
    pub fn filter_terms<F: Fn(&[Factor]) -> bool>(&self, keep: F) -> Form {
        Form {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Form {
        if factor.is_zero() {
            return Form::zero(&self.space);
        }
        Form {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.scale(factor))).collect(),
        }
    }

    /// Multiplication by a coefficient.
    pub fn mul_poly(&self, f: &Poly) -> Result<Form> {
        self.space.ensure_same(f.space())?;
        let mut b = FormBuilder::new(&self.space);
        for (k, c) in &self.terms {
            b.add_canonical(c * f, k.clone());
        }
        Ok(b.finish())
    }

    pub fn try_add(&self, other: &Form) -> Result<Form> {
        self.space.ensure_same(&other.space)?;
        let mut b = FormBuilder { space: self.space.clone(), terms: self.terms.clone() };
        b.add_form(other);
        Ok(b.finish())
    }

    pub fn try_sub(&self, other: &Form) -> Result<Form> {
        self.try_add(&-other)
    }

    /// The graded-commutative product.
    pub fn wedge(&self, other: &Form) -> Result<Form> {
        self.space.ensure_same(&other.space)?;
        let mut b = FormBuilder::new(&self.space);
        let mut buf = Vec::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let coeff = ca * cb;
                if ka.is_empty() || kb.is_empty() {
                    let key = if ka.is_empty() { kb.clone() } else { ka.clone() };
                    b.add_canonical(coeff, key);
                    continue;
                }
                buf.clear();
                buf.extend(flatten(ka));
                buf.extend(flatten(kb));
                b.add_product(coeff, &buf);
            }
        }
        Ok(b.finish())
    }

    pub fn pow(&self, exp: u32) -> Form {
        (0..exp).fold(Form::one(&self.space), |acc, _| &acc * self)
    }

    /// Rebuilds the form by mapping every monomial through `f`, which
    /// receives the coefficient and the flattened generator list.
    pub(crate) fn map_monomials<F>(&self, mut f: F) -> Form
    where
        F: FnMut(&Poly, &[Generator], &mut FormBuilder),
    {
        let mut b = FormBuilder::new(&self.space);
        for (k, c) in &self.terms {
            f(c, &flatten(k), &mut b);
        }
        b.finish()
    }
}

impl<'a> Add<&'a Form> for &'a Form {
    type Output = Form;

    /// Panics if the operands live over different spaces.
    fn add(self, rhs: &'a Form) -> Form {
        self.try_add(rhs).expect("form addition across spaces")
    }
}

impl<'a> Sub<&'a Form> for &'a Form {
    type Output = Form;

    fn sub(self, rhs: &'a Form) -> Form {
        self.try_sub(rhs).expect("form subtraction across spaces")
    }
}

impl<'a> Mul<&'a Form> for &'a Form {
    type Output = Form;

    /// The wedge product. Panics if the operands live over different spaces.
    fn mul(self, rhs: &'a Form) -> Form {
        self.wedge(rhs).expect("wedge product across spaces")
    }
}

impl Neg for &Form {
    type Output = Form;

    fn neg(self) -> Form {
        Form {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }
}
