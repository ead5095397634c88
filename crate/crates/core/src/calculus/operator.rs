use std::fmt;
use std::sync::Arc;

use crate::coeffs::{Poly, Space};
use crate::error::Result;
use crate::forms::{Form, Generator};
use crate::grading::{MultiDegree, Sign};

/// A linear operator on forms carrying a multidegree. The degree is what the
/// graded commutator pairs against.
pub trait Operator: Send + Sync {
    fn degree(&self) -> MultiDegree;

    fn apply(&self, form: &Form) -> Result<Form>;
}

impl<T: Operator + ?Sized> Operator for &T {
    fn degree(&self) -> MultiDegree {
        (**self).degree()
    }

    fn apply(&self, form: &Form) -> Result<Form> {
        (**self).apply(form)
    }
}

impl<T: Operator + ?Sized> Operator for Box<T> {
    fn degree(&self) -> MultiDegree {
        (**self).degree()
    }

    fn apply(&self, form: &Form) -> Result<Form> {
        (**self).apply(form)
    }
}

impl<T: Operator + ?Sized> Operator for Arc<T> {
    fn degree(&self) -> MultiDegree {
        (**self).degree()
    }

    fn apply(&self, form: &Form) -> Result<Form> {
        (**self).apply(form)
    }
}

type CoeffRule = dyn Fn(&Poly) -> Form + Send + Sync;
type GeneratorRule = dyn Fn(&Space, &Generator) -> Form + Send + Sync;

/// A graded derivation, determined by what it does to coefficients and to
/// generators and extended to all forms by the signed Leibniz rule
/// `∂(ab) = ∂(a)b + (−1)^{⟨deg ∂, deg a⟩} a∂(b)`.
#[derive(Clone)]
pub struct GradedDerivation {
    degree: MultiDegree,
    space: Option<Space>,
    on_coeff: Arc<CoeffRule>,
    on_generator: Arc<GeneratorRule>,
}

impl GradedDerivation {
    pub fn new<C, G>(degree: MultiDegree, on_coeff: C, on_generator: G) -> Self
    where
        C: Fn(&Poly) -> Form + Send + Sync + 'static,
        G: Fn(&Space, &Generator) -> Form + Send + Sync + 'static,
    {
        GradedDerivation {
            degree,
            space: None,
            on_coeff: Arc::new(on_coeff),
            on_generator: Arc::new(on_generator),
        }
    }

    /// Restricts the derivation to forms over `space`; other inputs are
    /// rejected with a space mismatch.
    pub fn bound_to(mut self, space: &Space) -> Self {
        self.space = Some(space.clone());
        self
    }

    pub fn on_coeff(&self, f: &Poly) -> Form {
        (self.on_coeff)(f)
    }

    pub fn on_generator(&self, space: &Space, g: &Generator) -> Form {
        (self.on_generator)(space, g)
    }

    pub(crate) fn apply_unchecked(&self, form: &Form) -> Form {
        let space = form.space().clone();
        form.map_monomials(|coeff, gens, out| {
            out.add_sandwich(&Poly::one(&space), &[], &self.on_coeff(coeff), gens);
            let negated = -coeff;
            let mut prefix_degree = MultiDegree::zero();
            for (i, g) in gens.iter().enumerate() {
                let image = self.on_generator(&space, g);
                if !image.is_zero() {
                    let sign = Sign::of_pairing(&self.degree, &prefix_degree);
                    let c = if sign.is_minus() { &negated } else { coeff };
                    out.add_sandwich(c, &gens[..i], &image, &gens[i + 1..]);
                }
                prefix_degree = &prefix_degree + &g.degree();
            }
        })
    }
}

impl Operator for GradedDerivation {
    fn degree(&self) -> MultiDegree {
        self.degree.clone()
    }

    fn apply(&self, form: &Form) -> Result<Form> {
        if let Some(space) = &self.space {
            space.ensure_same(form.space())?;
        }
        Ok(self.apply_unchecked(form))
    }
}

impl fmt::Debug for GradedDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedDerivation")
            .field("degree", &self.degree)
            .field("space", &self.space)
            .finish_non_exhaustive()
    }
}

/// The graded commutator `[A, B] = A∘B − (−1)^{⟨deg A, deg B⟩} B∘A`,
/// evaluated pointwise.
#[derive(Clone, Debug)]
pub struct Commutator<A, B> {
    first: A,
    second: B,
}

pub fn graded_commutator<A: Operator, B: Operator>(first: A, second: B) -> Commutator<A, B> {
    Commutator { first, second }
}

impl<A: Operator, B: Operator> Operator for Commutator<A, B> {
    fn degree(&self) -> MultiDegree {
        &self.first.degree() + &self.second.degree()
    }

    fn apply(&self, form: &Form) -> Result<Form> {
        let ab = self.first.apply(&self.second.apply(form)?)?;
        let ba = self.second.apply(&self.first.apply(form)?)?;
        let sign = Sign::of_pairing(&self.first.degree(), &self.second.degree());
        Ok(if sign.is_minus() { &ab + &ba } else { &ab - &ba })
    }
}

/// Composition `outer ∘ inner`.
#[derive(Clone, Debug)]
pub struct Composite<A, B> {
    outer: A,
    inner: B,
}

pub fn compose<A: Operator, B: Operator>(outer: A, inner: B) -> Composite<A, B> {
    Composite { outer, inner }
}

impl<A: Operator, B: Operator> Operator for Composite<A, B> {
    fn degree(&self) -> MultiDegree {
        &self.outer.degree() + &self.inner.degree()
    }

    fn apply(&self, form: &Form) -> Result<Form> {
        self.outer.apply(&self.inner.apply(form)?)
    }
}

/// The zero derivation of a given degree; handy as a neutral element in
/// operator identities.
pub fn zero_derivation(degree: MultiDegree) -> GradedDerivation {
    GradedDerivation::new(degree, |f| Form::zero(f.space()), |s, _| Form::zero(s))
}
