use super::{Poly, Space};
use crate::error::{Error, Result};

/// A derivation of the coordinate algebra, `X = Σ X^μ ∂/∂x^μ`, with
/// polynomial components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    space: Space,
    components: Vec<Poly>,
}

impl VectorField {
    pub fn new(space: &Space, components: Vec<Poly>) -> Result<Self> {
        if components.len() != space.dim() {
            return Err(Error::ComponentCount { expected: space.dim(), found: components.len() });
        }
        for c in &components {
            space.ensure_same(c.space())?;
        }
        Ok(VectorField { space: space.clone(), components })
    }

    pub fn zero(space: &Space) -> Self {
        VectorField { space: space.clone(), components: vec![Poly::zero(space); space.dim()] }
    }

    /// The coordinate field `∂/∂x^index`.
    pub fn coordinate(space: &Space, index: usize) -> Self {
        let mut field = Self::zero(space);
        field.components[index] = Poly::one(space);
        field
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn component(&self, index: usize) -> &Poly {
        &self.components[index]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    /// `X(f) = Σ X^μ ∂f/∂x^μ`.
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        self.space.ensure_same(f.space())?;
        Ok(self.apply_unchecked(f))
    }

    pub(crate) fn apply_unchecked(&self, f: &Poly) -> Poly {
        self.components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(Poly::zero(&self.space), |acc, (mu, c)| &acc + &(c * &f.partial(mu)))
    }

    /// The Lie bracket `[X, Y]^μ = X(Y^μ) − Y(X^μ)`.
    pub fn bracket(&self, other: &VectorField) -> Result<VectorField> {
        self.space.ensure_same(&other.space)?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(x, y)| &self.apply_unchecked(y) - &other.apply_unchecked(x))
            .collect();
        Ok(VectorField { space: self.space.clone(), components })
    }

    /// The field `f·X`.
    pub fn scale_by(&self, f: &Poly) -> Result<VectorField> {
        self.space.ensure_same(f.space())?;
        Ok(VectorField {
            space: self.space.clone(),
            components: self.components.iter().map(|c| c * f).collect(),
        })
    }

    pub fn try_add(&self, other: &VectorField) -> Result<VectorField> {
        self.space.ensure_same(&other.space)?;
        Ok(VectorField {
            space: self.space.clone(),
            components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect(),
        })
    }
}

/// A polynomial map `φ: source → target`, given by one component
/// `φ^α(x)` per target coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothMap {
    source: Space,
    target: Space,
    components: Vec<Poly>,
}

impl SmoothMap {
    pub fn new(source: &Space, target: &Space, components: Vec<Poly>) -> Result<Self> {
        if components.len() != target.dim() {
            return Err(Error::ComponentCount { expected: target.dim(), found: components.len() });
        }
        for c in &components {
            source.ensure_same(c.space())?;
        }
        Ok(SmoothMap { source: source.clone(), target: target.clone(), components })
    }

    pub fn identity(space: &Space) -> Self {
        SmoothMap {
            source: space.clone(),
            target: space.clone(),
            components: (0..space.dim()).map(|i| Poly::var(space, i)).collect(),
        }
    }

    pub fn source(&self) -> &Space {
        &self.source
    }

    pub fn target(&self) -> &Space {
        &self.target
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn component(&self, index: usize) -> &Poly {
        &self.components[index]
    }

    /// `outer ∘ self`: first apply `self`, then `outer`.
    pub fn then(&self, outer: &SmoothMap) -> Result<SmoothMap> {
        self.target.ensure_same(&outer.source)?;
        let components = outer
            .components
            .iter()
            .map(|c| c.substitute(self))
            .collect::<Result<Vec<_>>>()?;
        Ok(SmoothMap { source: self.source.clone(), target: outer.target.clone(), components })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::int;

    fn setup() -> (Space, Poly, Poly) {
        let s = Space::new(["x", "y"]).unwrap();
        let x = Poly::var(&s, 0);
        let y = Poly::var(&s, 1);
        (s, x, y)
    }

    #[test]
    fn vector_field_action() {
        let (s, x, y) = setup();
        let dx = VectorField::coordinate(&s, 0);
        assert_eq!(dx.apply(&x.pow(2)).unwrap(), x.scale(&int(2)));

        let euler = VectorField::new(&s, vec![x.clone(), Poly::zero(&s)]).unwrap();
        assert_eq!(euler.apply(&x.pow(2)).unwrap(), x.pow(2).scale(&int(2)));

        let y_dx = VectorField::new(&s, vec![y.clone(), Poly::zero(&s)]).unwrap();
        assert!(y_dx.apply(&y).unwrap().is_zero());
    }

    #[test]
    fn brackets() {
        let (s, x, _) = setup();
        let dx = VectorField::coordinate(&s, 0);
        let dy = VectorField::coordinate(&s, 1);
        assert!(dx.bracket(&dy).unwrap().is_zero());

        let euler = VectorField::new(&s, vec![x, Poly::zero(&s)]).unwrap();
        let expected = VectorField::new(&s, vec![Poly::integer(&s, -1), Poly::zero(&s)]).unwrap();
        assert_eq!(euler.bracket(&dx).unwrap(), expected);
        assert!(euler.bracket(&euler).unwrap().is_zero());
    }

    #[test]
    fn component_count_checked() {
        let (s, x, _) = setup();
        assert_eq!(
            VectorField::new(&s, vec![x]),
            Err(Error::ComponentCount { expected: 2, found: 1 })
        );
    }

    #[test]
    fn map_composition_order() {
        let (s, x, y) = setup();
        let t = Space::new(["u"]).unwrap();
        let u = Poly::var(&t, 0);
        let phi = SmoothMap::new(&s, &t, vec![&x + &y]).unwrap();
        let psi = SmoothMap::new(&t, &t, vec![u.pow(2)]).unwrap();
        let both = phi.then(&psi).unwrap();
        assert_eq!(both.component(0), &(&x + &y).pow(2));
        assert!(psi.then(&phi).is_err());
    }
}
