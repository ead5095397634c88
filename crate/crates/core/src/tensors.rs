//! Covariant tensors on the coordinate space and their embedding `ι_p` into
//! iterated forms, `dx^{μ₁}⊗⋯⊗dx^{μ_p} ↦ d₁x^{μ₁}∧⋯∧d_p x^{μ_p}`.

use std::collections::BTreeMap;

use crate::calculus::{insert, kappa, relabel_slots, SlotPermutation};
use crate::coeffs::{Poly, Rational, Space, VectorField};
use crate::error::{Error, Result};
use crate::forms::{factors_degree, Factor, Form, FormBuilder, Generator};
use crate::grading::{IndexSet, MultiDegree};

/// A covariant `p`-tensor stored as a sparse map from index tuples to
/// coefficients. Absent tuples are zero, and zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovariantTensor {
    space: Space,
    order: usize,
    components: BTreeMap<Vec<usize>, Poly>,
}

impl CovariantTensor {
    pub fn zero(space: &Space, order: usize) -> Self {
        CovariantTensor { space: space.clone(), order, components: BTreeMap::new() }
    }

    /// The order-0 tensor `f`.
    pub fn scalar(f: Poly) -> Self {
        let mut t = Self::zero(f.space(), 0);
        t.accumulate(Vec::new(), f);
        t
    }

    /// Builds a tensor from `(index tuple, value)` pairs; repeated tuples add up.
    pub fn from_components<I>(space: &Space, order: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Poly)>,
    {
        let mut t = Self::zero(space, order);
        for (idx, value) in entries {
            if idx.len() != order {
                return Err(Error::InvalidTensor(format!(
                    "index tuple {idx:?} has length {}, expected {order}",
                    idx.len()
                )));
            }
            if let Some(&bad) = idx.iter().find(|&&mu| mu >= space.dim()) {
                return Err(Error::InvalidTensor(format!("index {bad} out of range for [{space}]")));
            }
            space.ensure_same(value.space())?;
            t.accumulate(idx, value);
        }
        Ok(t)
    }

    /// `df₁ ⊗ ⋯ ⊗ df_p`.
    pub fn from_differentials(space: &Space, fs: &[Poly]) -> Result<Self> {
        for f in fs {
            space.ensure_same(f.space())?;
        }
        let mut t = Self::zero(space, fs.len());
        for idx in index_tuples(space.dim(), fs.len()) {
            let value = idx
                .iter()
                .zip(fs)
                .fold(Poly::one(space), |acc, (&mu, f)| &acc * &f.partial(mu));
            t.accumulate(idx, value);
        }
        Ok(t)
    }

    fn accumulate(&mut self, idx: Vec<usize>, value: Poly) {
        if value.is_zero() {
            return;
        }
        let sum = match self.components.remove(&idx) {
            Some(old) => &old + &value,
            None => value,
        };
        if !sum.is_zero() {
            self.components.insert(idx, sum);
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn component(&self, idx: &[usize]) -> Poly {
        self.components.get(idx).cloned().unwrap_or_else(|| Poly::zero(&self.space))
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.components.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn try_add(&self, other: &CovariantTensor) -> Result<CovariantTensor> {
        self.space.ensure_same(&other.space)?;
        if self.order != other.order {
            return Err(Error::InvalidTensor(format!("orders {} and {} differ", self.order, other.order)));
        }
        let mut out = self.clone();
        for (idx, v) in &other.components {
            out.accumulate(idx.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Rational) -> CovariantTensor {
        self.map_values(|v| v.scale(factor))
    }

    pub fn mul_poly(&self, f: &Poly) -> Result<CovariantTensor> {
        self.space.ensure_same(f.space())?;
        Ok(self.map_values(|v| v * f))
    }

    fn map_values<F: Fn(&Poly) -> Poly>(&self, f: F) -> CovariantTensor {
        let mut out = Self::zero(&self.space, self.order);
        for (idx, v) in &self.components {
            out.accumulate(idx.clone(), f(v));
        }
        out
    }
}

/// All tuples in `{0, …, dim−1}^len`, lexicographically.
pub fn index_tuples(dim: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(len)];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..dim).map(move |mu| {
                    let mut v = prefix.clone();
                    v.push(mu);
                    v
                })
            })
            .collect();
    }
    out
}

/// `e₁ + ⋯ + e_p`.
pub fn tensor_degree(order: usize) -> MultiDegree {
    IndexSet::range(order as u32).degree()
}

fn ensure_tensor_degree(form: &Form, order: usize) -> Result<()> {
    let expected = tensor_degree(order);
    for (factors, _) in form.terms() {
        let found = factors_degree(factors);
        if found != expected {
            return Err(Error::WrongMultiDegree { expected: expected.to_string(), found: found.to_string() });
        }
    }
    Ok(())
}

/// `ι_p(T) = Σ T_{μ₁…μ_p} d₁x^{μ₁}∧⋯∧d_p x^{μ_p}`.
pub fn embed(tensor: &CovariantTensor) -> Form {
    let mut b = FormBuilder::new(&tensor.space);
    for (idx, value) in &tensor.components {
        let factors: Vec<Factor> = idx
            .iter()
            .enumerate()
            .map(|(i, &mu)| Factor { generator: Generator::single(i as u32 + 1, mu), exp: 1 })
            .collect();
        b.add_canonical(value.clone(), factors);
    }
    b.finish()
}

/// Outcome of [`is_tensor`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Detection {
    /// The form is `ι_p(T)`.
    Tensor(CovariantTensor),
    /// The form is not in the image; carries the monomials containing a
    /// generator `d_K x` with `|K| ≥ 2`.
    Obstructed(Form),
}

impl Detection {
    pub fn is_tensor(&self) -> bool {
        matches!(self, Detection::Tensor(_))
    }
}

/// Decides whether a multidegree-`(1,…,1)` form lies in the image of `ι_p`.
pub fn is_tensor(form: &Form, order: usize) -> Result<Detection> {
    ensure_tensor_degree(form, order)?;
    let obstruction = form.filter_terms(|k| k.iter().any(|f| f.generator.slots().len() >= 2));
    if !obstruction.is_zero() {
        return Ok(Detection::Obstructed(obstruction));
    }
    // With only singleton slot sets every slot 1..p occurs once, and the
    // canonical order lists them by slot.
    let entries = form
        .terms()
        .map(|(k, c)| (k.iter().map(|f| f.generator.coord()).collect::<Vec<_>>(), c.clone()));
    CovariantTensor::from_components(form.space(), order, entries).map(Detection::Tensor)
}

/// The tensor `T` with `ι_p(T) = ω`, or an error when `ω` is obstructed.
pub fn extract(form: &Form, order: usize) -> Result<CovariantTensor> {
    match is_tensor(form, order)? {
        Detection::Tensor(t) => Ok(t),
        Detection::Obstructed(o) => Err(Error::InvalidTensor(format!(
            "{} monomial(s) with a multi-slot generator",
            o.num_terms()
        ))),
    }
}

/// `(i_{X_p}^{(p)} ∘ ⋯ ∘ i_{X₁}^{(1)})(ω)`.
pub fn evaluate_insertion(form: &Form, fields: &[VectorField]) -> Result<Poly> {
    ensure_tensor_degree(form, fields.len())?;
    let mut acc = form.clone();
    for (i, x) in fields.iter().enumerate() {
        acc = insert(x, i as u32 + 1, &acc)?;
    }
    acc.as_poly().ok_or(Error::NotACoefficient)
}

/// `Σ_{μ⃗} T_{μ₁…μ_p} X₁^{μ₁}⋯X_p^{μ_p}`.
pub fn evaluate_components(tensor: &CovariantTensor, fields: &[VectorField]) -> Result<Poly> {
    if fields.len() != tensor.order {
        return Err(Error::ComponentCount { expected: tensor.order, found: fields.len() });
    }
    for x in fields {
        tensor.space.ensure_same(x.space())?;
    }
    let mut out = Poly::zero(&tensor.space);
    for (idx, value) in &tensor.components {
        let term = idx.iter().zip(fields).fold(value.clone(), |acc, (&mu, x)| &acc * x.component(mu));
        out = &out + &term;
    }
    Ok(out)
}

/// `i_X^{(l)}(ω)` with the remaining slots renumbered `1, …, p−1`.
pub fn insert_slot(form: &Form, order: usize, field: &VectorField, slot: u32) -> Result<Form> {
    ensure_tensor_degree(form, order)?;
    if slot == 0 || slot as usize > order {
        return Err(Error::SlotOutOfRange { max: order as u32, found: slot });
    }
    let inserted = insert(field, slot, form)?;
    relabel_slots(&inserted, |k| if k > slot { k - 1 } else { k })
}

/// The classical contraction `T(·, …, X, …, ·)` with `X` in place `slot`.
pub fn contract(tensor: &CovariantTensor, field: &VectorField, slot: u32) -> Result<CovariantTensor> {
    tensor.space.ensure_same(field.space())?;
    if slot == 0 || slot as usize > tensor.order {
        return Err(Error::SlotOutOfRange { max: tensor.order as u32, found: slot });
    }
    let l = slot as usize - 1;
    let mut out = CovariantTensor::zero(&tensor.space, tensor.order - 1);
    for (idx, value) in &tensor.components {
        let mut rest = idx.clone();
        let mu = rest.remove(l);
        out.accumulate(rest, value * field.component(mu));
    }
    Ok(out)
}

/// The argument permutation `τ_p(σ)`:
/// `permute(σ, T)_{ν₁…ν_p} = T_{ν_{σ(1)}…ν_{σ(p)}}`, which makes
/// `ι_p ∘ τ_p(σ) = κ_σ ∘ ι_p`.
pub fn permute(sigma: &SlotPermutation, tensor: &CovariantTensor) -> Result<CovariantTensor> {
    if let Some(k) = sigma.moved().find(|&k| k as usize > tensor.order) {
        return Err(Error::InvalidPermutation(format!("slot {k} exceeds the tensor order {}", tensor.order)));
    }
    let mut out = CovariantTensor::zero(&tensor.space, tensor.order);
    for (mu, value) in &tensor.components {
        // mu_i = nu_{σ(i)}
        let mut nu = vec![0; mu.len()];
        for (i, &m) in mu.iter().enumerate() {
            nu[sigma.apply(i as u32 + 1) as usize - 1] = m;
        }
        out.accumulate(nu, value.clone());
    }
    Ok(out)
}

/// Sign of a permutation.
pub fn permutation_sign(sigma: &SlotPermutation) -> i64 {
    let transpositions: usize = sigma.cycles().iter().map(|c| c.len() - 1).sum();
    if transpositions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `(1/p!) Σ_σ sgn(σ)·τ_p(σ)T`.
pub fn alternate(tensor: &CovariantTensor) -> CovariantTensor {
    average_over_permutations(tensor, true)
}

/// `(1/p!) Σ_σ τ_p(σ)T`.
pub fn symmetrize(tensor: &CovariantTensor) -> CovariantTensor {
    average_over_permutations(tensor, false)
}

fn average_over_permutations(tensor: &CovariantTensor, signed: bool) -> CovariantTensor {
    let perms = SlotPermutation::all_of_degree(tensor.order as u32);
    let mut out = CovariantTensor::zero(&tensor.space, tensor.order);
    for sigma in &perms {
        let t = permute(sigma, tensor).expect("permutation within the order");
        let t = if signed && permutation_sign(sigma) < 0 { t.scale(&Rational::from_integer((-1).into())) } else { t };
        out = out.try_add(&t).expect("same space and order");
    }
    out.scale(&Rational::new(1.into(), (perms.len() as i64).into()))
}

/// `T₁ ⊗ T₂`.
pub fn tensor_product(a: &CovariantTensor, b: &CovariantTensor) -> Result<CovariantTensor> {
    a.space.ensure_same(&b.space)?;
    let mut out = CovariantTensor::zero(&a.space, a.order + b.order);
    for (ia, va) in &a.components {
        for (ib, vb) in &b.components {
            let mut idx = ia.clone();
            idx.extend_from_slice(ib);
            out.accumulate(idx, va * vb);
        }
    }
    Ok(out)
}

/// The Lie derivative of a covariant tensor:
/// `(L_X T)_{μ⃗} = X(T_{μ⃗}) + Σ_i Σ_ν T_{μ₁…ν…μ_p} ∂_{μ_i} X^ν`.
pub fn lie_tensor(field: &VectorField, tensor: &CovariantTensor) -> Result<CovariantTensor> {
    tensor.space.ensure_same(field.space())?;
    let mut out = CovariantTensor::zero(&tensor.space, tensor.order);
    for (idx, value) in &tensor.components {
        out.accumulate(idx.clone(), field.apply(value)?);
        for i in 0..tensor.order {
            let nu = idx[i];
            for mu in 0..tensor.space.dim() {
                let mut target = idx.clone();
                target[i] = mu;
                out.accumulate(target, value * &field.component(nu).partial(mu));
            }
        }
    }
    Ok(out)
}

/// `κ_σ ∘ ι_p`, for checking the equivariance of the embedding.
pub fn kappa_embed(sigma: &SlotPermutation, tensor: &CovariantTensor) -> Form {
    kappa(sigma, &embed(tensor))
}

/// A witness that `X⃗ ↦ (i_{X_p}^{(p)}∘⋯∘i_{X₁}^{(1)})(ω)` fails to be
/// `A`-linear in one argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearityViolation {
    pub slot: u32,
    pub factor: Poly,
    pub fields: Vec<VectorField>,
    /// Value with `X_slot` replaced by `factor · X_slot`.
    pub scaled_argument: Poly,
    /// `factor` times the value on `fields`.
    pub scaled_value: Poly,
}

/// Tests `A`-linearity of the insertion map in argument `slot` at one point.
pub fn linearity_defect(form: &Form, fields: &[VectorField], slot: u32, factor: &Poly) -> Result<Option<LinearityViolation>> {
    let l = slot as usize - 1;
    let base = evaluate_insertion(form, fields)?;
    let mut scaled = fields.to_vec();
    scaled[l] = scaled[l].scale_by(factor)?;
    let scaled_argument = evaluate_insertion(form, &scaled)?;
    let scaled_value = &base * factor;
    Ok((scaled_argument != scaled_value).then(|| LinearityViolation {
        slot,
        factor: factor.clone(),
        fields: fields.to_vec(),
        scaled_argument,
        scaled_value,
    }))
}

/// Searches small test data (coordinate monomials of degree ≤ 2 as factors,
/// constant and then linear coordinate fields) for an `A`-linearity failure.
pub fn find_linearity_violation(form: &Form, order: usize) -> Result<Option<LinearityViolation>> {
    ensure_tensor_degree(form, order)?;
    if order == 0 {
        return Ok(None);
    }
    let space = form.space();
    let n = space.dim();
    let mut factors = Vec::new();
    for a in 0..n {
        factors.push(Poly::var(space, a));
        for b in a..n {
            factors.push(&Poly::var(space, a) * &Poly::var(space, b));
        }
    }
    let constant: Vec<VectorField> = (0..n).map(|i| VectorField::coordinate(space, i)).collect();
    let mut linear = constant.clone();
    for lambda in 0..n {
        for nu in 0..n {
            linear.push(VectorField::coordinate(space, nu).scale_by(&Poly::var(space, lambda))?);
        }
    }
    for pool in [&constant, &linear] {
        for choice in index_tuples(pool.len(), order) {
            let fields: Vec<VectorField> = choice.iter().map(|&i| pool[i].clone()).collect();
            for slot in 1..=order as u32 {
                for f in &factors {
                    if let Some(v) = linearity_defect(form, &fields, slot, f)? {
                        return Ok(Some(v));
                    }
                }
            }
        }
    }
    Ok(None)
}
