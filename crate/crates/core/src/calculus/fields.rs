use std::collections::HashMap;

use crate::coeffs::{Poly, SmoothMap, VectorField};
use crate::error::Result;
use crate::forms::{Form, FormBuilder, Generator};
use crate::grading::MultiDegree;

use super::differential::d_iterated;
use super::operator::{GradedDerivation, Operator};

/// The Lie derivative along `X`, extended to every slot: the degree-zero
/// derivation with `f ↦ X(f)` and `d_K x^μ ↦ d_K(X^μ)`.
pub fn lie_derivative(field: &VectorField) -> GradedDerivation {
    let on_coeff = field.clone();
    let on_gen = field.clone();
    GradedDerivation::new(
        MultiDegree::zero(),
        move |f| Form::from_poly(on_coeff.apply_unchecked(f)),
        move |_, g| d_iterated(g.slots(), on_gen.component(g.coord())),
    )
    .bound_to(field.space())
}

/// The insertion `i_X^{(l)}` of degree `−e_l`: kills coefficients and sends
/// `d_K x^μ` to `d_{K∖{l}}(X^μ)` when `l ∈ K`, to zero otherwise.
pub fn insertion(field: &VectorField, slot: u32) -> GradedDerivation {
    assert!(slot >= 1, "differential slots start at 1");
    let on_gen = field.clone();
    GradedDerivation::new(
        -&MultiDegree::unit(slot),
        |f| Form::zero(f.space()),
        move |space, g| {
            if g.slots().contains(slot) {
                d_iterated(&g.slots().without(slot), on_gen.component(g.coord()))
            } else {
                Form::zero(space)
            }
        },
    )
    .bound_to(field.space())
}

pub fn lie(field: &VectorField, form: &Form) -> Result<Form> {
    lie_derivative(field).apply(form)
}

pub fn insert(field: &VectorField, slot: u32, form: &Form) -> Result<Form> {
    insertion(field, slot).apply(form)
}

/// Pullback along a polynomial map: coefficients are composed with the map
/// and `d_K y^α ↦ d_K(φ^α)`.
pub fn pullback(map: &SmoothMap, form: &Form) -> Result<Form> {
    map.target().ensure_same(form.space())?;
    let source = map.source();
    let mut images: HashMap<Generator, Form> = HashMap::new();
    let mut out = FormBuilder::new(source);
    for (factors, coeff) in form.terms() {
        let mut term = Form::from_poly(coeff.substitute(map)?);
        for f in factors {
            let image = images
                .entry(f.generator.clone())
                .or_insert_with(|| d_iterated(f.generator.slots(), map.component(f.generator.coord())));
            for _ in 0..f.exp {
                term = &term * image;
            }
            if term.is_zero() {
                break;
            }
        }
        out.add_form(&term);
    }
    Ok(out.finish())
}

/// `X(f)` lifted to a form, used when comparing Lie derivatives on `A`.
pub fn vf_apply_form(field: &VectorField, f: &Poly) -> Result<Form> {
    Ok(Form::from_poly(field.apply(f)?))
}
