//! The contraction of `(Λ₂, d₂)` onto its slot-1 degree zero part.
//!
//! `C` is the Euler derivation of the first slot (`C(σ) = sσ` on forms of
//! slot-1 degree `s`); `i_C^{(2)}` inserts it into the second slot. With
//! `H₂ = (1/s)·i_C^{(2)}` on slot-1 degree `s ≠ 0` and `0` on `s = 0`,
//! `[H₂, d₂] = id − ι∘π`.

use std::collections::BTreeMap;

use crate::coeffs::Rational;
use crate::error::{Error, Result};
use crate::forms::{factors_slot_degree, Form, FormBuilder, Generator};
use crate::grading::{IndexSet, MultiDegree};

use super::operator::{GradedDerivation, Operator};
use super::slots::relabel_slots;

const MAX_SLOT: u32 = 2;

fn ensure_lambda2(form: &Form) -> Result<()> {
    match form.max_slot() {
        s if s > MAX_SLOT => Err(Error::SlotOutOfRange { max: MAX_SLOT, found: s }),
        _ => Ok(()),
    }
}

fn slot1_degree_zero(form: &Form) -> bool {
    form.terms().all(|(k, _)| factors_slot_degree(k, 1) == 0)
}

/// `i_C^{(2)}` as an operator on `Λ₂`.
///
/// Degree `−e₂`: `C` has degree zero in the first slot and insertion into
/// the second slot lowers slot 2 by one. Generators: `d₁₂x^μ ↦ d₁x^μ`
/// (from `C(d₁x^μ) = d₁x^μ`), everything else `↦ 0`.
#[derive(Clone, Debug)]
pub struct InsertionC {
    inner: GradedDerivation,
}

impl InsertionC {
    pub fn new() -> Self {
        let both = IndexSet::range(2);
        let inner = GradedDerivation::new(
            -&MultiDegree::unit(2),
            |f| Form::zero(f.space()),
            move |space, g| {
                if g.slots() == &both {
                    Form::generator(space, Generator::single(1, g.coord())).expect("coordinate in range")
                } else {
                    Form::zero(space)
                }
            },
        );
        InsertionC { inner }
    }
}

impl Default for InsertionC {
    fn default() -> Self {
        Self::new()
    }
}

impl Operator for InsertionC {
    fn degree(&self) -> MultiDegree {
        self.inner.degree()
    }

    fn apply(&self, form: &Form) -> Result<Form> {
        ensure_lambda2(form)?;
        self.inner.apply(form)
    }
}

/// The homotopy operator `H₂`.
#[derive(Clone, Debug, Default)]
pub struct HomotopyH2 {
    insertion: InsertionC,
}

impl HomotopyH2 {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Operator for HomotopyH2 {
    fn degree(&self) -> MultiDegree {
        self.insertion.degree()
    }

    fn apply(&self, form: &Form) -> Result<Form> {
        ensure_lambda2(form)?;
        let mut by_degree: BTreeMap<i64, FormBuilder> = BTreeMap::new();
        for (k, c) in form.terms() {
            let s = factors_slot_degree(k, 1);
            if s != 0 {
                by_degree
                    .entry(s)
                    .or_insert_with(|| FormBuilder::new(form.space()))
                    .add_canonical(c.clone(), k.clone());
            }
        }
        let mut out = FormBuilder::new(form.space());
        for (s, part) in by_degree {
            let contracted = self.insertion.apply(&part.finish())?;
            out.add_form(&contracted.scale(&Rational::new(1.into(), s.into())));
        }
        Ok(out.finish())
    }
}

pub fn insertion_c(form: &Form) -> Result<Form> {
    InsertionC::new().apply(form)
}

pub fn homotopy_h2(form: &Form) -> Result<Form> {
    HomotopyH2::new().apply(form)
}

/// `π`: keeps exactly the monomials of slot-1 degree zero.
pub fn project_lambda01(form: &Form) -> Result<Form> {
    ensure_lambda2(form)?;
    Ok(form.filter_terms(|k| factors_slot_degree(k, 1) == 0))
}

/// `ι`: the inclusion of the slot-1 degree zero part.
pub fn include_lambda01(form: &Form) -> Result<Form> {
    ensure_lambda2(form)?;
    if !slot1_degree_zero(form) {
        return Err(Error::NotInLambda01);
    }
    Ok(form.clone())
}

/// The isomorphism `(Λ₂^{(0,*)}, d₂) ≅ (Λ, d)` relabelling slot 2 as slot 1.
pub fn lambda01_to_lambda1(form: &Form) -> Result<Form> {
    ensure_lambda2(form)?;
    if !slot1_degree_zero(form) {
        return Err(Error::NotInLambda01);
    }
    relabel_slots(form, |k| if k == 2 { 1 } else { k })
}

/// Inverse of [`lambda01_to_lambda1`].
pub fn lambda1_to_lambda01(form: &Form) -> Result<Form> {
    match form.max_slot() {
        s if s > 1 => Err(Error::SlotOutOfRange { max: 1, found: s }),
        _ => relabel_slots(form, |k| if k == 1 { 2 } else { k }),
    }
}

/// Slot-1 degree of each term, as used to split `H₂`.
pub fn slot1_degrees(form: &Form) -> Vec<i64> {
    let mut v: Vec<i64> = form.terms().map(|(k, _)| factors_slot_degree(k, 1)).collect();
    v.sort_unstable();
    v.dedup();
    v
}
