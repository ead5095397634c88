//! JSON documents for polynomials, forms, tensors and vector fields.
//!
//! Rationals are written as decimal strings (`"num"`, `"den"`) so documents
//! round-trip exactly. Output is canonical: polynomial terms ascend in the
//! graded-lexicographic order and form terms follow the normal-form order.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::coeffs::{Exponents, Poly, Rational, Space, VectorField};
use crate::error::{Error, Result};
use crate::forms::{normalize, Form, Generator};
use crate::grading::IndexSet;
use crate::tensors::CovariantTensor;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDoc {
    pub terms: Vec<PolyTermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTermDoc {
    pub exps: Vec<u32>,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorDoc {
    #[serde(rename = "K")]
    pub slots: Vec<u32>,
    pub coord: String,
    pub exp: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormTermDoc {
    pub coeff: PolyDoc,
    pub factors: Vec<FactorDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormDoc {
    pub space: Vec<String>,
    pub terms: Vec<FormTermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorEntryDoc {
    pub idx: Vec<String>,
    pub value: PolyDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorDoc {
    pub space: Vec<String>,
    pub order: usize,
    pub components: Vec<TensorEntryDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDoc {
    pub name: String,
    pub components: Vec<PolyDoc>,
}

/// A named list of vector fields over one space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldsDoc {
    pub space: Vec<String>,
    pub fields: Vec<FieldDoc>,
}

fn rational_from_strings(num: &str, den: &str) -> Result<Rational> {
    let parse = |s: &str| BigInt::from_str(s.trim()).map_err(|e| Error::Json(format!("bad integer `{s}`: {e}")));
    let (n, d) = (parse(num)?, parse(den)?);
    if d.is_zero() {
        return Err(Error::Json("zero denominator".into()));
    }
    Ok(Rational::new(n, d))
}

impl PolyDoc {
    pub fn from_poly(p: &Poly) -> Self {
        PolyDoc {
            terms: p
                .terms()
                .map(|(e, c)| PolyTermDoc {
                    exps: e.as_slice().to_vec(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }

    pub fn to_poly(&self, space: &Space) -> Result<Poly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.exps.len() != space.dim() {
                return Err(Error::Json(format!(
                    "exponent vector {:?} does not match the {} coordinates",
                    t.exps,
                    space.dim()
                )));
            }
            terms.push((Exponents::new(t.exps.clone()), rational_from_strings(&t.num, &t.den)?));
        }
        Poly::from_terms(space, terms)
    }
}

impl FormDoc {
    pub fn from_form(form: &Form) -> Self {
        let space = form.space();
        FormDoc {
            space: space.names().to_vec(),
            terms: form
                .terms()
                .map(|(k, c)| FormTermDoc {
                    coeff: PolyDoc::from_poly(c),
                    factors: k
                        .iter()
                        .map(|f| FactorDoc {
                            slots: f.generator.slots().as_slice().to_vec(),
                            coord: space.name(f.generator.coord()).to_string(),
                            exp: f.exp,
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    /// Reads the document back, normalizing each term as a product.
    pub fn to_form(&self) -> Result<Form> {
        let space = Space::new(self.space.iter().cloned())?;
        let mut raw = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let coeff = t.coeff.to_poly(&space)?;
            let mut gens = Vec::new();
            for f in &t.factors {
                if f.exp == 0 {
                    return Err(Error::Json("factor exponents start at 1".into()));
                }
                let g = Generator::new(IndexSet::new(f.slots.iter().copied())?, space.index_of(&f.coord)?)?;
                gens.extend(std::iter::repeat_n(g, f.exp as usize));
            }
            raw.push((coeff, gens));
        }
        normalize(&space, raw)
    }
}

impl TensorDoc {
    pub fn from_tensor(t: &CovariantTensor) -> Self {
        let space = t.space();
        TensorDoc {
            space: space.names().to_vec(),
            order: t.order(),
            components: t
                .components()
                .map(|(idx, v)| TensorEntryDoc {
                    idx: idx.iter().map(|&mu| space.name(mu).to_string()).collect(),
                    value: PolyDoc::from_poly(v),
                })
                .collect(),
        }
    }

    pub fn to_tensor(&self) -> Result<CovariantTensor> {
        let space = Space::new(self.space.iter().cloned())?;
        let mut entries = Vec::with_capacity(self.components.len());
        for c in &self.components {
            let idx = c.idx.iter().map(|n| space.index_of(n)).collect::<Result<Vec<_>>>()?;
            entries.push((idx, c.value.to_poly(&space)?));
        }
        CovariantTensor::from_components(&space, self.order, entries)
    }
}

impl FieldsDoc {
    pub fn from_fields(space: &Space, fields: &[(String, VectorField)]) -> Self {
        FieldsDoc {
            space: space.names().to_vec(),
            fields: fields
                .iter()
                .map(|(name, x)| FieldDoc {
                    name: name.clone(),
                    components: x.components().iter().map(PolyDoc::from_poly).collect(),
                })
                .collect(),
        }
    }

    pub fn to_fields(&self) -> Result<(Space, Vec<(String, VectorField)>)> {
        let space = Space::new(self.space.iter().cloned())?;
        let mut out = Vec::with_capacity(self.fields.len());
        for f in &self.fields {
            let comps = f.components.iter().map(|c| c.to_poly(&space)).collect::<Result<Vec<_>>>()?;
            out.push((f.name.clone(), VectorField::new(&space, comps)?));
        }
        Ok((space, out))
    }
}

fn to_string<T: Serialize>(doc: &T) -> String {
    serde_json::to_string(doc).expect("documents serialize")
}

fn from_str<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
}

pub fn form_to_json(form: &Form) -> String {
    to_string(&FormDoc::from_form(form))
}

pub fn form_from_json(text: &str) -> Result<Form> {
    from_str::<FormDoc>(text)?.to_form()
}

pub fn poly_to_json(p: &Poly) -> String {
    to_string(&PolyDoc::from_poly(p))
}

pub fn poly_from_json(text: &str, space: &Space) -> Result<Poly> {
    from_str::<PolyDoc>(text)?.to_poly(space)
}

pub fn tensor_to_json(t: &CovariantTensor) -> String {
    to_string(&TensorDoc::from_tensor(t))
}

pub fn tensor_from_json(text: &str) -> Result<CovariantTensor> {
    from_str::<TensorDoc>(text)?.to_tensor()
}

pub fn fields_to_json(space: &Space, fields: &[(String, VectorField)]) -> String {
    to_string(&FieldsDoc::from_fields(space, fields))
}

pub fn fields_from_json(text: &str) -> Result<(Space, Vec<(String, VectorField)>)> {
    from_str::<FieldsDoc>(text)?.to_fields()
}
