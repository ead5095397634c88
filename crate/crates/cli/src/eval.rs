use std::collections::BTreeMap;

use iforms_core::calculus::{d_iterated_form, homotopy_h2, insert, kappa, lie, pullback};
use iforms_core::coeffs::{Poly, Rational, SmoothMap, Space, VectorField};
use iforms_core::forms::Form;
use iforms_core::{Error, Result};
use num_traits::Zero;

use crate::parse::{Expr, FieldRef};

/// Named vector fields available to `lie[X]` and `insert[X, l]`.
pub type Env = BTreeMap<String, VectorField>;

/// Evaluates an expression over `space` to a normalized form.
pub fn eval_expr(e: &Expr, space: &Space, env: &Env) -> Result<Form> {
    Ok(match e {
        Expr::Int(n) => Form::constant(space, Rational::from_integer(n.clone())),
        Expr::Coord { index, .. } => Form::from_poly(Poly::var(space, *index)),
        Expr::Neg(a) => -&eval_expr(a, space, env)?,
        Expr::Add(a, b) => eval_expr(a, space, env)?.try_add(&eval_expr(b, space, env)?)?,
        Expr::Sub(a, b) => eval_expr(a, space, env)?.try_sub(&eval_expr(b, space, env)?)?,
        Expr::Mul(a, b) => eval_expr(a, space, env)?.wedge(&eval_expr(b, space, env)?)?,
        Expr::Div(a, b) => {
            let divisor = eval_expr(b, space, env)?
                .as_poly()
                .ok_or(Error::NonConstantDivision)?
                .constant_value()
                .ok_or(Error::NonConstantDivision)?;
            if divisor.is_zero() {
                return Err(Error::DivisionByZero);
            }
            eval_expr(a, space, env)?.scale(&divisor.recip())
        }
        Expr::Pow(a, n) => eval_expr(a, space, env)?.pow(*n),
        Expr::D { slots, arg } => d_iterated_form(slots, &eval_expr(arg, space, env)?),
        Expr::Lie { field, arg } => lie(&resolve_field(field, space, env)?, &eval_expr(arg, space, env)?)?,
        Expr::Insert { field, slot, arg } => {
            insert(&resolve_field(field, space, env)?, *slot, &eval_expr(arg, space, env)?)?
        }
        Expr::Kappa { sigma, arg } => kappa(sigma, &eval_expr(arg, space, env)?),
        Expr::H2(arg) => homotopy_h2(&eval_expr(arg, space, env)?)?,
        Expr::Pullback { target, components, arg } => {
            let comps = components.iter().map(|c| eval_poly(c, space, env)).collect::<Result<Vec<_>>>()?;
            let map = SmoothMap::new(space, target, comps)?;
            pullback(&map, &eval_expr(arg, target, env)?)?
        }
    })
}

/// Evaluates an expression that must reduce to a coefficient.
pub fn eval_poly(e: &Expr, space: &Space, env: &Env) -> Result<Poly> {
    eval_expr(e, space, env)?.as_poly().ok_or(Error::NotACoefficient)
}

pub fn field_from_components(components: &[Expr], space: &Space, env: &Env) -> Result<VectorField> {
    let comps = components.iter().map(|c| eval_poly(c, space, env)).collect::<Result<Vec<_>>>()?;
    VectorField::new(space, comps)
}

fn resolve_field(field: &FieldRef, space: &Space, env: &Env) -> Result<VectorField> {
    match field {
        FieldRef::Named(name) => {
            let x = env.get(name).ok_or_else(|| Error::UnknownField(name.clone()))?;
            if x.space() != space {
                return Err(Error::SpaceMismatch { left: x.space().to_string(), right: space.to_string() });
            }
            Ok(x.clone())
        }
        FieldRef::Inline(comps) => field_from_components(comps, space, env),
    }
}
