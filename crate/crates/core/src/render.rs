//! Plain-text and LaTeX rendering.
//!
//! The text form is what the expression parser reads: `*` and `∧` are both
//! the graded product, `d1(x)` and `d{1,2}(x)` are generators. Rendering a
//! normal form and parsing it back gives the same form.

use num_traits::{One, Signed};

use crate::coeffs::{Exponents, Poly, Rational, Space, VectorField};
use crate::forms::{Factor, Form};
use crate::tensors::CovariantTensor;

/// Output flavor for [`render_form`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Text,
    Latex,
}

struct Atom {
    negative: bool,
    body: String,
}

fn join_atoms(atoms: Vec<Atom>) -> String {
    if atoms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, a) in atoms.into_iter().enumerate() {
        match (i, a.negative) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&a.body);
    }
    out
}

fn rational_body(r: &Rational, style: Style) -> String {
    let r = r.abs();
    if r.is_integer() {
        return r.numer().to_string();
    }
    match style {
        Style::Text => format!("{}/{}", r.numer(), r.denom()),
        Style::Latex => format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom()),
    }
}

fn monomial_body(space: &Space, exps: &Exponents, style: Style) -> String {
    let parts: Vec<String> = exps
        .as_slice()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| match (e, style) {
            (1, _) => space.name(i).to_string(),
            (_, Style::Text) => format!("{}^{e}", space.name(i)),
            (_, Style::Latex) => format!("{}^{{{e}}}", space.name(i)),
        })
        .collect();
    match style {
        Style::Text => parts.join("*"),
        Style::Latex if space.names().iter().all(|n| n.chars().count() == 1) => parts.concat(),
        Style::Latex => parts.join(" "),
    }
}

fn poly_term_atom(space: &Space, exps: &Exponents, c: &Rational, style: Style) -> Atom {
    let negative = c.is_negative();
    let body = if exps.is_constant() {
        rational_body(c, style)
    } else {
        let mono = monomial_body(space, exps, style);
        if c.abs().is_one() {
            mono
        } else {
            match style {
                Style::Text => format!("{}*{mono}", rational_body(c, style)),
                Style::Latex => format!("{}{mono}", rational_body(c, style)),
            }
        }
    };
    Atom { negative, body }
}

fn poly_atoms(p: &Poly, style: Style) -> Vec<Atom> {
    p.terms().rev().map(|(e, c)| poly_term_atom(p.space(), e, c, style)).collect()
}

fn render_poly_styled(p: &Poly, style: Style) -> String {
    join_atoms(poly_atoms(p, style))
}

/// A polynomial in text form, highest-degree terms first.
pub fn poly_text(p: &Poly) -> String {
    render_poly_styled(p, Style::Text)
}

pub fn poly_latex(p: &Poly) -> String {
    render_poly_styled(p, Style::Latex)
}

fn factor_body(space: &Space, f: &Factor, style: Style) -> String {
    let slots = f.generator.slots();
    let coord = space.name(f.generator.coord());
    let g = match style {
        Style::Text if slots.len() == 1 => format!("d{}({coord})", slots.as_slice()[0]),
        Style::Text => format!("d{slots}({coord})"),
        Style::Latex => {
            let sep = if slots.iter().any(|k| k >= 10) { "," } else { "" };
            let label: Vec<String> = slots.iter().map(|k| k.to_string()).collect();
            format!("d_{{{}}}{coord}", label.join(sep))
        }
    };
    match (f.exp, style) {
        (1, _) => g,
        (e, Style::Text) => format!("{g}^{e}"),
        (e, Style::Latex) => format!("({g})^{{{e}}}"),
    }
}

/// Renders a form. Zero renders as `0`.
pub fn render_form(form: &Form, style: Style) -> String {
    let space = form.space();
    let (wedge, coeff_sep) = match style {
        Style::Text => (" ∧ ", "*"),
        Style::Latex => (" \\wedge ", "\\,"),
    };
    let mut atoms = Vec::new();
    for (factors, c) in form.terms() {
        if factors.is_empty() {
            atoms.extend(poly_atoms(c, style));
            continue;
        }
        let gens: Vec<String> = factors.iter().map(|f| factor_body(space, f, style)).collect();
        let gens = gens.join(wedge);
        if c.num_terms() == 1 {
            let (e, r) = c.terms().next().expect("one term");
            let head = poly_term_atom(space, e, r, style);
            let body = if e.is_constant() && r.abs().is_one() { gens } else { format!("{}{coeff_sep}{gens}", head.body) };
            atoms.push(Atom { negative: head.negative, body });
        } else {
            let inner = render_poly_styled(c, style);
            let body = match style {
                Style::Text => format!("({inner}){coeff_sep}{gens}"),
                Style::Latex => format!("\\left({inner}\\right){coeff_sep}{gens}"),
            };
            atoms.push(Atom { negative: false, body });
        }
    }
    join_atoms(atoms)
}

pub fn form_text(form: &Form) -> String {
    render_form(form, Style::Text)
}

pub fn form_latex(form: &Form) -> String {
    render_form(form, Style::Latex)
}

/// One line per nonzero component, `(x, y): value`; `0` for the zero tensor.
pub fn tensor_text(t: &CovariantTensor) -> String {
    if t.is_zero() {
        return "0".to_string();
    }
    let space = t.space();
    t.components()
        .map(|(idx, v)| {
            let names: Vec<&str> = idx.iter().map(|&mu| space.name(mu)).collect();
            format!("({}): {}", names.join(", "), poly_text(v))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// Component list `[X^1, …, X^n]`, the syntax used by `lie[X: …]`.
pub fn field_text(x: &VectorField) -> String {
    let parts: Vec<String> = x.components().iter().map(poly_text).collect();
    parts.join(", ")
}
