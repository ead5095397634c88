//! Exact symbolic computation with iterated differential forms over a
//! polynomial coordinate algebra.
//!
//! The building blocks, bottom-up:
//!
//! * [`coeffs`]: polynomials with rational coefficients, vector fields and
//!   polynomial maps.
//! * [`grading`]: multidegrees and the parity pairing behind every sign.
//! * [`forms`]: normalized iterated forms and the graded-commutative product.
//! * [`calculus`]: `d_k`, Lie derivatives, insertions, `κ_σ`, pullbacks and
//!   the homotopy operator on `Λ₂`.
//! * [`tensors`]: covariant tensors and their embedding into iterated forms.
//!
//! [`json`] and [`render`] handle input and output; [`random`] and
//! [`checks`] drive the randomized identity suites.

pub mod calculus;
pub mod checks;
pub mod coeffs;
pub mod error;
pub mod forms;
pub mod grading;
pub mod json;
pub mod random;
pub mod render;
pub mod tensors;

pub use error::{Error, Result};
