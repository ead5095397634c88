//! Operators on iterated forms: the differentials `d_k`, Lie derivatives and
//! insertions along vector fields, slot permutations `κ_σ`, pullbacks, and
//! the homotopy that contracts `(Λ₂, d₂)` onto `(Λ, d)`.
//!
//! Derivations are first-class [`GradedDerivation`] values so operator
//! identities can be stated with [`graded_commutator`].

mod differential;
mod fields;
mod homotopy;
mod operator;
mod slots;

pub use differential::{d, d_iterated, d_iterated_form, d_partition, exterior, set_partitions};
pub use fields::{insert, insertion, lie, lie_derivative, pullback, vf_apply_form};
pub use homotopy::{
    homotopy_h2, include_lambda01, insertion_c, lambda01_to_lambda1, lambda1_to_lambda01, project_lambda01,
    slot1_degrees, HomotopyH2, InsertionC,
};
pub use operator::{compose, graded_commutator, zero_derivation, Commutator, Composite, GradedDerivation, Operator};
pub use slots::{kappa, relabel_slots, shift_slots, SlotPermutation};
