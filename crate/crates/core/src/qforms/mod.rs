//! Binary quadratic forms of positive discriminant: discriminant bookkeeping,
//! the SL₂(ℤ) action, genus characters, and indefinite reduction into
//! class cycles.

mod discriminant;
mod form;
mod genus;
mod reduction;

pub use discriminant::{
    factor_discriminant, is_discriminant, is_fundamental, is_square, DiscriminantFactorization, DiscriminantPair,
};
pub use form::{sl2_act, QuadraticForm, Sl2Matrix};
pub use genus::{genus_character, GenusCharacter};
pub use reduction::{class_of, enumerate_classes, is_reduced, reduce, rho, ClassTable, FormClass};
