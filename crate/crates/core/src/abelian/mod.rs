//! Integer matrices, Smith normal form and finitely generated abelian groups.

mod group;
mod matrix;
mod snf;

pub use group::{AbelianAuto, AbelianError, Count, FGAbelianGroup, FixedSubgroup};
pub use matrix::{content, IntMatrix};
pub use snf::{inverse_unimodular, kernel_basis, smith_normal_form, SmithForm};
