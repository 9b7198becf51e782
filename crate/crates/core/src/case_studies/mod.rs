//! Worked examples: a crystallographic group, an inner automorphism of
//! SL₂(Z), an automorphism of F₃, and the G(p, q, r) family.

mod cohen_lustig;
mod free_group;
mod gw;
mod sl2;
mod uncount;

pub use cohen_lustig::{cohen_lustig_images, cohen_lustig_report};
pub use free_group::{stallings_fold, FoldedGraph, FreeWord, DEFAULT_ALPHABET};
pub use gw::{gw_abelianization, gw_phi, gw_report, GwElement, GwGroup};
pub use sl2::{commutant_basis, conjugate, printed_formula, sl2_report, unimodular_commutant, Sl2Summary, CONJUGATOR};
pub use uncount::uncount_report;
