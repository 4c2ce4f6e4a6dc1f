//! Structure-constant presentations of curved L∞-algebras, weak and graded
//! weak Lie 2-algebras, and their morphisms, with exhaustive axiom
//! verification on finite bases.

mod basis;
mod curved;
mod engine;
mod table;
mod weak2;

pub use basis::{
    chi_of_arrangement, element_add, element_is_zero, element_scale, element_sub,
    sort_key_with_chi, Element, GradedBasis,
};
pub use curved::{tuples_with_allowed_repeats, CurvedLInfty};
pub use engine::{generalized_jacobi, LInftyOps};
pub use table::BracketTable;
pub use weak2::{
    make_string_lie2, verify_graded_weak_lie2, verify_morphism, verify_weak_lie2, GradedWeakLie2,
    MorphismData, WeakLie2Data,
};
