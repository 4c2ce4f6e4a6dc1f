//! Polynomial Cartan–Schouten calculus on affine charts: wedge, exterior
//! derivative, contraction, Lie derivative, Schouten bracket, Koszul
//! P-bracket, and the cubic 3-bracket on forms.

mod koszul;
mod map;
mod suite;
mod tensor;

pub use koszul::{
    bivector_eval, curvature, half_square, koszul_bracket, multivector_eval_partial,
    three_bracket_forms,
};
pub use map::PolyMap;
pub use suite::{
    curvature_mutation_detected, curved_dgla_checks, forms_jacobi_defect,
    multivectors_jacobi_defect, verify_cartan_suite, FormsCubic, MultivectorsCurved,
};
pub use tensor::{
    contract, exterior_derivative, lie_derivative, p_sharp, schouten, PolyTensor, TensorKey,
};
pub use crate::symcore::Chart;
