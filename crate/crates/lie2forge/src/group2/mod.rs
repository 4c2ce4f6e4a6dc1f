//! Linear action groupoids of weak Lie 2-algebras, multiplicative tensors,
//! the induced quasi-Poisson structure, the bracket and ternary bracket on
//! multiplicative forms, and the classification of multiplicative and
//! bimultiplicative 1-forms.

mod classify;
mod fixtures;
mod groupoid;
mod model;
mod verify;

pub use classify::{
    bimult_1form_dimension, bimult_vecfield_dimension, classify_mult_1form, compute_end0,
    express_in_span, matrix_inverse, reconstruct_mult_1form, solve_linear, End0Basis,
    MultFormData,
};
pub use fixtures::{abelian, abelian_g3_phi, calibration, calibration_ext, heisenberg3, kks_sl2};
pub use groupoid::{build_groupoid, is_g_independent, LinearActionGroupoid, MultCheck};
pub use model::{
    action_on_base, action_on_section, build_qp, descend_source, embed_base, id_tensor_psharp,
    j_form, leading_term, left_invariant, morphism_nu, nu_graded, p_sharp_base, restrict_units,
    rho_section, right_invariant, s_pullback, t_map, t_pullback, three_bracket_mult,
    three_bracket_pullback, to_base, un_lift, validate_section, Lie2Algebra, QuasiPoissonModel,
};
pub use verify::{
    coadjoint_diagram, default_generators, default_graded_generators, verify_mult_form_graded_lie2,
    verify_mult_form_lie2, verify_qp_axioms, verify_sharp_morphism, CoadjointDiagram, Generators,
};
