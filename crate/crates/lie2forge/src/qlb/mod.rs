//! Quasi-Lie bialgebroids, IM 1-forms with their binary and ternary
//! brackets, the linearized Poisson calculus on the dual bundle, and the
//! bridge from the linear quasi-Poisson 2-group model.

mod algebroid;
mod bialgebroid;
mod bridge;
mod im;
mod linear;

pub use algebroid::{
    adjoint_derivation, validate_derivation, AMulti, Covector, DerivationA, PolyLieAlgebroid,
};
pub use bialgebroid::{
    amulti_from_multivector, from_poisson, multivector_from_amulti, point_simple3_volume,
    tangent_algebroid, verify_qlb, PolyQuasiLieBialgebroid,
};
pub use bridge::{action_algebroid, model_to_qlb, sigma, tau, verify_thm59_510};
pub use linear::{total_space, verify_prop58, TotalSpace};
pub use im::{
    build_pi, check_im1, check_imk, im1_action, im1_bracket, im1_three_bracket, im1_to_imk,
    im_contract, im_from_base_form, im_lie, invariant_covectors, j_im1, psi0, psi2, psi_morphism,
    sample_im1, verify_im_closure, verify_thm52, IM1Form, IMkForm,
};
