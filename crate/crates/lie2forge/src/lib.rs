//! Exact-arithmetic computer algebra for higher Lie theory: Schouten–Koszul
//! calculus with polynomial coefficients, curved/cubic L∞-algebra and weak
//! Lie 2-algebra verification, the linear quasi-Poisson 2-group model, and
//! quasi-Lie bialgebroids with their IM 1-form brackets.

pub mod cartan;
pub mod defs;
pub mod error;
pub mod group2;
pub mod linfty;
pub mod qlb;
pub mod report;
pub mod sampling;
pub mod symcore;

pub use error::{Error, Result};
