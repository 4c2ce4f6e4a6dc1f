//! The generalized Jacobi double sum, generic over the element type so the
//! same engine verifies structure-constant presentations and symbolic
//! (polynomial-coefficient) realizations.

use itertools::Itertools;

use super::basis::chi_of_arrangement;

/// Operations the Jacobi engine needs from an ambient graded algebra.
pub trait LInftyOps {
    type Elt: Clone;
    /// The k-ary bracket l_k on homogeneous elements (k = 0 gives the
    /// curvature; arities without a stored bracket must return zero).
    fn bracket(&self, k: usize, args: &[Self::Elt]) -> Self::Elt;
    fn add(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn negate(&self, a: &Self::Elt) -> Self::Elt;
    /// The zero of the degree in which the arity-n Jacobi defect of the given
    /// inputs lives.
    fn zero_defect(&self, n: usize, inputs: &[Self::Elt]) -> Self::Elt;
}

/// Evaluates the arity-n generalized Jacobi expression
///   Σ_{i=0..n} Σ_{σ ∈ Sh(i, n−i)} (−1)^{i(n−i)} χ(σ; x) l_{n−i+1}( l_i(x_{σ(1..i)}), x_{σ(i+1..n)} )
/// with χ(σ;x) = sgn(σ)·Koszul(σ;x); unshuffles are enumerated
/// lexicographically on the first block. n = 0 reads as l₁(l₀) = d(c) and
/// n = 1 as l₁² x + l₂(c, x).
pub fn generalized_jacobi<A: LInftyOps>(
    alg: &A,
    inputs: &[A::Elt],
    degrees: &[i64],
) -> A::Elt {
    let n = inputs.len();
    let mut acc = alg.zero_defect(n, inputs);
    for i in 0..=n {
        let outer_arity = n - i + 1;
        let sign_out_negative = (i * (n - i)) % 2 == 1;
        for first in (0..n).combinations(i) {
            let rest: Vec<usize> = (0..n).filter(|p| !first.contains(p)).collect();
            let perm: Vec<usize> = first.iter().chain(rest.iter()).copied().collect();
            let chi = chi_of_arrangement(&perm, degrees);
            let chi_negative = chi < num_traits::Zero::zero();
            let inner_args: Vec<A::Elt> = first.iter().map(|&p| inputs[p].clone()).collect();
            let inner = alg.bracket(i, &inner_args);
            let mut outer_args = vec![inner];
            outer_args.extend(rest.iter().map(|&p| inputs[p].clone()));
            let mut term = alg.bracket(outer_arity, &outer_args);
            if sign_out_negative != chi_negative {
                term = alg.negate(&term);
            }
            acc = alg.add(&acc, &term);
        }
    }
    acc
}
