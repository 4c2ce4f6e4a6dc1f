use num_traits::Zero;

use crate::error::Result;
use crate::report::VerificationReport;
use crate::symcore::Rational;

use super::basis::{element_add, element_is_zero, element_scale, Element, GradedBasis};
use super::engine::{generalized_jacobi, LInftyOps};
use super::table::BracketTable;

/// A curved L∞-algebra presented by structure constants on a finite graded
/// basis: one `BracketTable` per stored arity (index = arity; arity 0 holds
/// the curvature, arities beyond the stored cap act as zero).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurvedLInfty {
    pub basis: GradedBasis,
    pub brackets: Vec<BracketTable>,
}

impl CurvedLInfty {
    pub fn new(basis: GradedBasis, brackets: Vec<BracketTable>) -> Result<CurvedLInfty> {
        for (k, t) in brackets.iter().enumerate() {
            if t.arity() != k {
                return Err(crate::error::Error::ArityMismatch { expected: k, got: t.arity() });
            }
        }
        Ok(CurvedLInfty { basis, brackets })
    }

    /// l_k on general elements, by multilinear expansion over basis support.
    pub fn bracket_elements(&self, k: usize, args: &[Element]) -> Element {
        let mut out = self.basis.zero_element();
        if k >= self.brackets.len() || args.len() != k {
            return out;
        }
        let mut key = vec![0usize; k];
        self.expand(k, args, 0, &mut key, &Rational::from_integer(1.into()), &mut out);
        out
    }

    fn expand(
        &self,
        k: usize,
        args: &[Element],
        slot: usize,
        key: &mut Vec<usize>,
        coeff: &Rational,
        out: &mut Element,
    ) {
        if slot == k {
            let v = self.brackets[k].get(key, &self.basis);
            for (i, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    out[i] = &out[i] + &(c * coeff);
                }
            }
            return;
        }
        for (b, c) in args[slot].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            key[slot] = b;
            self.expand(k, args, slot + 1, key, &(coeff * c), out);
        }
    }

    /// The arity-n Jacobi defect on a tuple of basis indices; zero for every
    /// n and tuple iff the presentation is a curved L∞-algebra up to the
    /// stored arity cap.
    pub fn jacobiator(&self, inputs: &[usize]) -> Element {
        let elts: Vec<Element> = inputs.iter().map(|&i| self.basis.basis_element(i)).collect();
        let degrees: Vec<i64> = inputs.iter().map(|&i| self.basis.degree(i)).collect();
        generalized_jacobi(self, &elts, &degrees)
    }

    /// All degree-homogeneity and Jacobi checks up to `max_arity`, one report
    /// entry per arity (witness = first offending tuple).
    pub fn verify(&self, max_arity: usize) -> VerificationReport {
        let mut rep = VerificationReport::new("curved_linfty");
        for (k, t) in self.brackets.iter().enumerate() {
            let bad = t.check_degree_homogeneity(&self.basis);
            rep.record(
                format!("degree-homogeneity-arity-{k}"),
                format!("every arity-{k} bracket entry has output degree = input degrees + (2-{k})"),
                bad.is_none(),
                || format!("offending key {:?}", bad.clone().unwrap()),
            );
        }
        for n in 0..=max_arity {
            let mut failure: Option<(Vec<usize>, Element)> = None;
            for tuple in tuples_with_allowed_repeats(&self.basis, n) {
                let defect = self.jacobiator(&tuple);
                if !element_is_zero(&defect) {
                    failure = Some((tuple, defect));
                    break;
                }
            }
            rep.record(
                format!("jacobi-arity-{n}"),
                format!("arity-{n} generalized Jacobi identity holds on all basis tuples"),
                failure.is_none(),
                || {
                    let (t, d) = failure.clone().unwrap();
                    let names: Vec<&str> = t.iter().map(|&i| self.basis.name(i)).collect();
                    format!("tuple ({}) gives defect {}", names.join(", "), self.basis.render(&d))
                },
            );
        }
        rep.finalize()
    }
}

impl LInftyOps for CurvedLInfty {
    type Elt = Element;

    fn bracket(&self, k: usize, args: &[Element]) -> Element {
        self.bracket_elements(k, args)
    }

    fn add(&self, a: &Element, b: &Element) -> Element {
        element_add(a, b)
    }

    fn negate(&self, a: &Element) -> Element {
        element_scale(a, &Rational::from_integer((-1).into()))
    }

    fn zero_defect(&self, _n: usize, _inputs: &[Element]) -> Element {
        self.basis.zero_element()
    }
}

/// All nondecreasing index tuples of length n, skipping tuples that repeat an
/// even-degree element (those vanish identically by graded skew-symmetry).
pub fn tuples_with_allowed_repeats(basis: &GradedBasis, n: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..basis.dim())
        .combinations_with_replacement(n)
        .filter(|t| {
            t.windows(2).all(|w| w[0] != w[1] || basis.degree(w[0]) % 2 != 0)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::rat;

    /// sl2 with [h,e]=2e, [h,f]=−2f, [e,f]=h is a Lie algebra: jacobiator
    /// vanishes for every arity; corrupting one constant breaks arity 3.
    #[test]
    fn sl2_passes_and_mutation_fails() {
        let basis =
            GradedBasis::new(vec![("h".into(), 0), ("e".into(), 0), ("f".into(), 0)]);
        let mut b2 = BracketTable::new(2);
        b2.insert(&[0, 1], vec![rat(0, 1), rat(2, 1), rat(0, 1)], &basis).unwrap();
        b2.insert(&[0, 2], vec![rat(0, 1), rat(0, 1), rat(-2, 1)], &basis).unwrap();
        b2.insert(&[1, 2], vec![rat(1, 1), rat(0, 1), rat(0, 1)], &basis).unwrap();
        let alg = CurvedLInfty::new(
            basis.clone(),
            vec![BracketTable::new(0), BracketTable::new(1), b2.clone()],
        )
        .unwrap();
        assert!(alg.verify(4).passed());

        // [e,f] = h + e breaks Jacobi: J(h,e,f) = −2e
        let mut bad = b2;
        bad.perturb(&[1, 2], 1, rat(1, 1), &basis);
        let alg2 = CurvedLInfty::new(
            basis,
            vec![BracketTable::new(0), BracketTable::new(1), bad],
        )
        .unwrap();
        let rep = alg2.verify(4);
        assert!(!rep.passed());
    }

    #[test]
    fn abelian_presentation_trivially_passes() {
        let basis = GradedBasis::new(vec![("a".into(), 0), ("b".into(), 0)]);
        let alg = CurvedLInfty::new(basis, vec![BracketTable::new(0)]).unwrap();
        assert!(alg.verify(4).passed());
    }
}
