//! Small weak Lie 2-algebras used as test models and as the seed data for
//! the bundled example corpus.

use std::collections::BTreeMap;

use crate::linfty::{Element, WeakLie2Data};
use crate::symcore::{rat, RatMatrix, Rational};

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn elt(dim: usize, entries: &[(usize, Rational)]) -> Element {
    let mut e = vec![Rational::from_integer(0.into()); dim];
    for (i, c) in entries {
        e[*i] = c.clone();
    }
    e
}

/// Everything zero: 𝔳 = ℝ², 𝔤 = ℝ², d = 0, trivial brackets.
pub fn abelian() -> WeakLie2Data {
    WeakLie2Data {
        v_basis: names("u", 2),
        g_basis: names("x", 2),
        d: RatMatrix::zero(2, 2),
        bracket2_gg: BTreeMap::new(),
        bracket2_gv: BTreeMap::new(),
        bracket3: BTreeMap::new(),
    }
}

/// The Heisenberg algebra 𝔥₃ presented as a crossed module: 𝔤 = 𝔥₃ with
/// [e₁,e₂] = e₃, 𝔳 = ℝ its center, d(u) = e₃, trivial action and 3-bracket.
pub fn heisenberg3() -> WeakLie2Data {
    let mut d = RatMatrix::zero(3, 1);
    d.set(2, 0, rat(1, 1));
    let mut gg = BTreeMap::new();
    gg.insert((0, 1), elt(3, &[(2, rat(1, 1))]));
    WeakLie2Data {
        v_basis: names("u", 1),
        g_basis: names("x", 3),
        d,
        bracket2_gg: gg,
        bracket2_gv: BTreeMap::new(),
        bracket3: BTreeMap::new(),
    }
}

/// sl₂ as a Lie algebra in degree 0 with 𝔳 = 0: [e₁,e₂] = e₃,
/// [e₁,e₃] = −2e₁, [e₂,e₃] = 2e₂ (so e₃ is the Cartan element h with
/// [h,e₁] = 2e₁ and [h,e₂] = −2e₂).
pub fn kks_sl2() -> WeakLie2Data {
    let mut gg = BTreeMap::new();
    gg.insert((0, 1), elt(3, &[(2, rat(1, 1))]));
    gg.insert((0, 2), elt(3, &[(0, rat(-2, 1))]));
    gg.insert((1, 2), elt(3, &[(1, rat(2, 1))]));
    WeakLie2Data {
        v_basis: vec![],
        g_basis: names("x", 3),
        d: RatMatrix::zero(3, 0),
        bracket2_gg: gg,
        bracket2_gv: BTreeMap::new(),
        bracket3: BTreeMap::new(),
    }
}

/// Abelian 𝔤 = ℝ³ with 𝔳 = ℝ, d = 0 and the volume 3-bracket
/// [e₁,e₂,e₃]₃ = u; the simplest model with a nonzero ternary bracket.
pub fn abelian_g3_phi() -> WeakLie2Data {
    let mut b3 = BTreeMap::new();
    b3.insert((0, 1, 2), elt(1, &[(0, rat(1, 1))]));
    WeakLie2Data {
        v_basis: names("u", 1),
        g_basis: names("x", 3),
        d: RatMatrix::zero(3, 1),
        bracket2_gg: BTreeMap::new(),
        bracket2_gv: BTreeMap::new(),
        bracket3: b3,
    }
}

/// A model exercising every structure map at once: d(u) = e₁,
/// [e₁,e₂]₂ = −e₁, [e₂,e₃]₂ = e₂, [e₂,u]₂ = u and [e₁,e₂,e₃]₃ = −u.
/// Used to pin orientation conventions because no term vanishes by accident.
pub fn calibration() -> WeakLie2Data {
    let mut d = RatMatrix::zero(3, 1);
    d.set(0, 0, rat(1, 1));
    let mut gg = BTreeMap::new();
    gg.insert((0, 1), elt(3, &[(0, rat(-1, 1))]));
    gg.insert((1, 2), elt(3, &[(1, rat(1, 1))]));
    let mut gv = BTreeMap::new();
    gv.insert((1, 0), elt(1, &[(0, rat(1, 1))]));
    let mut b3 = BTreeMap::new();
    b3.insert((0, 1, 2), elt(1, &[(0, rat(-1, 1))]));
    WeakLie2Data {
        v_basis: names("u", 1),
        g_basis: names("x", 3),
        d,
        bracket2_gg: gg,
        bracket2_gv: gv,
        bracket3: b3,
    }
}

/// The calibration model enlarged by a central trivial fiber direction:
/// 𝔳 = ℝ² with d(u₁) = e₁, d(u₂) = 0 and u₂ acted on trivially. The extra
/// direction makes the groupoid fiber 2-dimensional, so genuinely new
/// multiplicative 2-forms (wedges involving dm₂) exist while every structure
/// map of the calibration model stays nonzero. Used to pin graded sign
/// conventions that are invisible on 1-forms.
pub fn calibration_ext() -> WeakLie2Data {
    let base = calibration();
    let mut d = RatMatrix::zero(3, 2);
    d.set(0, 0, rat(1, 1));
    let gv = base
        .bracket2_gv
        .iter()
        .map(|((i, j), w)| ((*i, *j), elt(2, &[(0, w[0].clone())])))
        .collect();
    let b3 = base
        .bracket3
        .iter()
        .map(|((i, j, k), w)| ((*i, *j, *k), elt(2, &[(0, w[0].clone())])))
        .collect();
    WeakLie2Data {
        v_basis: names("u", 2),
        g_basis: names("x", 3),
        d,
        bracket2_gg: base.bracket2_gg,
        bracket2_gv: gv,
        bracket3: b3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linfty::verify_weak_lie2;

    #[test]
    fn all_fixtures_satisfy_the_axioms() {
        for (name, data) in [
            ("abelian", abelian()),
            ("heisenberg3", heisenberg3()),
            ("kks_sl2", kks_sl2()),
            ("abelian_g3_phi", abelian_g3_phi()),
            ("calibration", calibration()),
            ("calibration_ext", calibration_ext()),
        ] {
            data.validate().unwrap();
            let rep = verify_weak_lie2(&data);
            assert!(rep.passed(), "{name}: {:?}", rep.failures().collect::<Vec<_>>());
        }
    }
}
