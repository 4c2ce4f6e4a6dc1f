//! Bridge from the quasi-Poisson structure on a linear action groupoid to
//! the induced quasi-Lie bialgebroid on its Lie algebroid: the restriction
//! map from multiplicative forms to IM data, the derivation of a
//! multiplicative vector field, the induced dual structure, and the suite
//! checking that restriction intertwines all brackets.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::cartan::{
    contract, exterior_derivative, koszul_bracket, p_sharp, schouten, PolyTensor,
};
use crate::error::{Error, Result};
use crate::group2::{
    j_form, restrict_units, right_invariant, three_bracket_mult, to_base, LinearActionGroupoid,
    QuasiPoissonModel,
};
use crate::report::VerificationReport;
use crate::symcore::{Polynomial, Rational};

use super::algebroid::{AMulti, DerivationA, PolyLieAlgebroid};
use super::bialgebroid::PolyQuasiLieBialgebroid;
use super::im::{check_im1, im1_bracket, im1_three_bracket, j_im1, psi0, IM1Form};

/// The Lie algebroid of the linear action groupoid: rank = fiber dimension,
/// base = the unit chart, anchor x_a ↦ −Σ_j D_{aj}∂m_j, zero frame brackets
/// (the source fibers are abelian translation groups).
pub fn action_algebroid(gpd: &LinearActionGroupoid) -> Result<PolyLieAlgebroid> {
    let base = gpd.chart_m().clone();
    let (p, q) = (gpd.dim_g(), gpd.dim_v());
    let mut anchor = vec![vec![Polynomial::zero(&base); p]; q];
    for j in 0..q {
        for a in 0..p {
            anchor[j][a] = Polynomial::constant(&base, -gpd.d().get(a, j).clone());
        }
    }
    PolyLieAlgebroid::new(base, p, anchor, BTreeMap::new())
}

/// Restriction of a multiplicative 1-form to its IM data: θ(x_a) is the
/// fiber pairing on the unit section and ν(x_a) = ι_{x_a}dΘ restricted to
/// the base directions along the units.
pub fn sigma(gpd: &LinearActionGroupoid, theta: &PolyTensor) -> Result<IM1Form> {
    if !theta.is_form() || theta.l() != 1 || theta.chart() != gpd.chart_g() {
        return Err(Error::DegreeViolation(
            "restriction wants a 1-form on the total space".into(),
        ));
    }
    let (p, q) = (gpd.dim_g(), gpd.dim_v());
    let base = gpd.chart_m();
    let dtheta = exterior_derivative(theta)?;
    let mut th = Vec::with_capacity(p);
    let mut nu = Vec::with_capacity(p);
    for a in 0..p {
        th.push(to_base(gpd, &restrict_units(gpd, &theta.component(&[], &[a]))?)?);
        let ia = contract(&PolyTensor::coordinate_vector(gpd.chart_g(), a), &dtheta)?;
        let mut na = PolyTensor::zero(base, 0, 1);
        for j in 0..q {
            na.add_component(
                &[],
                &[j],
                to_base(gpd, &restrict_units(gpd, &ia.component(&[], &[p + j]))?)?,
            );
        }
        nu.push(na);
    }
    Ok(IM1Form { nu, theta: th })
}

/// Reads a section off a right-invariant multivector field and verifies the
/// lift reproduces the input exactly.
fn un_right_lift(gpd: &LinearActionGroupoid, x: &PolyTensor) -> Result<PolyTensor> {
    if !x.is_multivector() || x.chart() != gpd.chart_g() {
        return Err(Error::NotDescendable(
            "un-lift wants a multivector on the total space".into(),
        ));
    }
    let p = gpd.dim_g();
    let mut u = PolyTensor::zero(gpd.chart_g(), x.k(), 0);
    for (key, c) in x.components() {
        if key.up.iter().all(|&a| a < p) {
            u.add_component(&key.up, &[], restrict_units(gpd, c)?);
        }
    }
    let back = right_invariant(gpd, &u)?;
    if back == *x {
        Ok(u)
    } else {
        Err(Error::NotDescendable(format!(
            "not a right-invariant lift; defect {:?}",
            back.sub(x)
        )))
    }
}

/// The derivation of the section module induced by a multiplicative vector
/// field X: the symbol is the pushforward of X along the target read on the
/// units, and the section leg is pinned down by right lifts,
/// (τX)(x)⃗ = [X, x⃗].
pub fn tau(gpd: &LinearActionGroupoid, alg: &PolyLieAlgebroid, x: &PolyTensor) -> Result<DerivationA> {
    if !x.is_multivector() || x.k() != 1 || x.chart() != gpd.chart_g() {
        return Err(Error::DegreeViolation(
            "the induced derivation wants a vector field on the total space".into(),
        ));
    }
    let (p, q) = (gpd.dim_g(), gpd.dim_v());
    let mut symbol = PolyTensor::zero(&alg.base, 1, 0);
    for j in 0..q {
        // X applied to the target coordinate t_j = m_j − Σ_a D_{aj} g_a.
        let mut xt = x.component(&[p + j], &[]);
        for a in 0..p {
            let d = gpd.d().get(a, j).clone();
            if !d.is_zero() {
                xt = xt.try_add(&x.component(&[a], &[]).scale(&-d))?;
            }
        }
        symbol.add_component(&[j], &[], to_base(gpd, &restrict_units(gpd, &xt)?)?);
    }
    let mut op = vec![vec![Polynomial::zero(&alg.base); p]; p];
    for a in 0..p {
        let br = schouten(x, &PolyTensor::coordinate_vector(gpd.chart_g(), a))?;
        let u = un_right_lift(gpd, &br)?;
        for b in 0..p {
            op[b][a] = to_base(gpd, &u.component(&[b], &[]))?;
        }
    }
    Ok(DerivationA { symbol, op })
}

/// The quasi-Lie bialgebroid induced on the Lie algebroid of the model: the
/// dual anchor is the symbol of the derivation of P♯dg_a, the cobracket is
/// read off the restricted Koszul brackets of the fiber coordinate forms,
/// and the trisection restricts componentwise.
pub fn model_to_qlb(model: &QuasiPoissonModel) -> Result<PolyQuasiLieBialgebroid> {
    let gpd = &model.groupoid;
    let (p, q) = (gpd.dim_g(), gpd.dim_v());
    let alg = action_algebroid(gpd)?;
    let base = alg.base.clone();
    let dg: Vec<PolyTensor> =
        (0..p).map(|a| PolyTensor::coordinate_form(gpd.chart_g(), a)).collect();
    let mut rho_star = vec![vec![Polynomial::zero(&base); p]; q];
    for a in 0..p {
        let sharp = p_sharp(&model.bivector, &dg[a])?;
        let der = tau(gpd, &alg, &sharp)?;
        for j in 0..q {
            rho_star[j][a] = der.symbol.component(&[j], &[]);
        }
    }
    let mut cobracket = vec![AMulti::zero(&base, p, 2); p];
    for a in 0..p {
        for b in (a + 1)..p {
            let kb = koszul_bracket(&model.bivector, &dg[a], &dg[b])?;
            let s = sigma(gpd, &kb)?;
            for (c, coeff) in s.theta.iter().enumerate() {
                // ⟨[ξ^a,ξ^b]_*, x_c⟩ = −⟨d_* x_c, ξ^a∧ξ^b⟩ for the constant
                // frame covectors, so the cobracket component flips sign.
                cobracket[c].add_component(&[a, b], coeff.scale(&-Rational::one()));
            }
        }
    }
    let mut phi = AMulti::zero(&base, p, 3);
    for (key, c) in model.phi_section.components() {
        phi.add_component(&key.up, to_base(gpd, c)?);
    }
    PolyQuasiLieBialgebroid::new(alg, rho_star, cobracket, phi)
}

/// The verification suite for the induced quasi-Lie bialgebroid: the induced
/// structure satisfies the axioms; restriction sends multiplicative 1-forms
/// to IM 1-forms; the restriction of P♯ is ψ₀ of the restriction; and the
/// degree shift, the binary bracket, and the ternary bracket all commute
/// with restriction.
pub fn verify_thm59_510(model: &QuasiPoissonModel) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("induced_bialgebroid");
    let gpd = &model.groupoid;
    let (p, q) = (gpd.dim_g(), gpd.dim_v());
    let qlb = model_to_qlb(model)?;
    let axioms = qlb.verify();
    rep.record(
        "induced-qlb".to_string(),
        "the induced dual structure satisfies the quasi-Lie bialgebroid axioms".to_string(),
        axioms.passed(),
        || axioms.failures().next().map(|c| c.id.clone()).unwrap_or_default(),
    );

    // Base 1-forms for the degree-shift comparison and multiplicative
    // generators for the bracket comparisons.
    let base = gpd.chart_m();
    let mut gammas: Vec<(String, PolyTensor)> = Vec::new();
    for j in 0..q {
        let name = base.coordinate(j).to_string();
        gammas.push((format!("d{name}"), PolyTensor::coordinate_form(base, j)));
    }
    if q > 0 {
        let m1 = Polynomial::coordinate(base, 0);
        for j in 0..q.min(2) {
            let name = base.coordinate(j).to_string();
            gammas.push((
                format!("m1*d{name}"),
                PolyTensor::coordinate_form(base, j).scale_poly(&m1),
            ));
        }
    }
    let mut gens: Vec<(String, PolyTensor)> = (0..p)
        .map(|a| {
            (
                format!("d{}", gpd.chart_g().coordinate(a)),
                PolyTensor::coordinate_form(gpd.chart_g(), a),
            )
        })
        .collect();
    for (name, g) in &gammas {
        gens.push((format!("J({name})"), j_form(gpd, g)?));
    }

    for (name, g) in &gammas {
        let lhs = sigma(gpd, &j_form(gpd, g)?)?;
        let rhs = j_im1(&qlb, g)?;
        let defect = lhs.sub(&rhs);
        rep.record(
            format!("shift-({name})"),
            "σ(Jγ) = j(γ)".to_string(),
            defect.is_zero(),
            || format!("theta {:?} nu {:?}", defect.theta, defect.nu),
        );
    }

    let restricted: Vec<(String, IM1Form)> = gens
        .iter()
        .map(|(n, t)| Ok((n.clone(), sigma(gpd, t)?)))
        .collect::<Result<_>>()?;
    for (name, f) in &restricted {
        let check = check_im1(&qlb.algebroid, f)?;
        rep.record(
            format!("restricted-im-({name})"),
            "the restriction of a multiplicative 1-form is IM".to_string(),
            check.passed(),
            || check.failures().next().map(|c| c.id.clone()).unwrap_or_default(),
        );
    }

    for ((name, t), (_, f)) in gens.iter().zip(&restricted) {
        let lhs = psi0(&qlb, f);
        let rhs = tau(gpd, &qlb.algebroid, &p_sharp(&model.bivector, t)?)?;
        let defect = lhs.sub(&qlb.algebroid, &rhs);
        rep.record(
            format!("diagram-({name})"),
            "ψ₀∘σ = τ∘P♯".to_string(),
            defect.is_zero(),
            || format!("symbol {:?} op {:?}", defect.symbol, defect.op),
        );
    }

    for (i, ((n1, t1), (_, f1))) in gens.iter().zip(&restricted).enumerate() {
        for ((n2, t2), (_, f2)) in gens.iter().zip(&restricted).skip(i + 1) {
            let lhs = sigma(gpd, &koszul_bracket(&model.bivector, t1, t2)?)?;
            let rhs = im1_bracket(&qlb, f1, f2)?;
            let defect = lhs.sub(&rhs);
            rep.record(
                format!("koszul-({n1},{n2})"),
                "σ([Θ,Θ']_P) = [σΘ,σΘ']".to_string(),
                defect.is_zero(),
                || format!("theta {:?} nu {:?}", defect.theta, defect.nu),
            );
        }
    }

    let cap = gens.len().min(5);
    for i in 0..cap {
        for j in (i + 1)..cap {
            for k in (j + 1)..cap {
                let lhs = three_bracket_mult(model, &gens[i].1, &gens[j].1, &gens[k].1)?;
                let rhs = im1_three_bracket(
                    &qlb,
                    &restricted[i].1,
                    &restricted[j].1,
                    &restricted[k].1,
                )?;
                let defect = lhs.sub(&rhs);
                rep.record(
                    format!("three-bracket-({},{},{})", gens[i].0, gens[j].0, gens[k].0),
                    "the restricted ternary bracket matches".to_string(),
                    defect.is_zero(),
                    || format!("{defect:?}"),
                );
            }
        }
    }
    Ok(rep.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group2::{abelian_g3_phi, build_qp, calibration, heisenberg3, kks_sl2, Lie2Algebra};
    use crate::qlb::bialgebroid::verify_qlb;

    fn model(data: crate::linfty::WeakLie2Data) -> QuasiPoissonModel {
        build_qp(&Lie2Algebra::new(data).unwrap()).unwrap()
    }

    #[test]
    fn induced_bialgebroid_passes_on_the_corpus() {
        for (name, data) in [
            ("kks_sl2", kks_sl2()),
            ("heisenberg3", heisenberg3()),
            ("abelian_g3_phi", abelian_g3_phi()),
            ("calibration", calibration()),
        ] {
            let m = model(data);
            let rep = verify_thm59_510(&m).unwrap();
            for f in rep.failures() {
                eprintln!("{name} failed: {} — {:?}", f.id, f.witness);
            }
            assert!(rep.passed(), "{name}");
        }
    }

    #[test]
    fn induced_structure_satisfies_the_bialgebroid_axioms() {
        for data in [kks_sl2(), heisenberg3(), abelian_g3_phi(), calibration()] {
            let qlb = model_to_qlb(&model(data)).unwrap();
            assert!(verify_qlb(&qlb).passed());
        }
    }

    #[test]
    fn bridged_models_pass_the_im_and_morphism_suites() {
        use crate::qlb::im::{psi_morphism, verify_thm52};
        use crate::qlb::linear::verify_prop58;
        for (name, data) in [
            ("kks_sl2", kks_sl2()),
            ("heisenberg3", heisenberg3()),
            ("abelian_g3_phi", abelian_g3_phi()),
            ("calibration", calibration()),
        ] {
            let qlb = model_to_qlb(&model(data)).unwrap();
            for rep in [
                verify_thm52(&qlb).unwrap(),
                psi_morphism(&qlb).unwrap(),
                verify_prop58(&qlb).unwrap(),
            ] {
                for f in rep.failures() {
                    eprintln!("{name}/{} failed: {} — {:?}", rep.suite, f.id, f.witness);
                }
                assert!(rep.passed(), "{name}/{}", rep.suite);
            }
        }
    }

    #[test]
    fn sign_flip_in_the_trisection_fails_the_suite() {
        let m = model(calibration());
        let mut bad = m.clone();
        bad.phi_section = m.phi_section.neg();
        bad.phi_left = m.phi_left.neg();
        bad.phi_right = m.phi_right.neg();
        let rep = verify_thm59_510(&bad).unwrap();
        assert!(!rep.passed());
    }
}

