//! Left/right-invariant lifts of algebroid sections, descent along the
//! source map, and the quasi-Poisson bivector/trisection built from a weak
//! Lie 2-algebra on its linear action groupoid.
//!
//! Section representation: a section of ∧^k A ⊗ ∧^l T*M is stored as a
//! tensor on the total-space chart whose up-indices lie in the g-block,
//! whose down-indices lie in the m-block, and whose coefficients depend on
//! the base coordinates only. The left lift replaces each ∂_{g_a} by the
//! t-vertical frame E_a = ∂_{g_a} + Σ_j D_{aj}∂_{m_j} and keeps base legs;
//! the right lift keeps ∂_{g_a}, composes coefficients with the target map
//! and replaces each dm_j by its target pullback dm_j − Σ_a D_{aj} dg_a.

use num_traits::{One, Zero};

use crate::cartan::{curvature, koszul_bracket, p_sharp, schouten, PolyTensor};
use crate::error::{Error, Result};
use crate::linfty::{verify_weak_lie2, Element, WeakLie2Data};
use crate::symcore::{Monomial, Polynomial, Rational};

use super::groupoid::{build_groupoid, is_g_independent, reindex_monomial, LinearActionGroupoid};

/// A weak Lie 2-algebra presentation whose axioms have been verified
/// exhaustively on the basis at construction time.
#[derive(Clone, Debug)]
pub struct Lie2Algebra {
    data: WeakLie2Data,
}

impl Lie2Algebra {
    pub fn new(data: WeakLie2Data) -> Result<Lie2Algebra> {
        data.validate()?;
        let rep = verify_weak_lie2(&data);
        if let Some(f) = rep.failures().next() {
            return Err(Error::InvariantFailure {
                check: format!("lie2-axiom {}", f.id),
                witness: f.witness.clone().unwrap_or_default(),
            });
        }
        Ok(Lie2Algebra { data })
    }

    pub fn data(&self) -> &WeakLie2Data {
        &self.data
    }
}

/// The quasi-Poisson structure on the linear action groupoid of a weak Lie
/// 2-algebra: the bivector field P encoding the binary bracket and the
/// trisection Φ encoding the ternary bracket, together with its left and
/// right invariant lifts.
#[derive(Clone, Debug)]
pub struct QuasiPoissonModel {
    pub algebra: WeakLie2Data,
    pub groupoid: LinearActionGroupoid,
    pub bivector: PolyTensor,
    pub phi_section: PolyTensor,
    pub phi_left: PolyTensor,
    pub phi_right: PolyTensor,
}

/// Rejects tensors that are not in section form (up-legs in the g-block,
/// down-legs in the m-block, base-dependent coefficients only).
pub fn validate_section(gpd: &LinearActionGroupoid, u: &PolyTensor) -> Result<()> {
    let p = gpd.dim_g();
    if u.chart() != gpd.chart_g() {
        return Err(Error::ChartMismatch {
            expected: gpd.chart_g().name().to_string(),
            got: u.chart().name().to_string(),
        });
    }
    for (key, c) in u.components() {
        if key.up.iter().any(|&a| a >= p) || key.down.iter().any(|&i| i < p) {
            return Err(Error::MixedVariance(format!(
                "section legs must be ∧A ⊗ ∧T*M shaped, got up{:?} down{:?}",
                key.up, key.down
            )));
        }
        if !is_g_independent(c, p) {
            return Err(Error::NotDescendable(format!(
                "section coefficient depends on the fiber: {c}"
            )));
        }
    }
    Ok(())
}

/// Reindex a base polynomial onto the total-space chart.
pub fn embed_base(gpd: &LinearActionGroupoid, f: &Polynomial) -> Result<Polynomial> {
    if f.chart() != gpd.chart_m() {
        return Err(Error::ChartMismatch {
            expected: gpd.chart_m().name().to_string(),
            got: f.chart().name().to_string(),
        });
    }
    let (p, q) = (gpd.dim_g(), gpd.dim_v());
    let mut out = Polynomial::zero(gpd.chart_g());
    for (m, c) in f.terms() {
        out.add_term(reindex_monomial(m, q, p + q, p), c.clone());
    }
    Ok(out)
}

/// Inverse of [`embed_base`]: requires a fiber-independent polynomial.
pub fn to_base(gpd: &LinearActionGroupoid, f: &Polynomial) -> Result<Polynomial> {
    if f.chart() != gpd.chart_g() {
        return Err(Error::ChartMismatch {
            expected: gpd.chart_g().name().to_string(),
            got: f.chart().name().to_string(),
        });
    }
    let p = gpd.dim_g();
    if !is_g_independent(f, p) {
        return Err(Error::NotDescendable(format!("fiber-dependent function: {f}")));
    }
    let mut out = Polynomial::zero(gpd.chart_m());
    for (m, c) in f.terms() {
        out.add_term(Monomial(m.0[p..].to_vec()), c.clone());
    }
    Ok(out)
}

/// Restriction to the unit section: substitute g = 0, staying on the
/// total-space chart.
pub fn restrict_units(gpd: &LinearActionGroupoid, f: &Polynomial) -> Result<Polynomial> {
    if f.chart() != gpd.chart_g() {
        return Err(Error::ChartMismatch {
            expected: gpd.chart_g().name().to_string(),
            got: f.chart().name().to_string(),
        });
    }
    let p = gpd.dim_g();
    let mut out = Polynomial::zero(gpd.chart_g());
    for (m, c) in f.terms() {
        if m.0[..p].iter().all(|&e| e == 0) {
            out.add_term(m.clone(), c.clone());
        }
    }
    Ok(out)
}

/// s*ω for a form on the base, computed by reindexing (the source map is a
/// coordinate projection in this chart).
pub fn s_pullback(gpd: &LinearActionGroupoid, omega: &PolyTensor) -> Result<PolyTensor> {
    if !omega.is_form() || omega.chart() != gpd.chart_m() {
        return Err(Error::ChartMismatch {
            expected: format!("form on {}", gpd.chart_m().name()),
            got: format!("({},{}) on {}", omega.k(), omega.l(), omega.chart().name()),
        });
    }
    let p = gpd.dim_g();
    let mut out = PolyTensor::zero(gpd.chart_g(), 0, omega.l());
    for (key, c) in omega.components() {
        let down: Vec<usize> = key.down.iter().map(|&j| j + p).collect();
        out.add_component(&[], &down, embed_base(gpd, c)?);
    }
    Ok(out)
}

/// t*ω = τ*(s*ω) since t = s ∘ τ.
pub fn t_pullback(gpd: &LinearActionGroupoid, omega: &PolyTensor) -> Result<PolyTensor> {
    gpd.tau().pullback(&s_pullback(gpd, omega)?)
}

/// The degree-shift map J ω = s*ω − t*ω into multiplicative forms.
pub fn j_form(gpd: &LinearActionGroupoid, omega: &PolyTensor) -> Result<PolyTensor> {
    Ok(s_pullback(gpd, omega)?.sub(&t_pullback(gpd, omega)?))
}

fn frame_e(gpd: &LinearActionGroupoid, a: usize) -> PolyTensor {
    let (p, q) = (gpd.dim_g(), gpd.dim_v());
    let mut e = PolyTensor::coordinate_vector(gpd.chart_g(), a);
    for j in 0..q {
        let c = gpd.d().get(a, j).clone();
        if !c.is_zero() {
            e.add_component(&[p + j], &[], Polynomial::constant(gpd.chart_g(), c));
        }
    }
    e
}

/// Left-invariant (t-vertical) lift of a section: ∂_{g_a} ↦ E_a, base legs
/// and coefficients pulled back along the source (the identity in this
/// chart).
pub fn left_invariant(gpd: &LinearActionGroupoid, u: &PolyTensor) -> Result<PolyTensor> {
    validate_section(gpd, u)?;
    let ch = gpd.chart_g();
    let mut out = PolyTensor::zero(ch, u.k(), u.l());
    for (key, c) in u.components() {
        let mut mv = PolyTensor::from_function(Polynomial::one(ch));
        for &a in &key.up {
            mv = mv.wedge(&frame_e(gpd, a))?;
        }
        let mut form = PolyTensor::zero(ch, 0, key.down.len());
        form.add_component(&[], &key.down, Polynomial::one(ch));
        out = out.add(&PolyTensor::tensor_mixed(&mv, &form)?.scale_poly(c));
    }
    Ok(out)
}

/// Right-invariant (s-vertical) lift of a section: coefficients composed
/// with the target map, ∂_{g_a} kept, dm_j ↦ t*dm_j = dm_j − Σ_a D_{aj}dg_a.
pub fn right_invariant(gpd: &LinearActionGroupoid, u: &PolyTensor) -> Result<PolyTensor> {
    validate_section(gpd, u)?;
    let ch = gpd.chart_g();
    let p = gpd.dim_g();
    let mut out = PolyTensor::zero(ch, u.k(), u.l());
    for (key, c) in u.components() {
        let mut mv = PolyTensor::from_function(Polynomial::one(ch));
        for &a in &key.up {
            mv = mv.wedge(&PolyTensor::coordinate_vector(ch, a))?;
        }
        let mut form = PolyTensor::from_function(Polynomial::one(ch));
        for &i in &key.down {
            let mut leg = PolyTensor::coordinate_form(ch, i);
            for a in 0..p {
                let cc = gpd.d().get(a, i - p).clone();
                if !cc.is_zero() {
                    leg.add_component(&[], &[a], Polynomial::constant(ch, -cc));
                }
            }
            form = form.wedge(&leg)?;
        }
        let coeff = gpd.tau().pull_function(c)?;
        out = out.add(&PolyTensor::tensor_mixed(&mv, &form)?.scale_poly(&coeff));
    }
    Ok(out)
}

/// The chain map into multiplicative multivector fields: T(u) = u⃖ − u⃗.
pub fn t_map(gpd: &LinearActionGroupoid, u: &PolyTensor) -> Result<PolyTensor> {
    Ok(left_invariant(gpd, u)?.sub(&right_invariant(gpd, u)?))
}

/// Descent of a form along the source map: defined exactly when the form has
/// no fiber legs and fiber-independent coefficients (i.e. is an s-pullback).
pub fn descend_source(gpd: &LinearActionGroupoid, t: &PolyTensor) -> Result<PolyTensor> {
    if !t.is_form() || t.chart() != gpd.chart_g() {
        return Err(Error::NotDescendable("descent wants a form on the total space".into()));
    }
    let p = gpd.dim_g();
    let mut out = PolyTensor::zero(gpd.chart_m(), 0, t.l());
    for (key, c) in t.components() {
        if key.down.iter().any(|&i| i < p) {
            return Err(Error::NotDescendable(format!(
                "fiber leg down{:?} with coefficient {c}",
                key.down
            )));
        }
        let down: Vec<usize> = key.down.iter().map(|&i| i - p).collect();
        out.add_component(&[], &down, to_base(gpd, c)?);
    }
    Ok(out)
}

/// Inverse of the left-invariant lift: reads the candidate section off the
/// unit section and verifies that its lift reproduces the input exactly.
pub fn un_lift(gpd: &LinearActionGroupoid, x: &PolyTensor) -> Result<PolyTensor> {
    if !x.is_multivector() || x.chart() != gpd.chart_g() {
        return Err(Error::NotDescendable("un-lift wants a multivector on the total space".into()));
    }
    let p = gpd.dim_g();
    let mut u = PolyTensor::zero(gpd.chart_g(), x.k(), 0);
    for (key, c) in x.components() {
        if key.up.iter().all(|&a| a < p) {
            u.add_component(&key.up, &[], restrict_units(gpd, c)?);
        }
    }
    let back = left_invariant(gpd, &u)?;
    if back == *x {
        Ok(u)
    } else {
        Err(Error::NotDescendable(format!(
            "not a left-invariant lift; defect {:?}",
            back.sub(x)
        )))
    }
}

/// Anchor of the action algebroid applied to a section: ρ(x_a) = −Σ_j D_{aj}
/// ∂_{m_j}, extended C∞(M)-linearly; the result lives on the base chart.
pub fn rho_section(gpd: &LinearActionGroupoid, u: &PolyTensor) -> Result<PolyTensor> {
    validate_section(gpd, u)?;
    if u.k() != 1 || u.l() != 0 {
        return Err(Error::DegreeViolation("the anchor wants a (1,0) section".into()));
    }
    let (p, q) = (gpd.dim_g(), gpd.dim_v());
    let _ = p;
    let mut out = PolyTensor::zero(gpd.chart_m(), 1, 0);
    for (key, c) in u.components() {
        let a = key.up[0];
        for j in 0..q {
            let d = gpd.d().get(a, j).clone();
            if !d.is_zero() {
                out.add_component(&[j], &[], to_base(gpd, c)?.scale(&-d));
            }
        }
    }
    Ok(out)
}

fn basis_element(dim: usize, i: usize) -> Element {
    let mut e = vec![Rational::zero(); dim];
    e[i] = Rational::one();
    e
}

/// Builds the quasi-Poisson structure of a weak Lie 2-algebra on its linear
/// action groupoid and verifies the defining axioms exactly: the Schouten
/// square of P matches the lift difference of Φ, P is compatible with the
/// right lift, and P is a multiplicative bivector.
pub fn build_qp(alg: &Lie2Algebra) -> Result<QuasiPoissonModel> {
    let data = alg.data().clone();
    let (p, q) = (data.dim_g(), data.dim_v());
    let gpd = build_groupoid(&data.d)?;
    let ch = gpd.chart_g();

    // linear functions l_x(g) = Σ x_a g_a and l_u(m) = Σ u_j m_j
    let lin_g = |e: &Element| {
        let mut f = Polynomial::zero(ch);
        for (a, c) in e.iter().enumerate() {
            if !c.is_zero() {
                f = &f + &Polynomial::coordinate(ch, a).scale(c);
            }
        }
        f
    };
    let lin_v = |e: &Element| {
        let mut f = Polynomial::zero(ch);
        for (j, c) in e.iter().enumerate() {
            if !c.is_zero() {
                f = &f + &Polynomial::coordinate(ch, p + j).scale(c);
            }
        }
        f
    };

    // P = Σ_{i<j} l_{[e_i,e_j]} ∂_{g_i}∧∂_{g_j} + Σ_{i,j} l_{[e_i,u_j]}
    //     ∂_{g_i}∧∂_{m_j} + Σ_{i<j} l_{[du_i,u_j]} ∂_{m_i}∧∂_{m_j}
    let mut bivector = PolyTensor::zero(ch, 2, 0);
    for i in 0..p {
        for j in (i + 1)..p {
            let c = lin_g(&data.b_gg(&basis_element(p, i), &basis_element(p, j)));
            if !c.is_zero() {
                bivector.add_component(&[i, j], &[], c);
            }
        }
    }
    for i in 0..p {
        for j in 0..q {
            let c = lin_v(&data.b_gv(&basis_element(p, i), &basis_element(q, j)));
            if !c.is_zero() {
                bivector.add_component(&[i, p + j], &[], c);
            }
        }
    }
    for i in 0..q {
        for j in (i + 1)..q {
            let du_i = data.apply_d(&basis_element(q, i));
            let c = lin_v(&data.b_gv(&du_i, &basis_element(q, j)));
            if !c.is_zero() {
                bivector.add_component(&[p + i, p + j], &[], c);
            }
        }
    }

    // Φ = Σ_{a<b<c} l_{[e_a,e_b,e_c]} ∂_{g_a}∧∂_{g_b}∧∂_{g_c} as a section
    let mut phi_section = PolyTensor::zero(ch, 3, 0);
    for a in 0..p {
        for b in (a + 1)..p {
            for c in (b + 1)..p {
                let coeff = lin_v(&data.b3(
                    &basis_element(p, a),
                    &basis_element(p, b),
                    &basis_element(p, c),
                ));
                if !coeff.is_zero() {
                    phi_section.add_component(&[a, b, c], &[], coeff);
                }
            }
        }
    }
    let phi_left = left_invariant(&gpd, &phi_section)?;
    let phi_right = right_invariant(&gpd, &phi_section)?;

    let model = QuasiPoissonModel { algebra: data, groupoid: gpd, bivector, phi_section, phi_left, phi_right };

    let half_square_defect = curvature(&model.bivector)?.sub(&model.phi_right.sub(&model.phi_left));
    if !half_square_defect.is_zero() {
        return Err(Error::InvariantFailure {
            check: "schouten-square-equals-lift-difference".into(),
            witness: format!("{half_square_defect:?}"),
        });
    }
    let compat = schouten(&model.bivector, &model.phi_right)?;
    if !compat.is_zero() {
        return Err(Error::InvariantFailure {
            check: "bivector-compatible-with-right-lift".into(),
            witness: format!("{compat:?}"),
        });
    }
    let mc = model.groupoid.is_multiplicative_tensor(&model.bivector)?;
    if !mc.ok {
        return Err(Error::InvariantFailure {
            check: "bivector-multiplicative".into(),
            witness: mc.witness,
        });
    }
    Ok(model)
}

/// p♯μ ∈ Γ(A) for a base 1-form μ: the unique section whose left lift is
/// P♯(s*μ).
pub fn p_sharp_base(model: &QuasiPoissonModel, mu: &PolyTensor) -> Result<PolyTensor> {
    let x = p_sharp(&model.bivector, &s_pullback(&model.groupoid, mu)?)?;
    un_lift(&model.groupoid, &x)
}

/// The action of a multiplicative form on base forms, s*(Θ ▷ γ) = [Θ, s*γ]_P
/// read back on the base.
pub fn action_on_base(
    model: &QuasiPoissonModel,
    theta: &PolyTensor,
    gamma: &PolyTensor,
) -> Result<PolyTensor> {
    let br = koszul_bracket(&model.bivector, theta, &s_pullback(&model.groupoid, gamma)?)?;
    descend_source(&model.groupoid, &br)
}

/// The action of a multiplicative vector field on sections, read off from
/// the Schouten bracket with the left lift.
pub fn action_on_section(
    model: &QuasiPoissonModel,
    x: &PolyTensor,
    u: &PolyTensor,
) -> Result<PolyTensor> {
    un_lift(&model.groupoid, &schouten(x, &left_invariant(&model.groupoid, u)?)?)
}

/// Triple interior product of the left-lifted trisection through three
/// forms, first slot first, with exact zero handling for degenerate degrees.
fn chain3(
    phi: &PolyTensor,
    a: &PolyTensor,
    b: &PolyTensor,
    c: &PolyTensor,
) -> Result<PolyTensor> {
    let ch = phi.chart().clone();
    let (la, lb, lc) = (a.l(), b.l(), c.l());
    let out_l = (la + lb + lc).saturating_sub(3);
    if la == 0 || lb == 0 || lc == 0 || phi.is_zero() || a.is_zero() || b.is_zero() || c.is_zero() {
        return Ok(PolyTensor::zero(&ch, 0, out_l));
    }
    let r1 = crate::cartan::contract(phi, a)?;
    if r1.is_zero() {
        return Ok(PolyTensor::zero(&ch, 0, out_l));
    }
    let r2 = crate::cartan::contract(&r1, b)?;
    if r2.is_zero() {
        return Ok(PolyTensor::zero(&ch, 0, out_l));
    }
    crate::cartan::contract(&r2, c)
}

/// s*[Θ₁,Θ₂,Θ₃]₃ on the total space: the exterior derivative of the triple
/// chain of the left-lifted trisection plus the cyclic chain-into-dΘ terms,
/// scaled by (−1)^{|Θ₁|+|Θ₂|+|Θ₃|}. The sign translates the nested first-slot
/// contraction into the determinant pairing; on three 1-forms it normalizes
/// the bracket to
///   L_{Φ⃖(Θ₁,Θ₂,·)}Θ₃ + c.p. − 2 dΦ⃖(Θ₁,Θ₂,Θ₃)
/// and on higher-degree forms it is forced by the graded Jacobi identities
/// and the wedge Leibniz rule.
pub fn three_bracket_pullback(
    model: &QuasiPoissonModel,
    t1: &PolyTensor,
    t2: &PolyTensor,
    t3: &PolyTensor,
) -> Result<PolyTensor> {
    for t in [t1, t2, t3] {
        if !t.is_form() || t.chart() != model.groupoid.chart_g() {
            return Err(Error::DegreeViolation(
                "ternary bracket wants forms on the total space".into(),
            ));
        }
    }
    let ch = model.groupoid.chart_g().clone();
    let (l1, l2, l3) = (t1.l(), t2.l(), t3.l());
    let out_l = (l1 + l2 + l3).saturating_sub(2);
    if l1 == 0 || l2 == 0 || l3 == 0 {
        // function-linear in each slot, hence zero on functions
        return Ok(PolyTensor::zero(&ch, 0, out_l));
    }
    let phi = &model.phi_left;
    let base = crate::cartan::exterior_derivative(&chain3(phi, t1, t2, t3)?)?;
    let d1 = crate::cartan::exterior_derivative(t1)?;
    let d2 = crate::cartan::exterior_derivative(t2)?;
    let d3 = crate::cartan::exterior_derivative(t3)?;
    let expr = base
        .add(&chain3(phi, t1, t2, &d3)?)
        .add(&chain3(phi, t2, t3, &d1)?)
        .add(&chain3(phi, t3, t1, &d2)?);
    Ok(if (l1 + l2 + l3) % 2 == 1 { expr.neg() } else { expr })
}

/// [Θ₁,Θ₂,Θ₃]₃ on the base.
pub fn three_bracket_mult(
    model: &QuasiPoissonModel,
    t1: &PolyTensor,
    t2: &PolyTensor,
    t3: &PolyTensor,
) -> Result<PolyTensor> {
    descend_source(&model.groupoid, &three_bracket_pullback(model, t1, t2, t3)?)
}

/// Leading term of a form along the unit section: the components with
/// exactly one fiber leg, coefficients restricted to g = 0. For a
/// multiplicative 1-form this is its A*-part.
pub fn leading_term(gpd: &LinearActionGroupoid, theta: &PolyTensor) -> Result<PolyTensor> {
    if !theta.is_form() || theta.chart() != gpd.chart_g() {
        return Err(Error::DegreeViolation("leading term wants a form on the total space".into()));
    }
    let p = gpd.dim_g();
    let mut out = PolyTensor::zero(gpd.chart_g(), 0, theta.l());
    for (key, c) in theta.components() {
        if key.down.iter().filter(|&&i| i < p).count() == 1 {
            out.add_component(&key.up, &key.down, restrict_units(gpd, c)?);
        }
    }
    Ok(out)
}

/// The homotopy ν(Θ₁,Θ₂) = −Φ(θ₁,θ₂,·) of the sharp morphism on
/// multiplicative 1-forms, a section of A.
pub fn morphism_nu(
    model: &QuasiPoissonModel,
    t1: &PolyTensor,
    t2: &PolyTensor,
) -> Result<PolyTensor> {
    let th1 = leading_term(&model.groupoid, t1)?;
    let th2 = leading_term(&model.groupoid, t2)?;
    if model.phi_section.is_zero() || th1.is_zero() || th2.is_zero() {
        return Ok(PolyTensor::zero(model.groupoid.chart_g(), 1, 0));
    }
    Ok(crate::cartan::multivector_eval_partial(&model.phi_section, &[&th1, &th2])?.neg())
}

/// Graded extension of the homotopy: (id ⊗ ∧p♯) applied to the iterated
/// contraction of the trisection with the leading terms; agrees with
/// [`morphism_nu`] in degree one.
pub fn nu_graded(
    model: &QuasiPoissonModel,
    t1: &PolyTensor,
    t2: &PolyTensor,
) -> Result<PolyTensor> {
    let gpd = &model.groupoid;
    let p = gpd.dim_g();
    let th1 = leading_term(gpd, t1)?;
    let th2 = leading_term(gpd, t2)?;
    let out_k = 1 + (t1.l() + t2.l()).saturating_sub(2);
    if model.phi_section.is_zero() || th1.is_zero() || th2.is_zero() {
        return Ok(PolyTensor::zero(gpd.chart_g(), out_k, 0));
    }
    let c1 = crate::cartan::contract(&model.phi_section, &th1)?;
    if c1.is_zero() {
        return Ok(PolyTensor::zero(gpd.chart_g(), out_k, 0));
    }
    let chain = crate::cartan::contract(&c1, &th2)?;
    let mut out = PolyTensor::zero(gpd.chart_g(), out_k, 0);
    let mut sharp_dm: Vec<Option<PolyTensor>> = vec![None; gpd.dim_v()];
    for (key, c) in chain.components() {
        let mut mv = PolyTensor::coordinate_vector(gpd.chart_g(), key.up[0]);
        for &i in &key.down {
            if i < p {
                return Err(Error::NotDescendable(format!(
                    "leading terms left a fiber leg down{:?}",
                    key.down
                )));
            }
            let j = i - p;
            if sharp_dm[j].is_none() {
                let mu = PolyTensor::coordinate_form(gpd.chart_m(), j);
                sharp_dm[j] = Some(p_sharp_base(model, &mu)?);
            }
            mv = mv.wedge(sharp_dm[j].as_ref().expect("cached sharp"))?;
        }
        out = out.add(&mv.scale_poly(c));
    }
    Ok(out)
}

/// (id ⊗ ∧P♯) on a mixed (k,l)-tensor on the total space: each covariant leg
/// is replaced by its sharp image.
pub fn id_tensor_psharp(p_biv: &PolyTensor, t: &PolyTensor) -> Result<PolyTensor> {
    let ch = t.chart().clone();
    let dim = ch.dim();
    let mut sharp: Vec<Option<PolyTensor>> = vec![None; dim];
    let mut out = PolyTensor::zero(&ch, t.k() + t.l(), 0);
    for (key, c) in t.components() {
        let mut mv = PolyTensor::from_function(Polynomial::one(&ch));
        for &a in &key.up {
            mv = mv.wedge(&PolyTensor::coordinate_vector(&ch, a))?;
        }
        for &i in &key.down {
            if sharp[i].is_none() {
                sharp[i] = Some(p_sharp(p_biv, &PolyTensor::coordinate_form(&ch, i))?);
            }
            mv = mv.wedge(sharp[i].as_ref().expect("cached sharp"))?;
        }
        out = out.add(&mv.scale_poly(c));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group2::fixtures;
    use crate::symcore::RatMatrix;

    fn calib() -> QuasiPoissonModel {
        build_qp(&Lie2Algebra::new(fixtures::calibration()).unwrap()).unwrap()
    }

    #[test]
    fn lifts_are_multiplicative_as_vector_fields() {
        let model = calib();
        let gpd = &model.groupoid;
        let ch = gpd.chart_g();
        // a section with polynomial coefficient: u = m·e₂
        let u = PolyTensor::coordinate_vector(ch, 1).scale_poly(&Polynomial::coordinate(ch, 3));
        let t = t_map(gpd, &u).unwrap();
        assert!(gpd.is_multiplicative_vecfield(&t).unwrap().ok);
        assert!(gpd.is_multiplicative_tensor(&t).unwrap().ok);
        // the left lift alone is not multiplicative in general
        let l = left_invariant(gpd, &PolyTensor::coordinate_vector(ch, 0)).unwrap();
        assert!(!gpd.is_multiplicative_vecfield(&l).unwrap().ok);
    }

    #[test]
    fn un_lift_round_trip() {
        let model = calib();
        let gpd = &model.groupoid;
        let ch = gpd.chart_g();
        let u = PolyTensor::coordinate_vector(ch, 0)
            .wedge(&PolyTensor::coordinate_vector(ch, 2))
            .unwrap()
            .scale_poly(&Polynomial::coordinate(ch, 3));
        let lifted = left_invariant(gpd, &u).unwrap();
        assert_eq!(un_lift(gpd, &lifted).unwrap(), u);
        // a non-invariant multivector is rejected
        let bad = PolyTensor::coordinate_vector(ch, 0)
            .wedge(&PolyTensor::coordinate_vector(ch, 2))
            .unwrap()
            .scale_poly(&Polynomial::coordinate(ch, 0));
        assert!(un_lift(gpd, &bad).is_err());
    }

    #[test]
    fn source_pullback_of_interior_product_matches_lift() {
        let model = calib();
        let gpd = &model.groupoid;
        let ch = gpd.chart_g();
        // ι_{u⃖}(s*γ-style legs): lift commutes with contraction against the
        // leading part, here exercised via the left lift of a section pairing
        let u = PolyTensor::coordinate_vector(ch, 0).scale_poly(&Polynomial::coordinate(ch, 3));
        let gamma = PolyTensor::coordinate_form(gpd.chart_m(), 0);
        let theta = j_form(gpd, &gamma).unwrap();
        let lhs = crate::cartan::contract(&left_invariant(gpd, &u).unwrap(), &theta).unwrap();
        // θ = leading part of Θ pairs with u on the base
        let th = leading_term(gpd, &theta).unwrap();
        let rhs = crate::cartan::contract(&u, &th).unwrap();
        assert_eq!(lhs.scalar(), rhs.scalar());
    }

    #[test]
    fn build_qp_on_calibration_model() {
        let model = calib();
        let ch = model.groupoid.chart_g();
        // {g₁,g₂} = −g₁, {g₂,g₃} = g₂, {g₂,m} = m
        let g1 = Polynomial::coordinate(ch, 0);
        assert_eq!(model.bivector.component(&[0, 1], &[]), -&g1);
        assert_eq!(model.bivector.component(&[1, 2], &[]), Polynomial::coordinate(ch, 1));
        assert_eq!(model.bivector.component(&[1, 3], &[]), Polynomial::coordinate(ch, 3));
        // Φ = −m ∂g₁∧∂g₂∧∂g₃
        assert_eq!(
            model.phi_section.component(&[0, 1, 2], &[]),
            -&Polynomial::coordinate(ch, 3)
        );
        assert!(!model.phi_left.is_zero());
    }

    #[test]
    fn build_qp_on_corpus_models() {
        for data in [
            fixtures::abelian(),
            fixtures::heisenberg3(),
            fixtures::kks_sl2(),
            fixtures::abelian_g3_phi(),
        ] {
            let model = build_qp(&Lie2Algebra::new(data).unwrap()).unwrap();
            assert!(model.groupoid.dim_g() >= 1);
        }
    }

    #[test]
    fn kks_bivector_is_poisson() {
        let model = build_qp(&Lie2Algebra::new(fixtures::kks_sl2()).unwrap()).unwrap();
        assert!(crate::cartan::half_square(&model.bivector).unwrap().is_zero());
    }

    #[test]
    fn bivector_mutation_breaks_the_axioms() {
        let model = calib();
        let ch = model.groupoid.chart_g();
        let mut tampered = model.bivector.clone();
        tampered.add_component(&[0, 2], &[], Polynomial::coordinate(ch, 2));
        let defect = curvature(&tampered)
            .unwrap()
            .sub(&model.phi_right.sub(&model.phi_left));
        assert!(!defect.is_zero());
    }

    #[test]
    fn constant_generator_bracket_is_exact_on_nonzero_phi_model() {
        let model = build_qp(&Lie2Algebra::new(fixtures::abelian_g3_phi()).unwrap()).unwrap();
        let ch = model.groupoid.chart_g();
        let dg = |a| PolyTensor::coordinate_form(ch, a);
        let br = three_bracket_mult(&model, &dg(0), &dg(1), &dg(2)).unwrap();
        // the bracket of the constant fiber frame is the exterior derivative
        // of the linear base function picked out by the ternary bracket
        let dm = PolyTensor::coordinate_form(model.groupoid.chart_m(), 0);
        assert_eq!(br, dm);
    }

    #[test]
    fn degree_one_bracket_matches_lie_derivative_display() {
        let model = calib();
        let ch = model.groupoid.chart_g();
        let t1 = PolyTensor::coordinate_form(ch, 0);
        let t2 = PolyTensor::coordinate_form(ch, 1);
        let t3 = PolyTensor::coordinate_form(ch, 2);
        let lhs = three_bracket_pullback(&model, &t1, &t2, &t3).unwrap();
        // independent oracle: L_{Φ⃖(Θ₁,Θ₂,·)}Θ₃ + c.p. − 2 dΦ⃖(Θ₁,Θ₂,Θ₃)
        let phi = &model.phi_left;
        let part = |a: &PolyTensor, b: &PolyTensor| {
            crate::cartan::multivector_eval_partial(phi, &[a, b]).unwrap()
        };
        let lie = |v: &PolyTensor, w: &PolyTensor| crate::cartan::lie_derivative(v, w).unwrap();
        let full = phi.eval_on_forms(&[&t1, &t2, &t3]).unwrap();
        let dfull = crate::cartan::exterior_derivative(&PolyTensor::from_function(full)).unwrap();
        let rhs = lie(&part(&t1, &t2), &t3)
            .add(&lie(&part(&t2, &t3), &t1))
            .add(&lie(&part(&t3, &t1), &t2))
            .sub(&dfull.scale(&crate::symcore::rat(2, 1)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn groupoid_rejects_zero_fiber() {
        assert!(build_groupoid(&RatMatrix::zero(0, 2)).is_err());
    }
}
