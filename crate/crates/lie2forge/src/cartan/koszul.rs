use num_traits::One;

use crate::error::{Error, Result};
use crate::symcore::{rat, Polynomial, Rational};

use super::tensor::{
    contract, exterior_derivative, lie_derivative, p_sharp, schouten, PolyTensor,
};

fn same_chart(a: &PolyTensor, b: &PolyTensor) -> Result<()> {
    if a.chart() != b.chart() {
        return Err(Error::ChartMismatch {
            expected: a.chart().name().to_string(),
            got: b.chart().name().to_string(),
        });
    }
    Ok(())
}

/// P(α, β) = β(ι_α P) for 1-forms; skew: P(α,β) = −P(β,α).
pub fn bivector_eval(p: &PolyTensor, alpha: &PolyTensor, beta: &PolyTensor) -> Result<Polynomial> {
    let v = PolyTensor::interior_form(alpha, p)?;
    if v.is_zero() {
        return Ok(Polynomial::zero(p.chart()));
    }
    Ok(contract(&v, beta)?.scalar())
}

/// Partial evaluation of a k-vector on j ≤ k 1-forms by iterated first-slot
/// interior products: T(α₁,…,α_j,·,…) = ι_{α_j}⋯ι_{α_1} T.
pub fn multivector_eval_partial(t: &PolyTensor, alphas: &[&PolyTensor]) -> Result<PolyTensor> {
    let mut cur = t.clone();
    for a in alphas {
        cur = PolyTensor::interior_form(a, &cur)?;
    }
    Ok(cur)
}

/// Koszul P-bracket. On 1-forms [α,β]_P = L_{P♯α}β − L_{P♯β}α − dP(α,β);
/// [α,f]_P = (P♯α)(f); extended to all degrees by the Leibniz rules
///   [ω₁∧ω₂, η] = ω₁∧[ω₂,η] + (−1)^{|ω₂|(|η|−1)} [ω₁,η]∧ω₂,
///   [ω, η₁∧η₂] = [ω,η₁]∧η₂ + (−1)^{(|ω|−1)|η₁|} η₁∧[ω,η₂],
/// with shifted degrees (a p-form has degree p−1).
pub fn koszul_bracket(p: &PolyTensor, a: &PolyTensor, b: &PolyTensor) -> Result<PolyTensor> {
    same_chart(p, a)?;
    same_chart(p, b)?;
    if p.k() != 2 || p.l() != 0 {
        return Err(Error::DegreeViolation("koszul_bracket wants a bivector P".into()));
    }
    if !a.is_form() || !b.is_form() {
        return Err(Error::DegreeViolation("koszul_bracket wants forms".into()));
    }
    koszul_rec(p, a, b)
}

fn koszul_rec(p: &PolyTensor, a: &PolyTensor, b: &PolyTensor) -> Result<PolyTensor> {
    let chart = a.chart().clone();
    let (la, lb) = (a.l(), b.l());
    // output degree la+lb−1 < 0: identically zero scalar
    if la + lb == 0 {
        return Ok(PolyTensor::zero(&chart, 0, 0));
    }
    let out_l = la + lb - 1;
    if a.is_zero() || b.is_zero() {
        return Ok(PolyTensor::zero(&chart, 0, out_l));
    }
    match (la, lb) {
        (1, 0) => {
            // (P♯α)(f)
            let v = p_sharp(p, a)?;
            Ok(PolyTensor::from_function(v.apply_to_function(&b.scalar())?))
        }
        (0, _) => {
            // graded skew: [a,b] = −(−1)^{(la−1)(lb−1)} [b,a], with la−1 = −1
            let sign = if (lb as i64 - 1) % 2 == 0 { -Rational::one() } else { Rational::one() };
            Ok(koszul_rec(p, b, a)?.scale(&sign))
        }
        (1, 1) => {
            let sa = p_sharp(p, a)?;
            let sb = p_sharp(p, b)?;
            let t1 = lie_derivative(&sa, b)?;
            let t2 = lie_derivative(&sb, a)?;
            let pab = bivector_eval(p, a, b)?;
            let t3 = exterior_derivative(&PolyTensor::from_function(pab))?;
            Ok(t1.sub(&t2).sub(&t3))
        }
        (1, _) => {
            // decompose the second argument: c·dx_M = (c·dx_{m0}) ∧ dx_{M'}
            let mut out = PolyTensor::zero(&chart, 0, out_l);
            for (key, c) in b.components() {
                let m0 = key.down[0];
                let rest = &key.down[1..];
                let mut eta1 = PolyTensor::zero(&chart, 0, 1);
                eta1.add_component(&[], &[m0], c.clone());
                let mut eta2 = PolyTensor::zero(&chart, 0, rest.len());
                eta2.add_component(&[], rest, Polynomial::one(&chart));
                // [a, η₁]∧η₂ + (−1)^{(|a|−1)·|η₁|} η₁∧[a, η₂]; |a|−1 = 0
                let t1 = koszul_rec(p, a, &eta1)?.wedge(&eta2)?;
                let t2 = eta1.wedge(&koszul_rec(p, a, &eta2)?)?;
                out = out.add(&t1).add(&t2);
            }
            Ok(out)
        }
        (_, _) => {
            // decompose the first argument: c·dx_I = (c·dx_{i0}) ∧ dx_{I'}
            let mut out = PolyTensor::zero(&chart, 0, out_l);
            for (key, c) in a.components() {
                let i0 = key.down[0];
                let rest = &key.down[1..];
                let mut w1 = PolyTensor::zero(&chart, 0, 1);
                w1.add_component(&[], &[i0], c.clone());
                let mut w2 = PolyTensor::zero(&chart, 0, rest.len());
                w2.add_component(&[], rest, Polynomial::one(&chart));
                // ω₁∧[ω₂,b] + (−1)^{|ω₂|(|b|−1)} [ω₁,b]∧ω₂
                let t1 = w1.wedge(&koszul_rec(p, &w2, b)?)?;
                let s = if (rest.len() * (lb + 1)) % 2 == 0 {
                    // (lb−1) ≡ (lb+1) mod 2
                    Rational::one()
                } else {
                    -Rational::one()
                };
                let t2 = koszul_rec(p, &w1, b)?.wedge(&w2)?.scale(&s);
                out = out.add(&t1).add(&t2);
            }
            Ok(out)
        }
    }
}

/// ½[P,P] in the Schouten orientation implemented here (the classical
/// double-sum convention with [X, f] = X(f)).
pub fn half_square(p: &PolyTensor) -> Result<PolyTensor> {
    Ok(schouten(p, p)?.scale(&rat(1, 2)))
}

/// The curvature trivector c of a bivector P: the element with d_P² = −[c,·]
/// for d_P = [P,·]. In this bracket orientation d_P² x = +[½[P,P], x], so
/// c = −½[P,P]; texts with the opposite Schouten orientation write c = ½[P,P].
pub fn curvature(p: &PolyTensor) -> Result<PolyTensor> {
    Ok(schouten(p, p)?.scale(&rat(-1, 2)))
}

/// Cubic 3-bracket on forms: the nested contraction
/// ι_{(ι_{(ι_c Θ₁)}Θ₂)}Θ₃ of the curvature trivector c, which on three
/// 1-forms is the full contraction of c against Θ₁∧Θ₂∧Θ₃.
pub fn three_bracket_forms(
    p: &PolyTensor,
    t1: &PolyTensor,
    t2: &PolyTensor,
    t3: &PolyTensor,
) -> Result<PolyTensor> {
    same_chart(p, t1)?;
    same_chart(p, t2)?;
    same_chart(p, t3)?;
    for t in [t1, t2, t3] {
        if !t.is_form() {
            return Err(Error::DegreeViolation("three_bracket_forms wants forms".into()));
        }
    }
    let chart = p.chart().clone();
    let (l1, l2, l3) = (t1.l(), t2.l(), t3.l());
    let out_l = (l1 + l2 + l3).saturating_sub(3);
    if l1 == 0 || l2 == 0 || l3 == 0 {
        // vanishes on 0-forms: the bracket is function-linear in each slot
        // and [1,·,·] = 1∧[1,·,·] + 1∧[1,·,·] forces [1,·,·] = 0
        return Ok(PolyTensor::zero(&chart, 0, out_l));
    }
    let t = curvature(p)?;
    if t.is_zero() {
        return Ok(PolyTensor::zero(&chart, 0, out_l));
    }
    let r1 = contract(&t, t1)?;
    if r1.is_zero() {
        return Ok(PolyTensor::zero(&chart, 0, out_l));
    }
    let r2 = contract(&r1, t2)?;
    if r2.is_zero() {
        return Ok(PolyTensor::zero(&chart, 0, out_l));
    }
    Ok(contract(&r2, t3)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::Chart;

    fn chart2() -> Chart {
        Chart::new("plane", &["x1", "x2"])
    }

    /// On the Poisson bivector P = x₁∂₁∧∂₂: [dx₁,dx₂]_P = dx₁ and
    /// P♯[dx₁,dx₂]_P = [P♯dx₁, P♯dx₂] (hand-checked model).
    #[test]
    fn koszul_on_linear_poisson_plane() {
        let ch = chart2();
        let x1 = Polynomial::coordinate(&ch, 0);
        let p = PolyTensor::coordinate_vector(&ch, 0)
            .wedge(&PolyTensor::coordinate_vector(&ch, 1))
            .unwrap()
            .scale_poly(&x1);
        let dx1 = PolyTensor::coordinate_form(&ch, 0);
        let dx2 = PolyTensor::coordinate_form(&ch, 1);
        let br = koszul_bracket(&p, &dx1, &dx2).unwrap();
        assert_eq!(br, dx1);
        let lhs = p_sharp(&p, &br).unwrap();
        let rhs = schouten(&p_sharp(&p, &dx1).unwrap(), &p_sharp(&p, &dx2).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    /// [df, dg]_P = d{f,g}_P with {f,g}_P = P(df,dg), independent expansion.
    #[test]
    fn koszul_exact_forms() {
        let ch = chart2();
        let x1 = Polynomial::coordinate(&ch, 0);
        let x2 = Polynomial::coordinate(&ch, 1);
        let p = PolyTensor::coordinate_vector(&ch, 0)
            .wedge(&PolyTensor::coordinate_vector(&ch, 1))
            .unwrap()
            .scale_poly(&(&x1 + &(&x2 * &x2)));
        let f = &(&x1 * &x1) + &x2;
        let g = &x2 * &x1;
        let df = exterior_derivative(&PolyTensor::from_function(f.clone())).unwrap();
        let dg = exterior_derivative(&PolyTensor::from_function(g.clone())).unwrap();
        let lhs = koszul_bracket(&p, &df, &dg).unwrap();
        let fg = bivector_eval(&p, &df, &dg).unwrap();
        let rhs = exterior_derivative(&PolyTensor::from_function(fg)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn three_bracket_constant_bivector_vanishes() {
        let ch = chart2();
        let p = PolyTensor::coordinate_vector(&ch, 0)
            .wedge(&PolyTensor::coordinate_vector(&ch, 1))
            .unwrap();
        let dx1 = PolyTensor::coordinate_form(&ch, 0);
        let dx2 = PolyTensor::coordinate_form(&ch, 1);
        assert!(three_bracket_forms(&p, &dx1, &dx2, &dx1).unwrap().is_zero());
    }
}
