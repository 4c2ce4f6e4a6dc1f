use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::symcore::{Chart, Polynomial, Rational};

/// Component key of an antisymmetric (k,l)-tensor: strictly increasing tuples
/// of coordinate indices, contravariant (`up`) then covariant (`down`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct TensorKey {
    pub up: Vec<usize>,
    pub down: Vec<usize>,
}

/// Sort an index tuple, tracking the permutation sign. Returns None when an
/// index repeats (the antisymmetric component vanishes).
pub(crate) fn sort_with_sign(raw: &[usize]) -> Option<(Vec<usize>, Rational)> {
    let mut v = raw.to_vec();
    let mut swaps = 0usize;
    // insertion sort, counting inversions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            swaps += 1;
            j -= 1;
        }
    }
    for w in v.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    let sign = if swaps % 2 == 0 { Rational::one() } else { -Rational::one() };
    Some((v, sign))
}

/// Polynomial-coefficient antisymmetric (k,l)-tensor field on a chart.
/// k=0 gives differential forms, l=0 multivector fields; mixed tensors carry
/// a wedge of vectors tensored with a wedge of covectors.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyTensor {
    chart: Chart,
    k: usize,
    l: usize,
    components: BTreeMap<TensorKey, Polynomial>,
}

impl PolyTensor {
    pub fn zero(chart: &Chart, k: usize, l: usize) -> PolyTensor {
        PolyTensor { chart: chart.clone(), k, l, components: BTreeMap::new() }
    }

    pub fn from_function(p: Polynomial) -> PolyTensor {
        let mut t = PolyTensor::zero(p.chart(), 0, 0);
        t.add_component(&[], &[], p);
        t
    }

    /// dxᵢ
    pub fn coordinate_form(chart: &Chart, i: usize) -> PolyTensor {
        let mut t = PolyTensor::zero(chart, 0, 1);
        t.add_component(&[], &[i], Polynomial::one(chart));
        t
    }

    /// ∂ᵢ
    pub fn coordinate_vector(chart: &Chart, i: usize) -> PolyTensor {
        let mut t = PolyTensor::zero(chart, 1, 0);
        t.add_component(&[i], &[], Polynomial::one(chart));
        t
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn is_form(&self) -> bool {
        self.k == 0
    }

    pub fn is_multivector(&self) -> bool {
        self.l == 0
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&TensorKey, &Polynomial)> {
        self.components.iter()
    }

    pub fn component(&self, up: &[usize], down: &[usize]) -> Polynomial {
        self.components
            .get(&TensorKey { up: up.to_vec(), down: down.to_vec() })
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(&self.chart))
    }

    /// As a scalar: the sole component of a (0,0)-tensor.
    pub fn scalar(&self) -> Polynomial {
        assert!(self.k == 0 && self.l == 0, "scalar() on non-scalar tensor");
        self.component(&[], &[])
    }

    /// Add `coeff · ∂_{up} ⊗ dx_{down}` with arbitrary index order,
    /// canonicalizing signs; repeated indices contribute nothing.
    pub fn add_component(&mut self, up: &[usize], down: &[usize], coeff: Polynomial) {
        debug_assert_eq!(up.len(), self.k);
        debug_assert_eq!(down.len(), self.l);
        debug_assert_eq!(coeff.chart(), &self.chart);
        if coeff.is_zero() {
            return;
        }
        let Some((up_s, s1)) = sort_with_sign(up) else { return };
        let Some((down_s, s2)) = sort_with_sign(down) else { return };
        let key = TensorKey { up: up_s, down: down_s };
        let add = coeff.scale(&(s1 * s2));
        let cur = self.components.remove(&key);
        let new = match cur {
            Some(c) => c.try_add(&add).expect("same chart"),
            None => add,
        };
        if !new.is_zero() {
            self.components.insert(key, new);
        }
    }

    pub fn add(&self, other: &PolyTensor) -> PolyTensor {
        assert_eq!(self.chart, other.chart, "tensor chart mismatch in add");
        assert!(self.k == other.k && self.l == other.l, "tensor degree mismatch in add");
        let mut out = self.clone();
        for (key, c) in &other.components {
            out.add_component(&key.up, &key.down, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &PolyTensor) -> PolyTensor {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn neg(&self) -> PolyTensor {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> PolyTensor {
        if c.is_zero() {
            return PolyTensor::zero(&self.chart, self.k, self.l);
        }
        PolyTensor {
            chart: self.chart.clone(),
            k: self.k,
            l: self.l,
            components: self
                .components
                .iter()
                .map(|(key, p)| (key.clone(), p.scale(c)))
                .collect(),
        }
    }

    pub fn scale_poly(&self, f: &Polynomial) -> PolyTensor {
        let mut out = PolyTensor::zero(&self.chart, self.k, self.l);
        for (key, p) in &self.components {
            out.add_component(&key.up, &key.down, p.try_mul(f).expect("same chart"));
        }
        out
    }

    /// Exterior product. Both arguments must be pure forms or pure
    /// multivectors on the same chart.
    pub fn wedge(&self, other: &PolyTensor) -> Result<PolyTensor> {
        if self.chart != other.chart {
            return Err(Error::ChartMismatch {
                expected: self.chart.name().to_string(),
                got: other.chart.name().to_string(),
            });
        }
        let forms = self.is_form() && other.is_form();
        let mvs = self.is_multivector() && other.is_multivector();
        if !forms && !mvs {
            return Err(Error::MixedVariance(
                "wedge requires two forms or two multivectors".into(),
            ));
        }
        let mut out = PolyTensor::zero(&self.chart, self.k + other.k, self.l + other.l);
        for (ka, ca) in &self.components {
            for (kb, cb) in &other.components {
                let up: Vec<usize> = ka.up.iter().chain(&kb.up).copied().collect();
                let down: Vec<usize> = ka.down.iter().chain(&kb.down).copied().collect();
                out.add_component(&up, &down, ca.try_mul(cb)?);
            }
        }
        Ok(out)
    }

    /// (k,0) ⊗ (0,l) → (k,l): decomposable mixed tensor u ⊗ ω.
    pub fn tensor_mixed(mv: &PolyTensor, form: &PolyTensor) -> Result<PolyTensor> {
        if mv.chart != form.chart {
            return Err(Error::ChartMismatch {
                expected: mv.chart.name().to_string(),
                got: form.chart.name().to_string(),
            });
        }
        if !mv.is_multivector() || !form.is_form() {
            return Err(Error::MixedVariance("tensor_mixed wants (k,0) ⊗ (0,l)".into()));
        }
        let mut out = PolyTensor::zero(&mv.chart, mv.k, form.l);
        for (ka, ca) in &mv.components {
            for (kb, cb) in &form.components {
                out.add_component(&ka.up, &kb.down, ca.try_mul(cb)?);
            }
        }
        Ok(out)
    }

    /// Interior product ι_α X of a 1-form into a multivector, contracting the
    /// first slot: ι_α(X₁∧…∧X_k) = Σᵢ (−1)^{i−1} α(Xᵢ) X₁∧…X̂ᵢ…∧X_k.
    pub fn interior_form(alpha: &PolyTensor, x: &PolyTensor) -> Result<PolyTensor> {
        if alpha.k != 0 || alpha.l != 1 || !x.is_multivector() || x.k == 0 {
            return Err(Error::DegreeViolation("interior_form wants (0,1) into (k≥1,0)".into()));
        }
        let mut out = PolyTensor::zero(&x.chart, x.k - 1, 0);
        for (key, c) in &x.components {
            for (pos, &i) in key.up.iter().enumerate() {
                let a = alpha.component(&[], &[i]);
                if a.is_zero() {
                    continue;
                }
                let mut rest = key.up.clone();
                rest.remove(pos);
                let sign = if pos % 2 == 0 { Rational::one() } else { -Rational::one() };
                out.add_component(&rest, &[], c.try_mul(&a)?.scale(&sign));
            }
        }
        Ok(out)
    }

    /// Full evaluation of a k-vector on k 1-forms, first slot first:
    /// X(α₁,…,α_k) = ι_{α_k}⋯ι_{α₁} X (determinant convention).
    pub fn eval_on_forms(&self, alphas: &[&PolyTensor]) -> Result<Polynomial> {
        if !self.is_multivector() || alphas.len() != self.k {
            return Err(Error::DegreeViolation("eval_on_forms arity".into()));
        }
        let mut cur = self.clone();
        for a in alphas {
            cur = PolyTensor::interior_form(a, &cur)?;
        }
        Ok(cur.scalar())
    }

    /// Vector field applied to a function.
    pub fn apply_to_function(&self, f: &Polynomial) -> Result<Polynomial> {
        if self.k != 1 || self.l != 0 {
            return Err(Error::DegreeViolation("apply_to_function wants a vector field".into()));
        }
        let mut out = Polynomial::zero(&self.chart);
        for (key, c) in &self.components {
            out = out.try_add(&c.try_mul(&f.partial(key.up[0]))?)?;
        }
        Ok(out)
    }
}

impl fmt::Debug for PolyTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0[({},{})]", self.k, self.l);
        }
        let mut parts = Vec::new();
        for (key, c) in &self.components {
            let ups: Vec<String> =
                key.up.iter().map(|&i| format!("∂{}", self.chart.coordinate(i))).collect();
            let downs: Vec<String> =
                key.down.iter().map(|&i| format!("d{}", self.chart.coordinate(i))).collect();
            let basis = ups
                .into_iter()
                .chain(downs)
                .collect::<Vec<_>>()
                .join("∧");
            if basis.is_empty() {
                parts.push(format!("({c})"));
            } else {
                parts.push(format!("({c})·{basis}"));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Exterior derivative of a form: d(c · dx_J) = dc ∧ dx_J.
pub fn exterior_derivative(omega: &PolyTensor) -> Result<PolyTensor> {
    if !omega.is_form() {
        return Err(Error::MixedVariance("exterior_derivative wants a form".into()));
    }
    let chart = omega.chart().clone();
    let mut out = PolyTensor::zero(&chart, 0, omega.l() + 1);
    for (key, c) in omega.components() {
        for i in 0..chart.dim() {
            let dc = c.partial(i);
            if dc.is_zero() {
                continue;
            }
            let mut down = vec![i];
            down.extend_from_slice(&key.down);
            out.add_component(&[], &down, dc);
        }
    }
    Ok(out)
}

/// Contraction ι_R Θ = Σᵢ (−1)^{k−i} X₁∧…X̂ᵢ…∧X_k ⊗ (β ∧ ι_{Xᵢ}Θ) of a
/// (k,l)-tensor R = X₁∧…∧X_k ⊗ β with a p-form Θ, extended bilinearly.
pub fn contract(r: &PolyTensor, theta: &PolyTensor) -> Result<PolyTensor> {
    if r.chart() != theta.chart() {
        return Err(Error::ChartMismatch {
            expected: r.chart().name().to_string(),
            got: theta.chart().name().to_string(),
        });
    }
    if !theta.is_form() || theta.l() < 1 || r.k() < 1 {
        return Err(Error::DegreeViolation(format!(
            "contract wants k≥1 and p≥1, got k={} p={}",
            r.k(),
            theta.l()
        )));
    }
    let k = r.k();
    let mut out = PolyTensor::zero(r.chart(), k - 1, r.l() + theta.l() - 1);
    for (rk, rc) in r.components() {
        for (tk, tc) in theta.components() {
            for (a, &i) in rk.up.iter().enumerate() {
                // (−1)^{k−i} with 1-based i = a+1
                let s1 = if (k - a - 1) % 2 == 0 { Rational::one() } else { -Rational::one() };
                // ι_{∂ᵢ} dx_M
                let Some(pos) = tk.down.iter().position(|&m| m == i) else { continue };
                let s2 = if pos % 2 == 0 { Rational::one() } else { -Rational::one() };
                let mut up = rk.up.clone();
                up.remove(a);
                let mut down = rk.down.clone();
                let mut rest = tk.down.clone();
                rest.remove(pos);
                down.extend(rest);
                out.add_component(&up, &down, rc.try_mul(tc)?.scale(&(s1 * s2)));
            }
        }
    }
    Ok(out)
}

/// Schouten–Nijenhuis bracket of multivector fields in odd coordinates
/// (ξᵢ = ∂ᵢ): the odd Poisson bracket
///   [A,B] = Σᵢ (∂_r A/∂ξᵢ)(∂B/∂xᵢ) − (∂A/∂xᵢ)(∂_l B/∂ξᵢ),
/// with ∂_r the right and ∂_l the left odd derivative. Reduces to the Lie
/// bracket on vector fields and to X(f) on (vector, function), and is
/// graded skew: [A,B] = −(−1)^{(a−1)(b−1)}[B,A].
pub fn schouten(a: &PolyTensor, b: &PolyTensor) -> Result<PolyTensor> {
    if a.chart() != b.chart() {
        return Err(Error::ChartMismatch {
            expected: a.chart().name().to_string(),
            got: b.chart().name().to_string(),
        });
    }
    if !a.is_multivector() || !b.is_multivector() {
        return Err(Error::MixedVariance("schouten wants multivectors".into()));
    }
    let chart = a.chart();
    let (ka, kb) = (a.k(), b.k());
    let deg = (ka + kb).saturating_sub(1);
    let mut out = PolyTensor::zero(chart, deg, 0);
    // Σᵢ (∂_r A/∂ξᵢ)(∂B/∂xᵢ): removing ξ at position t of a k-blade from the
    // right gives sign (−1)^{k−1−t}
    for (akey, ac) in a.components() {
        for (pos, &i) in akey.up.iter().enumerate() {
            let s = if (ka - 1 - pos) % 2 == 0 { Rational::one() } else { -Rational::one() };
            let mut rest = akey.up.clone();
            rest.remove(pos);
            for (bkey, bc) in b.components() {
                let db = bc.partial(i);
                if db.is_zero() {
                    continue;
                }
                let up: Vec<usize> = rest.iter().chain(&bkey.up).copied().collect();
                out.add_component(&up, &[], ac.try_mul(&db)?.scale(&s));
            }
        }
    }
    // − Σᵢ (∂A/∂xᵢ)(∂_l B/∂ξᵢ): removing ξ at position t from the left gives
    // sign (−1)^t
    for (bkey, bc) in b.components() {
        for (pos, &i) in bkey.up.iter().enumerate() {
            let s = if pos % 2 == 0 { -Rational::one() } else { Rational::one() };
            let mut rest = bkey.up.clone();
            rest.remove(pos);
            for (akey, ac) in a.components() {
                let da = ac.partial(i);
                if da.is_zero() {
                    continue;
                }
                let up: Vec<usize> = akey.up.iter().chain(&rest).copied().collect();
                out.add_component(&up, &[], da.try_mul(bc)?.scale(&s));
            }
        }
    }
    Ok(out)
}

/// Lie derivative along a vector field X of an arbitrary (k,l)-tensor,
/// acting as a derivation: coefficients by X, each vector factor by
/// [X, ∂ᵢ] = −(∂ᵢX^a)∂_a, each covector factor by L_X dxⱼ = d(X^j).
pub fn lie_derivative(x: &PolyTensor, t: &PolyTensor) -> Result<PolyTensor> {
    if x.k() != 1 || x.l() != 0 {
        return Err(Error::DegreeViolation("lie_derivative wants a (1,0) field".into()));
    }
    if x.chart() != t.chart() {
        return Err(Error::ChartMismatch {
            expected: x.chart().name().to_string(),
            got: t.chart().name().to_string(),
        });
    }
    let chart = t.chart().clone();
    let dim = chart.dim();
    // X^a as polynomials
    let xs: Vec<Polynomial> = (0..dim).map(|i| x.component(&[i], &[])).collect();
    let mut out = PolyTensor::zero(&chart, t.k(), t.l());
    for (key, c) in t.components() {
        // X(c)
        let mut xc = Polynomial::zero(&chart);
        for (a, xa) in xs.iter().enumerate() {
            xc = xc.try_add(&xa.try_mul(&c.partial(a))?)?;
        }
        out.add_component(&key.up, &key.down, xc);
        // vector slots: replace ∂_{i_r} by [X, ∂_{i_r}] = −Σ_a (∂_{i_r}X^a) ∂_a
        for r in 0..key.up.len() {
            let i = key.up[r];
            for (a, xa) in xs.iter().enumerate() {
                let coeff = xa.partial(i);
                if coeff.is_zero() {
                    continue;
                }
                let mut up = key.up.clone();
                up[r] = a;
                out.add_component(&up, &key.down, c.try_mul(&coeff)?.scale(&-Rational::one()));
            }
        }
        // covector slots: replace dx_{j_s} by d(X^{j_s}) = Σ_a (∂_a X^{j_s}) dx_a
        for s in 0..key.down.len() {
            let j = key.down[s];
            for a in 0..dim {
                let coeff = xs[j].partial(a);
                if coeff.is_zero() {
                    continue;
                }
                let mut down = key.down.clone();
                down[s] = a;
                out.add_component(&key.up, &down, c.try_mul(&coeff)?);
            }
        }
    }
    Ok(out)
}

/// P♯α = ι_α P on 1-forms; on a p-form the decomposable extension
/// ∧^p P♯(α₁∧…∧α_p) = P♯α₁ ∧ … ∧ P♯α_p applied componentwise.
pub fn p_sharp(p: &PolyTensor, alpha: &PolyTensor) -> Result<PolyTensor> {
    if p.k() != 2 || p.l() != 0 || !alpha.is_form() {
        return Err(Error::DegreeViolation("p_sharp wants a bivector and a form".into()));
    }
    if alpha.l() == 0 {
        return Err(Error::DegreeViolation("p_sharp of a function is undefined".into()));
    }
    if alpha.l() == 1 {
        return PolyTensor::interior_form(alpha, p);
    }
    let chart = alpha.chart().clone();
    // componentwise: c · dx_{m1}∧…∧dx_{mp} ↦ c · P♯dx_{m1} ∧ … ∧ P♯dx_{mp}
    let sharp_dx: Vec<PolyTensor> = (0..chart.dim())
        .map(|i| PolyTensor::interior_form(&PolyTensor::coordinate_form(&chart, i), p))
        .collect::<Result<_>>()?;
    let mut out = PolyTensor::zero(&chart, alpha.l(), 0);
    for (key, c) in alpha.components() {
        let mut acc = PolyTensor::from_function(c.clone());
        for &m in &key.down {
            acc = acc.wedge(&sharp_dx[m])?;
        }
        out = out.add(&acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::rat;

    fn chart2() -> Chart {
        Chart::new("plane", &["x1", "x2"])
    }

    #[test]
    fn wedge_basics() {
        let ch = chart2();
        let dx1 = PolyTensor::coordinate_form(&ch, 0);
        let dx2 = PolyTensor::coordinate_form(&ch, 1);
        let w = dx1.wedge(&dx2).unwrap();
        assert_eq!(w.component(&[], &[0, 1]), Polynomial::one(&ch));
        assert!(dx1.wedge(&dx1).unwrap().is_zero());
        assert_eq!(dx2.wedge(&dx1).unwrap(), w.neg());
    }

    #[test]
    fn exterior_derivative_basics() {
        let ch = chart2();
        let x1 = Polynomial::coordinate(&ch, 0);
        // d(x1 dx2) = dx1∧dx2
        let omega = PolyTensor::coordinate_form(&ch, 1).scale_poly(&x1);
        let d = exterior_derivative(&omega).unwrap();
        let expected = PolyTensor::coordinate_form(&ch, 0)
            .wedge(&PolyTensor::coordinate_form(&ch, 1))
            .unwrap();
        assert_eq!(d, expected);
        // d(x1^2) = 2 x1 dx1
        let f = PolyTensor::from_function(&x1 * &x1);
        let df = exterior_derivative(&f).unwrap();
        assert_eq!(df, PolyTensor::coordinate_form(&ch, 0).scale_poly(&x1.scale(&rat(2, 1))));
        // d² = 0
        assert!(exterior_derivative(&d).unwrap().is_zero());
    }

    #[test]
    fn contract_dual_pairing() {
        let ch = chart2();
        let d1 = PolyTensor::coordinate_vector(&ch, 0);
        let dx1 = PolyTensor::coordinate_form(&ch, 0);
        let r = contract(&d1, &dx1).unwrap();
        assert_eq!(r.scalar(), Polynomial::one(&ch));
    }

    /// ι_{∂₁∧∂₂}(dx₁∧dx₂): expand the displayed sum by hand.
    /// i=1 term: (−1)^{2−1} ∂₂ ⊗ ι_{∂₁}(dx₁∧dx₂) = −∂₂⊗dx₂;
    /// i=2 term: (−1)^{0} ∂₁ ⊗ ι_{∂₂}(dx₁∧dx₂) = ∂₁⊗(−dx₁).
    #[test]
    fn contract_bivector_two_form() {
        let ch = chart2();
        let r = PolyTensor::coordinate_vector(&ch, 0)
            .wedge(&PolyTensor::coordinate_vector(&ch, 1))
            .unwrap();
        let omega = PolyTensor::coordinate_form(&ch, 0)
            .wedge(&PolyTensor::coordinate_form(&ch, 1))
            .unwrap();
        let got = contract(&r, &omega).unwrap();
        let mut expected = PolyTensor::zero(&ch, 1, 1);
        expected.add_component(&[1], &[1], -&Polynomial::one(&ch));
        expected.add_component(&[0], &[0], -&Polynomial::one(&ch));
        assert_eq!(got, expected);
    }

    /// ι_{x₂∂₁}(dx₁∧dx₂) → x₂ dx₂ (single-term expansion).
    #[test]
    fn contract_weighted_vector() {
        let ch = chart2();
        let x2 = Polynomial::coordinate(&ch, 1);
        let r = PolyTensor::coordinate_vector(&ch, 0).scale_poly(&x2);
        let omega = PolyTensor::coordinate_form(&ch, 0)
            .wedge(&PolyTensor::coordinate_form(&ch, 1))
            .unwrap();
        let got = contract(&r, &omega).unwrap();
        assert_eq!(got, PolyTensor::coordinate_form(&ch, 1).scale_poly(&x2));
    }

    #[test]
    fn schouten_vector_cases() {
        let ch = chart2();
        let d1 = PolyTensor::coordinate_vector(&ch, 0);
        let x1 = Polynomial::coordinate(&ch, 0);
        let x1d2 = PolyTensor::coordinate_vector(&ch, 1).scale_poly(&x1);
        // [∂₁, x₁∂₂] = ∂₂
        assert_eq!(schouten(&d1, &x1d2).unwrap(), PolyTensor::coordinate_vector(&ch, 1));
        // [X, f] = X(f)
        let f = PolyTensor::from_function(&x1 * &x1);
        assert_eq!(schouten(&d1, &f).unwrap().scalar(), x1.scale(&rat(2, 1)));
        // constant bivector: [P,P] = 0
        let p = PolyTensor::coordinate_vector(&ch, 0)
            .wedge(&PolyTensor::coordinate_vector(&ch, 1))
            .unwrap();
        assert!(schouten(&p, &p).unwrap().is_zero());
    }

    #[test]
    fn lie_derivative_cases() {
        let ch = chart2();
        let d1 = PolyTensor::coordinate_vector(&ch, 0);
        let x1 = Polynomial::coordinate(&ch, 0);
        // L_{∂₁}(x₁ dx₂) = dx₂
        let omega = PolyTensor::coordinate_form(&ch, 1).scale_poly(&x1);
        assert_eq!(lie_derivative(&d1, &omega).unwrap(), PolyTensor::coordinate_form(&ch, 1));
    }

    #[test]
    fn p_sharp_constant_bivector() {
        let ch = chart2();
        let p = PolyTensor::coordinate_vector(&ch, 0)
            .wedge(&PolyTensor::coordinate_vector(&ch, 1))
            .unwrap();
        let got = p_sharp(&p, &PolyTensor::coordinate_form(&ch, 0)).unwrap();
        // ι_{dx₁}(∂₁∧∂₂) = ∂₂ with the first-slot convention
        assert_eq!(got, PolyTensor::coordinate_vector(&ch, 1));
        assert!(p_sharp(&p, &PolyTensor::zero(&ch, 0, 1)).unwrap().is_zero());
    }
}
