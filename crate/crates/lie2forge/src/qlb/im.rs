//! IM 1-forms on a quasi-Lie bialgebroid: the degree-shift from base
//! 1-forms, the binary bracket, the action, the ternary bracket, the induced
//! 2-term L∞ structure, the morphism into derivations of the section module,
//! invariant covectors, and the contraction/Lie calculus of IM k-forms.

use itertools::Itertools;
use num_traits::One;

use crate::cartan::{contract, exterior_derivative, koszul_bracket, lie_derivative, PolyTensor};
use crate::error::Result;
use crate::linfty::{generalized_jacobi, LInftyOps};
use crate::report::VerificationReport;
use crate::symcore::{Polynomial, RatMatrix, Rational};

use super::algebroid::{
    adjoint_derivation, validate_derivation, AMulti, Covector, DerivationA, PolyLieAlgebroid,
};
use super::bialgebroid::PolyQuasiLieBialgebroid;

/// An IM 1-form: a bundle map ν: A → T*M (frame components `nu[a]`, base
/// 1-forms) together with a covector θ ∈ Γ(A*).
#[derive(Clone, Debug)]
pub struct IM1Form {
    pub nu: Vec<PolyTensor>,
    pub theta: Covector,
}

impl IM1Form {
    pub fn zero(alg: &PolyLieAlgebroid) -> IM1Form {
        IM1Form {
            nu: vec![PolyTensor::zero(&alg.base, 0, 1); alg.rank],
            theta: alg.zero_covector(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.nu.iter().all(PolyTensor::is_zero) && self.theta.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, other: &IM1Form) -> IM1Form {
        IM1Form {
            nu: self.nu.iter().zip(&other.nu).map(|(a, b)| a.add(b)).collect(),
            theta: self
                .theta
                .iter()
                .zip(&other.theta)
                .map(|(a, b)| a.try_add(b).expect("same chart"))
                .collect(),
        }
    }

    pub fn sub(&self, other: &IM1Form) -> IM1Form {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> IM1Form {
        IM1Form {
            nu: self.nu.iter().map(PolyTensor::neg).collect(),
            theta: self.theta.iter().map(|c| c.scale(&-Rational::one())).collect(),
        }
    }

    /// ν applied to a section with polynomial coefficients.
    pub fn nu_of(&self, x: &[Polynomial]) -> PolyTensor {
        let mut out = PolyTensor::zero(self.nu[0].chart(), 0, 1);
        for (a, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.nu[a].scale_poly(c));
            }
        }
        out
    }

    /// θ applied to a section with polynomial coefficients.
    pub fn theta_of(&self, x: &[Polynomial]) -> Polynomial {
        let mut out = Polynomial::zero(self.nu[0].chart());
        for (a, c) in x.iter().enumerate() {
            out = out.try_add(&c.try_mul(&self.theta[a]).expect("chart")).expect("chart");
        }
        out
    }
}

fn zero_form(alg: &PolyLieAlgebroid, l: usize) -> PolyTensor {
    PolyTensor::zero(&alg.base, 0, l)
}

/// Interior product guarded against 0-forms, where it vanishes.
fn iota(x: &PolyTensor, omega: &PolyTensor) -> Result<PolyTensor> {
    if omega.l() == 0 || omega.is_zero() || x.is_zero() {
        return Ok(PolyTensor::zero(omega.chart(), 0, omega.l().saturating_sub(1)));
    }
    contract(x, omega)
}

/// The degree-shift j(γ) = (−ι_{ρ(·)}dγ, −ρᵀγ) into IM 1-forms.
pub fn j_im1(qlb: &PolyQuasiLieBialgebroid, gamma: &PolyTensor) -> Result<IM1Form> {
    let alg = &qlb.algebroid;
    let dg = exterior_derivative(gamma)?;
    let nu = (0..alg.rank)
        .map(|a| Ok(iota(&alg.anchor_vf(&alg.basis_section(a)), &dg)?.neg()))
        .collect::<Result<Vec<_>>>()?;
    let theta = qlb.anchor_transpose(gamma).iter().map(|c| c.scale(&-Rational::one())).collect();
    Ok(IM1Form { nu, theta })
}

/// The defining identities of an IM 1-form on ordered frame pairs:
///   θ[x,y] = ρ(x)θ(y) − ρ(y)θ(x) − ⟨ρ(y), ν(x)⟩,
///   ν[x,y] = L_{ρ(x)}ν(y) − ι_{ρ(y)}dν(x).
pub fn check_im1(alg: &PolyLieAlgebroid, f: &IM1Form) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("im_1form");
    let rho = |a: usize| alg.anchor_vf(&alg.basis_section(a));
    for a in 0..alg.rank {
        for b in 0..alg.rank {
            let br = alg.bracket_sections(&alg.basis_section(a), &alg.basis_section(b));
            let lhs = f.theta_of(&br);
            let rhs = rho(a)
                .apply_to_function(&f.theta[b])?
                .try_add(&rho(b).apply_to_function(&f.theta[a])?.scale(&-Rational::one()))?
                .try_add(&iota(&rho(b), &f.nu[a])?.scalar().scale(&-Rational::one()))?;
            let defect = lhs.try_add(&rhs.scale(&-Rational::one()))?;
            rep.record(
                format!("covector-leg-({a},{b})"),
                "θ[x,y] = ρ(x)θ(y) − ρ(y)θ(x) − ⟨ρ(y),ν(x)⟩".to_string(),
                defect.is_zero(),
                || format!("{defect:?}"),
            );
            let lhs = f.nu_of(&br);
            let rhs = lie_derivative(&rho(a), &f.nu[b])?
                .sub(&iota(&rho(b), &exterior_derivative(&f.nu[a])?)?);
            let defect = lhs.sub(&rhs);
            rep.record(
                format!("form-leg-({a},{b})"),
                "ν[x,y] = L_{ρ(x)}ν(y) − ι_{ρ(y)}dν(x)".to_string(),
                defect.is_zero(),
                || format!("{defect:?}"),
            );
        }
    }
    Ok(rep.finalize())
}

/// Flattened defect of the IM 1-form identities, linear in (ν, θ); used to
/// solve for low-degree IM 1-forms as a nullspace computation.
fn im1_defect(alg: &PolyLieAlgebroid, f: &IM1Form) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    let rho = |a: usize| alg.anchor_vf(&alg.basis_section(a));
    let n = alg.base.dim();
    for a in 0..alg.rank {
        for b in 0..alg.rank {
            let br = alg.bracket_sections(&alg.basis_section(a), &alg.basis_section(b));
            let d1 = f
                .theta_of(&br)
                .try_add(&rho(a).apply_to_function(&f.theta[b])?.scale(&-Rational::one()))?
                .try_add(&rho(b).apply_to_function(&f.theta[a])?)?
                .try_add(&iota(&rho(b), &f.nu[a])?.scalar())?;
            out.push(d1);
            let d2 = f.nu_of(&br).sub(
                &lie_derivative(&rho(a), &f.nu[b])?
                    .sub(&iota(&rho(b), &exterior_derivative(&f.nu[a])?)?),
            );
            for j in 0..n {
                out.push(d2.component(&[], &[j]));
            }
        }
    }
    Ok(out)
}

/// The binary bracket of IM 1-forms:
/// first legs ν∘ρ_*ᵀ∘ν' − ν'∘ρ_*ᵀ∘ν + L_{ρ_*θ}ν'(·) − ν'(L_θ·) − L_{ρ_*θ'}ν(·)
/// + ν(L_{θ'}·), second leg the dual bracket of the covectors.
pub fn im1_bracket(
    qlb: &PolyQuasiLieBialgebroid,
    f: &IM1Form,
    g: &IM1Form,
) -> Result<IM1Form> {
    let alg = &qlb.algebroid;
    let vt = qlb.rho_star_vf(&f.theta);
    let vt2 = qlb.rho_star_vf(&g.theta);
    let mut nu = Vec::with_capacity(alg.rank);
    for a in 0..alg.rank {
        let xa = AMulti::basis(&alg.base, alg.rank, a);
        let mut leg = f.nu_of(&qlb.rho_star_transpose(&g.nu[a]));
        leg = leg.sub(&g.nu_of(&qlb.rho_star_transpose(&f.nu[a])));
        leg = leg.add(&lie_derivative(&vt, &g.nu[a])?);
        leg = leg.sub(&g.nu_of(&qlb.lie_theta(&f.theta, &xa).to_section()));
        leg = leg.sub(&lie_derivative(&vt2, &f.nu[a])?);
        leg = leg.add(&f.nu_of(&qlb.lie_theta(&g.theta, &xa).to_section()));
        nu.push(leg);
    }
    Ok(IM1Form { nu, theta: qlb.bracket_star(&f.theta, &g.theta) })
}

/// The action of an IM 1-form on a base 1-form: F▷γ = ν(ρ_*ᵀγ) + L_{ρ_*θ}γ.
pub fn im1_action(
    qlb: &PolyQuasiLieBialgebroid,
    f: &IM1Form,
    gamma: &PolyTensor,
) -> Result<PolyTensor> {
    let first = f.nu_of(&qlb.rho_star_transpose(gamma));
    let second = lie_derivative(&qlb.rho_star_vf(&f.theta), gamma)?;
    Ok(first.add(&second))
}

/// The ternary bracket of IM 1-forms:
/// [F₁,F₂,F₃]₃ = d(Φ(θ₁,θ₂,θ₃)) + ν₁(Φ(θ₂,θ₃)) + ν₂(Φ(θ₃,θ₁)) + ν₃(Φ(θ₁,θ₂)).
pub fn im1_three_bracket(
    qlb: &PolyQuasiLieBialgebroid,
    f1: &IM1Form,
    f2: &IM1Form,
    f3: &IM1Form,
) -> Result<PolyTensor> {
    let full = qlb.phi.eval_scalar(&[&f1.theta, &f2.theta, &f3.theta]);
    let mut out = exterior_derivative(&PolyTensor::from_function(full))?;
    for (f, (t, u)) in [
        (f1, (&f2.theta, &f3.theta)),
        (f2, (&f3.theta, &f1.theta)),
        (f3, (&f1.theta, &f2.theta)),
    ] {
        out = out.add(&f.nu_of(&qlb.phi.eval_covectors(&[t, u]).to_section()));
    }
    Ok(out)
}

/// The derivation ψ₀(ν,θ): x ↦ ρ_*ᵀ(ν(x)) + L_θx, with symbol ρ_*θ.
pub fn psi0(qlb: &PolyQuasiLieBialgebroid, f: &IM1Form) -> DerivationA {
    let alg = &qlb.algebroid;
    let mut op = vec![vec![Polynomial::zero(&alg.base); alg.rank]; alg.rank];
    for a in 0..alg.rank {
        let xa = AMulti::basis(&alg.base, alg.rank, a);
        let val = qlb.rho_star_transpose(&f.nu[a]);
        let lie = qlb.lie_theta(&f.theta, &xa).to_section();
        for b in 0..alg.rank {
            op[b][a] = val[b].try_add(&lie[b]).expect("chart");
        }
    }
    DerivationA { symbol: qlb.rho_star_vf(&f.theta), op }
}

/// The homotopy ψ₂(F,F') = Φ(θ,θ') ∈ Γ(A).
pub fn psi2(qlb: &PolyQuasiLieBialgebroid, f: &IM1Form, g: &IM1Form) -> Vec<Polynomial> {
    qlb.phi.eval_covectors(&[&f.theta, &g.theta]).to_section()
}

/// The bivector π with π♯ = ρ∘ρ_*ᵀ on base 1-forms.
pub fn build_pi(qlb: &PolyQuasiLieBialgebroid) -> PolyTensor {
    let alg = &qlb.algebroid;
    let n = alg.base.dim();
    let mut pi = PolyTensor::zero(&alg.base, 2, 0);
    for k in 0..n {
        for i in (k + 1)..n {
            let mut c = Polynomial::zero(&alg.base);
            for a in 0..alg.rank {
                c = c
                    .try_add(&qlb.rho_star[k][a].try_mul(&alg.anchor[i][a]).expect("chart"))
                    .expect("chart");
            }
            if !c.is_zero() {
                pi.add_component(&[k, i], &[], c);
            }
        }
    }
    pi
}

/// Named IM 1-form samples: shifts of coordinate base forms and a basis of
/// the degree-≤1 solutions of the defining identities, found by expressing
/// the (linear) identities as a nullspace problem.
pub fn sample_im1(qlb: &PolyQuasiLieBialgebroid) -> Result<Vec<(String, IM1Form)>> {
    let alg = &qlb.algebroid;
    let (n, r) = (alg.base.dim(), alg.rank);
    let mut out: Vec<(String, IM1Form)> = Vec::new();
    for j in 0..n.min(2) {
        let gamma = PolyTensor::coordinate_form(&alg.base, j);
        let f = j_im1(qlb, &gamma)?;
        if !f.is_zero() {
            out.push((format!("j(dm{})", j + 1), f));
        }
    }
    if n >= 1 {
        let m1 = Polynomial::coordinate(&alg.base, 0);
        let gamma = PolyTensor::coordinate_form(&alg.base, 0).scale_poly(&(&m1 * &m1));
        let f = j_im1(qlb, &gamma)?;
        if !f.is_zero() {
            out.push(("j(m1^2*dm1)".into(), f));
        }
    }

    // degree-≤1 ansatz: ν[a] = Σ_j (c + Σ_i c_i m_i) dm_j, θ_a = t + Σ_i t_i m_i
    let per_nu = n * (1 + n);
    let per_theta = 1 + n;
    let unknowns = r * per_nu + r * per_theta;
    let from_coeffs = |u: &[Rational]| -> IM1Form {
        let mut f = IM1Form::zero(alg);
        for a in 0..r {
            for j in 0..n {
                let base = a * per_nu + j * (1 + n);
                let mut c = Polynomial::constant(&alg.base, u[base].clone());
                for i in 0..n {
                    c = c
                        .try_add(&Polynomial::coordinate(&alg.base, i).scale(&u[base + 1 + i]))
                        .expect("chart");
                }
                if !c.is_zero() {
                    f.nu[a].add_component(&[], &[j], c);
                }
            }
            let base = r * per_nu + a * per_theta;
            let mut c = Polynomial::constant(&alg.base, u[base].clone());
            for i in 0..n {
                c = c
                    .try_add(&Polynomial::coordinate(&alg.base, i).scale(&u[base + 1 + i]))
                    .expect("chart");
            }
            f.theta[a] = c;
        }
        f
    };
    let mut probes: Vec<Vec<Polynomial>> = Vec::with_capacity(unknowns);
    for u in 0..unknowns {
        let mut vec = vec![Rational::from_integer(0.into()); unknowns];
        vec[u] = Rational::one();
        probes.push(im1_defect(alg, &from_coeffs(&vec))?);
    }
    // rows indexed by (defect slot, monomial)
    let mut row_index = std::collections::BTreeMap::new();
    for probe in &probes {
        for (slot, poly) in probe.iter().enumerate() {
            for (mono, _) in poly.terms() {
                let next = row_index.len();
                row_index.entry((slot, mono.clone())).or_insert(next);
            }
        }
    }
    let mut mat = RatMatrix::zero(row_index.len().max(1), unknowns);
    for (u, probe) in probes.iter().enumerate() {
        for (slot, poly) in probe.iter().enumerate() {
            for (mono, coeff) in poly.terms() {
                mat.set(row_index[&(slot, mono.clone())], u, coeff.clone());
            }
        }
    }
    for (i, sol) in mat.nullspace().into_iter().enumerate().take(8) {
        let f = from_coeffs(&sol);
        if !f.is_zero() {
            out.push((format!("sol{}", i + 1), f));
        }
    }
    Ok(out)
}

/// Elements of the 2-term complex of the IM 1-form algebra: IM 1-forms in
/// degree 0, base 1-forms in the shifted degree.
#[derive(Clone, Debug)]
enum Im {
    F(IM1Form),
    B(PolyTensor),
}

impl Im {
    fn is_zero(&self) -> bool {
        match self {
            Im::F(f) => f.is_zero(),
            Im::B(t) => t.is_zero(),
        }
    }

    fn degree(&self) -> i64 {
        match self {
            Im::F(_) => 0,
            Im::B(_) => -1,
        }
    }

    fn neg(&self) -> Im {
        match self {
            Im::F(f) => Im::F(f.neg()),
            Im::B(t) => Im::B(t.neg()),
        }
    }
}

struct ImOps<'a> {
    qlb: &'a PolyQuasiLieBialgebroid,
}

impl ImOps<'_> {
    fn zero(&self) -> Im {
        Im::F(IM1Form::zero(&self.qlb.algebroid))
    }

    fn l2(&self, a: &Im, b: &Im) -> Im {
        match (a, b) {
            (Im::F(f), Im::F(g)) => Im::F(im1_bracket(self.qlb, f, g).expect("bracket")),
            (Im::F(f), Im::B(g)) => Im::B(im1_action(self.qlb, f, g).expect("action")),
            (Im::B(_), Im::F(_)) => {
                let canon = self.l2(b, a);
                if (a.degree() * b.degree()) % 2 == 0 {
                    canon.neg()
                } else {
                    canon
                }
            }
            (Im::B(_), Im::B(_)) => self.zero(),
        }
    }
}

impl LInftyOps for ImOps<'_> {
    type Elt = Im;

    fn bracket(&self, k: usize, args: &[Im]) -> Im {
        match k {
            1 => match &args[0] {
                Im::F(_) => self.zero(),
                Im::B(gamma) => Im::F(j_im1(self.qlb, gamma).expect("shift")),
            },
            2 => self.l2(&args[0], &args[1]),
            3 => match (&args[0], &args[1], &args[2]) {
                (Im::F(f1), Im::F(f2), Im::F(f3)) => {
                    Im::B(im1_three_bracket(self.qlb, f1, f2, f3).expect("ternary bracket"))
                }
                _ => self.zero(),
            },
            _ => self.zero(),
        }
    }

    fn add(&self, a: &Im, b: &Im) -> Im {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        match (a, b) {
            (Im::F(x), Im::F(y)) => Im::F(x.add(y)),
            (Im::B(x), Im::B(y)) => Im::B(x.add(y)),
            _ => panic!("adding components of different complex degrees"),
        }
    }

    fn negate(&self, a: &Im) -> Im {
        a.neg()
    }

    fn zero_defect(&self, _n: usize, _inputs: &[Im]) -> Im {
        self.zero()
    }
}

fn base_form_samples(qlb: &PolyQuasiLieBialgebroid) -> Vec<(String, PolyTensor)> {
    let ch = &qlb.algebroid.base;
    let n = ch.dim();
    let mut out = Vec::new();
    for j in 0..n.min(2) {
        out.push((format!("dm{}", j + 1), PolyTensor::coordinate_form(ch, j)));
    }
    if n >= 1 {
        let m1 = Polynomial::coordinate(ch, 0);
        out.push(("m1*dm1".into(), PolyTensor::coordinate_form(ch, 0).scale_poly(&m1)));
        if n >= 2 {
            out.push(("m1*dm2".into(), PolyTensor::coordinate_form(ch, 1).scale_poly(&m1)));
        }
    }
    out
}

/// The weak Lie 2-algebra of IM 1-forms: the defining identities on sampled
/// generators, closure of the bracket, the Jacobiator/action coherences, the
/// mixed Lie-derivative identities, and the generalized Jacobi identities of
/// the induced 2-term L∞ structure up to arity 4.
pub fn verify_thm52(qlb: &PolyQuasiLieBialgebroid) -> Result<VerificationReport> {
    let alg = &qlb.algebroid;
    let mut rep = VerificationReport::new("im_lie2");
    let samples = sample_im1(qlb)?;
    let gammas = base_form_samples(qlb);

    for (name, f) in &samples {
        let sub = check_im1(alg, f)?;
        rep.record(
            format!("im-({name})"),
            format!("sample {name} satisfies the IM 1-form identities"),
            sub.passed(),
            || format!("{:?}", sub.failures().collect::<Vec<_>>()),
        );
    }
    for (name, gamma) in &gammas {
        let f = j_im1(qlb, gamma)?;
        let sub = check_im1(alg, &f)?;
        rep.record(
            format!("shift-im-({name})"),
            "j(γ) is an IM 1-form".to_string(),
            sub.passed(),
            || format!("{:?}", sub.failures().collect::<Vec<_>>()),
        );
        // the unsigned variant (ι_{ρ(·)}dγ, ρᵀγ) is also an IM 1-form
        let sub = check_im1(alg, &f.neg())?;
        rep.record(
            format!("unsigned-shift-im-({name})"),
            "(ι_{ρ(·)}dγ, ρᵀγ) is an IM 1-form".to_string(),
            sub.passed(),
            || format!("{:?}", sub.failures().collect::<Vec<_>>()),
        );
    }

    // closure of the binary bracket
    for i in 0..samples.len() {
        for j in (i + 1)..samples.len() {
            let br = im1_bracket(qlb, &samples[i].1, &samples[j].1)?;
            let sub = check_im1(alg, &br)?;
            rep.record(
                format!("closure-({},{})", samples[i].0, samples[j].0),
                "the bracket of IM 1-forms is an IM 1-form".to_string(),
                sub.passed(),
                || format!("{:?}", sub.failures().collect::<Vec<_>>()),
            );
        }
    }

    // the Jacobiator is the shift of the ternary bracket
    let mut triples = 0usize;
    for i in 0..samples.len() {
        for j in (i + 1)..samples.len() {
            for k in (j + 1)..samples.len() {
                if triples >= 8 {
                    break;
                }
                triples += 1;
                let (f1, f2, f3) = (&samples[i].1, &samples[j].1, &samples[k].1);
                let names = format!("{},{},{}", samples[i].0, samples[j].0, samples[k].0);
                let mut defect = im1_bracket(qlb, &im1_bracket(qlb, f1, f2)?, f3)?;
                defect = defect.add(&im1_bracket(qlb, &im1_bracket(qlb, f2, f3)?, f1)?);
                defect = defect.add(&im1_bracket(qlb, &im1_bracket(qlb, f3, f1)?, f2)?);
                defect = defect.add(&j_im1(qlb, &im1_three_bracket(qlb, f1, f2, f3)?)?);
                rep.record(
                    format!("jacobiator-shift-({names})"),
                    "[[F₁,F₂],F₃] + c.p. = −j([F₁,F₂,F₃]₃)".to_string(),
                    defect.is_zero(),
                    || format!("{defect:?}"),
                );
            }
        }
    }

    // coherence of the action with the ternary bracket
    let mut acts = 0usize;
    for i in 0..samples.len() {
        for j in (i + 1)..samples.len() {
            for (gname, gamma) in gammas.iter().take(2) {
                if acts >= 8 {
                    break;
                }
                acts += 1;
                let (f1, f2) = (&samples[i].1, &samples[j].1);
                let names = format!("{},{},{gname}", samples[i].0, samples[j].0);
                let defect = im1_action(qlb, &im1_bracket(qlb, f1, f2)?, gamma)?
                    .sub(&im1_action(qlb, f1, &im1_action(qlb, f2, gamma)?)?)
                    .add(&im1_action(qlb, f2, &im1_action(qlb, f1, gamma)?)?)
                    .add(&im1_three_bracket(qlb, f1, f2, &j_im1(qlb, gamma)?)?);
                rep.record(
                    format!("action-jacobiator-({names})"),
                    "[F₁,F₂]▷γ − F₁▷(F₂▷γ) + F₂▷(F₁▷γ) = −[F₁,F₂,jγ]₃".to_string(),
                    defect.is_zero(),
                    || format!("{defect:?}"),
                );
            }
        }
    }

    // the bracket with a shift is the shift of the action
    for (fname, f) in samples.iter().take(3) {
        for (gname, gamma) in gammas.iter().take(2) {
            let lhs = im1_bracket(qlb, f, &j_im1(qlb, gamma)?)?;
            let rhs = j_im1(qlb, &im1_action(qlb, f, gamma)?)?;
            let defect = lhs.sub(&rhs);
            rep.record(
                format!("action-shift-({fname},{gname})"),
                "[F, jγ] = j(F▷γ)".to_string(),
                defect.is_zero(),
                || format!("{defect:?}"),
            );
        }
    }

    // the action of a shift is the Koszul bracket of the induced bivector
    let pi = build_pi(qlb);
    for (i, (n1, g1)) in gammas.iter().enumerate().take(3) {
        for (n2, g2) in gammas.iter().take(3).skip(i + 1) {
            let lhs = im1_action(qlb, &j_im1(qlb, g1)?, g2)?;
            let rhs = koszul_bracket(&pi, g1, g2)?;
            let defect = lhs.sub(&rhs);
            rep.record(
                format!("shift-action-poisson-({n1},{n2})"),
                "(jγ)▷γ' = [γ,γ']_π with π♯ = ρ∘ρ_*ᵀ".to_string(),
                defect.is_zero(),
                || format!("{defect:?}"),
            );
            let anti = im1_action(qlb, &j_im1(qlb, g1)?, g2)?
                .add(&im1_action(qlb, &j_im1(qlb, g2)?, g1)?);
            rep.record(
                format!("shift-action-skew-({n1},{n2})"),
                "(jγ)▷γ' = −(jγ')▷γ".to_string(),
                anti.is_zero(),
                || format!("{anti:?}"),
            );
        }
    }

    mixed_lie_checks(&mut rep, qlb, &gammas)?;

    // generalized Jacobi identities of the 2-term L∞ structure
    let ops = ImOps { qlb };
    let mut elts: Vec<(String, Im)> = samples
        .iter()
        .map(|(n, f)| (n.clone(), Im::F(f.clone())))
        .collect();
    for (n, g) in &gammas {
        elts.push((n.clone(), Im::B(g.clone())));
    }
    let caps = [usize::MAX, 60, 40, 25];
    for n in 1..=4usize {
        for combo in (0..elts.len()).combinations_with_replacement(n).take(caps[n - 1]) {
            let inputs: Vec<Im> = combo.iter().map(|&i| elts[i].1.clone()).collect();
            if inputs.iter().all(Im::is_zero) {
                continue;
            }
            let degrees: Vec<i64> = inputs.iter().map(Im::degree).collect();
            let defect = generalized_jacobi(&ops, &inputs, &degrees);
            let names = combo.iter().map(|&i| elts[i].0.as_str()).join(",");
            rep.record(
                format!("jacobi-{n}-({names})"),
                format!("arity-{n} generalized Jacobi identity on ({names})"),
                defect.is_zero(),
                || format!("{defect:?}"),
            );
        }
    }
    Ok(rep.finalize())
}

/// The mixed Lie-derivative identities between the two algebroid legs.
fn mixed_lie_checks(
    rep: &mut VerificationReport,
    qlb: &PolyQuasiLieBialgebroid,
    gammas: &[(String, PolyTensor)],
) -> Result<()> {
    let alg = &qlb.algebroid;
    let r = alg.rank;
    // covector and section samples
    let mut thetas: Vec<(String, Covector)> = (0..r.min(2))
        .map(|a| (format!("xi{}", a + 1), alg.basis_covector(a)))
        .collect();
    if alg.base.dim() > 0 && r >= 1 {
        let m1 = Polynomial::coordinate(&alg.base, 0);
        let mut xi = alg.zero_covector();
        xi[0] = m1;
        thetas.push(("m1*xi1".into(), xi));
    }
    let sections: Vec<(String, Vec<Polynomial>)> = (0..r.min(3))
        .map(|a| (format!("e{}", a + 1), alg.basis_section(a)))
        .collect();

    for (gname, gamma) in gammas.iter().take(2) {
        let dg = exterior_derivative(gamma)?;
        let rst_g = qlb.rho_star_transpose(gamma);
        let rt_g = qlb.anchor_transpose(gamma);
        for (tname, theta) in &thetas {
            // L_{ρ_*ᵀγ}θ = −[ρᵀγ, θ]_* − ρᵀ(ι_{ρ_*θ}dγ)
            let lhs = alg.lie_x_covector(&rst_g, theta);
            let corr = qlb.anchor_transpose(&iota(&qlb.rho_star_vf(theta), &dg)?);
            let br = qlb.bracket_star(&rt_g, theta);
            let ok = (0..r).all(|a| {
                lhs[a]
                    .try_add(&br[a])
                    .expect("chart")
                    .try_add(&corr[a])
                    .expect("chart")
                    .is_zero()
            });
            rep.record(
                format!("mixed-lie-covector-({gname},{tname})"),
                "L_{ρ_*ᵀγ}θ = −[ρᵀγ,θ]_* − ρᵀ(ι_{ρ_*θ}dγ)".to_string(),
                ok,
                || format!("lhs {lhs:?} bracket {br:?} correction {corr:?}"),
            );
        }
        for (sname, x) in &sections {
            // L_{ρᵀγ}x = −[ρ_*ᵀγ, x] − ρ_*ᵀ(ι_{ρx}dγ)
            let lhs = qlb
                .lie_theta(&rt_g, &AMulti::from_section(&alg.base, r, x))
                .to_section();
            let br = alg.bracket_sections(&rst_g, x);
            let corr = qlb.rho_star_transpose(&iota(&alg.anchor_vf(x), &dg)?);
            let ok = (0..r).all(|a| {
                lhs[a]
                    .try_add(&br[a])
                    .expect("chart")
                    .try_add(&corr[a])
                    .expect("chart")
                    .is_zero()
            });
            rep.record(
                format!("mixed-lie-section-({gname},{sname})"),
                "L_{ρᵀγ}x = −[ρ_*ᵀγ,x] − ρ_*ᵀ(ι_{ρx}dγ)".to_string(),
                ok,
                || format!("lhs {lhs:?} bracket {br:?} correction {corr:?}"),
            );
        }
    }

    // L_θ differentiates the bracket up to the d_Aθ corrections
    for (tname, theta) in thetas.iter().take(2) {
        for a in 0..r {
            for b in (a + 1)..r {
                let xa = alg.basis_section(a);
                let xb = alg.basis_section(b);
                let sec = |x: &[Polynomial]| AMulti::from_section(&alg.base, r, x);
                let lhs = qlb.lie_theta(theta, &sec(&alg.bracket_sections(&xa, &xb)));
                let mut rhs = sec(&alg.bracket_sections(
                    &qlb.lie_theta(theta, &sec(&xa)).to_section(),
                    &xb,
                ));
                rhs = rhs.add(&sec(&alg.bracket_sections(
                    &xa,
                    &qlb.lie_theta(theta, &sec(&xb)).to_section(),
                )));
                rhs = rhs.sub(&qlb.lie_theta(&alg.iota_da(&xa, theta), &sec(&xb)));
                rhs = rhs.add(
                    &qlb.d_star(&sec(&xa)).interior(&alg.iota_da(&xb, theta)),
                );
                let defect = lhs.sub(&rhs);
                rep.record(
                    format!("dual-lie-derivation-({tname},{a},{b})"),
                    "L_θ[x,y] = [L_θx,y] + [x,L_θy] − L_{ι_x d_Aθ}y + ι_{ι_y d_Aθ}d_*x"
                        .to_string(),
                    defect.is_zero(),
                    || format!("{defect:?}"),
                );
            }
        }
        // [ρ_*θ, ρx] = ρ(L_θx) − ρ_*(ι_x d_Aθ)
        for (sname, x) in &sections {
            let lhs = crate::cartan::schouten(
                &qlb.rho_star_vf(theta),
                &alg.anchor_vf(x),
            )?;
            let rhs = alg
                .anchor_vf(
                    &qlb.lie_theta(theta, &AMulti::from_section(&alg.base, r, x))
                        .to_section(),
                )
                .sub(&qlb.rho_star_vf(&alg.iota_da(x, theta)));
            let defect = lhs.sub(&rhs);
            rep.record(
                format!("dual-anchor-lie-({tname},{sname})"),
                "[ρ_*θ, ρx] = ρ(L_θx) − ρ_*(ι_x d_Aθ)".to_string(),
                defect.is_zero(),
                || format!("{defect:?}"),
            );
        }
    }
    Ok(())
}

/// The morphism (ψ₀, ψ₂) from the IM 1-form algebra to derivations of the
/// section module with the adjoint crossed-module structure.
pub fn psi_morphism(qlb: &PolyQuasiLieBialgebroid) -> Result<VerificationReport> {
    let alg = &qlb.algebroid;
    let mut rep = VerificationReport::new("psi_morphism");
    let samples = sample_im1(qlb)?;
    let gammas = base_form_samples(qlb);

    for (name, f) in samples.iter().take(4) {
        let sub = validate_derivation(alg, &psi0(qlb, f));
        rep.record(
            format!("derivation-({name})"),
            "ψ₀F is a derivation of the section module".to_string(),
            sub.passed(),
            || format!("{:?}", sub.failures().collect::<Vec<_>>()),
        );
    }

    // chain map: ψ₀(jγ) is the adjoint derivation of ρ_*ᵀγ
    for (name, gamma) in &gammas {
        let lhs = psi0(qlb, &j_im1(qlb, gamma)?);
        let rhs = adjoint_derivation(alg, &qlb.rho_star_transpose(gamma));
        let defect = lhs.sub(alg, &rhs);
        rep.record(
            format!("chain-map-({name})"),
            "ψ₀(jγ) = ad_{ρ_*ᵀγ}".to_string(),
            defect.is_zero(),
            || format!("{defect:?}"),
        );
    }

    // binary morphism equation up to the adjoint of ψ₂
    for i in 0..samples.len() {
        for j in (i + 1)..samples.len() {
            let (f, g) = (&samples[i].1, &samples[j].1);
            let names = format!("{},{}", samples[i].0, samples[j].0);
            let lhs = psi0(qlb, &im1_bracket(qlb, f, g)?)
                .sub(alg, &psi0(qlb, f).commutator(alg, &psi0(qlb, g)));
            let rhs = adjoint_derivation(alg, &psi2(qlb, f, g));
            let defect = lhs.sub(alg, &rhs);
            rep.record(
                format!("morphism-1-({names})"),
                "ψ₀[F,F'] − [ψ₀F, ψ₀F'] = ad_{ψ₂(F,F')}".to_string(),
                defect.is_zero(),
                || format!("{defect:?}"),
            );
        }
    }

    // action morphism equation up to ψ₂ against the shift
    for (fname, f) in samples.iter().take(4) {
        for (gname, gamma) in gammas.iter().take(2) {
            let lhs = qlb.rho_star_transpose(&im1_action(qlb, f, gamma)?);
            let through = psi0(qlb, f).apply(alg, &qlb.rho_star_transpose(gamma));
            let corr = psi2(qlb, f, &j_im1(qlb, gamma)?);
            let ok = (0..alg.rank).all(|a| {
                lhs[a]
                    .try_add(&through[a].scale(&-Rational::one()))
                    .expect("chart")
                    .try_add(&corr[a].scale(&-Rational::one()))
                    .expect("chart")
                    .is_zero()
            });
            rep.record(
                format!("morphism-2-({fname},{gname})"),
                "ρ_*ᵀ(F▷γ) − ψ₀F(ρ_*ᵀγ) = ψ₂(F, jγ)".to_string(),
                ok,
                || format!("lhs {lhs:?} through {through:?} correction {corr:?}"),
            );
        }
    }

    // ternary morphism equation
    let mut triples = 0usize;
    for i in 0..samples.len() {
        for j in (i + 1)..samples.len() {
            for k in (j + 1)..samples.len() {
                if triples >= 6 {
                    break;
                }
                triples += 1;
                let (f1, f2, f3) = (&samples[i].1, &samples[j].1, &samples[k].1);
                let names = format!("{},{},{}", samples[i].0, samples[j].0, samples[k].0);
                let lhs = qlb.rho_star_transpose(&im1_three_bracket(qlb, f1, f2, f3)?);
                let mut rhs = vec![Polynomial::zero(&alg.base); alg.rank];
                for (x, y, z) in [(f1, f2, f3), (f2, f3, f1), (f3, f1, f2)] {
                    let act = psi0(qlb, x).apply(alg, &psi2(qlb, y, z));
                    let corr = psi2(qlb, &im1_bracket(qlb, x, y)?, z);
                    for a in 0..alg.rank {
                        rhs[a] = rhs[a]
                            .try_add(&act[a])?
                            .try_add(&corr[a].scale(&-Rational::one()))?;
                    }
                }
                let ok = (0..alg.rank)
                    .all(|a| lhs[a].try_add(&rhs[a].scale(&-Rational::one())).expect("chart").is_zero());
                rep.record(
                    format!("morphism-3-({names})"),
                    "ρ_*ᵀ[F₁,F₂,F₃]₃ = Σ_cyc(ψ₀F₁(ψ₂(F₂,F₃)) − ψ₂([F₁,F₂],F₃))".to_string(),
                    ok,
                    || format!("lhs {lhs:?} rhs {rhs:?}"),
                );
            }
        }
    }
    Ok(rep.finalize())
}

/// A basis of the constant covectors annihilating the bracket of every frame
/// pair — the covectors invariant under every inner derivation.
pub fn invariant_covectors(alg: &PolyLieAlgebroid) -> Vec<Vec<Rational>> {
    let r = alg.rank;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for a in 0..r {
        for b in (a + 1)..r {
            let br = alg.bracket_sections(&alg.basis_section(a), &alg.basis_section(b));
            // one row per monomial appearing across the bracket components
            let mut monos = std::collections::BTreeSet::new();
            for c in &br {
                for (m, _) in c.terms() {
                    monos.insert(m.clone());
                }
            }
            for m in monos {
                let mut row = vec![Rational::from_integer(0.into()); r];
                for (k, c) in br.iter().enumerate() {
                    for (mono, coeff) in c.terms() {
                        if *mono == m {
                            row[k] = coeff.clone();
                        }
                    }
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        rows.push(vec![Rational::from_integer(0.into()); r]);
    }
    RatMatrix::from_rows(rows).nullspace()
}

/// An IM k-form: a bundle map ν: A → ∧ᵏT*M together with θ: A → ∧^{k−1}T*M,
/// both given by their frame components.
#[derive(Clone, Debug)]
pub struct IMkForm {
    pub k: usize,
    pub nu: Vec<PolyTensor>,
    pub theta: Vec<PolyTensor>,
}

impl IMkForm {
    pub fn zero(alg: &PolyLieAlgebroid, k: usize) -> IMkForm {
        IMkForm {
            k,
            nu: vec![zero_form(alg, k); alg.rank],
            theta: vec![zero_form(alg, k.saturating_sub(1)); alg.rank],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.nu.iter().all(PolyTensor::is_zero) && self.theta.iter().all(PolyTensor::is_zero)
    }

    fn nu_of(&self, alg: &PolyLieAlgebroid, x: &[Polynomial]) -> PolyTensor {
        let mut out = zero_form(alg, self.k);
        for (a, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.nu[a].scale_poly(c));
            }
        }
        out
    }

    fn theta_of(&self, alg: &PolyLieAlgebroid, x: &[Polynomial]) -> PolyTensor {
        let mut out = zero_form(alg, self.k.saturating_sub(1));
        for (a, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.theta[a].scale_poly(c));
            }
        }
        out
    }
}

/// An IM 1-form embedded as an IM k-form with k = 1.
pub fn im1_to_imk(_alg: &PolyLieAlgebroid, f: &IM1Form) -> IMkForm {
    IMkForm {
        k: 1,
        nu: f.nu.clone(),
        theta: f.theta.iter().map(|c| PolyTensor::from_function(c.clone())).collect(),
    }
}

/// The IM k-form of a base k-form: ν(x) = ι_{ρx}dω, θ(x) = ι_{ρx}ω.
pub fn im_from_base_form(alg: &PolyLieAlgebroid, omega: &PolyTensor) -> Result<IMkForm> {
    let k = omega.l();
    let dw = exterior_derivative(omega)?;
    let mut nu = Vec::with_capacity(alg.rank);
    let mut theta = Vec::with_capacity(alg.rank);
    for a in 0..alg.rank {
        let rho = alg.anchor_vf(&alg.basis_section(a));
        nu.push(iota(&rho, &dw)?);
        theta.push(iota(&rho, omega)?);
    }
    Ok(IMkForm { k, nu, theta })
}

/// The defining identities of an IM k-form on ordered frame pairs:
///   ι_{ρ(x)}θ(y) = −ι_{ρ(y)}θ(x),
///   θ[x,y] = L_{ρ(x)}θ(y) − ι_{ρ(y)}dθ(x) − ι_{ρ(y)}ν(x),
///   ν[x,y] = L_{ρ(x)}ν(y) − ι_{ρ(y)}dν(x).
pub fn check_imk(alg: &PolyLieAlgebroid, omega: &IMkForm) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("im_kform");
    let rho = |a: usize| alg.anchor_vf(&alg.basis_section(a));
    for a in 0..alg.rank {
        for b in 0..alg.rank {
            if omega.k >= 2 {
                let defect =
                    iota(&rho(a), &omega.theta[b])?.add(&iota(&rho(b), &omega.theta[a])?);
                rep.record(
                    format!("alternating-({a},{b})"),
                    "ι_{ρ(x)}θ(y) = −ι_{ρ(y)}θ(x)".to_string(),
                    defect.is_zero(),
                    || format!("{defect:?}"),
                );
            }
            let br = alg.bracket_sections(&alg.basis_section(a), &alg.basis_section(b));
            if omega.k >= 1 {
                let lhs = omega.theta_of(alg, &br);
                let rhs = lie_derivative(&rho(a), &omega.theta[b])?
                    .sub(&iota(&rho(b), &exterior_derivative(&omega.theta[a])?)?)
                    .sub(&iota(&rho(b), &omega.nu[a])?);
                let defect = lhs.sub(&rhs);
                rep.record(
                    format!("covector-leg-({a},{b})"),
                    "θ[x,y] = L_{ρ(x)}θ(y) − ι_{ρ(y)}dθ(x) − ι_{ρ(y)}ν(x)".to_string(),
                    defect.is_zero(),
                    || format!("{defect:?}"),
                );
            }
            let lhs = omega.nu_of(alg, &br);
            let rhs = lie_derivative(&rho(a), &omega.nu[b])?
                .sub(&iota(&rho(b), &exterior_derivative(&omega.nu[a])?)?);
            let defect = lhs.sub(&rhs);
            rep.record(
                format!("form-leg-({a},{b})"),
                "ν[x,y] = L_{ρ(x)}ν(y) − ι_{ρ(y)}dν(x)".to_string(),
                defect.is_zero(),
                || format!("{defect:?}"),
            );
        }
    }
    Ok(rep.finalize())
}

/// Contraction of an IM k-form with a derivation δ = (symbol δ₀, action δ₁):
///   ν̃(x) = ι_{δ₀}ν(x) + L_{δ₀}θ(x) − θ(δ₁x),   θ̃(x) = −ι_{δ₀}θ(x).
pub fn im_contract(
    alg: &PolyLieAlgebroid,
    delta: &DerivationA,
    omega: &IMkForm,
) -> Result<IMkForm> {
    let mut nu = Vec::with_capacity(alg.rank);
    let mut theta = Vec::with_capacity(alg.rank);
    for a in 0..alg.rank {
        let dxa = delta.apply(alg, &alg.basis_section(a));
        let mut leg = iota(&delta.symbol, &omega.nu[a])?;
        leg = leg.add(&lie_derivative(&delta.symbol, &omega.theta[a])?);
        leg = leg.sub(&omega.theta_of(alg, &dxa));
        nu.push(leg);
        theta.push(iota(&delta.symbol, &omega.theta[a])?.neg());
    }
    Ok(IMkForm { k: omega.k.saturating_sub(1), nu, theta })
}

/// Lie derivative of an IM k-form along a derivation:
///   ν̂(x) = L_{δ₀}ν(x) − ν(δ₁x),   θ̂(x) = L_{δ₀}θ(x) − θ(δ₁x).
pub fn im_lie(
    alg: &PolyLieAlgebroid,
    delta: &DerivationA,
    omega: &IMkForm,
) -> Result<IMkForm> {
    let mut nu = Vec::with_capacity(alg.rank);
    let mut theta = Vec::with_capacity(alg.rank);
    for a in 0..alg.rank {
        let dxa = delta.apply(alg, &alg.basis_section(a));
        nu.push(lie_derivative(&delta.symbol, &omega.nu[a])?.sub(&omega.nu_of(alg, &dxa)));
        theta
            .push(lie_derivative(&delta.symbol, &omega.theta[a])?.sub(&omega.theta_of(alg, &dxa)));
    }
    Ok(IMkForm { k: omega.k, nu, theta })
}

/// Closure of the IM identities under contraction and Lie derivative along
/// sampled derivations, on sampled IM 1- and 2-forms.
pub fn verify_im_closure(qlb: &PolyQuasiLieBialgebroid) -> Result<VerificationReport> {
    let alg = &qlb.algebroid;
    let ch = &alg.base;
    let n = ch.dim();
    let mut rep = VerificationReport::new("im_closure");

    let mut deltas: Vec<(String, DerivationA)> = (0..alg.rank.min(2))
        .map(|a| (format!("ad(e{})", a + 1), adjoint_derivation(alg, &alg.basis_section(a))))
        .collect();
    if n > 0 && alg.rank >= 1 {
        let mut x = alg.zero_section();
        x[0] = Polynomial::coordinate(ch, 0);
        deltas.push(("ad(m1*e1)".into(), adjoint_derivation(alg, &x)));
    }
    for (name, f) in sample_im1(qlb)?.into_iter().take(2) {
        deltas.push((format!("psi0({name})"), psi0(qlb, &f)));
    }

    let mut omegas: Vec<(String, IMkForm)> = Vec::new();
    let mut base_forms: Vec<(String, PolyTensor)> = base_form_samples(qlb);
    if n >= 2 {
        let w = PolyTensor::coordinate_form(ch, 0).wedge(&PolyTensor::coordinate_form(ch, 1))?;
        base_forms.push(("dm1^dm2".into(), w.clone()));
        base_forms.push(("m1*dm1^dm2".into(), w.scale_poly(&Polynomial::coordinate(ch, 0))));
    }
    for (name, w) in &base_forms {
        let im = im_from_base_form(alg, w)?;
        let sub = check_imk(alg, &im)?;
        rep.record(
            format!("base-im-({name})"),
            "(ι_{ρ(·)}dω, ι_{ρ(·)}ω) satisfies the IM identities".to_string(),
            sub.passed(),
            || format!("{:?}", sub.failures().collect::<Vec<_>>()),
        );
        if !im.is_zero() {
            omegas.push((name.clone(), im));
        }
    }
    for (name, f) in sample_im1(qlb)?.into_iter().take(3) {
        omegas.push((name, im1_to_imk(alg, &f)));
    }

    for (dname, delta) in &deltas {
        for (oname, omega) in &omegas {
            let contracted = im_contract(alg, delta, omega)?;
            let sub = check_imk(alg, &contracted)?;
            rep.record(
                format!("contract-closure-({dname},{oname})"),
                "the contraction of an IM form along a derivation is IM".to_string(),
                sub.passed(),
                || format!("{:?}", sub.failures().collect::<Vec<_>>()),
            );
            let derived = im_lie(alg, delta, omega)?;
            let sub = check_imk(alg, &derived)?;
            rep.record(
                format!("lie-closure-({dname},{oname})"),
                "the Lie derivative of an IM form along a derivation is IM".to_string(),
                sub.passed(),
                || format!("{:?}", sub.failures().collect::<Vec<_>>()),
            );
        }
    }
    Ok(rep.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlb::bialgebroid::{from_poisson, point_simple3_volume, PolyQuasiLieBialgebroid};
    use crate::symcore::Chart;

    fn plane_qlb() -> PolyQuasiLieBialgebroid {
        let ch = Chart::new("plane", &["m1", "m2"]);
        let mut pi = PolyTensor::zero(&ch, 2, 0);
        pi.add_component(&[0, 1], &[], Polynomial::coordinate(&ch, 0));
        from_poisson(&ch, &pi).unwrap()
    }

    /// Abelian rank-3 algebroid over a line with the volume trisection scaled
    /// by the coordinate: every IM pair qualifies and the ternary bracket is
    /// nonzero on constant covectors.
    fn abelian_line_phi() -> PolyQuasiLieBialgebroid {
        let ch = Chart::new("line", &["m1"]);
        let anchor = vec![vec![Polynomial::zero(&ch); 3]];
        let alg = PolyLieAlgebroid::new(ch.clone(), 3, anchor, Default::default()).unwrap();
        let mut phi = AMulti::zero(&ch, 3, 3);
        phi.add_component(&[0, 1, 2], Polynomial::coordinate(&ch, 0));
        let rho_star = vec![vec![Polynomial::zero(&ch); 3]];
        let cobracket = (0..3).map(|_| AMulti::zero(&ch, 3, 2)).collect();
        PolyQuasiLieBialgebroid::new(alg, rho_star, cobracket, phi).unwrap()
    }

    #[test]
    fn im_lie2_suite_passes_on_the_poisson_plane() {
        let rep = verify_thm52(&plane_qlb()).unwrap();
        for f in rep.failures() {
            panic!("failed: {} — {:?}", f.id, f.witness);
        }
    }

    #[test]
    fn im_lie2_suite_passes_with_a_nonzero_trisection() {
        let qlb = abelian_line_phi();
        assert!(qlb.verify().passed());
        let rep = verify_thm52(&qlb).unwrap();
        for f in rep.failures() {
            panic!("failed: {} — {:?}", f.id, f.witness);
        }
    }

    #[test]
    fn ternary_bracket_of_constant_covectors_is_the_trisection_differential() {
        // on the abelian model the 3-bracket of the constant frame covectors
        // is d of the coefficient of the trisection
        let qlb = abelian_line_phi();
        let alg = &qlb.algebroid;
        let fs: Vec<IM1Form> = (0..3)
            .map(|a| IM1Form { nu: IM1Form::zero(alg).nu, theta: alg.basis_covector(a) })
            .collect();
        let out = im1_three_bracket(&qlb, &fs[0], &fs[1], &fs[2]).unwrap();
        let expected =
            exterior_derivative(&PolyTensor::from_function(Polynomial::coordinate(&alg.base, 0)))
                .unwrap();
        assert!(out.sub(&expected).is_zero(), "got {out:?}");
    }

    #[test]
    fn psi_morphism_passes_on_the_poisson_plane_and_the_point_model() {
        for qlb in [plane_qlb(), point_simple3_volume(), abelian_line_phi()] {
            let rep = psi_morphism(&qlb).unwrap();
            for f in rep.failures() {
                panic!("failed: {} — {:?}", f.id, f.witness);
            }
        }
    }

    #[test]
    fn invariant_covectors_match_the_derived_subalgebra() {
        assert_eq!(invariant_covectors(&point_simple3_volume().algebroid).len(), 0);
        // the rank-3 nilpotent algebra with [x1,x2]=x3 has a 2-dimensional
        // annihilator of its derived subalgebra
        let ch = Chart::new("pt", &[]);
        let mut bracket = std::collections::BTreeMap::new();
        bracket.insert(
            (0, 1),
            vec![Polynomial::zero(&ch), Polynomial::zero(&ch), Polynomial::one(&ch)],
        );
        let alg = PolyLieAlgebroid::new(ch.clone(), 3, Vec::new(), bracket).unwrap();
        assert_eq!(invariant_covectors(&alg).len(), 2);
    }

    #[test]
    fn im_closure_suite_passes_and_samples_enough_pairs() {
        for qlb in [plane_qlb(), abelian_line_phi()] {
            let rep = verify_im_closure(&qlb).unwrap();
            for f in rep.failures() {
                panic!("failed: {} — {:?}", f.id, f.witness);
            }
            let pairs = rep
                .checks
                .iter()
                .filter(|c| c.id.starts_with("contract-closure") || c.id.starts_with("lie-closure"))
                .count();
            assert!(pairs >= 20, "only {pairs} closure pairs sampled");
        }
    }

    #[test]
    fn tampered_dual_anchor_fails_the_suite() {
        let mut qlb = plane_qlb();
        let ch = qlb.algebroid.base.clone();
        qlb.rho_star[0][1] = Polynomial::one(&ch);
        assert!(!verify_thm52(&qlb).unwrap().passed());
    }
}

