//! Lie algebroids with polynomial structure data on an affine base chart:
//! exterior sections of the fiber, the algebroid bracket and its Schouten
//! extension, and first-order derivations of the section module.

use std::collections::BTreeMap;

use num_traits::One;

use crate::cartan::{schouten, PolyTensor};
use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::symcore::{Chart, Polynomial, Rational};

/// A section of ∧ᵏA presented by components on the coordinate frame of the
/// (trivialized) fiber: strictly increasing index tuples with polynomial
/// coefficients on the base chart.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AMulti {
    chart: Chart,
    rank: usize,
    k: usize,
    comps: BTreeMap<Vec<usize>, Polynomial>,
}

/// A section of A* presented by its components against the dual frame.
pub type Covector = Vec<Polynomial>;

fn sort_with_sign(idx: &mut Vec<usize>) -> Option<bool> {
    // returns None when an index repeats; Some(negative) otherwise
    let mut neg = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] >= idx[j] {
            if idx[j - 1] == idx[j] {
                return None;
            }
            idx.swap(j - 1, j);
            neg = !neg;
            j -= 1;
        }
    }
    Some(neg)
}

impl AMulti {
    pub fn zero(chart: &Chart, rank: usize, k: usize) -> AMulti {
        AMulti { chart: chart.clone(), rank, k, comps: BTreeMap::new() }
    }

    pub fn from_function(chart: &Chart, rank: usize, f: Polynomial) -> AMulti {
        let mut out = AMulti::zero(chart, rank, 0);
        out.add_component(&[], f);
        out
    }

    pub fn basis(chart: &Chart, rank: usize, a: usize) -> AMulti {
        let mut out = AMulti::zero(chart, rank, 1);
        out.add_component(&[a], Polynomial::one(chart));
        out
    }

    pub fn from_section(chart: &Chart, rank: usize, x: &[Polynomial]) -> AMulti {
        let mut out = AMulti::zero(chart, rank, 1);
        for (a, c) in x.iter().enumerate() {
            out.add_component(&[a], c.clone());
        }
        out
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &Polynomial)> {
        self.comps.iter()
    }

    pub fn component(&self, idx: &[usize]) -> Polynomial {
        self.comps.get(idx).cloned().unwrap_or_else(|| Polynomial::zero(&self.chart))
    }

    pub fn add_component(&mut self, idx: &[usize], coeff: Polynomial) {
        if coeff.is_zero() {
            return;
        }
        let mut key: Vec<usize> = idx.to_vec();
        let Some(neg) = sort_with_sign(&mut key) else {
            return;
        };
        let coeff = if neg { coeff.scale(&-Rational::one()) } else { coeff };
        let entry = self
            .comps
            .entry(key)
            .or_insert_with(|| Polynomial::zero(&self.chart));
        *entry = entry.try_add(&coeff).expect("same chart");
        if entry.is_zero() {
            let key2: Vec<usize> = {
                let mut k2 = idx.to_vec();
                sort_with_sign(&mut k2);
                k2
            };
            self.comps.remove(&key2);
        }
    }

    pub fn add(&self, other: &AMulti) -> AMulti {
        assert_eq!(self.k, other.k, "wedge degrees differ");
        let mut out = self.clone();
        for (key, c) in other.components() {
            out.add_component(key, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &AMulti) -> AMulti {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AMulti {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> AMulti {
        let mut out = AMulti::zero(&self.chart, self.rank, self.k);
        for (key, f) in self.components() {
            out.add_component(key, f.scale(c));
        }
        out
    }

    pub fn scale_poly(&self, f: &Polynomial) -> AMulti {
        let mut out = AMulti::zero(&self.chart, self.rank, self.k);
        for (key, c) in self.components() {
            out.add_component(key, c.try_mul(f).expect("same chart"));
        }
        out
    }

    pub fn wedge(&self, other: &AMulti) -> AMulti {
        let mut out = AMulti::zero(&self.chart, self.rank, self.k + other.k);
        for (ka, ca) in self.components() {
            for (kb, cb) in other.components() {
                let idx: Vec<usize> = ka.iter().chain(kb.iter()).copied().collect();
                out.add_component(&idx, ca.try_mul(cb).expect("same chart"));
            }
        }
        out
    }

    /// The interior product ι_ξ into the first slot:
    /// ι_ξ(x_{i₁}∧…∧x_{i_k}) = Σ_t (−1)^{t−1} ξ(x_{i_t}) · (rest), so nested
    /// application yields the determinant pairing on full evaluation.
    pub fn interior(&self, xi: &Covector) -> AMulti {
        let mut out = AMulti::zero(&self.chart, self.rank, self.k.saturating_sub(1));
        if self.k == 0 {
            return out;
        }
        for (key, c) in self.components() {
            for (t, &i) in key.iter().enumerate() {
                let pair = &xi[i];
                if pair.is_zero() {
                    continue;
                }
                let mut rest = key.clone();
                rest.remove(t);
                let mut coeff = c.try_mul(pair).expect("same chart");
                if t % 2 == 1 {
                    coeff = coeff.scale(&-Rational::one());
                }
                out.add_component(&rest, coeff);
            }
        }
        out
    }

    /// Partial evaluation T(ξ₁,…,ξ_m,·,…,·) by iterated interior products.
    pub fn eval_covectors(&self, xis: &[&Covector]) -> AMulti {
        let mut acc = self.clone();
        for xi in xis {
            acc = acc.interior(xi);
        }
        acc
    }

    /// Full scalar evaluation on k covectors.
    pub fn eval_scalar(&self, xis: &[&Covector]) -> Polynomial {
        assert_eq!(xis.len(), self.k, "full evaluation needs k covectors");
        self.eval_covectors(xis).component(&[])
    }

    /// Components of a degree-1 section against the frame.
    pub fn to_section(&self) -> Vec<Polynomial> {
        assert_eq!(self.k, 1, "only degree-1 sections convert");
        (0..self.rank).map(|a| self.component(&[a])).collect()
    }
}

/// A Lie algebroid with polynomial anchor and bracket structure functions on
/// an affine base chart: anchor[j][a] is the ∂_j-component of the anchor of
/// the a-th frame section, bracket[(a,b)] (a < b) the frame components of the
/// bracket of frame sections.
#[derive(Clone, Debug)]
pub struct PolyLieAlgebroid {
    pub base: Chart,
    pub rank: usize,
    pub anchor: Vec<Vec<Polynomial>>,
    pub bracket: BTreeMap<(usize, usize), Vec<Polynomial>>,
}

impl PolyLieAlgebroid {
    pub fn new(
        base: Chart,
        rank: usize,
        anchor: Vec<Vec<Polynomial>>,
        bracket: BTreeMap<(usize, usize), Vec<Polynomial>>,
    ) -> Result<PolyLieAlgebroid> {
        if anchor.len() != base.dim() || anchor.iter().any(|row| row.len() != rank) {
            return Err(Error::ArityMismatch { expected: base.dim() * rank, got: anchor.len() });
        }
        for ((a, b), v) in &bracket {
            if *a >= *b || *b >= rank || v.len() != rank {
                return Err(Error::ArityMismatch { expected: rank, got: v.len() });
            }
        }
        Ok(PolyLieAlgebroid { base, rank, anchor, bracket })
    }

    pub fn zero_section(&self) -> Vec<Polynomial> {
        vec![Polynomial::zero(&self.base); self.rank]
    }

    pub fn basis_section(&self, a: usize) -> Vec<Polynomial> {
        let mut x = self.zero_section();
        x[a] = Polynomial::one(&self.base);
        x
    }

    pub fn zero_covector(&self) -> Covector {
        vec![Polynomial::zero(&self.base); self.rank]
    }

    pub fn basis_covector(&self, a: usize) -> Covector {
        let mut x = self.zero_covector();
        x[a] = Polynomial::one(&self.base);
        x
    }

    /// Frame components of the bracket of two frame sections (any order).
    fn structure(&self, a: usize, b: usize) -> Vec<Polynomial> {
        if a == b {
            return self.zero_section();
        }
        let (lo, hi, flip) = if a < b { (a, b, false) } else { (b, a, true) };
        match self.bracket.get(&(lo, hi)) {
            None => self.zero_section(),
            Some(v) => {
                if flip {
                    v.iter().map(|c| c.scale(&-Rational::one())).collect()
                } else {
                    v.clone()
                }
            }
        }
    }

    /// The anchor of a section as a vector field on the base.
    pub fn anchor_vf(&self, x: &[Polynomial]) -> PolyTensor {
        let mut out = PolyTensor::zero(&self.base, 1, 0);
        for (j, row) in self.anchor.iter().enumerate() {
            for (a, entry) in row.iter().enumerate() {
                let c = entry.try_mul(&x[a]).expect("same chart");
                if !c.is_zero() {
                    out.add_component(&[j], &[], c);
                }
            }
        }
        out
    }

    fn apply_vf(&self, v: &PolyTensor, f: &Polynomial) -> Polynomial {
        v.apply_to_function(f).expect("vector field application")
    }

    /// The bracket of two sections, with the Leibniz extension over the
    /// polynomial coefficients.
    pub fn bracket_sections(&self, x: &[Polynomial], y: &[Polynomial]) -> Vec<Polynomial> {
        let rx = self.anchor_vf(x);
        let ry = self.anchor_vf(y);
        let mut out = self.zero_section();
        for a in 0..self.rank {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..self.rank {
                if y[b].is_zero() {
                    continue;
                }
                let fg = x[a].try_mul(&y[b]).expect("same chart");
                for (k, c) in self.structure(a, b).into_iter().enumerate() {
                    out[k] = out[k].try_add(&fg.try_mul(&c).expect("same chart")).expect("chart");
                }
            }
        }
        for k in 0..self.rank {
            out[k] = out[k]
                .try_add(&self.apply_vf(&rx, &y[k]))
                .expect("chart")
                .try_add(&self.apply_vf(&ry, &x[k]).scale(&-Rational::one()))
                .expect("chart");
        }
        out
    }

    /// The Schouten bracket on Γ(∧•A), extending the section bracket and the
    /// anchor action on functions by the graded Leibniz rules
    ///   [a, b∧c] = [a,b]∧c + (−1)^{(|a|−1)|b|} b∧[a,c],
    ///   [a∧b, c] = a∧[b,c] + (−1)^{|b|(|c|−1)} [a,c]∧b.
    pub fn schouten_a(&self, a: &AMulti, b: &AMulti) -> AMulti {
        let (ka, kb) = (a.k(), b.k());
        let deg = (ka + kb).saturating_sub(1);
        let zero = AMulti::zero(&self.base, self.rank, deg);
        if a.is_zero() || b.is_zero() {
            return zero;
        }
        if ka == 0 && kb == 0 {
            return zero;
        }
        if ka == 1 && kb == 0 {
            let x = a.to_section();
            let f = b.component(&[]);
            return AMulti::from_function(&self.base, self.rank, self.apply_vf(&self.anchor_vf(&x), &f));
        }
        if kb == 1 && ka == 0 {
            // graded skew: [f, x] = −[x, f]
            return self.schouten_a(b, a).neg();
        }
        if ka == 1 && kb == 1 {
            let x = a.to_section();
            let y = b.to_section();
            return AMulti::from_section(&self.base, self.rank, &self.bracket_sections(&x, &y));
        }
        if ka >= 2 {
            // peel the leading frame factor of every blade of a
            let mut out = zero;
            for (key, c) in a.components() {
                let u = AMulti::basis(&self.base, self.rank, key[0]);
                let mut v = AMulti::zero(&self.base, self.rank, ka - 1);
                v.add_component(&key[1..], c.clone());
                // [u∧v, b] = u∧[v,b] + (−1)^{|v|(|b|−1)} [u,b]∧v
                let t1 = u.wedge(&self.schouten_a(&v, b));
                let mut t2 = self.schouten_a(&u, b).wedge(&v);
                if ((ka - 1) * (kb + 1)) % 2 == 1 {
                    t2 = t2.neg();
                }
                out = out.add(&t1).add(&t2);
            }
            return out;
        }
        // ka ≤ 1, kb ≥ 2: peel the leading frame factor of every blade of b
        let mut out = zero;
        for (key, c) in b.components() {
            let u = AMulti::basis(&self.base, self.rank, key[0]);
            let mut v = AMulti::zero(&self.base, self.rank, kb - 1);
            v.add_component(&key[1..], c.clone());
            // [a, u∧v] = [a,u]∧v + (−1)^{(|a|−1)·1} u∧[a,v]
            let t1 = self.schouten_a(a, &u).wedge(&v);
            let mut t2 = u.wedge(&self.schouten_a(a, &v));
            if (ka + 1) % 2 == 1 {
                t2 = t2.neg();
            }
            out = out.add(&t1).add(&t2);
        }
        out
    }

    /// The fiber differential d_A on Γ(A*) evaluated on a frame pair:
    /// (d_Aθ)(x_a,x_b) = ρ(x_a)θ_b − ρ(x_b)θ_a − θ([x_a,x_b]).
    pub fn da_pair(&self, theta: &Covector, a: usize, b: usize) -> Polynomial {
        let ra = self.anchor_vf(&self.basis_section(a));
        let rb = self.anchor_vf(&self.basis_section(b));
        let mut out = self
            .apply_vf(&ra, &theta[b])
            .try_add(&self.apply_vf(&rb, &theta[a]).scale(&-Rational::one()))
            .expect("chart");
        for (k, c) in self.structure(a, b).into_iter().enumerate() {
            out = out.try_add(&c.try_mul(&theta[k]).expect("chart").scale(&-Rational::one())).expect("chart");
        }
        out
    }

    /// ι_x d_Aθ ∈ Γ(A*) for a section x.
    pub fn iota_da(&self, x: &[Polynomial], theta: &Covector) -> Covector {
        (0..self.rank)
            .map(|b| {
                let mut acc = Polynomial::zero(&self.base);
                for a in 0..self.rank {
                    if x[a].is_zero() {
                        continue;
                    }
                    acc = acc
                        .try_add(&x[a].try_mul(&self.da_pair(theta, a, b)).expect("chart"))
                        .expect("chart");
                }
                acc
            })
            .collect()
    }

    /// The Lie derivative of a covector section along a section:
    /// ⟨L_xξ, x_b⟩ = ρ(x)ξ_b − ⟨ξ, [x, x_b]⟩.
    pub fn lie_x_covector(&self, x: &[Polynomial], xi: &Covector) -> Covector {
        let rx = self.anchor_vf(x);
        (0..self.rank)
            .map(|b| {
                let mut acc = self.apply_vf(&rx, &xi[b]);
                let br = self.bracket_sections(x, &self.basis_section(b));
                for (k, c) in br.into_iter().enumerate() {
                    acc = acc
                        .try_add(&c.try_mul(&xi[k]).expect("chart").scale(&-Rational::one()))
                        .expect("chart");
                }
                acc
            })
            .collect()
    }

    /// Structural axioms as exact polynomial identities on the frame:
    /// the anchor intertwines brackets and the Jacobi identity holds.
    pub fn validate(&self) -> VerificationReport {
        let mut rep = VerificationReport::new("lie_algebroid");
        for a in 0..self.rank {
            for b in (a + 1)..self.rank {
                let lhs = self.anchor_vf(&self.structure(a, b));
                let rhs = schouten(
                    &self.anchor_vf(&self.basis_section(a)),
                    &self.anchor_vf(&self.basis_section(b)),
                )
                .expect("vector fields");
                let defect = lhs.sub(&rhs);
                rep.record(
                    format!("anchor-morphism-({a},{b})"),
                    "the anchor maps the bracket to the commutator".to_string(),
                    defect.is_zero(),
                    || format!("{defect:?}"),
                );
            }
        }
        for a in 0..self.rank {
            for b in (a + 1)..self.rank {
                for c in (b + 1)..self.rank {
                    let mut defect = self.zero_section();
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        let inner = self.bracket_sections(&self.basis_section(x), &self.basis_section(y));
                        let outer = self.bracket_sections(&inner, &self.basis_section(z));
                        for k in 0..self.rank {
                            defect[k] = defect[k].try_add(&outer[k]).expect("chart");
                        }
                    }
                    let ok = defect.iter().all(Polynomial::is_zero);
                    rep.record(
                        format!("jacobi-({a},{b},{c})"),
                        "the frame Jacobi identity holds".to_string(),
                        ok,
                        || format!("{defect:?}"),
                    );
                }
            }
        }
        rep.finalize()
    }
}

/// A derivation of the section module: a first-order operator with symbol a
/// vector field on the base and zeroth-order frame action op[b][a] on the
/// a-th frame section.
#[derive(Clone, Debug)]
pub struct DerivationA {
    pub symbol: PolyTensor,
    pub op: Vec<Vec<Polynomial>>,
}

impl DerivationA {
    pub fn zero(alg: &PolyLieAlgebroid) -> DerivationA {
        DerivationA {
            symbol: PolyTensor::zero(&alg.base, 1, 0),
            op: vec![vec![Polynomial::zero(&alg.base); alg.rank]; alg.rank],
        }
    }

    pub fn apply(&self, alg: &PolyLieAlgebroid, x: &[Polynomial]) -> Vec<Polynomial> {
        (0..alg.rank)
            .map(|b| {
                let mut acc = self.symbol.apply_to_function(&x[b]).expect("symbol");
                for a in 0..alg.rank {
                    acc = acc.try_add(&self.op[b][a].try_mul(&x[a]).expect("chart")).expect("chart");
                }
                acc
            })
            .collect()
    }

    /// The dual action on covector sections: ⟨δ*ξ, x⟩ = X⟨ξ,x⟩ − ⟨ξ, δx⟩ on
    /// the frame.
    pub fn apply_dual(&self, alg: &PolyLieAlgebroid, xi: &Covector) -> Covector {
        (0..alg.rank)
            .map(|a| {
                let mut acc = self.symbol.apply_to_function(&xi[a]).expect("symbol");
                let dx = self.apply(alg, &alg.basis_section(a));
                for (k, c) in dx.into_iter().enumerate() {
                    acc = acc
                        .try_add(&c.try_mul(&xi[k]).expect("chart").scale(&-Rational::one()))
                        .expect("chart");
                }
                acc
            })
            .collect()
    }

    pub fn commutator(&self, alg: &PolyLieAlgebroid, other: &DerivationA) -> DerivationA {
        let symbol = schouten(&self.symbol, &other.symbol).expect("vector fields");
        let mut op = vec![vec![Polynomial::zero(&alg.base); alg.rank]; alg.rank];
        for a in 0..alg.rank {
            let fw = self.apply(alg, &other.apply(alg, &alg.basis_section(a)));
            let bw = other.apply(alg, &self.apply(alg, &alg.basis_section(a)));
            for b in 0..alg.rank {
                op[b][a] = fw[b].try_add(&bw[b].scale(&-Rational::one())).expect("chart");
            }
        }
        DerivationA { symbol, op }
    }

    pub fn sub(&self, alg: &PolyLieAlgebroid, other: &DerivationA) -> DerivationA {
        let symbol = self.symbol.sub(&other.symbol);
        let mut op = vec![vec![Polynomial::zero(&alg.base); alg.rank]; alg.rank];
        for a in 0..alg.rank {
            for b in 0..alg.rank {
                op[b][a] = self.op[b][a].try_add(&other.op[b][a].scale(&-Rational::one())).expect("chart");
            }
        }
        DerivationA { symbol, op }
    }

    pub fn is_zero(&self) -> bool {
        self.symbol.is_zero() && self.op.iter().all(|row| row.iter().all(Polynomial::is_zero))
    }
}

/// The adjoint derivation x ↦ [u, x] of a section u, with symbol ρ(u).
pub fn adjoint_derivation(alg: &PolyLieAlgebroid, u: &[Polynomial]) -> DerivationA {
    let symbol = alg.anchor_vf(u);
    let mut op = vec![vec![Polynomial::zero(&alg.base); alg.rank]; alg.rank];
    for a in 0..alg.rank {
        let br = alg.bracket_sections(u, &alg.basis_section(a));
        for b in 0..alg.rank {
            op[b][a] = br[b].clone();
        }
    }
    DerivationA { symbol, op }
}

/// The defining first-order-operator axioms, as exact identities on the
/// frame and one polynomial coefficient sample.
pub fn validate_derivation(alg: &PolyLieAlgebroid, delta: &DerivationA) -> VerificationReport {
    let mut rep = VerificationReport::new("derivation");
    // Leibniz over coefficients: δ(f·x_a) = f·δ(x_a) + X(f)·x_a with f the
    // first base coordinate (or a constant on a point base)
    let f = if alg.base.dim() > 0 {
        Polynomial::coordinate(&alg.base, 0)
    } else {
        Polynomial::one(&alg.base)
    };
    for a in 0..alg.rank {
        let mut fx = alg.zero_section();
        fx[a] = f.clone();
        let lhs = delta.apply(alg, &fx);
        let dxa = delta.apply(alg, &alg.basis_section(a));
        let xf = delta.symbol.apply_to_function(&f).expect("symbol");
        let ok = (0..alg.rank).all(|b| {
            let mut rhs = f.try_mul(&dxa[b]).expect("chart");
            if b == a {
                rhs = rhs.try_add(&xf).expect("chart");
            }
            lhs[b] == rhs
        });
        rep.record(
            format!("leibniz-({a})"),
            "first-order Leibniz rule over coefficients".to_string(),
            ok,
            || format!("{lhs:?}"),
        );
    }
    // symbol compatibility: [X, ρ(x_a)] = ρ(δ x_a)
    for a in 0..alg.rank {
        let lhs = schouten(&delta.symbol, &alg.anchor_vf(&alg.basis_section(a)))
            .expect("vector fields");
        let rhs = alg.anchor_vf(&delta.apply(alg, &alg.basis_section(a)));
        let defect = lhs.sub(&rhs);
        rep.record(
            format!("symbol-({a})"),
            "the symbol intertwines the anchors".to_string(),
            defect.is_zero(),
            || format!("{defect:?}"),
        );
    }
    // bracket derivation: δ[x_a,x_b] = [δx_a, x_b] + [x_a, δx_b]
    for a in 0..alg.rank {
        for b in (a + 1)..alg.rank {
            let lhs = delta.apply(
                alg,
                &alg.bracket_sections(&alg.basis_section(a), &alg.basis_section(b)),
            );
            let r1 = alg.bracket_sections(&delta.apply(alg, &alg.basis_section(a)), &alg.basis_section(b));
            let r2 = alg.bracket_sections(&alg.basis_section(a), &delta.apply(alg, &alg.basis_section(b)));
            let ok = (0..alg.rank).all(|k| lhs[k] == r1[k].try_add(&r2[k]).expect("chart"));
            rep.record(
                format!("bracket-derivation-({a},{b})"),
                "the operator differentiates the bracket".to_string(),
                ok,
                || format!("{lhs:?}"),
            );
        }
    }
    rep.finalize()
}
