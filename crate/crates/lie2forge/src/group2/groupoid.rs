//! The linear action groupoid 𝔤* ⋉ 𝔳* ⇉ 𝔳* attached to a linear map
//! d: 𝔳 → 𝔤, together with exact multiplicativity tests for functions,
//! differential forms, vector fields, multivectors and mixed tensors.
//!
//! Conventions. The dual map d^T: 𝔤* → 𝔳* is fixed by (d^T g)(u) = −g(du).
//! Points of the total space are (g, m) ∈ 𝔤* × 𝔳*; with d presented by a
//! p×q matrix D (columns = images of the 𝔳-basis) the chart coordinates are
//! g_1..g_p, m_1..m_q and the structure maps are
//!   s(g,m) = m,        t(g,m)_j = m_j − Σ_a D_{aj} g_a,
//!   (h, t(g,m)) · (g, m) = (h+g, m),   inv(g,m) = (−g, t(g,m)).

use num_traits::{One, Zero};

use crate::cartan::{PolyMap, PolyTensor};
use crate::error::{Error, Result};
use crate::symcore::{Chart, Monomial, Polynomial, RatMatrix, Rational};

/// Outcome of a multiplicativity test: a pass flag plus, on failure, a
/// human-readable witness (the first nonvanishing defect component).
#[derive(Clone, Debug)]
pub struct MultCheck {
    pub ok: bool,
    pub witness: String,
}

impl MultCheck {
    fn pass() -> MultCheck {
        MultCheck { ok: true, witness: String::new() }
    }

    fn fail(witness: String) -> MultCheck {
        MultCheck { ok: false, witness }
    }
}

/// The action groupoid 𝔤* ⋉ 𝔳* ⇉ 𝔳* of a linear map d: 𝔳 → 𝔤 with all its
/// structure maps realized as exact polynomial maps, plus auxiliary charts
/// for pairs and triples of composable arrows.
#[derive(Clone, Debug)]
pub struct LinearActionGroupoid {
    d: RatMatrix,
    p: usize,
    q: usize,
    chart_m: Chart,
    chart_g: Chart,
    chart_g2: Chart,
    chart_g3: Chart,
    s: PolyMap,
    t: PolyMap,
    tau: PolyMap,
    unit: PolyMap,
    inv: PolyMap,
    mult: PolyMap,
    pr1: PolyMap,
    pr2: PolyMap,
}

fn coord_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// t_j = m_j − Σ_a D_{aj} g_a on a chart whose g-block starts at `g_off` and
/// whose m-block starts at `m_off`.
fn target_images(
    chart: &Chart,
    d: &RatMatrix,
    g_off: usize,
    m_off: usize,
) -> Vec<Polynomial> {
    let (p, q) = (d.rows(), d.cols());
    (0..q)
        .map(|j| {
            let mut t = Polynomial::coordinate(chart, m_off + j);
            for a in 0..p {
                let c = d.get(a, j).clone();
                if !c.is_zero() {
                    t = &t - &Polynomial::coordinate(chart, g_off + a).scale(&c);
                }
            }
            t
        })
        .collect()
}

fn law(name: &str, ok: bool, lhs: &PolyMap, rhs: &PolyMap) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvariantFailure {
            check: name.to_string(),
            witness: format!("lhs images {:?} != rhs images {:?}", lhs.images(), rhs.images()),
        })
    }
}

/// Builds the groupoid of a p×q matrix presentation of d: 𝔳 → 𝔤 and verifies
/// every groupoid law as an exact identity of polynomial maps.
pub fn build_groupoid(d: &RatMatrix) -> Result<LinearActionGroupoid> {
    let (p, q) = (d.rows(), d.cols());
    if p == 0 {
        return Err(Error::DimensionMismatch("the groupoid needs dim 𝔤 ≥ 1".into()));
    }
    let m_names = coord_names("m", q);
    let g_names = coord_names("g", p);
    let h_names = coord_names("h", p);
    let k_names = coord_names("k", p);

    let chart_m = Chart::from_owned("M".into(), m_names.clone());
    let chart_g =
        Chart::from_owned("G".into(), g_names.iter().chain(&m_names).cloned().collect());
    let chart_g2 = Chart::from_owned(
        "G2".into(),
        h_names.iter().chain(&g_names).chain(&m_names).cloned().collect(),
    );
    let chart_g3 = Chart::from_owned(
        "G3".into(),
        k_names.iter().chain(&h_names).chain(&g_names).chain(&m_names).cloned().collect(),
    );

    let coord = |ch: &Chart, i: usize| Polynomial::coordinate(ch, i);
    let zero_g = |ch: &Chart| Polynomial::zero(ch);

    // s(g,m) = m, t(g,m) = m − D^T-translate, unit(m) = (0,m)
    let s = PolyMap::new(&chart_g, &chart_m, (0..q).map(|j| coord(&chart_g, p + j)).collect())?;
    let t = PolyMap::new(&chart_g, &chart_m, target_images(&chart_g, d, 0, p))?;
    let tau_images: Vec<Polynomial> = (0..p)
        .map(|a| coord(&chart_g, a))
        .chain(target_images(&chart_g, d, 0, p))
        .collect();
    let tau = PolyMap::new(&chart_g, &chart_g, tau_images)?;
    let unit = PolyMap::new(
        &chart_m,
        &chart_g,
        (0..p).map(|_| zero_g(&chart_m)).chain((0..q).map(|j| coord(&chart_m, j))).collect(),
    )?;
    let inv_images: Vec<Polynomial> = (0..p)
        .map(|a| -&coord(&chart_g, a))
        .chain(target_images(&chart_g, d, 0, p))
        .collect();
    let inv = PolyMap::new(&chart_g, &chart_g, inv_images)?;

    // G2 layout: (h, g, m); mult = (h+g, m); pr1 = (h, t(g,m)); pr2 = (g, m).
    let mult = PolyMap::new(
        &chart_g2,
        &chart_g,
        (0..p)
            .map(|a| &coord(&chart_g2, a) + &coord(&chart_g2, p + a))
            .chain((0..q).map(|j| coord(&chart_g2, 2 * p + j)))
            .collect(),
    )?;
    let pr1 = PolyMap::new(
        &chart_g2,
        &chart_g,
        (0..p)
            .map(|a| coord(&chart_g2, a))
            .chain(target_images(&chart_g2, d, p, 2 * p))
            .collect(),
    )?;
    let pr2 = PolyMap::new(
        &chart_g2,
        &chart_g,
        (0..p)
            .map(|a| coord(&chart_g2, p + a))
            .chain((0..q).map(|j| coord(&chart_g2, 2 * p + j)))
            .collect(),
    )?;

    let gpd = LinearActionGroupoid {
        d: d.clone(),
        p,
        q,
        chart_m,
        chart_g,
        chart_g2,
        chart_g3,
        s,
        t,
        tau,
        unit,
        inv,
        mult,
        pr1,
        pr2,
    };
    gpd.check_laws()?;
    Ok(gpd)
}

impl LinearActionGroupoid {
    pub fn d(&self) -> &RatMatrix {
        &self.d
    }

    pub fn dim_g(&self) -> usize {
        self.p
    }

    pub fn dim_v(&self) -> usize {
        self.q
    }

    pub fn chart_m(&self) -> &Chart {
        &self.chart_m
    }

    pub fn chart_g(&self) -> &Chart {
        &self.chart_g
    }

    pub fn chart_g2(&self) -> &Chart {
        &self.chart_g2
    }

    pub fn chart_g3(&self) -> &Chart {
        &self.chart_g3
    }

    pub fn source(&self) -> &PolyMap {
        &self.s
    }

    pub fn target(&self) -> &PolyMap {
        &self.t
    }

    /// τ(g,m) = (g, t(g,m)): the chart-level endomorphism realizing t = s ∘ τ.
    pub fn tau(&self) -> &PolyMap {
        &self.tau
    }

    pub fn unit(&self) -> &PolyMap {
        &self.unit
    }

    pub fn inversion(&self) -> &PolyMap {
        &self.inv
    }

    pub fn multiplication(&self) -> &PolyMap {
        &self.mult
    }

    pub fn pr1(&self) -> &PolyMap {
        &self.pr1
    }

    pub fn pr2(&self) -> &PolyMap {
        &self.pr2
    }

    fn check_laws(&self) -> Result<()> {
        let id_m = PolyMap::identity(&self.chart_m);
        let id_g = PolyMap::identity(&self.chart_g);
        let (p, q) = (self.p, self.q);
        let ch2 = &self.chart_g2;
        let ch3 = &self.chart_g3;
        let coord = |ch: &Chart, i: usize| Polynomial::coordinate(ch, i);

        let lhs = self.unit.then(&self.s)?;
        law("source-of-unit", lhs.equals(&id_m), &lhs, &id_m)?;
        let lhs = self.unit.then(&self.t)?;
        law("target-of-unit", lhs.equals(&id_m), &lhs, &id_m)?;

        let lhs = self.mult.then(&self.s)?;
        let rhs = self.pr2.then(&self.s)?;
        law("source-of-product", lhs.equals(&rhs), &lhs, &rhs)?;
        let lhs = self.mult.then(&self.t)?;
        let rhs = self.pr1.then(&self.t)?;
        law("target-of-product", lhs.equals(&rhs), &lhs, &rhs)?;
        let lhs = self.pr1.then(&self.s)?;
        let rhs = self.pr2.then(&self.t)?;
        law("composability-of-projections", lhs.equals(&rhs), &lhs, &rhs)?;

        // associativity via the two ways of collapsing a composable triple
        let a12 = PolyMap::new(
            ch3,
            ch2,
            (0..p)
                .map(|a| &coord(ch3, a) + &coord(ch3, p + a))
                .chain((0..p).map(|a| coord(ch3, 2 * p + a)))
                .chain((0..q).map(|j| coord(ch3, 3 * p + j)))
                .collect(),
        )?;
        let a23 = PolyMap::new(
            ch3,
            ch2,
            (0..p)
                .map(|a| coord(ch3, a))
                .chain((0..p).map(|a| &coord(ch3, p + a) + &coord(ch3, 2 * p + a)))
                .chain((0..q).map(|j| coord(ch3, 3 * p + j)))
                .collect(),
        )?;
        let lhs = a12.then(&self.mult)?;
        let rhs = a23.then(&self.mult)?;
        law("associativity", lhs.equals(&rhs), &lhs, &rhs)?;

        // unit laws: (unit(t(γ)))·γ = γ = γ·(unit(s(γ)))
        let lu = PolyMap::new(
            &self.chart_g,
            ch2,
            (0..p)
                .map(|_| Polynomial::zero(&self.chart_g))
                .chain((0..p).map(|a| coord(&self.chart_g, a)))
                .chain((0..q).map(|j| coord(&self.chart_g, p + j)))
                .collect(),
        )?;
        let lhs = lu.then(&self.mult)?;
        law("left-unit", lhs.equals(&id_g), &lhs, &id_g)?;
        let ru = PolyMap::new(
            &self.chart_g,
            ch2,
            (0..p)
                .map(|a| coord(&self.chart_g, a))
                .chain((0..p).map(|_| Polynomial::zero(&self.chart_g)))
                .chain((0..q).map(|j| coord(&self.chart_g, p + j)))
                .collect(),
        )?;
        let lhs = ru.then(&self.mult)?;
        law("right-unit", lhs.equals(&id_g), &lhs, &id_g)?;

        // inverse laws: inv(γ)·γ = unit(s(γ)), γ·inv(γ) = unit(t(γ))
        let li = PolyMap::new(
            &self.chart_g,
            ch2,
            (0..p)
                .map(|a| -&coord(&self.chart_g, a))
                .chain((0..p).map(|a| coord(&self.chart_g, a)))
                .chain((0..q).map(|j| coord(&self.chart_g, p + j)))
                .collect(),
        )?;
        let lhs = li.then(&self.mult)?;
        let rhs = self.s.then(&self.unit)?;
        law("left-inverse", lhs.equals(&rhs), &lhs, &rhs)?;
        let ri = PolyMap::new(
            &self.chart_g,
            ch2,
            (0..p)
                .map(|a| coord(&self.chart_g, a))
                .chain((0..p).map(|a| -&coord(&self.chart_g, a)))
                .chain(target_images(&self.chart_g, &self.d, 0, p))
                .collect(),
        )?;
        let lhs = ri.then(&self.mult)?;
        let rhs = self.t.then(&self.unit)?;
        law("right-inverse", lhs.equals(&rhs), &lhs, &rhs)?;

        let lhs = self.inv.then(&self.inv)?;
        law("inversion-involutive", lhs.equals(&id_g), &lhs, &id_g)?;
        let lhs = self.inv.then(&self.s)?;
        law("inversion-swaps-source", lhs.equals(&self.t), &lhs, &self.t)?;
        let lhs = self.inv.then(&self.t)?;
        law("inversion-swaps-target", lhs.equals(&self.s), &lhs, &self.s)?;
        Ok(())
    }

    /// A differential form (or function) Θ on the total space is
    /// multiplicative iff mult*Θ = pr₁*Θ + pr₂*Θ on composable pairs.
    pub fn is_multiplicative_form(&self, theta: &PolyTensor) -> Result<MultCheck> {
        if !theta.is_form() {
            return Err(Error::MixedVariance("multiplicativity test for forms wants a form".into()));
        }
        if theta.chart() != &self.chart_g {
            return Err(Error::ChartMismatch {
                expected: self.chart_g.name().to_string(),
                got: theta.chart().name().to_string(),
            });
        }
        let diff = self
            .mult
            .pullback(theta)?
            .sub(&self.pr1.pullback(theta)?)
            .sub(&self.pr2.pullback(theta)?);
        Ok(tensor_check(&diff))
    }

    /// A vector field X = Σ X^{g_a}∂_{g_a} + Σ X^{m_j}∂_{m_j} is
    /// multiplicative iff it is a groupoid morphism TG ⇉ TM over its base
    /// part, which in this chart amounts to three exact conditions:
    /// the m-components are g-independent (s-projectability), the target map
    /// intertwines X with the same base field, and the g-components are
    /// multiplicative functions.
    pub fn is_multiplicative_vecfield(&self, x: &PolyTensor) -> Result<MultCheck> {
        if x.k() != 1 || x.l() != 0 {
            return Err(Error::DegreeViolation("multiplicative vector field test wants (1,0)".into()));
        }
        if x.chart() != &self.chart_g {
            return Err(Error::ChartMismatch {
                expected: self.chart_g.name().to_string(),
                got: x.chart().name().to_string(),
            });
        }
        let (p, q) = (self.p, self.q);
        for j in 0..q {
            let xm = x.component(&[p + j], &[]);
            if !is_g_independent(&xm, p) {
                return Ok(MultCheck::fail(format!(
                    "m-component {} depends on the fiber: {}",
                    self.chart_g.coordinate(p + j),
                    xm
                )));
            }
            // t-projectability onto the same base field
            let mut defect = &self.tau.pull_function(&xm)? - &xm;
            for a in 0..p {
                let c = self.d.get(a, j).clone();
                if !c.is_zero() {
                    defect = &defect + &x.component(&[a], &[]).scale(&c);
                }
            }
            if !defect.is_zero() {
                return Ok(MultCheck::fail(format!(
                    "target compatibility fails on {}: defect {}",
                    self.chart_g.coordinate(p + j),
                    defect
                )));
            }
        }
        for a in 0..p {
            let xg = x.component(&[a], &[]);
            let defect = &(&self.mult.pull_function(&xg)? - &self.pr1.pull_function(&xg)?)
                - &self.pr2.pull_function(&xg)?;
            if !defect.is_zero() {
                return Ok(MultCheck::fail(format!(
                    "g-component {} is not a multiplicative function: defect {}",
                    self.chart_g.coordinate(a),
                    defect
                )));
            }
        }
        Ok(MultCheck::pass())
    }

    /// Multiplicativity of a mixed (k,l)-tensor, k+l ≥ 1, as a fiberwise
    /// multilinear function on k copies of the cotangent groupoid
    /// T*G ⇉ A* and l copies of the tangent groupoid TG ⇉ TM: the value at a
    /// composite arrow on composite (co)tangent slots equals the sum of the
    /// values at the two factors. All compositions are expanded symbolically
    /// on one extended chart with free slot variables.
    pub fn is_multiplicative_tensor(&self, x: &PolyTensor) -> Result<MultCheck> {
        if x.chart() != &self.chart_g {
            return Err(Error::ChartMismatch {
                expected: self.chart_g.name().to_string(),
                got: x.chart().name().to_string(),
            });
        }
        let (p, q) = (self.p, self.q);
        let (k, l) = (x.k(), x.l());
        if k + l == 0 {
            return Err(Error::DegreeViolation(
                "tensor multiplicativity wants k+l ≥ 1; use the form test for functions".into(),
            ));
        }
        // Extended chart: base point (h,g,m), per covector slot i the free
        // components (ξ²=cix*, η¹=ciy*, η²=ciz*), per vector slot s the free
        // components (δh=vsh*, δg=vsg*, δm=vsm*).
        let mut names: Vec<String> = coord_names("h", p);
        names.extend(coord_names("g", p));
        names.extend(coord_names("m", q));
        for i in 0..k {
            names.extend((1..=p).map(|a| format!("c{i}x{a}")));
            names.extend((1..=q).map(|j| format!("c{i}y{j}")));
            names.extend((1..=q).map(|j| format!("c{i}z{j}")));
        }
        for s in 0..l {
            names.extend((1..=p).map(|a| format!("v{s}h{a}")));
            names.extend((1..=p).map(|a| format!("v{s}g{a}")));
            names.extend((1..=q).map(|j| format!("v{s}m{j}")));
        }
        let e = Chart::from_owned("Gmult".into(), names);
        let cv = |i: usize| Polynomial::coordinate(&e, i);
        let cov_off = |slot: usize| 2 * p + q + slot * (p + 2 * q);
        let vec_off = |slot: usize| 2 * p + q + k * (p + 2 * q) + slot * (2 * p + q);
        let xi2 = |slot: usize, a: usize| cv(cov_off(slot) + a);
        let eta1 = |slot: usize, j: usize| cv(cov_off(slot) + p + j);
        let eta2 = |slot: usize, j: usize| cv(cov_off(slot) + p + q + j);
        let dh = |slot: usize, a: usize| cv(vec_off(slot) + a);
        let dg = |slot: usize, a: usize| cv(vec_off(slot) + p + a);
        let dm = |slot: usize, j: usize| cv(vec_off(slot) + 2 * p + j);
        // ξ¹ = ξ² − D·η¹ (composability constraint in T*G)
        let xi1 = |slot: usize, a: usize| {
            let mut v = xi2(slot, a);
            for j in 0..q {
                let c = self.d.get(a, j).clone();
                if !c.is_zero() {
                    v = &v - &eta1(slot, j).scale(&c);
                }
            }
            v
        };
        // δn = δm − D^T-transport (tangent composability constraint)
        let dn = |slot: usize, j: usize| {
            let mut v = dm(slot, j);
            for a in 0..p {
                let c = self.d.get(a, j).clone();
                if !c.is_zero() {
                    v = &v - &dg(slot, a).scale(&c);
                }
            }
            v
        };

        let pt = |g_of: &dyn Fn(usize) -> Polynomial, m_of: &dyn Fn(usize) -> Polynomial| {
            (0..p).map(g_of).chain((0..q).map(m_of)).collect::<Vec<_>>()
        };
        let slots = |cg: &dyn Fn(usize, usize) -> Polynomial,
                     cm: &dyn Fn(usize, usize) -> Polynomial,
                     n: usize| {
            (0..n)
                .map(|s| (0..p).map(|a| cg(s, a)).chain((0..q).map(|j| cm(s, j))).collect::<Vec<_>>())
                .collect::<Vec<Vec<Polynomial>>>()
        };

        // composite arrow (h+g, m) on composite slots
        let v_comp = eval_tensor(
            x,
            &e,
            &pt(&|a| &cv(a) + &cv(p + a), &|j| cv(2 * p + j)),
            &slots(&xi1, &|s, j| &eta1(s, j) + &eta2(s, j), k),
            &slots(&|s, a| &dh(s, a) + &dg(s, a), &dm, l),
        )?;
        // first factor (h, t(g,m)) on the first-factor slots
        let t_of_gm = |j: usize| {
            let mut v = cv(2 * p + j);
            for a in 0..p {
                let c = self.d.get(a, j).clone();
                if !c.is_zero() {
                    v = &v - &cv(p + a).scale(&c);
                }
            }
            v
        };
        let v1 = eval_tensor(x, &e, &pt(&|a| cv(a), &t_of_gm), &slots(&xi1, &eta1, k), &slots(&dh, &dn, l))?;
        // second factor (g, m) on the second-factor slots
        let v2 = eval_tensor(
            x,
            &e,
            &pt(&|a| cv(p + a), &|j| cv(2 * p + j)),
            &slots(&xi2, &eta2, k),
            &slots(&dg, &dm, l),
        )?;

        let diff = &(&v_comp - &v1) - &v2;
        if diff.is_zero() {
            Ok(MultCheck::pass())
        } else {
            Ok(MultCheck::fail(format!("defect {diff}")))
        }
    }
}

/// True when no monomial of `f` involves the first `p` (fiber) coordinates.
pub fn is_g_independent(f: &Polynomial, p: usize) -> bool {
    f.terms().all(|(m, _)| m.0[..p].iter().all(|&e| e == 0))
}

fn tensor_check(diff: &PolyTensor) -> MultCheck {
    if diff.is_zero() {
        MultCheck::pass()
    } else {
        let (key, c) = diff.components().next().expect("nonzero tensor has a component");
        MultCheck::fail(format!("defect component up{:?} down{:?}: {}", key.up, key.down, c))
    }
}

/// Determinant of a square matrix of polynomials by Laplace expansion along
/// the first row (slot counts are tiny).
fn poly_det(chart: &Chart, m: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = m.len();
    if n == 0 {
        return Ok(Polynomial::one(chart));
    }
    if n == 1 {
        return Ok(m[0][0].clone());
    }
    let mut acc = Polynomial::zero(chart);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = (1..n)
            .map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c].clone()).collect())
            .collect();
        let mut term = m[0][j].try_mul(&poly_det(chart, &minor)?)?;
        if j % 2 == 1 {
            term = term.scale(&-Rational::one());
        }
        acc = acc.try_add(&term)?;
    }
    Ok(acc)
}

/// Evaluates a (k,l)-tensor at a symbolic point on symbolic covector and
/// vector slots: Σ_components coeff(point) · det[cov_i(∂_{up_r})] ·
/// det[dx_{down_r}(vec_s)].
fn eval_tensor(
    x: &PolyTensor,
    e: &Chart,
    point: &[Polynomial],
    cov: &[Vec<Polynomial>],
    vec: &[Vec<Polynomial>],
) -> Result<Polynomial> {
    let mut acc = Polynomial::zero(e);
    for (key, c) in x.components() {
        let coeff = c.substitute(point)?;
        if coeff.is_zero() {
            continue;
        }
        let up_mat: Vec<Vec<Polynomial>> =
            cov.iter().map(|slot| key.up.iter().map(|&u| slot[u].clone()).collect()).collect();
        let down_mat: Vec<Vec<Polynomial>> = key
            .down
            .iter()
            .map(|&dn| vec.iter().map(|slot| slot[dn].clone()).collect())
            .collect();
        let term = coeff.try_mul(&poly_det(e, &up_mat)?)?.try_mul(&poly_det(e, &down_mat)?)?;
        acc = acc.try_add(&term)?;
    }
    Ok(acc)
}

/// Monomial exponent helper used by sibling modules when reindexing
/// polynomials between the base and total-space charts.
pub(crate) fn reindex_monomial(m: &Monomial, from_dim: usize, to_dim: usize, offset: usize) -> Monomial {
    debug_assert!(m.0.len() == from_dim);
    let mut e = vec![0u32; to_dim];
    for (i, &x) in m.0.iter().enumerate() {
        e[i + offset] = x;
    }
    let _ = from_dim;
    Monomial(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::rat;

    fn calib_d() -> RatMatrix {
        // d(u) = e₁ for a 3-dimensional 𝔤 and 1-dimensional 𝔳
        RatMatrix::from_i64(&[&[1], &[0], &[0]])
    }

    #[test]
    fn groupoid_laws_hold() {
        let g = build_groupoid(&calib_d()).unwrap();
        assert_eq!(g.dim_g(), 3);
        assert_eq!(g.dim_v(), 1);
        // t(g,m) = m − g1
        let t0 = &g.target().images()[0];
        let expect = &Polynomial::coordinate(g.chart_g(), 3)
            - &Polynomial::coordinate(g.chart_g(), 0);
        assert_eq!(*t0, expect);
    }

    #[test]
    fn groupoid_with_empty_base() {
        // q = 0: a Lie group seen as a groupoid over a point
        let d = RatMatrix::zero(2, 0);
        let g = build_groupoid(&d).unwrap();
        assert_eq!(g.chart_m().dim(), 0);
    }

    #[test]
    fn coordinate_fiber_form_is_multiplicative() {
        let g = build_groupoid(&calib_d()).unwrap();
        let dg1 = PolyTensor::coordinate_form(g.chart_g(), 0);
        assert!(g.is_multiplicative_form(&dg1).unwrap().ok);
        // and the mixed-tensor test agrees on the same input
        assert!(g.is_multiplicative_tensor(&dg1).unwrap().ok);
    }

    #[test]
    fn base_coordinate_form_is_not_multiplicative() {
        let g = build_groupoid(&calib_d()).unwrap();
        let dm = PolyTensor::coordinate_form(g.chart_g(), 3);
        assert!(!g.is_multiplicative_form(&dm).unwrap().ok);
        assert!(!g.is_multiplicative_tensor(&dm).unwrap().ok);
    }

    #[test]
    fn wedge_of_multiplicative_forms_need_not_be_multiplicative() {
        let g = build_groupoid(&calib_d()).unwrap();
        let dg1 = PolyTensor::coordinate_form(g.chart_g(), 0);
        let dg2 = PolyTensor::coordinate_form(g.chart_g(), 1);
        assert!(g.is_multiplicative_form(&dg2).unwrap().ok);
        let w = dg1.wedge(&dg2).unwrap();
        assert!(!g.is_multiplicative_form(&w).unwrap().ok);
        assert!(!g.is_multiplicative_tensor(&w).unwrap().ok);
    }

    #[test]
    fn constant_fiber_vector_field_is_not_multiplicative() {
        let g = build_groupoid(&calib_d()).unwrap();
        let x = PolyTensor::coordinate_vector(g.chart_g(), 0);
        assert!(!g.is_multiplicative_vecfield(&x).unwrap().ok);
        assert!(!g.is_multiplicative_tensor(&x).unwrap().ok);
    }

    #[test]
    fn form_and_tensor_tests_agree_on_linear_coefficient_forms() {
        let g = build_groupoid(&calib_d()).unwrap();
        let ch = g.chart_g();
        for i in 0..4 {
            for c in 0..4 {
                let theta = PolyTensor::coordinate_form(ch, i)
                    .scale_poly(&Polynomial::coordinate(ch, c));
                let a = g.is_multiplicative_form(&theta).unwrap().ok;
                let b = g.is_multiplicative_tensor(&theta).unwrap().ok;
                assert_eq!(a, b, "disagreement on coefficient {c}, leg {i}");
            }
        }
    }

    #[test]
    fn multiplicative_function_via_form_test() {
        let g = build_groupoid(&calib_d()).unwrap();
        // linear fiber coordinates are multiplicative functions
        let f = PolyTensor::from_function(Polynomial::coordinate(g.chart_g(), 1));
        assert!(g.is_multiplicative_form(&f).unwrap().ok);
        // base coordinates are not
        let f = PolyTensor::from_function(Polynomial::coordinate(g.chart_g(), 3));
        assert!(!g.is_multiplicative_form(&f).unwrap().ok);
        // and neither are quadratics in g
        let g1 = Polynomial::coordinate(g.chart_g(), 0);
        let f = PolyTensor::from_function((&g1 * &g1).scale(&rat(1, 2)));
        assert!(!g.is_multiplicative_form(&f).unwrap().ok);
    }
}
