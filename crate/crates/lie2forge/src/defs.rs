//! The JSON interchange layer: definition-file schemas for algebras,
//! bialgebroids and tensor models, the built-in example corpus, and the
//! dispatcher that routes a parsed definition to a verification suite.
//!
//! All numbers are exact rationals serialized as strings (`"3"`, `"-1/2"`);
//! polynomials are maps from comma-separated exponent vectors to rational
//! strings. Maps are ordered, so serialization is deterministic.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cartan::{curvature, schouten, PolyTensor};
use crate::error::{Error, Result};
use crate::group2::{
    abelian, abelian_g3_phi, build_groupoid, build_qp, coadjoint_diagram, heisenberg3, kks_sl2,
    left_invariant, right_invariant, validate_section, verify_mult_form_graded_lie2,
    verify_mult_form_lie2, verify_qp_axioms, verify_sharp_morphism, Lie2Algebra,
    QuasiPoissonModel,
};
use crate::linfty::{
    make_string_lie2, verify_graded_weak_lie2, verify_weak_lie2, Element, WeakLie2Data,
};
use crate::qlb::{
    model_to_qlb, point_simple3_volume, psi_morphism, verify_prop58, verify_qlb, verify_thm52,
    verify_thm59_510, AMulti, PolyLieAlgebroid, PolyQuasiLieBialgebroid,
};
use crate::report::VerificationReport;
use crate::symcore::{
    format_rational, parse_rational, rat, Chart, Monomial, Polynomial, RatMatrix,
};

/// A polynomial as a map from comma-separated exponent vectors ("2,0,1") to
/// rational coefficient strings; the empty key is the constant monomial on a
/// zero-dimensional chart.
pub type PolyDef = BTreeMap<String, String>;

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

fn parse_index_key(key: &str, arity: usize, bound: usize) -> Result<Vec<usize>> {
    let idx: Vec<usize> = key
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| schema(format!("bad index key `{key}`"))))
        .collect::<Result<_>>()?;
    if idx.len() != arity {
        return Err(schema(format!("key `{key}` must have {arity} indices")));
    }
    if idx.windows(2).any(|w| w[0] >= w[1]) || idx.iter().any(|&i| i >= bound) {
        return Err(schema(format!(
            "key `{key}` must be strictly increasing with indices below {bound}"
        )));
    }
    Ok(idx)
}

fn fmt_index_key(idx: &[usize]) -> String {
    idx.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_element(vals: &[String], len: usize) -> Result<Element> {
    if vals.len() != len {
        return Err(schema(format!("coefficient vector must have length {len}")));
    }
    vals.iter().map(|s| parse_rational(s)).collect()
}

fn fmt_element(e: &Element) -> Vec<String> {
    e.iter().map(format_rational).collect()
}

fn parse_matrix(rows: &[Vec<String>], nrows: usize, ncols: usize) -> Result<RatMatrix> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(schema(format!("matrix must be {nrows}×{ncols}")));
    }
    let mut m = RatMatrix::zero(nrows, ncols);
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            m.set(i, j, parse_rational(v)?);
        }
    }
    Ok(m)
}

fn fmt_matrix(m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| format_rational(m.get(i, j))).collect())
        .collect()
}

fn parse_poly(chart: &Chart, def: &PolyDef) -> Result<Polynomial> {
    let mut out = Polynomial::zero(chart);
    for (key, val) in def {
        let exps: Vec<u32> = if key.trim().is_empty() {
            Vec::new()
        } else {
            key.split(',')
                .map(|p| {
                    p.trim().parse::<u32>().map_err(|_| schema(format!("bad exponent in `{key}`")))
                })
                .collect::<Result<_>>()?
        };
        if exps.len() != chart.dim() {
            return Err(schema(format!(
                "monomial `{key}` must have {} exponents for chart `{}`",
                chart.dim(),
                chart.name()
            )));
        }
        out.add_term(Monomial(exps), parse_rational(val)?);
    }
    Ok(out)
}

fn fmt_poly(p: &Polynomial) -> PolyDef {
    p.terms()
        .map(|(m, c)| {
            let key = m.0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",");
            (key, format_rational(c))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Definition-file schemas
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(tag = "kind")]
pub enum DefinitionFile {
    #[serde(rename = "lie2algebra")]
    Lie2Algebra(LieAlgebraDef),
    #[serde(rename = "weak_lie2")]
    WeakLie2(WeakLie2Def),
    #[serde(rename = "quasi_lie_bialgebra")]
    QuasiLieBialgebra(QuasiLieBialgebraDef),
    #[serde(rename = "poly_quasi_lie_bialgebroid")]
    PolyQuasiLieBialgebroid(BialgebroidDef),
    #[serde(rename = "tensor")]
    Tensor(TensorDef),
}

/// A Lie algebra given by structure constants: key "i,j" (i<j, 0-based) maps
/// to the coefficient vector of [xᵢ,xⱼ] over the basis. It is treated as a
/// weak Lie 2-algebra with trivial degree-1 part.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct LieAlgebraDef {
    pub basis: Vec<String>,
    pub bracket: BTreeMap<String, Vec<String>>,
}

/// A weak Lie 2-algebra 𝔳 →d→ 𝔤 with constant structure data: `d` has one
/// row per 𝔤-basis vector and one column per 𝔳-basis vector; `bracket2_gg`
/// takes values in 𝔤, `bracket2_gv` and `bracket3` in 𝔳.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct WeakLie2Def {
    pub v_basis: Vec<String>,
    pub g_basis: Vec<String>,
    pub d: Vec<Vec<String>>,
    #[serde(default)]
    pub bracket2_gg: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub bracket2_gv: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub bracket3: BTreeMap<String, Vec<String>>,
}

/// A quasi-Lie bialgebra: a quasi-Lie bialgebroid over a point. `cobracket`
/// has one entry per basis vector, each a map "a,b" (a<b) → coefficient of
/// x_a∧x_b; `phi` maps "a,b,c" (a<b<c) → coefficient of x_a∧x_b∧x_c.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct QuasiLieBialgebraDef {
    pub basis: Vec<String>,
    #[serde(default)]
    pub bracket: BTreeMap<String, Vec<String>>,
    pub cobracket: Vec<BTreeMap<String, String>>,
    #[serde(default)]
    pub phi: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ChartDef {
    pub name: String,
    pub coordinates: Vec<String>,
}

/// A quasi-Lie bialgebroid with polynomial coefficients over an affine
/// chart. `anchor` and `rho_star` are indexed `[coordinate][frame]`;
/// `bracket` keys "a,b" (a<b) give the frame bracket over the frame basis;
/// `cobracket` has one wedge-square per frame section.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct BialgebroidDef {
    pub chart: ChartDef,
    pub rank: usize,
    pub anchor: Vec<Vec<PolyDef>>,
    #[serde(default)]
    pub bracket: BTreeMap<String, Vec<PolyDef>>,
    pub rho_star: Vec<Vec<PolyDef>>,
    pub cobracket: Vec<BTreeMap<String, PolyDef>>,
    #[serde(default)]
    pub phi: BTreeMap<String, PolyDef>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TensorComponentDef {
    pub up: Vec<usize>,
    pub down: Vec<usize>,
    pub coeff: PolyDef,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct NamedTensorDef {
    pub name: String,
    pub up: usize,
    pub down: usize,
    pub components: Vec<TensorComponentDef>,
}

/// A chart with named tensors on it; when the action matrix `d` is present
/// the chart is the total space of the linear action groupoid it defines,
/// and a `bivector`/`phi` pair can be verified as a quasi-Poisson model.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TensorDef {
    pub chart: ChartDef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<Vec<String>>>,
    pub tensors: Vec<NamedTensorDef>,
}

pub fn parse_definition(text: &str) -> Result<DefinitionFile> {
    serde_json::from_str(text).map_err(|e| schema(e.to_string()))
}

pub fn to_json(def: &DefinitionFile) -> String {
    let mut s = serde_json::to_string_pretty(def).expect("definition serialization");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// Schema ↔ internal conversions
// ---------------------------------------------------------------------------

fn parse_bracket_map(
    map: &BTreeMap<String, Vec<String>>,
    bound: usize,
    len: usize,
) -> Result<BTreeMap<(usize, usize), Element>> {
    let mut out = BTreeMap::new();
    for (key, vals) in map {
        let idx = parse_index_key(key, 2, bound)?;
        out.insert((idx[0], idx[1]), parse_element(vals, len)?);
    }
    Ok(out)
}

fn fmt_bracket_map(map: &BTreeMap<(usize, usize), Element>) -> BTreeMap<String, Vec<String>> {
    map.iter().map(|(&(a, b), e)| (fmt_index_key(&[a, b]), fmt_element(e))).collect()
}

impl LieAlgebraDef {
    pub fn to_weak_lie2(&self) -> Result<WeakLie2Data> {
        let p = self.basis.len();
        let data = WeakLie2Data {
            v_basis: Vec::new(),
            g_basis: self.basis.clone(),
            d: RatMatrix::zero(p, 0),
            bracket2_gg: parse_bracket_map(&self.bracket, p, p)?,
            bracket2_gv: BTreeMap::new(),
            bracket3: BTreeMap::new(),
        };
        data.validate()?;
        Ok(data)
    }
}

impl WeakLie2Def {
    pub fn to_data(&self) -> Result<WeakLie2Data> {
        let (p, q) = (self.g_basis.len(), self.v_basis.len());
        let mut bracket2_gv = BTreeMap::new();
        for (key, vals) in &self.bracket2_gv {
            // mixed key: first index over 𝔤, second over 𝔳, no ordering
            let idx: Vec<usize> = key
                .split(',')
                .map(|s| {
                    s.trim().parse::<usize>().map_err(|_| schema(format!("bad index key `{key}`")))
                })
                .collect::<Result<_>>()?;
            if idx.len() != 2 || idx[0] >= p || idx[1] >= q {
                return Err(schema(format!("mixed bracket key `{key}` out of range")));
            }
            bracket2_gv.insert((idx[0], idx[1]), parse_element(vals, q)?);
        }
        let mut bracket3 = BTreeMap::new();
        for (key, vals) in &self.bracket3 {
            let idx = parse_index_key(key, 3, p)?;
            bracket3.insert((idx[0], idx[1], idx[2]), parse_element(vals, q)?);
        }
        let data = WeakLie2Data {
            v_basis: self.v_basis.clone(),
            g_basis: self.g_basis.clone(),
            d: parse_matrix(&self.d, p, q)?,
            bracket2_gg: parse_bracket_map(&self.bracket2_gg, p, p)?,
            bracket2_gv,
            bracket3,
        };
        data.validate()?;
        Ok(data)
    }

    pub fn from_data(w: &WeakLie2Data) -> WeakLie2Def {
        WeakLie2Def {
            v_basis: w.v_basis.clone(),
            g_basis: w.g_basis.clone(),
            d: fmt_matrix(&w.d),
            bracket2_gg: fmt_bracket_map(&w.bracket2_gg),
            bracket2_gv: w
                .bracket2_gv
                .iter()
                .map(|(&(a, j), e)| (fmt_index_key(&[a, j]), fmt_element(e)))
                .collect(),
            bracket3: w
                .bracket3
                .iter()
                .map(|(&(a, b, c), e)| (fmt_index_key(&[a, b, c]), fmt_element(e)))
                .collect(),
        }
    }
}

impl QuasiLieBialgebraDef {
    pub fn to_qlb(&self) -> Result<PolyQuasiLieBialgebroid> {
        let chart = Chart::new("pt", &[]);
        let r = self.basis.len();
        let constant = |s: &str| -> Result<Polynomial> {
            Ok(Polynomial::constant(&chart, parse_rational(s)?))
        };
        let mut bracket = BTreeMap::new();
        for (key, vals) in &self.bracket {
            let idx = parse_index_key(key, 2, r)?;
            if vals.len() != r {
                return Err(schema(format!("bracket value for `{key}` must have length {r}")));
            }
            let row: Vec<Polynomial> =
                vals.iter().map(|s| constant(s)).collect::<Result<_>>()?;
            bracket.insert((idx[0], idx[1]), row);
        }
        let alg = PolyLieAlgebroid::new(chart.clone(), r, Vec::new(), bracket)?;
        if self.cobracket.len() != r {
            return Err(schema(format!("cobracket must have one entry per basis vector ({r})")));
        }
        let cobracket: Vec<AMulti> = self
            .cobracket
            .iter()
            .map(|m| {
                let mut w = AMulti::zero(&chart, r, 2);
                for (key, val) in m {
                    let idx = parse_index_key(key, 2, r)?;
                    w.add_component(&[idx[0], idx[1]], constant(val)?);
                }
                Ok(w)
            })
            .collect::<Result<_>>()?;
        let mut phi = AMulti::zero(&chart, r, 3);
        for (key, val) in &self.phi {
            let idx = parse_index_key(key, 3, r)?;
            phi.add_component(&[idx[0], idx[1], idx[2]], constant(val)?);
        }
        PolyQuasiLieBialgebroid::new(alg, Vec::new(), cobracket, phi)
    }

    pub fn from_qlb(q: &PolyQuasiLieBialgebroid) -> Result<QuasiLieBialgebraDef> {
        if q.base().dim() != 0 {
            return Err(schema("only a point-base bialgebroid serializes as a quasi-Lie bialgebra"));
        }
        let r = q.rank();
        let basis = (1..=r).map(|a| format!("x{a}")).collect();
        let bracket = q
            .algebroid
            .bracket
            .iter()
            .map(|(&(a, b), row)| {
                (
                    fmt_index_key(&[a, b]),
                    row.iter().map(|p| format_rational(&p.constant_term())).collect(),
                )
            })
            .collect();
        let amulti_map = |w: &AMulti| -> BTreeMap<String, String> {
            w.components()
                .map(|(idx, c)| (fmt_index_key(idx), format_rational(&c.constant_term())))
                .collect()
        };
        Ok(QuasiLieBialgebraDef {
            basis,
            bracket,
            cobracket: q.cobracket.iter().map(amulti_map).collect(),
            phi: amulti_map(&q.phi),
        })
    }
}

impl BialgebroidDef {
    pub fn to_qlb(&self) -> Result<PolyQuasiLieBialgebroid> {
        let coords: Vec<&str> = self.chart.coordinates.iter().map(|s| s.as_str()).collect();
        let chart = Chart::new(&self.chart.name, &coords);
        let (n, r) = (chart.dim(), self.rank);
        let parse_rows = |rows: &Vec<Vec<PolyDef>>, what: &str| -> Result<Vec<Vec<Polynomial>>> {
            if rows.len() != n || rows.iter().any(|row| row.len() != r) {
                return Err(schema(format!("{what} must be {n} coordinate rows of {r} entries")));
            }
            rows.iter()
                .map(|row| row.iter().map(|p| parse_poly(&chart, p)).collect())
                .collect()
        };
        let anchor = parse_rows(&self.anchor, "anchor")?;
        let rho_star = parse_rows(&self.rho_star, "rho_star")?;
        let mut bracket = BTreeMap::new();
        for (key, vals) in &self.bracket {
            let idx = parse_index_key(key, 2, r)?;
            if vals.len() != r {
                return Err(schema(format!("bracket value for `{key}` must have length {r}")));
            }
            let row: Vec<Polynomial> =
                vals.iter().map(|p| parse_poly(&chart, p)).collect::<Result<_>>()?;
            bracket.insert((idx[0], idx[1]), row);
        }
        let alg = PolyLieAlgebroid::new(chart.clone(), r, anchor, bracket)?;
        if self.cobracket.len() != r {
            return Err(schema(format!("cobracket must have one entry per frame section ({r})")));
        }
        let cobracket: Vec<AMulti> = self
            .cobracket
            .iter()
            .map(|m| {
                let mut w = AMulti::zero(&chart, r, 2);
                for (key, val) in m {
                    let idx = parse_index_key(key, 2, r)?;
                    w.add_component(&[idx[0], idx[1]], parse_poly(&chart, val)?);
                }
                Ok(w)
            })
            .collect::<Result<_>>()?;
        let mut phi = AMulti::zero(&chart, r, 3);
        for (key, val) in &self.phi {
            let idx = parse_index_key(key, 3, r)?;
            phi.add_component(&[idx[0], idx[1], idx[2]], parse_poly(&chart, val)?);
        }
        PolyQuasiLieBialgebroid::new(alg, rho_star, cobracket, phi)
    }
}

fn fmt_tensor(name: &str, t: &PolyTensor) -> NamedTensorDef {
    NamedTensorDef {
        name: name.to_string(),
        up: t.k(),
        down: t.l(),
        components: t
            .components()
            .map(|(key, c)| TensorComponentDef {
                up: key.up.clone(),
                down: key.down.clone(),
                coeff: fmt_poly(c),
            })
            .collect(),
    }
}

fn parse_tensor(chart: &Chart, nt: &NamedTensorDef) -> Result<PolyTensor> {
    let mut t = PolyTensor::zero(chart, nt.up, nt.down);
    for c in &nt.components {
        if c.up.len() != nt.up || c.down.len() != nt.down {
            return Err(schema(format!("component arity mismatch in tensor `{}`", nt.name)));
        }
        if c.up.iter().chain(&c.down).any(|&i| i >= chart.dim()) {
            return Err(schema(format!("component index out of range in tensor `{}`", nt.name)));
        }
        t.add_component(&c.up, &c.down, parse_poly(chart, &c.coeff)?);
    }
    Ok(t)
}

impl TensorDef {
    /// Serialize a quasi-Poisson model: the arrow chart, the action matrix,
    /// the multiplicative bivector and the trisection.
    pub fn from_model(model: &QuasiPoissonModel) -> TensorDef {
        let ch = model.groupoid.chart_g();
        TensorDef {
            chart: ChartDef {
                name: ch.name().to_string(),
                coordinates: ch.coordinates().to_vec(),
            },
            d: Some(fmt_matrix(model.groupoid.d())),
            tensors: vec![
                fmt_tensor("bivector", &model.bivector),
                fmt_tensor("phi", &model.phi_section),
            ],
        }
    }
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Linfty,
    Qp,
    Thm31,
    Thm36,
    Coadjoint,
    Qlb,
    Thm52,
    Prop53,
    Prop58,
    Thm59,
    All,
}

impl Suite {
    pub const TOKENS: &'static [&'static str] = &[
        "linfty", "qp", "thm31", "thm36", "coadjoint", "qlb", "thm52", "prop53", "prop58",
        "thm59", "all",
    ];

    pub fn parse(s: &str) -> Result<Suite> {
        Ok(match s {
            "linfty" => Suite::Linfty,
            "qp" => Suite::Qp,
            "thm31" => Suite::Thm31,
            "thm36" => Suite::Thm36,
            "coadjoint" => Suite::Coadjoint,
            "qlb" => Suite::Qlb,
            "thm52" => Suite::Thm52,
            "prop53" => Suite::Prop53,
            "prop58" => Suite::Prop58,
            "thm59" => Suite::Thm59,
            "all" => Suite::All,
            _ => {
                return Err(schema(format!(
                    "unknown suite `{s}` (expected one of {})",
                    Suite::TOKENS.join("|")
                )))
            }
        })
    }

    pub fn token(self) -> &'static str {
        match self {
            Suite::Linfty => "linfty",
            Suite::Qp => "qp",
            Suite::Thm31 => "thm31",
            Suite::Thm36 => "thm36",
            Suite::Coadjoint => "coadjoint",
            Suite::Qlb => "qlb",
            Suite::Thm52 => "thm52",
            Suite::Prop53 => "prop53",
            Suite::Prop58 => "prop58",
            Suite::Thm59 => "thm59",
            Suite::All => "all",
        }
    }
}

pub fn default_suite(def: &DefinitionFile) -> Suite {
    match def {
        DefinitionFile::Tensor(_) => Suite::Qp,
        _ => Suite::All,
    }
}

fn prefixed(tag: &str, mut rep: VerificationReport) -> VerificationReport {
    for c in &mut rep.checks {
        c.id = format!("{tag}/{}", c.id);
    }
    rep
}

pub fn run_suite(def: &DefinitionFile, suite: Suite) -> Result<VerificationReport> {
    match def {
        DefinitionFile::Lie2Algebra(d) => model_suite(&d.to_weak_lie2()?, suite),
        DefinitionFile::WeakLie2(d) => model_suite(&d.to_data()?, suite),
        DefinitionFile::QuasiLieBialgebra(d) => qlb_suite(&d.to_qlb()?, suite),
        DefinitionFile::PolyQuasiLieBialgebroid(d) => qlb_suite(&d.to_qlb()?, suite),
        DefinitionFile::Tensor(d) => match suite {
            Suite::Qp | Suite::All => tensor_qp_report(d),
            other => Err(schema(format!(
                "suite `{}` does not apply to a tensor input",
                other.token()
            ))),
        },
    }
}

fn model_suite(data: &WeakLie2Data, suite: Suite) -> Result<VerificationReport> {
    if suite == Suite::Linfty {
        let mut rep = VerificationReport::new("linfty");
        rep.merge(prefixed("weak2", verify_weak_lie2(data)));
        rep.merge(prefixed("graded", verify_graded_weak_lie2(&data.to_graded())));
        return Ok(rep.finalize());
    }
    if suite == Suite::All {
        let mut rep = VerificationReport::new("all");
        for sub in [
            Suite::Linfty,
            Suite::Qp,
            Suite::Thm31,
            Suite::Thm36,
            Suite::Coadjoint,
            Suite::Qlb,
            Suite::Thm52,
            Suite::Prop53,
            Suite::Prop58,
            Suite::Thm59,
        ] {
            rep.merge(prefixed(sub.token(), model_suite(data, sub)?));
        }
        return Ok(rep.finalize());
    }
    let alg = Lie2Algebra::new(data.clone())?;
    let model = build_qp(&alg)?;
    let rep = match suite {
        Suite::Qp => verify_qp_axioms(&model)?,
        Suite::Thm31 => verify_mult_form_lie2(&model)?,
        Suite::Thm36 => verify_mult_form_graded_lie2(&model)?,
        Suite::Coadjoint => {
            let mut rep = VerificationReport::new("coadjoint");
            rep.merge(prefixed("sharp", verify_sharp_morphism(&model)?));
            rep.merge(prefixed("diagram", coadjoint_diagram(&alg)?.report));
            rep.finalize()
        }
        Suite::Thm59 => verify_thm59_510(&model)?,
        Suite::Qlb => verify_qlb(&model_to_qlb(&model)?),
        Suite::Thm52 => verify_thm52(&model_to_qlb(&model)?)?,
        Suite::Prop53 => psi_morphism(&model_to_qlb(&model)?)?,
        Suite::Prop58 => verify_prop58(&model_to_qlb(&model)?)?,
        Suite::Linfty | Suite::All => unreachable!(),
    };
    Ok(rep)
}

fn qlb_suite(q: &PolyQuasiLieBialgebroid, suite: Suite) -> Result<VerificationReport> {
    match suite {
        Suite::Qlb => Ok(verify_qlb(q)),
        Suite::Thm52 => verify_thm52(q),
        Suite::Prop53 => psi_morphism(q),
        Suite::Prop58 => verify_prop58(q),
        Suite::All => {
            let mut rep = VerificationReport::new("all");
            rep.merge(prefixed("qlb", verify_qlb(q)));
            rep.merge(prefixed("thm52", verify_thm52(q)?));
            rep.merge(prefixed("prop53", psi_morphism(q)?));
            rep.merge(prefixed("prop58", verify_prop58(q)?));
            Ok(rep.finalize())
        }
        other => Err(schema(format!(
            "suite `{}` does not apply to a bialgebroid input",
            other.token()
        ))),
    }
}

/// Verify a serialized quasi-Poisson model: the bivector is multiplicative,
/// the trisection is a section tensor, the curvature identity holds, and the
/// bivector is compatible with the right lift.
fn tensor_qp_report(def: &TensorDef) -> Result<VerificationReport> {
    let rows = def
        .d
        .as_ref()
        .ok_or_else(|| schema("tensor verification requires the action matrix `d`"))?;
    let p = rows.len();
    let q = rows.first().map_or(0, |r| r.len());
    let d = parse_matrix(rows, p, q)?;
    let gpd = build_groupoid(&d)?;
    if gpd.chart_g().coordinates() != def.chart.coordinates {
        return Err(schema(format!(
            "chart coordinates must match the groupoid of `d`: expected {:?}",
            gpd.chart_g().coordinates()
        )));
    }
    let lookup = |name: &str| {
        def.tensors
            .iter()
            .find(|t| t.name == name)
            .ok_or_else(|| schema(format!("missing tensor `{name}`")))
    };
    let biv = parse_tensor(gpd.chart_g(), lookup("bivector")?)?;
    let phi = parse_tensor(gpd.chart_g(), lookup("phi")?)?;

    let mut rep = VerificationReport::new("qp_model");
    let mc = gpd.is_multiplicative_tensor(&biv)?;
    rep.record("bivector-multiplicative", "P is a multiplicative bivector", mc.ok, || mc.witness);
    let sec = validate_section(&gpd, &phi);
    let sec_err = sec.as_ref().err().map(|e| e.to_string()).unwrap_or_default();
    rep.record("trisection-section", "Φ is a section tensor", sec.is_ok(), || sec_err);
    if sec.is_ok() {
        let left = left_invariant(&gpd, &phi)?;
        let right = right_invariant(&gpd, &phi)?;
        let defect = curvature(&biv)?.sub(&right.sub(&left));
        rep.record(
            "schouten-square-equals-lift-difference",
            "−½[P,P] = Φ⃗ − Φ⃖",
            defect.is_zero(),
            || format!("{defect:?}"),
        );
        let compat = schouten(&biv, &right)?;
        rep.record(
            "bivector-compatible-with-right-lift",
            "[P, Φ⃗] = 0",
            compat.is_zero(),
            || format!("{compat:?}"),
        );
    }
    Ok(rep.finalize())
}

/// Build a quasi-Poisson model file from a Lie 2-algebra definition; the
/// construction validates the model axioms before returning.
pub fn qp2group(def: &DefinitionFile) -> Result<DefinitionFile> {
    let data = match def {
        DefinitionFile::Lie2Algebra(d) => d.to_weak_lie2()?,
        DefinitionFile::WeakLie2(d) => d.to_data()?,
        _ => {
            return Err(schema(
                "qp2group expects a `lie2algebra` or `weak_lie2` definition",
            ))
        }
    };
    let alg = Lie2Algebra::new(data)?;
    let model = build_qp(&alg)?;
    Ok(DefinitionFile::Tensor(TensorDef::from_model(&model)))
}

// ---------------------------------------------------------------------------
// Example corpus
// ---------------------------------------------------------------------------

/// Sorted names of the built-in examples.
pub const CORPUS: &[&str] = &[
    "abelian",
    "abelian_g3_phi",
    "heisenberg3",
    "kks_sl2",
    "sl2",
    "sl2_cartan_qlb",
    "sl2_string_lie2",
];

fn sl2_bracket() -> BTreeMap<(usize, usize), Element> {
    // basis order (h, e, f): [h,e]=2e, [h,f]=−2f, [e,f]=h
    let mut b = BTreeMap::new();
    b.insert((0, 1), vec![rat(0, 1), rat(2, 1), rat(0, 1)]);
    b.insert((0, 2), vec![rat(0, 1), rat(0, 1), rat(-2, 1)]);
    b.insert((1, 2), vec![rat(1, 1), rat(0, 1), rat(0, 1)]);
    b
}

fn sl2_killing() -> RatMatrix {
    RatMatrix::from_i64(&[&[8, 0, 0], &[0, 0, 4], &[0, 4, 0]])
}

pub fn corpus_example(name: &str) -> Option<DefinitionFile> {
    let weak = |w: WeakLie2Data| DefinitionFile::WeakLie2(WeakLie2Def::from_data(&w));
    Some(match name {
        "abelian" => weak(abelian()),
        "abelian_g3_phi" => weak(abelian_g3_phi()),
        "heisenberg3" => weak(heisenberg3()),
        "kks_sl2" => weak(kks_sl2()),
        "sl2" => DefinitionFile::Lie2Algebra(LieAlgebraDef {
            basis: vec!["h".into(), "e".into(), "f".into()],
            bracket: fmt_bracket_map(&sl2_bracket()),
        }),
        "sl2_cartan_qlb" => DefinitionFile::QuasiLieBialgebra(
            QuasiLieBialgebraDef::from_qlb(&point_simple3_volume()).expect("point base"),
        ),
        "sl2_string_lie2" => weak(
            make_string_lie2(&["h", "e", "f"], &sl2_bracket(), &sl2_killing())
                .expect("invariant pairing"),
        ),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_definitions_round_trip_through_json() {
        for name in CORPUS {
            let def = corpus_example(name).unwrap();
            let text = to_json(&def);
            let back = parse_definition(&text).unwrap();
            assert_eq!(text, to_json(&back), "round trip of {name}");
        }
    }

    #[test]
    fn corpus_examples_pass_their_default_suite() {
        for name in CORPUS {
            let def = corpus_example(name).unwrap();
            let rep = run_suite(&def, default_suite(&def)).unwrap();
            for f in rep.failures() {
                eprintln!("{name} failed {}: {:?}", f.id, f.witness);
            }
            assert!(rep.passed(), "{name} fails its default suite");
        }
    }

    #[test]
    fn the_lie_algebra_and_point_models_agree_with_the_library_fixtures() {
        let sl2 = match corpus_example("sl2").unwrap() {
            DefinitionFile::Lie2Algebra(d) => d.to_weak_lie2().unwrap(),
            _ => unreachable!(),
        };
        // same algebra as the v=0 fixture up to a change of basis
        assert_eq!(sl2.dim_v(), 0);
        assert_eq!(sl2.g_basis.len(), kks_sl2().g_basis.len());
        assert_eq!(sl2.bracket2_gg, sl2_bracket());
        let qlb = match corpus_example("sl2_cartan_qlb").unwrap() {
            DefinitionFile::QuasiLieBialgebra(d) => d.to_qlb().unwrap(),
            _ => unreachable!(),
        };
        let oracle = point_simple3_volume();
        assert_eq!(qlb.algebroid.bracket, oracle.algebroid.bracket);
        assert!(verify_qlb(&qlb).passed());
    }

    #[test]
    fn a_corrupted_structure_constant_fails_verification() {
        let mut def = match corpus_example("sl2_string_lie2").unwrap() {
            DefinitionFile::WeakLie2(d) => d,
            _ => unreachable!(),
        };
        def.bracket2_gg.get_mut("0,1").unwrap()[1] = "3".into();
        let rep = run_suite(&DefinitionFile::WeakLie2(def), Suite::Linfty).unwrap();
        assert!(!rep.passed());
    }

    #[test]
    fn constructed_models_verify_as_tensor_files() {
        let def = corpus_example("heisenberg3").unwrap();
        let model = qp2group(&def).unwrap();
        let rep = run_suite(&model, Suite::Qp).unwrap();
        assert!(rep.passed(), "{}", rep.render_text());
        let rt = parse_definition(&to_json(&model)).unwrap();
        assert!(run_suite(&rt, default_suite(&rt)).unwrap().passed());
    }

    #[test]
    fn dimension_mismatches_are_schema_errors() {
        let mut def = match corpus_example("abelian_g3_phi").unwrap() {
            DefinitionFile::WeakLie2(d) => d,
            _ => unreachable!(),
        };
        def.d.pop();
        assert!(matches!(
            run_suite(&DefinitionFile::WeakLie2(def), Suite::Linfty),
            Err(Error::Schema(_))
        ));
    }
}
