//! Normal forms and dimension counts: the classification of multiplicative
//! 1-forms on a linear action groupoid in an adapted basis, the space of
//! bimultiplicative 1-forms and vector fields (multiplicative for both the
//! groupoid structure and the underlying abelian group structure), and the
//! endomorphism pairs intertwining the dual of the structure map.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::cartan::{PolyMap, PolyTensor};
use crate::error::{Error, Result};
use crate::symcore::{Chart, Monomial, Polynomial, RatMatrix, Rational};

use super::groupoid::{is_g_independent, LinearActionGroupoid};
use super::model::to_base;

/// Gauss–Jordan inverse; `None` when the matrix is singular or not square.
pub fn matrix_inverse(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.rows();
    if m.cols() != n {
        return None;
    }
    let mut aug = RatMatrix::zero(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n + i, Rational::one());
    }
    let (r, pivots) = aug.rref();
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    let mut inv = RatMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, r.get(i, n + j).clone());
        }
    }
    Some(inv)
}

/// Any solution of A x = b (free variables set to zero), or `None` when the
/// system is inconsistent.
pub fn solve_linear(a: &RatMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let (rows, cols) = (a.rows(), a.cols());
    assert_eq!(rows, b.len(), "right-hand side length");
    let mut aug = RatMatrix::zero(rows, cols + 1);
    for i in 0..rows {
        for j in 0..cols {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, cols, b[i].clone());
    }
    let (r, pivots) = aug.rref();
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = r.get(row, cols).clone();
    }
    Some(x)
}

/// Coordinates of `v` in the span of `basis` (each a vector of the same
/// length), or `None` when `v` lies outside the span.
pub fn express_in_span(basis: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
    let n = v.len();
    let mut a = RatMatrix::zero(n, basis.len());
    for (j, col) in basis.iter().enumerate() {
        assert_eq!(col.len(), n, "span vector length");
        for i in 0..n {
            a.set(i, j, col[i].clone());
        }
    }
    let x = solve_linear(&a, v)?;
    // verify exactly (solve_linear zero-fills free variables)
    let back = a.apply(&x);
    if back == v { Some(x) } else { None }
}

/// A deterministic basis of the endomorphism pairs (A, B) of 𝔤* ⊕ 𝔳* that
/// intertwine the dual structure map: dᵀ ∘ A = B ∘ dᵀ (the minus signs in dᵀ
/// cancel, leaving Dᵀ A = B Dᵀ on coordinate matrices).
#[derive(Clone, Debug)]
pub struct End0Basis {
    pub dim_g: usize,
    pub dim_v: usize,
    /// pairs (A: p×p on 𝔤*, B: q×q on 𝔳*)
    pub pairs: Vec<(RatMatrix, RatMatrix)>,
}

impl End0Basis {
    pub fn dim(&self) -> usize {
        self.pairs.len()
    }

    /// Flattened coordinates (row-major A then row-major B) of one basis pair.
    fn flat(pair: &(RatMatrix, RatMatrix)) -> Vec<Rational> {
        let mut v = Vec::new();
        for i in 0..pair.0.rows() {
            for j in 0..pair.0.cols() {
                v.push(pair.0.get(i, j).clone());
            }
        }
        for i in 0..pair.1.rows() {
            for j in 0..pair.1.cols() {
                v.push(pair.1.get(i, j).clone());
            }
        }
        v
    }

    /// Coordinates of an intertwining pair in this basis; `None` when the
    /// pair does not lie in the span (i.e. is not an intertwiner).
    pub fn express(&self, a: &RatMatrix, b: &RatMatrix) -> Option<Vec<Rational>> {
        let cols: Vec<Vec<Rational>> = self.pairs.iter().map(End0Basis::flat).collect();
        express_in_span(&cols, &End0Basis::flat(&(a.clone(), b.clone())))
    }
}

/// Solves Dᵀ A = B Dᵀ for (A, B); unknowns are A row-major (p² of them)
/// followed by B row-major (q²).
pub fn compute_end0(d: &RatMatrix) -> End0Basis {
    let (p, q) = (d.rows(), d.cols());
    let unknowns = p * p + q * q;
    // constraint rows indexed by (j, b) ∈ 𝔳* × 𝔤*:
    //   Σ_a D[a][j] A[a][b] − Σ_k B[j][k] D[b][k] = 0
    let mut sys = RatMatrix::zero(q * p, unknowns);
    for j in 0..q {
        for b in 0..p {
            let row = j * p + b;
            for a in 0..p {
                sys.set(row, a * p + b, d.get(a, j).clone());
            }
            for k in 0..q {
                let cur = sys.get(row, p * p + j * q + k).clone();
                sys.set(row, p * p + j * q + k, cur - d.get(b, k).clone());
            }
        }
    }
    let pairs = sys
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut a = RatMatrix::zero(p, p);
            let mut b = RatMatrix::zero(q, q);
            for i in 0..p {
                for j in 0..p {
                    a.set(i, j, v[i * p + j].clone());
                }
            }
            for i in 0..q {
                for j in 0..q {
                    b.set(i, j, v[p * p + i * q + j].clone());
                }
            }
            (a, b)
        })
        .collect();
    End0Basis { dim_g: p, dim_v: q, pairs }
}

/// Adapted bases for the classification: `u_cols` (q×q, invertible) has the
/// coordinate vectors of the pivot columns of D first and a kernel basis
/// after them; `s_cols` (p×p, invertible) has the pivot columns of D first,
/// completed greedily by standard basis vectors.
fn adapted_bases(d: &RatMatrix) -> (usize, RatMatrix, RatMatrix) {
    let (p, q) = (d.rows(), d.cols());
    let (_, pivots) = d.rref();
    let r = pivots.len();
    let mut u = RatMatrix::zero(q, q);
    for (i, &c) in pivots.iter().enumerate() {
        u.set(c, i, Rational::one());
    }
    for (i, n) in d.nullspace().into_iter().enumerate() {
        for (row, val) in n.into_iter().enumerate() {
            u.set(row, r + i, val);
        }
    }
    let mut s_columns: Vec<Vec<Rational>> = pivots
        .iter()
        .map(|&c| (0..p).map(|row| d.get(row, c).clone()).collect())
        .collect();
    for a in 0..p {
        if s_columns.len() == p {
            break;
        }
        let mut cand: Vec<Rational> = vec![Rational::zero(); p];
        cand[a] = Rational::one();
        let mut probe = RatMatrix::zero(p, s_columns.len() + 1);
        for (j, col) in s_columns.iter().chain(std::iter::once(&cand)).enumerate() {
            for i in 0..p {
                probe.set(i, j, col[i].clone());
            }
        }
        if probe.rank() == s_columns.len() + 1 {
            s_columns.push(cand);
        }
    }
    let mut s = RatMatrix::zero(p, p);
    for (j, col) in s_columns.iter().enumerate() {
        for i in 0..p {
            s.set(i, j, col[i].clone());
        }
    }
    (r, s, u)
}

/// The classification data of a multiplicative 1-form in the adapted bases:
/// `mu` are the base functions pairing the image-of-d directions, `alpha`
/// the invariant base functions on the complement, and `beta` the
/// multiplicative functions valued in the kernel directions.
#[derive(Clone, Debug, PartialEq)]
pub struct MultFormData {
    pub rank: usize,
    pub mu: Vec<Polynomial>,
    pub alpha: Vec<Polynomial>,
    pub beta: Vec<Polynomial>,
}

fn is_multiplicative_function(gpd: &LinearActionGroupoid, f: &Polynomial) -> Result<bool> {
    let lhs = gpd.multiplication().pull_function(f)?;
    let rhs =
        &gpd.pr1().pull_function(f)? + &gpd.pr2().pull_function(f)?;
    Ok(lhs == rhs)
}

/// Decomposes a multiplicative 1-form on the total space into its
/// classification data; errors with a witness when the form is not
/// multiplicative.
pub fn classify_mult_1form(
    gpd: &LinearActionGroupoid,
    theta: &PolyTensor,
) -> Result<MultFormData> {
    if !theta.is_form() || theta.l() != 1 || theta.chart() != gpd.chart_g() {
        return Err(Error::DegreeViolation("classification wants a 1-form on the total space".into()));
    }
    let (p, q) = (gpd.dim_g(), gpd.dim_v());
    let (r, s_mat, u_mat) = adapted_bases(gpd.d());
    let s_inv = matrix_inverse(&s_mat).expect("adapted basis is invertible");
    let u_inv = if q > 0 {
        matrix_inverse(&u_mat).expect("adapted basis is invertible")
    } else {
        RatMatrix::zero(0, 0)
    };
    let ch = gpd.chart_g();
    let comp = |i: usize| theta.component(&[], &[i]);
    // coefficients in the adapted bases: a' = S⁻¹·(dg-coefficients),
    // c' = U⁻¹·(dm-coefficients)
    let aprime: Vec<Polynomial> = (0..p)
        .map(|i| {
            (0..p).fold(Polynomial::zero(ch), |acc, a| {
                &acc + &comp(a).scale(s_inv.get(i, a))
            })
        })
        .collect();
    let cprime: Vec<Polynomial> = (0..q)
        .map(|i| {
            (0..q).fold(Polynomial::zero(ch), |acc, j| {
                &acc + &comp(p + j).scale(u_inv.get(i, j))
            })
        })
        .collect();
    let bad = |what: &str, w: &Polynomial| {
        Err(Error::NotMultiplicative(format!("{what}; defect {w}")))
    };
    let mut mu = Vec::with_capacity(r);
    for i in 0..r {
        // paired components: the dg-side must be t*μ and the dm-side s*μ − t*μ
        let at_units = super::model::restrict_units(gpd, &aprime[i])?;
        if !is_g_independent(&at_units, p) {
            return bad("image-direction coefficient not determined on units", &aprime[i]);
        }
        let mu_i = to_base(gpd, &at_units)?;
        let t_mu = gpd.target().pull_function(&mu_i)?;
        let s_mu = gpd.source().pull_function(&mu_i)?;
        let d1 = &aprime[i] - &t_mu;
        if !d1.is_zero() {
            return bad("image-direction coefficient is not a target pullback", &d1);
        }
        let d2 = &cprime[i] - &(&s_mu - &t_mu);
        if !d2.is_zero() {
            return bad("kernel-pairing coefficient mismatch", &d2);
        }
        mu.push(mu_i);
    }
    let mut alpha = Vec::with_capacity(p - r);
    for a in aprime.iter().skip(r) {
        if !is_g_independent(a, p) {
            return bad("complement coefficient depends on the fiber", a);
        }
        let a_base = to_base(gpd, a)?;
        let inv_defect =
            &gpd.target().pull_function(&a_base)? - &gpd.source().pull_function(&a_base)?;
        if !inv_defect.is_zero() {
            return bad("complement coefficient is not action-invariant", &inv_defect);
        }
        alpha.push(a_base);
    }
    let mut beta = Vec::with_capacity(q - r);
    for c in cprime.iter().skip(r) {
        if !is_multiplicative_function(gpd, c)? {
            return bad("kernel-direction coefficient is not a multiplicative function", c);
        }
        beta.push(c.clone());
    }
    Ok(MultFormData { rank: r, mu, alpha, beta })
}

/// Inverse of [`classify_mult_1form`]: rebuilds the 1-form exactly from its
/// classification data.
pub fn reconstruct_mult_1form(
    gpd: &LinearActionGroupoid,
    data: &MultFormData,
) -> Result<PolyTensor> {
    let (p, q) = (gpd.dim_g(), gpd.dim_v());
    let (r, s_mat, u_mat) = adapted_bases(gpd.d());
    if data.rank != r || data.mu.len() != r || data.alpha.len() != p - r || data.beta.len() != q - r
    {
        return Err(Error::DimensionMismatch(format!(
            "classification data sized for rank {} on a groupoid of rank {r}",
            data.rank
        )));
    }
    let ch = gpd.chart_g();
    let mut aprime: Vec<Polynomial> = Vec::with_capacity(p);
    let mut cprime: Vec<Polynomial> = Vec::with_capacity(q);
    for mu_i in &data.mu {
        aprime.push(gpd.target().pull_function(mu_i)?);
    }
    for al in &data.alpha {
        aprime.push(gpd.source().pull_function(al)?);
    }
    for mu_i in &data.mu {
        cprime
            .push(&gpd.source().pull_function(mu_i)? - &gpd.target().pull_function(mu_i)?);
    }
    for be in &data.beta {
        cprime.push(be.clone());
    }
    let mut theta = PolyTensor::zero(ch, 0, 1);
    for a in 0..p {
        let coeff = (0..p).fold(Polynomial::zero(ch), |acc, i| {
            &acc + &aprime[i].scale(s_mat.get(a, i))
        });
        theta.add_component(&[], &[a], coeff);
    }
    for j in 0..q {
        let coeff = (0..q).fold(Polynomial::zero(ch), |acc, i| {
            &acc + &cprime[i].scale(u_mat.get(j, i))
        });
        theta.add_component(&[], &[p + j], coeff);
    }
    Ok(theta)
}

/// All monomials on a chart of total degree ≤ `max_degree`, in deterministic
/// order.
fn monomials_up_to(dim: usize, max_degree: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::unit(dim)];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for m in &out {
            for i in 0..dim {
                let mut e = m.0.clone();
                e[i] += 1;
                next.push(Monomial(e));
            }
        }
        out.extend(next);
        out.sort();
        out.dedup();
    }
    out.sort();
    out
}

/// The abelian group structure on the total space: a doubled chart, the
/// addition map and the two projections.
struct GroupStructure {
    add: PolyMap,
    proj1: PolyMap,
    proj2: PolyMap,
}

fn group_structure(gpd: &LinearActionGroupoid) -> Result<GroupStructure> {
    let ch = gpd.chart_g();
    let n = ch.dim();
    let mut coords: Vec<String> = (1..=n).map(|i| format!("w{i}")).collect();
    coords.extend(ch.coordinates().iter().cloned());
    let gg = Chart::from_owned("GGadd".to_string(), coords);
    let add_images: Vec<Polynomial> = (0..n)
        .map(|i| &Polynomial::coordinate(&gg, i) + &Polynomial::coordinate(&gg, n + i))
        .collect();
    let p1: Vec<Polynomial> = (0..n).map(|i| Polynomial::coordinate(&gg, i)).collect();
    let p2: Vec<Polynomial> = (0..n).map(|i| Polynomial::coordinate(&gg, n + i)).collect();
    Ok(GroupStructure {
        add: PolyMap::new(&gg, ch, add_images)?,
        proj1: PolyMap::new(&gg, ch, p1)?,
        proj2: PolyMap::new(&gg, ch, p2)?,
    })
}

type RowKey = (u8, usize, Monomial);

fn record_poly(rows: &mut BTreeMap<RowKey, Vec<Rational>>, family: u8, slot: usize, f: &Polynomial, col: usize, n_cols: usize) {
    for (m, c) in f.terms() {
        let entry = rows
            .entry((family, slot, m.clone()))
            .or_insert_with(|| vec![Rational::zero(); n_cols]);
        entry[col] = &entry[col] + c;
    }
}

fn rank_of_rows(rows: BTreeMap<RowKey, Vec<Rational>>) -> usize {
    let mat = RatMatrix::from_rows(rows.into_values().collect());
    if mat.rows() == 0 {
        0
    } else {
        mat.rank()
    }
}

/// Dimension of the space of bimultiplicative 1-forms with polynomial
/// coefficients of total degree ≤ `max_coeff_degree`: the kernel dimension
/// of the combined groupoid- and group-multiplicativity defects on a basis
/// of candidate forms. Group multiplicativity already forces constant
/// coefficients, so degree 1 certifies the full answer.
pub fn bimult_1form_dimension(
    gpd: &LinearActionGroupoid,
    max_coeff_degree: u32,
) -> Result<usize> {
    let ch = gpd.chart_g();
    let n = ch.dim();
    let monos = monomials_up_to(n, max_coeff_degree);
    let n_cols = monos.len() * n;
    let grp = group_structure(gpd)?;
    let mut rows: BTreeMap<RowKey, Vec<Rational>> = BTreeMap::new();
    let mut col = 0;
    for m in &monos {
        for i in 0..n {
            let mut f = Polynomial::zero(ch);
            f.add_term(m.clone(), Rational::one());
            let basis = PolyTensor::coordinate_form(ch, i).scale_poly(&f);
            // groupoid multiplicativity defect on the composable chart
            let d1 = gpd
                .multiplication()
                .pullback(&basis)?
                .sub(&gpd.pr1().pullback(&basis)?)
                .sub(&gpd.pr2().pullback(&basis)?);
            for (key, c) in d1.components() {
                record_poly(&mut rows, 0, key.down[0], c, col, n_cols);
            }
            // group multiplicativity defect on the doubled chart
            let d2 = grp
                .add
                .pullback(&basis)?
                .sub(&grp.proj1.pullback(&basis)?)
                .sub(&grp.proj2.pullback(&basis)?);
            for (key, c) in d2.components() {
                record_poly(&mut rows, 1, key.down[0], c, col, n_cols);
            }
            col += 1;
        }
    }
    Ok(n_cols - rank_of_rows(rows))
}

/// Dimension of the space of bimultiplicative vector fields with polynomial
/// coefficients of total degree ≤ `max_coeff_degree`; equals the dimension
/// of the intertwining endomorphism pairs computed by [`compute_end0`].
pub fn bimult_vecfield_dimension(
    gpd: &LinearActionGroupoid,
    max_coeff_degree: u32,
) -> Result<usize> {
    let ch = gpd.chart_g();
    let (p, q) = (gpd.dim_g(), gpd.dim_v());
    let n = ch.dim();
    let monos = monomials_up_to(n, max_coeff_degree);
    let n_cols = monos.len() * n;
    let grp = group_structure(gpd)?;
    let mut rows: BTreeMap<RowKey, Vec<Rational>> = BTreeMap::new();
    let mut col = 0;
    for m in &monos {
        for i in 0..n {
            let mut f = Polynomial::zero(ch);
            f.add_term(m.clone(), Rational::one());
            // the candidate X = f ∂_i; component a of X is f·δ_{ia}
            let component =
                |a: usize| if a == i { f.clone() } else { Polynomial::zero(ch) };
            // base components must be fiber-independent
            for j in 0..q {
                let c = component(p + j);
                for (mono, coeff) in c.terms() {
                    if mono.0[..p].iter().any(|&e| e > 0) {
                        let entry = rows
                            .entry((0, j, mono.clone()))
                            .or_insert_with(|| vec![Rational::zero(); n_cols]);
                        entry[col] = &entry[col] + coeff;
                    }
                }
            }
            // compatibility of the base component with the action:
            // τ*(X^{m_j}) − X^{m_j} + Σ_a D_{aj} X^{g_a} = 0
            for j in 0..q {
                let mut defect =
                    &gpd.tau().pull_function(&component(p + j))? - &component(p + j);
                for a in 0..p {
                    let c = gpd.d().get(a, j);
                    if !c.is_zero() {
                        defect = &defect + &component(a).scale(c);
                    }
                }
                record_poly(&mut rows, 1, j, &defect, col, n_cols);
            }
            // fiber components are multiplicative functions
            for a in 0..p {
                let g = component(a);
                let defect = &(&gpd.multiplication().pull_function(&g)?
                    - &gpd.pr1().pull_function(&g)?)
                    - &gpd.pr2().pull_function(&g)?;
                record_poly(&mut rows, 2, a, &defect, col, n_cols);
            }
            // group multiplicativity: every component is additive
            for a in 0..n {
                let g = component(a);
                let defect = &(&grp.add.pull_function(&g)? - &grp.proj1.pull_function(&g)?)
                    - &grp.proj2.pull_function(&g)?;
                record_poly(&mut rows, 3, a, &defect, col, n_cols);
            }
            col += 1;
        }
    }
    Ok(n_cols - rank_of_rows(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group2::groupoid::build_groupoid;
    use crate::symcore::rat;

    #[test]
    fn matrix_inverse_and_solve() {
        let m = RatMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = matrix_inverse(&m).unwrap();
        assert_eq!(m.matmul(&inv), RatMatrix::identity(2));
        assert!(matrix_inverse(&RatMatrix::from_i64(&[&[1, 2], &[2, 4]])).is_none());
        let sol = solve_linear(&m, &[rat(3, 1), rat(2, 1)]).unwrap();
        assert_eq!(m.apply(&sol), vec![rat(3, 1), rat(2, 1)]);
        assert!(solve_linear(
            &RatMatrix::from_i64(&[&[1, 2], &[2, 4]]),
            &[rat(1, 1), rat(3, 1)]
        )
        .is_none());
    }

    #[test]
    fn end0_dimensions_match_linear_solve_oracles() {
        // no constraint: all of End(𝔤*) ⊕ End(𝔳*)
        assert_eq!(compute_end0(&RatMatrix::zero(2, 2)).dim(), 8);
        // d: ℝ → ℝ², d(u) = (u, 0): constraints A₁₁ = B, A₁₂ = 0 on 4+1
        // parameters leave 3
        assert_eq!(compute_end0(&RatMatrix::from_i64(&[&[1], &[0]])).dim(), 3);
        // invertible square d: B is determined by A
        assert_eq!(compute_end0(&RatMatrix::from_i64(&[&[2, 1], &[1, 1]])).dim(), 4);
        // surjective d: ℝ² → ℝ
        assert_eq!(compute_end0(&RatMatrix::from_i64(&[&[1, 0]])).dim(), 3);
        // the rank-1 map used by the calibration groupoid
        assert_eq!(compute_end0(&RatMatrix::from_i64(&[&[1], &[0], &[0]])).dim(), 7);
    }

    #[test]
    fn end0_members_intertwine() {
        let d = RatMatrix::from_i64(&[&[1, 0], &[0, 0], &[1, 2]]);
        let basis = compute_end0(&d);
        let dt = d.transpose();
        for (a, b) in &basis.pairs {
            assert_eq!(dt.matmul(a), b.matmul(&dt));
        }
        // and a known intertwiner is expressible in the basis
        let id = (RatMatrix::identity(3), RatMatrix::identity(2));
        assert!(basis.express(&id.0, &id.1).is_some());
        let mut bad = RatMatrix::zero(3, 3);
        bad.set(0, 1, rat(1, 1));
        let dt_a = dt.matmul(&bad);
        if dt_a != RatMatrix::zero(2, 3).matmul(&RatMatrix::zero(3, 3)) {
            assert!(basis.express(&bad, &RatMatrix::zero(2, 2)).is_none());
        }
    }

    fn calib_gpd() -> LinearActionGroupoid {
        build_groupoid(&RatMatrix::from_i64(&[&[1], &[0], &[0]])).unwrap()
    }

    #[test]
    fn classification_round_trip_from_data() {
        let gpd = calib_gpd();
        let chm = gpd.chart_m();
        // rank 1: one μ, two α (must be action-invariant; with d(u)=e₁ the
        // target shifts m, so only constants are invariant), zero β
        let mu = &Polynomial::coordinate(chm, 0) * &Polynomial::coordinate(chm, 0);
        let data = MultFormData {
            rank: 1,
            mu: vec![mu],
            alpha: vec![Polynomial::constant(chm, rat(3, 1)), Polynomial::zero(chm)],
            beta: vec![],
        };
        let theta = reconstruct_mult_1form(&gpd, &data).unwrap();
        assert!(gpd.is_multiplicative_form(&theta).unwrap().ok);
        assert_eq!(classify_mult_1form(&gpd, &theta).unwrap(), data);
    }

    #[test]
    fn classification_round_trip_from_form() {
        let gpd = calib_gpd();
        // J(γ) for a polynomial base form is multiplicative
        let chm = gpd.chart_m();
        let gamma = PolyTensor::coordinate_form(chm, 0)
            .scale_poly(&Polynomial::coordinate(chm, 0));
        let theta = super::super::model::j_form(&gpd, &gamma).unwrap();
        let data = classify_mult_1form(&gpd, &theta).unwrap();
        assert_eq!(reconstruct_mult_1form(&gpd, &data).unwrap(), theta);
        // pure μ-data: no α beyond zero, no β (q = rank here)
        assert_eq!(data.rank, 1);
        assert!(data.beta.is_empty());
        assert!(data.alpha.iter().all(|a| a.is_zero()));
    }

    #[test]
    fn classification_rejects_non_multiplicative_forms() {
        let gpd = calib_gpd();
        let ch = gpd.chart_g();
        for theta in [
            PolyTensor::coordinate_form(ch, 3),
            PolyTensor::coordinate_form(ch, 0).scale_poly(&Polynomial::coordinate(ch, 0)),
        ] {
            assert!(!gpd.is_multiplicative_form(&theta).unwrap().ok);
            assert!(matches!(
                classify_mult_1form(&gpd, &theta),
                Err(Error::NotMultiplicative(_))
            ));
        }
    }

    #[test]
    fn classification_agrees_with_the_direct_test() {
        let gpd = calib_gpd();
        let ch = gpd.chart_g();
        let coeffs = [
            Polynomial::one(ch),
            Polynomial::coordinate(ch, 3),
            Polynomial::coordinate(ch, 0),
            &Polynomial::coordinate(ch, 3) - &Polynomial::coordinate(ch, 0),
        ];
        for i in 0..4 {
            for c in &coeffs {
                let theta = PolyTensor::coordinate_form(ch, i).scale_poly(c);
                let direct = gpd.is_multiplicative_form(&theta).unwrap().ok;
                let via_classification = classify_mult_1form(&gpd, &theta).is_ok();
                assert_eq!(direct, via_classification, "slot {i}, coeff {c}");
            }
        }
    }

    #[test]
    fn kernel_direction_carries_multiplicative_functions() {
        // d = 0 on a 1|1 groupoid: every dm-coefficient must be a
        // multiplicative function; s*ν − t*ν = 0, so β comes from g-linear
        // functions
        let gpd = build_groupoid(&RatMatrix::zero(1, 1)).unwrap();
        let ch = gpd.chart_g();
        let theta =
            PolyTensor::coordinate_form(ch, 1).scale_poly(&Polynomial::coordinate(ch, 0));
        let data = classify_mult_1form(&gpd, &theta).unwrap();
        assert_eq!(data.rank, 0);
        assert_eq!(data.beta.len(), 1);
        assert_eq!(reconstruct_mult_1form(&gpd, &data).unwrap(), theta);
    }

    #[test]
    fn bimultiplicative_form_dimension_is_dim_g() {
        for d in [
            RatMatrix::zero(2, 2),
            RatMatrix::from_i64(&[&[1], &[0]]),
            RatMatrix::from_i64(&[&[1, 0]]),
            RatMatrix::from_i64(&[&[2, 1], &[1, 1]]),
            RatMatrix::from_i64(&[&[1], &[0], &[0]]),
        ] {
            let p = d.rows();
            let gpd = build_groupoid(&d).unwrap();
            assert_eq!(bimult_1form_dimension(&gpd, 1).unwrap(), p, "p={p}");
        }
    }

    #[test]
    fn bimultiplicative_vecfield_dimension_matches_end0() {
        for d in [
            RatMatrix::zero(2, 2),
            RatMatrix::from_i64(&[&[1], &[0]]),
            RatMatrix::from_i64(&[&[1, 0]]),
            RatMatrix::from_i64(&[&[2, 1], &[1, 1]]),
            RatMatrix::from_i64(&[&[1], &[0], &[0]]),
        ] {
            let gpd = build_groupoid(&d).unwrap();
            assert_eq!(
                bimult_vecfield_dimension(&gpd, 1).unwrap(),
                compute_end0(&d).dim()
            );
        }
    }
}
