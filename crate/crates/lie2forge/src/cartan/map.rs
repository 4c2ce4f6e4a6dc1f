use crate::error::{Error, Result};
use crate::symcore::{Chart, Polynomial};

use super::tensor::PolyTensor;

/// Polynomial map between charts, given by one image polynomial (on the
/// source chart) per target coordinate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMap {
    source: Chart,
    target: Chart,
    images: Vec<Polynomial>,
}

impl PolyMap {
    pub fn new(source: &Chart, target: &Chart, images: Vec<Polynomial>) -> Result<PolyMap> {
        if images.len() != target.dim() {
            return Err(Error::ArityMismatch { expected: target.dim(), got: images.len() });
        }
        for p in &images {
            if p.chart() != source {
                return Err(Error::ChartMismatch {
                    expected: source.name().to_string(),
                    got: p.chart().name().to_string(),
                });
            }
        }
        Ok(PolyMap { source: source.clone(), target: target.clone(), images })
    }

    pub fn identity(chart: &Chart) -> PolyMap {
        let images = (0..chart.dim()).map(|i| Polynomial::coordinate(chart, i)).collect();
        PolyMap::new(chart, chart, images).expect("identity map")
    }

    pub fn source(&self) -> &Chart {
        &self.source
    }

    pub fn target(&self) -> &Chart {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// Substitution along the map's images, keeping the result on the source
    /// chart even when the target chart has dimension 0 (in which case the
    /// generic substitute has no image to read the chart from).
    fn sub_images(&self, f: &Polynomial) -> Result<Polynomial> {
        if self.images.is_empty() {
            return Ok(Polynomial::constant(&self.source, f.constant_term()));
        }
        f.substitute(&self.images)
    }

    /// Pullback of a function on the target: f ∘ φ.
    pub fn pull_function(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.chart() != &self.target {
            return Err(Error::ChartMismatch {
                expected: self.target.name().to_string(),
                got: f.chart().name().to_string(),
            });
        }
        self.sub_images(f)
    }

    /// Composition ψ ∘ self (apply self first).
    pub fn then(&self, psi: &PolyMap) -> Result<PolyMap> {
        if psi.source != self.target {
            return Err(Error::ChartMismatch {
                expected: self.target.name().to_string(),
                got: psi.source.name().to_string(),
            });
        }
        let images: Vec<Polynomial> =
            psi.images.iter().map(|p| self.sub_images(p)).collect::<Result<_>>()?;
        PolyMap::new(&self.source, &psi.target, images)
    }

    /// Maps agree iff all image polynomials agree.
    pub fn equals(&self, other: &PolyMap) -> bool {
        self.source == other.source && self.target == other.target && self.images == other.images
    }

    /// ∂φ_j/∂x_i on the source chart.
    pub fn jacobian_entry(&self, j: usize, i: usize) -> Polynomial {
        self.images[j].partial(i)
    }

    /// Pullback of a form: coefficient substitution composed with the
    /// differential of φ.
    pub fn pullback(&self, omega: &PolyTensor) -> Result<PolyTensor> {
        if !omega.is_form() {
            return Err(Error::MixedVariance("pullback wants a form".into()));
        }
        if omega.chart() != &self.target {
            return Err(Error::ChartMismatch {
                expected: self.target.name().to_string(),
                got: omega.chart().name().to_string(),
            });
        }
        let mut out = PolyTensor::zero(&self.source, 0, omega.l());
        for (key, c) in omega.components() {
            // (c∘φ) · dφ_{m1} ∧ … ∧ dφ_{mp}
            let mut acc: Vec<(Vec<usize>, Polynomial)> =
                vec![(Vec::new(), self.sub_images(c)?)];
            for &m in &key.down {
                let mut next = Vec::new();
                for (idx, coeff) in &acc {
                    for i in 0..self.source.dim() {
                        let dj = self.jacobian_entry(m, i);
                        if dj.is_zero() {
                            continue;
                        }
                        let mut idx2 = idx.clone();
                        idx2.push(i);
                        next.push((idx2, coeff.try_mul(&dj)?));
                    }
                }
                acc = next;
            }
            for (idx, coeff) in acc {
                out.add_component(&[], &idx, coeff);
            }
        }
        Ok(out)
    }

    /// Pushforward of a multivector along self, with the inverse map supplied
    /// (used for invertible affine maps like groupoid inversion):
    /// (φ_* X)|_y = Λ^k(Dφ)|_{ψ(y)} X(ψ(y)).
    pub fn pushforward_multivector(&self, x: &PolyTensor, inverse: &PolyMap) -> Result<PolyTensor> {
        if !x.is_multivector() {
            return Err(Error::MixedVariance("pushforward wants a multivector".into()));
        }
        if x.chart() != &self.source || inverse.source != self.target || inverse.target != self.source
        {
            return Err(Error::ChartMismatch {
                expected: self.source.name().to_string(),
                got: x.chart().name().to_string(),
            });
        }
        // φ_* ∂_i = Σ_j (∂φ_j/∂x_i ∘ ψ) ∂_j, as vector fields on the target
        let dim_s = self.source.dim();
        let dim_t = self.target.dim();
        let mut pushed_basis: Vec<PolyTensor> = Vec::with_capacity(dim_s);
        for i in 0..dim_s {
            let mut v = PolyTensor::zero(&self.target, 1, 0);
            for j in 0..dim_t {
                let entry = self.jacobian_entry(j, i).substitute(&inverse.images)?;
                if !entry.is_zero() {
                    v.add_component(&[j], &[], entry);
                }
            }
            pushed_basis.push(v);
        }
        let mut out = PolyTensor::zero(&self.target, x.k(), 0);
        for (key, c) in x.components() {
            let mut acc = PolyTensor::from_function(c.substitute(&inverse.images)?);
            for &i in &key.up {
                acc = acc.wedge(&pushed_basis[i])?;
            }
            out = out.add(&acc);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::exterior_derivative;

    #[test]
    fn pullback_along_identity() {
        let ch = Chart::new("plane", &["x1", "x2"]);
        let omega = PolyTensor::coordinate_form(&ch, 0)
            .scale_poly(&Polynomial::coordinate(&ch, 1));
        let id = PolyMap::identity(&ch);
        assert_eq!(id.pullback(&omega).unwrap(), omega);
    }

    #[test]
    fn pullback_commutes_with_d() {
        // φ(g,m) = (m) — a source-map shape
        let gm = Chart::new("gm", &["g1", "m1"]);
        let m = Chart::new("m", &["m1"]);
        let s = PolyMap::new(&gm, &m, vec![Polynomial::coordinate(&gm, 1)]).unwrap();
        let f = Polynomial::coordinate(&m, 0);
        let omega = PolyTensor::coordinate_form(&m, 0).scale_poly(&(&f * &f));
        let lhs = exterior_derivative(&s.pullback(&omega).unwrap()).unwrap();
        let rhs = s.pullback(&exterior_derivative(&omega).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
