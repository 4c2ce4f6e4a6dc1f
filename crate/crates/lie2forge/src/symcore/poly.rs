use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{format_rational, Chart, Rational};
use crate::error::{Error, Result};

/// Exponent tuple, one entry per chart coordinate. Ordered graded-lex so that
/// canonical term tables and printed output are deterministic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn unit(dim: usize) -> Monomial {
        Monomial(vec![0; dim])
    }

    pub fn var(dim: usize, i: usize) -> Monomial {
        let mut e = vec![0; dim];
        e[i] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over exact rationals on a fixed chart.
/// Canonical form: no zero coefficients are ever stored, so structural
/// equality is mathematical equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    chart: Chart,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(chart: &Chart) -> Polynomial {
        Polynomial { chart: chart.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(chart: &Chart, c: Rational) -> Polynomial {
        let mut p = Polynomial::zero(chart);
        p.add_term(Monomial::unit(chart.dim()), c);
        p
    }

    pub fn one(chart: &Chart) -> Polynomial {
        Polynomial::constant(chart, Rational::one())
    }

    /// The i-th coordinate function.
    pub fn coordinate(chart: &Chart, i: usize) -> Polynomial {
        assert!(i < chart.dim(), "coordinate index out of range");
        let mut p = Polynomial::zero(chart);
        p.add_term(Monomial::var(chart.dim(), i), Rational::one());
        p
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::unit(self.chart.dim()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Accumulate `c · m` into the term table, dropping zeros.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.0.len(), self.chart.dim());
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_chart(&self, other: &Polynomial) -> Result<()> {
        if self.chart != other.chart {
            return Err(Error::ChartMismatch {
                expected: self.chart.name().to_string(),
                got: other.chart.name().to_string(),
            });
        }
        Ok(())
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.chart);
        }
        Polynomial {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_chart(other)?;
        let mut out = Polynomial::zero(&self.chart);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_chart(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// ∂p/∂xᵢ.
    pub fn partial(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.chart);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut m2 = m.clone();
                m2.0[i] = e - 1;
                out.add_term(m2, c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Substitute every coordinate by its image (all images on one common
    /// chart). Realizes pullback of functions along polynomial maps.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.chart.dim() {
            return Err(Error::ArityMismatch { expected: self.chart.dim(), got: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.chart().clone(),
            // dimension-0 source chart: the result is the constant term on a
            // dimension-0 target; callers with n=0 pass no images, so fall
            // back to the source chart itself (both are point charts).
            None => self.chart.clone(),
        };
        for p in images {
            if *p.chart() != target {
                return Err(Error::ChartMismatch {
                    expected: target.name().to_string(),
                    got: p.chart().name().to_string(),
                });
            }
        }
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term = term.try_mul(&images[i])?;
                }
            }
            out = out.try_add(&term)?;
        }
        Ok(out)
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.chart.dim() {
            return Err(Error::ArityMismatch { expected: self.chart.dim(), got: point.len() });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        Ok(acc)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("chart mismatch in +")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(&rhs.neg()).expect("chart mismatch in -")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("chart mismatch in *")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // print highest graded-lex terms first
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let cs = format_rational(c);
            let (sign, mag) = match cs.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", cs),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    factors.push(self.chart.coordinate(i).to_string());
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.chart.coordinate(i), e));
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::rat;

    fn chart2() -> Chart {
        Chart::new("plane", &["x1", "x2"])
    }

    #[test]
    fn difference_of_squares() {
        let ch = chart2();
        let x1 = Polynomial::coordinate(&ch, 0);
        let one = Polynomial::one(&ch);
        let prod = &(&x1 + &one) * &(&x1 - &one);
        let expected = &(&x1 * &x1) - &one;
        assert_eq!(prod, expected);
    }

    #[test]
    fn mul_by_zero_annihilates() {
        let ch = chart2();
        let p = &Polynomial::coordinate(&ch, 0) + &Polynomial::one(&ch);
        assert!((&p * &Polynomial::zero(&ch)).is_zero());
    }

    #[test]
    fn rational_coefficient_product() {
        let ch = chart2();
        let x2 = Polynomial::coordinate(&ch, 1);
        let a = x2.scale(&rat(1, 2));
        let b = x2.scale(&rat(2, 3));
        let expected = (&x2 * &x2).scale(&rat(1, 3));
        assert_eq!(&a * &b, expected);
    }

    #[test]
    fn substitute_binomial() {
        // g1^2 with g1 -> h1+g1 on a bigger chart
        let src = Chart::new("g", &["g1"]);
        let dst = Chart::new("hg", &["h1", "g1"]);
        let g1 = Polynomial::coordinate(&src, 0);
        let p = &g1 * &g1;
        let img = &Polynomial::coordinate(&dst, 0) + &Polynomial::coordinate(&dst, 1);
        let q = p.substitute(&[img]).unwrap();
        let h = Polynomial::coordinate(&dst, 0);
        let g = Polynomial::coordinate(&dst, 1);
        let expected = &(&(&h * &h) + &(&h * &g).scale(&rat(2, 1))) + &(&g * &g);
        assert_eq!(q, expected);
    }

    #[test]
    fn partial_derivative() {
        let ch = chart2();
        let x1 = Polynomial::coordinate(&ch, 0);
        let p = &x1 * &x1;
        assert_eq!(p.partial(0), x1.scale(&rat(2, 1)));
        assert!(p.partial(1).is_zero());
    }
}
