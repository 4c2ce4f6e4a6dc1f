use num_traits::Zero;

use crate::symcore::{format_rational, Rational};

/// Ordered basis of a finite-dimensional graded vector space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedBasis {
    elements: Vec<(String, i64)>,
}

impl GradedBasis {
    pub fn new(elements: Vec<(String, i64)>) -> GradedBasis {
        let mut seen = std::collections::HashSet::new();
        for (name, _) in &elements {
            assert!(seen.insert(name.clone()), "duplicate basis name `{name}`");
        }
        GradedBasis { elements }
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i].0
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.elements[i].1
    }

    pub fn zero_element(&self) -> Element {
        vec![Rational::zero(); self.dim()]
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut e = self.zero_element();
        e[i] = num_traits::One::one();
        e
    }

    /// Render a coefficient vector over this basis, e.g. `2*e1 - 1/2*e3`.
    pub fn render(&self, e: &Element) -> String {
        let mut parts = Vec::new();
        for (i, c) in e.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!("{}*{}", format_rational(c), self.name(i)));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Coefficient vector over a `GradedBasis`.
pub type Element = Vec<Rational>;

pub fn element_is_zero(e: &Element) -> bool {
    e.iter().all(Zero::is_zero)
}

pub fn element_add(a: &Element, b: &Element) -> Element {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn element_sub(a: &Element, b: &Element) -> Element {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn element_scale(a: &Element, s: &Rational) -> Element {
    a.iter().map(|x| x * s).collect()
}

/// Koszul-signed symmetrization data: sort `indices` ascending, accumulating
/// the sign χ of the permutation on elements with the given degrees.
/// Each adjacent transposition of elements with degrees d₁,d₂ contributes
/// −(−1)^{d₁d₂}; on all-even degrees χ reduces to the ordinary sgn.
/// Returns None when a repeated index has even degree (the bracket entry
/// vanishes by graded skew-symmetry).
pub fn sort_key_with_chi(indices: &[usize], degrees: &[i64]) -> Option<(Vec<usize>, Rational)> {
    let mut idx = indices.to_vec();
    let mut sign = Rational::from_integer(1.into());
    let n = idx.len();
    for i in 1..n {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            let (d1, d2) = (degrees[idx[j - 1]], degrees[idx[j]]);
            let swap = if (d1 * d2) % 2 == 0 { -1 } else { 1 };
            sign = sign * Rational::from_integer(swap.into());
            idx.swap(j - 1, j);
            j -= 1;
        }
    }
    for w in idx.windows(2) {
        if w[0] == w[1] && degrees[w[0]] % 2 == 0 {
            return None;
        }
    }
    Some((idx, sign))
}

/// χ(σ; x) for an arrangement: the Koszul-signed sign of the permutation
/// `perm` (a rearrangement of 0..n) acting on elements whose degrees at the
/// *original* positions are `degrees`. perm[k] = original position of the
/// element now in slot k.
pub fn chi_of_arrangement(perm: &[usize], degrees: &[i64]) -> Rational {
    let mut p = perm.to_vec();
    let mut sign = 1i64;
    let n = p.len();
    for i in 1..n {
        let mut j = i;
        while j > 0 && p[j - 1] > p[j] {
            let (d1, d2) = (degrees[p[j - 1]], degrees[p[j]]);
            if (d1 * d2) % 2 == 0 {
                sign = -sign;
            }
            p.swap(j - 1, j);
            j -= 1;
        }
    }
    Rational::from_integer(sign.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_is_sgn_on_even_degrees() {
        // all degrees even: χ = sgn
        let d = vec![0, 0, 0];
        assert_eq!(chi_of_arrangement(&[0, 1, 2], &d), Rational::from_integer(1.into()));
        assert_eq!(chi_of_arrangement(&[1, 0, 2], &d), Rational::from_integer((-1).into()));
        assert_eq!(chi_of_arrangement(&[1, 2, 0], &d), Rational::from_integer(1.into()));
    }

    #[test]
    fn chi_is_plus_one_on_odd_odd_transposition() {
        // transposing two odd elements contributes +1
        let d = vec![-1, -1];
        assert_eq!(chi_of_arrangement(&[1, 0], &d), Rational::from_integer(1.into()));
    }

    #[test]
    fn repeated_even_index_kills_entry() {
        assert!(sort_key_with_chi(&[2, 2], &[0, 0, 0]).is_none());
        // repeated odd index survives with sign +1
        let (k, s) = sort_key_with_chi(&[1, 1], &[0, -1]).unwrap();
        assert_eq!(k, vec![1, 1]);
        assert_eq!(s, Rational::from_integer(1.into()));
    }
}
