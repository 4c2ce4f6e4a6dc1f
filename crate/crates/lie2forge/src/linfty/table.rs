use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::symcore::Rational;

use super::basis::{element_is_zero, sort_key_with_chi, Element, GradedBasis};

/// Structure constants of one k-ary bracket on a graded basis. Entries are
/// stored under canonical (sorted) index keys; lookups under permuted keys
/// pick up the Koszul sign χ of the permutation, and lookups with a repeated
/// even-degree index return zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BracketTable {
    arity: usize,
    entries: BTreeMap<Vec<usize>, Element>,
}

impl BracketTable {
    pub fn new(arity: usize) -> BracketTable {
        BracketTable { arity, entries: BTreeMap::new() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Element)> {
        self.entries.iter()
    }

    /// Insert an entry under a possibly non-canonical key; the stored value
    /// picks up the Koszul sign of the sorting permutation.
    pub fn insert(&mut self, key: &[usize], value: Element, basis: &GradedBasis) -> Result<()> {
        if key.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: key.len() });
        }
        let degrees: Vec<i64> = (0..basis.dim()).map(|i| basis.degree(i)).collect();
        let Some((canon, chi)) = sort_key_with_chi(key, &degrees) else {
            if element_is_zero(&value) {
                return Ok(());
            }
            return Err(Error::Schema(format!(
                "nonzero bracket entry on a repeated even-degree index: {key:?}"
            )));
        };
        let signed: Element = value.iter().map(|c| c * &chi).collect();
        if element_is_zero(&signed) {
            self.entries.remove(&canon);
        } else {
            self.entries.insert(canon, signed);
        }
        Ok(())
    }

    /// Look up the bracket value on a (possibly permuted) basis tuple.
    pub fn get(&self, key: &[usize], basis: &GradedBasis) -> Element {
        let degrees: Vec<i64> = (0..basis.dim()).map(|i| basis.degree(i)).collect();
        match sort_key_with_chi(key, &degrees) {
            None => basis.zero_element(),
            Some((canon, chi)) => match self.entries.get(&canon) {
                None => basis.zero_element(),
                Some(v) => v.iter().map(|c| c * &chi).collect(),
            },
        }
    }

    /// Every entry's output degree must equal the input degrees summed plus
    /// (2 − arity). Returns the offending key on violation.
    pub fn check_degree_homogeneity(&self, basis: &GradedBasis) -> Option<Vec<usize>> {
        for (key, value) in &self.entries {
            let expected: i64 =
                key.iter().map(|&i| basis.degree(i)).sum::<i64>() + 2 - self.arity as i64;
            for (out_idx, c) in value.iter().enumerate() {
                if !c.is_zero() && basis.degree(out_idx) != expected {
                    return Some(key.clone());
                }
            }
        }
        None
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Add `delta` to the coefficient of output `out_idx` on canonical key
    /// `key` (used by mutation-sensitivity tests).
    pub fn perturb(&mut self, key: &[usize], out_idx: usize, delta: Rational, basis: &GradedBasis) {
        let mut v = self.get(key, basis);
        v[out_idx] = &v[out_idx] + &delta;
        self.insert(key, v, basis).expect("perturb insert");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::rat;

    fn sl2_basis() -> GradedBasis {
        GradedBasis::new(vec![("h".into(), 0), ("e".into(), 0), ("f".into(), 0)])
    }

    /// sl2: [h,e]=2e, [h,f]=−2f, [e,f]=h; permuted lookup flips sign.
    #[test]
    fn permuted_lookup_carries_sign() {
        let b = sl2_basis();
        let mut t = BracketTable::new(2);
        t.insert(&[0, 1], vec![rat(0, 1), rat(2, 1), rat(0, 1)], &b).unwrap();
        t.insert(&[0, 2], vec![rat(0, 1), rat(0, 1), rat(-2, 1)], &b).unwrap();
        t.insert(&[1, 2], vec![rat(1, 1), rat(0, 1), rat(0, 1)], &b).unwrap();
        assert_eq!(t.get(&[1, 0], &b), vec![rat(0, 1), rat(-2, 1), rat(0, 1)]);
        assert_eq!(t.get(&[0, 0], &b), b.zero_element());
    }

    #[test]
    fn degree_homogeneity_detects_bad_entry() {
        let b = GradedBasis::new(vec![("u".into(), -1), ("x".into(), 0)]);
        let mut t = BracketTable::new(2);
        // [x, u] must land in degree −1; sending it to x violates homogeneity
        t.insert(&[1, 0], vec![rat(0, 1), rat(1, 1)], &b).unwrap();
        assert!(t.check_degree_homogeneity(&b).is_some());
    }
}
