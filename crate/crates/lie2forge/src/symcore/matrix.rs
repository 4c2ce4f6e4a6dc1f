use std::fmt;

use num_traits::Zero;

use super::Rational;

/// Dense matrix of exact rationals (row-major).
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> RatMatrix {
        RatMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> RatMatrix {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::from_integer(1.into()));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> RatMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        RatMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut out = RatMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn matmul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Reduced row echelon form; returns (rref, pivot column indices).
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..m.cols {
                    let a = m.get(row, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(row, j, b);
                    m.set(p, j, a);
                }
            }
            let inv = m.get(row, col).clone();
            for j in 0..m.cols {
                let v = m.get(row, j) / &inv;
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let f = m.get(r, col).clone();
                    for j in 0..m.cols {
                        let v = m.get(r, j) - &(&f * m.get(row, j));
                        m.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Kernel basis in reduced echelon form with deterministic ordering: one
    /// vector per free column, in increasing free-column order, with a 1 in
    /// the free slot.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut vec = vec![Rational::zero(); self.cols];
            vec[free] = Rational::from_integer(1.into());
            for (prow, &pcol) in pivots.iter().enumerate() {
                vec[pcol] = -r.get(prow, free).clone();
            }
            basis.push(vec);
        }
        basis
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|j| super::format_rational(self.get(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(RatMatrix::identity(3).nullspace().is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let basis = RatMatrix::zero(2, 3).nullspace();
        assert_eq!(basis.len(), 3);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = RatMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let basis = m.nullspace();
        assert_eq!(basis.len(), 3 - m.rank());
        for v in &basis {
            assert!(m.apply(v).iter().all(Zero::is_zero));
        }
    }

    /// Covectors annihilating every bracket of the Heisenberg algebra h3
    /// ([e1,e2]=e3): stack the transposed adjoint maps and take the kernel.
    /// The derived ideal is the 1-dimensional center, so the kernel is 2-dim.
    #[test]
    fn heisenberg_stacked_ad_transpose_kernel() {
        // rows: for each pair (a,b), the coordinates of [e_a, e_b]
        let m = RatMatrix::from_i64(&[
            &[0, 0, 1],  // [e1,e2]=e3
            &[0, 0, 0],  // [e1,e3]=0
            &[0, 0, 0],  // [e2,e3]=0
        ]);
        let basis = m.nullspace();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(m.apply(v).iter().all(Zero::is_zero));
        }
    }
}
