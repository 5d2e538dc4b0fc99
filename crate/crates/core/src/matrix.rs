//! Square matrices of polynomials and their exact determinants.

use crate::error::{Error, Result};
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly>) -> Result<Self> {
        if rows * cols != entries.len() {
            return Err(Error::InvalidParams(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(PolyMatrix { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { rows, cols, entries }
    }

    /// Builds a matrix from column vectors of equal length.
    pub fn from_columns(columns: Vec<Vec<Poly>>) -> Result<Self> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::InvalidParams("ragged columns".into()));
        }
        Ok(PolyMatrix::from_fn(rows, cols, |i, j| columns[j][i].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn swap_columns(&self, a: usize, b: usize) -> PolyMatrix {
        PolyMatrix::from_fn(self.rows, self.cols, |i, j| {
            let j = if j == a {
                b
            } else if j == b {
                a
            } else {
                j
            };
            self.get(i, j).clone()
        })
    }

    fn check_square(&self) -> Result<()> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    /// Fraction-free (Bareiss) elimination. Every intermediate division is
    /// exact in ℚ[η] by Sylvester's identity; a failing division means a bug.
    pub fn determinant(&self) -> Result<Poly> {
        self.check_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::one());
        }
        let mut a: Vec<Vec<Poly>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut negate = false;
        let mut prev = Poly::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        negate = !negate;
                    }
                    None => return Ok(Poly::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.exact_divide(&prev)?;
                }
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }

    /// Laplace expansion along the first row. Exponential cost; kept as an
    /// independent check on [`PolyMatrix::determinant`].
    pub fn cofactor_determinant(&self) -> Result<Poly> {
        self.check_square()?;
        Ok(cofactor(self, &(0..self.rows).collect::<Vec<_>>(), 0))
    }
}

fn cofactor(m: &PolyMatrix, cols: &[usize], row: usize) -> Poly {
    if cols.is_empty() {
        return Poly::one();
    }
    let mut acc = Poly::zero();
    for (pos, &c) in cols.iter().enumerate() {
        let entry = m.get(row, c);
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry * &cofactor(m, &rest, row + 1);
        acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    #[test]
    fn two_by_two() {
        let m = PolyMatrix::from_columns(vec![
            vec![Poly::x(), Poly::one()],
            vec![Poly::one(), Poly::x()],
        ])
        .unwrap();
        assert_eq!(m.determinant().unwrap(), Poly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn non_square_rejected() {
        let m = PolyMatrix::new(1, 2, vec![Poly::one(), Poly::x()]).unwrap();
        assert_eq!(m.determinant(), Err(Error::NonSquare { rows: 1, cols: 2 }));
        assert!(PolyMatrix::new(2, 2, vec![Poly::one()]).is_err());
    }

    #[test]
    fn empty_determinant_is_one() {
        let m = PolyMatrix::new(0, 0, vec![]).unwrap();
        assert_eq!(m.determinant().unwrap(), Poly::one());
    }

    #[test]
    fn zero_pivot_needs_row_swap() {
        // [[0, 1, η], [1, 0, 0], [η, η, 1]] has determinant η² - 1
        let m = PolyMatrix::from_fn(3, 3, |i, j| match (i, j) {
            (0, 1) | (1, 0) | (2, 2) => Poly::one(),
            (0, 2) | (2, 0) | (2, 1) => Poly::x(),
            _ => Poly::zero(),
        });
        assert_eq!(m.determinant().unwrap(), m.cofactor_determinant().unwrap());
        assert_eq!(m.determinant().unwrap(), Poly::from_ints(&[-1, 0, 1]));
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-6i64..=6, 1i64..=4), 0..4)
            .prop_map(|cs| Poly::new(cs.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    fn square(n: usize) -> impl Strategy<Value = PolyMatrix> {
        prop::collection::vec(small_poly(), n * n)
            .prop_map(move |e| PolyMatrix::new(n, n, e).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn bareiss_matches_cofactor(m in (1usize..=4).prop_flat_map(square)) {
            prop_assert_eq!(m.determinant().unwrap(), m.cofactor_determinant().unwrap());
        }

        #[test]
        fn column_swap_negates(m in (3usize..=4).prop_flat_map(square), a in 0usize..3, b in 0usize..3) {
            prop_assume!(a != b);
            prop_assert_eq!(m.swap_columns(a, b).determinant().unwrap(), -m.determinant().unwrap());
        }

        #[test]
        fn equal_columns_vanish(m in (2usize..=4).prop_flat_map(square)) {
            let dup = PolyMatrix::from_fn(m.rows(), m.cols(), |i, j| {
                m.get(i, if j == 1 { 0 } else { j }).clone()
            });
            prop_assert!(dup.determinant().unwrap().is_zero());
        }
    }
}
