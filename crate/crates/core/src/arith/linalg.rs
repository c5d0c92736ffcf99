use std::fmt;

use super::field::Field;
use crate::{Error, Result};

/// Row-major dense matrix. `unit` is any element of the coefficient field,
/// kept so that empty matrices still know their field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DenseMatrix<K> {
    rows: usize,
    cols: usize,
    entries: Vec<K>,
    unit: K,
}

impl<K: Field> DenseMatrix<K> {
    pub fn new(rows: usize, cols: usize, entries: Vec<K>, unit: &K) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch);
        }
        Ok(Self {
            rows,
            cols,
            entries,
            unit: unit.one_like(),
        })
    }

    pub fn zeros(rows: usize, cols: usize, unit: &K) -> Self {
        Self {
            rows,
            cols,
            entries: vec![unit.zero_like(); rows * cols],
            unit: unit.one_like(),
        }
    }

    pub fn identity(n: usize, unit: &K) -> Self {
        let mut m = Self::zeros(n, n, unit);
        for i in 0..n {
            m[(i, i)] = unit.one_like();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<K>>, unit: &K) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch);
        }
        Self::new(r, c, rows.into_iter().flatten().collect(), unit)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<K>], len: usize, unit: &K) -> Result<Self> {
        let mut m = Self::zeros(len, cols.len(), unit);
        for (j, col) in cols.iter().enumerate() {
            if col.len() != len {
                return Err(Error::DimensionMismatch);
            }
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn unit(&self) -> &K {
        &self.unit
    }

    pub fn entries(&self) -> &[K] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[K] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Field::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, &self.unit);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch);
        }
        let mut out = Self::zeros(self.rows, other.cols, &self.unit);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)].clone() + &(a.clone() * &other[(k, j)]);
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&K, &K) -> K) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch);
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
            unit: self.unit.clone(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() - b)
    }

    pub fn scale(&self, c: &K) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a.clone() * c).collect(),
            unit: self.unit.clone(),
        }
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[K]) -> Result<Vec<K>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch);
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.unit.zero_like(), |acc, (a, b)| acc + &(a.clone() * b))
            })
            .collect())
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].clone() * &inv;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    let sub = factor.clone() * &m[(r, j)];
                    m[(i, j)] = m[(i, j)].clone() - &sub;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : Mv = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<K>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![self.unit.zero_like(); self.cols];
                v[fc] = self.unit.one_like();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r[(row, fc)].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n, &self.unit);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = self.unit.one_like();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n, &self.unit);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn minor2(&self, (i, j): (usize, usize), (k, l): (usize, usize)) -> K {
        self[(i, k)].clone() * &self[(j, l)] - &(self[(i, l)].clone() * &self[(j, k)])
    }
}

impl<K> std::ops::Index<(usize, usize)> for DenseMatrix<K> {
    type Output = K;
    fn index(&self, (i, j): (usize, usize)) -> &K {
        &self.entries[i * self.cols + j]
    }
}

impl<K> std::ops::IndexMut<(usize, usize)> for DenseMatrix<K> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut K {
        &mut self.entries[i * self.cols + j]
    }
}

impl<K: Field> fmt::Display for DenseMatrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Rank of the span of a list of vectors of common length `len`.
pub fn span_rank<K: Field>(vectors: &[Vec<K>], len: usize, unit: &K) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    DenseMatrix::from_columns(vectors, len, unit)
        .expect("vectors of equal length")
        .rank()
}

/// Whether two lists of vectors span the same subspace.
pub fn same_span<K: Field>(a: &[Vec<K>], b: &[Vec<K>], len: usize, unit: &K) -> bool {
    let ra = span_rank(a, len, unit);
    let rb = span_rank(b, len, unit);
    let both: Vec<Vec<K>> = a.iter().chain(b).cloned().collect();
    let rab = span_rank(&both, len, unit);
    ra == rab && rb == rab
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::rat;
    use crate::arith::finite::{FieldDescriptor, FieldElement};

    fn f5(rows: &[&[i64]]) -> DenseMatrix<FieldElement> {
        let field = FieldDescriptor::prime(5).unwrap();
        let unit = FieldElement::one(&field);
        DenseMatrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&c| FieldElement::from_i64(&field, c))
                        .collect()
                })
                .collect(),
            &unit,
        )
        .unwrap()
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(f5(&[&[0, 0], &[0, 0]]).nullspace().len(), 2);
        assert_eq!(f5(&[&[1, 0], &[0, 1]]).nullspace().len(), 0);
        let m = f5(&[&[1, 1], &[2, 2]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        let expected = f5(&[&[1, 4]]).row(0).to_vec();
        assert!(same_span(&ns, &[expected], 2, m.unit()));
        for v in &ns {
            assert!(m.apply(v).unwrap().iter().all(Field::is_zero));
        }
    }

    #[test]
    fn rank_nullity_and_inverse() {
        let one = rat(1, 1);
        let m = DenseMatrix::from_rows(
            vec![
                vec![rat(1, 1), rat(2, 1), rat(3, 1)],
                vec![rat(2, 1), rat(4, 1), rat(6, 1)],
                vec![rat(1, 2), rat(0, 1), rat(-1, 1)],
            ],
            &one,
        )
        .unwrap();
        assert_eq!(m.rank() + m.nullspace().len(), 3);
        assert!(m.inverse().is_none());

        let g = DenseMatrix::from_rows(
            vec![vec![rat(2, 1), rat(1, 1)], vec![rat(1, 3), rat(1, 1)]],
            &one,
        )
        .unwrap();
        let gi = g.inverse().unwrap();
        assert_eq!(g.mul(&gi).unwrap(), DenseMatrix::identity(2, &one));
    }

    #[test]
    fn empty_matrix_nullspace_is_everything() {
        let one = rat(1, 1);
        let m = DenseMatrix::zeros(0, 3, &one);
        assert_eq!(m.nullspace().len(), 3);
    }
}
