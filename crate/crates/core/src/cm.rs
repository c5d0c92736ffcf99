//! Matrix pairs `(A, B)` with `rank([A, B] + I) = 1`.

use rand::Rng;

use crate::arith::{DenseMatrix, Field};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixPair<K> {
    a: DenseMatrix<K>,
    b: DenseMatrix<K>,
}

impl<K: Field> MatrixPair<K> {
    pub fn new(a: DenseMatrix<K>, b: DenseMatrix<K>) -> Result<Self> {
        if !a.is_square() || a.rows() != b.rows() || a.cols() != b.cols() {
            return Err(Error::DimensionMismatch);
        }
        Ok(Self { a, b })
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn a(&self) -> &DenseMatrix<K> {
        &self.a
    }

    pub fn b(&self) -> &DenseMatrix<K> {
        &self.b
    }

    /// `AB - BA + I`.
    pub fn moment(&self) -> DenseMatrix<K> {
        moment(&self.a, &self.b)
    }

    pub fn transpose(&self) -> Self {
        Self {
            a: self.a.transpose(),
            b: self.b.transpose(),
        }
    }

    pub fn swap(&self) -> Self {
        Self {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    /// `(g A g^{-1}, g B g^{-1})`.
    pub fn conjugate(&self, g: &DenseMatrix<K>) -> Result<Self> {
        let gi = g.inverse().ok_or(Error::DimensionMismatch)?;
        let c = |m: &DenseMatrix<K>| g.mul(m).and_then(|x| x.mul(&gi));
        Self::new(c(&self.a)?, c(&self.b)?)
    }
}

fn moment<K: Field>(a: &DenseMatrix<K>, b: &DenseMatrix<K>) -> DenseMatrix<K> {
    let ab = a.mul(b).expect("square");
    let ba = b.mul(a).expect("square");
    ab.sub(&ba)
        .and_then(|c| c.add(&DenseMatrix::identity(a.rows(), a.unit())))
        .expect("same shape")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness<K> {
    ZeroMatrix,
    Minor {
        rows: (usize, usize),
        cols: (usize, usize),
        value: K,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership<K> {
    Member,
    NonMember(Witness<K>),
}

impl<K> Membership<K> {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member)
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

pub fn cm_membership<K: Field>(pair: &MatrixPair<K>) -> Membership<K> {
    let m = pair.moment();
    if m.is_zero() {
        return Membership::NonMember(Witness::ZeroMatrix);
    }
    let n = pair.n();
    for rows in pairs(n) {
        for cols in pairs(n) {
            let value = m.minor2(rows, cols);
            if !value.is_zero() {
                return Membership::NonMember(Witness::Minor { rows, cols, value });
            }
        }
    }
    Membership::Member
}

/// `A = diag(λ)`, `B_ij = 1/(λ_i - λ_j)` off the diagonal, `B_ii = d_i`.
pub fn cm_catalog_point<K: Field>(eigenvalues: &[K], diagonal: &[K]) -> Result<MatrixPair<K>> {
    let n = eigenvalues.len();
    if n == 0 || diagonal.len() != n {
        return Err(Error::DimensionMismatch);
    }
    let unit = eigenvalues[0].one_like();
    let mut a = DenseMatrix::zeros(n, n, &unit);
    let mut b = DenseMatrix::zeros(n, n, &unit);
    for i in 0..n {
        a[(i, i)] = eigenvalues[i].clone();
        b[(i, i)] = diagonal[i].clone();
        for j in 0..n {
            if i != j {
                let diff = eigenvalues[i].clone() - &eigenvalues[j];
                b[(i, j)] = diff.inv().ok_or(Error::RepeatedEigenvalues)?;
            }
        }
    }
    let pair = MatrixPair::new(a, b)?;
    if !cm_membership(&pair).is_member() {
        return Err(Error::NotAMember);
    }
    Ok(pair)
}

/// Jacobian of all 2×2 minors of `AB - BA + I` in the `2n²` entries of
/// `(A, B)`, with `A` entries first in row-major order.
pub fn minors_jacobian<K: Field>(pair: &MatrixPair<K>) -> DenseMatrix<K> {
    let n = pair.n();
    let unit = pair.a.unit().clone();
    let m = pair.moment();
    // dM for each variable: E_pq B - B E_pq, then A E_pq - E_pq A
    let mut derivs = Vec::with_capacity(2 * n * n);
    for which in 0..2 {
        for p in 0..n {
            for q in 0..n {
                let mut e = DenseMatrix::zeros(n, n, &unit);
                e[(p, q)] = unit.one_like();
                let dm = if which == 0 {
                    e.mul(&pair.b).and_then(|x| x.sub(&pair.b.mul(&e)?))
                } else {
                    pair.a.mul(&e).and_then(|x| x.sub(&e.mul(&pair.a)?))
                };
                derivs.push(dm.expect("square"));
            }
        }
    }
    let mut rows = Vec::new();
    for (i, j) in pairs(n) {
        for (k, l) in pairs(n) {
            let row = derivs
                .iter()
                .map(|d| {
                    d[(i, k)].clone() * &m[(j, l)] + &(m[(i, k)].clone() * &d[(j, l)])
                        - &(d[(i, l)].clone() * &m[(j, k)])
                        - &(m[(i, l)].clone() * &d[(j, k)])
                })
                .collect();
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return DenseMatrix::zeros(0, 2 * n * n, &unit);
    }
    DenseMatrix::from_rows(rows, &unit).expect("uniform rows")
}

/// Dimension of the Zariski tangent space of the minors scheme at a member.
pub fn tangent_dimension<K: Field>(pair: &MatrixPair<K>) -> Result<usize> {
    if !cm_membership(pair).is_member() {
        return Err(Error::NotAMember);
    }
    let n = pair.n();
    Ok(2 * n * n - minors_jacobian(pair).rank())
}

/// A random invertible integer matrix with entries in `-range..=range`.
pub fn random_invertible<K: Field, R: Rng>(
    n: usize,
    unit: &K,
    range: i64,
    rng: &mut R,
) -> DenseMatrix<K> {
    loop {
        let entries = (0..n * n)
            .map(|_| unit.from_i64_like(rng.gen_range(-range..=range)))
            .collect();
        let g = DenseMatrix::new(n, n, entries, unit).expect("shape");
        if g.rank() == n {
            return g;
        }
    }
}
