//! Dense exact matrices.
//!
//! Rank and determinant use fraction-free (Bareiss) elimination: for integer-valued input every
//! intermediate entry is a minor of the input, so entries stay integral and bounded. Row echelon
//! forms, kernels and solves use Gauss-Jordan elimination. Pivots are always the first nonzero
//! entry of the column; there are no tolerances.

use std::fmt;

use super::Elimination;
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors. `cols` is needed when `rows` is empty.
    ///
    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Matrix { rows: nrows, cols, data }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(rows.iter().map(|r| crate::scalar::ints(r)).collect(), cols)
    }

    pub fn diagonal(entries: &[F]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { F::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix<F>) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = F::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !a.is_zero() {
                    acc = acc + a.clone() * other.get(k, j).clone();
                }
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.rows, v.len(), "vector-matrix dimension mismatch");
        (0..self.cols)
            .map(|j| {
                let mut acc = F::zero();
                for (i, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc = acc + x.clone() * self.get(i, j).clone();
                    }
                }
                acc
            })
            .collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix<F>) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn rank(&self) -> usize {
        match F::eliminate(self, false) {
            Some(e) => e.pivots.len(),
            None => bareiss(self.clone()).rank,
        }
    }

    /// Determinant of a square matrix. Panics if the matrix is not square.
    pub fn determinant(&self) -> F {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        if self.rows == 0 {
            return F::one();
        }
        if let Some(det) = F::eliminate(self, false).and_then(|e| e.det) {
            return det;
        }
        let out = bareiss(self.clone());
        if out.rank < self.rows {
            return F::zero();
        }
        let det = out.reduced.get(self.rows - 1, self.cols - 1).clone();
        if out.swaps % 2 == 1 {
            -det
        } else {
            det
        }
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        if let Some(Elimination { rref: Some(r), pivots, .. }) = F::eliminate(self, true) {
            return (r, pivots);
        }
        gauss_jordan(self)
    }

    /// Basis of the right kernel, one vector per free column of the reduced echelon form.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        self.kernel_with_free_columns().into_iter().map(|(_, v)| v).collect()
    }

    /// Kernel basis paired with the free column in which each vector has entry one.
    pub(crate) fn kernel_with_free_columns(&self) -> Vec<(usize, Vec<F>)> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![F::zero(); self.cols];
                v[free] = F::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, free).clone();
                }
                (free, v)
            })
            .collect()
    }

    /// One solution of `self * x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(self.rows, b.len(), "right-hand side length mismatch");
        let aug = Self::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                F::one()
            } else {
                F::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

fn gauss_jordan<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..a.cols {
        if prow == a.rows {
            break;
        }
        let Some(found) = (prow..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        a.swap_rows(found, prow);
        let inv = a.get(prow, col).inv();
        for j in col..a.cols {
            let v = a.get(prow, j).clone() * inv.clone();
            a.set(prow, j, v);
        }
        for r in 0..a.rows {
            if r == prow || a.get(r, col).is_zero() {
                continue;
            }
            let factor = a.get(r, col).clone();
            for j in col..a.cols {
                let v = a.get(r, j).clone() - factor.clone() * a.get(prow, j).clone();
                a.set(r, j, v);
            }
        }
        pivots.push(col);
        prow += 1;
    }
    (a, pivots)
}

struct Bareiss<F> {
    reduced: Matrix<F>,
    rank: usize,
    swaps: usize,
}

fn bareiss<F: Field>(mut a: Matrix<F>) -> Bareiss<F> {
    let mut prev = F::one();
    let mut prow = 0;
    let mut swaps = 0;
    for col in 0..a.cols {
        if prow == a.rows {
            break;
        }
        let Some(found) = (prow..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        if found != prow {
            a.swap_rows(found, prow);
            swaps += 1;
        }
        let pivot = a.get(prow, col).clone();
        for r in prow + 1..a.rows {
            let lead = a.get(r, col).clone();
            for j in col + 1..a.cols {
                let v = (pivot.clone() * a.get(r, j).clone() - lead.clone() * a.get(prow, j).clone())
                    / prev.clone();
                a.set(r, j, v);
            }
            a.set(r, col, F::zero());
        }
        prev = pivot;
        prow += 1;
    }
    Bareiss { reduced: a, rank: prow, swaps }
}

pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(F::zero(), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            acc + x.clone() * y.clone()
        }
    })
}

/// Scales a nonzero vector so that its last nonzero entry is one.
///
/// This is the canonical representative used for kernel vectors that are only defined up to
/// scale (generalized-column witnesses, obstruction quadrics).
pub fn normalize_last<F: Field>(v: &[F]) -> Vec<F> {
    match v.iter().rev().find(|x| !x.is_zero()) {
        Some(last) => {
            let inv = last.inv();
            v.iter().map(|x| x.clone() * inv.clone()).collect()
        }
        None => v.to_vec(),
    }
}

/// True when `a` and `b` are nonzero multiples of each other (or both zero).
pub fn proportional<F: Field>(a: &[F], b: &[F]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(k) = a.iter().position(|x| !x.is_zero()) else {
        return b.iter().all(|x| x.is_zero());
    };
    if b[k].is_zero() {
        return false;
    }
    a.iter().zip(b).all(|(x, y)| x.clone() * b[k].clone() == y.clone() * a[k].clone())
}

/// Rank over the field, by fraction-free elimination.
pub fn ff_rank<F: Field>(m: &Matrix<F>) -> usize {
    m.rank()
}

pub fn nullspace<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    m.nullspace()
}

pub fn linsolve<F: Field>(m: &Matrix<F>, b: &[F]) -> Option<Vec<F>> {
    m.solve(b)
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;
    use num_rational::Ratio;

    type M = Matrix<Scalar>;

    #[test]
    fn rank_examples() {
        assert_eq!(ff_rank(&M::identity(2)), 2);
        assert_eq!(ff_rank(&M::zeros(3, 4)), 0);
        let vandermonde = M::from_ints(&[&[1, 0, 0, 0], &[1, 1, 1, 1], &[1, 2, 4, 8], &[1, 3, 9, 27]]);
        assert_eq!(ff_rank(&vandermonde), 4);
        // prod_{i<j} (t_j - t_i) for t = 0..3
        assert_eq!(vandermonde.determinant(), Scalar::from_i64(12));
    }

    #[test]
    fn rank_skips_empty_columns() {
        let m = M::from_ints(&[&[0, 1, 2], &[0, 2, 4], &[0, 0, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.determinant(), Scalar::from_i64(0));
    }

    #[test]
    fn determinant_sign_tracks_swaps() {
        let m = M::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.determinant(), Scalar::from_i64(-1));
    }

    #[test]
    fn nullspace_examples() {
        let m = M::from_ints(&[&[1, -1]]);
        assert_eq!(nullspace(&m), vec![crate::scalar::ints::<Scalar>(&[1, 1])]);
        assert!(nullspace(&M::identity(3)).is_empty());

        let m = M::from_ints(&[&[1, 2, 4, 8], &[1, 3, 9, 27]]);
        let basis = nullspace(&m);
        assert_eq!(basis.len(), 2);
        // (6,-5,1,0) and (30,-19,0,1) must lie in the span of the basis
        for expected in [[6, -5, 1, 0], [30, -19, 0, 1]] {
            let v = crate::scalar::ints::<Scalar>(&expected);
            assert_eq!(m.mul_vec(&v), vec![Scalar::from_i64(0); 2]);
            let mut rows = basis.clone();
            rows.push(v);
            assert_eq!(M::from_rows(rows, 4).rank(), 2);
        }
    }

    #[test]
    fn linsolve_examples() {
        let b = crate::scalar::ints::<Scalar>(&[3, -7]);
        assert_eq!(linsolve(&M::identity(2), &b), Some(b.clone()));
        let ones = M::from_ints(&[&[1, 1], &[1, 1]]);
        assert_eq!(linsolve(&ones, &crate::scalar::ints(&[0, 1])), None);
        let diag = M::from_ints(&[&[2, 0], &[0, 4]]);
        assert_eq!(
            linsolve(&diag, &crate::scalar::ints(&[1, 1])),
            Some(vec![crate::scalar::frac(1, 2), crate::scalar::frac(1, 4)])
        );
    }

    #[test]
    fn inverse_round_trip() {
        let m = M::from_ints(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), M::identity(3));
        assert!(M::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn works_over_fixed_width_rationals() {
        let m = Matrix::<Ratio<i64>>::from_ints(&[&[1, 2, 4, 8], &[1, 3, 9, 27]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.nullspace()[0], crate::scalar::ints::<Ratio<i64>>(&[6, -5, 1, 0]));
        assert_eq!(m.nullspace()[1], crate::scalar::ints::<Ratio<i64>>(&[30, -19, 0, 1]));
    }

    mod properties {
        use super::*;
        use crate::scalar::frac;
        use num_traits::Zero;
        use proptest::prelude::*;

        fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = M> {
            (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
                proptest::collection::vec((-4i64..=4, 1i64..=3), r * c).prop_map(move |entries| {
                    let data: Vec<Scalar> = entries.iter().map(|&(a, b)| frac(a, b)).collect();
                    M::from_rows(data.chunks(c).map(|x| x.to_vec()).collect(), c)
                })
            })
        }

        proptest! {
            #[test]
            fn fast_path_matches_generic(m in matrix(6, 7)) {
                let (r, pivots) = m.rref();
                let (r2, pivots2) = gauss_jordan(&m);
                prop_assert_eq!(&r, &r2);
                prop_assert_eq!(&pivots, &pivots2);
                prop_assert_eq!(m.rank(), bareiss(m.clone()).rank);
            }

            #[test]
            fn determinant_matches_generic(m in matrix(5, 5)) {
                let n = m.rows().min(m.cols());
                let sq = M::from_fn(n, n, |i, j| m.get(i, j).clone());
                let generic = Matrix::<Ratio<i128>>::from_fn(n, n, |i, j| {
                    let x = sq.get(i, j);
                    Ratio::new(x.numer().try_into().unwrap(), x.denom().try_into().unwrap())
                })
                .determinant();
                let fast = sq.determinant();
                prop_assert_eq!(fast.numer().to_string(), generic.numer().to_string());
                prop_assert_eq!(fast.denom().to_string(), generic.denom().to_string());
            }

            #[test]
            fn rank_equals_rank_of_transpose(m in matrix(6, 6)) {
                prop_assert_eq!(m.rank(), m.transpose().rank());
            }

            #[test]
            fn rank_plus_nullity_is_width(m in matrix(6, 7)) {
                let kernel = m.nullspace();
                prop_assert_eq!(m.rank() + kernel.len(), m.cols());
                for v in &kernel {
                    prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
                }
            }
        }
    }
}
