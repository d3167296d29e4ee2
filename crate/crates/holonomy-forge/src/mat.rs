//! Small dense matrices: integer matrices for lattice work and rational
//! matrices for exact linear algebra.

use crate::rat::{self, Rational};
use num_traits::Zero;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IMat {
    rows: usize,
    cols: usize,
    a: Vec<i64>,
}

impl IMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, a: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IMat { rows: r, cols: c, a: rows.concat() }
    }

    /// Diagonal matrix from the given entries.
    pub fn diag(entries: &[i64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> IMat {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self[(i, k)];
                if x == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    m[(i, j)] = m[(i, j)]
                        .checked_add(x.checked_mul(other[(k, j)]).expect("overflow"))
                        .expect("overflow");
                }
            }
        }
        m
    }

    pub fn mul_vec_rat(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = rat::zero();
                for j in 0..self.cols {
                    if self[(i, j)] != 0 {
                        s += rat::int(self[(i, j)]) * &v[j];
                    }
                }
                s
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    /// A ⋅ Aᵀ == I, i.e. the matrix is an integer orthogonal matrix
    /// (a signed permutation up to lattice symmetry).
    pub fn is_orthogonal(&self) -> bool {
        self.is_square() && self.mul(&self.transpose()).is_identity()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// New matrix formed from the given columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> IMat {
        let mut m = Self::zeros(self.rows, cols.len());
        for (jj, &j) in cols.iter().enumerate() {
            for i in 0..self.rows {
                m[(i, jj)] = self[(i, j)];
            }
        }
        m
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &IMat) -> IMat {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)];
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)];
            }
        }
        m
    }

    pub fn to_qmat(&self) -> QMat {
        QMat {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().map(|&x| rat::int(x)).collect(),
        }
    }
}

impl std::ops::Index<(usize, usize)> for IMat {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.a[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.a[i * self.cols + j]
    }
}

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMat {
    rows: usize,
    cols: usize,
    a: Vec<Rational>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, a: vec![rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMat { rows: r, cols: c, a: rows.concat() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> QMat {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let p = &self[(i, k)] * &other[(k, j)];
                    m[(i, j)] += p;
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = rat::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() {
                        s += &self[(i, j)] * &v[j];
                    }
                }
                s
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    /// Exact determinant by fraction-aware Gaussian elimination.
    pub fn det(&self) -> Rational {
        assert!(self.rows == self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = rat::one();
        for col in 0..n {
            let pivot = (col..n).find(|&i| !m[(i, col)].is_zero());
            let Some(p) = pivot else {
                return rat::zero();
            };
            if p != col {
                for j in 0..n {
                    let tmp = m[(p, j)].clone();
                    m[(p, j)] = m[(col, j)].clone();
                    m[(col, j)] = tmp;
                }
                det = -det;
            }
            let d = m[(col, col)].clone();
            det *= &d;
            for i in col + 1..n {
                if m[(i, col)].is_zero() {
                    continue;
                }
                let f = &m[(i, col)] / &d;
                for j in col..n {
                    let s = &f * &m[(col, j)];
                    m[(i, j)] -= s;
                }
            }
        }
        det
    }

    /// Exact inverse; `None` if singular.
    pub fn inverse(&self) -> Option<QMat> {
        assert!(self.rows == self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&i| !m[(i, col)].is_zero())?;
            if p != col {
                for j in 0..n {
                    let tmp = m[(p, j)].clone();
                    m[(p, j)] = m[(col, j)].clone();
                    m[(col, j)] = tmp;
                    let tmp = inv[(p, j)].clone();
                    inv[(p, j)] = inv[(col, j)].clone();
                    inv[(col, j)] = tmp;
                }
            }
            let d = m[(col, col)].clone();
            for j in 0..n {
                m[(col, j)] /= &d;
                inv[(col, j)] /= &d;
            }
            for i in 0..n {
                if i == col || m[(i, col)].is_zero() {
                    continue;
                }
                let f = m[(i, col)].clone();
                for j in 0..n {
                    let s = &f * &m[(col, j)];
                    m[(i, j)] -= s;
                    let s = &f * &inv[(col, j)];
                    inv[(i, j)] -= s;
                }
            }
        }
        Some(inv)
    }

    /// Basis of the right null space, as columns of the result.
    pub fn null_space(&self) -> QMat {
        let mut m = self.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let p = (r..rows).find(|&i| !m[(i, c)].is_zero());
            let Some(p) = p else { continue };
            if p != r {
                for j in 0..cols {
                    let tmp = m[(p, j)].clone();
                    m[(p, j)] = m[(r, j)].clone();
                    m[(r, j)] = tmp;
                }
            }
            let d = m[(r, c)].clone();
            for j in 0..cols {
                m[(r, j)] /= &d;
            }
            for i in 0..rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in 0..cols {
                    let s = &f * &m[(r, j)];
                    m[(i, j)] -= s;
                }
            }
            pivot_cols.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut basis = QMat::zeros(cols, free_cols.len());
        for (k, &fc) in free_cols.iter().enumerate() {
            basis[(fc, k)] = rat::one();
            for (ri, &pc) in pivot_cols.iter().enumerate() {
                basis[(pc, k)] = -m[(ri, fc)].clone();
            }
        }
        basis
    }

    /// Trace of the matrix.
    pub fn trace(&self) -> Rational {
        assert!(self.rows == self.cols);
        let mut s = rat::zero();
        for i in 0..self.rows {
            s += &self[(i, i)];
        }
        s
    }

    pub fn add(&self, other: &QMat) -> QMat {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let mut m = self.clone();
        for (x, y) in m.a.iter_mut().zip(other.a.iter()) {
            *x += y;
        }
        m
    }

    pub fn scale(&self, s: &Rational) -> QMat {
        let mut m = self.clone();
        for x in m.a.iter_mut() {
            *x *= s;
        }
        m
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.a[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.a[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn imat_orthogonality() {
        let swap = IMat::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert!(swap.is_orthogonal());
        let shear = IMat::from_rows(&[vec![1, 1], vec![0, 1]]);
        assert!(!shear.is_orthogonal());
    }

    #[test]
    fn qmat_det_and_inverse() {
        let m = QMat::from_rows(vec![
            vec![rat(1, 1), rat(2, 1)],
            vec![rat(3, 1), rat(5, 1)],
        ]);
        assert_eq!(m.det(), rat(-1, 1));
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
    }

    #[test]
    fn qmat_null_space() {
        // x + y + z = 0 has a 2-dimensional solution space.
        let m = QMat::from_rows(vec![vec![rat(1, 1), rat(1, 1), rat(1, 1)]]);
        let ns = m.null_space();
        assert_eq!(ns.ncols(), 2);
        for k in 0..2 {
            let v: Vec<Rational> = (0..3).map(|i| ns[(i, k)].clone()).collect();
            let img = m.mul_vec(&v);
            assert!(img[0].is_zero());
        }
    }
}
