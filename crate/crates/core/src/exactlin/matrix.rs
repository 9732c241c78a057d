use std::fmt;
use std::ops::{Index, IndexMut};

use num::{Signed, Zero};

use super::scalar::{CScalar, Scalar};
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Dense row-major matrix over ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<CScalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![CScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = CScalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a matrix with `cols` columns from row vectors (allowing zero rows).
    pub fn from_row_vectors(cols: usize, rows: &[Vec<CScalar>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols);
            m.row_mut(i).clone_from_slice(row);
        }
        m
    }

    pub fn from_columns(rows: usize, cols: &[Vec<CScalar>]) -> Self {
        Self::from_row_vectors(rows, cols).transpose()
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| CScalar::from_int(x)).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[CScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [CScalar] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<CScalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<CScalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn conj(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(CScalar::conj).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CScalar::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(CScalar::is_real)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn scale(&self, s: &CScalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "inner dimension mismatch");
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[CScalar]) -> Vec<CScalar> {
        assert_eq!(self.cols, v.len());
        let support: Vec<usize> = (0..v.len()).filter(|&j| !v[j].is_zero()).collect();
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                support.iter().filter(|&&j| !row[j].is_zero()).map(|&j| &row[j] * &v[j]).sum()
            })
            .collect()
    }

    pub fn hstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.rows, o.rows);
        let rows = (0..self.rows).map(|i| [self.row(i), o.row(i)].concat()).collect::<Vec<_>>();
        Matrix::from_row_vectors(self.cols + o.cols, &rows)
    }

    pub fn vstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        Matrix { rows: self.rows + o.rows, cols: self.cols, data }
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let e = rref(&self.hstack(&Matrix::identity(n)));
        if e.pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) || e.rank < n {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            inv.row_mut(i).clone_from_slice(&e.matrix.row(i)[n..]);
        }
        Some(inv)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = CScalar;
    fn index(&self, (i, j): (usize, usize)) -> &CScalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut CScalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row-echelon form together with rank and pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Gauss–Jordan elimination over ℚ(i). The result is the unique RREF of `m`.
pub fn rref(m: &Matrix) -> Echelon {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = a[(r, c)].inv();
        for j in c..cols {
            if !a[(r, j)].is_zero() {
                a[(r, j)] = &a[(r, j)] * &inv;
            }
        }
        let pivot_row: Vec<(usize, CScalar)> =
            (c..cols).filter(|&j| !a[(r, j)].is_zero()).map(|j| (j, a[(r, j)].clone())).collect();
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for (j, v) in &pivot_row {
                let t = &f * v;
                a[(i, *j)] -= &t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { matrix: a, rank: r, pivots }
}

/// Null space {v : Mv = 0}.
pub fn kernel(m: &Matrix) -> Subspace {
    let e = rref(m);
    let cols = m.cols;
    let mut is_pivot = vec![false; cols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    let vectors: Vec<Vec<CScalar>> = (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![CScalar::zero(); cols];
            v[f] = CScalar::one();
            for (r, &p) in e.pivots.iter().enumerate() {
                v[p] = -&e.matrix[(r, f)];
            }
            v
        })
        .collect();
    Subspace::span(cols, vectors)
}

/// Column span of `m` as a subspace of ℚ(i)^rows.
pub fn image(m: &Matrix) -> Subspace {
    Subspace::span(m.rows, m.transpose().row_vectors())
}

/// Canonical solution of `m x = b` (free variables set to zero), if consistent.
pub fn solve(m: &Matrix, b: &[CScalar]) -> Option<Vec<CScalar>> {
    assert_eq!(m.rows, b.len());
    let aug = m.hstack(&Matrix::from_columns(m.rows, &[b.to_vec()]));
    let e = rref(&aug);
    if e.pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![CScalar::zero(); m.cols];
    for (r, &p) in e.pivots.iter().enumerate() {
        x[p] = e.matrix[(r, m.cols)].clone();
    }
    Some(x)
}

fn real_symmetric_entries(s: &Matrix) -> Result<Vec<Vec<Scalar>>> {
    if !s.is_square() {
        return Err(Error::DimensionMismatch(s.rows, s.cols));
    }
    if !s.is_real() {
        return Err(Error::NotReal);
    }
    let n = s.rows;
    for i in 0..n {
        for j in i + 1..n {
            if s[(i, j)] != s[(j, i)] {
                return Err(Error::NotSymmetric);
            }
        }
    }
    Ok((0..n).map(|i| (0..n).map(|j| s[(i, j)].re.clone()).collect()).collect())
}

/// Exact positive-definiteness test: symmetric elimination without pivoting,
/// succeeding iff every pivot is strictly positive.
pub fn is_positive_definite(s: &Matrix) -> Result<bool> {
    let mut a = real_symmetric_entries(s)?;
    let n = a.len();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return Ok(false);
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    Ok(true)
}

/// Inertia (positive, negative, zero) of a real symmetric matrix by exact
/// congruence diagonalization.
pub fn inertia(s: &Matrix) -> Result<(usize, usize, usize)> {
    let mut a = real_symmetric_entries(s)?;
    let n = a.len();
    let sym_swap = |a: &mut Vec<Vec<Scalar>>, i: usize, j: usize| {
        a.swap(i, j);
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    };
    let (mut pos, mut neg) = (0, 0);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                sym_swap(&mut a, i, k);
            } else if let Some((i, j)) =
                (k..n).flat_map(|i| (k..n).map(move |j| (i, j))).find(|&(i, j)| i != j && !a[i][j].is_zero())
            {
                // row_i += row_j, col_i += col_j makes a[i][i] = 2 a[i][j] != 0
                for c in 0..n {
                    let t = a[j][c].clone();
                    a[i][c] += t;
                }
                for r in 0..n {
                    let t = a[r][j].clone();
                    a[r][i] += t;
                }
                sym_swap(&mut a, i, k);
            } else {
                break;
            }
        }
        let p = a[k][k].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &p;
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
            for r in k..n {
                let t = &f * &a[r][k];
                a[r][i] -= t;
            }
        }
    }
    Ok((pos, neg, n - pos - neg))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_proportional_rows() {
        let e = rref(&Matrix::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!(e.rank, 1);
        assert_eq!(e.pivots, vec![0]);
        assert_eq!(e.matrix, Matrix::from_i64(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn rref_identity() {
        let id = Matrix::identity(3);
        let e = rref(&id);
        assert_eq!(e.matrix, id);
        assert_eq!(e.rank, 3);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel(&Matrix::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!(k, Subspace::span(2, vec![vec![(-2).into(), 1.into()]]));
        assert_eq!(kernel(&Matrix::identity(3)).dim(), 0);
    }

    #[test]
    fn image_examples() {
        assert_eq!(image(&Matrix::zeros(3, 2)).dim(), 0);
        assert_eq!(image(&Matrix::identity(3)), Subspace::full(3));
    }

    #[test]
    fn solve_and_inverse() {
        let m = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        let x = solve(&m, &[3.into(), 2.into()]).unwrap();
        assert_eq!(x, vec![CScalar::one(), CScalar::one()]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert!(solve(&Matrix::from_i64(&[&[1, 2], &[2, 4]]), &[1.into(), 0.into()]).is_none());
    }

    #[test]
    fn positive_definite() {
        assert!(is_positive_definite(&Matrix::identity(4)).unwrap());
        assert!(!is_positive_definite(&Matrix::from_i64(&[&[1, 0], &[0, -1]])).unwrap());
        assert!(is_positive_definite(&Matrix::from_i64(&[&[2, 1], &[1, 2]])).unwrap());
        assert!(!is_positive_definite(&Matrix::from_i64(&[&[1, 2], &[2, 1]])).unwrap());
        assert_eq!(is_positive_definite(&Matrix::from_i64(&[&[1, 2], &[0, 1]])), Err(Error::NotSymmetric));
    }

    #[test]
    fn inertia_of_split_form() {
        // [[0,1],[1,0]] has signature (1,1)
        assert_eq!(inertia(&Matrix::from_i64(&[&[0, 1], &[1, 0]])).unwrap(), (1, 1, 0));
        assert_eq!(inertia(&Matrix::from_i64(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, -3]])).unwrap(), (1, 1, 1));
    }
}
