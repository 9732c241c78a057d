use super::matrix::{kernel, rref, Matrix};
use super::scalar::CScalar;
use crate::error::{Error, Result};

/// A subspace of ℚ(i)^n stored by its reduced row-echelon basis, so that two
/// subspaces are equal exactly when their stored bases are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    pub fn span<I>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<CScalar>>,
    {
        let rows: Vec<Vec<CScalar>> = vectors.into_iter().collect();
        if rows.is_empty() {
            return Self::zero(ambient);
        }
        let e = rref(&Matrix::from_row_vectors(ambient, &rows));
        let kept: Vec<Vec<CScalar>> = (0..e.rank).map(|i| e.matrix.row(i).to_vec()).collect();
        Subspace { ambient, basis: Matrix::from_row_vectors(ambient, &kept), pivots: e.pivots }
    }

    /// Row space of a matrix.
    pub fn row_space(m: &Matrix) -> Self {
        Self::span(m.cols(), m.row_vectors())
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Canonical basis (RREF rows).
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<CScalar>> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[CScalar]) -> Option<Vec<CScalar>> {
        assert_eq!(v.len(), self.ambient);
        let coeffs: Vec<CScalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (r, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (x, b) in residual.iter_mut().zip(self.basis.row(r)) {
                if !b.is_zero() {
                    *x -= &(c * b);
                }
            }
        }
        residual.iter().all(CScalar::is_zero).then_some(coeffs)
    }

    pub fn contains(&self, v: &[CScalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check(other)?;
        Ok(other.basis_vectors().iter().all(|v| self.contains(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Ok(Self::span(self.ambient, rows))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient));
        }
        // columns: basis of self, then negated basis of other; kernel vectors
        // (a, b) give a·self = b·other
        let da = self.dim();
        let mut cols = self.basis_vectors();
        cols.extend(other.basis_vectors().into_iter().map(|v| v.iter().map(|x| -x).collect()));
        let k = kernel(&Matrix::from_columns(self.ambient, &cols));
        let vectors = k.basis_vectors().into_iter().map(|coef| {
            let mut v = vec![CScalar::zero(); self.ambient];
            for (c, row) in coef[..da].iter().zip(self.basis_vectors()) {
                if c.is_zero() {
                    continue;
                }
                for (x, b) in v.iter_mut().zip(row) {
                    *x += &(c * &b);
                }
            }
            v
        });
        Ok(Self::span(self.ambient, vectors))
    }

    pub fn conj(&self) -> Subspace {
        Self::span(self.ambient, self.basis.conj().row_vectors())
    }

    /// Image of this subspace under a linear map.
    pub fn map(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        Self::span(m.rows(), self.basis_vectors().iter().map(|v| m.mul_vec(v)))
    }

    /// {v : m v ∈ target}.
    pub fn preimage(m: &Matrix, target: &Subspace) -> Result<Subspace> {
        if m.rows() != target.ambient {
            return Err(Error::DimensionMismatch(m.rows(), target.ambient));
        }
        let n = m.cols();
        // solve m v - t·T = 0 jointly in (v, t)
        let mut cols: Vec<Vec<CScalar>> = (0..n).map(|j| m.column(j)).collect();
        cols.extend(target.basis_vectors().into_iter().map(|v| v.iter().map(|x| -x).collect()));
        let k = kernel(&Matrix::from_columns(m.rows(), &cols));
        Ok(Self::span(n, k.basis_vectors().into_iter().map(|v| v[..n].to_vec())))
    }

    /// Extends `self` greedily by canonical basis vectors of `larger` not
    /// already in the span; returns the added vectors in order.
    pub fn complement_in(&self, larger: &Subspace) -> Result<Vec<Vec<CScalar>>> {
        self.check(larger)?;
        let mut acc = self.clone();
        let mut added = Vec::new();
        for v in larger.basis_vectors() {
            if !acc.contains(&v) {
                acc = acc.sum(&Subspace::span(self.ambient, vec![v.clone()]))?;
                added.push(v);
            }
        }
        Ok(added)
    }
}

/// A decomposition of the ambient space into a direct sum of subspaces,
/// with the change-of-basis data needed to project onto each block.
#[derive(Clone, Debug)]
pub struct DirectSum {
    blocks: Vec<Subspace>,
    offsets: Vec<usize>,
    basis: Matrix,
    inverse: Matrix,
}

impl DirectSum {
    pub fn new(blocks: Vec<Subspace>) -> Result<Self> {
        let ambient = blocks.first().map_or(0, Subspace::ambient_dim);
        let mut columns = Vec::new();
        let mut offsets = Vec::with_capacity(blocks.len() + 1);
        for b in &blocks {
            if b.ambient_dim() != ambient {
                return Err(Error::DimensionMismatch(b.ambient_dim(), ambient));
            }
            offsets.push(columns.len());
            columns.extend(b.basis_vectors());
        }
        offsets.push(columns.len());
        if columns.len() != ambient {
            return Err(Error::NotDirectSum(format!(
                "block dimensions sum to {} in ambient dimension {ambient}",
                columns.len()
            )));
        }
        let basis = Matrix::from_columns(ambient, &columns);
        let inverse = basis
            .inverse()
            .ok_or_else(|| Error::NotDirectSum("blocks are linearly dependent".to_string()))?;
        Ok(DirectSum { blocks, offsets, basis, inverse })
    }

    pub fn blocks(&self) -> &[Subspace] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_range(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }

    /// Component of `v` in block `i`.
    pub fn project(&self, v: &[CScalar], i: usize) -> Vec<CScalar> {
        let coords = self.inverse.mul_vec(v);
        let mut out = vec![CScalar::zero(); v.len()];
        for k in self.block_range(i) {
            if coords[k].is_zero() {
                continue;
            }
            for (r, x) in out.iter_mut().enumerate() {
                let b = &self.basis[(r, k)];
                if !b.is_zero() {
                    *x += &(b * &coords[k]);
                }
            }
        }
        out
    }

    /// Index of the block containing `v` if `v` lies in a single block.
    pub fn block_of(&self, v: &[CScalar]) -> Option<usize> {
        let coords = self.inverse.mul_vec(v);
        let hit: Vec<usize> =
            (0..self.len()).filter(|&i| self.block_range(i).any(|k| !coords[k].is_zero())).collect();
        match hit.as_slice() {
            [i] => Some(*i),
            _ => None,
        }
    }

    /// Operator `a` written in the adapted basis: B⁻¹ a B.
    pub fn adapted(&self, a: &Matrix) -> Matrix {
        self.inverse.mul(&a.mul(&self.basis))
    }

    /// Returns B A' B⁻¹ where A' keeps only the (target, source) blocks of
    /// the adapted operator selected by `keep`.
    pub fn assemble(&self, adapted: &Matrix, keep: impl Fn(usize, usize) -> bool) -> Matrix {
        let mut filtered = Matrix::zeros(adapted.rows(), adapted.cols());
        for t in 0..self.len() {
            for s in 0..self.len() {
                if !keep(t, s) {
                    continue;
                }
                for r in self.block_range(t) {
                    for c in self.block_range(s) {
                        filtered[(r, c)] = adapted[(r, c)].clone();
                    }
                }
            }
        }
        self.basis.mul(&filtered.mul(&self.inverse))
    }

    /// Nonzero (target, source) block pairs of an adapted operator.
    pub fn block_support(&self, adapted: &Matrix) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for t in 0..self.len() {
            for s in 0..self.len() {
                let nonzero = self
                    .block_range(t)
                    .any(|r| self.block_range(s).any(|c| !adapted[(r, c)].is_zero()));
                if nonzero {
                    out.push((t, s));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<CScalar> {
        xs.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn lattice_basics() {
        let x = Subspace::span(2, vec![v(&[1, 0])]);
        let y = Subspace::span(2, vec![v(&[0, 1])]);
        assert_eq!(x.intersect(&x).unwrap(), x);
        assert!(x.intersect(&y).unwrap().is_zero());
        assert_eq!(x.sum(&y).unwrap(), Subspace::full(2));
        assert!(x.intersect(&Subspace::zero(3)).is_err());
    }

    #[test]
    fn canonical_equality() {
        let a = Subspace::span(3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::span(3, vec![v(&[1, 2, 1]), v(&[1, 0, -1])]);
        assert_eq!(a, b);
        assert!(a.contains(&v(&[2, 3, 1])));
        assert!(!a.contains(&v(&[1, 0, 0])));
    }

    #[test]
    fn preimage_and_complement() {
        // m = projection onto first coordinate; preimage of 0 is span{e2}
        let m = Matrix::from_i64(&[&[1, 0], &[0, 0]]);
        let p = Subspace::preimage(&m, &Subspace::zero(2)).unwrap();
        assert_eq!(p, Subspace::span(2, vec![v(&[0, 1])]));
        let added = p.complement_in(&Subspace::full(2)).unwrap();
        assert_eq!(added, vec![v(&[1, 0])]);
    }

    #[test]
    fn direct_sum_projection() {
        let a = Subspace::span(2, vec![v(&[1, 1])]);
        let b = Subspace::span(2, vec![v(&[1, -1])]);
        let ds = DirectSum::new(vec![a, b]).unwrap();
        let p = ds.project(&v(&[2, 0]), 0);
        assert_eq!(p, v(&[1, 1]));
        assert_eq!(ds.block_of(&v(&[3, -3])), Some(1));
        assert_eq!(ds.block_of(&v(&[1, 0])), None);
        let bad = DirectSum::new(vec![Subspace::span(2, vec![v(&[1, 0])]), Subspace::span(2, vec![v(&[2, 0])])]);
        assert!(bad.is_err());
    }
}
