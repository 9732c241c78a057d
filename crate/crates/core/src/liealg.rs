//! Lie algebras given by rational structure constants [eᵢ, eⱼ] = Σₖ cᵏᵢⱼ eₖ.
//!
//! The Chevalley–Eilenberg differential uses dξ(X, Y) = −ξ([X, Y]), so
//! deᵏ = −Σ_{i<j} cᵏᵢⱼ eⁱ∧eʲ and d² = 0 is equivalent to the Jacobi identity.

use num::Zero;

use crate::dga::{DgaPresentation, Filtration};
use crate::error::{Error, Result};
use crate::exactlin::{CScalar, Scalar, Subspace};
use crate::forms::FormElement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    c: Vec<Scalar>,
}

/// Result of the Jacobi check; `failure` names the first basis triple whose
/// Jacobiator is nonzero, together with that Jacobiator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    pub holds: bool,
    pub failure: Option<((usize, usize, usize), Vec<CScalar>)>,
}

#[derive(Clone, Debug)]
pub struct LowerCentralSeries {
    pub series: Vec<Subspace>,
    pub is_nilpotent: bool,
    pub step: Option<usize>,
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra { dim, c: vec![Scalar::zero(); dim * dim * dim] }
    }

    /// Builds from entries (i, j, k, c) meaning [eᵢ, eⱼ] ∋ c·eₖ (0-based).
    /// An entry and its transpose may both appear only if they are negatives.
    pub fn from_brackets(dim: usize, entries: &[(usize, usize, usize, Scalar)]) -> Result<Self> {
        let mut g = Self::abelian(dim);
        let mut seen = vec![false; dim * dim * dim];
        for (i, j, k, c) in entries {
            for &x in [i, j, k] {
                if x >= dim {
                    return Err(Error::IndexOutOfRange { index: x, dim });
                }
            }
            let (i, j, k) = (*i, *j, *k);
            if i == j {
                if !c.is_zero() {
                    return Err(Error::NotAntisymmetric { i, j, k });
                }
                continue;
            }
            let ij = g.idx(i, j, k);
            let ji = g.idx(j, i, k);
            if seen[ij] && g.c[ij] != *c || seen[ji] && g.c[ji] != -c {
                return Err(Error::NotAntisymmetric { i, j, k });
            }
            seen[ij] = true;
            seen[ji] = true;
            g.c[ij] = c.clone();
            g.c[ji] = -c;
        }
        Ok(g)
    }

    /// Builds from a full table, checking antisymmetry.
    pub fn from_table(dim: usize, c: Vec<Scalar>) -> Result<Self> {
        assert_eq!(c.len(), dim * dim * dim);
        let g = LieAlgebra { dim, c };
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if g.c[g.idx(i, j, k)] != -&g.c[g.idx(j, i, k)] {
                        return Err(Error::NotAntisymmetric { i, j, k });
                    }
                }
            }
        }
        Ok(g)
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[self.idx(i, j, k)]
    }

    /// Nonzero constants with i < j, in index order.
    pub fn brackets(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in 0..self.dim {
                    let c = self.structure_constant(i, j, k);
                    if !c.is_zero() {
                        out.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// Complex-bilinear bracket of coordinate vectors.
    pub fn bracket(&self, x: &[CScalar], y: &[CScalar]) -> Vec<CScalar> {
        let mut out = vec![CScalar::zero(); self.dim];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let xy = xi * yj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.structure_constant(i, j, k);
                    if !c.is_zero() {
                        *o += &xy.scale(c);
                    }
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<CScalar> {
        let mut v = vec![CScalar::zero(); self.dim];
        v[i] = CScalar::one();
        v
    }

    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Vec<CScalar> {
        let (a, b, c) = (self.unit(i), self.unit(j), self.unit(k));
        let t1 = self.bracket(&self.bracket(&a, &b), &c);
        let t2 = self.bracket(&self.bracket(&b, &c), &a);
        let t3 = self.bracket(&self.bracket(&c, &a), &b);
        t1.iter().zip(&t2).zip(&t3).map(|((x, y), z)| x + y + z.clone()).collect()
    }

    pub fn check_jacobi(&self) -> JacobiReport {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let jac = self.jacobiator(i, j, k);
                    if jac.iter().any(|x| !x.is_zero()) {
                        return JacobiReport { holds: false, failure: Some(((i, j, k), jac)) };
                    }
                }
            }
        }
        JacobiReport { holds: true, failure: None }
    }

    pub fn lower_central_series(&self) -> LowerCentralSeries {
        let n = self.dim;
        let mut series = vec![Subspace::full(n)];
        loop {
            let last = series.last().expect("nonempty");
            if last.is_zero() {
                let step = series.len() - 1;
                return LowerCentralSeries { series, is_nilpotent: true, step: Some(step) };
            }
            let mut vectors = Vec::new();
            for i in 0..n {
                for v in last.basis_vectors() {
                    vectors.push(self.bracket(&self.unit(i), &v));
                }
            }
            let next = Subspace::span(n, vectors);
            if next == *last {
                return LowerCentralSeries { series, is_nilpotent: false, step: None };
            }
            series.push(next);
        }
    }

    /// Generator images deᵏ = −Σ_{i<j} cᵏᵢⱼ eⁱ∧eʲ, without the d² check.
    pub fn ce_images(&self) -> Vec<FormElement> {
        (0..self.dim)
            .map(|k| {
                let mut f = FormElement::zero();
                for i in 0..self.dim {
                    for j in i + 1..self.dim {
                        let c = self.structure_constant(i, j, k);
                        if !c.is_zero() {
                            f.add_term((1 << i) | (1 << j), CScalar::real(-c));
                        }
                    }
                }
                f
            })
            .collect()
    }

    /// The Chevalley–Eilenberg complex (∧•𝔤*, d); fails with d² ≠ 0 exactly
    /// when the Jacobi identity fails.
    pub fn ce_differential(&self) -> Result<DgaPresentation> {
        DgaPresentation::new(self.ce_images())
    }

    pub fn filtration(&self) -> Result<Filtration> {
        self.ce_differential()?.filtration()
    }

    pub fn check_minimal_basis(&self, basis: &[FormElement]) -> Result<bool> {
        self.ce_differential()?.check_minimal_basis(basis)
    }
}
