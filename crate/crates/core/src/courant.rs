//! The double 𝔤 ⊕ 𝔤* with its split pairing, the H-twisted Courant bracket,
//! the Clifford action on forms, and the twisted differential d_H = d + H∧.
//!
//! On invariant sections the bracket is
//! ⟦X+ξ, Y+η⟧ = [X,Y] + ι_X dη − ι_Y dξ + ι_X ι_Y H,
//! i.e. the Lie derivative reduces to ι_X d because ξ(Y) is constant.

use std::fmt;

use crate::dga::apply_derivation;
use crate::error::{Error, Result};
use crate::exactlin::{CScalar, Matrix};
use crate::forms::{FormElement, MonomialBasis};
use crate::liealg::LieAlgebra;

/// Coordinates (X¹…Xᵐ, ξ₁…ξₘ) in the basis (e₁…eₘ, e¹…eᵐ).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DoubleElement(Vec<CScalar>);

impl DoubleElement {
    pub fn new(coords: Vec<CScalar>) -> Self {
        assert!(coords.len().is_multiple_of(2), "double coordinates must have even length");
        DoubleElement(coords)
    }

    pub fn zero(m: usize) -> Self {
        DoubleElement(vec![CScalar::zero(); 2 * m])
    }

    /// i-th basis element of the double (vectors first, then covectors).
    pub fn basis(m: usize, i: usize) -> Self {
        let mut v = Self::zero(m);
        v.0[i] = CScalar::one();
        v
    }

    pub fn from_parts(x: &[CScalar], xi: &[CScalar]) -> Self {
        assert_eq!(x.len(), xi.len());
        DoubleElement([x, xi].concat())
    }

    pub fn m(&self) -> usize {
        self.0.len() / 2
    }

    pub fn coords(&self) -> &[CScalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<CScalar> {
        self.0
    }

    pub fn vector_part(&self) -> &[CScalar] {
        &self.0[..self.m()]
    }

    pub fn covector_part(&self) -> &[CScalar] {
        &self.0[self.m()..]
    }

    pub fn conj(&self) -> Self {
        DoubleElement(self.0.iter().map(CScalar::conj).collect())
    }

    pub fn add(&self, o: &DoubleElement) -> Self {
        DoubleElement(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, s: &CScalar) -> Self {
        DoubleElement(self.0.iter().map(|a| a * s).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(CScalar::is_zero)
    }
}

impl fmt::Debug for DoubleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({} | {})", parts[..self.m()].join(", "), parts[self.m()..].join(", "))
    }
}

/// ⟨X+ξ, Y+η⟩ = ½(η(X) + ξ(Y)), complex-bilinear.
pub fn pairing(v: &DoubleElement, w: &DoubleElement) -> CScalar {
    let eta_x: CScalar = w.covector_part().iter().zip(v.vector_part()).map(|(a, b)| a * b).sum();
    let xi_y: CScalar = v.covector_part().iter().zip(w.vector_part()).map(|(a, b)| a * b).sum();
    (eta_x + xi_y) * CScalar::from_ratio(1, 2)
}

/// Gram matrix ½[[0, I], [I, 0]] of the pairing on the standard basis.
pub fn pairing_gram(m: usize) -> Matrix {
    let mut g = Matrix::zeros(2 * m, 2 * m);
    for i in 0..m {
        g[(i, m + i)] = CScalar::from_ratio(1, 2);
        g[(m + i, i)] = CScalar::from_ratio(1, 2);
    }
    g
}

/// (X + ξ)·ρ = ι_X ρ + ξ ∧ ρ.
pub fn clifford_act(v: &DoubleElement, rho: &FormElement) -> FormElement {
    rho.contract_vector(v.vector_part()).add(&FormElement::linear(v.covector_part()).wedge(rho))
}

/// Matrix of the Clifford action of `v` on ∧•𝔤*ℂ.
pub fn clifford_matrix(v: &DoubleElement, basis: &MonomialBasis) -> Matrix {
    basis.operator_matrix(|m| clifford_act(v, &FormElement::monomial(m, CScalar::one())))
}

/// A closed real 3-form twisting the bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Twist {
    h: FormElement,
}

impl Twist {
    pub fn zero() -> Self {
        Twist { h: FormElement::zero() }
    }

    /// Accepts H only if it is a real 3-form with dH = 0 in the CE complex of `g`.
    pub fn new(h: FormElement, g: &LieAlgebra) -> Result<Self> {
        if !h.is_zero() && (h.homogeneous_degree() != Some(3) || !h.is_real() || h.support_width() > g.dim()) {
            return Err(Error::TwistNotReal3Form);
        }
        let dh = apply_derivation(&g.ce_images(), &h);
        if !dh.is_zero() {
            return Err(Error::TwistNotClosed(dh.to_string()));
        }
        Ok(Twist { h })
    }

    pub fn form(&self) -> &FormElement {
        &self.h
    }

    pub fn is_zero(&self) -> bool {
        self.h.is_zero()
    }
}

/// 𝔤 ⊕ 𝔤* with the H-twisted Courant bracket.
#[derive(Clone, Debug)]
pub struct TwistedDouble {
    algebra: LieAlgebra,
    twist: Twist,
    ce_images: Vec<FormElement>,
    basis: MonomialBasis,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketJacobiReport {
    pub holds: bool,
    pub triples_checked: usize,
    pub failure: Option<(usize, usize, usize)>,
}

impl TwistedDouble {
    pub fn new(algebra: LieAlgebra, twist: Twist) -> Result<Self> {
        // re-validate: a Twist built for another algebra may not be closed here
        let twist = Twist::new(twist.h, &algebra)?;
        let ce_images = algebra.ce_images();
        let basis = MonomialBasis::new(algebra.dim());
        Ok(TwistedDouble { algebra, twist, ce_images, basis })
    }

    pub fn untwisted(algebra: LieAlgebra) -> Self {
        Self::new(algebra, Twist::zero()).expect("zero twist is closed")
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn twist(&self) -> &Twist {
        &self.twist
    }

    pub fn m(&self) -> usize {
        self.algebra.dim()
    }

    pub fn form_basis(&self) -> &MonomialBasis {
        &self.basis
    }

    /// CE differential of `f` (no twist).
    pub fn d(&self, f: &FormElement) -> FormElement {
        apply_derivation(&self.ce_images, f)
    }

    /// ⟦X+ξ, Y+η⟧ = [X,Y] + ι_X dη − ι_Y dξ + ι_X ι_Y H, the sign of the
    /// twist term being the one for which ⟦v, w⟧·ρ = [[d_H, v·], w·]ρ.
    pub fn bracket(&self, v: &DoubleElement, w: &DoubleElement) -> DoubleElement {
        let (x, xi) = (v.vector_part(), v.covector_part());
        let (y, eta) = (w.vector_part(), w.covector_part());
        let vec = self.algebra.bracket(x, y);
        let lie_x_eta = self.d(&FormElement::linear(eta)).contract_vector(x);
        let lie_y_xi = self.d(&FormElement::linear(xi)).contract_vector(y);
        let h_term = self.twist.h.contract_vector(y).contract_vector(x);
        let cov = lie_x_eta.sub(&lie_y_xi).add(&h_term);
        let mut covector = vec![CScalar::zero(); self.m()];
        for (mask, c) in cov.terms() {
            covector[mask.trailing_zeros() as usize] = c.clone();
        }
        DoubleElement::from_parts(&vec, &covector)
    }

    /// Jacobi identity for the twisted bracket on all basis triples of the double.
    pub fn check_bracket_jacobi(&self) -> BracketJacobiReport {
        let n = 2 * self.m();
        let e: Vec<DoubleElement> = (0..n).map(|i| DoubleElement::basis(self.m(), i)).collect();
        let mut checked = 0;
        for i in 0..n {
            for j in i + 1..n {
                let ij = self.bracket(&e[i], &e[j]);
                for k in j + 1..n {
                    checked += 1;
                    let jac = self
                        .bracket(&ij, &e[k])
                        .add(&self.bracket(&self.bracket(&e[j], &e[k]), &e[i]))
                        .add(&self.bracket(&self.bracket(&e[k], &e[i]), &e[j]));
                    if !jac.is_zero() {
                        return BracketJacobiReport { holds: false, triples_checked: checked, failure: Some((i, j, k)) };
                    }
                }
            }
        }
        BracketJacobiReport { holds: true, triples_checked: checked, failure: None }
    }

    /// d_H ρ = dρ + H ∧ ρ.
    pub fn d_h(&self, rho: &FormElement) -> FormElement {
        self.d(rho).add(&self.twist.h.wedge(rho))
    }

    /// Matrix of d_H on ∧•𝔤*ℂ in graded-lexicographic coordinates.
    pub fn d_h_matrix(&self) -> Matrix {
        self.basis.operator_matrix(|m| self.d_h(&FormElement::monomial(m, CScalar::one())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;

    fn heis3() -> LieAlgebra {
        LieAlgebra::from_brackets(3, &[(0, 1, 2, int(1))]).unwrap()
    }

    fn kt4() -> LieAlgebra {
        LieAlgebra::from_brackets(4, &[(0, 1, 2, int(1))]).unwrap()
    }

    #[test]
    fn pairing_examples() {
        let v = DoubleElement::basis(2, 0).add(&DoubleElement::basis(2, 2));
        assert_eq!(pairing(&v, &v), CScalar::one());
        let e1 = DoubleElement::basis(2, 0);
        assert!(pairing(&e1, &e1).is_zero());
        assert_eq!(crate::exactlin::inertia(&pairing_gram(3)).unwrap(), (3, 3, 0));
    }

    #[test]
    fn bracket_examples() {
        let td = TwistedDouble::untwisted(heis3());
        let b = |i, j| td.bracket(&DoubleElement::basis(3, i), &DoubleElement::basis(3, j));
        // vectors: Lie bracket
        assert_eq!(b(0, 1), DoubleElement::basis(3, 2));
        // covectors bracket to zero
        assert!(b(3, 5).is_zero());
        // ⟦e₁, e³⟧ = ι_{e₁}(−e¹∧e²) = −e²
        assert_eq!(b(0, 5), DoubleElement::basis(3, 4).scale(&CScalar::from_int(-1)));
    }

    #[test]
    fn twisted_jacobi() {
        assert!(TwistedDouble::untwisted(heis3()).check_bracket_jacobi().holds);
        let h = FormElement::from_indices(&[0, 1, 3], CScalar::one());
        let td = TwistedDouble::new(kt4(), Twist::new(h, &kt4()).unwrap()).unwrap();
        let r = td.check_bracket_jacobi();
        assert!(r.holds);
        assert_eq!(r.triples_checked, 56);
    }

    #[test]
    fn non_closed_twist_is_refused() {
        // heis3 ⊕ ℝ² with de⁵ = −e¹∧e²; d(e³∧e⁴∧e⁵) ≠ 0
        let g = LieAlgebra::from_brackets(5, &[(0, 1, 4, int(1))]).unwrap();
        let h = FormElement::from_indices(&[2, 3, 4], CScalar::one());
        assert!(matches!(Twist::new(h, &g), Err(Error::TwistNotClosed(_))));
        let not3 = FormElement::from_indices(&[0, 1], CScalar::one());
        assert_eq!(Twist::new(not3, &g), Err(Error::TwistNotReal3Form));
    }

    #[test]
    fn d_h_examples() {
        let g = kt4();
        let h = FormElement::from_indices(&[0, 1, 3], CScalar::one());
        let td = TwistedDouble::new(g.clone(), Twist::new(h.clone(), &g).unwrap()).unwrap();
        assert_eq!(td.d_h(&FormElement::one()), h);
        let dh = td.d_h_matrix();
        assert!(dh.mul(&dh).is_zero());
        let plain = TwistedDouble::untwisted(g.clone());
        assert_eq!(plain.d_h_matrix(), g.ce_differential().unwrap().d_matrix().clone());
    }

    #[test]
    fn clifford_examples() {
        let e1 = DoubleElement::basis(2, 0);
        let e12 = FormElement::from_indices(&[0, 1], CScalar::one());
        assert_eq!(clifford_act(&e1, &e12), FormElement::generator(1));
        let co1 = DoubleElement::basis(2, 2);
        assert_eq!(clifford_act(&co1, &FormElement::one()), FormElement::generator(0));
    }
}
