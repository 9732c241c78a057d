//! Generalized complex structures on 𝔤 ⊕ 𝔤*.
//!
//! A structure is a real 2m×2m matrix J acting on double coordinates. Its
//! i-eigenspace L is computed over ℚ(i); the canonical line is the joint
//! kernel of the Clifford action of L on ∧•𝔤*ℂ, and the levels
//! Uᵏ = ∧^{n−k} L̄ · ρ are produced by iterated Clifford action of L̄.
//!
//! The Lie algebroid complex (∧•L̄, d_L) identifies L* with L̄ through
//! φ(ā)(b) = 2⟨ā, b⟩, so that a basis λ¹…λᵐ of L̄ is dual to a basis
//! ℓ₁…ℓₘ of L, and d_L is the CE differential of (L, ⟦·,·⟧).

use serde::Serialize;

use crate::courant::{clifford_act, pairing, pairing_gram, DoubleElement, TwistedDouble};
use crate::dga::DgaPresentation;
use crate::error::{Error, Result};
use crate::exactlin::{kernel, CScalar, DirectSum, Matrix, Subspace};
use crate::forms::{monomial_name, FormElement, MonomialBasis};

/// Matrix of X ↦ ι_X ω for a 2-form ω on m generators.
pub fn two_form_matrix(omega: &FormElement, m: usize) -> Matrix {
    let cols: Vec<Vec<CScalar>> = (0..m)
        .map(|i| {
            let c = omega.contract(i);
            (0..m).map(|k| c.coefficient(1 << k)).collect()
        })
        .collect();
    Matrix::from_columns(m, &cols)
}

fn blocks(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
    a.hstack(b).vstack(&c.hstack(d))
}

/// Structure induced by a complex structure J on 𝔤: [[−J, 0], [0, Jᵀ]],
/// whose i-eigenspace is T^{0,1} ⊕ T*^{1,0}.
pub fn complex_structure_gcs(j: &Matrix) -> Matrix {
    let m = j.rows();
    let z = Matrix::zeros(m, m);
    blocks(&j.scale(&CScalar::from_int(-1)), &z, &z, &j.transpose())
}

/// Structure induced by a nondegenerate 2-form: [[0, −ω⁻¹], [ω, 0]], with
/// i-eigenspace {X − iω(X)}.
pub fn symplectic_gcs(omega: &FormElement, m: usize) -> Result<Matrix> {
    let w = two_form_matrix(omega, m);
    let winv = w
        .inverse()
        .ok_or_else(|| Error::InvalidStructure("2-form is degenerate".to_string()))?;
    let z = Matrix::zeros(m, m);
    Ok(blocks(&z, &winv.scale(&CScalar::from_int(-1)), &w, &z))
}

/// Conjugation by the shear e^B: X + ξ ↦ X + ξ + ι_X B.
pub fn b_transform(j: &Matrix, b: &FormElement) -> Matrix {
    let m = j.rows() / 2;
    let wb = two_form_matrix(b, m);
    let (id, z) = (Matrix::identity(m), Matrix::zeros(m, m));
    let shear = blocks(&id, &z, &wb, &id);
    let unshear = blocks(&id, &z, &wb.scale(&CScalar::from_int(-1)), &id);
    shear.mul(&j.mul(&unshear))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GcsReport {
    pub real: bool,
    pub squares_to_minus_one: bool,
    pub preserves_pairing: bool,
    pub involutive: bool,
    pub failure: Option<String>,
}

impl GcsReport {
    pub fn passes(&self) -> bool {
        self.real && self.squares_to_minus_one && self.preserves_pairing && self.involutive
    }
}

/// Checks each defining condition separately; failures are verdicts.
pub fn check_gcs(j: &Matrix, td: &TwistedDouble) -> GcsReport {
    let n2 = 2 * td.m();
    let mut report = GcsReport {
        real: j.is_real(),
        squares_to_minus_one: false,
        preserves_pairing: false,
        involutive: false,
        failure: None,
    };
    if j.rows() != n2 || j.cols() != n2 {
        report.failure = Some(format!("J must be {n2}x{n2}, got {}x{}", j.rows(), j.cols()));
        return report;
    }
    report.squares_to_minus_one = j.mul(j) == Matrix::identity(n2).scale(&CScalar::from_int(-1));
    let g = pairing_gram(td.m());
    report.preserves_pairing = j.transpose().mul(&g).mul(j) == g;
    if !report.squares_to_minus_one {
        report.failure = Some("J^2 != -1".to_string());
        return report;
    }
    let l = i_eigenspace_raw(j);
    let basis: Vec<DoubleElement> = l.basis_vectors().into_iter().map(DoubleElement::new).collect();
    for (a, u) in basis.iter().enumerate() {
        for w in &basis[a + 1..] {
            let br = td.bracket(u, w);
            if !l.contains(br.coords()) {
                report.failure = Some(format!("bracket {u:?}, {w:?} leaves L"));
                return report;
            }
        }
    }
    report.involutive = true;
    if !report.preserves_pairing {
        report.failure = Some("J does not preserve the pairing".to_string());
    }
    report
}

fn i_eigenspace_raw(j: &Matrix) -> Subspace {
    let n = j.rows();
    kernel(&j.sub(&Matrix::identity(n).scale(&CScalar::i())))
}

/// The i-eigenspace L ⊂ (𝔤 ⊕ 𝔤*) ⊗ ℂ with anchor π onto the vector part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenbundle {
    l: Subspace,
    m: usize,
}

impl Eigenbundle {
    pub fn subspace(&self) -> &Subspace {
        &self.l
    }

    pub fn conj(&self) -> Subspace {
        self.l.conj()
    }

    pub fn basis(&self) -> Vec<DoubleElement> {
        self.l.basis_vectors().into_iter().map(DoubleElement::new).collect()
    }

    pub fn dim(&self) -> usize {
        self.l.dim()
    }

    pub fn anchor_rank(&self) -> usize {
        let vectors = self.basis().iter().map(|v| v.vector_part().to_vec()).collect::<Vec<_>>();
        Subspace::span(self.m, vectors).dim()
    }

    /// dim ker(π|_L).
    pub fn type_number(&self) -> usize {
        self.dim() - self.anchor_rank()
    }
}

/// L = ker(J − i); verifies dim L = m, isotropy and L ∩ L̄ = 0.
pub fn i_eigenspace(j: &Matrix) -> Result<Eigenbundle> {
    let m = j.rows() / 2;
    let l = i_eigenspace_raw(j);
    if l.dim() != m {
        return Err(Error::EigenspaceDimension { found: l.dim(), expected: m });
    }
    let basis: Vec<DoubleElement> = l.basis_vectors().into_iter().map(DoubleElement::new).collect();
    for u in &basis {
        for w in &basis {
            if !pairing(u, w).is_zero() {
                return Err(Error::InvalidStructure("L is not isotropic".to_string()));
            }
        }
    }
    if !l.intersect(&l.conj())?.is_zero() {
        return Err(Error::InvalidStructure("L meets its conjugate".to_string()));
    }
    Ok(Eigenbundle { l, m })
}

/// Generator of the pure-spinor line, normalized so that its lowest term in
/// (degree, lexicographic) order has coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinorLine {
    pub rho: FormElement,
}

fn normalize_spinor(rho: FormElement) -> FormElement {
    match rho.leading_term() {
        Some((_, c)) => {
            let s = c.inv();
            rho.scale(&s)
        }
        None => rho,
    }
}

pub fn canonical_line(l: &Eigenbundle) -> Result<SpinorLine> {
    let basis = MonomialBasis::new(l.m);
    // annihilator of L, cut down one generator at a time
    let mut space: Vec<FormElement> = (0..basis.len()).map(|i| FormElement::monomial(basis.mask(i), CScalar::one())).collect();
    for v in &l.basis() {
        let images: Vec<Vec<CScalar>> = space.iter().map(|f| clifford_act(v, f).to_dense(&basis)).collect();
        space = kernel(&Matrix::from_columns(basis.len(), &images))
            .basis_vectors()
            .iter()
            .map(|c| combine(&space, c))
            .collect();
    }
    if space.len() != 1 {
        return Err(Error::SpinorLineDimension(space.len()));
    }
    let rho = space.pop().expect("one element");
    Ok(SpinorLine { rho: normalize_spinor(rho) })
}

fn combine(forms: &[FormElement], coeffs: &[CScalar]) -> FormElement {
    forms
        .iter()
        .zip(coeffs)
        .filter(|(_, c)| !c.is_zero())
        .fold(FormElement::zero(), |acc, (f, c)| acc.add(&f.scale(c)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PureSpinorData {
    pub rho: FormElement,
    /// Ω ∧ Ω̄ ∧ ω^{n−k} ≠ 0
    pub nondegenerate: bool,
}

/// ρ = e^{B+iω} ∧ Ω together with the nondegeneracy test, for 2n = m.
pub fn spinor_from_data(b: &FormElement, omega: &FormElement, big_omega: &FormElement, m: usize) -> Result<PureSpinorData> {
    let k = match big_omega.homogeneous_degree() {
        Some(k) => k,
        None => return Err(Error::NotDecomposable),
    };
    if k > 0 {
        // Ω is decomposable iff {ξ : ξ ∧ Ω = 0} has dimension k
        let basis = MonomialBasis::new(m);
        let cols: Vec<Vec<CScalar>> = (0..m)
            .map(|i| FormElement::generator(i).wedge(big_omega).to_dense(&basis))
            .collect();
        if kernel(&Matrix::from_columns(basis.len(), &cols)).dim() != k {
            return Err(Error::NotDecomposable);
        }
    }
    let exponent = b.add(&omega.scale(&CScalar::i()));
    let rho = exponent.exp().wedge(big_omega);
    let n = m / 2;
    let nondegenerate = m.is_multiple_of(2) && k <= n && {
        let power = (0..n - k).fold(FormElement::one(), |acc, _| acc.wedge(omega));
        !big_omega.wedge(&big_omega.conj()).wedge(&power).is_zero()
    };
    Ok(PureSpinorData { rho, nondegenerate })
}

/// Ordered levels U^n, U^{n−1}, …, U^{−n} with the direct-sum data.
#[derive(Clone, Debug)]
pub struct UkDecomposition {
    n: i64,
    sum: DirectSum,
}

impl UkDecomposition {
    pub fn half_dim(&self) -> i64 {
        self.n
    }

    /// Block index of Uᵏ.
    pub fn level(&self, k: i64) -> usize {
        (self.n - k) as usize
    }

    pub fn space(&self, k: i64) -> &Subspace {
        &self.sum.blocks()[self.level(k)]
    }

    /// (k, dim Uᵏ) for k = n, …, −n.
    pub fn dims(&self) -> Vec<(i64, usize)> {
        (0..self.sum.len()).map(|j| (self.n - j as i64, self.sum.blocks()[j].dim())).collect()
    }

    pub fn direct_sum(&self) -> &DirectSum {
        &self.sum
    }
}

/// ∂ and ∂̄ as full operators on ∧•𝔤*ℂ.
#[derive(Clone, Debug)]
pub struct DelDelbar {
    pub del: Matrix,
    pub delbar: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Eq3Report {
    pub holds: bool,
    pub checked: usize,
    pub failure: Option<String>,
}

/// (∧•L̄, d_L) together with the spinor map α ↦ α·ρ.
#[derive(Clone, Debug)]
pub struct Algebroid {
    /// Basis λ¹…λᵐ of L̄.
    pub lbar: Vec<DoubleElement>,
    /// Dual basis ℓ₁…ℓₘ of L: 2⟨λᵃ, ℓ_b⟩ = δᵃ_b.
    pub l: Vec<DoubleElement>,
    pub dga: DgaPresentation,
    /// Columns: α·ρ for each monomial α of ∧•L̄ in graded-lex order.
    pub spinor_map: Matrix,
}

/// A validated generalized complex structure with its cached decomposition.
#[derive(Clone, Debug)]
pub struct GeneralizedComplex {
    td: TwistedDouble,
    j: Matrix,
    l: Eigenbundle,
    line: SpinorLine,
    uk: UkDecomposition,
    d_h: Matrix,
}

impl GeneralizedComplex {
    pub fn new(td: TwistedDouble, j: Matrix) -> Result<Self> {
        let m = td.m();
        if !m.is_multiple_of(2) {
            return Err(Error::InvalidStructure(format!("odd dimension {m}")));
        }
        let report = check_gcs(&j, &td);
        if !report.passes() {
            return Err(Error::InvalidStructure(report.failure.unwrap_or_default()));
        }
        let l = i_eigenspace(&j)?;
        let line = canonical_line(&l)?;
        let uk = Self::decompose(&l, &line, m)?;
        let d_h = td.d_h_matrix();
        Ok(GeneralizedComplex { td, j, l, line, uk, d_h })
    }

    fn decompose(l: &Eigenbundle, line: &SpinorLine, m: usize) -> Result<UkDecomposition> {
        let basis = MonomialBasis::new(m);
        let basis = &basis;
        let lbar: Vec<DoubleElement> = l.basis().iter().map(DoubleElement::conj).collect();
        let mut levels = vec![Subspace::span(basis.len(), vec![line.rho.to_dense(basis)])];
        for _ in 0..m {
            let prev: Vec<FormElement> =
                levels.last().expect("nonempty").basis_vectors().iter().map(|v| FormElement::from_dense(v, basis)).collect();
            let next: Vec<Vec<CScalar>> =
                lbar.iter().flat_map(|c| prev.iter().map(move |f| clifford_act(c, f).to_dense(basis))).collect();
            levels.push(Subspace::span(basis.len(), next));
        }
        for (j, s) in levels.iter().enumerate() {
            let expected = binomial(m, j);
            if s.dim() != expected {
                return Err(Error::NotDirectSum(format!("level {j} has dimension {}, expected {expected}", s.dim())));
            }
        }
        Ok(UkDecomposition { n: (m / 2) as i64, sum: DirectSum::new(levels)? })
    }

    pub fn double(&self) -> &TwistedDouble {
        &self.td
    }

    pub fn matrix(&self) -> &Matrix {
        &self.j
    }

    pub fn eigenbundle(&self) -> &Eigenbundle {
        &self.l
    }

    pub fn spinor(&self) -> &SpinorLine {
        &self.line
    }

    pub fn uk(&self) -> &UkDecomposition {
        &self.uk
    }

    pub fn d_h_matrix(&self) -> &Matrix {
        &self.d_h
    }

    pub fn type_of(&self) -> usize {
        self.l.type_number()
    }

    /// True iff the bracket vanishes on all basis pairs of L.
    pub fn is_abelian(&self) -> bool {
        let basis = self.l.basis();
        basis.iter().enumerate().all(|(a, u)| basis[a + 1..].iter().all(|w| self.td.bracket(u, w).is_zero()))
    }

    pub fn check_hol_trivial(&self) -> bool {
        self.td.d_h(&self.line.rho).is_zero()
    }

    /// Splits d_H = ∂ + ∂̄ across adjacent levels; any other component is an
    /// integrability failure naming the offending basis form.
    pub fn del_delbar(&self) -> Result<DelDelbar> {
        let ds = self.uk.direct_sum();
        let adapted = ds.adapted(&self.d_h);
        for (t, s) in ds.block_support(&adapted) {
            if t + 1 != s && s + 1 != t {
                let range = ds.block_range(s);
                let basis = MonomialBasis::new(self.td.m());
                let offending = range
                    .clone()
                    .map(|c| ds.blocks()[s].basis_vectors()[c - range.start].clone())
                    .find(|v| {
                        let out = self.d_h.mul_vec(v);
                        !ds.project(&out, t).iter().all(CScalar::is_zero)
                    })
                    .map(|v| FormElement::from_dense(&v, &basis).to_string())
                    .unwrap_or_default();
                return Err(Error::NotIntegrable(format!(
                    "d_H maps U^{} into U^{} on {offending}",
                    self.uk.n - s as i64,
                    self.uk.n - t as i64
                )));
            }
        }
        Ok(DelDelbar {
            del: ds.assemble(&adapted, |t, s| t + 1 == s),
            delbar: ds.assemble(&adapted, |t, s| t == s + 1),
        })
    }

    /// Default L̄ basis: conjugates of the canonical basis of L.
    pub fn default_lbar_basis(&self) -> Vec<DoubleElement> {
        self.l.basis().iter().map(DoubleElement::conj).collect()
    }

    pub fn algebroid(&self) -> Result<Algebroid> {
        self.algebroid_with_basis(self.default_lbar_basis())
    }

    /// Builds (∧•L̄, d_L) on a chosen basis of L̄.
    pub fn algebroid_with_basis(&self, lbar: Vec<DoubleElement>) -> Result<Algebroid> {
        let m = self.td.m();
        let two = CScalar::from_int(2);
        let lbar_space = self.l.conj();
        if lbar.len() != m
            || lbar.iter().any(|v| !lbar_space.contains(v.coords()))
            || Subspace::span(2 * m, lbar.iter().map(|v| v.coords().to_vec())).dim() != m
        {
            return Err(Error::InvalidStructure("not a basis of the conjugate eigenspace".to_string()));
        }
        let lb = self.l.basis();
        let r = Matrix::from_rows(lbar.iter().map(|a| lb.iter().map(|c| &two * &pairing(a, c)).collect()).collect());
        let q = r
            .inverse()
            .ok_or_else(|| Error::InvalidStructure("pairing between L and its conjugate is degenerate".to_string()))?
            .transpose();
        let l: Vec<DoubleElement> = (0..m)
            .map(|b| {
                (0..m).fold(DoubleElement::zero(m), |acc, c| acc.add(&lb[c].scale(&q[(b, c)])))
            })
            .collect();
        let mut images = vec![FormElement::zero(); m];
        for b in 0..m {
            for c in b + 1..m {
                let br = self.td.bracket(&l[b], &l[c]);
                for (a, img) in images.iter_mut().enumerate() {
                    let coeff = &two * &pairing(&lbar[a], &br);
                    img.add_term((1 << b) | (1 << c), -coeff);
                }
            }
        }
        let dga = DgaPresentation::new(images)?;
        let basis = MonomialBasis::new(m);
        let cols: Vec<Vec<CScalar>> = basis
            .masks()
            .iter()
            .map(|&mask| {
                let mut form = self.line.rho.clone();
                for a in (0..m).rev().filter(|a| mask & (1 << a) != 0) {
                    form = clifford_act(&lbar[a], &form);
                }
                form.to_dense(&basis)
            })
            .collect();
        Ok(Algebroid { lbar, l, dga, spinor_map: Matrix::from_columns(basis.len(), &cols) })
    }

    /// Checks ∂̄(α·ρ) = (d_L α)·ρ for every basis monomial α of ∧•L̄.
    pub fn verify_eq3(&self) -> Result<Eq3Report> {
        if !self.check_hol_trivial() {
            return Err(Error::NotHolomorphicallyTrivial);
        }
        let dd = self.del_delbar()?;
        let alg = self.algebroid()?;
        Ok(spinor_intertwines(&dd.delbar, &alg, alg.dga.d_matrix()))
    }
}

/// Checks op ∘ S = S ∘ d column by column, naming the first failing monomial.
pub(crate) fn spinor_intertwines(op: &Matrix, alg: &Algebroid, d: &Matrix) -> Eq3Report {
    let lhs = op.mul(&alg.spinor_map);
    let rhs = alg.spinor_map.mul(d);
    let basis = alg.dga.basis();
    let failure = (0..lhs.cols())
        .find(|&c| lhs.column(c) != rhs.column(c))
        .map(|c| monomial_name(basis.mask(c), "l"));
    Eq3Report { holds: failure.is_none(), checked: lhs.cols(), failure }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
