//! Finite-dimensional exterior DGAs generated in degree one.
//!
//! A presentation fixes d on the generators g¹…gⁿ (each image of pure degree
//! 2) and extends it as a degree-one derivation, d = Σᵢ dgⁱ ∧ ι_i. On top of
//! that sit cohomology, Massey triple products, the ascending filtration of
//! the generator space, the minimality test for ordered bases, and the
//! volume-form obstruction to formality for nilpotent presentations.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{kernel, image, solve, CScalar, Matrix, Subspace};
use crate::forms::{FormElement, MonomialBasis};

#[derive(Clone, Debug)]
pub struct DgaPresentation {
    d_images: Vec<FormElement>,
    basis: MonomialBasis,
    d: Matrix,
}

/// Applies the derivation determined by generator images to `f`.
pub fn apply_derivation(images: &[FormElement], f: &FormElement) -> FormElement {
    let mut out = FormElement::zero();
    for (i, img) in images.iter().enumerate() {
        if img.is_zero() {
            continue;
        }
        let c = f.contract(i);
        if !c.is_zero() {
            out = out.add(&img.wedge(&c));
        }
    }
    out
}

impl DgaPresentation {
    /// Extends generator images to a derivation and checks d² = 0.
    pub fn new(d_images: Vec<FormElement>) -> Result<Self> {
        let n = d_images.len();
        for (i, img) in d_images.iter().enumerate() {
            if !img.is_zero() && (img.homogeneous_degree() != Some(2) || img.support_width() > n) {
                return Err(Error::NotDegreeTwo { generator: i + 1 });
            }
        }
        for (i, img) in d_images.iter().enumerate() {
            let dd = apply_derivation(&d_images, img);
            if !dd.is_zero() {
                return Err(Error::DSquaredNonzero { generator: i + 1, value: dd.display_with("g") });
            }
        }
        let basis = MonomialBasis::new(n);
        let d = basis.operator_matrix(|m| apply_derivation(&d_images, &FormElement::monomial(m, CScalar::one())));
        Ok(DgaPresentation { d_images, basis, d })
    }

    pub fn generators(&self) -> usize {
        self.d_images.len()
    }

    pub fn d_images(&self) -> &[FormElement] {
        &self.d_images
    }

    pub fn basis(&self) -> &MonomialBasis {
        &self.basis
    }

    /// Full 2ⁿ × 2ⁿ matrix of d in graded-lexicographic coordinates.
    pub fn d_matrix(&self) -> &Matrix {
        &self.d
    }

    pub fn d_degree(&self, k: usize) -> Matrix {
        self.basis.degree_block(&self.d, k, k + 1)
    }

    pub fn differential(&self, f: &FormElement) -> FormElement {
        apply_derivation(&self.d_images, f)
    }

    pub fn is_zero_differential(&self) -> bool {
        self.d_images.iter().all(FormElement::is_zero)
    }

    /// Coordinates of the degree-k part of `f` inside ∧ᵏ.
    pub fn degree_vector(&self, f: &FormElement, k: usize) -> Vec<CScalar> {
        let range = self.basis.degree_range(k);
        let mut v = vec![CScalar::zero(); range.len()];
        for (m, c) in f.terms() {
            if m.count_ones() as usize == k {
                v[self.basis.index_of(m) - range.start] = c.clone();
            }
        }
        v
    }

    pub fn degree_form(&self, v: &[CScalar], k: usize) -> FormElement {
        let range = self.basis.degree_range(k);
        assert_eq!(v.len(), range.len());
        FormElement::from_terms(range.zip(v).map(|(i, c)| (self.basis.mask(i), c.clone())))
    }

    pub fn is_closed(&self, f: &FormElement) -> bool {
        self.differential(f).is_zero()
    }

    /// Canonical (echelon) preimage x with dx = f, if f is exact.
    pub fn solve_exact(&self, f: &FormElement) -> Option<FormElement> {
        if f.is_zero() {
            return Some(FormElement::zero());
        }
        let k = f.homogeneous_degree()?;
        if k == 0 {
            return None;
        }
        let x = solve(&self.d_degree(k - 1), &self.degree_vector(f, k))?;
        Some(self.degree_form(&x, k - 1))
    }

    pub fn is_exact(&self, f: &FormElement) -> bool {
        self.solve_exact(f).is_some()
    }

    pub fn cohomology(&self) -> CohomologyData {
        let n = self.generators();
        let degrees = (0..=n)
            .map(|k| {
                let closed = kernel(&self.d_degree(k));
                let exact = if k == 0 {
                    Subspace::zero(1)
                } else {
                    image(&self.d_degree(k - 1))
                };
                let representatives = exact
                    .complement_in(&closed)
                    .expect("same ambient")
                    .iter()
                    .map(|v| self.degree_form(v, k))
                    .collect::<Vec<_>>();
                CohomologyDegree { betti: closed.dim() - exact.dim(), closed, exact, representatives }
            })
            .collect();
        CohomologyData { degrees }
    }

    /// Massey triple product ⟨[a],[b],[c]⟩ with canonical choices of primitives.
    pub fn massey_triple(
        &self,
        coh: &CohomologyData,
        a: &FormElement,
        b: &FormElement,
        c: &FormElement,
    ) -> Result<MasseyResult> {
        let x = self
            .solve_exact(&a.wedge(b))
            .ok_or_else(|| Error::UndefinedMassey("[a][b] != 0".to_string()))?;
        let y = self
            .solve_exact(&b.wedge(c))
            .ok_or_else(|| Error::UndefinedMassey("[b][c] != 0".to_string()))?;
        self.massey_from_primitives(coh, a, b, c, &x, &y)
    }

    /// Massey representative x∧c − (−1)^{|a|} a∧y for given primitives
    /// dx = a∧b, dy = b∧c.
    pub fn massey_from_primitives(
        &self,
        coh: &CohomologyData,
        a: &FormElement,
        b: &FormElement,
        c: &FormElement,
        x: &FormElement,
        y: &FormElement,
    ) -> Result<MasseyResult> {
        let (representative, degree, db) = self.massey_representative([a, b, c], x, y)?;
        let indeterminacy = self.massey_indeterminacy(coh, a, c, db);
        let vanishes = indeterminacy.contains(&self.degree_vector(&representative, degree));
        Ok(MasseyResult { representative, degree, indeterminacy, vanishes })
    }

    /// Returns the representative, its degree and |b|.
    fn massey_representative(
        &self,
        [a, b, c]: [&FormElement; 3],
        x: &FormElement,
        y: &FormElement,
    ) -> Result<(FormElement, usize, usize)> {
        let deg = |f: &FormElement, name: &str| {
            f.homogeneous_degree()
                .ok_or_else(|| Error::UndefinedMassey(format!("{name} is not a nonzero homogeneous form")))
        };
        let (da, db, dc) = (deg(a, "a")?, deg(b, "b")?, deg(c, "c")?);
        for (f, name) in [(a, "a"), (b, "b"), (c, "c")] {
            if !self.is_closed(f) {
                return Err(Error::UndefinedMassey(format!("{name} is not closed")));
            }
        }
        if self.differential(x) != a.wedge(b) || self.differential(y) != b.wedge(c) {
            return Err(Error::UndefinedMassey("primitives do not bound a∧b, b∧c".to_string()));
        }
        let sign = if da % 2 == 0 { CScalar::one() } else { CScalar::from_int(-1) };
        Ok((x.wedge(c).sub(&a.wedge(y).scale(&sign)), da + db + dc - 1, db))
    }

    /// [a]·H^{|b|+|c|−1} + H^{|a|+|b|−1}·[c], lifted to cocycles (contains
    /// all exact forms of the degree).
    fn massey_indeterminacy(
        &self,
        coh: &CohomologyData,
        a: &FormElement,
        c: &FormElement,
        db: usize,
    ) -> Subspace {
        let n = self.generators();
        let da = a.homogeneous_degree().unwrap_or(0);
        let dc = c.homogeneous_degree().unwrap_or(0);
        let degree = da + db + dc - 1;
        let ambient = self.basis.degree_range(degree).len();
        let mut gens: Vec<Vec<CScalar>> = Vec::new();
        if degree > n {
            return Subspace::zero(0);
        }
        if let Some(h) = coh.degrees.get(db + dc - 1) {
            gens.extend(h.representatives.iter().map(|r| self.degree_vector(&a.wedge(r), degree)));
        }
        if let Some(h) = coh.degrees.get(da + db - 1) {
            gens.extend(h.representatives.iter().map(|r| self.degree_vector(&r.wedge(c), degree)));
        }
        gens.extend(coh.degrees[degree].exact.basis_vectors());
        Subspace::span(ambient, gens)
    }

    /// Enumerates Massey triples of canonical H¹/H² representatives with
    /// total degree at most `max_degree`; returns the non-vanishing ones.
    pub fn massey_search(&self, coh: &CohomologyData, max_degree: usize, stop_at_first: bool) -> MasseySearch {
        let mut reps: Vec<FormElement> = Vec::new();
        for k in 1..=2 {
            if let Some(h) = coh.degrees.get(k) {
                reps.extend(h.representatives.iter().cloned());
            }
        }
        // primitives of rᵢ∧rⱼ, shared by every triple using the pair
        let primitives: Vec<Vec<Option<FormElement>>> =
            reps.iter().map(|a| reps.iter().map(|b| self.solve_exact(&a.wedge(b))).collect()).collect();
        let mut indeterminacies: HashMap<(usize, usize, usize), Subspace> = HashMap::new();
        let mut defined = 0;
        let mut nonvanishing = Vec::new();
        'outer: for (i, a) in reps.iter().enumerate() {
            for (j, b) in reps.iter().enumerate() {
                let Some(x) = &primitives[i][j] else { continue };
                for (k, c) in reps.iter().enumerate() {
                    let total = a.homogeneous_degree().unwrap_or(0)
                        + b.homogeneous_degree().unwrap_or(0)
                        + c.homogeneous_degree().unwrap_or(0)
                        - 1;
                    if total > max_degree || total > self.generators() {
                        continue;
                    }
                    let Some(y) = &primitives[j][k] else { continue };
                    let Ok((representative, degree, db)) = self.massey_representative([a, b, c], x, y) else {
                        continue;
                    };
                    defined += 1;
                    let v = self.degree_vector(&representative, degree);
                    if coh.degrees[degree].exact.contains(&v) {
                        continue;
                    }
                    let indeterminacy = indeterminacies
                        .entry((i, k, db))
                        .or_insert_with(|| self.massey_indeterminacy(coh, a, c, db))
                        .clone();
                    let vanishes = indeterminacy.contains(&v);
                    let result = MasseyResult { representative, degree, indeterminacy, vanishes };
                    if !result.vanishes {
                        nonvanishing.push(MasseyCertificate {
                            a: a.clone(),
                            b: b.clone(),
                            c: c.clone(),
                            result,
                        });
                        if stop_at_first {
                            break 'outer;
                        }
                    }
                }
            }
        }
        MasseySearch { candidates: reps.len(), defined, nonvanishing }
    }

    /// Ascending filtration V₁ = ker d ⊆ V₂ ⊆ … of the degree-one part, with
    /// Vᵢ = {v : dv ∈ ∧²Vᵢ₋₁}; fails if it stalls below the whole space.
    pub fn filtration(&self) -> Result<Filtration> {
        let n = self.generators();
        let d1 = self.d_degree(1);
        let mut steps = vec![kernel(&d1)];
        loop {
            let last = steps.last().expect("nonempty");
            if last.dim() == n {
                break;
            }
            let vs = last.basis_vectors();
            let mut wedges = Vec::new();
            for (i, u) in vs.iter().enumerate() {
                for w in &vs[i + 1..] {
                    let f = FormElement::linear(u).wedge(&FormElement::linear(w));
                    wedges.push(self.degree_vector(&f, 2));
                }
            }
            let target = Subspace::span(self.basis.degree_range(2).len(), wedges);
            let next = Subspace::preimage(&d1, &target)?;
            if next.dim() == last.dim() {
                return Err(Error::FiltrationStalled { step: steps.len() + 1, dim: next.dim(), total: n });
            }
            steps.push(next);
        }
        let mut acc = Subspace::zero(n);
        let mut compatible_basis = Vec::new();
        for s in &steps {
            for v in acc.complement_in(s)? {
                acc = acc.sum(&Subspace::span(n, vec![v.clone()]))?;
                compatible_basis.push(v);
            }
        }
        Ok(Filtration { steps, compatible_basis })
    }

    fn first_non_minimal(&self, basis: &[FormElement]) -> Result<Option<usize>> {
        let n = self.generators();
        let vectors: Vec<Vec<CScalar>> = basis.iter().map(|f| self.degree_vector(f, 1)).collect();
        let span = Subspace::span(n, vectors.clone());
        if basis.len() != n || span.dim() != n || basis.iter().any(|f| f.homogeneous_degree() != Some(1)) {
            return Err(Error::NonSpanningBasis { rank: span.dim(), total: n });
        }
        let dim2 = self.basis.degree_range(2).len();
        let mut earlier: Vec<Vec<CScalar>> = Vec::new();
        for (i, f) in basis.iter().enumerate() {
            let allowed = Subspace::span(dim2, earlier.clone());
            if !allowed.contains(&self.degree_vector(&self.differential(f), 2)) {
                return Ok(Some(i + 1));
            }
            for g in &basis[..i] {
                earlier.push(self.degree_vector(&g.wedge(f), 2));
            }
        }
        Ok(None)
    }

    /// True iff each d(fᵢ) lies in the subalgebra generated by f₁…fᵢ₋₁.
    pub fn check_minimal_basis(&self, basis: &[FormElement]) -> Result<bool> {
        Ok(self.first_non_minimal(basis)?.is_none())
    }

    /// Volume-form obstruction: for a minimal ordered basis f₁…fₙ checks that
    /// f₁∧…∧fₙ₋₁ is exact while f₁∧…∧fₙ is not. When both hold no DGA map
    /// to cohomology can be a quasi-isomorphism, since it would send the
    /// volume class to the product of a zero class and [fₙ].
    pub fn nonformality_witness(&self, basis: &[FormElement]) -> Result<WitnessReport> {
        if let Some(index) = self.first_non_minimal(basis)? {
            return Err(Error::NonMinimalBasis { index });
        }
        let n = basis.len();
        let product = basis[..n.saturating_sub(1)].iter().fold(FormElement::one(), |acc, f| acc.wedge(f));
        let volume = product.wedge(&basis[n - 1]);
        let primitive = if n >= 2 { self.solve_exact(&product) } else { None };
        let volume_class_nonzero = !self.is_exact(&volume);
        Ok(WitnessReport {
            witness_found: primitive.is_some() && volume_class_nonzero,
            product_exact: primitive.is_some(),
            volume_class_nonzero,
            product,
            primitive,
            volume,
        })
    }
}

#[derive(Clone, Debug)]
pub struct CohomologyDegree {
    pub closed: Subspace,
    pub exact: Subspace,
    pub betti: usize,
    pub representatives: Vec<FormElement>,
}

#[derive(Clone, Debug)]
pub struct CohomologyData {
    pub degrees: Vec<CohomologyDegree>,
}

impl CohomologyData {
    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .enumerate()
            .map(|(k, d)| if k % 2 == 0 { d.betti as i64 } else { -(d.betti as i64) })
            .sum()
    }
}

#[derive(Clone, Debug)]
pub struct MasseyResult {
    pub representative: FormElement,
    pub degree: usize,
    /// Cocycles representing the indeterminacy (exact forms included).
    pub indeterminacy: Subspace,
    pub vanishes: bool,
}

#[derive(Clone, Debug)]
pub struct MasseyCertificate {
    pub a: FormElement,
    pub b: FormElement,
    pub c: FormElement,
    pub result: MasseyResult,
}

#[derive(Clone, Debug)]
pub struct MasseySearch {
    pub candidates: usize,
    pub defined: usize,
    pub nonvanishing: Vec<MasseyCertificate>,
}

#[derive(Clone, Debug)]
pub struct Filtration {
    pub steps: Vec<Subspace>,
    /// Ordered degree-one vectors refining the flag.
    pub compatible_basis: Vec<Vec<CScalar>>,
}

impl Filtration {
    pub fn length(&self) -> usize {
        self.steps.len()
    }

    pub fn basis_forms(&self) -> Vec<FormElement> {
        self.compatible_basis.iter().map(|v| FormElement::linear(v)).collect()
    }

    pub fn step_dims(&self) -> Vec<usize> {
        self.steps.iter().map(Subspace::dim).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub witness_found: bool,
    pub product_exact: bool,
    pub volume_class_nonzero: bool,
    #[serde(serialize_with = "ser_form")]
    pub product: FormElement,
    #[serde(serialize_with = "ser_opt_form")]
    pub primitive: Option<FormElement>,
    #[serde(serialize_with = "ser_form")]
    pub volume: FormElement,
}

fn ser_form<S: serde::Serializer>(f: &FormElement, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&f.to_string())
}

fn ser_opt_form<S: serde::Serializer>(f: &Option<FormElement>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match f {
        Some(f) => s.serialize_str(&f.to_string()),
        None => s.serialize_none(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(indices: &[usize], c: i64) -> FormElement {
        FormElement::from_indices(indices, CScalar::from_int(c))
    }

    fn heis3() -> DgaPresentation {
        DgaPresentation::new(vec![FormElement::zero(), FormElement::zero(), g(&[0, 1], -1)]).unwrap()
    }

    #[test]
    fn extend_differential_accepts_and_rejects() {
        assert!(heis3().d_matrix().mul(heis3().d_matrix()).is_zero());
        assert!(DgaPresentation::new(vec![FormElement::zero(); 3]).unwrap().is_zero_differential());
        // dg³ = g¹g², dg⁴ = g³g⁴: d²g⁴ = g¹g²g⁴
        let err = DgaPresentation::new(vec![FormElement::zero(), FormElement::zero(), g(&[0, 1], 1), g(&[2, 3], 1)])
            .unwrap_err();
        match err {
            Error::DSquaredNonzero { generator, value } => {
                assert_eq!(generator, 4);
                assert_eq!(value, "g1^g2^g4");
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            DgaPresentation::new(vec![g(&[0], 1), FormElement::zero()]),
            Err(Error::NotDegreeTwo { generator: 1 })
        ));
    }

    #[test]
    fn heis3_cohomology_and_witness() {
        let a = heis3();
        assert_eq!(a.cohomology().betti(), vec![1, 2, 2, 1]);
        let f = a.filtration().unwrap();
        assert_eq!(f.step_dims(), vec![2, 3]);
        let w = a.nonformality_witness(&f.basis_forms()).unwrap();
        assert!(w.witness_found);
        assert_eq!(w.primitive.unwrap(), g(&[2], -1));
    }

    #[test]
    fn massey_on_zero_differential_vanishes() {
        let a = DgaPresentation::new(vec![FormElement::zero(); 3]).unwrap();
        let coh = a.cohomology();
        let r = a.massey_triple(&coh, &g(&[0], 1), &g(&[0, 1], 1), &g(&[1], 1)).unwrap();
        assert!(r.representative.is_zero());
        assert!(r.vanishes);
        assert!(matches!(
            a.massey_triple(&coh, &g(&[0], 1), &g(&[1], 1), &g(&[2], 1)),
            Err(Error::UndefinedMassey(_))
        ));
    }

    #[test]
    fn witness_rejects_non_minimal_order() {
        let a = heis3();
        let order = [g(&[2], 1), g(&[0], 1), g(&[1], 1)];
        assert!(!a.check_minimal_basis(&order).unwrap());
        assert!(matches!(a.nonformality_witness(&order), Err(Error::NonMinimalBasis { index: 1 })));
        assert!(matches!(
            a.check_minimal_basis(&[g(&[0], 1), g(&[0], 2), g(&[2], 1)]),
            Err(Error::NonSpanningBasis { .. })
        ));
    }

    #[test]
    fn abelian_has_no_witness() {
        let a = DgaPresentation::new(vec![FormElement::zero(); 4]).unwrap();
        let f = a.filtration().unwrap();
        assert_eq!(f.length(), 1);
        let w = a.nonformality_witness(&f.basis_forms()).unwrap();
        assert!(!w.witness_found);
        assert!(!w.product_exact);
    }
}
