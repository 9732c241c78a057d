//! Generalized Kähler pairs and the δ₊δ₋-lemma.
//!
//! For commuting structures J1, J2 the forms split as
//! U^{p,q} = U^p_{J1} ∩ U^q_{J2}, and the part ∂̄₁ of d_H lowering p splits
//! further into δ₊ : U^{p,q} → U^{p−1,q+1} and δ₋ : U^{p,q} → U^{p−1,q−1}.
//! On the algebroid side, L̄₁ = (L̄₁∩L̄₂) ⊕ (L̄₁∩L₂) and bidegree (p,q) counts
//! factors from the first and second summand respectively.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::courant::{pairing_gram, DoubleElement, TwistedDouble};
use crate::dga::{MasseySearch, WitnessReport};
use crate::error::{Error, Result};
use crate::exactlin::{image, is_positive_definite, kernel, CScalar, DirectSum, Matrix, Subspace};
use crate::forms::{degree, FormElement, Mask, MonomialBasis};
use crate::gcs::{check_gcs, spinor_intertwines, Algebroid, GcsReport, GeneralizedComplex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GkReport {
    pub j1: GcsReport,
    pub j2: GcsReport,
    pub commute: bool,
    pub positive_definite: bool,
}

impl GkReport {
    pub fn passes(&self) -> bool {
        self.j1.passes() && self.j2.passes() && self.commute && self.positive_definite
    }
}

/// Separate verdicts for each defining condition of a GK pair.
pub fn check_gk(j1: &Matrix, j2: &Matrix, td: &TwistedDouble) -> GkReport {
    let r1 = check_gcs(j1, td);
    let r2 = check_gcs(j2, td);
    let shapes_ok = j1.rows() == 2 * td.m() && j2.rows() == 2 * td.m() && j1.is_square() && j2.is_square();
    let (commute, positive_definite) = if shapes_ok {
        let a = j1.mul(j2);
        let g = pairing_gram(td.m());
        let half = CScalar::from_ratio(1, 2);
        let sym = a.transpose().mul(&g).add(&g.mul(&a)).scale(&half);
        (a == j2.mul(j1), is_positive_definite(&sym).unwrap_or(false))
    } else {
        (false, false)
    };
    GkReport { j1: r1, j2: r2, commute, positive_definite }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionDims {
    pub l1: usize,
    pub l1_cap_l2: usize,
    pub l1_cap_l2bar: usize,
    pub splits: bool,
}

#[derive(Clone, Debug)]
pub struct Bigrading {
    /// Number of generators from L̄₁∩L̄₂; the remaining ones span L̄₁∩L₂.
    pub p_generators: usize,
    pub algebroid: Algebroid,
    pub del: Matrix,
    pub delbar: Matrix,
    /// ((p, q), dim ∧^{p,q}L̄₁)
    pub dims: Vec<((usize, usize), usize)>,
    pub leibniz_pairs: usize,
}

#[derive(Clone, Debug)]
pub struct UpqDecomposition {
    /// (p, q) labels of the nonzero U^{p,q}, in block order.
    pub labels: Vec<(i64, i64)>,
    pub sum: DirectSum,
}

impl UpqDecomposition {
    pub fn index_of(&self, p: i64, q: i64) -> Option<usize> {
        self.labels.iter().position(|&l| l == (p, q))
    }

    pub fn dims(&self) -> Vec<((i64, i64), usize)> {
        self.labels.iter().zip(self.sum.blocks()).map(|(&l, s)| (l, s.dim())).collect()
    }
}

#[derive(Clone, Debug)]
pub struct DeltaOperators {
    pub plus: Matrix,
    pub minus: Matrix,
    /// ∂̄₁, the part of d_H lowering the J1-level.
    pub delbar1: Matrix,
}

/// The three subspaces of the δ₊δ₋-lemma.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DdbarReport {
    pub im_plus_ker_minus: Subspace,
    pub im_minus_ker_plus: Subspace,
    pub im_plus_minus: Subspace,
}

impl DdbarReport {
    pub fn holds(&self) -> bool {
        self.im_plus_ker_minus == self.im_minus_ker_plus && self.im_minus_ker_plus == self.im_plus_minus
    }
}

/// Im δ₊ ∩ Ker δ₋, Im δ₋ ∩ Ker δ₊ and Im δ₊δ₋ for any pair of square operators.
pub fn ddbar_identity(plus: &Matrix, minus: &Matrix) -> Result<DdbarReport> {
    Ok(DdbarReport {
        im_plus_ker_minus: image(plus).intersect(&kernel(minus))?,
        im_minus_ker_plus: image(minus).intersect(&kernel(plus))?,
        im_plus_minus: image(&plus.mul(minus)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    /// (∂_{L₁}α)·ρ = δ₊(α·ρ) and (∂̄_{L₁}α)·ρ = δ₋(α·ρ)
    pub del_to_plus: bool,
    /// (∂_{L₁}α)·ρ = δ₋(α·ρ) and (∂̄_{L₁}α)·ρ = δ₊(α·ρ)
    pub del_to_minus: bool,
    pub sum_identity: bool,
    pub checked: usize,
}

impl CorrespondenceReport {
    pub fn consistent(&self) -> bool {
        self.sum_identity && (self.del_to_plus || self.del_to_minus)
    }
}

#[derive(Clone, Debug)]
pub enum FormalityVerdict {
    NonFormal { witness: bool, massey: bool },
    NoObstruction { max_degree: usize },
}

impl FormalityVerdict {
    pub fn is_non_formal(&self) -> bool {
        matches!(self, FormalityVerdict::NonFormal { .. })
    }
}

impl std::fmt::Display for FormalityVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FormalityVerdict::NonFormal { witness, massey } => {
                let mut parts = Vec::new();
                if *witness {
                    parts.push("witness");
                }
                if *massey {
                    parts.push("Massey");
                }
                write!(f, "non-formal ({} certificate)", parts.join("/"))
            }
            FormalityVerdict::NoObstruction { max_degree } => {
                write!(f, "no obstruction found up to degree {max_degree}")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct FormalityReport {
    pub betti: Vec<usize>,
    /// Filtration step dimensions; None when the algebroid is not nilpotent.
    pub filtration: Option<Vec<usize>>,
    pub minimal: Option<bool>,
    pub witness: Option<WitnessReport>,
    pub massey: MasseySearch,
    pub verdict: FormalityVerdict,
}

/// Runs the formality obstructions on (∧•L̄, d_L) of a single structure.
pub fn formality_algebroid(gc: &GeneralizedComplex, max_degree: usize) -> Result<FormalityReport> {
    if !gc.check_hol_trivial() {
        return Err(Error::NotHolomorphicallyTrivial);
    }
    let dga = gc.algebroid()?.dga;
    let coh = dga.cohomology();
    let (filtration, minimal, witness) = match dga.filtration() {
        Ok(f) => {
            let basis = f.basis_forms();
            let minimal = dga.check_minimal_basis(&basis)?;
            let witness = if minimal { Some(dga.nonformality_witness(&basis)?) } else { None };
            (Some(f.step_dims()), Some(minimal), witness)
        }
        Err(Error::FiltrationStalled { .. }) => (None, None, None),
        Err(e) => return Err(e),
    };
    let massey = dga.massey_search(&coh, max_degree, true);
    let has_witness = witness.as_ref().is_some_and(|w| w.witness_found);
    let has_massey = !massey.nonvanishing.is_empty();
    let verdict = if has_witness || has_massey {
        FormalityVerdict::NonFormal { witness: has_witness, massey: has_massey }
    } else {
        FormalityVerdict::NoObstruction { max_degree }
    };
    Ok(FormalityReport { betti: coh.betti(), filtration, minimal, witness, massey, verdict })
}

/// A validated generalized Kähler pair over one twisted double.
#[derive(Clone, Debug)]
pub struct GkPair {
    j1: GeneralizedComplex,
    j2: GeneralizedComplex,
}

impl GkPair {
    pub fn new(td: TwistedDouble, j1: Matrix, j2: Matrix) -> Result<Self> {
        let report = check_gk(&j1, &j2, &td);
        if !report.passes() {
            let mut failed = Vec::new();
            if !report.j1.passes() {
                failed.push("J1 is not generalized complex");
            }
            if !report.j2.passes() {
                failed.push("J2 is not generalized complex");
            }
            if !report.commute {
                failed.push("J1 and J2 do not commute");
            }
            if !report.positive_definite {
                failed.push("<J1J2 v, v> is not positive definite");
            }
            return Err(Error::InvalidPair(failed.join("; ")));
        }
        Ok(GkPair { j1: GeneralizedComplex::new(td.clone(), j1)?, j2: GeneralizedComplex::new(td, j2)? })
    }

    pub fn j1(&self) -> &GeneralizedComplex {
        &self.j1
    }

    pub fn j2(&self) -> &GeneralizedComplex {
        &self.j2
    }

    fn m(&self) -> usize {
        self.j1.double().m()
    }

    pub fn intersection_dims(&self) -> Result<IntersectionDims> {
        let l1 = self.j1.eigenbundle().subspace();
        let l2 = self.j2.eigenbundle().subspace();
        let a = l1.intersect(l2)?;
        let b = l1.intersect(&l2.conj())?;
        let splits = a.intersect(&b)?.is_zero() && a.sum(&b)? == *l1 && l1.dim() == 2 * a.dim();
        Ok(IntersectionDims { l1: l1.dim(), l1_cap_l2: a.dim(), l1_cap_l2bar: b.dim(), splits })
    }

    /// Bidegree splitting of d_{L₁} with a Leibniz check on `seed`-driven
    /// random homogeneous pairs.
    pub fn l1_bigrading(&self, seed: u64) -> Result<Bigrading> {
        let l1bar = self.j1.eigenbundle().conj();
        let l2 = self.j2.eigenbundle().subspace();
        let p_part = l1bar.intersect(&l2.conj())?;
        let q_part = l1bar.intersect(l2)?;
        let np = p_part.dim();
        let basis: Vec<DoubleElement> = p_part
            .basis_vectors()
            .into_iter()
            .chain(q_part.basis_vectors())
            .map(DoubleElement::new)
            .collect();
        let algebroid = self.j1.algebroid_with_basis(basis)?;
        let m = self.m();
        let forms = MonomialBasis::new(m);
        let bideg = |mask: Mask| {
            let p = degree(mask & ((1 << np) - 1));
            (p, degree(mask) - p)
        };
        let d = algebroid.dga.d_matrix();
        let n = forms.len();
        let mut del = Matrix::zeros(n, n);
        let mut delbar = Matrix::zeros(n, n);
        for s in 0..n {
            let (p, q) = bideg(forms.mask(s));
            for t in 0..n {
                let c = &d[(t, s)];
                if c.is_zero() {
                    continue;
                }
                match bideg(forms.mask(t)) {
                    bt if bt == (p + 1, q) => del[(t, s)] = c.clone(),
                    bt if bt == (p, q + 1) => delbar[(t, s)] = c.clone(),
                    bt => {
                        return Err(Error::StrayBidegree(format!(
                            "J2 restriction not integrable on L1: d_L1 maps bidegree ({p},{q}) to {bt:?}"
                        )))
                    }
                }
            }
        }
        for (name, op) in [("del", &del), ("delbar", &delbar)] {
            if !op.mul(op).is_zero() {
                return Err(Error::IdentityFailed(format!("{name}_L1 does not square to zero")));
            }
        }
        if !del.mul(&delbar).add(&delbar.mul(&del)).is_zero() {
            return Err(Error::IdentityFailed("del_L1 and delbar_L1 do not anticommute".to_string()));
        }
        let leibniz_pairs = check_leibniz(&forms, &[&del, &delbar], np, seed)?;
        let mut dims = Vec::new();
        for p in 0..=np {
            for q in 0..=m - np {
                let count = forms.masks().iter().filter(|&&mk| bideg(mk) == (p, q)).count();
                dims.push(((p, q), count));
            }
        }
        Ok(Bigrading { p_generators: np, algebroid, del, delbar, dims, leibniz_pairs })
    }

    pub fn upq_decomposition(&self) -> Result<UpqDecomposition> {
        let u1 = self.j1.uk();
        let u2 = self.j2.uk();
        let n = u1.half_dim();
        let mut labels = Vec::new();
        let mut blocks = Vec::new();
        for p in (-n..=n).rev() {
            for q in (-n..=n).rev() {
                let s = u1.space(p).intersect(u2.space(q))?;
                if !s.is_zero() {
                    labels.push((p, q));
                    blocks.push(s);
                }
            }
        }
        let total: usize = blocks.iter().map(Subspace::dim).sum();
        if total != 1 << self.m() {
            return Err(Error::NotDirectSum(format!("U^(p,q) spaces have total dimension {total}")));
        }
        let sum = DirectSum::new(blocks)?;
        let upq = UpqDecomposition { labels, sum };
        let adapted = upq.sum.adapted(self.j1.d_h_matrix());
        for (t, s) in upq.sum.block_support(&adapted) {
            let (ps, qs) = upq.labels[s];
            let (pt, qt) = upq.labels[t];
            if (pt - ps).abs() != 1 || (qt - qs).abs() != 1 {
                return Err(Error::NotIntegrable(format!("d_H maps U^({ps},{qs}) into U^({pt},{qt})")));
            }
        }
        Ok(upq)
    }

    pub fn delta_pm(&self) -> Result<DeltaOperators> {
        let upq = self.upq_decomposition()?;
        let adapted = upq.sum.adapted(self.j1.d_h_matrix());
        let labels = &upq.labels;
        let shift = |dp: i64, dq: i64| {
            move |t: usize, s: usize| labels[t].0 == labels[s].0 + dp && labels[t].1 == labels[s].1 + dq
        };
        let plus = upq.sum.assemble(&adapted, shift(-1, 1));
        let minus = upq.sum.assemble(&adapted, shift(-1, -1));
        let delbar1 = self.j1.del_delbar()?.delbar;
        if plus.add(&minus) != delbar1 {
            return Err(Error::IdentityFailed("delta_+ + delta_- != delbar_1".to_string()));
        }
        Ok(DeltaOperators { plus, minus, delbar1 })
    }

    pub fn ddbar_lemma_check(&self) -> Result<DdbarReport> {
        let d = self.delta_pm()?;
        ddbar_identity(&d.plus, &d.minus)
    }

    /// Determines which of δ₊, δ₋ the operators ∂_{L₁}, ∂̄_{L₁} are carried
    /// to by the spinor map of J1.
    pub fn correspondence(&self, seed: u64) -> Result<CorrespondenceReport> {
        if !self.j1.check_hol_trivial() {
            return Err(Error::NotHolomorphicallyTrivial);
        }
        let big = self.l1_bigrading(seed)?;
        let delta = self.delta_pm()?;
        let alg = &big.algebroid;
        let holds = |op: &Matrix, d: &Matrix| spinor_intertwines(op, alg, d).holds;
        let sum = big.del.add(&big.delbar);
        Ok(CorrespondenceReport {
            del_to_plus: holds(&delta.plus, &big.del) && holds(&delta.minus, &big.delbar),
            del_to_minus: holds(&delta.minus, &big.del) && holds(&delta.plus, &big.delbar),
            sum_identity: holds(&delta.delbar1, &sum),
            checked: alg.spinor_map.cols(),
        })
    }
}

fn random_homogeneous(forms: &MonomialBasis, np: usize, rng: &mut ChaCha8Rng) -> FormElement {
    let m = forms.generators();
    let p = rng.gen_range(0..=np);
    let q = rng.gen_range(0..=m - np);
    let candidates: Vec<Mask> = forms
        .masks()
        .iter()
        .copied()
        .filter(|&mk| degree(mk & ((1 << np) - 1)) == p && degree(mk) == p + q)
        .collect();
    let mut f = FormElement::zero();
    for _ in 0..2 {
        let mk = candidates[rng.gen_range(0..candidates.len())];
        let c = CScalar::gaussian(rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        f.add_term(mk, c);
    }
    f
}

/// D(a∧b) = Da∧b + (−1)^{|a|} a∧Db for each operator on random pairs.
fn check_leibniz(forms: &MonomialBasis, ops: &[&Matrix], np: usize, seed: u64) -> Result<usize> {
    const PAIRS: usize = 32;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let apply = |op: &Matrix, f: &FormElement| FormElement::from_dense(&op.mul_vec(&f.to_dense(forms)), forms);
    for _ in 0..PAIRS {
        let a = random_homogeneous(forms, np, &mut rng);
        let b = random_homogeneous(forms, np, &mut rng);
        let sign = match a.homogeneous_degree() {
            Some(k) if k % 2 == 1 => CScalar::from_int(-1),
            _ => CScalar::one(),
        };
        for op in ops {
            let lhs = apply(op, &a.wedge(&b));
            let rhs = apply(op, &a).wedge(&b).add(&a.wedge(&apply(op, &b)).scale(&sign));
            if lhs != rhs {
                return Err(Error::IdentityFailed(format!("Leibniz rule fails on {a} and {b}")));
            }
        }
    }
    Ok(PAIRS)
}
