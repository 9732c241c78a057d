//! Sparse elements of an exterior algebra on degree-1 generators.
//!
//! A monomial g^{i1}∧…∧g^{ip} with i1 < … < ip is stored as the bitmask
//! with bits i1..ip set. Dense coordinates use [`MonomialBasis`], which
//! orders monomials by degree and then lexicographically.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::exactlin::{CScalar, Matrix};

pub type Mask = u32;

/// Sign (+1/-1) of reordering the concatenation a·b into increasing order, or
/// `None` when the monomials share a generator.
pub fn wedge_sign(a: Mask, b: Mask) -> Option<i32> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Some(if swaps.is_multiple_of(2) { 1 } else { -1 })
}

/// Sign of contracting generator `j` out of monomial `s` (from the left).
pub fn contraction_sign(s: Mask, j: usize) -> Option<i32> {
    if s & (1 << j) == 0 {
        return None;
    }
    let below = (s & ((1 << j) - 1)).count_ones();
    Some(if below.is_multiple_of(2) { 1 } else { -1 })
}

pub fn degree(mask: Mask) -> usize {
    mask.count_ones() as usize
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FormElement {
    terms: BTreeMap<Mask, CScalar>,
}

impl FormElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, CScalar::one())
    }

    pub fn constant(c: CScalar) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(mask: Mask, c: CScalar) -> Self {
        let mut f = Self::zero();
        f.add_term(mask, c);
        f
    }

    /// Generator g^i (0-based).
    pub fn generator(i: usize) -> Self {
        Self::monomial(1 << i, CScalar::one())
    }

    /// Monomial from 0-based generator indices in the given order.
    pub fn from_indices(indices: &[usize], c: CScalar) -> Self {
        indices.iter().fold(Self::constant(c), |acc, &i| acc.wedge(&Self::generator(i)))
    }

    /// 1-form Σ coeffs[i] g^i.
    pub fn linear(coeffs: &[CScalar]) -> Self {
        let mut f = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            f.add_term(1 << i, c.clone());
        }
        f
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Mask, CScalar)>) -> Self {
        let mut f = Self::zero();
        for (m, c) in terms {
            f.add_term(m, c);
        }
        f
    }

    pub fn add_term(&mut self, mask: Mask, c: CScalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(mask).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mask, &CScalar)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn coefficient(&self, mask: Mask) -> CScalar {
        self.terms.get(&mask).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(CScalar::is_real)
    }

    /// Degree if the element is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|&m| degree(m)).dedup();
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    /// Part of pure degree `k`.
    pub fn component(&self, k: usize) -> FormElement {
        Self::from_terms(self.terms().filter(|(m, _)| degree(*m) == k).map(|(m, c)| (m, c.clone())))
    }

    /// Largest generator index used plus one.
    pub fn support_width(&self) -> usize {
        self.terms.keys().map(|m| 32 - m.leading_zeros() as usize).max().unwrap_or(0)
    }

    pub fn add(&self, o: &FormElement) -> FormElement {
        let mut out = self.clone();
        for (m, c) in o.terms() {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &FormElement) -> FormElement {
        let mut out = self.clone();
        for (m, c) in o.terms() {
            out.add_term(m, -c);
        }
        out
    }

    pub fn scale(&self, s: &CScalar) -> FormElement {
        if s.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms().map(|(m, c)| (m, c * s)))
    }

    pub fn neg(&self) -> FormElement {
        self.scale(&CScalar::from_int(-1))
    }

    pub fn conj(&self) -> FormElement {
        Self::from_terms(self.terms().map(|(m, c)| (m, c.conj())))
    }

    /// Graded-commutative exterior product.
    pub fn wedge(&self, o: &FormElement) -> FormElement {
        let mut out = Self::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in o.terms() {
                if let Some(s) = wedge_sign(a, b) {
                    let c = ca * cb;
                    out.add_term(a | b, if s < 0 { -c } else { c });
                }
            }
        }
        out
    }

    /// Interior product with the dual basis vector of generator `j`.
    pub fn contract(&self, j: usize) -> FormElement {
        Self::from_terms(self.terms().filter_map(|(m, c)| {
            contraction_sign(m, j).map(|s| (m & !(1 << j), if s < 0 { -c } else { c.clone() }))
        }))
    }

    /// Interior product with the vector Σ x_j e_j.
    pub fn contract_vector(&self, x: &[CScalar]) -> FormElement {
        x.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(Self::zero(), |acc, (j, c)| acc.add(&self.contract(j).scale(c)))
    }

    /// exp(self) for an even-degree nilpotent element, via the finite series.
    pub fn exp(&self) -> FormElement {
        let mut out = Self::one();
        let mut power = Self::one();
        let mut k = 1i64;
        loop {
            power = power.wedge(self).scale(&CScalar::from_ratio(1, k));
            if power.is_zero() {
                return out;
            }
            out = out.add(&power);
            k += 1;
        }
    }

    pub fn to_dense(&self, basis: &MonomialBasis) -> Vec<CScalar> {
        let mut v = vec![CScalar::zero(); basis.len()];
        for (m, c) in self.terms() {
            v[basis.index_of(m)] = c.clone();
        }
        v
    }

    pub fn from_dense(v: &[CScalar], basis: &MonomialBasis) -> FormElement {
        Self::from_terms(v.iter().enumerate().map(|(i, c)| (basis.mask(i), c.clone())))
    }

    /// Lowest nonzero term in (degree, lexicographic) order.
    pub fn leading_term(&self) -> Option<(Mask, &CScalar)> {
        self.terms().min_by(|a, b| monomial_order(a.0, b.0))
    }

    /// Human-readable form using `prefix` for generators, e.g. `1/2 e1^e3`.
    pub fn display_with(&self, prefix: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<(Mask, &CScalar)> = self.terms().collect();
        terms.sort_by(|a, b| monomial_order(a.0, b.0));
        terms
            .into_iter()
            .map(|(m, c)| {
                let name = monomial_name(m, prefix);
                match (m == 0, c.is_one()) {
                    (true, _) => format!("({c})"),
                    (false, true) => name,
                    (false, false) => format!("({c}) {name}"),
                }
            })
            .join(" + ")
    }
}

pub fn monomial_name(mask: Mask, prefix: &str) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    (0..32).filter(|i| mask & (1 << i) != 0).map(|i| format!("{prefix}{}", i + 1)).join("^")
}

/// Degree first, then lexicographic on sorted index lists.
pub fn monomial_order(a: Mask, b: Mask) -> std::cmp::Ordering {
    degree(a).cmp(&degree(b)).then_with(|| {
        let ia = (0..32).filter(|i| a & (1 << i) != 0);
        let ib = (0..32).filter(|i| b & (1 << i) != 0);
        ia.cmp(ib)
    })
}

impl fmt::Display for FormElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("e"))
    }
}

impl fmt::Debug for FormElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Graded-lexicographic indexing of the 2^n monomials on n generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    n: usize,
    masks: Vec<Mask>,
    index: Vec<usize>,
    offsets: Vec<usize>,
}

impl MonomialBasis {
    pub fn new(n: usize) -> Self {
        assert!(n < 16, "exterior algebra on {n} generators is too large");
        let mut masks = Vec::with_capacity(1 << n);
        let mut offsets = Vec::with_capacity(n + 2);
        for k in 0..=n {
            offsets.push(masks.len());
            for combo in (0..n).combinations(k) {
                masks.push(combo.iter().fold(0, |m, &i| m | (1 << i)));
            }
        }
        offsets.push(masks.len());
        let mut index = vec![0; 1 << n];
        for (i, &m) in masks.iter().enumerate() {
            index[m as usize] = i;
        }
        MonomialBasis { n, masks, index, offsets }
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn mask(&self, i: usize) -> Mask {
        self.masks[i]
    }

    pub fn masks(&self) -> &[Mask] {
        &self.masks
    }

    pub fn index_of(&self, m: Mask) -> usize {
        self.index[m as usize]
    }

    /// Dense index range of degree-k monomials.
    pub fn degree_range(&self, k: usize) -> std::ops::Range<usize> {
        if k > self.n {
            return self.len()..self.len();
        }
        self.offsets[k]..self.offsets[k + 1]
    }

    /// Dense matrix of a linear operator given by its action on monomials.
    pub fn operator_matrix(&self, f: impl Fn(Mask) -> FormElement) -> Matrix {
        let cols: Vec<Vec<CScalar>> = self.masks.iter().map(|&m| f(m).to_dense(self)).collect();
        Matrix::from_columns(self.len(), &cols)
    }

    /// Restriction of a full operator to the block degree `from` → degree `to`.
    pub fn degree_block(&self, op: &Matrix, from: usize, to: usize) -> Matrix {
        let rows = self.degree_range(to);
        let cols = self.degree_range(from);
        let mut out = Matrix::zeros(rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                out[(i, j)] = op[(r, c)].clone();
            }
        }
        out
    }
}
