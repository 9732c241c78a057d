//! Built-in examples and the JSON entry format.
//!
//! ```json
//! {
//!   "name": "kt4",
//!   "dim": 4,
//!   "brackets": [{"i": 1, "j": 2, "k": 3, "c": "1"}],
//!   "H": [{"i": 1, "j": 2, "k": 4, "c": "1"}],
//!   "structures": [
//!     {"name": "complex", "J": [["0", "-1", ...], ...]},
//!     {"name": "kahler", "pair": ["complex", "symplectic"]}
//!   ],
//!   "expected": {"jacobi": true}
//! }
//! ```
//!
//! Indices are 1-based. A bracket entry means [eᵢ, eⱼ] ∋ c·eₖ; H entries
//! mean c·eⁱ∧eʲ∧eᵏ with i < j < k. Scalars are strings "p/q" (J entries
//! may also be "p/q+r/s i"); plain JSON integers are accepted too.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::courant::{Twist, TwistedDouble};
use crate::error::{Error, Result};
use crate::exactlin::{format_rational, int, parse_rational, CScalar, Matrix, Scalar};
use crate::forms::FormElement;
use crate::gcs::{complex_structure_gcs, symplectic_gcs, GeneralizedComplex};
use crate::gk::GkPair;
use crate::liealg::LieAlgebra;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureSpec {
    Matrix(Matrix),
    Pair(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedStructure {
    pub name: String,
    pub spec: StructureSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: LieAlgebra,
    pub twist: Twist,
    pub structures: Vec<NamedStructure>,
    /// Expected verdicts keyed by check, e.g. "gk:kahler".
    pub expected: BTreeMap<String, bool>,
}

impl CatalogEntry {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn double(&self) -> Result<TwistedDouble> {
        TwistedDouble::new(self.algebra.clone(), self.twist.clone())
    }

    pub fn structure(&self, name: &str) -> Result<&StructureSpec> {
        self.structures.iter().find(|s| s.name == name).map(|s| &s.spec).ok_or_else(|| {
            let names: Vec<&str> = self.structures.iter().map(|s| s.name.as_str()).collect();
            Error::UnknownEntry { name: name.to_string(), available: names.join(", ") }
        })
    }

    pub fn gcs_names(&self) -> Vec<&str> {
        self.names(|s| matches!(s, StructureSpec::Matrix(_)))
    }

    pub fn pair_names(&self) -> Vec<&str> {
        self.names(|s| matches!(s, StructureSpec::Pair(..)))
    }

    fn names(&self, keep: impl Fn(&StructureSpec) -> bool) -> Vec<&str> {
        self.structures.iter().filter(|s| keep(&s.spec)).map(|s| s.name.as_str()).collect()
    }

    pub fn matrix(&self, name: &str) -> Result<&Matrix> {
        match self.structure(name)? {
            StructureSpec::Matrix(j) => Ok(j),
            StructureSpec::Pair(..) => Err(Error::Parse(format!("structure `{name}` is a pair, not a matrix"))),
        }
    }

    pub fn gcs(&self, name: &str) -> Result<GeneralizedComplex> {
        GeneralizedComplex::new(self.double()?, self.matrix(name)?.clone())
    }

    pub fn pair_matrices(&self, name: &str) -> Result<(&Matrix, &Matrix)> {
        match self.structure(name)? {
            StructureSpec::Pair(a, b) => Ok((self.matrix(a)?, self.matrix(b)?)),
            StructureSpec::Matrix(_) => Err(Error::Parse(format!("structure `{name}` is a matrix, not a pair"))),
        }
    }

    pub fn pair(&self, name: &str) -> Result<GkPair> {
        let (a, b) = self.pair_matrices(name)?;
        GkPair::new(self.double()?, a.clone(), b.clone())
    }

    /// Evaluates one `expected` key against the actual pipeline.
    pub fn evaluate(&self, key: &str) -> Result<bool> {
        let (check, arg) = key.split_once(':').unwrap_or((key, ""));
        Ok(match check {
            "jacobi" => self.algebra.check_jacobi().holds,
            "nilpotent" => self.algebra.lower_central_series().is_nilpotent,
            "gcs" => crate::gcs::check_gcs(self.matrix(arg)?, &self.double()?).passes(),
            "hol_trivial" => self.gcs(arg)?.check_hol_trivial(),
            "eq3" => self.gcs(arg)?.verify_eq3()?.holds,
            "gk" => {
                let (a, b) = self.pair_matrices(arg)?;
                crate::gk::check_gk(a, b, &self.double()?).passes()
            }
            "ddbar" => self.pair(arg)?.ddbar_lemma_check()?.holds(),
            "nonformal" => crate::gk::formality_algebroid(&self.gcs(arg)?, self.dim())?.verdict.is_non_formal(),
            _ => return Err(Error::Parse(format!("unknown expectation `{key}`"))),
        })
    }

    /// (key, expected, actual) for every expectation.
    pub fn check_expected(&self) -> Result<Vec<(String, bool, bool)>> {
        self.expected.iter().map(|(k, &v)| Ok((k.clone(), v, self.evaluate(k)?))).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct RawEntry {
    name: String,
    dim: usize,
    #[serde(default)]
    brackets: Vec<RawTerm>,
    #[serde(default, rename = "H")]
    h: Vec<RawTerm>,
    #[serde(default)]
    structures: Vec<RawStructure>,
    #[serde(default)]
    expected: BTreeMap<String, bool>,
}

#[derive(Serialize, Deserialize)]
struct RawTerm {
    i: usize,
    j: usize,
    k: usize,
    c: Value,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStructure {
    name: String,
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    j: Option<Vec<Vec<Value>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pair: Option<[String; 2]>,
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) if n.is_i64() || n.is_u64() => Some(n.to_string()),
        _ => None,
    }
}

/// Line of the `index`-th object inside the array stored under `field`.
fn locate(text: &str, field: &str, index: usize) -> Option<usize> {
    let key = format!("\"{field}\"");
    let start = text.find(&key)? + key.len();
    let (mut depth, mut seen, mut in_str, mut escaped) = (0i32, 0usize, false, false);
    let mut line = 1 + text[..start].matches('\n').count();
    for ch in text[start..].chars() {
        if ch == '\n' {
            line += 1;
        }
        if in_str {
            match (escaped, ch) {
                (true, _) => escaped = false,
                (false, '\\') => escaped = true,
                (false, '"') => in_str = false,
                _ => {}
            }
            continue;
        }
        match ch {
            '"' => in_str = true,
            '[' | '{' => {
                if depth == 1 {
                    if seen == index {
                        return Some(line);
                    }
                    seen += 1;
                }
                depth += 1;
            }
            ']' | '}' => {
                depth -= 1;
                if depth == 0 {
                    return None;
                }
            }
            _ => {}
        }
    }
    None
}

fn diag(text: &str, field: &str, index: Option<usize>, msg: impl std::fmt::Display) -> Error {
    let at = match index {
        Some(i) => {
            let line = locate(text, field, i).map(|l| format!("line {l}: ")).unwrap_or_default();
            format!("{line}{field}[{i}]")
        }
        None => {
            let line = text
                .find(&format!("\"{field}\""))
                .map(|p| format!("line {}: ", 1 + text[..p].matches('\n').count()))
                .unwrap_or_default();
            format!("{line}{field}")
        }
    };
    let msg = msg.to_string();
    Error::Parse(format!("{at}: {}", msg.strip_prefix("parse error: ").unwrap_or(&msg)))
}

/// Parses one entry, reporting the offending field and line on failure.
pub fn parse(text: &str) -> Result<CatalogEntry> {
    let raw: RawEntry = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let dim = raw.dim;
    if dim == 0 || dim > 12 {
        return Err(diag(text, "dim", None, format!("dimension {dim} outside 1..=12")));
    }
    let one_based = |x: usize| if (1..=dim).contains(&x) { Some(x - 1) } else { None };

    let mut entries = Vec::new();
    for (n, t) in raw.brackets.iter().enumerate() {
        let err = |m: String| diag(text, "brackets", Some(n), m);
        let c = scalar_text(&t.c).ok_or_else(|| err("c must be a rational string".to_string()))?;
        let c = parse_rational(&c).map_err(|e| err(e.to_string()))?;
        let idx: Vec<usize> = [t.i, t.j, t.k]
            .iter()
            .map(|&x| one_based(x).ok_or_else(|| err(format!("index {x} out of range 1..={dim}"))))
            .collect::<Result<_>>()?;
        if idx[0] == idx[1] && c != int(0) {
            return Err(err(format!("[e{0}, e{0}] must vanish (antisymmetry)", t.i)));
        }
        entries.push((idx[0], idx[1], idx[2], c));
    }
    let algebra = LieAlgebra::from_brackets(dim, &entries).map_err(|e| match e {
        Error::NotAntisymmetric { i, j, k } => {
            let n = entries.iter().rposition(|&(a, b, c, _)| c == k && ((a, b) == (i, j) || (a, b) == (j, i))).unwrap_or(0);
            diag(text, "brackets", Some(n), format!("c^{}_{}{} conflicts with c^{}_{}{} (antisymmetry)", k + 1, i + 1, j + 1, k + 1, j + 1, i + 1))
        }
        other => diag(text, "brackets", None, other),
    })?;

    let mut h = FormElement::zero();
    for (n, t) in raw.h.iter().enumerate() {
        let err = |m: String| diag(text, "H", Some(n), m);
        let c = scalar_text(&t.c).ok_or_else(|| err("c must be a rational string".to_string()))?;
        let c = parse_rational(&c).map_err(|e| err(e.to_string()))?;
        if t.i == t.j || t.j == t.k || t.i == t.k {
            return Err(err(format!("repeated index in ({}, {}, {})", t.i, t.j, t.k)));
        }
        if !(t.i < t.j && t.j < t.k) {
            return Err(err(format!("indices ({}, {}, {}) must be increasing", t.i, t.j, t.k)));
        }
        let idx: Vec<usize> = [t.i, t.j, t.k]
            .iter()
            .map(|&x| one_based(x).ok_or_else(|| err(format!("index {x} out of range 1..={dim}"))))
            .collect::<Result<_>>()?;
        let mask = idx.iter().fold(0u32, |m, &x| m | (1 << x));
        if !h.coefficient(mask).is_zero() {
            return Err(err(format!("term ({}, {}, {}) given twice", t.i, t.j, t.k)));
        }
        h.add_term(mask, CScalar::real(c));
    }
    let twist = Twist::new(h, &algebra).map_err(|e| diag(text, "H", None, e))?;

    let mut structures: Vec<NamedStructure> = Vec::new();
    for (n, s) in raw.structures.iter().enumerate() {
        let err = |m: String| diag(text, "structures", Some(n), m);
        if structures.iter().any(|t| t.name == s.name) {
            return Err(err(format!("duplicate structure name `{}`", s.name)));
        }
        let spec = match (&s.j, &s.pair) {
            (Some(rows), None) => {
                if rows.len() != 2 * dim || rows.iter().any(|r| r.len() != 2 * dim) {
                    return Err(err(format!("J must be a {0}x{0} array", 2 * dim)));
                }
                let mut parsed = Vec::with_capacity(rows.len());
                for (r, row) in rows.iter().enumerate() {
                    let mut out = Vec::with_capacity(row.len());
                    for (c, v) in row.iter().enumerate() {
                        let t = scalar_text(v).ok_or_else(|| err(format!("J[{r}][{c}] must be a scalar string")))?;
                        out.push(CScalar::parse(&t).map_err(|e| err(format!("J[{r}][{c}]: {e}")))?);
                    }
                    parsed.push(out);
                }
                StructureSpec::Matrix(Matrix::from_rows(parsed))
            }
            (None, Some([a, b])) => {
                for x in [a, b] {
                    if !structures.iter().any(|t| t.name == *x && matches!(t.spec, StructureSpec::Matrix(_))) {
                        return Err(err(format!("pair refers to unknown matrix structure `{x}`")));
                    }
                }
                StructureSpec::Pair(a.clone(), b.clone())
            }
            _ => return Err(err("exactly one of `J` and `pair` is required".to_string())),
        };
        structures.push(NamedStructure { name: s.name.clone(), spec });
    }
    Ok(CatalogEntry { name: raw.name, algebra, twist, structures, expected: raw.expected })
}

fn scalar_string(c: &CScalar) -> String {
    if c.is_real() {
        format_rational(&c.re)
    } else {
        c.to_string()
    }
}

/// Canonical serialization; `parse(&serialize(e))` reproduces `e`.
pub fn serialize(entry: &CatalogEntry) -> String {
    let term = |i: usize, j: usize, k: usize, c: String| RawTerm { i: i + 1, j: j + 1, k: k + 1, c: Value::String(c) };
    let brackets = entry.algebra.brackets().into_iter().map(|(i, j, k, c)| term(i, j, k, format_rational(&c))).collect();
    let h = entry
        .twist
        .form()
        .terms()
        .map(|(mask, c)| {
            let idx: Vec<usize> = (0..32).filter(|b| mask & (1 << b) != 0).collect();
            term(idx[0], idx[1], idx[2], scalar_string(c))
        })
        .collect();
    let structures = entry
        .structures
        .iter()
        .map(|s| match &s.spec {
            StructureSpec::Matrix(j) => RawStructure {
                name: s.name.clone(),
                j: Some(
                    j.row_vectors()
                        .iter()
                        .map(|r| r.iter().map(|c| Value::String(scalar_string(c))).collect())
                        .collect(),
                ),
                pair: None,
            },
            StructureSpec::Pair(a, b) => RawStructure { name: s.name.clone(), j: None, pair: Some([a.clone(), b.clone()]) },
        })
        .collect();
    let raw = RawEntry {
        name: entry.name.clone(),
        dim: entry.dim(),
        brackets,
        h,
        structures,
        expected: entry.expected.clone(),
    };
    let mut s = serde_json::to_string_pretty(&raw).expect("entry serializes");
    s.push('\n');
    s
}

fn form(terms: &[(&[usize], i64)]) -> FormElement {
    terms.iter().fold(FormElement::zero(), |acc, (ix, c)| acc.add(&FormElement::from_indices(ix, CScalar::from_int(*c))))
}

/// Je_{2a} = e_{2a+1} on 0-based indices.
fn standard_complex(m: usize) -> Matrix {
    let mut j = Matrix::zeros(m, m);
    for a in (0..m).step_by(2) {
        j[(a + 1, a)] = CScalar::one();
        j[(a, a + 1)] = CScalar::from_int(-1);
    }
    complex_structure_gcs(&j)
}

fn standard_symplectic(m: usize) -> FormElement {
    (0..m).step_by(2).fold(FormElement::zero(), |acc, a| acc.add(&FormElement::from_indices(&[a, a + 1], CScalar::one())))
}

struct Builder {
    entry: CatalogEntry,
}

impl Builder {
    fn new(name: &str, dim: usize, brackets: &[(usize, usize, usize, i64)]) -> Self {
        let entries: Vec<(usize, usize, usize, Scalar)> =
            brackets.iter().map(|&(i, j, k, c)| (i - 1, j - 1, k - 1, int(c))).collect();
        let algebra = LieAlgebra::from_brackets(dim, &entries).expect("builtin brackets are antisymmetric");
        let mut expected = BTreeMap::new();
        expected.insert("jacobi".to_string(), true);
        Builder {
            entry: CatalogEntry { name: name.to_string(), algebra, twist: Twist::zero(), structures: Vec::new(), expected },
        }
    }

    fn twist(mut self, h: FormElement) -> Self {
        self.entry.twist = Twist::new(h, &self.entry.algebra).expect("builtin twist is closed");
        self
    }

    fn matrix(mut self, name: &str, j: Matrix) -> Self {
        self.entry.structures.push(NamedStructure { name: name.to_string(), spec: StructureSpec::Matrix(j) });
        self.entry.expected.insert(format!("gcs:{name}"), true);
        self
    }

    fn complex(self) -> Self {
        let m = self.entry.dim();
        self.matrix("complex", standard_complex(m))
    }

    fn symplectic(self, omega: FormElement) -> Self {
        let m = self.entry.dim();
        self.matrix("symplectic", symplectic_gcs(&omega, m).expect("builtin 2-form is nondegenerate"))
    }

    fn pair(mut self, name: &str, a: &str, b: &str) -> Self {
        self.entry.structures.push(NamedStructure {
            name: name.to_string(),
            spec: StructureSpec::Pair(a.to_string(), b.to_string()),
        });
        self.entry.expected.insert(format!("gk:{name}"), true);
        self.entry.expected.insert(format!("ddbar:{name}"), true);
        self
    }

    fn expect(mut self, key: &str, value: bool) -> Self {
        self.entry.expected.insert(key.to_string(), value);
        self
    }

    fn build(self) -> CatalogEntry {
        self.entry
    }
}

fn abelian(m: usize) -> CatalogEntry {
    let b = Builder::new(&format!("ab{m}"), m, &[]).expect("nilpotent", true);
    if m % 2 == 1 {
        return b.build();
    }
    b.complex()
        .symplectic(standard_symplectic(m))
        .pair("kahler", "complex", "symplectic")
        .expect("hol_trivial:complex", true)
        .expect("eq3:complex", true)
        .expect("nonformal:complex", false)
        .build()
}

/// Names accepted by [`builtin`].
pub fn builtin_names() -> Vec<&'static str> {
    vec!["ab2", "ab3", "ab4", "ab5", "ab6", "heis3", "heis3_r", "kt4", "kt4_h", "t4kahler", "hyperell"]
}

pub fn builtin(name: &str) -> Result<CatalogEntry> {
    Ok(match name {
        "ab2" => abelian(2),
        "ab3" => abelian(3),
        "ab4" => abelian(4),
        "ab5" => abelian(5),
        "ab6" => abelian(6),
        "heis3" => Builder::new("heis3", 3, &[(1, 2, 3, 1)]).expect("nilpotent", true).build(),
        "heis3_r" => Builder::new("heis3_r", 4, &[(1, 2, 3, 1)])
            .symplectic(form(&[(&[0, 3], 1), (&[1, 2], 1)]))
            .expect("nilpotent", true)
            .expect("hol_trivial:symplectic", true)
            .expect("eq3:symplectic", true)
            .expect("nonformal:symplectic", true)
            .build(),
        "kt4" => Builder::new("kt4", 4, &[(1, 2, 3, 1)])
            .symplectic(form(&[(&[0, 2], 1), (&[1, 3], 1)]))
            .complex()
            .expect("nilpotent", true)
            .expect("hol_trivial:symplectic", true)
            .expect("hol_trivial:complex", true)
            .expect("eq3:symplectic", true)
            .expect("eq3:complex", true)
            .expect("nonformal:symplectic", true)
            .expect("nonformal:complex", true)
            .build(),
        "kt4_h" => Builder::new("kt4_h", 4, &[(1, 2, 3, 1)])
            .twist(form(&[(&[0, 1, 3], 1)]))
            .complex()
            .expect("nilpotent", true)
            .expect("hol_trivial:complex", true)
            .expect("eq3:complex", true)
            .expect("nonformal:complex", true)
            .build(),
        "t4kahler" => Builder::new("t4kahler", 4, &[])
            .complex()
            .symplectic(standard_symplectic(4))
            .pair("kahler", "complex", "symplectic")
            .expect("nilpotent", true)
            .expect("hol_trivial:complex", true)
            .expect("hol_trivial:symplectic", true)
            .expect("eq3:complex", true)
            .expect("eq3:symplectic", true)
            .expect("nonformal:complex", false)
            .build(),
        // e(2) ⊕ ℝ: [e3, e1] = e2, [e3, e2] = −e1
        "hyperell" => Builder::new("hyperell", 4, &[(3, 1, 2, 1), (3, 2, 1, -1)])
            .complex()
            .symplectic(standard_symplectic(4))
            .pair("kahler", "complex", "symplectic")
            .pair("kahler_sc", "symplectic", "complex")
            .expect("nilpotent", false)
            .expect("hol_trivial:complex", false)
            .expect("hol_trivial:symplectic", true)
            .expect("eq3:symplectic", true)
            .expect("nonformal:symplectic", false)
            .build(),
        _ => {
            return Err(Error::UnknownEntry { name: name.to_string(), available: builtin_names().join(", ") });
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_round_trip() {
        for name in builtin_names() {
            let e = builtin(name).unwrap();
            assert_eq!(parse(&serialize(&e)).unwrap(), e, "{name}");
        }
    }

    #[test]
    fn unknown_name_lists_entries() {
        let err = builtin("nope").unwrap_err().to_string();
        assert!(err.contains("t4kahler") && err.contains("heis3"));
    }

    #[test]
    fn heis3_shape() {
        let e = builtin("heis3").unwrap();
        assert_eq!(e.dim(), 3);
        assert_eq!(e.algebra.brackets().len(), 1);
    }

    #[test]
    fn locate_finds_lines() {
        let text = "{\n \"brackets\": [\n  {\"i\": 1},\n  {\"i\": 2}\n ]\n}";
        assert_eq!(locate(text, "brackets", 0), Some(3));
        assert_eq!(locate(text, "brackets", 1), Some(4));
        assert_eq!(locate(text, "brackets", 2), None);
    }
}
