//! Command-line front end. Every command produces a [`Report`]; the exit
//! code is 0 when all verdicts pass, 1 when one fails and 2 on input errors.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::catalog::{self, CatalogEntry};
use crate::dga::{CohomologyData, DgaPresentation, MasseySearch};
use crate::error::{Error, Result};
use crate::exactlin::{format_rational, Subspace};
use crate::forms::{FormElement, MonomialBasis};
use crate::gcs::check_gcs;
use crate::gk::{check_gk, formality_algebroid, FormalityReport};

pub const SCHEMA: &str = "gkforge/1";

#[derive(Parser, Debug)]
#[command(name = "gkforge", version, about = "Exact checks for generalized complex and generalized Kähler structures")]
struct Cli {
    #[command(subcommand)]
    group: Group,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Entry file (JSON) or builtin name
    #[arg(long, global = true)]
    input: Option<String>,
    /// Restrict to one named structure or pair
    #[arg(long, global = true)]
    structure: Option<String>,
    /// Emit a JSON report
    #[arg(long, global = true)]
    json: bool,
    /// Massey enumeration bound (default: algebra dimension)
    #[arg(long = "max-degree", global = true)]
    max_degree: Option<usize>,
    /// Seed for randomized property checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Group {
    /// Lie algebra checks
    Lie {
        #[command(subcommand)]
        action: LieCmd,
    },
    /// Generalized complex structures
    Gcs {
        #[command(subcommand)]
        action: GcsCmd,
    },
    /// Generalized Kähler pairs
    Gk {
        #[command(subcommand)]
        action: GkCmd,
    },
    /// Chevalley–Eilenberg DGA obstructions
    Dga {
        #[command(subcommand)]
        action: DgaCmd,
    },
    /// Built-in entries
    Catalog {
        #[command(subcommand)]
        action: CatalogCmd,
    },
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum LieCmd {
    /// Jacobi identity, d^2 = 0 and nilpotency
    Check,
    /// Betti numbers and cocycle representatives
    Cohomology,
    /// Ascending filtration of the dual
    Filtration,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum GcsCmd {
    /// J^2 = -1, orthogonality and integrability
    Check,
    /// Type of each structure
    Type,
    /// Pure spinor spanning the canonical line
    Canonical,
    /// U^k decomposition and the split d_H = del + delbar
    Decompose,
    /// delbar(alpha . rho) = (d_L alpha) . rho on basis forms
    Eq3,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum GkCmd {
    /// Commuting pair with positive definite metric
    Check,
    /// delta+ delta- lemma and the U^(p,q) dimensions
    Ddbar,
    /// Matches del, delbar on L1 with delta+, delta-
    Correspondence,
    /// Formality obstructions of the Lie algebroid of J1
    Formality,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum DgaCmd {
    /// Non-vanishing triple Massey products
    Massey,
    /// Closed-but-not-exact witness of non-formality
    Witness,
}

#[derive(Subcommand, Debug, Clone)]
enum CatalogCmd {
    /// Built-in entries and their structures
    List,
    /// Print one entry as JSON
    Show { name: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub check: String,
    pub pass: bool,
    pub details: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub input: Option<String>,
    pub input_digest: Option<String>,
    pub verdicts: Vec<Verdict>,
    pub data: Value,
    #[serde(skip)]
    summary: Vec<String>,
}

impl Report {
    fn new(command: &str) -> Self {
        Report {
            schema: SCHEMA,
            command: command.to_string(),
            input: None,
            input_digest: None,
            verdicts: Vec::new(),
            data: json!({}),
            summary: Vec::new(),
        }
    }

    fn verdict(&mut self, check: impl Into<String>, pass: bool, details: impl Into<String>) {
        self.verdicts.push(Verdict { check: check.into(), pass, details: details.into() });
    }

    fn put(&mut self, key: &str, value: Value) {
        self.data.as_object_mut().expect("data is an object").insert(key.to_string(), value);
    }

    fn line(&mut self, s: impl Into<String>) {
        self.summary.push(s.into());
    }

    pub fn passes(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn render_text(&self) -> String {
        let mut out = self.command.to_string();
        if let (Some(input), Some(digest)) = (&self.input, &self.input_digest) {
            out.push_str(&format!(" [{input}, sha256 {}]", &digest[..12]));
        }
        out.push('\n');
        for v in &self.verdicts {
            let tag = if v.pass { "PASS" } else { "FAIL" };
            if v.details.is_empty() {
                out.push_str(&format!("{tag}  {}\n", v.check));
            } else {
                out.push_str(&format!("{tag}  {}: {}\n", v.check, v.details));
            }
        }
        for s in &self.summary {
            out.push_str(s);
            out.push('\n');
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one command line (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    if let Group::Catalog { action: CatalogCmd::Show { name } } = &cli.group {
        return match load(name) {
            Ok(e) => Outcome { code: 0, stdout: catalog::serialize(&e), stderr: String::new() },
            Err(e) => input_error(e),
        };
    }
    match dispatch(&cli) {
        Ok(report) => {
            let stdout = if cli.opts.json { report.render_json() } else { report.render_text() };
            Outcome { code: if report.passes() { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(e) => input_error(e),
    }
}

fn input_error(e: Error) -> Outcome {
    Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") }
}

/// Reads a JSON entry from a file path, or falls back to a builtin name.
pub fn load(input: &str) -> Result<CatalogEntry> {
    let path = std::path::Path::new(input);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{input}: {e}")))?;
        catalog::parse(&text).map_err(|e| match e {
            Error::Parse(m) => Error::Parse(format!("{input}: {m}")),
            other => other,
        })
    } else {
        catalog::builtin(input)
    }
}

pub fn digest(entry: &CatalogEntry) -> String {
    hex::encode(Sha256::digest(catalog::serialize(entry).as_bytes()))
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let opts = &cli.opts;
    let name = match &cli.group {
        Group::Catalog { .. } => return Ok(catalog_list()),
        Group::Lie { action } => format!("lie {}", lower(action)),
        Group::Gcs { action } => format!("gcs {}", lower(action)),
        Group::Gk { action } => format!("gk {}", lower(action)),
        Group::Dga { action } => format!("dga {}", lower(action)),
    };
    let input = opts.input.as_deref().ok_or_else(|| Error::Parse("--input is required".to_string()))?;
    let entry = load(input)?;
    let mut r = Report::new(&name);
    r.input = Some(input.to_string());
    r.input_digest = Some(digest(&entry));
    match &cli.group {
        Group::Lie { action } => lie(*action, &entry, &mut r)?,
        Group::Gcs { action } => gcs(*action, &entry, opts, &mut r)?,
        Group::Gk { action } => gk(*action, &entry, opts, &mut r)?,
        Group::Dga { action } => dga(*action, &entry, opts, &mut r)?,
        Group::Catalog { .. } => unreachable!(),
    }
    Ok(r)
}

fn lower(x: &impl std::fmt::Debug) -> String {
    format!("{x:?}").to_lowercase()
}

fn catalog_list() -> Report {
    let mut r = Report::new("catalog list");
    let mut entries = Vec::new();
    for name in catalog::builtin_names() {
        let e = catalog::builtin(name).expect("builtin exists");
        let structures: Vec<&str> = e.structures.iter().map(|s| s.name.as_str()).collect();
        r.line(format!("{name:<10} dim {}  {}", e.dim(), structures.join(" ")));
        entries.push(json!({"name": name, "dim": e.dim(), "structures": structures}));
    }
    r.put("entries", Value::Array(entries));
    r
}

fn forms_json(forms: &[FormElement]) -> Value {
    Value::Array(forms.iter().map(|f| Value::String(f.to_string())).collect())
}

fn subspace_forms(s: &Subspace, basis: &MonomialBasis) -> Vec<FormElement> {
    s.basis_vectors().iter().map(|v| FormElement::from_dense(v, basis)).collect()
}

fn tuple(xs: &[usize]) -> String {
    format!("({})", xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn lie(action: LieCmd, e: &CatalogEntry, r: &mut Report) -> Result<()> {
    let g = &e.algebra;
    match action {
        LieCmd::Check => {
            let jac = g.check_jacobi();
            let details = match &jac.failure {
                Some(((i, j, k), v)) => {
                    let f = FormElement::linear(v).display_with("e");
                    format!("Jacobiator of (e{}, e{}, e{}) is {f}", i + 1, j + 1, k + 1)
                }
                None => String::new(),
            };
            r.verdict("Jacobi identity", jac.holds, details);
            let d2 = g.ce_differential();
            r.verdict("d^2 = 0 on the Chevalley-Eilenberg complex", d2.is_ok(), d2.err().map(|e| e.to_string()).unwrap_or_default());
            let lcs = g.lower_central_series();
            let dims: Vec<usize> = lcs.series.iter().map(Subspace::dim).collect();
            r.line(format!("dim {}, lower central series dims {}", g.dim(), tuple(&dims)));
            match lcs.step {
                Some(s) if lcs.is_nilpotent => r.line(format!("nilpotent of step {s}")),
                _ => r.line("not nilpotent"),
            }
            let brackets: Vec<Value> = g
                .brackets()
                .into_iter()
                .map(|(i, j, k, c)| json!([i + 1, j + 1, k + 1, format_rational(&c)]))
                .collect();
            r.put("dim", json!(g.dim()));
            r.put("brackets", Value::Array(brackets));
            r.put("lower_central_series", json!(dims));
            r.put("nilpotent", json!(lcs.is_nilpotent));
            r.put("step", json!(lcs.step));
        }
        LieCmd::Cohomology => match g.ce_differential() {
            Ok(d) => {
                r.verdict("d^2 = 0 on the Chevalley-Eilenberg complex", true, "");
                let coh = d.cohomology();
                cohomology_data(&coh, r);
            }
            Err(err) => r.verdict("d^2 = 0 on the Chevalley-Eilenberg complex", false, err.to_string()),
        },
        LieCmd::Filtration => match g.ce_differential() {
            Ok(d) => filtration_data(&d, r)?,
            Err(err) => r.verdict("d^2 = 0 on the Chevalley-Eilenberg complex", false, err.to_string()),
        },
    }
    Ok(())
}

fn cohomology_data(coh: &CohomologyData, r: &mut Report) {
    let betti = coh.betti();
    r.line(format!("Betti numbers {}", tuple(&betti)));
    r.line(format!("Euler characteristic {}", coh.euler_characteristic()));
    r.put("betti", json!(betti));
    r.put("euler_characteristic", json!(coh.euler_characteristic()));
    let reps: Vec<Value> = coh.degrees.iter().map(|d| forms_json(&d.representatives)).collect();
    r.put("representatives", Value::Array(reps));
}

fn filtration_data(d: &DgaPresentation, r: &mut Report) -> Result<()> {
    match d.filtration() {
        Ok(f) => {
            r.verdict("filtration V1 = ker d, Vi = d^-1(^2 Vi-1) exhausts the generators", true, "");
            let basis = f.basis_forms();
            let minimal = d.check_minimal_basis(&basis)?;
            r.verdict("compatible basis is minimal", minimal, "");
            r.line(format!("filtration dims {}", tuple(&f.step_dims())));
            r.line(format!("compatible basis {}", basis.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")));
            r.put("filtration", json!(f.step_dims()));
            r.put("compatible_basis", forms_json(&basis));
        }
        Err(err @ Error::FiltrationStalled { .. }) => {
            r.verdict("filtration V1 = ker d, Vi = d^-1(^2 Vi-1) exhausts the generators", false, err.to_string())
        }
        Err(err) => return Err(err),
    }
    Ok(())
}

fn selected<'a>(names: Vec<&'a str>, opts: &'a Opts, e: &'a CatalogEntry, kind: &str) -> Result<Vec<&'a str>> {
    match &opts.structure {
        Some(s) => {
            e.structure(s)?;
            if names.contains(&s.as_str()) {
                Ok(vec![s.as_str()])
            } else {
                Err(Error::Parse(format!("structure `{s}` is not a {kind}")))
            }
        }
        None if names.is_empty() => Err(Error::Parse(format!("entry `{}` declares no {kind}", e.name))),
        None => Ok(names),
    }
}

fn gcs(action: GcsCmd, e: &CatalogEntry, opts: &Opts, r: &mut Report) -> Result<()> {
    let td = e.double()?;
    let m = e.dim();
    let forms = MonomialBasis::new(m);
    let mut data = serde_json::Map::new();
    for s in selected(e.gcs_names(), opts, e, "generalized complex structure")? {
        if let GcsCmd::Check = action {
            let rep = check_gcs(e.matrix(s)?, &td);
            r.verdict(format!("{s}: J is real"), rep.real, "");
            r.verdict(format!("{s}: J^2 = -1"), rep.squares_to_minus_one, "");
            r.verdict(format!("{s}: J preserves the natural pairing"), rep.preserves_pairing, "");
            r.verdict(format!("{s}: i-eigenspace closed under the Courant bracket"), rep.involutive, rep.failure.clone().unwrap_or_default());
            data.insert(s.to_string(), serde_json::to_value(&rep).expect("serializes"));
            continue;
        }
        let gc = match e.gcs(s) {
            Ok(gc) => gc,
            Err(err) => {
                r.verdict(format!("{s}: generalized complex structure"), false, err.to_string());
                continue;
            }
        };
        let mut d = serde_json::Map::new();
        match action {
            GcsCmd::Check => unreachable!(),
            GcsCmd::Type => {
                let t = gc.type_of();
                r.verdict(format!("{s}: generalized complex structure"), true, "");
                r.line(format!("{s}: type {t}, abelian {}", gc.is_abelian()));
                d.insert("type".into(), json!(t));
                d.insert("abelian".into(), json!(gc.is_abelian()));
            }
            GcsCmd::Canonical => {
                let rho = &gc.spinor().rho;
                r.verdict(format!("{s}: canonical line is 1-dimensional"), true, "");
                r.line(format!("{s}: rho = {rho}"));
                r.line(format!("{s}: d_H rho = 0: {}", gc.check_hol_trivial()));
                d.insert("rho".into(), json!(rho.to_string()));
                d.insert("hol_trivial".into(), json!(gc.check_hol_trivial()));
            }
            GcsCmd::Decompose => {
                let dims = gc.uk().dims();
                r.verdict(format!("{s}: dim U^k = C(m, n-k), direct sum of all forms"), true, "");
                let split = gc.del_delbar();
                r.verdict(
                    format!("{s}: d_H(U^k) in U^(k+1) + U^(k-1)"),
                    split.is_ok(),
                    split.err().map(|e| e.to_string()).unwrap_or_default(),
                );
                let shown: Vec<String> = dims.iter().map(|(k, n)| format!("U^{k}: {n}")).collect();
                r.line(format!("{s}: {}", shown.join(", ")));
                let levels: Vec<Value> = dims
                    .iter()
                    .map(|&(k, n)| json!({"k": k, "dim": n, "basis": forms_json(&subspace_forms(gc.uk().space(k), &forms))}))
                    .collect();
                d.insert("levels".into(), Value::Array(levels));
            }
            GcsCmd::Eq3 => {
                let check = format!("{s}: delbar(a.rho) = (d_L a).rho for all a");
                match gc.verify_eq3() {
                    Ok(rep) => {
                        let details = rep.failure.as_ref().map(|a| format!("fails at {a}")).unwrap_or_default();
                        r.verdict(check, rep.holds, details);
                        r.line(format!("{s}: checked {} basis elements", rep.checked));
                        d.insert("checked".into(), json!(rep.checked));
                        d.insert("failure".into(), json!(rep.failure));
                    }
                    Err(Error::NotHolomorphicallyTrivial) => skip(r, &mut d, s),
                    Err(err) => r.verdict(check, false, err.to_string()),
                }
                if let Ok(alg) = gc.algebroid() {
                    let images: Vec<Value> = alg.dga.d_images().iter().map(|f| json!(f.display_with("l"))).collect();
                    d.insert("d_L".into(), Value::Array(images));
                }
            }
        }
        data.insert(s.to_string(), Value::Object(d));
    }
    r.put("structures", Value::Object(data));
    Ok(())
}

/// Checks that presuppose d_H rho = 0 are skipped rather than failed.
fn skip(r: &mut Report, d: &mut serde_json::Map<String, Value>, s: &str) {
    r.line(format!("{s}: skipped, canonical line is not d_H-closed"));
    d.insert("skipped".into(), json!("canonical line is not d_H-closed"));
}

fn formality_json(rep: &FormalityReport) -> Value {
    let certs: Vec<Value> = rep
        .massey
        .nonvanishing
        .iter()
        .map(|c| json!({"a": c.a.to_string(), "b": c.b.to_string(), "c": c.c.to_string(), "representative": c.result.representative.to_string()}))
        .collect();
    json!({
        "verdict": rep.verdict.to_string(),
        "betti": rep.betti,
        "filtration": rep.filtration,
        "minimal": rep.minimal,
        "witness": rep.witness,
        "massey_defined": rep.massey.defined,
        "massey_nonvanishing": certs,
    })
}

fn gk(action: GkCmd, e: &CatalogEntry, opts: &Opts, r: &mut Report) -> Result<()> {
    let td = e.double()?;
    let m = e.dim();
    let forms = MonomialBasis::new(m);
    let mut data = serde_json::Map::new();
    if let GkCmd::Formality = action {
        let max_degree = opts.max_degree.unwrap_or(m);
        let mut names = e.pair_names();
        names.extend(e.gcs_names());
        for s in selected(names, opts, e, "structure")? {
            let is_pair = e.pair_names().contains(&s);
            let gc = if is_pair { e.pair(s).map(|p| p.j1().clone()) } else { e.gcs(s) };
            let rep = gc.and_then(|gc| formality_algebroid(&gc, max_degree));
            match rep {
                Ok(rep) => {
                    if is_pair {
                        r.verdict(format!("{s}: no formality obstruction on a generalized Kähler pair"), !rep.verdict.is_non_formal(), rep.verdict.to_string());
                    } else {
                        r.verdict(format!("{s}: formality obstruction search"), true, rep.verdict.to_string());
                    }
                    r.line(format!("{s}: {}", rep.verdict));
                    data.insert(s.to_string(), formality_json(&rep));
                }
                Err(Error::NotHolomorphicallyTrivial) => {
                    let mut d = serde_json::Map::new();
                    skip(r, &mut d, s);
                    data.insert(s.to_string(), Value::Object(d));
                }
                Err(err) => r.verdict(format!("{s}: formality obstruction search"), false, err.to_string()),
            }
        }
        r.put("structures", Value::Object(data));
        return Ok(());
    }
    for s in selected(e.pair_names(), opts, e, "pair")? {
        let (a, b) = e.pair_matrices(s)?;
        let pair = match action {
            GkCmd::Check => {
                let rep = check_gk(a, b, &td);
                r.verdict(format!("{s}: J1 is generalized complex"), rep.j1.passes(), rep.j1.failure.clone().unwrap_or_default());
                r.verdict(format!("{s}: J2 is generalized complex"), rep.j2.passes(), rep.j2.failure.clone().unwrap_or_default());
                r.verdict(format!("{s}: J1 J2 = J2 J1"), rep.commute, "");
                r.verdict(format!("{s}: <J1 J2 v, v> positive definite"), rep.positive_definite, "");
                data.insert(s.to_string(), serde_json::to_value(&rep).expect("serializes"));
                if !rep.passes() {
                    continue;
                }
                let pair = e.pair(s)?;
                let dims = pair.intersection_dims()?;
                r.verdict(format!("{s}: dim L1 = 2 dim(L1 & L2), L1 = (L1 & L2) + (L1 & conj L2)"), dims.splits, "");
                r.line(format!("{s}: dim L1 = {}, dim(L1 & L2) = {}, dim(L1 & conj L2) = {}", dims.l1, dims.l1_cap_l2, dims.l1_cap_l2bar));
                match pair.l1_bigrading(opts.seed) {
                    Ok(b) => {
                        r.verdict(
                            format!("{s}: d_L1 = del + delbar, both derivations squaring to zero"),
                            true,
                            format!("Leibniz on {} random pairs (seed {})", b.leibniz_pairs, opts.seed),
                        );
                    }
                    Err(err) => r.verdict(format!("{s}: d_L1 = del + delbar, both derivations squaring to zero"), false, err.to_string()),
                }
                continue;
            }
            _ => match e.pair(s) {
                Ok(p) => p,
                Err(err) => {
                    r.verdict(format!("{s}: generalized Kähler pair"), false, err.to_string());
                    continue;
                }
            },
        };
        match action {
            GkCmd::Ddbar => {
                let check = format!("{s}: Im d+ & Ker d- = Im d- & Ker d+ = Im d+d-");
                match pair.ddbar_lemma_check() {
                    Ok(dd) => {
                        let dims = [dd.im_plus_ker_minus.dim(), dd.im_minus_ker_plus.dim(), dd.im_plus_minus.dim()];
                        r.verdict(check, dd.holds(), format!("dimensions {}", tuple(&dims)));
                        let upq = pair.upq_decomposition()?;
                        let shown: Vec<String> = upq.dims().iter().map(|((p, q), n)| format!("U^({p},{q}): {n}")).collect();
                        r.line(format!("{s}: {}", shown.join(", ")));
                        data.insert(
                            s.to_string(),
                            json!({
                                "im_plus_ker_minus": forms_json(&subspace_forms(&dd.im_plus_ker_minus, &forms)),
                                "im_minus_ker_plus": forms_json(&subspace_forms(&dd.im_minus_ker_plus, &forms)),
                                "im_plus_minus": forms_json(&subspace_forms(&dd.im_plus_minus, &forms)),
                                "upq": upq.dims().iter().map(|((p, q), n)| json!([p, q, n])).collect::<Vec<_>>(),
                            }),
                        );
                    }
                    Err(err) => r.verdict(check, false, err.to_string()),
                }
            }
            GkCmd::Correspondence => {
                let check = format!("{s}: del_L1, delbar_L1 carried to delta+, delta- by the spinor map");
                match pair.correspondence(opts.seed) {
                    Ok(c) => {
                        let realized = match (c.del_to_plus, c.del_to_minus) {
                            (true, true) => "both pairings (operators vanish)",
                            (true, false) => "del_L1 -> delta+, delbar_L1 -> delta-",
                            (false, true) => "del_L1 -> delta-, delbar_L1 -> delta+",
                            (false, false) => "neither pairing holds",
                        };
                        r.verdict(check, c.consistent(), realized);
                        data.insert(s.to_string(), serde_json::to_value(&c).expect("serializes"));
                    }
                    Err(Error::NotHolomorphicallyTrivial) => {
                        let mut d = serde_json::Map::new();
                        skip(r, &mut d, s);
                        data.insert(s.to_string(), Value::Object(d));
                    }
                    Err(err) => r.verdict(check, false, err.to_string()),
                }
            }
            GkCmd::Check | GkCmd::Formality => unreachable!(),
        }
    }
    r.put("pairs", Value::Object(data));
    Ok(())
}

fn massey_json(search: &MasseySearch) -> Value {
    let certs: Vec<Value> = search
        .nonvanishing
        .iter()
        .map(|c| {
            json!({
                "a": c.a.to_string(), "b": c.b.to_string(), "c": c.c.to_string(),
                "representative": c.result.representative.to_string(),
                "degree": c.result.degree,
            })
        })
        .collect();
    json!({"candidates": search.candidates, "defined": search.defined, "nonvanishing": certs})
}

fn dga(action: DgaCmd, e: &CatalogEntry, opts: &Opts, r: &mut Report) -> Result<()> {
    let d = match e.algebra.ce_differential() {
        Ok(d) => d,
        Err(err) => {
            r.verdict("d^2 = 0 on the Chevalley-Eilenberg complex", false, err.to_string());
            return Ok(());
        }
    };
    match action {
        DgaCmd::Massey => {
            let coh = d.cohomology();
            let max_degree = opts.max_degree.unwrap_or(e.dim());
            let search = d.massey_search(&coh, max_degree, false);
            r.verdict("d^2 = 0 on the Chevalley-Eilenberg complex", true, "");
            r.line(format!("{} defined triples up to degree {max_degree}, {} nonvanishing", search.defined, search.nonvanishing.len()));
            for c in &search.nonvanishing {
                r.line(format!("<[{}], [{}], [{}]> = [{}]", c.a, c.b, c.c, c.result.representative));
            }
            r.put("massey", massey_json(&search));
        }
        DgaCmd::Witness => {
            let f = match d.filtration() {
                Ok(f) => f,
                Err(err @ Error::FiltrationStalled { .. }) => {
                    r.verdict("nilpotent: filtration exhausts the generators", false, err.to_string());
                    return Ok(());
                }
                Err(err) => return Err(err),
            };
            r.verdict("nilpotent: filtration exhausts the generators", true, "");
            let basis = f.basis_forms();
            let w = d.nonformality_witness(&basis)?;
            let details = match &w.primitive {
                Some(p) if w.witness_found => format!("{} = d({p}), volume {} not exact", w.product, w.volume),
                _ if !w.product_exact => format!("{} is not exact", w.product),
                _ => format!("volume {} is exact", w.volume),
            };
            r.verdict("witness: product of first n-1 basis forms exact, volume class nonzero", w.witness_found, details);
            r.put("basis", forms_json(&basis));
            r.put("witness", serde_json::to_value(&w).expect("serializes"));
        }
    }
    Ok(())
}
