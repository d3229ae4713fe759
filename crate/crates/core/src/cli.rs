//! The `massey` command line.
//!
//! Every command prints a report: the command echo, engine version, a SHA-256
//! digest of the inputs, and the results. Reports are text by default and
//! JSON with `--json`; both are byte-deterministic for fixed inputs.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::algebra::GradedVector;
use crate::dga::{CohomologyClass, DgaModel};
use crate::error::{Error, Result};
use crate::io::{
    bundled_catalog, bundled_model, field_name, parse_polynomial, render_vector, LoadedModel, ModelFile,
};
use crate::massey::{
    budget_from_env, massey_nfold_exhaustive, massey_nfold_witness, triple_massey, Essentiality,
    MasseyStatus, MasseyVerdict,
};
use crate::models::{
    blowup_certificate, verify_certificate, BlowupCertificate, ChernData, Route,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Most exhaustive values printed in full.
const MAX_LISTED_VALUES: usize = 256;

#[derive(Debug, Parser)]
#[command(name = "massey", version, about = "Exact CDGA cohomology and Massey products")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ModelArg {
    /// Model file, or the name of a bundled model (see `massey examples`).
    model: String,
    /// Override the ground field, e.g. `F5`.
    #[arg(long)]
    field: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check degrees, d^2 = 0, the Leibniz rule and height relations.
    Validate {
        #[command(flatten)]
        model: ModelArg,
    },
    /// Cohomology dimensions and canonical bases.
    #[command(group(ArgGroup::new("which").required(true).args(["degree", "all"])))]
    Cohomology {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        all: bool,
    },
    /// Massey product of labeled classes (labels or polynomials).
    Massey {
        #[command(flatten)]
        model: ModelArg,
        /// Class labels from the model file, `-label`, or polynomials such as `x1*x3`
        #[arg(required = true)]
        classes: Vec<String>,
        /// Arity; a single class is repeated this many times.
        #[arg(long)]
        arity: Option<usize>,
        /// Enumerate every defining system (prime fields only).
        #[arg(long)]
        exhaustive: bool,
    },
    /// Emit a non-formality certificate for a blow-up along the model.
    #[command(group(ArgGroup::new("route").required(true).args(["triple", "triple_restricted"])))]
    Blowup {
        #[command(flatten)]
        model: ModelArg,
        /// Complex rank of the normal bundle minus one (fiber CP^k).
        #[arg(long)]
        k: u32,
        /// JSON file `{"classes": ["c1", "c2", ...]}`; missing classes are zero.
        #[arg(long)]
        chern: Option<PathBuf>,
        /// Essential triple a b c on the model.
        #[arg(long, num_args = 3, value_names = ["A", "B", "C"])]
        triple: Option<Vec<String>>,
        /// Essential triple a b w with w restricted from the ambient manifold.
        #[arg(long, num_args = 3, value_names = ["A", "B", "W"])]
        triple_restricted: Option<Vec<String>>,
        /// Where to write the certificate.
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-check a certificate from its stored data.
    Verify { certificate: PathBuf },
    /// List bundled models, or print one as a model file.
    Examples {
        #[arg(long)]
        show: Option<String>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChernFile {
    classes: Vec<String>,
}

/// Command outcome before rendering.
struct Outcome {
    results: Map<String, Value>,
    exit: i32,
}

impl Outcome {
    fn ok(results: Map<String, Value>) -> Self {
        Outcome { results, exit: EXIT_OK }
    }
}

struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    fn new() -> Self {
        Inputs { hasher: Sha256::new() }
    }

    fn add(&mut self, bytes: &[u8]) {
        self.hasher.update((bytes.len() as u64).to_le_bytes());
        self.hasher.update(bytes);
    }

    fn digest(self) -> String {
        self.hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))
}

/// A file when the path exists, else a bundled model by name.
fn model_file(arg: &ModelArg, inputs: &mut Inputs) -> Result<ModelFile> {
    let path = Path::new(&arg.model);
    let (text, mut file) = if path.exists() {
        let text = read(path)?;
        let file = ModelFile::from_json(&text)?;
        (text, file)
    } else {
        let file = bundled_model(&arg.model)?;
        (file.to_json(), file)
    };
    inputs.add(text.as_bytes());
    if let Some(f) = &arg.field {
        inputs.add(f.as_bytes());
        file.field = f.clone();
    }
    Ok(file)
}

fn load(arg: &ModelArg, inputs: &mut Inputs) -> Result<LoadedModel> {
    model_file(arg, inputs)?.build()
}

/// A label when one names the class (or its negative), else `[representative]`.
fn render_class(m: &LoadedModel, c: &CohomologyClass) -> String {
    if let Some(l) = m.label_of(c) {
        return l.to_string();
    }
    if let Ok(neg) = m.model.class_of(&c.representative().neg()) {
        if let Some(l) = m.label_of(&neg) {
            return format!("-{l}");
        }
    }
    format!("[{}]", render_vector(m.model.presentation(), c.representative()))
}

fn render(model: &DgaModel, v: &GradedVector) -> String {
    render_vector(model.presentation(), v)
}

fn strings(items: impl IntoIterator<Item = String>) -> Value {
    Value::Array(items.into_iter().map(Value::String).collect())
}

fn cmd_validate(arg: &ModelArg, inputs: &mut Inputs) -> Result<Outcome> {
    validate_file(&model_file(arg, inputs)?)
}

fn validate_file(file: &ModelFile) -> Result<Outcome> {
    let p = file.presentation()?;
    // Raw images, so that wrongly graded ones can still be diagnosed.
    let mut images: Vec<GradedVector> = p.generators().iter().map(|g| p.zero(g.degree + 1)).collect();
    let mut degree_notes = Vec::new();
    for (name, text) in &file.differential {
        let i = p.generator_index(name).ok_or_else(|| Error::InvalidDifferential {
            generator: name.clone(),
            reason: "no such generator".into(),
        })?;
        let v = parse_polynomial(&p, text, None)?;
        let want = p.generators()[i].degree + 1;
        if !v.is_zero() && v.degree() != want {
            degree_notes.push(format!("d {name} = {text} has degree {}, expected {want}", v.degree()));
        }
        if !v.is_zero() {
            images[i] = v;
        }
    }
    let report = crate::dga::validate_differential(&p, &images)?;
    let mut r = Map::new();
    r.insert("field".into(), json!(file.field));
    r.insert("generators".into(), json!(p.generators().len()));
    r.insert("truncation".into(), json!(p.truncation()));
    r.insert("degrees".into(), if degree_notes.is_empty() { json!("ok") } else { strings(degree_notes) });
    let d2 = match report.d_squared_failures.first() {
        None => json!("holds"),
        Some(m) => {
            let mv = p.monomial_vector(m.clone(), p.field().one());
            // Witness: d(d(m)) expanded piecewise from the raw images.
            let mut witness = String::from("nonzero");
            if report.degree_violations.is_empty() {
                let model = DgaModel::new(p.clone(), images.clone())?;
                witness = render(&model, &model.d(&model.d(&mv)?)?);
            }
            json!({
                "status": "fails",
                "failures": report.d_squared_failures.len(),
                "first": p.render_monomial(m),
                "d(d(first))": witness,
            })
        }
    };
    r.insert("d_squared".into(), d2);
    let mut valid = report.is_valid();
    if report.degree_violations.is_empty() {
        let model = DgaModel::new(p.clone(), images)?;
        let (violation, complete) = model.leibniz_violation(1 << 16)?;
        let scope = if complete { "all basis pairs" } else { "generator times basis pairs" };
        r.insert(
            "leibniz".into(),
            match violation {
                None => json!(format!("holds on {scope}")),
                Some((a, b)) => {
                    valid = false;
                    json!(format!("fails on ({}, {})", p.render_monomial(&a), p.render_monomial(&b)))
                }
            },
        );
    } else {
        r.insert("leibniz".into(), json!("skipped: differential is not graded"));
    }
    r.insert(
        "relations".into(),
        if report.relation_failures.is_empty() {
            json!("preserved")
        } else {
            strings(report.relation_failures.iter().map(|g| format!("not preserved on {g}")))
        },
    );
    if valid {
        match file.build() {
            Ok(loaded) => {
                r.insert("classes".into(), json!(format!("{} labeled cocycles", loaded.classes.len())));
                r.insert("betti".into(), json!(loaded.model.betti_numbers()?));
            }
            Err(Error::NotACocycle(what)) => {
                valid = false;
                r.insert("classes".into(), json!(format!("not a cocycle: {what}")));
            }
            Err(e) => return Err(e),
        }
    }
    r.insert("verdict".into(), json!(if valid { "valid" } else { "invalid" }));
    Ok(Outcome {
        results: r,
        exit: if valid { EXIT_OK } else { EXIT_NEGATIVE },
    })
}

fn degree_entry(m: &LoadedModel, n: u32) -> Result<Value> {
    let basis = m.model.cohomology_basis(n as i64)?;
    Ok(json!({
        "degree": n,
        "dim": basis.len(),
        "basis": basis.iter().map(|c| render_class(m, c)).collect::<Vec<_>>(),
    }))
}

fn cmd_cohomology(arg: &ModelArg, degree: Option<u32>, inputs: &mut Inputs) -> Result<Outcome> {
    let m = load(arg, inputs)?;
    let mut r = Map::new();
    r.insert("field".into(), json!(field_name(m.model.presentation().field())));
    match degree {
        Some(n) => {
            m.model.check_degree(n as i64)?;
            r.insert("cohomology".into(), Value::Array(vec![degree_entry(&m, n)?]));
        }
        None => {
            r.insert("dims".into(), json!(m.model.betti_numbers()?));
            let all = (0..=m.model.truncation())
                .map(|n| degree_entry(&m, n))
                .collect::<Result<Vec<_>>>()?;
            r.insert("cohomology".into(), Value::Array(all));
        }
    }
    Ok(Outcome::ok(r))
}

fn verdict_results(m: &LoadedModel, labels: &[String], v: &MasseyVerdict) -> Map<String, Value> {
    let model = &m.model;
    let mut r = Map::new();
    r.insert("product".into(), json!(format!("<{}>", labels.join(", "))));
    r.insert("arity".into(), json!(v.arity));
    r.insert("status".into(), json!(v.status.to_string()));
    if let Some(rep) = &v.representative {
        r.insert("representative".into(), json!(render_class(m, rep)));
    }
    if let Some(ind) = &v.indeterminacy {
        let label = if v.indeterminacy_complete { "indeterminacy" } else { "indeterminacy_lower_bound" };
        r.insert(
            label.into(),
            json!({
                "dim": ind.dim(),
                "basis": ind.vectors().iter().map(|b| render(model, b)).collect::<Vec<_>>(),
            }),
        );
    }
    r.insert("essential".into(), json!(v.essential.to_string()));
    if let Some(res) = &v.residue {
        r.insert("residue".into(), json!(render(model, res)));
    }
    if let Some(ob) = &v.obstruction {
        r.insert(
            "obstruction".into(),
            json!({ "entry": format!("({},{})", ob.i, ob.j), "class": render(model, &ob.class) }),
        );
    }
    if let Some(ds) = v.witnesses.first() {
        r.insert(
            "witness".into(),
            Value::Array(
                ds.entries()
                    .map(|(&(i, j), x)| json!({ "i": i, "j": j, "value": render(model, x) }))
                    .collect(),
            ),
        );
    }
    r.insert("exhaustive".into(), json!(v.exhaustive));
    r
}

fn negative(status: MasseyStatus, essential: Essentiality) -> bool {
    status == MasseyStatus::Empty || essential == Essentiality::Inessential
}

fn cmd_massey(
    arg: &ModelArg,
    labels: &[String],
    arity: Option<usize>,
    exhaustive: bool,
    inputs: &mut Inputs,
) -> Result<Outcome> {
    let m = load(arg, inputs)?;
    let labels: Vec<String> = match (arity, labels.len()) {
        (Some(n), 1) => vec![labels[0].clone(); n],
        (Some(n), k) if n != k => {
            return Err(Error::Usage(format!("--arity {n} with {k} classes")));
        }
        _ => labels.to_vec(),
    };
    if labels.len() < 3 {
        return Err(Error::Usage(format!("arity {} is below 3", labels.len())));
    }
    for l in &labels {
        inputs.add(l.as_bytes());
    }
    let classes = labels.iter().map(|l| m.resolve(l)).collect::<Result<Vec<_>>>()?;
    if exhaustive {
        let set = massey_nfold_exhaustive(&m.model, &classes, Some(budget_from_env()))?;
        let mut r = Map::new();
        r.insert("product".into(), json!(format!("<{}>", labels.join(", "))));
        r.insert("arity".into(), json!(labels.len()));
        r.insert("enumeration_size".into(), json!(set.estimate().to_string()));
        r.insert("values".into(), json!(set.len()));
        r.insert("contains_zero".into(), json!(set.contains_zero()));
        let values = set.values();
        let mut listed: Vec<String> = values.iter().take(MAX_LISTED_VALUES).map(|c| render_class(&m, c)).collect();
        if values.len() > MAX_LISTED_VALUES {
            listed.push(format!("... {} more", values.len() - MAX_LISTED_VALUES));
        }
        r.insert("value_set".into(), strings(listed));
        let essential = set.essentiality();
        r.insert("status".into(), json!(if set.is_empty() { "Empty" } else { "NonEmpty" }));
        r.insert("essential".into(), json!(essential.to_string()));
        if let Some(ds) = set.witness() {
            r.insert(
                "witness".into(),
                Value::Array(
                    ds.entries()
                        .map(|(&(i, j), x)| json!({ "i": i, "j": j, "value": render(&m.model, x) }))
                        .collect(),
                ),
            );
        }
        let status = if set.is_empty() { MasseyStatus::Empty } else { MasseyStatus::NonEmpty };
        let exit = if negative(status, essential) { EXIT_NEGATIVE } else { EXIT_OK };
        return Ok(Outcome { results: r, exit });
    }
    massey_outcome(&m, &labels, &classes)
}

fn massey_outcome(m: &LoadedModel, labels: &[String], classes: &[CohomologyClass]) -> Result<Outcome> {
    let v = if classes.len() == 3 {
        triple_massey(&m.model, &classes[0], &classes[1], &classes[2])?
    } else {
        massey_nfold_witness(&m.model, classes)?
    };
    let exit = if negative(v.status, v.essential) { EXIT_NEGATIVE } else { EXIT_OK };
    Ok(Outcome {
        results: verdict_results(m, labels, &v),
        exit,
    })
}

fn chern_data(m: &LoadedModel, k: u32, path: Option<&Path>, inputs: &mut Inputs) -> Result<ChernData> {
    let Some(path) = path else {
        return Ok(ChernData::zero(&m.model, k));
    };
    let text = read(path)?;
    inputs.add(text.as_bytes());
    let file: ChernFile = serde_json::from_str(&text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if file.classes.len() > k as usize + 1 {
        return Err(Error::Usage(format!(
            "{} Chern classes for a rank {} bundle",
            file.classes.len(),
            k + 1
        )));
    }
    let p = m.model.presentation();
    let classes = (0..=k as usize)
        .map(|i| match file.classes.get(i) {
            Some(t) => match m.classes.get(t.as_str()) {
                Some(c) => Ok(c.representative().clone()),
                None => parse_polynomial(p, t, Some(2 * (i as u32 + 1))),
            },
            None => Ok(p.zero(2 * (i as u32 + 1))),
        })
        .collect::<Result<Vec<_>>>()?;
    ChernData::new(&m.model, k, classes)
}

#[allow(clippy::too_many_arguments)]
fn cmd_blowup(
    arg: &ModelArg,
    k: u32,
    chern: Option<&Path>,
    route: Route,
    labels: &[String],
    out: &Path,
    inputs: &mut Inputs,
) -> Result<Outcome> {
    let m = load(arg, inputs)?;
    for l in labels {
        inputs.add(l.as_bytes());
    }
    let chern = chern_data(&m, k, chern, inputs)?;
    let classes = labels.iter().map(|l| m.resolve(l)).collect::<Result<Vec<_>>>()?;
    let cert = blowup_certificate(
        Arc::clone(&m.model),
        chern,
        route,
        [
            (labels[0].as_str(), &classes[0]),
            (labels[1].as_str(), &classes[1]),
            (labels[2].as_str(), &classes[2]),
        ],
    )?;
    let text = cert.to_json();
    std::fs::write(out, &text).map_err(|e| Error::Usage(format!("cannot write {}: {e}", out.display())))?;
    let p = &cert.payload;
    let mut r = Map::new();
    r.insert("route".into(), json!(p.route));
    r.insert("k".into(), json!(p.k));
    r.insert("base_product".into(), json!(format!("<{}>", labels.join(", "))));
    r.insert("base_representative".into(), json!(p.base.representative));
    r.insert("base_indeterminacy".into(), strings(p.base.indeterminacy.clone()));
    r.insert("base_residue".into(), json!(p.base.residue));
    r.insert("fiber_generator".into(), json!(p.fiber_generator));
    r.insert("lifted_classes".into(), strings(p.blowup.classes.clone()));
    r.insert("representative".into(), json!(p.blowup.representative));
    r.insert("indeterminacy".into(), strings(p.blowup.indeterminacy.clone()));
    r.insert("residue".into(), json!(p.blowup.residue));
    r.insert("conclusion".into(), strings(p.conclusion.clone()));
    r.insert("payload_sha256".into(), json!(cert.payload_sha256));
    Ok(Outcome::ok(r))
}

fn cmd_verify(path: &Path, inputs: &mut Inputs) -> Result<Outcome> {
    let text = read(path)?;
    inputs.add(text.as_bytes());
    verify_text(&text)
}

fn verify_text(text: &str) -> Result<Outcome> {
    let cert = BlowupCertificate::from_json(text)?;
    let report = verify_certificate(&cert);
    let mut r = Map::new();
    r.insert("route".into(), json!(cert.payload.route));
    r.insert("certificate_engine_version".into(), json!(cert.engine_version));
    r.insert(
        "checks".into(),
        strings(report.checks.iter().map(|c| match &c.failure {
            None => format!("{}: PASS", c.name),
            Some(why) => format!("{}: FAIL ({why})", c.name),
        })),
    );
    let passed = report.passed();
    if let Some(f) = report.first_failure() {
        r.insert("failed_condition".into(), json!(f.name));
    }
    r.insert("verdict".into(), json!(if passed { "PASS" } else { "FAIL" }));
    Ok(Outcome {
        results: r,
        exit: if passed { EXIT_OK } else { EXIT_NEGATIVE },
    })
}

fn cmd_examples() -> Outcome {
    let models = bundled_catalog()
        .into_iter()
        .map(|e| {
            json!({
                "name": e.pattern,
                "description": e.description,
                "sample": e.sample,
                "betti": e.betti,
            })
        })
        .collect();
    let mut r = Map::new();
    r.insert("models".into(), Value::Array(models));
    Outcome::ok(r)
}

fn pretty(results: Map<String, Value>) -> String {
    serde_json::to_string_pretty(&Value::Object(results)).expect("reports serialize")
}

/// The `validate` results for a model file as JSON; the flag is the verdict.
pub fn validate_json(model_json: &str) -> Result<(bool, String)> {
    let o = validate_file(&ModelFile::from_json(model_json)?)?;
    Ok((o.exit == EXIT_OK, pretty(o.results)))
}

/// The Massey product of classes given by label or polynomial, as JSON; the
/// flag is false for an empty or inessential product.
pub fn massey_json(m: &LoadedModel, labels: &[String]) -> Result<(bool, String)> {
    if labels.len() < 3 {
        return Err(Error::Usage(format!("arity {} is below 3", labels.len())));
    }
    let classes = labels.iter().map(|l| m.resolve(l)).collect::<Result<Vec<_>>>()?;
    let o = massey_outcome(m, labels, &classes)?;
    Ok((o.exit == EXIT_OK, pretty(o.results)))
}

/// The `verify` results for a certificate as JSON; the flag is PASS.
pub fn verify_json(certificate_json: &str) -> Result<(bool, String)> {
    let o = verify_text(certificate_json)?;
    Ok((o.exit == EXIT_OK, pretty(o.results)))
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(v, indent + 2, out);
                    }
                    Value::Array(items) if items.is_empty() => out.push_str(&format!("{pad}{k}: (none)\n")),
                    Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
                        if items.iter().all(|i| i.is_number()) {
                            let nums: Vec<String> = items.iter().map(|i| i.to_string()).collect();
                            out.push_str(&format!("{pad}{k}: ({})\n", nums.join(", ")));
                        } else {
                            out.push_str(&format!("{pad}{k}:\n"));
                            for i in items {
                                out.push_str(&format!("{pad}  - {}\n", scalar_text(i)));
                            }
                        }
                    }
                    Value::Array(items) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for i in items {
                            out.push_str(&format!("{pad}  -\n"));
                            render_text(i, indent + 4, out);
                        }
                    }
                    other => out.push_str(&format!("{pad}{k}: {}\n", scalar_text(other))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_text(other))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// The command echo: the arguments after the program name.
fn echo(args: &[OsString]) -> String {
    let mut parts = vec!["massey".to_string()];
    parts.extend(args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()));
    parts.join(" ")
}

/// Runs the command line, writing the report to `stdout` and diagnostics to
/// `stderr`; returns the exit code.
pub fn run(args: Vec<OsString>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    if let Command::Examples { show: Some(name) } = &cli.command {
        return match bundled_model(name) {
            Ok(file) => {
                let _ = stdout.write_all(file.to_json().as_bytes());
                EXIT_OK
            }
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                EXIT_ERROR
            }
        };
    }
    let mut inputs = Inputs::new();
    let outcome = match &cli.command {
        Command::Validate { model } => cmd_validate(model, &mut inputs),
        Command::Cohomology { model, degree, .. } => cmd_cohomology(model, *degree, &mut inputs),
        Command::Massey {
            model,
            classes,
            arity,
            exhaustive,
        } => cmd_massey(model, classes, *arity, *exhaustive, &mut inputs),
        Command::Blowup {
            model,
            k,
            chern,
            triple,
            triple_restricted,
            out,
        } => {
            let (route, labels) = match (triple, triple_restricted) {
                (Some(t), _) => (Route::FullTriple, t),
                (_, Some(t)) => (Route::RestrictedClass, t),
                _ => unreachable!("clap enforces the route group"),
            };
            cmd_blowup(model, *k, chern.as_deref(), route, labels, out, &mut inputs)
        }
        Command::Verify { certificate } => cmd_verify(certificate, &mut inputs),
        Command::Examples { .. } => Ok(cmd_examples()),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_ERROR;
        }
    };
    let mut report = Map::new();
    report.insert("command".into(), json!(echo(&args)));
    report.insert("engine_version".into(), json!(env!("CARGO_PKG_VERSION")));
    report.insert("inputs_sha256".into(), json!(inputs.digest()));
    report.insert("results".into(), Value::Object(outcome.results));
    let text = if cli.json {
        let mut s = serde_json::to_string_pretty(&Value::Object(report)).expect("reports serialize");
        s.push('\n');
        s
    } else {
        let mut s = String::new();
        render_text(&Value::Object(report), 0, &mut s);
        s
    };
    let _ = stdout.write_all(text.as_bytes());
    outcome.exit
}
