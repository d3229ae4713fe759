//! Non-formality certificates for blow-ups.
//!
//! The exceptional divisor of a blow-up along `M` is the projectivization of
//! the normal bundle, with the fiber class `xi` playing the role of the Euler
//! class of the tautological line. An essential triple on `M` transfers to an
//! essential triple `<xi^l p*a, xi^m p*b, xi^n p*c>` on that model, and from
//! there to the blow-up itself. A certificate stores everything needed to
//! re-check the algebraic part without trusting the engine run that made it.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::projective::{projectivize, ChernData};
use crate::algebra::GradedVector;
use crate::dga::{CohomologyClass, DgaModel, Membership};
use crate::error::{Error, Result};
use crate::io::{parse_polynomial, render_vector, ModelFile};
use crate::massey::{c_of, entry_degree, triple_massey, validate_defining_system, DefiningSystem, MasseyVerdict};

pub const CERTIFICATE_FORMAT: &str = "massey-blowup-certificate/1";

/// How the triple on the blown-up model is formed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// `<xi p*a, xi p*b, xi p*c>` from an essential triple on `M`; needs `k >= 3`.
    FullTriple,
    /// `<xi p*a, xi p*b, p*w>` where `w` is restricted from the ambient
    /// manifold; needs `k >= 2`.
    RestrictedClass,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::FullTriple => "full-triple",
            Route::RestrictedClass => "restricted-class",
        }
    }

    pub fn parse(s: &str) -> Option<Route> {
        match s {
            "full-triple" => Some(Route::FullTriple),
            "restricted-class" => Some(Route::RestrictedClass),
            _ => None,
        }
    }

    pub fn min_k(self) -> u32 {
        match self {
            Route::FullTriple => 3,
            Route::RestrictedClass => 2,
        }
    }

    pub fn exponents(self) -> [u32; 3] {
        match self {
            Route::FullTriple => [1, 1, 1],
            Route::RestrictedClass => [1, 1, 0],
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleEntry {
    pub label: String,
    pub degree: u32,
    pub class: String,
    /// Tagged as restricted from the ambient manifold.
    pub restricted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessEntry {
    pub i: usize,
    pub j: usize,
    pub value: String,
}

/// An essential triple product with its witness, as polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictRecord {
    pub classes: Vec<String>,
    pub witness: Vec<WitnessEntry>,
    pub representative: String,
    pub indeterminacy: Vec<String>,
    /// Representative reduced modulo the indeterminacy; nonzero.
    pub residue: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificatePayload {
    pub route: String,
    pub k: u32,
    pub base_model: ModelFile,
    /// `c_1, ..., c_{k+1}`.
    pub chern: Vec<String>,
    pub triple: Vec<TripleEntry>,
    pub base: VerdictRecord,
    pub fiber_generator: String,
    pub exponents: [u32; 3],
    pub blowup: VerdictRecord,
    pub conclusion: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlowupCertificate {
    pub format: String,
    /// Advisory only; not covered by the digest.
    pub engine_version: String,
    pub payload: CertificatePayload,
    pub payload_sha256: String,
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// SHA-256 of the compact JSON encoding of the payload.
pub fn payload_digest(payload: &CertificatePayload) -> String {
    let json = serde_json::to_string(payload).expect("payload serializes");
    hex(&Sha256::digest(json.as_bytes()))
}

fn record(model: &DgaModel, verdict: &MasseyVerdict) -> VerdictRecord {
    let p = model.presentation();
    let witness = verdict.witnesses.first().map_or_else(Vec::new, |ds| {
        ds.entries()
            .map(|(&(i, j), v)| WitnessEntry {
                i,
                j,
                value: render_vector(p, v),
            })
            .collect()
    });
    VerdictRecord {
        classes: verdict
            .classes
            .iter()
            .map(|c| render_vector(p, c.representative()))
            .collect(),
        witness,
        representative: verdict
            .representative
            .as_ref()
            .map_or_else(|| "0".into(), |c| render_vector(p, c.representative())),
        indeterminacy: verdict
            .indeterminacy
            .as_ref()
            .map_or_else(Vec::new, |s| s.vectors().iter().map(|v| render_vector(p, v)).collect()),
        residue: verdict
            .residue
            .as_ref()
            .map_or_else(|| "0".into(), |r| render_vector(p, r)),
    }
}

/// Builds the projectivization of `(base, chern)`, transfers the essential
/// triple along the route's exponents, and packages the result.
///
/// For [`Route::RestrictedClass`] the third class is taken as restricted
/// from the ambient manifold; that restriction is not checked.
pub fn blowup_certificate(
    base: Arc<DgaModel>,
    chern: ChernData,
    route: Route,
    triple: [(&str, &CohomologyClass); 3],
) -> Result<BlowupCertificate> {
    let k = chern.k();
    if k < route.min_k() {
        return Err(Error::HypothesisFailure(format!(
            "route {route} needs k >= {}, got k = {k}",
            route.min_k()
        )));
    }
    let classes: Vec<CohomologyClass> = triple.iter().map(|(_, c)| (*c).clone()).collect();
    let base_verdict = triple_massey(&base, &classes[0], &classes[1], &classes[2])?;
    if !base_verdict.is_essential() {
        return Err(Error::HypothesisFailure(format!(
            "<{}, {}, {}> on the base is {} ({}), not essential",
            triple[0].0, triple[1].0, triple[2].0, base_verdict.status, base_verdict.essential
        )));
    }
    let bp = base.presentation().clone();
    let chern_text: Vec<String> = chern.classes().iter().map(|c| render_vector(&bp, c)).collect();
    let e = projectivize(base.clone(), chern)?;
    let exponents = route.exponents();
    let (_, verdict) =
        e.transferred_massey(&classes[0], &classes[1], &classes[2], exponents)?;
    let labels: Vec<(String, GradedVector)> = triple
        .iter()
        .map(|(l, c)| (l.to_string(), c.representative().clone()))
        .collect();
    let names: Vec<String> = triple.iter().map(|(l, _)| l.to_string()).collect();
    let xi = e.xi_name().to_string();
    let lifted: Vec<String> = names
        .iter()
        .zip(exponents)
        .map(|(n, x)| match x {
            0 => format!("p*{n}"),
            1 => format!("{xi} p*{n}"),
            x => format!("{xi}^{x} p*{n}"),
        })
        .collect();
    let conclusion = vec![
        format!("<{}> is essential on the base model", names.join(", ")),
        format!(
            "the projectivization with fiber CP^{k} satisfies the Leray-Hirsch law in every degree and {xi} restricts to a fiber generator"
        ),
        format!("<{}> is essential on the projectivization model", lifted.join(", ")),
        "the projectivization models the exceptional divisor, with the fiber class as the Euler class of the tautological normal line".into(),
        "collapsing onto the Thom space of the normal bundle carries the essential product to the blow-up".into(),
        "hence the blow-up carries an essential Massey triple product and is not formal".into(),
    ];
    let payload = CertificatePayload {
        route: route.name().into(),
        k,
        base_model: ModelFile::from_model(&base, &labels),
        chern: chern_text,
        triple: names
            .iter()
            .zip(&classes)
            .enumerate()
            .map(|(i, (l, c))| TripleEntry {
                label: l.clone(),
                degree: c.degree(),
                class: render_vector(&bp, c.representative()),
                restricted: route == Route::RestrictedClass && i == 2,
            })
            .collect(),
        base: record(&base, &base_verdict),
        fiber_generator: xi,
        exponents,
        blowup: record(e.model(), &verdict),
        conclusion,
    };
    let payload_sha256 = payload_digest(&payload);
    Ok(BlowupCertificate {
        format: CERTIFICATE_FORMAT.into(),
        engine_version: env!("CARGO_PKG_VERSION").into(),
        payload,
        payload_sha256,
    })
}

impl BlowupCertificate {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificates serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cert: BlowupCertificate =
            serde_json::from_str(text).map_err(|e| Error::CorruptCertificate(e.to_string()))?;
        if cert.format != CERTIFICATE_FORMAT {
            return Err(Error::CorruptCertificate(format!(
                "unknown certificate format {:?}",
                cert.format
            )));
        }
        Ok(cert)
    }
}

/// One re-checked condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    /// `None` when the condition holds.
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.failure.is_none())
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.failure.is_some())
    }
}

struct Checker {
    report: VerifyReport,
}

impl Checker {
    /// Records the outcome; `None` stops the run (later checks depend on it).
    fn run<T>(&mut self, name: &'static str, f: impl FnOnce() -> std::result::Result<T, String>) -> Option<T> {
        match f() {
            Ok(v) => {
                self.report.checks.push(Check { name, failure: None });
                Some(v)
            }
            Err(msg) => {
                self.report.checks.push(Check {
                    name,
                    failure: Some(msg),
                });
                None
            }
        }
    }
}

fn parse_in(model: &DgaModel, text: &str, degree: u32) -> std::result::Result<GradedVector, String> {
    parse_polynomial(model.presentation(), text, Some(degree)).map_err(|e| format!("{text:?}: {e}"))
}

fn class_in(model: &DgaModel, text: &str, degree: u32) -> std::result::Result<CohomologyClass, String> {
    model.class_of(&parse_in(model, text, degree)?).map_err(|e| format!("{text:?}: {e}"))
}

/// Re-checks a stored verdict: witness, representative, indeterminacy and
/// nonzero residue.
fn check_record(
    checker: &mut Checker,
    prefix: &'static [&'static str; 4],
    model: &DgaModel,
    classes: &[CohomologyClass],
    rec: &VerdictRecord,
) -> Option<()> {
    let degrees: Vec<u32> = classes.iter().map(|c| c.degree()).collect();
    let out_degree = degrees.iter().sum::<u32>() - 1;
    let ds = checker.run(prefix[0], || {
        let mut ds = DefiningSystem::new(3);
        for w in &rec.witness {
            if !(1 <= w.i && w.i < w.j && w.j <= 4 && (w.i, w.j) != (1, 4)) {
                return Err(format!("entry ({},{}) is out of range", w.i, w.j));
            }
            let deg = entry_degree(&degrees, w.i, w.j).map_err(|e| e.to_string())?;
            let v = parse_in(model, &w.value, deg)?;
            ds.set(w.i, w.j, v).map_err(|e| e.to_string())?;
        }
        let report = validate_defining_system(model, &ds, classes).map_err(|e| e.to_string())?;
        match report.issues.first() {
            None => Ok(ds),
            Some(issue) => Err(format!("entry {issue}")),
        }
    })?;
    let rep = checker.run(prefix[1], || {
        let rep = c_of(model, &ds).map_err(|e| e.to_string())?;
        let stored = class_in(model, &rec.representative, out_degree)?;
        if rep != stored {
            return Err(format!(
                "c(X) is {}, certificate states {}",
                render_vector(model.presentation(), rep.representative()),
                rec.representative
            ));
        }
        Ok(rep)
    })?;
    let ideal = checker.run(prefix[2], || {
        let ideal = model
            .ideal_slice(&[classes[0].clone(), classes[2].clone()], rep.degree() as i64)
            .map_err(|e| e.to_string())?;
        let stored = rec
            .indeterminacy
            .iter()
            .map(|t| class_in(model, t, out_degree))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let span = model.span_of_classes(rep.degree(), &stored).map_err(|e| e.to_string())?;
        let inside = stored
            .iter()
            .all(|c| model.member(c, &ideal).map(|m| m.is_member()).unwrap_or(false));
        if !inside || span.dim() != ideal.dim() {
            return Err(format!(
                "stored basis spans dimension {} but the ideal slice has dimension {}",
                span.dim(),
                ideal.dim()
            ));
        }
        Ok(ideal)
    })?;
    checker.run(prefix[3], || match model.member(&rep, &ideal).map_err(|e| e.to_string())? {
        Membership::Member { .. } => Err("representative lies in the indeterminacy".into()),
        Membership::NonMember { residue } => {
            let stored = parse_in(model, &rec.residue, out_degree)?;
            if stored != residue {
                return Err(format!(
                    "residue is {}, certificate states {}",
                    render_vector(model.presentation(), &residue),
                    rec.residue
                ));
            }
            Ok(())
        }
    })
}

/// Re-checks every condition of a certificate from its stored data alone.
pub fn verify_certificate(cert: &BlowupCertificate) -> VerifyReport {
    let mut checker = Checker {
        report: VerifyReport::default(),
    };
    let _ = verify_into(cert, &mut checker);
    checker.run("payload-digest", || {
        let digest = payload_digest(&cert.payload);
        if digest == cert.payload_sha256 {
            Ok(())
        } else {
            Err(format!("payload hashes to {digest}"))
        }
    });
    checker.report
}

fn verify_into(cert: &BlowupCertificate, checker: &mut Checker) -> Option<()> {
    let p = &cert.payload;
    let route = checker.run("route", || {
        let route = Route::parse(&p.route).ok_or_else(|| format!("unknown route {:?}", p.route))?;
        if p.k < route.min_k() {
            return Err(format!("route {route} needs k >= {}, certificate has k = {}", route.min_k(), p.k));
        }
        if p.exponents != route.exponents() {
            return Err(format!("exponents {:?} do not match route {route}", p.exponents));
        }
        if p.exponents.iter().sum::<u32>() > p.k {
            return Err("exponents sum above k".into());
        }
        Ok(route)
    })?;
    let base = checker.run("base-model", || {
        p.base_model.build().map(|m| m.model).map_err(|e| e.to_string())
    })?;
    let chern = checker.run("chern-data", || {
        let classes = p
            .chern
            .iter()
            .enumerate()
            .map(|(i, t)| parse_in(&base, t, 2 * (i as u32 + 1)))
            .collect::<std::result::Result<Vec<_>, String>>()?;
        ChernData::new(&base, p.k, classes).map_err(|e| e.to_string())
    })?;
    let classes = checker.run("base-triple", || {
        if p.triple.len() != 3 {
            return Err(format!("{} classes, expected 3", p.triple.len()));
        }
        for (i, t) in p.triple.iter().enumerate() {
            let want = route == Route::RestrictedClass && i == 2;
            if t.restricted != want {
                return Err(format!("class {} has the wrong restricted tag", t.label));
            }
        }
        let classes = p
            .triple
            .iter()
            .map(|t| class_in(&base, &t.class, t.degree))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if p.base.classes.len() != 3 {
            return Err("base verdict does not list three classes".into());
        }
        let stored = p
            .base
            .classes
            .iter()
            .zip(&p.triple)
            .map(|(t, e)| class_in(&base, t, e.degree))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if stored != classes {
            return Err("base verdict is for different classes".into());
        }
        Ok(classes)
    })?;
    check_record(
        checker,
        &["base-witness", "base-representative", "base-indeterminacy", "base-essential"],
        &base,
        &classes,
        &p.base,
    )?;
    let e = checker.run("projectivization", || {
        let e = projectivize(base.clone(), chern).map_err(|e| e.to_string())?;
        if e.xi_name() != p.fiber_generator {
            return Err(format!("fiber generator is {}, certificate states {}", e.xi_name(), p.fiber_generator));
        }
        if !e.fiber_generates().map_err(|e| e.to_string())? {
            return Err("fiber class does not generate the fiber cohomology".into());
        }
        Ok(e)
    })?;
    let lifted = checker.run("lifted-classes", || {
        let lifted = classes
            .iter()
            .zip(p.exponents)
            .map(|(c, x)| e.lift(c, x))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| e.to_string())?;
        if p.blowup.classes.len() != 3 {
            return Err("lifted verdict does not list three classes".into());
        }
        let stored = p
            .blowup
            .classes
            .iter()
            .zip(&lifted)
            .map(|(t, c)| class_in(e.model(), t, c.degree()))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if stored != lifted {
            return Err("stored classes differ from xi^e p*(class)".into());
        }
        Ok(lifted)
    })?;
    check_record(
        checker,
        &["witness", "representative", "indeterminacy", "essential"],
        e.model(),
        &lifted,
        &p.blowup,
    )
}
