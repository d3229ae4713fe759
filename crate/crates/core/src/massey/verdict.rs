use std::fmt;

use super::defining::{
    c_of, entry_degree, entry_target, validate_defining_system, DefiningSystem,
};
use super::exhaustive::{budget_from_env, massey_nfold_exhaustive};
use crate::algebra::GradedVector;
use crate::dga::{CohomologyClass, DgaModel, DgaMorphism, SubspaceBasis};
use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MasseyStatus {
    Empty,
    NonEmpty,
    /// No defining system was found, but none was ruled out either.
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Essentiality {
    Essential,
    Inessential,
    Unknown,
}

impl fmt::Display for MasseyStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MasseyStatus::Empty => "Empty",
            MasseyStatus::NonEmpty => "NonEmpty",
            MasseyStatus::Unknown => "Unknown",
        })
    }
}

impl fmt::Display for Essentiality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Essentiality::Essential => "Essential",
            Essentiality::Inessential => "Inessential",
            Essentiality::Unknown => "Unknown",
        })
    }
}

/// Where a defining-system construction got stuck.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub i: usize,
    pub j: usize,
    /// Reduced class of the required `d x_ij` (nonzero).
    pub class: GradedVector,
}

/// Outcome of a Massey product computation.
#[derive(Clone, Debug)]
pub struct MasseyVerdict {
    pub arity: usize,
    pub classes: Vec<CohomologyClass>,
    pub status: MasseyStatus,
    pub representative: Option<CohomologyClass>,
    /// Exact for arity 3; for larger arity only a subspace known to lie in the
    /// indeterminacy (see `indeterminacy_complete`).
    pub indeterminacy: Option<SubspaceBasis>,
    pub indeterminacy_complete: bool,
    pub essential: Essentiality,
    /// Nonzero residue of the representative modulo the indeterminacy, when
    /// it is outside.
    pub residue: Option<GradedVector>,
    pub witnesses: Vec<DefiningSystem>,
    pub obstruction: Option<Obstruction>,
    /// Whether the essentiality verdict came from exhaustive enumeration.
    pub exhaustive: bool,
}

impl MasseyVerdict {
    fn empty(classes: &[CohomologyClass], obstruction: Option<Obstruction>, status: MasseyStatus) -> Self {
        MasseyVerdict {
            arity: classes.len(),
            classes: classes.to_vec(),
            status,
            representative: None,
            indeterminacy: None,
            indeterminacy_complete: false,
            essential: if status == MasseyStatus::Empty {
                Essentiality::Inessential
            } else {
                Essentiality::Unknown
            },
            residue: None,
            witnesses: Vec::new(),
            obstruction,
            exhaustive: false,
        }
    }

    pub fn is_essential(&self) -> bool {
        self.essential == Essentiality::Essential
    }
}

fn output_degree(model: &DgaModel, classes: &[CohomologyClass]) -> Result<u32> {
    let sum: i64 = classes.iter().map(|c| c.degree() as i64).sum();
    let deg = sum + 2 - classes.len() as i64;
    model.check_degree(deg)
}

fn check_classes(model: &DgaModel, classes: &[CohomologyClass]) -> Result<()> {
    for c in classes {
        model.presentation().check(c.representative())?;
        if !model.is_cocycle(c.representative())? {
            return Err(Error::NotACocycle("input class representative".into()));
        }
    }
    Ok(())
}

/// `<a, b, c>`: empty unless `ab = 0 = bc`; otherwise the coset
/// `[bar(a) y + bar(x) c] + (a, c)` with canonical primitives
/// `d x = bar(a) b`, `d y = bar(b) c`.
pub fn triple_massey(
    model: &DgaModel,
    a: &CohomologyClass,
    b: &CohomologyClass,
    c: &CohomologyClass,
) -> Result<MasseyVerdict> {
    let classes = [a.clone(), b.clone(), c.clone()];
    check_classes(model, &classes)?;
    output_degree(model, &classes)?;
    match greedy_system(model, &classes)? {
        Greedy::Built(ds) => finish(model, &classes, ds, false),
        Greedy::Stuck(obstruction) => Ok(MasseyVerdict::empty(
            &classes,
            Some(obstruction),
            MasseyStatus::Empty,
        )),
    }
}

enum Greedy {
    Built(DefiningSystem),
    Stuck(Obstruction),
}

/// Builds `x_ij` in order of increasing `j - i`, each from the canonical
/// primitive with every free parameter at zero.
fn greedy_system(model: &DgaModel, classes: &[CohomologyClass]) -> Result<Greedy> {
    let n = classes.len();
    let degrees: Vec<u32> = classes.iter().map(|c| c.degree()).collect();
    let mut ds = DefiningSystem::new(n);
    for (i, j) in DefiningSystem::index_pairs(n) {
        entry_degree(&degrees, i, j)?;
        if j == i + 1 {
            ds.set(i, j, classes[i - 1].representative().clone())?;
            continue;
        }
        let target = entry_target(model, &ds, i, j)?;
        match model.solve_primitive(&target) {
            Ok(x) => ds.set(i, j, x.solution)?,
            Err(Error::NotABoundary { obstruction }) => {
                return Ok(Greedy::Stuck(Obstruction {
                    i,
                    j,
                    class: *obstruction,
                }))
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Greedy::Built(ds))
}

/// Completes a verdict from a valid witness system.
fn finish(
    model: &DgaModel,
    classes: &[CohomologyClass],
    ds: DefiningSystem,
    try_exhaustive: bool,
) -> Result<MasseyVerdict> {
    let n = classes.len();
    let report = validate_defining_system(model, &ds, classes)?;
    if !report.is_valid() {
        return Err(Error::EngineInvariant(format!(
            "constructed defining system is invalid: {}",
            report.issues[0]
        )));
    }
    let rep = c_of(model, &ds)?;
    let degree = rep.degree();
    // (a_1, a_n) always lies in the indeterminacy: x_{1n} and x_{2,n+1} only
    // enter c(X), so they can be shifted by any cocycle.
    let indeterminacy =
        model.ideal_slice(&[classes[0].clone(), classes[n - 1].clone()], degree as i64)?;
    let membership = model.member(&rep, &indeterminacy)?;
    let (mut essential, residue) = match membership {
        crate::dga::Membership::Member { .. } => (Essentiality::Inessential, None),
        crate::dga::Membership::NonMember { residue } => {
            if n == 3 {
                (Essentiality::Essential, Some(residue))
            } else {
                (Essentiality::Unknown, Some(residue))
            }
        }
    };
    let mut exhaustive = false;
    if n > 3 && essential == Essentiality::Unknown && try_exhaustive {
        if let Some(verdict) = exhaustive_essentiality(model, classes)? {
            essential = verdict;
            exhaustive = true;
        }
    }
    Ok(MasseyVerdict {
        arity: n,
        classes: classes.to_vec(),
        status: MasseyStatus::NonEmpty,
        representative: Some(rep),
        indeterminacy: Some(indeterminacy),
        indeterminacy_complete: n == 3,
        essential,
        residue,
        witnesses: vec![ds],
        obstruction: None,
        exhaustive,
    })
}

/// Exact essentiality over a prime field when the enumeration fits the budget.
fn exhaustive_essentiality(
    model: &DgaModel,
    classes: &[CohomologyClass],
) -> Result<Option<Essentiality>> {
    if let Field::Rational = model.presentation().field() {
        return Ok(None);
    }
    match massey_nfold_exhaustive(model, classes, Some(budget_from_env())) {
        Ok(set) => Ok(Some(set.essentiality())),
        Err(Error::BudgetExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Greedy n-fold product. A failure at `j - i = 2` proves emptiness; a later
/// failure only shows the canonical choices do not extend. Over a prime field
/// the exhaustive engine settles arity above 3 when it fits the budget.
pub fn massey_nfold_witness(model: &DgaModel, classes: &[CohomologyClass]) -> Result<MasseyVerdict> {
    let n = classes.len();
    if n < 3 {
        return Err(Error::Usage(format!("arity {n} is below 3")));
    }
    check_classes(model, classes)?;
    output_degree(model, classes)?;
    // Any defining system restricts to one for each consecutive triple, so an
    // essential or empty sub-triple rules the whole product out.
    if n > 3 {
        for i in 0..n - 2 {
            let t = triple_massey(model, &classes[i], &classes[i + 1], &classes[i + 2])?;
            let blocked = match (&t.obstruction, &t.residue) {
                (Some(ob), _) => Some(Obstruction {
                    i: ob.i + i,
                    j: ob.j + i,
                    class: ob.class.clone(),
                }),
                (None, Some(residue)) if t.is_essential() => Some(Obstruction {
                    i: i + 1,
                    j: i + 4,
                    class: residue.clone(),
                }),
                _ => None,
            };
            if let Some(ob) = blocked {
                return Ok(MasseyVerdict::empty(classes, Some(ob), MasseyStatus::Empty));
            }
        }
    }
    match greedy_system(model, classes)? {
        Greedy::Built(ds) => finish(model, classes, ds, true),
        Greedy::Stuck(ob) if ob.j - ob.i == 2 => {
            Ok(MasseyVerdict::empty(classes, Some(ob), MasseyStatus::Empty))
        }
        Greedy::Stuck(ob) => {
            let mut verdict = MasseyVerdict::empty(classes, Some(ob), MasseyStatus::Unknown);
            if model.presentation().field() != Field::Rational {
                match massey_nfold_exhaustive(model, classes, Some(budget_from_env())) {
                    Ok(set) => {
                        verdict.exhaustive = true;
                        verdict.essential = set.essentiality();
                        if set.is_empty() {
                            verdict.status = MasseyStatus::Empty;
                        } else {
                            verdict.status = MasseyStatus::NonEmpty;
                            verdict.representative = set.values().first().cloned();
                            if let Some(w) = set.witness() {
                                verdict.witnesses.push(w.clone());
                            }
                        }
                    }
                    Err(Error::BudgetExceeded { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
            Ok(verdict)
        }
    }
}

/// Pushes a witnessed verdict along `f`: applies `f` to every entry of the
/// witness, checks the image is a defining system for the image classes, and
/// recomputes the verdict downstream.
pub fn pushforward_massey(f: &DgaMorphism, verdict: &MasseyVerdict) -> Result<MasseyVerdict> {
    let Some(ds) = verdict.witnesses.first() else {
        return Err(Error::Usage("verdict carries no witness defining system".into()));
    };
    let target = f.target();
    let classes = verdict
        .classes
        .iter()
        .map(|c| f.apply_class(c))
        .collect::<Result<Vec<_>>>()?;
    let image = ds.map(|_, _, v| f.apply(v))?;
    finish(target, &classes, image, verdict.arity > 3)
}
