use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::GradedVector;
use crate::dga::{CohomologyClass, DgaModel};
use crate::error::{Error, Result};

/// A family `x_ij`, `1 <= i < j <= n + 1`, `(i, j) != (1, n + 1)`, with
/// `[x_{i,i+1}]` the input classes and
/// `d x_ij = sum_{i<r<j} bar(x_ir) x_rj` for the longer entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningSystem {
    arity: usize,
    entries: BTreeMap<(usize, usize), GradedVector>,
}

impl DefiningSystem {
    pub fn new(arity: usize) -> Self {
        DefiningSystem {
            arity,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries(
        arity: usize,
        entries: impl IntoIterator<Item = ((usize, usize), GradedVector)>,
    ) -> Result<Self> {
        let mut ds = DefiningSystem::new(arity);
        for ((i, j), v) in entries {
            ds.set(i, j, v)?;
        }
        Ok(ds)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// All index pairs a complete system of this arity carries, shortest first.
    pub fn index_pairs(arity: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for len in 1..arity {
            for i in 1..=arity + 1 - len {
                let j = i + len;
                if (i, j) != (1, arity + 1) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn set(&mut self, i: usize, j: usize, v: GradedVector) -> Result<()> {
        if i == 0 || j <= i || j > self.arity + 1 || (i, j) == (1, self.arity + 1) {
            return Err(Error::Usage(format!(
                "entry ({i},{j}) is not part of an arity-{} defining system",
                self.arity
            )));
        }
        self.entries.insert((i, j), v);
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&GradedVector> {
        self.entries.get(&(i, j))
    }

    fn entry(&self, i: usize, j: usize) -> Result<&GradedVector> {
        self.get(i, j)
            .ok_or_else(|| Error::Usage(format!("defining system lacks entry ({i},{j})")))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &GradedVector)> {
        self.entries.iter()
    }

    /// Applies `f` to every entry.
    pub fn map(&self, mut f: impl FnMut(usize, usize, &GradedVector) -> Result<GradedVector>) -> Result<Self> {
        let mut out = DefiningSystem::new(self.arity);
        for (&(i, j), v) in &self.entries {
            out.entries.insert((i, j), f(i, j, v)?);
        }
        Ok(out)
    }
}

/// `sum_{i<r<j} bar(x_ir) x_rj`.
pub fn entry_target(
    model: &DgaModel,
    ds: &DefiningSystem,
    i: usize,
    j: usize,
) -> Result<GradedVector> {
    let p = model.presentation();
    let mut acc: Option<GradedVector> = None;
    for r in i + 1..j {
        let term = p.multiply(&ds.entry(i, r)?.bar(), ds.entry(r, j)?)?;
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term)?,
        });
    }
    acc.ok_or_else(|| Error::Usage(format!("entry ({i},{j}) has no inner terms")))
}

/// The cocycle `c(X) = sum_{r=2}^{n} bar(x_1r) x_{r,n+1}`.
pub fn c_cocycle(model: &DgaModel, ds: &DefiningSystem) -> Result<GradedVector> {
    let n = ds.arity;
    let p = model.presentation();
    let mut acc: Option<GradedVector> = None;
    for r in 2..=n {
        let term = p.multiply(&ds.entry(1, r)?.bar(), ds.entry(r, n + 1)?)?;
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term)?,
        });
    }
    acc.ok_or_else(|| Error::Usage("arity must be at least 2".into()))
}

/// The class `[c(X)]`; fails with `NotACocycle` when the system is invalid.
pub fn c_of(model: &DgaModel, ds: &DefiningSystem) -> Result<CohomologyClass> {
    let c = c_cocycle(model, ds)?;
    model.class_of(&c).map_err(|e| match e {
        Error::NotACocycle(_) => Error::NotACocycle("c(X) of an invalid defining system".into()),
        other => other,
    })
}

/// One violated condition of a defining system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Missing,
    WrongDegree { expected: u32, found: u32 },
    /// `x_{i,i+1}` has nonzero differential.
    NotACocycle,
    /// `x_{i,i+1}` is a cocycle of the wrong class.
    WrongClass,
    /// `d x_ij` differs from `sum bar(x_ir) x_rj`.
    DifferentialMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemIssue {
    pub i: usize,
    pub j: usize,
    pub violation: Violation,
}

impl fmt::Display for SystemIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match &self.violation {
            Violation::Missing => "missing entry".to_string(),
            Violation::WrongDegree { expected, found } => {
                format!("degree {found}, expected {expected}")
            }
            Violation::NotACocycle => "not a cocycle".to_string(),
            Violation::WrongClass => "represents the wrong class".to_string(),
            Violation::DifferentialMismatch => "d x_ij differs from the required sum".to_string(),
        };
        write!(f, "({},{}): {}", self.i, self.j, what)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SystemReport {
    pub issues: Vec<SystemIssue>,
}

impl SystemReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

/// Degree of `x_ij` for classes of the given degrees; an error when negative.
pub fn entry_degree(degrees: &[u32], i: usize, j: usize) -> Result<u32> {
    let sum: u32 = degrees[i - 1..j - 1].iter().sum();
    (sum + 1).checked_sub((j - i) as u32).ok_or_else(|| {
        Error::Usage(format!("entry ({i},{j}) would have negative degree"))
    })
}

/// Checks every defining-system condition for the given classes, listing each
/// violation with its index pair.
pub fn validate_defining_system(
    model: &DgaModel,
    ds: &DefiningSystem,
    classes: &[CohomologyClass],
) -> Result<SystemReport> {
    let n = ds.arity;
    if classes.len() != n {
        return Err(Error::Usage(format!(
            "{} classes for an arity-{n} defining system",
            classes.len()
        )));
    }
    let degrees: Vec<u32> = classes.iter().map(|c| c.degree()).collect();
    let mut report = SystemReport::default();
    let mut push = |i, j, violation| report.issues.push(SystemIssue { i, j, violation });
    let mut present = true;
    for (i, j) in DefiningSystem::index_pairs(n) {
        let expected = entry_degree(&degrees, i, j)?;
        match ds.get(i, j) {
            None => {
                push(i, j, Violation::Missing);
                present = false;
            }
            Some(v) if v.degree() != expected => {
                push(i, j, Violation::WrongDegree { expected, found: v.degree() });
                present = false;
            }
            Some(_) => {}
        }
    }
    if !present {
        return Ok(report);
    }
    for (i, j) in DefiningSystem::index_pairs(n) {
        let x = ds.entry(i, j)?;
        model.presentation().check(x)?;
        let dx = model.d(x)?;
        if j == i + 1 {
            if !dx.is_zero() {
                push(i, j, Violation::NotACocycle);
            } else if model.class_of(x)? != classes[i - 1] {
                push(i, j, Violation::WrongClass);
            }
        } else if dx != entry_target(model, ds, i, j)? {
            push(i, j, Violation::DifferentialMismatch);
        }
    }
    Ok(report)
}
