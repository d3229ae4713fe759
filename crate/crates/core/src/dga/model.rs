use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::algebra::{GradedVector, Monomial, Presentation};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, LinearSolver, Row};

/// A finite-dimensional commutative DGA: a presentation plus the image of each
/// generator under the differential, extended by the Leibniz rule.
#[derive(Debug)]
pub struct DgaModel {
    presentation: Arc<Presentation>,
    differential: Vec<GradedVector>,
    columns: Vec<OnceLock<Arc<Vec<Row>>>>,
    slices: Vec<OnceLock<Arc<Slice>>>,
}

/// Write-once linear algebra for one degree `n`.
#[derive(Debug)]
pub(crate) struct Slice {
    /// Solves `d x = c` with `x` in degree `n - 1` and `c` in degree `n`.
    pub solver: LinearSolver,
    /// Coboundaries in degree `n`.
    pub coboundaries: Echelon,
    /// Cocycle basis in degree `n` (kernel vectors, not reduced).
    pub cocycles: Vec<Row>,
    /// Canonical cohomology representatives, reduced against `coboundaries`, in RREF.
    pub cohomology: Echelon,
}

/// Per-monomial diagnostics for a presented differential.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// Generators whose image does not have degree one higher.
    pub degree_violations: Vec<String>,
    /// Basis monomials with `d(d(m)) != 0`, in canonical order.
    pub d_squared_failures: Vec<Monomial>,
    /// Generators whose height relation is not preserved by `d`.
    pub relation_failures: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.degree_violations.is_empty()
            && self.d_squared_failures.is_empty()
            && self.relation_failures.is_empty()
    }
}

/// Leibniz expansion of `d(m)` as a list of homogeneous pieces.
///
/// Works for images of any degree, so that malformed differentials can still be
/// diagnosed.
fn leibniz_terms(
    p: &Presentation,
    images: &[GradedVector],
    m: &Monomial,
) -> Result<Vec<GradedVector>> {
    let n = p.generators().len();
    let mut out = Vec::new();
    let mut prefix_degree = 0u32;
    for (i, g) in p.generators().iter().enumerate() {
        let e = m.exponent(i);
        if e == 0 {
            continue;
        }
        let mut prefix = m.exponents().to_vec();
        let mut suffix = vec![0u16; n];
        for (j, slot) in prefix.iter_mut().enumerate() {
            if j > i {
                suffix[j] = *slot;
                *slot = 0;
            }
        }
        // prefix * g^(e-1), then d(g), then the rest
        prefix[i] = e - 1;
        let left = p.monomial_vector(
            Monomial::from_exponents(prefix),
            p.field().from_i64(e as i64),
        );
        let right = p.monomial_vector(Monomial::from_exponents(suffix), p.field().one());
        let before = prefix_degree; // degree of the generators strictly before i
        let mut term = p.multiply(&p.multiply(&left, &images[i])?, &right)?;
        if before % 2 == 1 {
            term = term.neg();
        }
        out.push(term);
        prefix_degree += e as u32 * g.degree;
    }
    Ok(out)
}

fn apply_raw(
    p: &Presentation,
    images: &[GradedVector],
    pieces: &BTreeMap<u32, GradedVector>,
) -> Result<BTreeMap<u32, GradedVector>> {
    let mut out: BTreeMap<u32, GradedVector> = BTreeMap::new();
    for v in pieces.values() {
        for (m, c) in v.terms() {
            for t in leibniz_terms(p, images, m)? {
                let t = t.scale(c);
                match out.get_mut(&t.degree()) {
                    Some(acc) => *acc = acc.add(&t)?,
                    None => {
                        out.insert(t.degree(), t);
                    }
                }
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Checks degrees, `d^2 = 0` on every basis monomial, and compatibility with
/// height relations, without requiring the differential to be well formed.
pub fn validate_differential(
    p: &Presentation,
    images: &[GradedVector],
) -> Result<ValidationReport> {
    if images.len() != p.generators().len() {
        return Err(Error::InvalidPresentation(format!(
            "{} differential images for {} generators",
            images.len(),
            p.generators().len()
        )));
    }
    let mut report = ValidationReport::default();
    for (g, img) in p.generators().iter().zip(images) {
        p.check(img)?;
        if img.degree() != g.degree + 1 && !img.is_zero() {
            report.degree_violations.push(g.name.clone());
        }
    }
    for n in 0..=p.truncation() {
        for m in p.basis_of_degree(n)? {
            let mut start = BTreeMap::new();
            start.insert(n, p.monomial_vector(m.clone(), p.field().one()));
            let d1 = apply_raw(p, images, &start)?;
            let d2 = apply_raw(p, images, &d1)?;
            if !d2.is_empty() {
                report.d_squared_failures.push(m);
            }
        }
    }
    for rel in p.relations() {
        let g = rel.generator;
        let mut power = Monomial::unit(p.generators().len());
        power = power.with_exponent(g, rel.height);
        let lhs: Vec<_> = leibniz_terms(p, images, &power)?;
        let mut rhs_terms = BTreeMap::new();
        for (c, m) in &rel.rhs {
            for t in leibniz_terms(p, images, m)? {
                let t = t.scale(c);
                match rhs_terms.get_mut(&t.degree()) {
                    Some(acc) => *acc = GradedVector::add(acc, &t)?,
                    None => {
                        rhs_terms.insert(t.degree(), t);
                    }
                }
            }
        }
        let mut lhs_terms: BTreeMap<u32, GradedVector> = BTreeMap::new();
        for t in lhs {
            match lhs_terms.get_mut(&t.degree()) {
                Some(acc) => *acc = acc.add(&t)?,
                None => {
                    lhs_terms.insert(t.degree(), t);
                }
            }
        }
        lhs_terms.retain(|_, v| !v.is_zero());
        rhs_terms.retain(|_, v| !v.is_zero());
        if lhs_terms != rhs_terms {
            report
                .relation_failures
                .push(p.generators()[g].name.clone());
        }
    }
    Ok(report)
}

impl DgaModel {
    /// Assembles a model. Each image must live in the same presentation and have
    /// degree one above its generator; `d^2 = 0` is not checked here (see
    /// [`DgaModel::validate`]).
    pub fn new(presentation: Arc<Presentation>, differential: Vec<GradedVector>) -> Result<Self> {
        if differential.len() != presentation.generators().len() {
            return Err(Error::InvalidPresentation(format!(
                "{} differential images for {} generators",
                differential.len(),
                presentation.generators().len()
            )));
        }
        for (g, img) in presentation.generators().iter().zip(&differential) {
            presentation.check(img)?;
            if img.degree() != g.degree + 1 {
                return Err(Error::InvalidDifferential {
                    generator: g.name.clone(),
                    reason: format!("image has degree {}, expected {}", img.degree(), g.degree + 1),
                });
            }
        }
        let top = presentation.truncation() as usize;
        Ok(DgaModel {
            presentation,
            differential,
            columns: (0..=top).map(|_| OnceLock::new()).collect(),
            slices: (0..=top).map(|_| OnceLock::new()).collect(),
        })
    }

    /// Zero differential.
    pub fn formal(presentation: Arc<Presentation>) -> Self {
        let differential = presentation
            .generators()
            .iter()
            .map(|g| presentation.zero(g.degree + 1))
            .collect();
        Self::new(presentation, differential).expect("zero differential is well formed")
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.presentation
    }

    pub fn differential_images(&self) -> &[GradedVector] {
        &self.differential
    }

    pub fn truncation(&self) -> u32 {
        self.presentation.truncation()
    }

    pub fn validate(&self) -> Result<ValidationReport> {
        validate_differential(&self.presentation, &self.differential)
    }

    pub fn check_degree(&self, n: i64) -> Result<u32> {
        if n < 0 || n > self.truncation() as i64 {
            return Err(Error::DegreeOutOfRange {
                degree: n,
                max: self.truncation(),
            });
        }
        Ok(n as u32)
    }

    /// The differential of a homogeneous vector.
    pub fn d(&self, v: &GradedVector) -> Result<GradedVector> {
        self.presentation.check(v)?;
        let mut out = self.presentation.zero(v.degree() + 1);
        for (m, c) in v.terms() {
            for t in leibniz_terms(&self.presentation, &self.differential, m)? {
                out = out.add(&t.scale(c))?;
            }
        }
        Ok(out)
    }

    /// First pair of basis monomials `(a, b)` with
    /// `d(ab) != d(a) b + (-1)^|a| a d(b)`, checking every pair when there are
    /// at most `max_pairs` of them and otherwise only pairs whose first factor
    /// is a generator. The flag reports whether every pair was covered.
    pub fn leibniz_violation(&self, max_pairs: usize) -> Result<(Option<(Monomial, Monomial)>, bool)> {
        let p = &self.presentation;
        let top = self.truncation();
        let bases: Vec<Vec<Monomial>> = (0..=top).map(|n| p.basis_of_degree(n)).collect::<Result<_>>()?;
        let mut pairs = 0usize;
        for a in 0..=top {
            for b in 0..=top - a {
                pairs = pairs.saturating_add(bases[a as usize].len() * bases[b as usize].len());
            }
        }
        let complete = pairs <= max_pairs;
        for a_deg in 0..=top {
            for a in &bases[a_deg as usize] {
                if !complete && a.exponents().iter().map(|&e| e as u32).sum::<u32>() != 1 {
                    continue;
                }
                let av = p.monomial_vector(a.clone(), p.field().one());
                let da = self.d(&av)?;
                for b_deg in 0..=top - a_deg {
                    for b in &bases[b_deg as usize] {
                        let bv = p.monomial_vector(b.clone(), p.field().one());
                        let lhs = self.d(&p.multiply(&av, &bv)?)?;
                        let mut rhs = p.multiply(&av, &self.d(&bv)?)?;
                        if a_deg % 2 == 1 {
                            rhs = rhs.neg();
                        }
                        let rhs = rhs.add(&p.multiply(&da, &bv)?)?;
                        if lhs != rhs {
                            return Ok((Some((a.clone(), b.clone())), complete));
                        }
                    }
                }
            }
        }
        Ok((None, complete))
    }

    pub fn is_cocycle(&self, v: &GradedVector) -> Result<bool> {
        Ok(self.d(v)?.is_zero())
    }

    pub fn dimension(&self, n: u32) -> Result<usize> {
        self.presentation.dimension(n)
    }

    /// Dense coordinates on the canonical monomial basis.
    pub fn to_dense(&self, v: &GradedVector) -> Result<Row> {
        self.presentation.check(v)?;
        let field = self.presentation.field();
        if v.degree() > self.truncation() {
            return Ok(Vec::new());
        }
        let basis = self.presentation.degree_basis(v.degree())?;
        let mut row = vec![field.zero(); basis.monomials.len()];
        for (m, c) in v.terms() {
            row[basis.index[m]] = c.clone();
        }
        Ok(row)
    }

    pub fn from_dense(&self, degree: u32, row: &[crate::scalar::Scalar]) -> Result<GradedVector> {
        let p = &self.presentation;
        if degree > self.truncation() {
            return Ok(p.zero(degree));
        }
        let basis = p.degree_basis(degree)?;
        let terms = basis
            .monomials
            .iter()
            .zip(row)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (c.clone(), m.clone()));
        p.vector_from_terms(degree, terms)
    }

    /// `d` on each basis monomial of degree `n`, as dense rows in degree `n + 1`.
    pub(crate) fn columns(&self, n: u32) -> Result<Arc<Vec<Row>>> {
        let slot = self.columns.get(n as usize).ok_or(Error::DegreeOutOfRange {
            degree: n as i64,
            max: self.truncation(),
        })?;
        if let Some(c) = slot.get() {
            return Ok(c.clone());
        }
        let basis = self.presentation.basis_of_degree(n)?;
        let mut cols = Vec::with_capacity(basis.len());
        for m in basis {
            let v = self
                .presentation
                .monomial_vector(m, self.presentation.field().one());
            cols.push(self.to_dense(&self.d(&v)?)?);
        }
        Ok(slot.get_or_init(|| Arc::new(cols)).clone())
    }

    pub(crate) fn slice(&self, n: u32) -> Result<Arc<Slice>> {
        let slot = self.slices.get(n as usize).ok_or(Error::DegreeOutOfRange {
            degree: n as i64,
            max: self.truncation(),
        })?;
        if let Some(s) = slot.get() {
            return Ok(s.clone());
        }
        let field = self.presentation.field();
        let dim = self.dimension(n)?;
        // d_{n-1} as a dim(n) x dim(n-1) matrix
        let incoming: Vec<Row> = if n == 0 {
            Vec::new()
        } else {
            self.columns(n - 1)?.as_ref().clone()
        };
        let prev_dim = incoming.len();
        let matrix: Vec<Row> = (0..dim)
            .map(|r| incoming.iter().map(|col| col[r].clone()).collect())
            .collect();
        let solver = LinearSolver::new(matrix, dim, prev_dim, field);
        let coboundaries = Echelon::from_rows(incoming, dim, field);
        let outgoing = self.columns(n)?;
        let next_dim = outgoing.first().map_or(0, |c| c.len());
        let d_rows: Vec<Row> = (0..next_dim)
            .map(|r| outgoing.iter().map(|col| col[r].clone()).collect())
            .collect();
        let cocycles = crate::linalg::kernel(&d_rows, dim, field);
        let residues: Vec<Row> = cocycles
            .iter()
            .map(|z| coboundaries.reduce(z).residue)
            .collect();
        let cohomology = Echelon::from_rows(residues, dim, field);
        let slice = Slice {
            solver,
            coboundaries,
            cocycles,
            cohomology,
        };
        Ok(slot.get_or_init(|| Arc::new(slice)).clone())
    }
}
