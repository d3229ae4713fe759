use std::sync::Arc;

use crate::algebra::{GeneratorDecl, GradedVector, HeightRelation, Presentation, TruncationBound};
use crate::dga::{CohomologyClass, DgaModel, DgaMorphism};
use crate::error::{Error, Result};
use crate::linalg::LinearSolver;
use crate::massey::{triple_massey, MasseyVerdict};
use crate::scalar::Scalar;

/// Characteristic data of a rank `k + 1` bundle: cocycles `c_1, ..., c_{k+1}`
/// of the base with `|c_i| = 2i`. The fiber of the projectivization is `CP^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernData {
    k: u32,
    classes: Vec<GradedVector>,
}

impl ChernData {
    /// The trivial bundle: every `c_i = 0`.
    pub fn zero(base: &DgaModel, k: u32) -> Self {
        let p = base.presentation();
        ChernData {
            k,
            classes: (1..=k + 1).map(|i| p.zero(2 * i)).collect(),
        }
    }

    /// Checks degrees and that every `c_i` is a cocycle of `base`.
    pub fn new(base: &DgaModel, k: u32, classes: Vec<GradedVector>) -> Result<Self> {
        if classes.len() != k as usize + 1 {
            return Err(Error::Usage(format!(
                "{} characteristic classes given, expected {}",
                classes.len(),
                k + 1
            )));
        }
        for (i, c) in classes.iter().enumerate() {
            base.presentation().check(c)?;
            let want = 2 * (i as u32 + 1);
            if c.is_zero() {
                continue;
            }
            if c.degree() != want {
                return Err(Error::DegreeMismatch {
                    expected: want,
                    found: c.degree(),
                });
            }
            if !base.is_cocycle(c)? {
                return Err(Error::NotACocycle(format!("c{} has nonzero differential", i + 1)));
            }
        }
        let classes = classes
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                if c.is_zero() {
                    base.presentation().zero(2 * (i as u32 + 1))
                } else {
                    c
                }
            })
            .collect();
        Ok(ChernData { k, classes })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn classes(&self) -> &[GradedVector] {
        &self.classes
    }

    pub fn is_zero(&self) -> bool {
        self.classes.iter().all(GradedVector::is_zero)
    }
}

/// One degree of the Leray-Hirsch dimension check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LerayHirschRow {
    pub degree: u32,
    pub total: usize,
    /// `sum_{i=0}^{k} dim H^{n-2i}(B)`.
    pub expected: usize,
}

/// The model `B[xi] / (xi^{k+1} + c_1 xi^k + ... + c_{k+1})` with `d xi = 0`,
/// truncated at `top(B) + 2k`.
#[derive(Clone, Debug)]
pub struct ProjectivizationModel {
    base: Arc<DgaModel>,
    chern: ChernData,
    model: Arc<DgaModel>,
    xi: usize,
    pullback: DgaMorphism,
    leray_hirsch: Vec<LerayHirschRow>,
}

fn fresh_name(p: &Presentation) -> String {
    let mut name = "xi".to_string();
    let mut i = 1;
    while p.generator_index(&name).is_some() {
        i += 1;
        name = format!("xi{i}");
    }
    name
}

/// Builds the projectivization model and checks the Leray-Hirsch law in every
/// degree. Fails with `EngineInvariant` if the law does not hold.
pub fn projectivize(base: Arc<DgaModel>, chern: ChernData) -> Result<ProjectivizationModel> {
    let bp = base.presentation().clone();
    let k = chern.k;
    if k == 0 {
        return Err(Error::Usage("fiber dimension k must be at least 1".into()));
    }
    for c in &chern.classes {
        bp.check(c)?;
    }
    let n = bp.generators().len();
    let mut generators = bp.generators().to_vec();
    let name = fresh_name(&bp);
    generators.push(GeneratorDecl::new(name, 2));
    let mut bounds = bp.bounds().to_vec();
    bounds.push(TruncationBound {
        prefix: n + 1,
        max_degree: bp.truncation() + 2 * k,
    });
    let mut relations: Vec<HeightRelation> = bp
        .relations()
        .iter()
        .map(|r| HeightRelation {
            generator: r.generator,
            height: r.height,
            rhs: r.rhs.iter().map(|(c, m)| (c.clone(), m.extended(n + 1))).collect(),
        })
        .collect();
    let mut rhs = Vec::new();
    for (i, c) in chern.classes.iter().enumerate() {
        let power = (k as usize - i) as u16;
        for (m, coeff) in c.terms() {
            rhs.push((-coeff, m.extended(n + 1).with_exponent(n, power)));
        }
    }
    relations.push(HeightRelation {
        generator: n,
        height: (k + 1) as u16,
        rhs,
    });
    let ep = Presentation::with_structure(bp.field(), generators, bounds, relations)?;
    let mut images: Vec<GradedVector> = base
        .differential_images()
        .iter()
        .map(|v| v.retarget(ep.id(), n + 1))
        .collect();
    images.push(ep.zero(3));
    let model = Arc::new(super::checked_model(ep.clone(), images)?);
    let pullback = DgaMorphism::new(
        base.clone(),
        model.clone(),
        (0..n).map(|i| ep.generator_vector(i)).collect(),
    )?;
    let mut leray_hirsch = Vec::new();
    for deg in 0..=model.truncation() {
        let total = model.cohomology_dim(deg)?;
        let expected = (0..=k)
            .filter_map(|i| deg.checked_sub(2 * i))
            .filter(|&d| d <= base.truncation())
            .map(|d| base.cohomology_dim(d))
            .sum::<Result<usize>>()?;
        leray_hirsch.push(LerayHirschRow {
            degree: deg,
            total,
            expected,
        });
    }
    if let Some(row) = leray_hirsch.iter().find(|r| r.total != r.expected) {
        return Err(Error::EngineInvariant(format!(
            "Leray-Hirsch fails in degree {}: dim {} but expected {}",
            row.degree, row.total, row.expected
        )));
    }
    Ok(ProjectivizationModel {
        base,
        chern,
        model,
        xi: n,
        pullback,
        leray_hirsch,
    })
}

/// Outcome of comparing ideal membership in the total space with the base.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdealLift {
    /// `xi^n p*(x)` lies in the ideal of the `p*(a_i)`.
    pub upstairs: bool,
    /// `x` lies in the ideal of the `a_i`.
    pub downstairs: bool,
}

impl ProjectivizationModel {
    pub fn base(&self) -> &Arc<DgaModel> {
        &self.base
    }

    pub fn model(&self) -> &Arc<DgaModel> {
        &self.model
    }

    pub fn chern(&self) -> &ChernData {
        &self.chern
    }

    pub fn k(&self) -> u32 {
        self.chern.k
    }

    pub fn xi_name(&self) -> &str {
        &self.model.presentation().generators()[self.xi].name
    }

    pub fn pullback(&self) -> &DgaMorphism {
        &self.pullback
    }

    pub fn leray_hirsch(&self) -> &[LerayHirschRow] {
        &self.leray_hirsch
    }

    pub fn xi_class(&self) -> Result<CohomologyClass> {
        self.model.class_of(&self.model.presentation().generator_vector(self.xi))
    }

    /// `xi^e`.
    pub fn xi_power(&self, e: u32) -> Result<CohomologyClass> {
        let xi = self.xi_class()?;
        let mut acc = self.model.unit_class();
        for _ in 0..e {
            acc = self.model.cup(&acc, &xi)?;
        }
        Ok(acc)
    }

    pub fn pull_back(&self, c: &CohomologyClass) -> Result<CohomologyClass> {
        self.pullback.apply_class(c)
    }

    /// `xi^e p*(c)`.
    pub fn lift(&self, c: &CohomologyClass, e: u32) -> Result<CohomologyClass> {
        self.model.cup(&self.xi_power(e)?, &self.pull_back(c)?)
    }

    /// The fiber inclusion on models: base generators to zero, `xi` to the
    /// generator of `Q[x]/(x^{k+1})`.
    pub fn fiber_restriction(&self) -> Result<DgaMorphism> {
        let ep = self.model.presentation();
        let k = self.k();
        let fp = Presentation::new(ep.field(), vec![GeneratorDecl::new(self.xi_name(), 2)], 2 * k)?;
        let fiber = Arc::new(DgaModel::formal(fp.clone()));
        let images = ep
            .generators()
            .iter()
            .enumerate()
            .map(|(i, g)| {
                if i == self.xi {
                    fp.generator_vector(0)
                } else {
                    fp.zero(g.degree)
                }
            })
            .collect();
        DgaMorphism::new(self.model.clone(), fiber, images)
    }

    /// Whether `xi` restricts to a generator of the fiber cohomology: its
    /// powers `1, ..., xi^k` span `H(CP^k)`.
    pub fn fiber_generates(&self) -> Result<bool> {
        let f = self.fiber_restriction()?;
        let fiber = f.target();
        let x = f.apply_class(&self.xi_class()?)?;
        let mut power = fiber.unit_class();
        for i in 0..=self.k() {
            if i > 0 {
                power = fiber.cup(&power, &x)?;
            }
            if power.is_zero() || fiber.cohomology_dim(2 * i)? != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Components `a_0, ..., a_k` with `a = sum xi^i p*(a_i)`.
    pub fn decompose(&self, a: &CohomologyClass) -> Result<Vec<CohomologyClass>> {
        let n = a.degree();
        let field = self.model.presentation().field();
        let mut columns: Vec<Vec<Scalar>> = Vec::new();
        let mut blocks: Vec<(u32, usize)> = Vec::new();
        for i in 0..=self.k() {
            let Some(d) = n.checked_sub(2 * i) else {
                blocks.push((0, 0));
                continue;
            };
            if d > self.base.truncation() {
                blocks.push((d, 0));
                continue;
            }
            let basis = self.base.cohomology_basis(d as i64)?;
            blocks.push((d, basis.len()));
            for b in &basis {
                columns.push(self.model.class_coordinates(&self.lift(b, i)?)?);
            }
        }
        let target = self.model.class_coordinates(a)?;
        let rows = target.len();
        let matrix: Vec<Vec<Scalar>> = (0..rows)
            .map(|r| columns.iter().map(|c| c[r].clone()).collect())
            .collect();
        let solver = LinearSolver::new(matrix, rows, columns.len(), field);
        let x = solver.solve(&target).ok_or_else(|| {
            Error::EngineInvariant("class is not in the span of xi^i p*(H(B))".into())
        })?;
        let mut out = Vec::new();
        let mut offset = 0;
        for (d, len) in blocks {
            if len == 0 {
                out.push(self.base.zero_class(d));
            } else {
                out.push(self.base.class_from_coordinates(d, &x[offset..offset + len])?);
            }
            offset += len;
        }
        Ok(out)
    }

    /// `sum xi^i p*(a_i)`.
    pub fn reassemble(&self, components: &[CohomologyClass], degree: u32) -> Result<CohomologyClass> {
        if components.len() != self.k() as usize + 1 {
            return Err(Error::Usage(format!(
                "{} components, expected {}",
                components.len(),
                self.k() + 1
            )));
        }
        let mut acc = self.model.zero_class(degree);
        for (i, c) in components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.degree() + 2 * i as u32 != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree - 2 * i as u32,
                    found: c.degree(),
                });
            }
            acc = self.model.add_classes(&acc, &self.lift(c, i as u32)?)?;
        }
        Ok(acc)
    }

    /// Membership of `xi^n p*(x)` in `(p*a_1, ..., p*a_m)`, compared with
    /// membership of `x` in `(a_1, ..., a_m)`. Membership upstairs must imply
    /// membership downstairs; a violation is an engine error.
    pub fn lift_ideal_check(
        &self,
        x: &CohomologyClass,
        gens: &[CohomologyClass],
        n: u32,
    ) -> Result<IdealLift> {
        if n > self.k() {
            return Err(Error::ExponentTooLarge { n, k: self.k() });
        }
        let lifted = self.lift(x, n)?;
        let up_gens = gens.iter().map(|a| self.pull_back(a)).collect::<Result<Vec<_>>>()?;
        let up_ideal = self.model.ideal_slice(&up_gens, lifted.degree() as i64)?;
        let upstairs = self.model.member(&lifted, &up_ideal)?.is_member();
        let down_ideal = self.base.ideal_slice(gens, x.degree() as i64)?;
        let downstairs = self.base.member(x, &down_ideal)?.is_member();
        if upstairs && !downstairs {
            return Err(Error::EngineInvariant(
                "ideal membership lifted to the total space but fails on the base".into(),
            ));
        }
        Ok(IdealLift {
            upstairs,
            downstairs,
        })
    }

    /// `<xi^l p*a, xi^m p*b, xi^n p*c>` for an essential base triple
    /// `<a, b, c>` and `l + m + n <= k`; the result must be essential.
    pub fn transferred_massey(
        &self,
        a: &CohomologyClass,
        b: &CohomologyClass,
        c: &CohomologyClass,
        exponents: [u32; 3],
    ) -> Result<(MasseyVerdict, MasseyVerdict)> {
        let total: u32 = exponents.iter().sum();
        if total > self.k() {
            return Err(Error::HypothesisFailure(format!(
                "exponents sum to {total}, above k = {}",
                self.k()
            )));
        }
        let base_verdict = triple_massey(&self.base, a, b, c)?;
        if !base_verdict.is_essential() {
            return Err(Error::HypothesisFailure(format!(
                "the base triple product is {} ({}), not essential",
                base_verdict.status, base_verdict.essential
            )));
        }
        let [l, m, n] = exponents;
        let verdict = triple_massey(&self.model, &self.lift(a, l)?, &self.lift(b, m)?, &self.lift(c, n)?)?;
        if !verdict.is_essential() {
            return Err(Error::EngineInvariant(format!(
                "transferred triple product is {} although the base triple is essential",
                verdict.essential
            )));
        }
        Ok((base_verdict, verdict))
    }
}
