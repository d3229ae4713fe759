use super::model::DgaModel;
use crate::algebra::{GradedVector, PresentationId};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Row};
use crate::scalar::Scalar;

/// A cohomology class, held by its canonical representative: a cocycle reduced
/// against the echelon basis of coboundaries. Equal classes have identical
/// representatives.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohomologyClass {
    degree: u32,
    representative: GradedVector,
}

impl CohomologyClass {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn representative(&self) -> &GradedVector {
        &self.representative
    }

    pub fn is_zero(&self) -> bool {
        self.representative.is_zero()
    }

    pub fn presentation(&self) -> PresentationId {
        self.representative.presentation()
    }
}

/// Echelon basis of a subspace of one degree, used for ideal slices and
/// indeterminacies. Vectors are reduced representatives, so the span lives in
/// cohomology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    degree: u32,
    vectors: Vec<GradedVector>,
    echelon: Echelon,
}

impl SubspaceBasis {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn vectors(&self) -> &[GradedVector] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

/// A primitive `x` with `d x = c`.
#[derive(Clone, Debug)]
pub struct Primitive {
    pub solution: GradedVector,
    /// Dimension of the space of all primitives (cocycles one degree down).
    pub solution_space_dim: usize,
}

/// Result of an ideal membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Coefficients on the subspace basis vectors.
    Member { coefficients: Vec<Scalar> },
    /// Nonzero residue left after reduction.
    NonMember { residue: GradedVector },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
}

impl DgaModel {
    fn check_class(&self, c: &CohomologyClass) -> Result<()> {
        self.presentation().check(&c.representative)
    }

    /// Reduces a cocycle to the canonical representative of its class.
    pub fn class_of(&self, v: &GradedVector) -> Result<CohomologyClass> {
        self.presentation().check(v)?;
        if v.degree() > self.truncation() {
            return Ok(CohomologyClass {
                degree: v.degree(),
                representative: v.clone(),
            });
        }
        if !self.is_cocycle(v)? {
            return Err(Error::NotACocycle(format!(
                "vector of degree {} has nonzero differential",
                v.degree()
            )));
        }
        let n = v.degree();
        let slice = self.slice(n)?;
        let reduced = slice.coboundaries.reduce(&self.to_dense(v)?).residue;
        Ok(CohomologyClass {
            degree: n,
            representative: self.from_dense(n, &reduced)?,
        })
    }

    pub fn zero_class(&self, degree: u32) -> CohomologyClass {
        CohomologyClass {
            degree,
            representative: self.presentation().zero(degree),
        }
    }

    pub fn unit_class(&self) -> CohomologyClass {
        self.class_of(&self.presentation().one())
            .expect("the unit is a cocycle")
    }

    /// Basis of `H^n`: canonical representatives in a fixed order.
    pub fn cohomology_basis(&self, n: i64) -> Result<Vec<CohomologyClass>> {
        let n = self.check_degree(n)?;
        let slice = self.slice(n)?;
        slice
            .cohomology
            .rows()
            .iter()
            .map(|r| {
                Ok(CohomologyClass {
                    degree: n,
                    representative: self.from_dense(n, r)?,
                })
            })
            .collect()
    }

    pub fn cohomology_dim(&self, n: u32) -> Result<usize> {
        Ok(self.slice(self.check_degree(n as i64)?)?.cohomology.dim())
    }

    /// Coordinates of a class on [`DgaModel::cohomology_basis`].
    pub fn class_coordinates(&self, c: &CohomologyClass) -> Result<Vec<Scalar>> {
        self.check_class(c)?;
        if c.degree > self.truncation() {
            return Ok(Vec::new());
        }
        let slice = self.slice(c.degree)?;
        let dense = self.to_dense(&c.representative)?;
        let red = slice.cohomology.reduce(&dense);
        debug_assert!(red.residue.iter().all(Scalar::is_zero));
        Ok(red.coefficients)
    }

    pub fn class_from_coordinates(&self, n: u32, coords: &[Scalar]) -> Result<CohomologyClass> {
        let basis = self.cohomology_basis(n as i64)?;
        if basis.len() != coords.len() {
            return Err(Error::DegreeMismatch {
                expected: basis.len() as u32,
                found: coords.len() as u32,
            });
        }
        let mut rep = self.presentation().zero(n);
        for (b, c) in basis.iter().zip(coords) {
            rep = rep.add(&b.representative.scale(c))?;
        }
        self.class_of(&rep)
    }

    /// Cocycle basis of degree `n` as vectors.
    pub fn cocycle_basis(&self, n: u32) -> Result<Vec<GradedVector>> {
        let slice = self.slice(self.check_degree(n as i64)?)?;
        slice.cocycles.iter().map(|r| self.from_dense(n, r)).collect()
    }

    /// Echelon basis of the coboundaries of degree `n`.
    pub fn coboundary_basis(&self, n: u32) -> Result<Vec<GradedVector>> {
        let slice = self.slice(self.check_degree(n as i64)?)?;
        slice
            .coboundaries
            .rows()
            .iter()
            .map(|r| self.from_dense(n, r))
            .collect()
    }

    /// Solves `d x = c`, setting every free coordinate of the echelon
    /// parametrization to zero.
    pub fn solve_primitive(&self, c: &GradedVector) -> Result<Primitive> {
        self.presentation().check(c)?;
        let n = c.degree();
        let p = self.presentation();
        if n == 0 || n > self.truncation() {
            // Nothing lives in degree -1, and everything above the top is zero.
            if c.is_zero() {
                let dim = if n == 0 { 0 } else { self.dimension_or_zero(n - 1) };
                return Ok(Primitive {
                    solution: p.zero(n.saturating_sub(1)),
                    solution_space_dim: dim,
                });
            }
            return Err(Error::NotABoundary {
                obstruction: Box::new(c.clone()),
            });
        }
        let slice = self.slice(n)?;
        match slice.solver.solve(&self.to_dense(c)?) {
            Some(x) => Ok(Primitive {
                solution: self.from_dense(n - 1, &x)?,
                solution_space_dim: slice.solver.nullity(),
            }),
            None => {
                let obstruction = if self.is_cocycle(c)? {
                    self.class_of(c)?.representative
                } else {
                    c.clone()
                };
                Err(Error::NotABoundary {
                    obstruction: Box::new(obstruction),
                })
            }
        }
    }

    fn dimension_or_zero(&self, n: u32) -> usize {
        self.dimension(n).unwrap_or(0)
    }

    pub fn cup(&self, a: &CohomologyClass, b: &CohomologyClass) -> Result<CohomologyClass> {
        self.check_class(a)?;
        self.check_class(b)?;
        let prod = self
            .presentation()
            .multiply(&a.representative, &b.representative)?;
        self.class_of(&prod)
    }

    pub fn scale_class(&self, a: &CohomologyClass, c: &Scalar) -> Result<CohomologyClass> {
        self.class_of(&a.representative.scale(c))
    }

    pub fn add_classes(&self, a: &CohomologyClass, b: &CohomologyClass) -> Result<CohomologyClass> {
        self.class_of(&a.representative.add(&b.representative)?)
    }

    /// Degree-`n` part of the ideal generated by `gens` in cohomology.
    pub fn ideal_slice(&self, gens: &[CohomologyClass], n: i64) -> Result<SubspaceBasis> {
        let n = self.check_degree(n)?;
        let field = self.presentation().field();
        let width = self.dimension(n)?;
        let mut rows: Vec<Row> = Vec::new();
        for g in gens {
            self.check_class(g)?;
            if g.degree > n {
                continue;
            }
            for h in self.cohomology_basis((n - g.degree) as i64)? {
                let prod = self.cup(g, &h)?;
                rows.push(self.to_dense(&prod.representative)?);
            }
        }
        let echelon = Echelon::from_rows(rows, width, field);
        self.subspace_from_echelon(n, echelon)
    }

    pub(crate) fn subspace_from_echelon(&self, n: u32, echelon: Echelon) -> Result<SubspaceBasis> {
        let vectors = echelon
            .rows()
            .iter()
            .map(|r| self.from_dense(n, r))
            .collect::<Result<_>>()?;
        Ok(SubspaceBasis {
            degree: n,
            vectors,
            echelon,
        })
    }

    /// Span of the given classes as a subspace of `H^n`.
    pub fn span_of_classes(&self, n: u32, classes: &[CohomologyClass]) -> Result<SubspaceBasis> {
        let rows = classes
            .iter()
            .map(|c| {
                if c.degree != n {
                    return Err(Error::DegreeMismatch {
                        expected: n,
                        found: c.degree,
                    });
                }
                self.to_dense(&c.representative)
            })
            .collect::<Result<Vec<_>>>()?;
        let width = self.dimension(n)?;
        let echelon = Echelon::from_rows(rows, width, self.presentation().field());
        self.subspace_from_echelon(n, echelon)
    }

    pub fn zero_subspace(&self, n: u32) -> Result<SubspaceBasis> {
        self.span_of_classes(n, &[])
    }

    pub fn member(&self, v: &CohomologyClass, s: &SubspaceBasis) -> Result<Membership> {
        self.check_class(v)?;
        if v.degree != s.degree {
            return Err(Error::DegreeMismatch {
                expected: s.degree,
                found: v.degree,
            });
        }
        let red = s.echelon.reduce(&self.to_dense(&v.representative)?);
        if red.residue.iter().all(Scalar::is_zero) {
            Ok(Membership::Member {
                coefficients: red.coefficients,
            })
        } else {
            Ok(Membership::NonMember {
                residue: self.from_dense(v.degree, &red.residue)?,
            })
        }
    }

    /// `sum (-1)^n dim A^n` over the truncated algebra.
    pub fn euler_characteristic_chains(&self) -> Result<i64> {
        let mut chi = 0i64;
        for n in 0..=self.truncation() {
            let d = self.dimension(n)? as i64;
            chi += if n % 2 == 0 { d } else { -d };
        }
        Ok(chi)
    }

    pub fn euler_characteristic_cohomology(&self) -> Result<i64> {
        let mut chi = 0i64;
        for n in 0..=self.truncation() {
            let d = self.cohomology_dim(n)? as i64;
            chi += if n % 2 == 0 { d } else { -d };
        }
        Ok(chi)
    }

    pub fn betti_numbers(&self) -> Result<Vec<usize>> {
        (0..=self.truncation()).map(|n| self.cohomology_dim(n)).collect()
    }
}
