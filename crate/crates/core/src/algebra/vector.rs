use std::collections::BTreeMap;
use std::fmt;

use super::monomial::Monomial;
use super::presentation::PresentationId;
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// A homogeneous element of a presented algebra: a sparse map from canonical
/// monomials to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedVector {
    presentation: PresentationId,
    field: Field,
    degree: u32,
    terms: BTreeMap<Monomial, Scalar>,
}

impl GradedVector {
    pub fn zero(presentation: PresentationId, field: Field, degree: u32) -> Self {
        GradedVector {
            presentation,
            field,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub(crate) fn from_map(
        presentation: PresentationId,
        field: Field,
        degree: u32,
        mut terms: BTreeMap<Monomial, Scalar>,
    ) -> Self {
        terms.retain(|_, c| !c.is_zero());
        GradedVector {
            presentation,
            field,
            degree,
            terms,
        }
    }

    pub fn presentation(&self) -> PresentationId {
        self.presentation
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    fn compatible(&self, other: &GradedVector) -> Result<()> {
        if self.presentation != other.presentation {
            return Err(Error::MixedPresentation);
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedVector) -> Result<GradedVector> {
        self.compatible(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let slot = terms.entry(m.clone()).or_insert_with(|| self.field.zero());
            *slot += c;
        }
        Ok(Self::from_map(self.presentation, self.field, self.degree, terms))
    }

    pub fn sub(&self, other: &GradedVector) -> Result<GradedVector> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> GradedVector {
        let terms = self
            .terms
            .iter()
            .map(|(m, x)| (m.clone(), x * c))
            .collect();
        Self::from_map(self.presentation, self.field, self.degree, terms)
    }

    pub fn neg(&self) -> GradedVector {
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), -x)).collect();
        Self::from_map(self.presentation, self.field, self.degree, terms)
    }

    /// `(-1)^degree * self`.
    pub fn bar(&self) -> GradedVector {
        if self.degree % 2 == 0 {
            self.clone()
        } else {
            self.neg()
        }
    }

    /// Reinterprets this vector in another presentation with the same leading
    /// generators (used by inclusions such as the bundle projection pullback).
    pub(crate) fn retarget(&self, presentation: PresentationId, generators: usize) -> GradedVector {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.extended(generators), c.clone()))
            .collect();
        Self::from_map(presentation, self.field, self.degree, terms)
    }
}

impl fmt::Display for GradedVector {
    /// Debug-oriented rendering with raw exponent vectors; use
    /// [`crate::io::render_vector`] for generator names.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{c}*{:?}", m.exponents()))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
