use std::collections::{BTreeMap, HashMap};
use std::hash::{DefaultHasher, Hash, Hasher};
use std::sync::{Arc, OnceLock};

use super::monomial::Monomial;
use super::vector::GradedVector;
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorDecl {
    pub name: String,
    pub degree: u32,
}

impl GeneratorDecl {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        GeneratorDecl {
            name: name.into(),
            degree,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// Caps the degree of the part of a monomial involving the first `prefix` generators.
///
/// A presentation always carries one bound covering every generator (its
/// truncation degree). Extra bounds on prefixes appear when generators are
/// adjoined over a truncated base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TruncationBound {
    pub prefix: usize,
    pub max_degree: u32,
}

/// `g^height = rhs`, where `rhs` only involves generators declared before `g` and
/// powers of `g` below `height`. Only even-degree generators may carry one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HeightRelation {
    pub generator: usize,
    pub height: u16,
    pub rhs: Vec<(Scalar, Monomial)>,
}

/// Identifies a presentation structurally, so vectors can be checked for a common parent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PresentationId(pub u64);

#[derive(Debug)]
pub(crate) struct DegreeBasis {
    pub monomials: Vec<Monomial>,
    pub index: HashMap<Monomial, usize>,
}

/// A finite presentation of a truncated free graded-commutative algebra,
/// optionally quotiented by height relations on even generators.
#[derive(Debug)]
pub struct Presentation {
    field: Field,
    generators: Vec<GeneratorDecl>,
    bounds: Vec<TruncationBound>,
    relations: Vec<HeightRelation>,
    id: PresentationId,
    bases: Vec<OnceLock<Arc<DegreeBasis>>>,
}

/// Result of [`Presentation::normalize_product`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedMonomial {
    pub negative: bool,
    pub monomial: Monomial,
}

impl Presentation {
    pub fn new(field: Field, generators: Vec<GeneratorDecl>, truncation: u32) -> Result<Arc<Self>> {
        let bounds = vec![TruncationBound {
            prefix: generators.len(),
            max_degree: truncation,
        }];
        Self::with_structure(field, generators, bounds, Vec::new())
    }

    /// Full constructor. Bounds must include one covering all generators.
    pub fn with_structure(
        field: Field,
        generators: Vec<GeneratorDecl>,
        mut bounds: Vec<TruncationBound>,
        relations: Vec<HeightRelation>,
    ) -> Result<Arc<Self>> {
        let invalid = |m: String| Err(Error::InvalidPresentation(m));
        for (i, g) in generators.iter().enumerate() {
            if g.degree == 0 {
                return invalid(format!("generator {} has degree 0", g.name));
            }
            if !is_identifier(&g.name) {
                return invalid(format!("generator name {:?} is not an identifier", g.name));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return invalid(format!("duplicate generator name {}", g.name));
            }
        }
        bounds.sort_by_key(|b| b.prefix);
        bounds.dedup();
        match bounds.last() {
            Some(b) if b.prefix == generators.len() => {}
            _ => return invalid("no truncation bound covers every generator".into()),
        }
        if bounds.iter().any(|b| b.prefix > generators.len()) {
            return invalid("truncation bound refers to missing generators".into());
        }
        let top = bounds.last().unwrap().max_degree;
        let n = generators.len();
        for rel in &relations {
            let Some(g) = generators.get(rel.generator) else {
                return invalid("relation on a missing generator".into());
            };
            if g.is_odd() {
                return invalid(format!("relation on odd generator {}", g.name));
            }
            if rel.height == 0 {
                return invalid(format!("relation on {} has height 0", g.name));
            }
            if relations.iter().filter(|r| r.generator == rel.generator).count() > 1 {
                return invalid(format!("two relations on {}", g.name));
            }
            let want = g.degree * rel.height as u32;
            for (c, m) in &rel.rhs {
                if c.field() != field {
                    return invalid("relation coefficient over the wrong field".into());
                }
                if m.len() != n {
                    return invalid("relation monomial has the wrong length".into());
                }
                let deg: u32 = m
                    .exponents()
                    .iter()
                    .zip(&generators)
                    .map(|(&e, g)| e as u32 * g.degree)
                    .sum();
                if deg != want {
                    return invalid(format!("relation on {} is not homogeneous", g.name));
                }
                if m.exponents()[rel.generator + 1..].iter().any(|&e| e > 0)
                    || m.exponent(rel.generator) >= rel.height
                {
                    return invalid(format!(
                        "relation on {} must only use earlier generators and lower powers",
                        g.name
                    ));
                }
                if m.exponents()
                    .iter()
                    .zip(&generators)
                    .any(|(&e, g)| g.is_odd() && e > 1)
                {
                    return invalid("relation monomial squares an odd generator".into());
                }
            }
        }
        let id = {
            let mut h = DefaultHasher::new();
            field.hash(&mut h);
            generators.hash(&mut h);
            bounds.hash(&mut h);
            relations.hash(&mut h);
            PresentationId(h.finish())
        };
        let bases = (0..=top).map(|_| OnceLock::new()).collect();
        Ok(Arc::new(Presentation {
            field,
            generators,
            bounds,
            relations,
            id,
            bases,
        }))
    }

    pub fn id(&self) -> PresentationId {
        self.id
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn generators(&self) -> &[GeneratorDecl] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn bounds(&self) -> &[TruncationBound] {
        &self.bounds
    }

    pub fn relations(&self) -> &[HeightRelation] {
        &self.relations
    }

    /// The top degree; products landing above it vanish.
    pub fn truncation(&self) -> u32 {
        self.bounds.last().unwrap().max_degree
    }

    pub fn degree_of(&self, m: &Monomial) -> u32 {
        m.exponents()
            .iter()
            .zip(&self.generators)
            .map(|(&e, g)| e as u32 * g.degree)
            .sum()
    }

    fn within_bounds(&self, m: &Monomial) -> bool {
        self.bounds.iter().all(|b| {
            let deg: u32 = m.exponents()[..b.prefix]
                .iter()
                .zip(&self.generators)
                .map(|(&e, g)| e as u32 * g.degree)
                .sum();
            deg <= b.max_degree
        })
    }

    fn relation_violated(&self, m: &Monomial) -> Option<&HeightRelation> {
        // Later generators first: their rewrites only introduce earlier ones.
        self.relations
            .iter()
            .rev()
            .find(|r| m.exponent(r.generator) >= r.height)
    }

    /// Multiplies two canonical monomials of the free truncated algebra.
    ///
    /// Returns `None` when an odd generator would square or a truncation bound is
    /// exceeded. The Koszul sign counts transpositions of odd generators needed to
    /// restore declaration order. Height relations are not applied here.
    pub fn normalize_product(&self, a: &Monomial, b: &Monomial) -> Option<SignedMonomial> {
        let mut negative = false;
        let mut odd_in_a_after = 0u32;
        // Walk from the last generator down so `odd_in_a_after` counts odd
        // generators of `a` with a strictly larger index.
        for i in (0..self.generators.len()).rev() {
            let odd = self.generators[i].is_odd();
            if odd {
                if a.exponent(i) + b.exponent(i) > 1 {
                    return None;
                }
                if b.exponent(i) == 1 && odd_in_a_after % 2 == 1 {
                    negative = !negative;
                }
                odd_in_a_after += a.exponent(i) as u32;
            }
        }
        let exps = a
            .exponents()
            .iter()
            .zip(b.exponents())
            .map(|(&x, &y)| x + y)
            .collect();
        let monomial = Monomial::from_exponents(exps);
        if !self.within_bounds(&monomial) {
            return None;
        }
        Some(SignedMonomial { negative, monomial })
    }

    /// Accumulates `coeff * m` into `acc`, rewriting height relations until canonical.
    fn push_reduced(&self, acc: &mut BTreeMap<Monomial, Scalar>, coeff: Scalar, m: Monomial) {
        if coeff.is_zero() {
            return;
        }
        match self.relation_violated(&m) {
            None => {
                let slot = acc.entry(m).or_insert_with(|| self.field.zero());
                *slot += &coeff;
            }
            Some(rel) => {
                let rest = m.with_exponent(rel.generator, m.exponent(rel.generator) - rel.height);
                for (c, r) in &rel.rhs {
                    if let Some(p) = self.normalize_product(&rest, r) {
                        let mut term = &coeff * c;
                        if p.negative {
                            term = -term;
                        }
                        self.push_reduced(acc, term, p.monomial);
                    }
                }
            }
        }
    }

    /// Bilinear product in the algebra; terms above the truncation vanish.
    pub fn multiply(&self, a: &GradedVector, b: &GradedVector) -> Result<GradedVector> {
        self.check(a)?;
        self.check(b)?;
        let mut acc = BTreeMap::new();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                if let Some(p) = self.normalize_product(ma, mb) {
                    let mut c = ca * cb;
                    if p.negative {
                        c = -c;
                    }
                    self.push_reduced(&mut acc, c, p.monomial);
                }
            }
        }
        Ok(GradedVector::from_map(
            self.id,
            self.field,
            a.degree() + b.degree(),
            acc,
        ))
    }

    /// Product of a list of factors, left to right.
    pub fn multiply_all<'a>(
        &self,
        degree_if_empty: u32,
        factors: impl IntoIterator<Item = &'a GradedVector>,
    ) -> Result<GradedVector> {
        let mut acc: Option<GradedVector> = None;
        for f in factors {
            acc = Some(match acc {
                None => f.clone(),
                Some(a) => self.multiply(&a, f)?,
            });
        }
        Ok(acc.unwrap_or_else(|| {
            debug_assert_eq!(degree_if_empty, 0);
            self.one()
        }))
    }

    pub fn check(&self, v: &GradedVector) -> Result<()> {
        if v.presentation() != self.id {
            return Err(Error::MixedPresentation);
        }
        Ok(())
    }

    pub fn one(&self) -> GradedVector {
        self.monomial_vector(Monomial::unit(self.generators.len()), self.field.one())
    }

    pub fn zero(&self, degree: u32) -> GradedVector {
        GradedVector::zero(self.id, self.field, degree)
    }

    pub fn generator_vector(&self, index: usize) -> GradedVector {
        self.monomial_vector(
            Monomial::generator(self.generators.len(), index),
            self.field.one(),
        )
    }

    /// `c * m`, reduced to canonical form (possibly zero).
    pub fn monomial_vector(&self, m: Monomial, c: Scalar) -> GradedVector {
        let degree = self.degree_of(&m);
        let mut acc = BTreeMap::new();
        let odd_square = m
            .exponents()
            .iter()
            .zip(&self.generators)
            .any(|(&e, g)| g.is_odd() && e > 1);
        if !odd_square && self.within_bounds(&m) {
            self.push_reduced(&mut acc, c, m);
        }
        GradedVector::from_map(self.id, self.field, degree, acc)
    }

    /// Builds a vector from raw terms, reducing each to canonical form.
    pub fn vector_from_terms(
        &self,
        degree: u32,
        terms: impl IntoIterator<Item = (Scalar, Monomial)>,
    ) -> Result<GradedVector> {
        let mut out = self.zero(degree);
        for (c, m) in terms {
            if m.len() != self.generators.len() {
                return Err(Error::MixedPresentation);
            }
            let found = self.degree_of(&m);
            if found != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found,
                });
            }
            out = out.add(&self.monomial_vector(m, c))?;
        }
        Ok(out)
    }

    pub(crate) fn degree_basis(&self, n: u32) -> Result<Arc<DegreeBasis>> {
        let slot = self.bases.get(n as usize).ok_or(Error::DegreeOutOfRange {
            degree: n as i64,
            max: self.truncation(),
        })?;
        Ok(slot
            .get_or_init(|| {
                let mut monomials = Vec::new();
                let mut exps = vec![0u16; self.generators.len()];
                self.enumerate(0, n, &mut exps, &mut monomials);
                monomials.sort();
                let index = monomials
                    .iter()
                    .enumerate()
                    .map(|(i, m)| (m.clone(), i))
                    .collect();
                Arc::new(DegreeBasis { monomials, index })
            })
            .clone())
    }

    fn enumerate(&self, i: usize, remaining: u32, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i == self.generators.len() {
            if remaining == 0 {
                let m = Monomial::from_exponents(exps.clone());
                if self.within_bounds(&m) {
                    out.push(m);
                }
            }
            return;
        }
        let g = &self.generators[i];
        let mut cap = remaining / g.degree;
        if g.is_odd() {
            cap = cap.min(1);
        }
        if let Some(rel) = self.relations.iter().find(|r| r.generator == i) {
            cap = cap.min(rel.height as u32 - 1);
        }
        for e in 0..=cap {
            exps[i] = e as u16;
            self.enumerate(i + 1, remaining - e * g.degree, exps, out);
        }
        exps[i] = 0;
    }

    /// All canonical monomials of degree `n`, in canonical order.
    pub fn basis_of_degree(&self, n: u32) -> Result<Vec<Monomial>> {
        Ok(self.degree_basis(n)?.monomials.clone())
    }

    pub fn dimension(&self, n: u32) -> Result<usize> {
        Ok(self.degree_basis(n)?.monomials.len())
    }

    /// Renders a monomial as `x1*x3^2`, or `1` for the unit.
    pub fn render_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .exponents()
            .iter()
            .zip(&self.generators)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, g)| {
                if e == 1 {
                    g.name.clone()
                } else {
                    format!("{}^{}", g.name, e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
