use std::path::Path;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::{parse_polynomial, render_vector};
use crate::algebra::{GeneratorDecl, GradedVector, HeightRelation, Presentation, TruncationBound};
use crate::dga::{CohomologyClass, DgaModel};
use crate::error::{Error, Result};
use crate::models::{checked_model, differential_images};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub name: String,
    pub degree: u32,
}

/// Caps the degree carried by the first `prefix` generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundEntry {
    pub prefix: usize,
    pub max_degree: u32,
}

/// `generator^power = equals`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationEntry {
    pub generator: String,
    pub power: u16,
    pub equals: String,
}

/// On-disk description of a model.
///
/// ```json
/// {
///   "field": "Q",
///   "generators": [{"name": "x1", "degree": 1}, {"name": "x2", "degree": 1},
///                  {"name": "x3", "degree": 1}],
///   "differential": {"x3": "x1*x2"},
///   "truncation": 3,
///   "classes": {"alpha": "x1"}
/// }
/// ```
///
/// `field` is `"Q"` or `"F<p>"` such as `"F5"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub field: String,
    pub generators: Vec<GeneratorEntry>,
    #[serde(default)]
    pub differential: IndexMap<String, String>,
    pub truncation: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bounds: Vec<BoundEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<RelationEntry>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub classes: IndexMap<String, String>,
}

/// A validated model together with its labeled classes.
#[derive(Clone, Debug)]
pub struct LoadedModel {
    pub model: Arc<DgaModel>,
    pub classes: IndexMap<String, CohomologyClass>,
}

impl LoadedModel {
    pub fn class(&self, label: &str) -> Result<CohomologyClass> {
        self.classes
            .get(label)
            .cloned()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// A label, or else a polynomial in the generators.
    pub fn resolve(&self, text: &str) -> Result<CohomologyClass> {
        if let Some(c) = self.classes.get(text) {
            return Ok(c.clone());
        }
        let v = parse_polynomial(self.model.presentation(), text, None)
            .map_err(|_| Error::UnknownLabel(text.to_string()))?;
        self.model.class_of(&v).map_err(|e| match e {
            Error::NotACocycle(_) => Error::NotACocycle(format!("{text} is not a cocycle")),
            other => other,
        })
    }

    /// The label of a class, if some labeled class is equal to it.
    pub fn label_of(&self, c: &CohomologyClass) -> Option<&str> {
        self.classes
            .iter()
            .find(|(_, v)| *v == c)
            .map(|(k, _)| k.as_str())
    }
}

pub fn parse_field(text: &str) -> Result<Field> {
    match text.trim() {
        "Q" => Ok(Field::Rational),
        t => match t.strip_prefix('F').and_then(|p| p.parse::<u32>().ok()) {
            Some(p) => Field::prime(p),
            None => Err(Error::InvalidField(format!("unknown field {t:?}; use \"Q\" or \"F<p>\""))),
        },
    }
}

pub fn field_name(field: Field) -> String {
    match field {
        Field::Rational => "Q".into(),
        Field::Prime(p) => format!("F{p}"),
    }
}

impl ModelFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Pretty JSON with a trailing newline; keys in declaration order.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("model files serialize");
        s.push('\n');
        s
    }

    fn generator_decls(&self) -> Vec<GeneratorDecl> {
        self.generators
            .iter()
            .map(|g| GeneratorDecl::new(g.name.clone(), g.degree))
            .collect()
    }

    fn bounds(&self) -> Vec<TruncationBound> {
        let mut bounds: Vec<TruncationBound> = self
            .bounds
            .iter()
            .map(|b| TruncationBound {
                prefix: b.prefix,
                max_degree: b.max_degree,
            })
            .collect();
        bounds.push(TruncationBound {
            prefix: self.generators.len(),
            max_degree: self.truncation,
        });
        bounds
    }

    pub fn presentation(&self) -> Result<Arc<Presentation>> {
        let field = parse_field(&self.field)?;
        let gens = self.generator_decls();
        if self.relations.is_empty() {
            return Presentation::with_structure(field, gens, self.bounds(), Vec::new());
        }
        // Relation right-hand sides are read in the free algebra.
        let free = Presentation::with_structure(field, gens.clone(), self.bounds(), Vec::new())?;
        let mut relations = Vec::new();
        for r in &self.relations {
            let g = free
                .generator_index(&r.generator)
                .ok_or_else(|| Error::InvalidPresentation(format!("relation on unknown generator {}", r.generator)))?;
            let want = gens[g].degree * r.power as u32;
            let v = parse_polynomial(&free, &r.equals, Some(want))?;
            relations.push(HeightRelation {
                generator: g,
                height: r.power,
                rhs: v.terms().map(|(m, c)| (c.clone(), m.clone())).collect(),
            });
        }
        Presentation::with_structure(field, gens, self.bounds(), relations)
    }

    fn differential_pairs(&self) -> Vec<(&str, &str)> {
        self.differential
            .iter()
            .map(|(k, v)| (k.as_str(), v.as_str()))
            .collect()
    }

    /// The model without the `d^2 = 0` check, for diagnostics.
    pub fn build_unchecked(&self) -> Result<DgaModel> {
        let p = self.presentation()?;
        let images = differential_images(&p, &self.differential_pairs())?;
        DgaModel::new(p, images)
    }

    /// The validated model and its labeled classes, which must be cocycles.
    pub fn build(&self) -> Result<LoadedModel> {
        let p = self.presentation()?;
        let images = differential_images(&p, &self.differential_pairs())?;
        let model = Arc::new(checked_model(p, images)?);
        let mut classes = IndexMap::new();
        for (label, text) in &self.classes {
            let v = parse_polynomial(model.presentation(), text, None)?;
            let c = model.class_of(&v).map_err(|e| match e {
                Error::NotACocycle(_) => Error::NotACocycle(format!("class {label} = {text}")),
                other => other,
            })?;
            classes.insert(label.clone(), c);
        }
        Ok(LoadedModel { model, classes })
    }

    /// Describes an existing model, with optional labeled classes.
    pub fn from_model(model: &DgaModel, classes: &[(String, GradedVector)]) -> Self {
        let p = model.presentation();
        let generators = p
            .generators()
            .iter()
            .map(|g| GeneratorEntry {
                name: g.name.clone(),
                degree: g.degree,
            })
            .collect();
        let differential = p
            .generators()
            .iter()
            .zip(model.differential_images())
            .filter(|(_, v)| !v.is_zero())
            .map(|(g, v)| (g.name.clone(), render_vector(p, v)))
            .collect();
        let n = p.generators().len();
        let bounds = p
            .bounds()
            .iter()
            .filter(|b| b.prefix != n)
            .map(|b| BoundEntry {
                prefix: b.prefix,
                max_degree: b.max_degree,
            })
            .collect();
        let free = if p.relations().is_empty() {
            None
        } else {
            Some(
                Presentation::with_structure(p.field(), p.generators().to_vec(), p.bounds().to_vec(), Vec::new())
                    .expect("same generators and bounds"),
            )
        };
        let relations = p
            .relations()
            .iter()
            .map(|r| {
                let free = free.as_ref().expect("relations present");
                let g = &p.generators()[r.generator];
                let v = free
                    .vector_from_terms(g.degree * r.height as u32, r.rhs.iter().cloned())
                    .expect("relation terms are homogeneous");
                RelationEntry {
                    generator: g.name.clone(),
                    power: r.height,
                    equals: render_vector(free, &v),
                }
            })
            .collect();
        ModelFile {
            field: field_name(p.field()),
            generators,
            differential,
            truncation: p.truncation(),
            bounds,
            relations,
            classes: classes
                .iter()
                .map(|(label, v)| (label.clone(), render_vector(p, v)))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{kodaira_thurston, point, projectivize, ChernData};

    const HEISENBERG: &str = r#"{
  "field": "Q",
  "generators": [
    {"name": "x1", "degree": 1},
    {"name": "x2", "degree": 1},
    {"name": "x3", "degree": 1}
  ],
  "differential": {"x3": "x1*x2"},
  "truncation": 3,
  "classes": {"a": "x1", "top": "x1*x2*x3"}
}"#;

    #[test]
    fn loads_and_labels() {
        let m = ModelFile::from_json(HEISENBERG).unwrap().build().unwrap();
        assert_eq!(m.model.cohomology_dim(1).unwrap(), 2);
        let a = m.class("a").unwrap();
        assert_eq!(m.label_of(&a), Some("a"));
        assert!(matches!(m.class("b"), Err(Error::UnknownLabel(_))));
        assert_eq!(m.resolve("x2").unwrap().degree(), 1);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let bad = HEISENBERG.replace("\"truncation\"", "\"trunc\"");
        assert!(matches!(ModelFile::from_json(&bad), Err(Error::Parse { .. })));
        let extra = HEISENBERG.replace("\"truncation\": 3,", "\"truncation\": 3, \"colour\": 1,");
        let err = ModelFile::from_json(&extra).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 9),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_cocycle_label() {
        let bad = HEISENBERG.replace("\"a\": \"x1\"", "\"a\": \"x3\"");
        assert!(matches!(ModelFile::from_json(&bad).unwrap().build(), Err(Error::NotACocycle(_))));
    }

    #[test]
    fn empty_generator_list() {
        let f = ModelFile::from_json(r#"{"field": "F5", "generators": [], "truncation": 0}"#).unwrap();
        let m = f.build().unwrap();
        assert_eq!(m.model.cohomology_dim(0).unwrap(), 1);
    }

    #[test]
    fn round_trip_through_json() {
        let kt = kodaira_thurston(Field::Rational);
        let f = ModelFile::from_model(&kt, &[]);
        let again = ModelFile::from_json(&f.to_json()).unwrap();
        assert_eq!(f, again);
        let m = again.build().unwrap().model;
        assert_eq!(m.differential_images().len(), 4);
        assert_eq!(m.cohomology_dim(2).unwrap(), 4);
    }

    #[test]
    fn relations_round_trip() {
        let base = Arc::new(kodaira_thurston(Field::Rational));
        let p = base.presentation();
        let c = vec![parse_polynomial(p, "x1*x3", None).unwrap(), p.zero(4)];
        let e = projectivize(base.clone(), ChernData::new(&base, 1, c).unwrap()).unwrap();
        let f = ModelFile::from_model(e.model(), &[]);
        assert_eq!(f.relations.len(), 1);
        assert_eq!(f.relations[0].equals, "-x1*x3*xi");
        let m = ModelFile::from_json(&f.to_json()).unwrap().build().unwrap().model;
        assert_eq!(m.presentation().id(), e.model().presentation().id());
        let q = Arc::new(point(Field::Rational));
        let e = projectivize(q.clone(), ChernData::zero(&q, 2)).unwrap();
        let f = ModelFile::from_model(e.model(), &[]);
        assert_eq!(f.relations[0].equals, "0");
        let m = ModelFile::from_json(&f.to_json()).unwrap().build().unwrap().model;
        assert_eq!(m.cohomology_dim(4).unwrap(), 1);
    }
}
