use std::sync::Arc;

use crate::algebra::{GeneratorDecl, GradedVector, HeightRelation, Presentation, TruncationBound};
use crate::dga::DgaModel;
use crate::error::{Error, Result};
use crate::io::parse_polynomial;
use crate::scalar::Field;

/// Builds a model from differential images and rejects it unless `d` raises
/// degree by one and squares to zero.
pub fn checked_model(presentation: Arc<Presentation>, images: Vec<GradedVector>) -> Result<DgaModel> {
    let model = DgaModel::new(presentation, images)?;
    let report = model.validate()?;
    if let Some(name) = report.relation_failures.first() {
        return Err(Error::InvalidDifferential {
            generator: name.clone(),
            reason: "height relation is not preserved".into(),
        });
    }
    if let Some(m) = report.d_squared_failures.first() {
        let p = model.presentation();
        // Name the first generator whose own d^2 fails, else the monomial.
        let culprit = (0..p.generators().len())
            .find(|&i| {
                let g = p.generator_vector(i);
                model.d(&g).and_then(|dg| model.d(&dg)).map(|v| !v.is_zero()).unwrap_or(false)
            })
            .map(|i| p.generators()[i].name.clone())
            .unwrap_or_else(|| p.render_monomial(m));
        return Err(Error::InvalidDifferential {
            generator: culprit,
            reason: format!("d^2 is nonzero on {}", p.render_monomial(m)),
        });
    }
    Ok(model)
}

/// A free graded-commutative model from generator declarations and differential
/// polynomials; generators not listed have zero differential.
pub fn free_cdga(
    field: Field,
    generators: Vec<GeneratorDecl>,
    differential: &[(&str, &str)],
    truncation: u32,
) -> Result<DgaModel> {
    let p = Presentation::new(field, generators, truncation)?;
    let images = differential_images(&p, differential)?;
    checked_model(p, images)
}

pub(crate) fn differential_images(
    p: &Arc<Presentation>,
    differential: &[(&str, &str)],
) -> Result<Vec<GradedVector>> {
    let mut images: Vec<GradedVector> =
        p.generators().iter().map(|g| p.zero(g.degree + 1)).collect();
    for (name, poly) in differential {
        let i = p.generator_index(name).ok_or_else(|| Error::InvalidDifferential {
            generator: name.to_string(),
            reason: "no such generator".into(),
        })?;
        let v = parse_polynomial(p, poly, None)?;
        if !v.is_zero() && v.degree() != p.generators()[i].degree + 1 {
            return Err(Error::InvalidDifferential {
                generator: name.to_string(),
                reason: format!(
                    "image has degree {}, expected {}",
                    v.degree(),
                    p.generators()[i].degree + 1
                ),
            });
        }
        images[i] = if v.is_zero() { p.zero(p.generators()[i].degree + 1) } else { v };
    }
    Ok(images)
}

fn odd_generators(names: &[&str]) -> Vec<GeneratorDecl> {
    names.iter().map(|n| GeneratorDecl::new(*n, 1)).collect()
}

/// The one-point model: the ground field in degree 0.
pub fn point(field: Field) -> DgaModel {
    let p = Presentation::new(field, Vec::new(), 0).expect("empty presentation");
    DgaModel::formal(p)
}

/// Exterior algebra on `n` degree-one generators with zero differential.
pub fn torus(n: usize, field: Field) -> DgaModel {
    let gens = (1..=n).map(|i| GeneratorDecl::new(format!("x{i}"), 1)).collect();
    let p = Presentation::new(field, gens, n as u32).expect("valid exterior presentation");
    DgaModel::formal(p)
}

/// `Q[x]/(x^{n+1})` with `|x| = 2`.
pub fn cp(n: u32, field: Field) -> DgaModel {
    let gens = vec![GeneratorDecl::new("x", 2)];
    let bounds = vec![TruncationBound {
        prefix: 1,
        max_degree: 2 * n,
    }];
    let rel = HeightRelation {
        generator: 0,
        height: (n + 1) as u16,
        rhs: Vec::new(),
    };
    let p = Presentation::with_structure(field, gens, bounds, vec![rel])
        .expect("valid truncated polynomial presentation");
    DgaModel::formal(p)
}

/// `Lambda(x1, x2, x3, x4)` with `d x3 = x1 x2`.
pub fn kodaira_thurston(field: Field) -> DgaModel {
    free_cdga(
        field,
        odd_generators(&["x1", "x2", "x3", "x4"]),
        &[("x3", "x1*x2")],
        4,
    )
    .expect("valid model")
}

/// `Lambda(x1, x2, x3)` with `d x3 = x1 x2`.
pub fn heisenberg(field: Field) -> DgaModel {
    free_cdga(
        field,
        odd_generators(&["x1", "x2", "x3"]),
        &[("x3", "x1*x2")],
        3,
    )
    .expect("valid model")
}

/// Canonical classes of the Kodaira-Thurston model, by label.
pub fn kodaira_thurston_classes() -> Vec<(&'static str, &'static str)> {
    vec![
        ("alpha", "x1"),
        ("beta", "x2"),
        ("gamma", "x4"),
        ("u", "x1*x4 + x2*x3"),
        ("v", "x1*x3"),
    ]
}
