//! Example models shipped with the engine.

use crate::error::{Error, Result};
use crate::io::ModelFile;
use crate::models::{cp, iwasawa, torus};
use crate::scalar::Field;

const KODAIRA_THURSTON: &str = include_str!("../../models/kodaira_thurston.json");
const HEISENBERG: &str = include_str!("../../models/heisenberg.json");

/// Largest number of degree-one generators a parametric model may have.
pub const MAX_GENERATORS: usize = 12;
pub const MAX_CP: u32 = 32;

/// One catalog line: a name pattern, what it models, and a sample instance
/// with its Betti numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub pattern: &'static str,
    pub description: &'static str,
    pub sample: &'static str,
    pub betti: &'static [usize],
}

pub fn bundled_catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            pattern: "kodaira_thurston",
            description: "Kodaira-Thurston nilmanifold, d x3 = x1 x2",
            sample: "kodaira_thurston",
            betti: &[1, 3, 4, 3, 1],
        },
        CatalogEntry {
            pattern: "heisenberg",
            description: "Heisenberg nilmanifold, d x3 = x1 x2",
            sample: "heisenberg",
            betti: &[1, 2, 2, 1],
        },
        CatalogEntry {
            pattern: "torus-<n>",
            description: "n-torus, exterior algebra on n degree-one classes",
            sample: "torus-2",
            betti: &[1, 2, 1],
        },
        CatalogEntry {
            pattern: "cp-<n>",
            description: "complex projective space, truncated polynomial algebra on x of degree 2",
            sample: "cp-3",
            betti: &[1, 0, 1, 0, 1, 0, 1],
        },
        CatalogEntry {
            pattern: "iwasawa-<p>-<q>",
            description: "nilmanifold of H(1,p) x H(1,q), Chevalley-Eilenberg model",
            sample: "iwasawa-1-1",
            betti: &[1, 4, 8, 10, 8, 4, 1],
        },
    ]
}

fn parse_params(rest: &str, count: usize) -> Option<Vec<usize>> {
    let parts: Vec<usize> = rest.split('-').map(|s| s.parse().ok()).collect::<Option<_>>()?;
    (parts.len() == count).then_some(parts)
}

fn unknown(name: &str) -> Error {
    Error::Usage(format!(
        "unknown bundled model {name:?}; run `massey examples` for the list"
    ))
}

/// The model file of a bundled model, over `Q`.
pub fn bundled_model(name: &str) -> Result<ModelFile> {
    match name {
        "kodaira_thurston" => return ModelFile::from_json(KODAIRA_THURSTON),
        "heisenberg" => return ModelFile::from_json(HEISENBERG),
        _ => {}
    }
    let q = Field::Rational;
    if let Some(rest) = name.strip_prefix("torus-") {
        let n = parse_params(rest, 1).ok_or_else(|| unknown(name))?[0];
        if n > MAX_GENERATORS {
            return Err(Error::Usage(format!("torus-{n}: at most {MAX_GENERATORS} generators")));
        }
        let model = torus(n, q);
        let classes: Vec<_> = (0..n)
            .map(|i| (format!("a{}", i + 1), model.presentation().generator_vector(i)))
            .collect();
        return Ok(ModelFile::from_model(&model, &classes));
    }
    if let Some(rest) = name.strip_prefix("cp-") {
        let n = parse_params(rest, 1).ok_or_else(|| unknown(name))?[0];
        if n == 0 || n as u32 > MAX_CP {
            return Err(Error::Usage(format!("cp-{n}: n must lie in 1..={MAX_CP}")));
        }
        let model = cp(n as u32, q);
        let h = model.presentation().generator_vector(0);
        return Ok(ModelFile::from_model(&model, &[("h".to_string(), h)]));
    }
    if let Some(rest) = name.strip_prefix("iwasawa-") {
        let ps = parse_params(rest, 2).ok_or_else(|| unknown(name))?;
        let (a, b) = (ps[0], ps[1]);
        if a == 0 || b == 0 || 2 * (a + b) + 2 > MAX_GENERATORS {
            return Err(Error::Usage(format!(
                "iwasawa-{a}-{b}: need p, q >= 1 and 2(p + q) + 2 <= {MAX_GENERATORS}"
            )));
        }
        return Ok(ModelFile::from_model(&iwasawa(a, b, q)?, &[]));
    }
    Err(unknown(name))
}
