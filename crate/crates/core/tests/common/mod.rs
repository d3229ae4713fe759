//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use massey::algebra::{GeneratorDecl, GradedVector};
use massey::dga::{CohomologyClass, DgaModel, DgaMorphism};
use massey::io::{parse_polynomial, render_vector};
use massey::massey::{entry_target, DefiningSystem};
use massey::models::{free_cdga, payload_digest, projectivize, BlowupCertificate, ChernData};
use massey::scalar::{Field, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn scalar(rng: &mut ChaCha8Rng, field: Field) -> Scalar {
    field.from_i64(rng.gen_range(-2..=2))
}

pub fn nonzero_scalar(rng: &mut ChaCha8Rng, field: Field) -> Scalar {
    loop {
        let s = scalar(rng, field);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn combination(rng: &mut ChaCha8Rng, model: &DgaModel, degree: u32, vectors: &[GradedVector]) -> GradedVector {
    let field = model.presentation().field();
    let mut out = model.presentation().zero(degree);
    for v in vectors {
        out = out.add(&v.scale(&scalar(rng, field))).unwrap();
    }
    out
}

/// A sparse random element of the given degree.
pub fn element(rng: &mut ChaCha8Rng, model: &DgaModel, degree: u32) -> GradedVector {
    let p = model.presentation();
    let mut out = p.zero(degree);
    if degree > model.truncation() {
        return out;
    }
    for m in p.basis_of_degree(degree).unwrap() {
        if rng.gen_bool(0.4) {
            out = out.add(&p.monomial_vector(m, scalar(rng, p.field()))).unwrap();
        }
    }
    out
}

/// Each generator's differential is a random cocycle in the earlier
/// generators, so `d^2 = 0` holds by construction.
pub fn random_model(rng: &mut ChaCha8Rng, field: Field, max_generators: usize, max_truncation: u32) -> Arc<DgaModel> {
    let n = rng.gen_range(2..=max_generators);
    let truncation = rng.gen_range(3..=max_truncation);
    let mut gens: Vec<GeneratorDecl> = Vec::new();
    let mut diffs: Vec<(String, String)> = Vec::new();
    for k in 0..n {
        let degree = match rng.gen_range(0..10) {
            0..=6 => 1,
            7 | 8 => 2,
            _ => 3,
        };
        let name = format!("x{}", k + 1);
        if !gens.is_empty() && degree < truncation && rng.gen_bool(0.7) {
            let prev = build(field, &gens, &diffs, truncation);
            let cocycles = prev.cocycle_basis(degree + 1).unwrap();
            let v = combination(rng, &prev, degree + 1, &cocycles);
            if !v.is_zero() {
                diffs.push((name.clone(), render_vector(prev.presentation(), &v)));
            }
        }
        gens.push(GeneratorDecl::new(name, degree));
    }
    Arc::new(build(field, &gens, &diffs, truncation))
}

fn build(field: Field, gens: &[GeneratorDecl], diffs: &[(String, String)], truncation: u32) -> DgaModel {
    let pairs: Vec<(&str, &str)> = diffs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    free_cdga(field, gens.to_vec(), &pairs, truncation).unwrap()
}

pub fn random_class(rng: &mut ChaCha8Rng, model: &DgaModel, degree: u32) -> CohomologyClass {
    let basis: Vec<GradedVector> = model
        .cohomology_basis(degree as i64)
        .unwrap()
        .iter()
        .map(|c| c.representative().clone())
        .collect();
    model.class_of(&combination(rng, model, degree, &basis)).unwrap()
}

/// Degrees with nonzero cohomology, excluding 0.
pub fn positive_degrees(model: &DgaModel) -> Vec<u32> {
    (1..=model.truncation())
        .filter(|&n| model.cohomology_dim(n).unwrap() > 0)
        .collect()
}

/// A representative of `c` moved by a random coboundary.
pub fn random_rep(rng: &mut ChaCha8Rng, model: &DgaModel, c: &CohomologyClass) -> GradedVector {
    let rep = c.representative().clone();
    if c.degree() == 0 {
        return rep;
    }
    let shift = model.d(&element(rng, model, c.degree() - 1)).unwrap();
    rep.add(&shift).unwrap()
}

/// A defining system with random representatives, random primitives and
/// random cocycle shifts; `None` when some entry has no primitive.
pub fn random_defining_system(
    rng: &mut ChaCha8Rng,
    model: &DgaModel,
    classes: &[CohomologyClass],
) -> Option<DefiningSystem> {
    let n = classes.len();
    let mut ds = DefiningSystem::new(n);
    for (i, j) in DefiningSystem::index_pairs(n) {
        if j == i + 1 {
            ds.set(i, j, random_rep(rng, model, &classes[i - 1])).unwrap();
            continue;
        }
        let target = entry_target(model, &ds, i, j).unwrap();
        let x = model.solve_primitive(&target).ok()?.solution;
        let degree = x.degree();
        let shift = if degree <= model.truncation() {
            combination(rng, model, degree, &model.cocycle_basis(degree).unwrap())
        } else {
            model.presentation().zero(degree)
        };
        ds.set(i, j, x.add(&shift).unwrap()).unwrap();
    }
    Some(ds)
}

/// Classes of the given degrees, retried until consecutive products vanish.
pub fn vanishing_classes(
    rng: &mut ChaCha8Rng,
    model: &DgaModel,
    degrees: &[u32],
    attempts: usize,
) -> Option<Vec<CohomologyClass>> {
    for _ in 0..attempts {
        let classes: Vec<CohomologyClass> = degrees.iter().map(|&d| random_class(rng, model, d)).collect();
        let vanish = classes
            .windows(2)
            .all(|w| model.cup(&w[0], &w[1]).map(|c| c.is_zero()).unwrap_or(false));
        if vanish {
            return Some(classes);
        }
    }
    None
}

/// Image of a monomial-wise polynomial under generator images.
fn evaluate(target: &DgaModel, images: &[GradedVector], v: &GradedVector) -> GradedVector {
    let tp = target.presentation();
    let mut out = tp.zero(v.degree());
    for (m, c) in v.terms() {
        let mut term = tp.one();
        for (i, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                term = tp.multiply(&term, &images[i]).unwrap();
            }
        }
        out = out.add(&term.scale(c)).unwrap();
    }
    out
}

/// A random chain algebra map, built generator by generator: cocycle images
/// for closed generators, primitive plus cocycle otherwise. Needs the source
/// generators in Hirsch order (each differential in the earlier generators).
pub fn random_morphism(
    rng: &mut ChaCha8Rng,
    source: &Arc<DgaModel>,
    target: &Arc<DgaModel>,
    attempts: usize,
) -> Option<DgaMorphism> {
    let sp = source.presentation();
    'attempt: for _ in 0..attempts {
        let mut images: Vec<GradedVector> = Vec::new();
        for (k, g) in sp.generators().iter().enumerate() {
            let deg = g.degree;
            let cocycles = if deg <= target.truncation() {
                target.cocycle_basis(deg).unwrap()
            } else {
                Vec::new()
            };
            let shift = combination(rng, target, deg, &cocycles);
            let dx = &source.differential_images()[k];
            let needed = evaluate(target, &images, dx);
            let image = if needed.is_zero() {
                shift
            } else {
                match target.solve_primitive(&needed) {
                    Ok(p) => p.solution.add(&shift).unwrap(),
                    Err(_) => continue 'attempt,
                }
            };
            images.push(image);
        }
        if let Ok(f) = DgaMorphism::new(source.clone(), target.clone(), images) {
            return Some(f);
        }
    }
    None
}

/// Every single-coefficient perturbation (`c -> c + 1`) of every witness
/// term, base and lifted, with the digest recomputed so that only the
/// algebraic checks can catch it.
pub fn witness_mutations(cert: &BlowupCertificate) -> Vec<(String, BlowupCertificate)> {
    let p = &cert.payload;
    let base = p.base_model.build().unwrap().model;
    let chern: Vec<GradedVector> = p
        .chern
        .iter()
        .enumerate()
        .map(|(i, t)| parse_polynomial(base.presentation(), t, Some(2 * (i as u32 + 1))).unwrap())
        .collect();
    let e = projectivize(base.clone(), ChernData::new(&base, p.k, chern).unwrap()).unwrap();
    let mut out = Vec::new();
    for (which, model) in [("base", base.as_ref()), ("lifted", e.model().as_ref())] {
        let record = if which == "base" { &p.base } else { &p.blowup };
        for (idx, w) in record.witness.iter().enumerate() {
            if w.value == "0" {
                continue;
            }
            let pres = model.presentation();
            let v = parse_polynomial(pres, &w.value, None).unwrap();
            for (m, _) in v.terms() {
                let bumped = v.add(&pres.monomial_vector(m.clone(), pres.field().one())).unwrap();
                let mut bad = cert.clone();
                let rec = if which == "base" { &mut bad.payload.base } else { &mut bad.payload.blowup };
                rec.witness[idx].value = render_vector(pres, &bumped);
                bad.payload_sha256 = payload_digest(&bad.payload);
                let label = format!("{which} x_{}{} term {}", w.i, w.j, pres.render_monomial(m));
                out.push((label, bad));
            }
        }
    }
    out
}
