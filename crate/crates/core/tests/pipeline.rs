//! Blow-up certificates built from the essential triple <alpha, alpha, beta>,
//! their mutation resistance, and projectivization structure.

mod common;

use std::sync::Arc;

use common::*;
use massey::dga::DgaModel;
use massey::io::bundled_model;
use massey::models::{
    blowup_certificate, kodaira_thurston, projectivize, verify_certificate, BlowupCertificate, ChernData, Route,
};
use massey::scalar::Field;
use rand::Rng;

fn alpha_alpha_beta(route: Route, k: u32, chern: Option<ChernData>) -> BlowupCertificate {
    let m = bundled_model("kodaira_thurston").unwrap().build().unwrap();
    let [a, b] = ["alpha", "beta"].map(|l| m.class(l).unwrap());
    let chern = chern.unwrap_or_else(|| ChernData::zero(&m.model, k));
    blowup_certificate(m.model.clone(), chern, route, [("alpha", &a), ("alpha", &a), ("beta", &b)]).unwrap()
}

fn random_chern(rng: &mut rand_chacha::ChaCha8Rng, base: &DgaModel, k: u32) -> ChernData {
    let classes = (1..=k + 1)
        .map(|i| {
            let deg = 2 * i;
            if deg <= base.truncation() && rng.gen_bool(0.7) {
                combination(rng, base, deg, &base.cocycle_basis(deg).unwrap())
            } else {
                base.presentation().zero(deg)
            }
        })
        .collect();
    ChernData::new(base, k, classes).unwrap()
}

#[test]
fn every_witness_mutation_is_rejected() {
    for (route, k) in [(Route::FullTriple, 3), (Route::RestrictedClass, 2)] {
        let cert = alpha_alpha_beta(route, k, None);
        assert!(verify_certificate(&cert).passed());
        let mutations = witness_mutations(&cert);
        assert!(mutations.len() >= 4);
        for (label, bad) in &mutations {
            let report = verify_certificate(bad);
            let failed = report.first_failure().unwrap_or_else(|| panic!("{route} {label}: mutation passed"));
            assert_ne!(failed.name, "payload-digest", "{route} {label}");
            let expected = if label.starts_with("base") { "base-witness" } else { "witness" };
            assert_eq!(failed.name, expected, "{route} {label}");
        }
    }
}

#[test]
fn unsealed_tampering_trips_the_digest() {
    let cert = alpha_alpha_beta(Route::FullTriple, 3, None);
    let mut bad = cert.clone();
    bad.payload.conclusion.push("extra".into());
    let report = verify_certificate(&bad);
    assert_eq!(report.first_failure().map(|c| c.name), Some("payload-digest"));
}

#[test]
fn certificates_with_random_chern_data_verify() {
    let mut rng = rng(21);
    let base = Arc::new(kodaira_thurston(Field::Rational));
    for _ in 0..6 {
        for (route, k) in [(Route::FullTriple, 3), (Route::RestrictedClass, 2)] {
            let chern = random_chern(&mut rng, &base, k);
            let cert = alpha_alpha_beta(route, k, Some(chern));
            let report = verify_certificate(&cert);
            assert!(report.passed(), "{:?}", report.first_failure());
            let again = BlowupCertificate::from_json(&cert.to_json()).unwrap();
            assert_eq!(again.to_json(), cert.to_json());
        }
    }
}

#[test]
fn certificates_are_deterministic() {
    let a = alpha_alpha_beta(Route::FullTriple, 4, None).to_json();
    let b = alpha_alpha_beta(Route::FullTriple, 4, None).to_json();
    assert_eq!(a, b);
}

#[test]
fn projectivization_structure_holds() {
    let mut rng = rng(22);
    for i in 0..12 {
        let field = if i % 2 == 0 { Field::Rational } else { Field::prime(5).unwrap() };
        let base = random_model(&mut rng, field, 5, 4);
        let k = rng.gen_range(1..=3);
        let e = projectivize(base.clone(), random_chern(&mut rng, &base, k)).unwrap();
        assert!(e.model().validate().unwrap().is_valid());
        assert!(e.leray_hirsch().iter().all(|r| r.total == r.expected));
        assert!(e.fiber_generates().unwrap());
        // decompose and reassemble are mutually inverse.
        for n in 0..=e.model().truncation() {
            if e.model().cohomology_dim(n).unwrap() == 0 {
                continue;
            }
            let a = random_class(&mut rng, e.model(), n);
            let parts = e.decompose(&a).unwrap();
            assert_eq!(parts.len(), k as usize + 1);
            assert_eq!(e.reassemble(&parts, n).unwrap(), a);
            let again = e.decompose(&e.reassemble(&parts, n).unwrap()).unwrap();
            assert_eq!(again, parts);
        }
    }
}

#[test]
fn projectivization_iterates() {
    let base = Arc::new(kodaira_thurston(Field::Rational));
    let once = projectivize(base.clone(), ChernData::zero(&base, 1)).unwrap();
    let twice = projectivize(once.model().clone(), ChernData::zero(once.model(), 1)).unwrap();
    assert!(twice.model().validate().unwrap().is_valid());
    assert!(twice.leray_hirsch().iter().all(|r| r.total == r.expected));
    assert!(twice.fiber_generates().unwrap());
    let dims = twice.model().betti_numbers().unwrap();
    // Two CP^1 factors: Poincare polynomial (1+t^2)^2 times that of the base.
    let b = [1usize, 3, 4, 3, 1];
    let expected: Vec<usize> = (0..=8)
        .map(|n: usize| {
            [(0usize, 1usize), (2, 2), (4, 1)]
                .iter()
                .filter(|(s, _)| *s <= n && n - s < b.len())
                .map(|(s, c)| c * b[n - s])
                .sum()
        })
        .collect();
    assert_eq!(dims, expected);
}
