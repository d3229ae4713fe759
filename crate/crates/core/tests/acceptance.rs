//! Acceptance suite: one test per criterion, each printing a PASS or FAIL line.
//!
//! Run with `cargo test -p massey --test acceptance -- --nocapture --test-threads 1`
//! to see the lines in order.

mod common;

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::*;
use massey::algebra::GradedVector;
use massey::cli;
use massey::dga::{CohomologyClass, DgaModel};
use massey::io::{bundled_model, parse_polynomial, LoadedModel};
use massey::massey::{
    c_of, massey_nfold_exhaustive, scale_defining_system, triple_massey, validate_defining_system,
    Essentiality, MasseyStatus, DEFAULT_BUDGET,
};
use massey::models::{
    chevalley_eilenberg, chevalley_eilenberg_unchecked, cp, kodaira_thurston, point, projectivize, torus,
    verify_certificate, BlowupCertificate, ChernData, LieAlgebraData,
};
use massey::scalar::Field;
use massey::Error;
use rand::Rng;

/// Prints the verdict line and fails the test when anything went wrong.
fn conclude(number: u32, title: &str, notes: &[String], failures: &[String]) {
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {number} ({title}): {verdict}");
    for n in notes {
        println!("    {n}");
    }
    for f in failures.iter().take(12) {
        println!("    failed: {f}");
    }
    if failures.len() > 12 {
        println!("    ... and {} more", failures.len() - 12);
    }
    assert!(failures.is_empty(), "criterion {number} failed: {}", failures.join("; "));
}

fn within(limit: Duration, started: Instant, failures: &mut Vec<String>) -> String {
    let took = started.elapsed();
    if took > limit {
        failures.push(format!("runtime {took:?} exceeds {limit:?}"));
    }
    format!("runtime {took:?} (limit {limit:?})")
}

fn kt(field: Field) -> LoadedModel {
    let mut file = bundled_model("kodaira_thurston").unwrap();
    file.field = massey::io::field_name(field);
    file.build().unwrap()
}

fn class(m: &DgaModel, text: &str) -> CohomologyClass {
    m.class_of(&parse_polynomial(m.presentation(), text, None).unwrap()).unwrap()
}

fn coordinates(m: &DgaModel, c: &CohomologyClass) -> String {
    format!("{:?}", m.class_coordinates(c).unwrap())
}

/// Every class `rep + sum c_i v_i` over a prime field, by coordinates.
fn coset(m: &DgaModel, rep: &CohomologyClass, basis: &[GradedVector], p: u32) -> BTreeSet<String> {
    let field = m.presentation().field();
    let mut out = BTreeSet::new();
    let total = (p as u64).pow(basis.len() as u32);
    for code in 0..total {
        let mut v = rep.representative().clone();
        let mut rest = code;
        for b in basis {
            let c = field.from_i64((rest % p as u64) as i64);
            rest /= p as u64;
            v = v.add(&b.scale(&c)).unwrap();
        }
        out.insert(coordinates(m, &m.class_of(&v).unwrap()));
    }
    out
}

#[test]
fn criterion_1_kodaira_thurston_cohomology() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let m = kt(Field::Rational);
    let model = &m.model;
    let dims = model.betti_numbers().unwrap();
    if dims != [1, 3, 4, 3, 1] {
        failures.push(format!("dims {dims:?}, expected (1,3,4,3,1)"));
    }
    let a = m.class("alpha").unwrap();
    let b = m.class("beta").unwrap();
    let g = m.class("gamma").unwrap();
    let u = m.class("u").unwrap();
    let cup = |x: &CohomologyClass, y: &CohomologyClass| model.cup(x, y).unwrap();
    let listed: [(u32, Vec<CohomologyClass>); 3] = [
        (1, vec![a.clone(), b.clone(), g.clone()]),
        (2, vec![cup(&a, &g), cup(&b, &g), u.clone(), class(model, "x1*x3")]),
        (3, vec![cup(&a, &u), cup(&g, &u), class(model, "x1*x3*x4")]),
    ];
    for (n, classes) in &listed {
        let span = model.span_of_classes(*n, classes).unwrap();
        let dim = model.cohomology_dim(*n).unwrap();
        if span.dim() != dim || classes.len() != dim {
            failures.push(format!("listed H^{n} classes span dimension {}, H^{n} has {dim}", span.dim()));
        }
    }
    let timing = within(Duration::from_secs(1), started, &mut failures);
    conclude(
        1,
        "Kodaira-Thurston cohomology",
        &[format!("dims {dims:?}"), timing],
        &failures,
    );
}

#[test]
fn criterion_2_triple_products_on_kodaira_thurston() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let m = kt(Field::Rational);
    let model = &m.model;
    let [a, b, g, u] = ["alpha", "beta", "gamma", "u"].map(|l| m.class(l).unwrap());
    let v = triple_massey(model, &b, &b, &u).unwrap();
    if v.status != MasseyStatus::NonEmpty {
        failures.push(format!("<beta, beta, u> status {}", v.status));
    } else {
        let rep = v.representative.clone().unwrap();
        let ind = v.indeterminacy.clone().unwrap();
        notes.push(format!(
            "<beta, beta, u> representative [{}]",
            massey::io::render_vector(model.presentation(), rep.representative())
        ));
        let expected = class(model, "-x1*x3*x4");
        let diff = model
            .class_of(&rep.representative().sub(expected.representative()).unwrap())
            .unwrap();
        if !model.member(&diff, &ind).unwrap().is_member() {
            failures.push("<beta, beta, u> representative differs from -[x1*x3*x4] modulo (beta, u)".into());
        }
        let ideal = model
            .span_of_classes(3, &[model.cup(&a, &u).unwrap(), model.cup(&g, &u).unwrap()])
            .unwrap();
        let same = ind.dim() == 2
            && ideal.dim() == 2
            && ind
                .vectors()
                .iter()
                .all(|x| model.member(&model.class_of(x).unwrap(), &ideal).unwrap().is_member());
        if same {
            notes.push("indeterminacy slice = span{alpha u, gamma u}, dimension 2".into());
        } else {
            failures.push(format!("indeterminacy dimension {}, expected span{{alpha u, gamma u}}", ind.dim()));
        }
        // The representative -[x2*x3*x4] is a multiple of gamma u.
        if model.member(&rep, &ind).unwrap().is_member() {
            notes.push("representative lies in the (beta, u) slice: [x2*x3*x4] = -gamma u".into());
        }
    }
    if v.essential != Essentiality::Essential {
        failures.push(format!("<beta, beta, u> verdict {}, expected Essential", v.essential));
    }
    let w = triple_massey(model, &a, &a, &b).unwrap();
    if w.essential != Essentiality::Essential {
        failures.push(format!("<alpha, alpha, beta> verdict {}", w.essential));
    } else {
        notes.push("<alpha, alpha, beta> Essential".into());
    }
    notes.push(within(Duration::from_secs(1), started, &mut failures));
    conclude(2, "triple products on Kodaira-Thurston", &notes, &failures);
}

#[test]
fn criterion_3_coset_law_mod_5() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let m = kt(Field::prime(5).unwrap());
    let model = &m.model;
    let [b, u] = ["beta", "u"].map(|l| m.class(l).unwrap());
    let v = triple_massey(model, &b, &b, &u).unwrap();
    let set = massey_nfold_exhaustive(model, &[b.clone(), b.clone(), u.clone()], Some(DEFAULT_BUDGET)).unwrap();
    let found: BTreeSet<String> = set.values().iter().map(|c| coordinates(model, c)).collect();
    let expected = coset(
        model,
        v.representative.as_ref().unwrap(),
        v.indeterminacy.as_ref().unwrap().vectors(),
        5,
    );
    if found != expected {
        failures.push(format!("exhaustive set has {} classes, coset has {}", found.len(), expected.len()));
    }
    let timing = within(Duration::from_secs(60), started, &mut failures);
    conclude(
        3,
        "coset law for <beta, beta, u> over F5",
        &[format!("{} values, equal to representative + ideal slice", found.len()), timing],
        &failures,
    );
}

#[test]
fn criterion_4_scaling_construction() {
    let mut rng = rng(4);
    let mut failures = Vec::new();
    let mut done = [0usize; 2];
    let mut nonzero = 0usize;
    let mut attempts = 0usize;
    for (slot, field) in [Field::Rational, Field::prime(3).unwrap()].into_iter().enumerate() {
        while done[slot] < 50 {
            attempts += 1;
            assert!(attempts < 20_000, "could not draw enough defining systems");
            let model = random_model(&mut rng, field, 8, 6);
            let degrees = positive_degrees(&model);
            if degrees.is_empty() {
                continue;
            }
            let n = if rng.gen_bool(0.8) { 3 } else { 4 };
            let picked: Vec<u32> = (0..n).map(|_| degrees[rng.gen_range(0..degrees.len())]).collect();
            let out_degree = picked.iter().sum::<u32>() + 2 - n as u32;
            if out_degree > model.truncation() {
                continue;
            }
            let Some(classes) = vanishing_classes(&mut rng, &model, &picked, 10) else {
                continue;
            };
            let Some(ds) = random_defining_system(&mut rng, &model, &classes) else {
                continue;
            };
            // The scaling class must have a central representative: even degree.
            let xi_degrees: Vec<u32> = (0..=model.truncation() - out_degree)
                .filter(|e| e % 2 == 0 && model.cohomology_dim(*e).unwrap() > 0)
                .collect();
            let e = xi_degrees[rng.gen_range(0..xi_degrees.len())];
            let xi = random_class(&mut rng, &model, e);
            let k = rng.gen_range(1..=n);
            let tag = format!("{field} model #{} k={k} |xi|={e}", done[slot]);
            let scaled = match scale_defining_system(&model, &ds, &xi, k) {
                Ok(s) => s,
                Err(err) => {
                    failures.push(format!("{tag}: {err}"));
                    done[slot] += 1;
                    continue;
                }
            };
            let mut new_classes = classes.clone();
            new_classes[k - 1] = model.cup(&xi, &classes[k - 1]).unwrap();
            let report = validate_defining_system(&model, &scaled.system, &new_classes).unwrap();
            if !report.is_valid() {
                failures.push(format!("{tag}: scaled system invalid at {}", report.issues[0]));
            } else {
                let cx = c_of(&model, &ds).unwrap();
                let cy = c_of(&model, &scaled.system).unwrap();
                let expected = model.cup(&xi, &cx).unwrap();
                if cy != expected {
                    failures.push(format!("{tag}: c(Y) differs from xi c(X)"));
                }
                if !cy.is_zero() {
                    nonzero += 1;
                }
            }
            done[slot] += 1;
        }
    }
    conclude(
        4,
        "scaling of defining systems",
        &[format!(
            "{} systems over Q, {} over F3; {nonzero} with nonzero c(Y)",
            done[0], done[1]
        )],
        &failures,
    );
}

#[test]
fn criterion_5_naturality() {
    let mut rng = rng(5);
    let mut failures = Vec::new();
    let mut done = 0usize;
    let mut nonzero = 0usize;
    let mut attempts = 0usize;
    while done < 100 {
        attempts += 1;
        assert!(attempts < 20_000, "could not draw enough morphisms");
        let field = if done % 2 == 0 { Field::Rational } else { Field::prime(3).unwrap() };
        let source = random_model(&mut rng, field, 6, 5);
        let target = if rng.gen_bool(0.3) {
            source.clone()
        } else {
            let t = random_model(&mut rng, field, 6, source.truncation());
            if t.truncation() > source.truncation() {
                continue;
            }
            t
        };
        let Some(f) = random_morphism(&mut rng, &source, &target, 20) else {
            continue;
        };
        let degrees = positive_degrees(&source);
        if degrees.is_empty() {
            continue;
        }
        let picked: Vec<u32> = (0..3).map(|_| degrees[rng.gen_range(0..degrees.len())]).collect();
        if picked.iter().sum::<u32>() - 1 > source.truncation() {
            continue;
        }
        let Some(classes) = vanishing_classes(&mut rng, &source, &picked, 10) else {
            continue;
        };
        let Some(ds) = random_defining_system(&mut rng, &source, &classes) else {
            continue;
        };
        let tag = format!("{field} morphism #{done}");
        let image = ds.map(|_, _, v| f.apply(v)).unwrap();
        let pushed: Vec<CohomologyClass> = classes.iter().map(|c| f.apply_class(c).unwrap()).collect();
        let report = validate_defining_system(&target, &image, &pushed).unwrap();
        if !report.is_valid() {
            failures.push(format!("{tag}: f(X) invalid at {}", report.issues[0]));
        } else {
            let lhs = c_of(&target, &image).unwrap();
            let rhs = f.apply_class(&c_of(&source, &ds).unwrap()).unwrap();
            if lhs != rhs {
                failures.push(format!("{tag}: c(f X) differs from f_* c(X)"));
            }
            if !lhs.is_zero() {
                nonzero += 1;
            }
        }
        done += 1;
    }
    conclude(
        5,
        "naturality under morphisms",
        &[format!("{done} morphisms; {nonzero} with nonzero c(f X)")],
        &failures,
    );
}

#[test]
fn criterion_6_leray_hirsch() {
    let started = Instant::now();
    let mut rng = rng(6);
    let mut failures = Vec::new();
    let mut cases = 0usize;
    let q = Field::Rational;
    let bases: [(&str, Arc<DgaModel>); 3] = [
        ("point", Arc::new(point(q))),
        ("torus-2", Arc::new(torus(2, q))),
        ("kodaira_thurston", Arc::new(kodaira_thurston(q))),
    ];
    for (name, base) in &bases {
        let b_dims = base.betti_numbers().unwrap();
        for k in 1..=3u32 {
            for random in [false, true] {
                let chern = if random {
                    let classes = (1..=k + 1)
                        .map(|i| {
                            let deg = 2 * i;
                            if deg <= base.truncation() {
                                combination(&mut rng, base, deg, &base.cocycle_basis(deg).unwrap())
                            } else {
                                base.presentation().zero(deg)
                            }
                        })
                        .collect();
                    ChernData::new(base, k, classes).unwrap()
                } else {
                    ChernData::zero(base, k)
                };
                let e = match projectivize(base.clone(), chern) {
                    Ok(e) => e,
                    Err(err) => {
                        failures.push(format!("{name} k={k}: {err}"));
                        continue;
                    }
                };
                let model = e.model();
                for n in 0..=model.truncation() {
                    let expected: usize = (0..=k)
                        .filter_map(|i| (n as i64 - 2 * i as i64).try_into().ok())
                        .map(|m: usize| b_dims.get(m).copied().unwrap_or(0))
                        .sum();
                    let got = model.cohomology_dim(n).unwrap();
                    if got != expected {
                        failures.push(format!(
                            "{name} k={k} {} chern: dim H^{n} = {got}, expected {expected}",
                            if random { "random" } else { "zero" }
                        ));
                    }
                }
                cases += 1;
            }
        }
    }
    let timing = within(Duration::from_secs(30), started, &mut failures);
    conclude(
        6,
        "Leray-Hirsch dimensions",
        &[format!("{cases} projectivizations checked in every degree"), timing],
        &failures,
    );
}

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let args: Vec<OsString> = std::iter::once("massey").chain(args.iter().copied()).map(OsString::from).collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(args, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn criterion_7_blowup_pipeline() {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let m = kt(Field::Rational);
    let [b, u] = ["beta", "u"].map(|l| m.class(l).unwrap());
    for (k, exps) in [(2u32, [1u32, 1, 0]), (3, [1, 1, 1])] {
        let e = projectivize(m.model.clone(), ChernData::zero(&m.model, k)).unwrap();
        match e.transferred_massey(&b, &b, &u, exps) {
            Ok((_, v)) if v.is_essential() => notes.push(format!("k={k} {exps:?}: Essential")),
            Ok((_, v)) => failures.push(format!("k={k} {exps:?}: verdict {}", v.essential)),
            Err(err) => failures.push(format!("k={k} {exps:?}: {err}")),
        }
    }
    let dir = tempfile::tempdir().unwrap();
    let routes: [(&str, &str, &str); 2] = [("3", "--triple", "full.json"), ("2", "--triple-restricted", "restricted.json")];
    for (k, flag, file) in routes {
        let path = dir.path().join(file);
        let path_text = path.to_str().unwrap();
        let (code, _, err) = run_cli(&["blowup", "kodaira_thurston", "--k", k, flag, "beta", "beta", "u", "--out", path_text]);
        if code != 0 {
            failures.push(format!("blowup --k {k} {flag} beta beta u exited {code}: {}", err.trim()));
            continue;
        }
        let (code, out, _) = run_cli(&["verify", path_text]);
        if code != 0 {
            failures.push(format!("verify of the k={k} certificate exited {code}: {out}"));
        }
        let cert = BlowupCertificate::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let mutations = witness_mutations(&cert);
        let caught = mutations.iter().filter(|(_, bad)| !verify_certificate(bad).passed()).count();
        if caught != mutations.len() || mutations.is_empty() {
            failures.push(format!("k={k}: {caught} of {} witness mutations rejected", mutations.len()));
        } else {
            notes.push(format!("k={k}: all {} witness mutations rejected", mutations.len()));
        }
    }
    conclude(7, "blow-up pipeline for <beta, beta, u>", &notes, &failures);
}

#[test]
fn criterion_8_exhaustive_oracle() {
    let mut rng = rng(8);
    let mut failures = Vec::new();
    let mut done = 0usize;
    let mut nonempty = 0usize;
    let mut attempts = 0usize;
    while done < 50 {
        attempts += 1;
        assert!(attempts < 20_000, "could not draw enough models");
        let p = if done % 2 == 0 { 3 } else { 5 };
        let field = Field::prime(p).unwrap();
        let model = random_model(&mut rng, field, 5, 5);
        let degrees = positive_degrees(&model);
        if degrees.is_empty() {
            continue;
        }
        let picked: Vec<u32> = (0..3).map(|_| degrees[rng.gen_range(0..degrees.len())]).collect();
        if picked.iter().sum::<u32>() - 1 > model.truncation() {
            continue;
        }
        let classes = match vanishing_classes(&mut rng, &model, &picked, 10) {
            Some(c) => c,
            None => picked.iter().map(|&d| random_class(&mut rng, &model, d)).collect(),
        };
        let tag = format!("F{p} model #{done}");
        let v = triple_massey(&model, &classes[0], &classes[1], &classes[2]).unwrap();
        let set = match massey_nfold_exhaustive(&model, &classes, Some(DEFAULT_BUDGET)) {
            Ok(s) => s,
            Err(Error::BudgetExceeded { .. }) => continue,
            Err(err) => {
                failures.push(format!("{tag}: {err}"));
                done += 1;
                continue;
            }
        };
        let found: BTreeSet<String> = set.values().iter().map(|c| coordinates(&model, c)).collect();
        let expected = match (&v.representative, &v.indeterminacy) {
            (Some(rep), Some(ind)) => coset(&model, rep, ind.vectors(), p),
            _ => BTreeSet::new(),
        };
        if found != expected {
            failures.push(format!(
                "{tag}: exhaustive {} classes, representative + ideal {} classes",
                found.len(),
                expected.len()
            ));
        }
        if !found.is_empty() {
            nonempty += 1;
        }
        done += 1;
    }
    conclude(
        8,
        "exhaustive enumeration against the triple-product coset",
        &[format!("{done} models over F3 and F5; {nonempty} nonempty products")],
        &failures,
    );
}

/// Brute-force Jacobi on an integer table `[e_i, e_j] = sum_k t[i][j][k] e_k`.
fn jacobi_holds(t: &[Vec<Vec<i64>>]) -> bool {
    let n = t.len();
    let bracket = |x: &[i64], y: &[i64]| -> Vec<i64> {
        let mut out = vec![0; n];
        for i in 0..n {
            for j in 0..n {
                if x[i] != 0 && y[j] != 0 {
                    for k in 0..n {
                        out[k] += x[i] * y[j] * t[i][j][k];
                    }
                }
            }
        }
        out
    };
    let unit = |i: usize| -> Vec<i64> { (0..n).map(|k| i64::from(k == i)).collect() };
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let (x, y, z) = (unit(i), unit(j), unit(l));
                let a = bracket(&bracket(&x, &y), &z);
                let b = bracket(&bracket(&y, &z), &x);
                let c = bracket(&bracket(&z, &x), &y);
                if (0..n).any(|k| a[k] + b[k] + c[k] != 0) {
                    return false;
                }
            }
        }
    }
    true
}

#[test]
fn criterion_9_structural_validity() {
    let mut rng = rng(9);
    let mut failures = Vec::new();
    let mut models: Vec<(String, Arc<DgaModel>)> = Vec::new();
    let mut names: Vec<String> = vec!["kodaira_thurston".into(), "heisenberg".into()];
    names.extend((1..=6).map(|n| format!("torus-{n}")));
    names.extend((1..=6).map(|n| format!("cp-{n}")));
    names.extend(["iwasawa-1-1", "iwasawa-1-2", "iwasawa-2-2"].map(String::from));
    for name in &names {
        match bundled_model(name).and_then(|f| f.build()) {
            Ok(m) => models.push((name.clone(), m.model)),
            Err(err) => failures.push(format!("bundled {name}: {err}")),
        }
    }
    models.push(("cp-4 (constructor)".into(), Arc::new(cp(4, Field::Rational))));
    for i in 0..60 {
        let field = [Field::Rational, Field::prime(3).unwrap(), Field::prime(5).unwrap()][i % 3];
        models.push((format!("random {field} #{i}"), random_model(&mut rng, field, 8, 6)));
    }
    let kt = Arc::new(kodaira_thurston(Field::Rational));
    for k in 1..=2 {
        let e = projectivize(kt.clone(), ChernData::zero(&kt, k)).unwrap();
        models.push((format!("P(kodaira_thurston, k={k})"), e.model().clone()));
    }
    let model_count = models.len();
    for (name, m) in &models {
        match m.validate() {
            Ok(r) if r.is_valid() => {}
            Ok(r) => failures.push(format!("{name}: d^2 fails on {} monomials", r.d_squared_failures.len())),
            Err(err) => failures.push(format!("{name}: {err}")),
        }
        match m.leibniz_violation(1 << 14) {
            Ok((None, _)) => {}
            Ok((Some((a, b)), _)) => failures.push(format!(
                "{name}: Leibniz fails on ({}, {})",
                m.presentation().render_monomial(&a),
                m.presentation().render_monomial(&b)
            )),
            Err(err) => failures.push(format!("{name}: {err}")),
        }
    }
    // Structure constants: half two-step nilpotent (Jacobi holds), half arbitrary.
    let (mut valid, mut invalid) = (0, 0);
    for t in 0..100 {
        let n = rng.gen_range(3..=5);
        let mut table = vec![vec![vec![0i64; n]; n]; n];
        let center = rng.gen_range(1..n);
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let allowed = if t % 2 == 0 { k >= n - center && i < n - center && j < n - center } else { true };
                    let p_nonzero = if t % 2 == 0 { 0.5 } else { 0.25 };
                    if allowed && rng.gen_bool(p_nonzero) {
                        let c = [-1, 1, 2][rng.gen_range(0..3)];
                        table[i][j][k] = c;
                        table[j][i][k] = -c;
                    }
                }
            }
        }
        let holds = jacobi_holds(&table);
        if holds {
            valid += 1;
        } else {
            invalid += 1;
        }
        let mut lie = LieAlgebraData::abelian(n, Field::Rational);
        for i in 0..n {
            for j in i + 1..n {
                let coeffs = table[i][j].iter().map(|&c| Field::Rational.from_i64(c)).collect();
                lie.set_bracket(i, j, coeffs).unwrap();
            }
        }
        let accepted = match chevalley_eilenberg(&lie) {
            Ok(m) => {
                if !m.validate().unwrap().is_valid() {
                    failures.push(format!("table {t}: accepted model has d^2 != 0"));
                }
                true
            }
            Err(Error::JacobiFailure(..)) => false,
            Err(err) => {
                failures.push(format!("table {t}: {err}"));
                continue;
            }
        };
        if accepted != holds {
            failures.push(format!("table {t}: Jacobi {holds}, accepted {accepted}"));
        }
        let d2_zero = chevalley_eilenberg_unchecked(&lie).unwrap().validate().unwrap().is_valid();
        if d2_zero != holds {
            failures.push(format!("table {t}: Jacobi {holds} but d^2 = 0 is {d2_zero}"));
        }
    }
    if valid == 0 || invalid == 0 {
        failures.push(format!("degenerate sample: {valid} Jacobi tables, {invalid} violating"));
    }
    conclude(
        9,
        "structural validity",
        &[
            format!("{model_count} models satisfy d^2 = 0 and the Leibniz rule"),
            format!("{valid} Jacobi tables accepted, {invalid} violating tables rejected"),
        ],
        &failures,
    );
}
