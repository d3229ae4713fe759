//! Differentials, cohomology by exact linear algebra, primitives, ideals in
//! cohomology, and morphisms between models.

mod cohomology;
mod model;
mod morphism;

pub use cohomology::{CohomologyClass, Membership, Primitive, SubspaceBasis};
pub use model::{validate_differential, DgaModel, ValidationReport};
pub use morphism::DgaMorphism;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GeneratorDecl, GradedVector, Presentation};
    use crate::io::parse_polynomial;
    use crate::models::{heisenberg, kodaira_thurston};
    use crate::scalar::Field;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn kt() -> DgaModel {
        kodaira_thurston(Field::Rational)
    }

    fn v(m: &DgaModel, text: &str) -> GradedVector {
        parse_polynomial(m.presentation(), text, None).unwrap()
    }

    fn class(m: &DgaModel, text: &str) -> CohomologyClass {
        m.class_of(&v(m, text)).unwrap()
    }

    #[test]
    fn kodaira_thurston_betti_numbers() {
        assert_eq!(kt().betti_numbers().unwrap(), vec![1, 3, 4, 3, 1]);
    }

    #[test]
    fn kodaira_thurston_bases_span_the_listed_classes() {
        let m = kt();
        let listed: &[(i64, &[&str])] = &[
            (1, &["x1", "x2", "x4"]),
            (2, &["x1*x4", "x2*x4", "x1*x4 + x2*x3", "x1*x3"]),
            (3, &["x1*x1*x4 + x1*x2*x3", "x4*x1*x4 + x4*x2*x3", "x1*x3*x4"]),
            (4, &["x1*x2*x3*x4"]),
        ];
        for (n, texts) in listed {
            let classes: Vec<_> = texts.iter().map(|t| class(&m, t)).collect();
            let span = m.span_of_classes(*n as u32, &classes).unwrap();
            assert_eq!(span.dim(), m.cohomology_dim(*n as u32).unwrap());
        }
        assert_eq!(
            m.cohomology_basis(4).unwrap()[0].representative(),
            &v(&m, "x1*x2*x3*x4")
        );
    }

    #[test]
    fn primitives() {
        let m = kt();
        let x = m.solve_primitive(&v(&m, "x1*x2")).unwrap();
        assert_eq!(x.solution, v(&m, "x3"));
        let x = m.solve_primitive(&v(&m, "-x1*x2*x4")).unwrap();
        assert_eq!(x.solution, v(&m, "-x3*x4"));
        let zero = m.presentation().zero(2);
        assert!(m.solve_primitive(&zero).unwrap().solution.is_zero());
        match m.solve_primitive(&v(&m, "x1*x3")) {
            Err(crate::Error::NotABoundary { obstruction }) => {
                assert_eq!(*obstruction, v(&m, "x1*x3"))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cup_products() {
        let m = kt();
        let beta = class(&m, "x2");
        let u = class(&m, "x1*x4 + x2*x3");
        assert!(m.cup(&beta, &u).unwrap().is_zero());
        let ag = m.cup(&class(&m, "x1"), &class(&m, "x4")).unwrap();
        assert_eq!(ag, class(&m, "x1*x4"));
        assert_eq!(m.cup(&u, &m.unit_class()).unwrap(), u);
    }

    #[test]
    fn ideal_slice_and_membership() {
        let m = kt();
        let beta = class(&m, "x2");
        let u = class(&m, "x1*x4 + x2*x3");
        let slice = m.ideal_slice(&[beta.clone(), u.clone()], 3).unwrap();
        assert_eq!(slice.dim(), 2);
        let au = m.cup(&class(&m, "x1"), &u).unwrap();
        let gu = m.cup(&class(&m, "x4"), &u).unwrap();
        assert_eq!(m.span_of_classes(3, &[au.clone(), gu]).unwrap(), slice);
        assert!(!m.member(&class(&m, "x1*x3*x4"), &slice).unwrap().is_member());
        assert!(m.member(&au, &slice).unwrap().is_member());
        assert!(m.member(&m.zero_class(3), &slice).unwrap().is_member());

        let ab = m.ideal_slice(&[class(&m, "x1"), beta], 2).unwrap();
        let expected = m
            .span_of_classes(2, &[class(&m, "x1*x4"), class(&m, "x2*x4")])
            .unwrap();
        assert_eq!(ab, expected);
        assert_eq!(m.ideal_slice(&[], 2).unwrap().dim(), 0);
        assert!(matches!(
            m.member(&au, &ab),
            Err(crate::Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn quotient_morphism_to_heisenberg() {
        let src = Arc::new(kt());
        let dst = Arc::new(heisenberg(Field::Rational));
        let f = DgaMorphism::by_name(src.clone(), dst.clone()).unwrap();
        let u = class(&src, "x1*x4 + x2*x3");
        assert_eq!(f.apply_class(&u).unwrap(), class(&dst, "x2*x3"));
        let id = DgaMorphism::identity(src.clone());
        assert_eq!(id.apply_class(&u).unwrap(), u);
        for n in 0..=4 {
            for z in src.cocycle_basis(n).unwrap() {
                assert!(dst.is_cocycle(&f.apply(&z).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn morphism_must_commute_with_d() {
        let src = Arc::new(kt());
        let dst = Arc::new(heisenberg(Field::Rational));
        let p = dst.presentation();
        // x3 -> 0 breaks d x3 = x1 x2
        let images = vec![
            p.generator_vector(0),
            p.generator_vector(1),
            p.zero(1),
            p.zero(1),
        ];
        assert!(matches!(
            DgaMorphism::new(src, dst, images),
            Err(crate::Error::InvalidMorphism(_))
        ));
    }

    #[test]
    fn validation_reports() {
        assert!(kt().validate().unwrap().is_valid());
        let gens = (1..=4).map(|i| GeneratorDecl::new(format!("x{i}"), 1)).collect();
        let p = Presentation::new(Field::Rational, gens, 4).unwrap();
        let images = vec![
            p.zero(2),
            p.zero(2),
            parse_polynomial(&p, "x1*x2", None).unwrap(),
            parse_polynomial(&p, "x3", None).unwrap(),
        ];
        let report = validate_differential(&p, &images).unwrap();
        assert_eq!(report.degree_violations, vec!["x4".to_string()]);
        assert!(report
            .d_squared_failures
            .contains(&crate::algebra::Monomial::generator(4, 3)));
        assert!(DgaModel::new(p, images).is_err());
    }

    #[test]
    fn euler_characteristic_and_idempotence() {
        let m = kt();
        assert_eq!(
            m.euler_characteristic_chains().unwrap(),
            m.euler_characteristic_cohomology().unwrap()
        );
        for n in 0..=4 {
            for c in m.cohomology_basis(n).unwrap() {
                assert_eq!(m.class_of(c.representative()).unwrap(), c);
            }
        }
    }

    #[test]
    fn zero_differential_cohomology_is_the_algebra() {
        let m = crate::models::torus(5, Field::Prime(7));
        for n in 0..=5 {
            assert_eq!(m.cohomology_dim(n).unwrap(), m.dimension(n).unwrap());
        }
    }

    #[test]
    fn degree_out_of_range() {
        assert!(matches!(
            kt().cohomology_basis(5),
            Err(crate::Error::DegreeOutOfRange { degree: 5, max: 4 })
        ));
        assert!(kt().cohomology_basis(-1).is_err());
    }

    /// Membership by brute force over F_3: enumerate every combination of
    /// generator-times-basis products.
    #[test]
    fn membership_matches_brute_force_over_f3() {
        let m = kodaira_thurston(Field::Prime(3));
        let f = Field::Prime(3);
        let beta = class(&m, "x2");
        let u = class(&m, "x1*x4 + x2*x3");
        let gens = [beta, u];
        let n = 3u32;
        let mut products = Vec::new();
        for g in &gens {
            for h in m.cohomology_basis((n - g.degree()) as i64).unwrap() {
                products.push(m.cup(g, &h).unwrap());
            }
        }
        let slice = m.ideal_slice(&gens, n as i64).unwrap();
        let mut reachable = std::collections::HashSet::new();
        let total = 3usize.pow(products.len() as u32);
        for code in 0..total {
            let mut c = code;
            let mut acc = m.zero_class(n);
            for p in &products {
                let k = (c % 3) as i64;
                c /= 3;
                acc = m.add_classes(&acc, &m.scale_class(p, &f.from_i64(k)).unwrap()).unwrap();
            }
            reachable.insert(acc);
        }
        let basis = m.cohomology_basis(n as i64).unwrap();
        for code in 0..27usize {
            let coords: Vec<_> = (0..3).map(|i| f.from_i64(((code / 3usize.pow(i)) % 3) as i64)).collect();
            let c = m.class_from_coordinates(n, &coords).unwrap();
            assert_eq!(basis.len(), 3);
            assert_eq!(m.member(&c, &slice).unwrap().is_member(), reachable.contains(&c));
        }
    }

    fn kt_vector(deg: u32) -> impl Strategy<Value = GradedVector> {
        let m = kt();
        let size = m.dimension(deg).unwrap();
        prop::collection::vec(-3i64..=3, size).prop_map(move |coeffs| {
            let m = kt();
            let row: Vec<_> = coeffs.iter().map(|&c| Field::Rational.from_i64(c)).collect();
            m.from_dense(deg, &row).unwrap()
        })
    }

    proptest! {
        #[test]
        fn leibniz_rule(a in kt_vector(1), b in kt_vector(2)) {
            let m = kt();
            let p = m.presentation();
            let lhs = m.d(&p.multiply(&a, &b).unwrap()).unwrap();
            let rhs = p.multiply(&m.d(&a).unwrap(), &b).unwrap()
                .add(&p.multiply(&a.bar(), &m.d(&b).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn primitive_of_a_boundary(x in kt_vector(2)) {
            let m = kt();
            let dx = m.d(&x).unwrap();
            let y = m.solve_primitive(&dx).unwrap().solution;
            prop_assert_eq!(m.d(&y).unwrap(), dx);
        }
    }
}
