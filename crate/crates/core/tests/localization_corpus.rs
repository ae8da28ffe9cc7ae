use halfdisk::disks::{self, Containment, RadiusKind};
use halfdisk::generators;
use halfdisk::linalg::{self, ComplexMatrix};
use halfdisk::localization::{self, LocalizeOptions};
use halfdisk::{Complex, Error};
use proptest::prelude::*;

#[test]
fn classic_gershgorin_covers_every_eigenvalue() {
    let mut corpus: Vec<ComplexMatrix<f64>> = ["a3", "b5", "c7", "hesse-h"]
        .iter()
        .map(|id| generators::named::<f64>(id).unwrap().matrix)
        .collect();
    corpus.extend((0..40).map(|s| generators::random_nonneg_matrix(2 + s as usize % 10, s).unwrap()));
    corpus.extend((0..20).map(|s| generators::random_multiple_eigenvalue_matrix(1 + s as usize % 6, s, s % 2 == 0).unwrap()));
    for m in &corpus {
        let full = disks::disk_set(m, RadiusKind::Full).unwrap();
        for lambda in linalg::eigenvalues(m).unwrap() {
            let covered = full.iter().any(|d| {
                let band = 1e-8 * (d.center.norm() + d.radius).max(1.0);
                disks::classify(lambda, d, band).is_covered()
            });
            assert!(covered, "{lambda} escapes every Gershgorin disk");
        }
    }
}

#[test]
fn median_dominance_on_random_rows() {
    for seed in 0..1000u64 {
        let n = 1 + seed as usize % 12;
        let m = generators::random_nonneg_matrix::<f64>(n, seed).unwrap();
        for i in 0..n {
            let med = disks::median_radius(&m, i).unwrap();
            let c2 = disks::corollary2_radius(&m, i).unwrap();
            let half = disks::half_radius(&m, i).unwrap();
            assert!(med.radius <= c2 + 1e-12, "seed {seed} row {i}");
            assert!(med.radius <= half + med.b_star + 1e-12);
            assert!(med.literal_radius + med.b_star - med.radius <= 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn radii_are_monotone(n in 2usize..12, seed in any::<u64>()) {
        let m = generators::random_nonneg_matrix::<f64>(n, seed).unwrap();
        for i in 0..n {
            let mut prev = -1.0;
            for c in 0..n {
                let r = disks::fraction_radius(&m, i, c).unwrap();
                prop_assert!(r >= prev);
                prev = r;
            }
            let half = disks::half_radius(&m, i).unwrap();
            let c2 = disks::corollary2_radius(&m, i).unwrap();
            let full = disks::full_radius(&m, i).unwrap();
            prop_assert!(half <= c2 && c2 <= full);
            prop_assert!(disks::third_radius(&m, i).unwrap() <= c2);
        }
    }

    #[test]
    fn radii_scale_with_the_matrix(n in 1usize..10, seed in any::<u64>(), t in 0.01f64..100.0) {
        let m = generators::random_nonneg_matrix::<f64>(n, seed).unwrap();
        let s = m.scaled(t);
        for kind in [RadiusKind::Full, RadiusKind::Half, RadiusKind::Median, RadiusKind::Corollary2, RadiusKind::Third, RadiusKind::Fraction(n / 4)] {
            let a = disks::disk_set(&m, kind).unwrap();
            let b = disks::disk_set(&s, kind).unwrap();
            for (x, y) in a.iter().zip(&b) {
                prop_assert!((y.radius - t * x.radius).abs() <= 1e-12 * (t * x.radius).max(1e-300));
                prop_assert!((y.center - x.center * t).norm() <= 1e-12 * (t * x.center.norm()).max(1e-300));
            }
        }
    }
}

#[test]
fn multiple_eigenvalues_lie_in_half_disks() {
    let mut median_wins = 0;
    let mut total = 0;
    for seed in 0..120u64 {
        let k = 1 + seed as usize % 8;
        let m = generators::random_multiple_eigenvalue_matrix::<f64>(k, seed, seed % 2 == 1).unwrap();
        let report = localization::verify_half_disk_theorem(&m, 1e-7).unwrap();
        assert!(report.theorem_holds(), "seed {seed}: {:?}", report.violations);
        assert!(!report.multiple.is_empty());
        let scale = m.scale();
        for mult in &report.multiple {
            let w = &mult.witness;
            assert!(mult.kind(RadiusKind::Half).unwrap().covered);
            assert!(mult.kind(RadiusKind::Median).unwrap().covered);
            assert!(w.row_residual <= 1e-7 * scale);
            assert!(w.eigen_residual <= 1e-6 * scale);
            assert!(w.component_sum <= 1e-9 * scale);
            assert_eq!(w.vector[w.row], Complex::new(1.0, 0.0));
            assert!(w.vector.entries().iter().all(|z| z.norm() <= 1.0 + 1e-12));
            let r = mult.witness_radii.unwrap();
            total += 1;
            if r.median <= r.half + 1e-12 {
                median_wins += 1;
            }
        }
    }
    assert_eq!(median_wins, total);
}

#[test]
fn zero_sum_eigenvector_properties() {
    let m = generators::hesse_gram::<f64>();
    for lambda in [0.0, 6.0] {
        let v = localization::zero_sum_eigenvector(&m, Complex::new(lambda, 0.0), 1e-9).unwrap();
        assert!(v.sum().norm() <= 1e-12);
        assert!((v.max_abs() - 1.0).abs() <= 1e-15);
        assert!(m.shifted(Complex::new(lambda, 0.0)).mul_vec(&v).unwrap().norm() <= 1e-9);
    }
    let err = localization::zero_sum_eigenvector(&m, Complex::new(3.0, 0.0), 1e-9).unwrap_err();
    assert!(matches!(err, Error::Precondition(_)));
}

#[test]
fn a3_minus_one_on_half_boundary() {
    let m = generators::matrix_a3::<f64>();
    let report = localization::verify_half_disk_theorem(&m, 1e-9).unwrap();
    assert_eq!(report.multiple.len(), 1);
    let mult = &report.multiple[0];
    assert!((mult.value - -1.0).norm() < 1e-12);
    assert_eq!(mult.geometric_multiplicity, 2);
    let half = mult.kind(RadiusKind::Half).unwrap();
    assert!(half.rows.iter().all(|r| r.status == Containment::OnBoundary));
    let median = mult.kind(RadiusKind::Median).unwrap();
    assert!(median.rows.iter().all(|r| r.status == Containment::OnBoundary));
    let radii = mult.witness_radii.unwrap();
    assert_eq!((radii.median_literal, radii.median, radii.b_star), (0.0, 1.0, 1.0));
}

#[test]
fn circulants_escape_half_disks() {
    let b = generators::named::<f64>("b5").unwrap();
    assert!(matches!(
        localization::verify_half_disk_theorem(&b.matrix, 1e-9),
        Err(Error::Domain(_))
    ));
    let opts = LocalizeOptions {
        exact_values: b.exact_values.clone(),
        ..LocalizeOptions::with_tol(1e-9)
    };
    let report = localization::localize(&b.matrix, &opts).unwrap();
    assert!(!report.nonnegative);
    assert_eq!(report.multiple.len(), 2);
    assert_eq!(report.outside_all_half.len(), 2);
    assert!(report.violations.is_empty());
    for mult in &report.multiple {
        assert!((mult.value.re.abs() - 5f64.sqrt()).abs() < 1e-12);
        assert!(mult.kind(RadiusKind::Median).is_none());
        let half = mult.kind(RadiusKind::Half).unwrap();
        assert!(half.disks.iter().all(|d| d.radius == 2.0));
    }

    let c = generators::named::<f64>("c7").unwrap();
    let report = localization::counterexample_check(&c.matrix, 1e-9).unwrap();
    let neg: Vec<_> = report.outside_all_half.iter().filter(|z| z.re < -3.0).collect();
    assert_eq!(neg.len(), 1);
}

#[test]
fn doubly_stochastic_blocks_sit_on_the_boundary() {
    for seed in 0..10 {
        let m = generators::block_doubly_stochastic::<f64>(3, 3, seed).unwrap();
        let opts = LocalizeOptions {
            exact_values: vec![Complex::new(1.0, 0.0)],
            ..LocalizeOptions::with_tol(1e-9)
        };
        let report = localization::verify_with(&m, &opts).unwrap();
        let one = report.multiple.iter().find(|e| e.value == Complex::new(1.0, 0.0)).unwrap();
        assert!(one.geometric_multiplicity >= 3, "seed {seed}");
        if seed == 1 {
            assert_eq!(one.geometric_multiplicity, 3);
        }
        for kind in [RadiusKind::Half, RadiusKind::Third] {
            let kc = one.kind(kind).unwrap();
            assert!(kc.rows.iter().all(|r| r.status == Containment::OnBoundary), "seed {seed} {kind}");
            for d in &kc.disks {
                assert!((d.radius - (1.0 - d.center.re)).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn localize_rejects_rectangular_input() {
    let a = generators::hesse_dependency::<f64>();
    assert!(matches!(localization::localize(&a, &LocalizeOptions::default()), Err(Error::Dimension(_))));
}

#[test]
fn report_round_trips_through_json() {
    let m = generators::hesse_gram::<f64>();
    let report = localization::counterexample_check(&m, 1e-9).unwrap();
    let json = serde_json::to_string(&report).unwrap();
    let back: localization::LocalizationReport<f64> = serde_json::from_str(&json).unwrap();
    assert_eq!(back, report);
    assert!(json.contains("\"re\""));
}
