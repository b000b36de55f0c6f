use midpoly::exact_poly::{self, PlanePoint, Polygon};
use midpoly::spectral::{self, FloatPolygon};
use midpoly::verify::{self, random_integer_polygon, trial_rng};
use midpoly::Rational;
use proptest::prelude::*;

fn hexagon() -> impl Strategy<Value = Polygon> {
    prop::collection::vec((-20i64..=20, -20i64..=20), 6).prop_map(|c| Polygon::from_ints(&c).unwrap())
}

fn ratio() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn imbalances(p: &Polygon) -> (f64, f64) {
    spectral::mode_imbalances(&spectral::decompose(&FloatPolygon::from_exact(p)))
}

fn apply(m: &[Rational; 4], b: &PlanePoint, g: &PlanePoint) -> PlanePoint {
    PlanePoint::new(&(&m[0] * &g.x) + &(&m[1] * &g.y) + &b.x, &(&m[2] * &g.x) + &(&m[3] * &g.y) + &b.y)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn centroids_colinear_for_long_horizons(p in hexagon(), steps in 3usize..=40) {
        match verify::verify_hexagon_theorem(&p, steps) {
            Ok(report) => {
                prop_assert!(report.all_colinear);
                prop_assert!(report.limit_on_line);
            }
            Err(e) => prop_assert_eq!(e, verify::VerifyError::InsufficientData),
        }
    }

    #[test]
    fn affine_maps_carry_the_line(p in hexagon(), m in [ratio(), ratio(), ratio(), ratio()], bx in ratio(), by in ratio()) {
        let det = &(&m[0] * &m[3]) - &(&m[1] * &m[2]);
        prop_assume!(!det.is_zero());
        let shift = PlanePoint::new(bx, by);
        let image = p.affine([&m[0], &m[1], &m[2], &m[3]], &shift);
        let (Ok(before), Ok(after)) = (verify::verify_hexagon_theorem(&p, 8), verify::verify_hexagon_theorem(&image, 8)) else {
            return Ok(());
        };
        prop_assert!(after.all_colinear);
        for (n, (g, h)) in before.centroids.iter().zip(&after.centroids).enumerate() {
            prop_assert_eq!(g.as_ref().map(|g| apply(&m, &shift, g)), h.clone());
            if let (Some(h), true) = (h, n >= 1) {
                prop_assert!(after.contains(h));
            }
        }
        prop_assert_eq!(apply(&m, &shift, &before.limit_point), after.limit_point);
    }
}

#[test]
fn same_sign_imbalances_never_cross_the_limit() {
    let mut seen = 0;
    for t in 0..400 {
        let p = random_integer_polygon(&mut trial_rng(11, t), 6, 9);
        let (d1, d2) = imbalances(&p);
        if d1.abs() < 1e-6 || d2.abs() < 1e-6 || d1.signum() != d2.signum() {
            continue;
        }
        let Ok(report) = verify::convergence_diagnostics(&p, 20) else { continue };
        assert_eq!(report.monotonicity.sign_changes, 0, "trial {t}");
        seen += 1;
    }
    assert!(seen > 20);
}

#[test]
fn one_crossing_when_the_bracket_flips() {
    // d1 + 3^-n d2 changes sign once when d2 dominates d1 with the opposite sign.
    let mut seen = 0;
    for t in 0..2000 {
        let p = random_integer_polygon(&mut trial_rng(13, t), 6, 9);
        let (d1, d2) = imbalances(&p);
        if d1.abs() < 1e-6 || (d1 + d2 / 3.0).abs() < 1e-6 || (d1 + d2 / 3.0).signum() == d1.signum() {
            continue;
        }
        let report = verify::convergence_diagnostics(&p, 24).unwrap();
        assert_eq!(report.monotonicity.sign_changes, 1, "trial {t}");
        let projections = &report.monotonicity.projections;
        let flip = projections.windows(2).position(|w| w[0].1.signum() != w[1].1.signum()).unwrap();
        let tail: Vec<f64> = projections[flip + 1..].iter().map(|(_, t)| t.abs()).collect();
        assert!(tail.windows(2).all(|w| w[1] <= w[0]), "trial {t}");
        seen += 1;
        if seen == 5 {
            break;
        }
    }
    assert!(seen > 0);
}

#[test]
fn distance_ratios_approach_one_half() {
    let p = Polygon::from_ints(&[(3, -7), (9, 2), (-4, 5), (0, 8), (-9, -1), (2, -3)]).unwrap();
    let report = verify::convergence_diagnostics(&p, 30).unwrap();
    assert!(report.d1_normalized.abs() > 1e-3);
    let tail: Vec<f64> = report.distance_ratios.iter().filter(|(n, _)| *n >= 20).map(|(_, r)| *r).collect();
    assert!(!tail.is_empty());
    for r in tail {
        assert!((r - 0.5).abs() < 1e-6, "{r}");
    }
}

#[test]
fn reflection_negates_both_imbalances() {
    let base = Polygon::from_ints(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]).unwrap();
    let mirror = base
        .affine([&Rational::from(1), &Rational::zero(), &Rational::zero(), &Rational::from(-1)], &PlanePoint::origin());
    let (d1, d2) = imbalances(&base);
    let (e1, e2) = imbalances(&mirror);
    assert!(d1.abs() > 1e-3);
    assert!((d1 + e1).abs() < 1e-9 && (d2 + e2).abs() < 1e-9);
    assert_eq!(exact_poly::signed_area(&mirror), -exact_poly::signed_area(&base));
}
