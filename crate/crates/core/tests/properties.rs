mod common;

use std::f64::consts::{PI, TAU};

use common::{c, coeff, measured_arcs, point_in_box, poly, with_critical_order};
use polymax::geometry::{compute_cone, DirectionClass};
use polymax::norm::{
    boundary_scan, compute_norm, default_scan_samples, orbit_endpoint, seed_points, Iteration, NormOptions,
};
use polymax::roots::{acceptance_tolerance, critical_points, find_roots};
use polymax::stationarity::{
    basic_family_step, certify, fixed_point_map, pseudo_newton_step, pseudo_polynomial, FamilyOrder,
    DEFAULT_CERTIFY_TOL,
};
use polymax::{parse_polynomial, Complex64, PolyFormat, Polynomial};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: RngSeed::Fixed(42),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// Sum of `|c_j| |z|^j`, the natural scale of rounding error in `p(z)`.
fn eval_scale(p: &Polynomial, z: Complex64) -> f64 {
    p.coeffs()
        .iter()
        .enumerate()
        .map(|(j, a)| a.norm() * z.norm().powi(j as i32))
        .sum()
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn derivative_matches_central_difference(p in poly(0, 10), z in point_in_box(1.2)) {
        let h = 1e-6;
        let fd = (p.eval(z + h) - p.eval(z - h)) / (2.0 * h);
        let exact = p.derivative().eval(z);
        prop_assert!((fd - exact).norm() <= 1e-5 * exact.norm().max(1.0));
    }

    #[test]
    fn eval_derivatives_agree_with_repeated_differentiation(p in poly(0, 8), z in point_in_box(1.2)) {
        let m = p.degree().unwrap();
        let values = p.eval_derivatives(z, m).unwrap();
        let mut d = p.clone();
        for value in values {
            let expected = d.eval(z);
            prop_assert!((value - expected).norm() <= 1e-9 * (1.0 + expected.norm()));
            d = d.derivative();
        }
    }

    #[test]
    fn horner_matches_power_sum(p in poly(0, 10), z in point_in_box(1.5)) {
        let naive: Complex64 = p.coeffs().iter().enumerate().map(|(j, &a)| a * z.powi(j as i32)).sum();
        prop_assert!((p.eval(z) - naive).norm() <= 1e-12 * eval_scale(&p, z));
    }

    #[test]
    fn render_then_parse_is_exact(coeffs in prop::collection::vec(coeff(), 1..12), big in -20i32..20) {
        let scaled: Vec<Complex64> = coeffs.iter().map(|&a| a * 10f64.powi(big)).collect();
        let p = Polynomial::new(scaled).unwrap();
        let text = p.to_string();
        let back = parse_polynomial(&text, PolyFormat::Expression).unwrap();
        prop_assert_eq!(back.coeffs(), p.coeffs(), "rendered as {}", text);
    }

    #[test]
    fn boundary_modulus_is_periodic(p in poly(1, 10), t in -10.0..10.0f64) {
        let a = p.boundary_modulus(t);
        let b = p.boundary_modulus(t + TAU);
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + p.scale()));
    }

    #[test]
    fn fixed_point_map_has_unit_modulus(p in poly(1, 10), z in point_in_box(1.5)) {
        if let Ok(w) = fixed_point_map(&p, z) {
            prop_assert!((w.norm() - 1.0).abs() <= 1e-15);
        }
    }

    #[test]
    fn family_order_two_is_pseudo_newton(p in poly(1, 10), z in point_in_box(1.5)) {
        prop_assert_eq!(basic_family_step(&p, z, FamilyOrder::Two), pseudo_newton_step(&p, z));
    }

    #[test]
    fn sectors_alternate_with_equal_width(p in poly(1, 8), z0 in point_in_box(1.0)) {
        let cone = compute_cone(&p, z0).unwrap();
        prop_assume!(!cone.at_root);
        let arcs = measured_arcs(&cone);
        let k = cone.k;
        prop_assert_eq!(arcs.len(), 2 * k);
        prop_assert_eq!(arcs.iter().filter(|a| a.0 == DirectionClass::Ascent).count(), k);
        prop_assert_eq!(arcs.iter().filter(|a| a.0 == DirectionClass::Descent).count(), k);
        for (i, (class, width)) in arcs.iter().enumerate() {
            prop_assert!((width - PI / k as f64).abs() <= 1e-9, "arc {} width {}", i, width);
            prop_assert_ne!(*class, arcs[(i + 1) % arcs.len()].0);
        }
        for s in cone.ascent_sectors().iter().chain(&cone.descent_sectors()) {
            prop_assert!((s.width - PI / k as f64).abs() <= 1e-12);
        }
    }

    #[test]
    fn cone_order_counts_vanishing_derivatives(
        q in poly(0, 3),
        z0 in point_in_box(0.7),
        k in 1usize..4,
        constant in (0.5..2.0f64, -PI..PI),
    ) {
        let p = with_critical_order(z0, k, &q, Complex64::from_polar(constant.0, constant.1));
        prop_assume!(q.eval(z0).norm() > 0.1);
        let cone = compute_cone(&p, z0).unwrap();
        prop_assert_eq!(cone.k, k);
        let arcs = measured_arcs(&cone);
        prop_assert_eq!(arcs.len(), 2 * k);
    }

    #[test]
    fn roots_reconstruct_the_monic_polynomial(p in poly(1, 8)) {
        let set = find_roots(&p).unwrap();
        prop_assert_eq!(set.total_multiplicity(), p.degree().unwrap());
        prop_assert!(set.residual_bound <= acceptance_tolerance(&p));
        // Generic inputs have simple roots.
        prop_assume!(set.roots.iter().all(|r| r.multiplicity == 1));
        let mut monic = vec![c(1.0, 0.0)];
        for r in set.locations() {
            let mut next = vec![c(0.0, 0.0); monic.len() + 1];
            for (j, &a) in monic.iter().enumerate() {
                next[j + 1] += a;
                next[j] -= a * r;
            }
            monic = next;
        }
        let lead = p.leading();
        for (j, a) in p.coeffs().iter().enumerate() {
            prop_assert!((a / lead - monic[j]).norm() <= 1e-6, "coefficient {}", j);
        }
    }
}

proptest! {
    #![proptest_config(config(48))]

    /// Roots far outside the disc are skipped: there `|p|` cannot be
    /// evaluated below `ε Σ|c_j||z|^j`, and `|G|` inherits that times `|p'|`.
    #[test]
    fn pseudo_polynomial_vanishes_on_roots_critical_points_and_maxima(p in poly(2, 8)) {
        let roots = find_roots(&p).unwrap();
        let crit = critical_points(&p).unwrap();
        let report = compute_norm(&p, &NormOptions::default()).unwrap();
        let points = roots
            .locations()
            .chain(crit.locations())
            .filter(|z| z.norm() <= 2.0)
            .chain(report.candidates.iter().map(|c| c.point));
        for z in points {
            let g = pseudo_polynomial(&p, z).norm();
            prop_assert!(g <= 1e-9 * (1.0 + z.norm()) * p.scale(), "G({}) = {:e}", z, g);
        }
    }

    #[test]
    fn certified_points_are_circle_maxima_and_pseudo_newton_fixed(p in poly(2, 8)) {
        let report = compute_norm(&p, &NormOptions::default()).unwrap();
        for cert in &report.candidates {
            prop_assert!(cert.accepted);
            prop_assert!(cert.residual <= 1e-8 && cert.boundary_gap <= 1e-10);
            let z = cert.point;
            let t = z.im.atan2(z.re);
            prop_assert!(p.boundary_modulus(t + 1e-4) < cert.modulus);
            prop_assert!(p.boundary_modulus(t - 1e-4) < cert.modulus);
            let next = pseudo_newton_step(&p, z).unwrap();
            prop_assert!((next - z).norm() <= 1e-9);
            let cone = compute_cone(&p, z).unwrap();
            prop_assert_eq!(cone.classify(t), DirectionClass::Ascent);
            prop_assert_eq!(cone.classify(t + PI), DirectionClass::Descent);
        }
    }

    /// A circle maximum of q that fails to certify is one where |p| grows
    /// into the disc, so F points straight back inwards.
    #[test]
    fn scan_maxima_certify_unless_radially_inward(p in poly(2, 8)) {
        let degree = p.degree().unwrap();
        for cert in boundary_scan(&p, default_scan_samples(degree)) {
            if cert.residual <= 1e-6 {
                continue;
            }
            let z = cert.point;
            let f = fixed_point_map(&p, z).unwrap();
            prop_assert!((f + z).norm() <= 1e-6, "uncertified scan maximum {} with F = {}", z, f);
            prop_assert!(p.eval(z * (1.0 - 1e-4)).norm() > cert.modulus);
        }
    }

    #[test]
    fn adding_seeds_never_lowers_the_norm(p in poly(2, 8), extra in prop::collection::vec(point_in_box(1.5), 1..8)) {
        let base = compute_norm(&p, &NormOptions::default()).unwrap();
        let more = compute_norm(&p, &NormOptions { extra_seeds: extra, ..NormOptions::default() }).unwrap();
        prop_assert!(more.norm_value >= base.norm_value);
    }

    #[test]
    fn projection_is_a_polish(p in poly(2, 8)) {
        let options = NormOptions::default();
        let tol = 1e-9 * (1.0 + p.scale());
        for seed in seed_points(&p, &options).unwrap() {
            let (outcome, _) = orbit_endpoint(&p, Iteration::PseudoNewton, seed, 200);
            let Some(z) = outcome.attractor() else { continue };
            let d = p.eval_derivatives_padded(z, 1);
            if d[0].norm() <= tol || d[1].norm() <= tol {
                continue;
            }
            let projected = z / z.norm();
            prop_assert!((p.eval(projected).norm() - d[0].norm()).abs() < 1e-8, "attractor {}", z);
        }
    }

    #[test]
    fn norm_is_deterministic(p in poly(2, 8), seed in any::<u64>()) {
        let options = NormOptions { rng_seed: seed, ..NormOptions::default() };
        prop_assert_eq!(compute_norm(&p, &options), compute_norm(&p, &options));
    }

    #[test]
    fn bernstein_ratio_holds_at_maximizer(p in poly(2, 10)) {
        let report = compute_norm(&p, &NormOptions::default()).unwrap();
        prop_assert!(report.bernstein_ok);
        prop_assert!(polymax::norm::bernstein_check(&p, &report));
    }
}

#[test]
fn fixed_point_without_circle_maximum() {
    // p = z^10 + 0.9 z^11 at z = -1: p/p' = -1, so F(-1) = -1 and the point
    // certifies, yet q has a local minimum there.
    let mut coeffs = vec![c(0.0, 0.0); 12];
    coeffs[10] = c(1.0, 0.0);
    coeffs[11] = c(0.9, 0.0);
    let p = Polynomial::new(coeffs).unwrap();
    let z = c(-1.0, 0.0);
    let cert = certify(&p, z, DEFAULT_CERTIFY_TOL);
    assert!(cert.accepted);
    assert!(p.boundary_modulus(PI + 1e-4) > cert.modulus);
    assert!(p.boundary_modulus(PI - 1e-4) > cert.modulus);
    // The reported norm is still the true maximum.
    let report = compute_norm(&p, &NormOptions::default()).unwrap();
    assert!((report.norm_value - 1.9).abs() < 1e-12);
}

#[test]
fn circle_maximum_with_inward_growth_is_rejected() {
    // q has a local maximum at t = 0 but |p| increases towards the centre.
    let p = Polynomial::from_real(&[1.0, -0.3, 0.1]).unwrap();
    assert!(p.boundary_modulus(1e-3) < p.boundary_modulus(0.0));
    assert!(p.boundary_modulus(-1e-3) < p.boundary_modulus(0.0));
    assert_eq!(fixed_point_map(&p, c(1.0, 0.0)), Ok(c(-1.0, 0.0)));
    assert!(!certify(&p, c(1.0, 0.0), DEFAULT_CERTIFY_TOL).accepted);
}
