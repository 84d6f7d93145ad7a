mod common;

use std::f64::consts::TAU;

use common::{random_real_poly, symmetry_mismatch};
use polymax::basins::{default_palette, render_basins, write_ppm, GridSpec};
use polymax::norm::{orbit_endpoint, Iteration};
use polymax::{Complex64, Polynomial};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// SHA-256 of the 300×300 fixed-point render of `z^2 - 1` with the default
/// palette, frozen from the first verified build.
const GOLDEN_Z2_SHA256: &str = "6ce8d3c04e35dc193af83bc13aada58b8b58c3e06416242daab12af7d44f7c6b";

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn real_test_polys() -> Vec<Polynomial> {
    let mut polys = vec![
        Polynomial::unity_minus_one(2),
        Polynomial::unity_minus_one(3),
        Polynomial::from_real(&[-0.25, 0.0, 1.0]).unwrap(),
        Polynomial::from_real(&[1.0, -0.3, 0.1]).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    polys.extend((3..=6).map(|n| random_real_poly(&mut rng, n)));
    polys
}

#[test]
fn real_polynomials_have_mirror_symmetric_basins() {
    for p in real_test_polys() {
        for iteration in [Iteration::FixedPoint, Iteration::PseudoNewton] {
            let image = render_basins(&p, iteration, GridSpec::square(120), 200);
            let mismatch = symmetry_mismatch(&image, |z| z.conj());
            assert!(mismatch <= 0.01, "{p} {}: mismatch {mismatch}", iteration.name());
        }
    }
}

#[test]
fn cubic_basins_are_rotation_invariant() {
    let p = Polynomial::unity_minus_one(3);
    let image = render_basins(&p, Iteration::FixedPoint, GridSpec::square(150), 500);
    assert_eq!(image.attractors.len(), 3);
    let w = Complex64::from_polar(1.0, TAU / 3.0);
    assert!(symmetry_mismatch(&image, |z| z * w) <= 0.02);
}

#[test]
fn labeled_pixels_end_at_their_attractor() {
    let p = Polynomial::unity_minus_one(3);
    let spec = GridSpec::square(40);
    for iteration in [Iteration::FixedPoint, Iteration::PseudoNewton, Iteration::BasicFamily3] {
        let image = render_basins(&p, iteration, spec, 300);
        assert!(image.iter_counts.iter().all(|&n| n as usize <= image.max_iter));
        for row in 0..spec.height_px {
            for col in 0..spec.width_px {
                let label = image.label_at(col, row);
                let (outcome, _) = orbit_endpoint(&p, iteration, spec.pixel_to_plane(col, row), 300);
                match usize::try_from(label) {
                    Ok(k) => assert!((outcome.attractor().unwrap() - image.attractors[k]).norm() <= 1e-6),
                    Err(_) => assert_eq!(label, -1),
                }
            }
        }
    }
}

#[test]
fn pseudo_newton_cubic_has_three_attractors() {
    let p = Polynomial::unity_minus_one(3);
    let image = render_basins(&p, Iteration::PseudoNewton, GridSpec::square(60), 100);
    assert_eq!(image.attractors.len(), 3);
    for a in &image.attractors {
        assert!((a.powi(3) + 1.0).norm() < 1e-9);
    }
    let (counts, _) = image.label_counts();
    assert!(counts.iter().all(|&n| n > 0));
}

#[test]
fn ppm_output_is_reproducible() {
    let p = Polynomial::unity_minus_one(2);
    let render = || {
        let image = render_basins(&p, Iteration::FixedPoint, GridSpec::square(300), 500);
        write_ppm(&image, &default_palette(image.attractors.len())).unwrap()
    };
    let first = render();
    assert_eq!(first, render());
    assert!(first.starts_with(b"P6\n300 300\n255\n"));
    assert_eq!(first.len(), "P6\n300 300\n255\n".len() + 3 * 300 * 300);
    assert_eq!(sha256_hex(&first), GOLDEN_Z2_SHA256);
}
