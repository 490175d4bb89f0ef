use std::f64::consts::TAU;

use bjorth_core::{
    cauchy_derivative, count_zeros, fta_verify, Complex64, Curve, Polynomial, RunConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Random polynomial built from explicit roots kept a margin away from the
/// unit circle, so the enclosed count is known by construction.
fn poly_with_known_roots(rng: &mut ChaCha8Rng) -> (Polynomial, i64) {
    let deg = rng.gen_range(1..=6);
    let mut roots = Vec::with_capacity(deg);
    let mut inside = 0i64;
    for _ in 0..deg {
        let root = loop {
            let z = Complex64::from_polar(rng.gen_range(0.0..2.0), rng.gen_range(0.0..TAU));
            if (z.norm() - 1.0).abs() >= 0.05 {
                break z;
            }
        };
        if root.norm() < 1.0 {
            inside += 1;
        }
        roots.push(root);
    }
    let leading = Complex64::from_polar(rng.gen_range(0.3..1.0), rng.gen_range(0.0..TAU));
    (Polynomial::from_roots(leading, &roots), inside)
}

#[test]
fn winding_count_is_stable_under_grid_doubling() {
    let mut rng = ChaCha8Rng::seed_from_u64(307);
    let cfg = RunConfig::default();
    let curve = Curve::circle(c(0.0, 0.0), 1.0).unwrap();
    for trial in 0..200 {
        let (poly, expected) = poly_with_known_roots(&mut rng);
        let expr = poly.to_expr();
        let coarse = count_zeros(&expr, &curve, 2048, &cfg).unwrap();
        let fine = count_zeros(&expr, &curve, 4096, &cfg).unwrap();
        assert_eq!(coarse.count, fine.count, "trial {trial}");
        assert_eq!(fine.count, expected, "trial {trial}: {expr}");
        assert!((fine.total_arg_variation - TAU * expected as f64).abs() < 1e-3);
    }
}

#[test]
fn cauchy_quadrature_matches_symbolic_derivative() {
    let mut rng = ChaCha8Rng::seed_from_u64(311);
    for trial in 0..60 {
        let deg = rng.gen_range(1..=6);
        let coeffs: Vec<Complex64> = (0..=deg)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let f = Polynomial::new(coeffs).to_expr();
        let z0 = c(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
        let order = rng.gen_range(0..=4usize);
        let quad = cauchy_derivative(&f, z0, order, 1.0, 512).unwrap();
        let sym = f.nth_derivative(order).eval(z0).unwrap();
        assert!(
            (quad - sym).norm() <= 1e-8 * (1.0 + sym.norm()),
            "trial {trial}: order {order} at {z0}: quad {quad} vs symbolic {sym}"
        );
    }
}

#[test]
fn fta_verification_holds_on_a_unit_box_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(313);
    let cfg = RunConfig::default();
    for trial in 0..100 {
        let deg = rng.gen_range(1..=6);
        let mut coeffs: Vec<Complex64> = (0..=deg)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        // Keep the leading coefficient away from zero so the comparison
        // radius stays moderate.
        while coeffs[deg].norm() < 0.3 {
            coeffs[deg] = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
        let poly = Polynomial::new(coeffs);
        let report = fta_verify(&poly, 1.1, &cfg).unwrap();
        assert!(
            report.ok(),
            "trial {trial}: degree {deg} witness_ok={} count={} (expected {})",
            report.witness_ok,
            report.count,
            report.degree
        );
    }
}
