//! Seeded random instance generation for the verification suite. Everything
//! here is deterministic given the config seed.

use std::f64::consts::TAU;

use bjorth_core::{Complex64, HoloExpr, Polynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex_box(rng: &mut ChaCha8Rng, half_width: f64) -> Complex64 {
    Complex64::new(
        rng.gen_range(-half_width..half_width),
        rng.gen_range(-half_width..half_width),
    )
}

pub fn nonzero(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Complex64 {
    Complex64::from_polar(rng.gen_range(lo..hi), rng.gen_range(0.0..TAU))
}

/// Random polynomial of the exact degree with unit-box coefficients; the
/// leading coefficient is resampled until it clears `min_leading`.
pub fn polynomial(rng: &mut ChaCha8Rng, degree: usize, min_leading: f64) -> Polynomial {
    let mut coeffs: Vec<Complex64> = (0..=degree).map(|_| complex_box(rng, 1.0)).collect();
    while coeffs[degree].norm() < min_leading {
        coeffs[degree] = complex_box(rng, 1.0);
    }
    Polynomial::new(coeffs)
}

/// Product of `factors` Blaschke factors for the circle of radius `r`, with
/// an optional unimodular multiplier.
pub fn blaschke_product(
    rng: &mut ChaCha8Rng,
    r: f64,
    factors: usize,
    unit_multiplier: bool,
) -> HoloExpr {
    let mut f: Option<HoloExpr> = None;
    for _ in 0..factors {
        let a = Complex64::from_polar(rng.gen_range(0.0..0.9), rng.gen_range(0.0..TAU));
        let factor = HoloExpr::blaschke(a, r).expect("|a| < 1 and r > 0 by construction");
        f = Some(match f {
            None => factor,
            Some(prev) => HoloExpr::mul(prev, factor),
        });
    }
    let product = f.expect("at least one factor");
    if unit_multiplier {
        product.scaled(Complex64::from_polar(1.0, rng.gen_range(0.0..TAU)))
    } else {
        product
    }
}

/// Polynomial with explicit roots kept off the origin and away from the
/// circle of radius `curve_radius`; returns the roots too.
pub fn polynomial_with_offcenter_roots(
    rng: &mut ChaCha8Rng,
    degree: usize,
    curve_radius: f64,
) -> (Polynomial, Vec<Complex64>) {
    let mut roots = Vec::with_capacity(degree);
    for _ in 0..degree {
        let root = loop {
            let z = Complex64::from_polar(
                rng.gen_range(0.0..2.0 * curve_radius),
                rng.gen_range(0.0..TAU),
            );
            if z.norm() > 0.1 && (z.norm() - curve_radius).abs() > 0.05 * curve_radius {
                break z;
            }
        };
        roots.push(root);
    }
    let leading = nonzero(rng, 0.3, 1.0);
    (Polynomial::from_roots(leading, &roots), roots)
}
