//! Independent root-finding oracle for the verification suite: simultaneous
//! (Durand-Kerner) iteration. Deliberately disjoint from the winding-number
//! path in the library, so zero counts can be cross-checked against an
//! unrelated algorithm.

use bjorth_core::{Complex64, Polynomial};

/// All complex roots of the polynomial, counted with multiplicity. Intended
/// for the moderate degrees the suite uses (at most ~10).
pub fn polynomial_roots(p: &Polynomial) -> Vec<Complex64> {
    let Some(n) = p.degree() else {
        return Vec::new();
    };
    if n == 0 {
        return Vec::new();
    }
    let lead = p.leading().expect("degree implies a leading coefficient");
    let monic: Vec<Complex64> = p.coeffs().iter().map(|c| c / lead).collect();

    let eval = |x: Complex64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in monic.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };

    // Start on a circle inside the classical root bound, at angles that
    // avoid the symmetries of real-coefficient inputs.
    let bound = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut roots: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(
                0.7 * bound,
                std::f64::consts::TAU * k as f64 / n as f64 + 0.4,
            )
        })
        .collect();

    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for k in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != k {
                    denom *= roots[k] - roots[j];
                }
            }
            if denom.norm() == 0.0 {
                // Coincident iterates: nudge apart and retry next sweep.
                roots[k] += Complex64::new(1e-8 * bound, 1e-8 * bound);
                continue;
            }
            let step = eval(roots[k]) / denom;
            roots[k] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-13 * bound {
            break;
        }
    }
    roots
}

/// Number of roots with modulus strictly below `radius`.
pub fn count_roots_inside(p: &Polynomial, radius: f64) -> usize {
    polynomial_roots(p)
        .into_iter()
        .filter(|r| r.norm() < radius)
        .count()
}
