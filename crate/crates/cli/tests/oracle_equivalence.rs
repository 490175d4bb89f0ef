//! Cross-validation of the winding-number zero counter against the
//! independent simultaneous-iteration root oracle, and of the
//! non-orthogonality / equal-zero-count link on a constant-modulus corpus.

use std::f64::consts::TAU;

use bjorth_cli::{corpus, oracle};
use bjorth_core::{count_zeros, rouche_link, Complex64, Curve, RoucheVerdict, RunConfig};
use rand::Rng;

#[test]
fn winding_count_matches_root_oracle_on_200_instances() {
    let cfg = RunConfig::default();
    let mut rng = corpus::rng(0xACC1);
    let mut checked = 0;
    for trial in 0..200 {
        let degree = rng.gen_range(1..=6usize);
        let poly = corpus::polynomial(&mut rng, degree, 0.2);
        let roots = oracle::polynomial_roots(&poly);
        // Pick a radius at least 0.05 away from every root modulus, so the
        // winding precondition holds by construction.
        let radius = (0..400)
            .map(|k| 0.2 + 0.02 * k as f64)
            .find(|r| roots.iter().all(|z| (z.norm() - r).abs() > 0.05));
        let Some(radius) = radius else {
            panic!("trial {trial}: no safe radius for {poly:?}")
        };
        let curve = Curve::circle(Complex64::new(0.0, 0.0), radius).unwrap();
        let w = count_zeros(&poly.to_expr(), &curve, cfg.quad_n, &cfg).unwrap();
        let by_oracle = oracle::count_roots_inside(&poly, radius);
        assert_eq!(
            w.count, by_oracle as i64,
            "trial {trial}: radius {radius}, winding {} vs oracle {by_oracle}",
            w.count
        );
        checked += 1;
    }
    assert_eq!(checked, 200);
}

#[test]
fn rouche_witnesses_always_come_with_equal_counts() {
    let cfg = RunConfig::default();
    let mut rng = corpus::rng(0xACC2);
    let curve = Curve::circle(Complex64::new(0.0, 0.0), 1.0).unwrap();
    let mut witnesses = 0;
    for trial in 0..30 {
        // f must have constant modulus on the curve.
        let factors = rng.gen_range(1..=3usize);
        let f = corpus::blaschke_product(&mut rng, 1.0, factors, true);
        // Half the corpus perturbs a multiple of f, which guarantees a
        // norm-lowering witness; the other half pairs f with a random
        // polynomial whose zeros stay off the curve.
        let g = if trial % 2 == 0 {
            let scale = corpus::nonzero(&mut rng, 0.5, 2.0);
            let deg = rng.gen_range(1..=3usize);
            let bump = corpus::polynomial(&mut rng, deg, 0.2).to_expr().scaled(0.05);
            bjorth_core::HoloExpr::add(f.clone().scaled(scale), bump)
        } else {
            let g_deg = rng.gen_range(1..=4usize);
            let mut g = corpus::polynomial(&mut rng, g_deg, 0.2);
            while oracle::polynomial_roots(&g)
                .iter()
                .any(|z| (z.norm() - 1.0).abs() < 0.05)
            {
                g = corpus::polynomial(&mut rng, g_deg, 0.2);
            }
            g.to_expr()
        };
        let link = rouche_link(&f, &g, &curve, &cfg).unwrap();
        match link.verdict {
            RoucheVerdict::SameCount { f_zeros, g_zeros } => {
                witnesses += 1;
                assert_eq!(f_zeros, factors as i64, "trial {trial}");
                assert_eq!(g_zeros, f_zeros, "trial {trial}");
                assert_eq!(link.pointwise_dominated, Some(true), "trial {trial}");
            }
            RoucheVerdict::CountMismatch { f_zeros, g_zeros } => {
                panic!("trial {trial}: witness with mismatched counts {f_zeros} vs {g_zeros}")
            }
            RoucheVerdict::NoClaim => {}
        }
    }
    // The corpus must actually exercise the witness branch.
    assert!(witnesses >= 10, "only {witnesses} witnesses in the corpus");
}

#[test]
fn argument_sweep_detects_monomial_gaps() {
    // Sanity for the sampled-argument sufficient condition on a corpus
    // where the answer is known: distinct monomials sweep, equal ones
    // do not.
    let cfg = RunConfig::default();
    let curve = Curve::circle(Complex64::new(0.0, 0.0), 1.0).unwrap();
    for n in 1..=4u32 {
        for m in 1..=4u32 {
            let f = bjorth_core::HoloExpr::monomial(n);
            let g = bjorth_core::HoloExpr::monomial(m);
            let swept = bjorth_core::sufficient_argument(
                &f,
                &g,
                &curve,
                bjorth_core::DEFAULT_ARG_GAP_TOL,
                &cfg,
            )
            .unwrap();
            assert_eq!(swept, n != m, "n={n} m={m}");
        }
    }
    let _ = TAU;
}
