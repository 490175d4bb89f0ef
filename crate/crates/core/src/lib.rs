//! Numerical Birkhoff-James orthogonality for holomorphic functions on
//! simple closed curves.
//!
//! The crate decides whether ||f + lambda*g|| >= ||f|| holds for every
//! complex lambda (with the supremum norm taken along a circle or ellipse)
//! by two independent routes: direct convex minimization over lambda, and
//! the covering geometry of exclusion disks built from norming-set samples.
//! Around that sit supremum norms with golden-section refinement, norming
//! sets, constant-modulus classification, argument-principle zero counting
//! and Cauchy-integral derivatives.

pub mod config;
pub mod curve;
pub mod error;
pub mod expr;
pub mod norm;
pub mod ortho;
pub mod parse;
pub mod poly;
pub mod zeros;

pub use config::RunConfig;
pub use curve::{contour_integral, contour_integral_expr, curve_distance, Curve, CurveSample};
pub use error::{Error, Result};
pub use expr::{format_complex, HoloExpr};
pub use norm::{
    classify_point, in_j_gamma, norming_set, sup_norm, ClassifyReport, Cluster, JGammaReport,
    NormReport, NormingSet, Smoothness,
};
pub use ortho::{
    bj_minimize, covering_decide, exclusion_region, ortho_via_covering, pair_criterion,
    sufficient_argument, sufficient_zero, CoveringDecision, ExclusionDisk, ExclusionRegion,
    OrthoDecision, Verdict, DEFAULT_ARG_GAP_TOL,
};
pub use parse::{parse, parse_complex};
pub use poly::{fta_bound, Polynomial};
pub use zeros::{
    cauchy_derivative, count_zeros, derivative_ortho_scenario, fta_verify, rouche_link,
    verify_j_gamma_zero, winding_around, FtaReport, JGammaZeroReport, RoucheLink, RoucheVerdict,
    ScenarioReport, WindingResult,
};

pub use num_complex::Complex64;
