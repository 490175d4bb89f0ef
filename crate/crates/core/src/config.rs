use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numeric knobs shared by every operation. The defaults are the values the
/// verification suite runs with; individual commands may override fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    /// Grid resolution for curve sampling and norm scans.
    pub grid_n: usize,
    /// Golden-section iterations when refining a grid extremum.
    pub refine_iters: usize,
    /// Relative tolerance for membership in a norming set.
    pub norming_eps: f64,
    /// Relative spread below which |f| counts as constant on the curve.
    pub jgamma_tol: f64,
    /// (orthogonal, not-orthogonal) relative margins for the tri-state
    /// orthogonality verdict. Between the two the verdict is Inconclusive.
    pub ortho_margins: (f64, f64),
    /// Grid resolution for contour integrals and winding numbers.
    pub quad_n: usize,
    /// Seed for corpus generation in the verification suite.
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            grid_n: 4096,
            refine_iters: 60,
            norming_eps: 1e-6,
            jgamma_tol: 1e-8,
            ortho_margins: (1e-7, 1e-4),
            quad_n: 4096,
            seed: 42,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_n < 8 {
            return Err(Error::InvalidConfig("grid_n must be at least 8".into()));
        }
        if self.quad_n < 8 {
            return Err(Error::InvalidConfig("quad_n must be at least 8".into()));
        }
        if self.refine_iters == 0 {
            return Err(Error::InvalidConfig("refine_iters must be positive".into()));
        }
        if !(self.norming_eps > 0.0 && self.norming_eps <= 1e-2) {
            return Err(Error::InvalidConfig(
                "norming_eps must lie in (0, 1e-2]".into(),
            ));
        }
        if self.jgamma_tol <= 0.0 {
            return Err(Error::InvalidConfig("jgamma_tol must be positive".into()));
        }
        let (ortho, not_ortho) = self.ortho_margins;
        if !(ortho > 0.0 && not_ortho > 0.0 && ortho < not_ortho) {
            return Err(Error::InvalidConfig(
                "ortho_margins must be positive and ordered (orthogonal < not-orthogonal)".into(),
            ));
        }
        Ok(())
    }
}
