//! Two-phase piecewise-constant (Chan–Vese) level-set evolution in 3D.
//!
//! Sign convention: `phi < 0` is inside. `c1` is the mean intensity outside
//! (`phi >= 0`), `c2` the mean inside (`phi < 0`). The explicit update is the
//! gradient flow of [`cv_energy`]:
//!
//! ```text
//! phi += dt * delta_eps(phi) * ( mu*kappa - l1*(u - c1)^2 + l2*(u - c2)^2 + nu )
//! ```
//!
//! so a voxel whose intensity is nearer the inside mean is pushed negative.

mod curvature;
mod evolve;

pub use curvature::{curvature_at, curvature_field};
pub use evolve::{cv_energy, cv_run, cv_step, dirac, redistance, region_means, CvRun};

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::volume::LevelSetField;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChanVeseParams {
    /// Length penalty.
    pub mu: f64,
    /// Area penalty on the inside region.
    pub nu: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub dt: f64,
    /// Width of the regularized Dirac, in voxels.
    pub epsilon: f64,
    pub max_iters: usize,
    /// Redistance every this many iterations; 0 disables.
    pub redistance_every: usize,
    /// Stop once the fraction of voxels changing sign in a step drops below this.
    pub stop_tol: f64,
}

impl Default for ChanVeseParams {
    fn default() -> Self {
        ChanVeseParams {
            mu: 0.2,
            nu: 0.0,
            lambda1: 1.0,
            lambda2: 1.0,
            dt: 0.5,
            epsilon: 1.5,
            max_iters: 500,
            redistance_every: 20,
            stop_tol: 5e-4,
        }
    }
}

impl ChanVeseParams {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidParameter(msg));
        let all_finite = [
            self.mu,
            self.nu,
            self.lambda1,
            self.lambda2,
            self.dt,
            self.epsilon,
            self.stop_tol,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !all_finite {
            return fail("level-set parameters must be finite".into());
        }
        if self.mu < 0.0 {
            return fail(format!("mu must be >= 0, got {}", self.mu));
        }
        if self.lambda1 <= 0.0 || self.lambda2 <= 0.0 {
            return fail(format!(
                "lambda1 and lambda2 must be > 0, got {} and {}",
                self.lambda1, self.lambda2
            ));
        }
        if self.dt < 0.0 {
            return fail(format!("dt must be >= 0, got {}", self.dt));
        }
        if self.epsilon <= 0.0 {
            return fail(format!("epsilon must be > 0, got {}", self.epsilon));
        }
        if self.stop_tol < 0.0 {
            return fail(format!("stop_tol must be >= 0, got {}", self.stop_tol));
        }
        Ok(())
    }
}

/// Evolution state after `iter` steps.
#[derive(Debug, Clone, PartialEq)]
pub struct CvState {
    pub phi: LevelSetField,
    /// Outside mean used by the latest step (or of `phi` for a fresh state).
    pub c1: f64,
    /// Inside mean, likewise.
    pub c2: f64,
    pub iter: usize,
    /// Fraction of voxels whose sign flipped in the latest step.
    pub last_change: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub iter: usize,
    pub c1: f64,
    pub c2: f64,
    pub last_change: f64,
    pub energy: f64,
}

/// Per-iteration record of a run; row 0 describes the initial field.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CvTrace {
    pub entries: Vec<TraceEntry>,
}

impl CvTrace {
    /// CSV with header `iter,c1,c2,last_change,energy`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        for e in &self.entries {
            w.serialize(e)?;
        }
        w.flush().map_err(|e| Error::io("<trace>", e))?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }

    pub fn last(&self) -> Option<&TraceEntry> {
        self.entries.last()
    }
}
