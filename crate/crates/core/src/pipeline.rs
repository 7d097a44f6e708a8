//! The end-to-end contouring pipeline:
//! region growing -> closing -> Gaussian smoothing -> Chan–Vese refinement.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filters::{close_mask, gaussian_blur3d, StructuringElement};
use crate::growing::{region_grow, GrowParams};
use crate::levelset::{cv_run, ChanVeseParams, CvTrace};
use crate::volume::{BinaryMask, SeedPoint, VoxelVolume};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub seed: SeedPoint,
    pub grow: GrowParams,
    pub se_width: usize,
    pub sigma: f64,
    pub cv: ChanVeseParams,
    /// Grow on the smoothed volume instead of the raw one.
    pub blur_before_grow: bool,
}

impl PipelineConfig {
    pub fn new(seed: SeedPoint) -> Self {
        PipelineConfig {
            seed,
            grow: GrowParams::default(),
            se_width: 21,
            sigma: 1.5,
            cv: ChanVeseParams::default(),
            blur_before_grow: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.grow.validate()?;
        StructuringElement::new(self.se_width)?;
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "sigma must be > 0, got {}",
                self.sigma
            )));
        }
        self.cv.validate()
    }
}

/// Wall-clock seconds per stage.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct StageTimings {
    pub grow: f64,
    pub close: f64,
    pub blur: f64,
    pub level_set: f64,
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    /// Region-growing result.
    pub initial: BinaryMask,
    /// After morphological closing; the level-set initialization.
    pub closed: BinaryMask,
    pub mask: BinaryMask,
    pub trace: CvTrace,
    pub iterations: usize,
    pub converged: bool,
    pub timings: StageTimings,
}

pub fn segment_pipeline(vol: &VoxelVolume, config: &PipelineConfig) -> Result<PipelineOutput> {
    config.validate()?;
    config.seed.check(vol.dims())?;
    let mut timings = StageTimings::default();

    let clock = Instant::now();
    let blurred = gaussian_blur3d(vol, config.sigma)?;
    timings.blur = clock.elapsed().as_secs_f64();

    let clock = Instant::now();
    let grow_on = if config.blur_before_grow {
        &blurred
    } else {
        vol
    };
    let initial = region_grow(grow_on, config.seed, config.grow)?;
    timings.grow = clock.elapsed().as_secs_f64();

    let clock = Instant::now();
    let closed = close_mask(&initial, StructuringElement::new(config.se_width)?);
    timings.close = clock.elapsed().as_secs_f64();
    // an emptied or flooded initial region leaves nothing to evolve
    if !closed.has_both_phases() {
        return Err(Error::PhaseCollapse { iter: 0 });
    }

    let clock = Instant::now();
    let run = cv_run(&blurred, &closed, &config.cv)?;
    timings.level_set = clock.elapsed().as_secs_f64();

    Ok(PipelineOutput {
        initial,
        closed,
        mask: run.mask,
        trace: run.trace,
        iterations: run.iterations,
        converged: run.converged,
        timings,
    })
}
