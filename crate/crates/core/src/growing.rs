//! Seeded 3D region growing over the six face neighbours.
//!
//! The frontier is a FIFO queue. When a voxel is dequeued its neighbours are
//! visited in the order x-1, x+1, y-1, y+1, z-1, z+1; a neighbour reached for
//! the first time is tested once and either joins the region (and the queue)
//! or is rejected for good. In running-mean mode the reference intensity is
//! the mean of the region accepted so far, updated after every acceptance.

use std::collections::VecDeque;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::volume::{BinaryMask, Dims, SeedPoint, VoxelVolume};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Acceptance {
    /// Compare against the seed intensity.
    SeedFixed,
    /// Compare against the running mean of the accepted region.
    #[default]
    RunningMean,
}

impl FromStr for Acceptance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "seed-fixed" => Ok(Acceptance::SeedFixed),
            "running-mean" => Ok(Acceptance::RunningMean),
            other => Err(Error::InvalidParameter(format!(
                "unknown acceptance mode {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowParams {
    pub threshold: f64,
    pub acceptance: Acceptance,
}

impl Default for GrowParams {
    fn default() -> Self {
        GrowParams {
            threshold: 5.0,
            acceptance: Acceptance::RunningMean,
        }
    }
}

impl GrowParams {
    pub fn new(threshold: f64, acceptance: Acceptance) -> Self {
        GrowParams {
            threshold,
            acceptance,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.threshold.is_finite() && self.threshold >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "threshold must be finite and >= 0, got {}",
                self.threshold
            )));
        }
        Ok(())
    }
}

/// Face neighbours of `index` in the fixed enqueue order.
#[inline]
pub(crate) fn face_neighbours(dims: Dims, index: usize) -> impl Iterator<Item = usize> {
    let (x, y, z) = dims.coords(index);
    let plane = dims.slice_len();
    [
        (x > 0).then(|| index - 1),
        (x + 1 < dims.nx).then(|| index + 1),
        (y > 0).then(|| index - dims.nx),
        (y + 1 < dims.ny).then(|| index + dims.nx),
        (z > 0).then(|| index - plane),
        (z + 1 < dims.nz).then(|| index + plane),
    ]
    .into_iter()
    .flatten()
}

/// Grows the 6-connected region containing `seed`; a voxel joins when
/// `|I(v) - ref| < threshold`.
pub fn region_grow(vol: &VoxelVolume, seed: SeedPoint, params: GrowParams) -> Result<BinaryMask> {
    params.validate()?;
    let dims = vol.dims();
    seed.check(dims)?;
    let data = vol.voxels();

    let start = dims.index(seed.x, seed.y, seed.z);
    let mut visited = vec![false; dims.len()];
    let mut region = BinaryMask::empty(dims);
    let mut queue = VecDeque::new();

    visited[start] = true;
    region.bits_mut()[start] = true;
    queue.push_back(start);
    let seed_value = data[start];
    let mut sum = seed_value;
    let mut count = 1usize;

    while let Some(current) = queue.pop_front() {
        for n in face_neighbours(dims, current) {
            if visited[n] {
                continue;
            }
            visited[n] = true;
            let reference = match params.acceptance {
                Acceptance::SeedFixed => seed_value,
                Acceptance::RunningMean => sum / count as f64,
            };
            if (data[n] - reference).abs() < params.threshold {
                region.bits_mut()[n] = true;
                sum += data[n];
                count += 1;
                queue.push_back(n);
            }
        }
    }
    Ok(region)
}
