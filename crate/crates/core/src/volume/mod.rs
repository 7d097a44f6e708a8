//! Voxel grids shared by every stage of the pipeline.
//!
//! All grids are stored flat in x-fastest order: `index = x + nx * (y + ny * z)`.
//! Coordinates are zero-based. Level-set fields follow a single sign convention
//! throughout the crate: negative values are inside the region.

mod overlay;
mod sdf;
mod vol1;

pub use overlay::{export_overlay, overlay_slice, Axis, GrayImage};
pub use sdf::mask_to_sdf;
pub use vol1::{load_mask, load_volume, save_mask, save_volume, Vol1Header};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Grid extent in voxels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dims {
    pub nx: usize,
    pub ny: usize,
    pub nz: usize,
}

impl Dims {
    pub fn new(nx: usize, ny: usize, nz: usize) -> Result<Self> {
        if nx == 0 || ny == 0 || nz == 0 {
            return Err(Error::InvalidDims([nx, ny, nz]));
        }
        nx.checked_mul(ny)
            .and_then(|v| v.checked_mul(nz))
            .ok_or(Error::InvalidDims([nx, ny, nz]))?;
        Ok(Dims { nx, ny, nz })
    }

    pub fn cube(n: usize) -> Result<Self> {
        Self::new(n, n, n)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.nx * self.ny * self.nz
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Voxels per z-slice.
    #[inline]
    pub fn slice_len(&self) -> usize {
        self.nx * self.ny
    }

    #[inline]
    pub fn index(&self, x: usize, y: usize, z: usize) -> usize {
        x + self.nx * (y + self.ny * z)
    }

    #[inline]
    pub fn coords(&self, index: usize) -> (usize, usize, usize) {
        let x = index % self.nx;
        let y = (index / self.nx) % self.ny;
        let z = index / self.slice_len();
        (x, y, z)
    }

    #[inline]
    pub fn contains(&self, x: usize, y: usize, z: usize) -> bool {
        x < self.nx && y < self.ny && z < self.nz
    }

    pub fn as_array(&self) -> [usize; 3] {
        [self.nx, self.ny, self.nz]
    }

    pub(crate) fn ensure_same(&self, other: &Dims) -> Result<()> {
        if self != other {
            return Err(Error::DimsMismatch {
                left: self.as_array(),
                right: other.as_array(),
            });
        }
        Ok(())
    }
}

/// Scalar intensity volume, nominally on the [0, 255] scale.
#[derive(Debug, Clone, PartialEq)]
pub struct VoxelVolume {
    dims: Dims,
    spacing: [f64; 3],
    voxels: Vec<f64>,
}

impl VoxelVolume {
    /// Builds a volume, rejecting wrong lengths and non-finite intensities.
    pub fn new(dims: Dims, spacing: [f64; 3], voxels: Vec<f64>) -> Result<Self> {
        if voxels.len() != dims.len() {
            return Err(Error::PayloadSize {
                expected: dims.len(),
                actual: voxels.len(),
            });
        }
        if let Some(index) = voxels.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(VoxelVolume {
            dims,
            spacing,
            voxels,
        })
    }

    pub fn filled(dims: Dims, value: f64) -> Result<Self> {
        Self::new(dims, [1.0; 3], vec![value; dims.len()])
    }

    pub fn from_fn(dims: Dims, mut f: impl FnMut(usize, usize, usize) -> f64) -> Result<Self> {
        let mut voxels = Vec::with_capacity(dims.len());
        for z in 0..dims.nz {
            for y in 0..dims.ny {
                for x in 0..dims.nx {
                    voxels.push(f(x, y, z));
                }
            }
        }
        Self::new(dims, [1.0; 3], voxels)
    }

    pub fn with_spacing(mut self, spacing: [f64; 3]) -> Self {
        self.spacing = spacing;
        self
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn spacing(&self) -> [f64; 3] {
        self.spacing
    }

    pub fn voxels(&self) -> &[f64] {
        &self.voxels
    }

    pub fn into_voxels(self) -> Vec<f64> {
        self.voxels
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, z: usize) -> f64 {
        self.voxels[self.dims.index(x, y, z)]
    }

    pub fn min_max(&self) -> (f64, f64) {
        self.voxels
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            })
    }
}

/// Boolean voxel mask; `true` marks the region.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryMask {
    dims: Dims,
    bits: Vec<bool>,
}

impl BinaryMask {
    pub fn new(dims: Dims, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != dims.len() {
            return Err(Error::PayloadSize {
                expected: dims.len(),
                actual: bits.len(),
            });
        }
        Ok(BinaryMask { dims, bits })
    }

    pub fn empty(dims: Dims) -> Self {
        BinaryMask {
            dims,
            bits: vec![false; dims.len()],
        }
    }

    pub fn full(dims: Dims) -> Self {
        BinaryMask {
            dims,
            bits: vec![true; dims.len()],
        }
    }

    pub fn from_fn(dims: Dims, mut f: impl FnMut(usize, usize, usize) -> bool) -> Self {
        let mut bits = Vec::with_capacity(dims.len());
        for z in 0..dims.nz {
            for y in 0..dims.ny {
                for x in 0..dims.nx {
                    bits.push(f(x, y, z));
                }
            }
        }
        BinaryMask { dims, bits }
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn bits_mut(&mut self) -> &mut [bool] {
        &mut self.bits
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, z: usize) -> bool {
        self.bits[self.dims.index(x, y, z)]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, z: usize, value: bool) {
        let i = self.dims.index(x, y, z);
        self.bits[i] = value;
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn is_full(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    /// True when both phases are present, i.e. a boundary exists.
    pub fn has_both_phases(&self) -> bool {
        !self.is_empty() && !self.is_full()
    }

    /// Centroid of the true voxels, `None` when empty.
    pub fn centroid(&self) -> Option<[f64; 3]> {
        let mut sum = [0.0f64; 3];
        let mut n = 0usize;
        for (i, _) in self.bits.iter().enumerate().filter(|(_, &b)| b) {
            let (x, y, z) = self.dims.coords(i);
            sum[0] += x as f64;
            sum[1] += y as f64;
            sum[2] += z as f64;
            n += 1;
        }
        (n > 0).then(|| sum.map(|s| s / n as f64))
    }
}

/// Signed level-set field; `phi < 0` is inside.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelSetField {
    dims: Dims,
    phi: Vec<f64>,
}

impl LevelSetField {
    pub fn new(dims: Dims, phi: Vec<f64>) -> Result<Self> {
        if phi.len() != dims.len() {
            return Err(Error::PayloadSize {
                expected: dims.len(),
                actual: phi.len(),
            });
        }
        if let Some(index) = phi.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(LevelSetField { dims, phi })
    }

    pub fn from_fn(dims: Dims, mut f: impl FnMut(usize, usize, usize) -> f64) -> Result<Self> {
        let mut phi = Vec::with_capacity(dims.len());
        for z in 0..dims.nz {
            for y in 0..dims.ny {
                for x in 0..dims.nx {
                    phi.push(f(x, y, z));
                }
            }
        }
        Self::new(dims, phi)
    }

    pub(crate) fn from_raw(dims: Dims, phi: Vec<f64>) -> Self {
        debug_assert_eq!(phi.len(), dims.len());
        LevelSetField { dims, phi }
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn values(&self) -> &[f64] {
        &self.phi
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, z: usize) -> f64 {
        self.phi[self.dims.index(x, y, z)]
    }

    /// The region `{phi < 0}`.
    pub fn inside_mask(&self) -> BinaryMask {
        BinaryMask {
            dims: self.dims,
            bits: self.phi.iter().map(|&p| p < 0.0).collect(),
        }
    }
}

/// Voxel coordinate of a region-growing seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeedPoint {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl SeedPoint {
    pub fn new(x: usize, y: usize, z: usize) -> Self {
        SeedPoint { x, y, z }
    }

    pub fn check(&self, dims: Dims) -> Result<()> {
        if !dims.contains(self.x, self.y, self.z) {
            return Err(Error::SeedOutOfBounds {
                x: self.x,
                y: self.y,
                z: self.z,
                dims: dims.as_array(),
            });
        }
        Ok(())
    }
}
