use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{BinaryMask, Dims, VoxelVolume};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" | "X" => Ok(Axis::X),
            "y" | "Y" => Ok(Axis::Y),
            "z" | "Z" => Ok(Axis::Z),
            other => Err(Error::InvalidParameter(format!("unknown axis {other:?}"))),
        }
    }
}

impl Axis {
    fn len(self, dims: Dims) -> usize {
        match self {
            Axis::X => dims.nx,
            Axis::Y => dims.ny,
            Axis::Z => dims.nz,
        }
    }

    /// In-plane (width, height) of a slice normal to this axis.
    fn plane(self, dims: Dims) -> (usize, usize) {
        match self {
            Axis::X => (dims.ny, dims.nz),
            Axis::Y => (dims.nx, dims.nz),
            Axis::Z => (dims.nx, dims.ny),
        }
    }

    fn voxel(self, index: usize, u: usize, v: usize) -> (usize, usize, usize) {
        match self {
            Axis::X => (index, u, v),
            Axis::Y => (u, index, v),
            Axis::Z => (u, v, index),
        }
    }
}

/// 8-bit grayscale raster, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
}

impl GrayImage {
    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u8 {
        self.pixels[u + v * self.width]
    }

    /// Binary PGM (P5, maxval 255).
    pub fn to_pgm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.pixels);
        out
    }
}

/// Renders one slice: intensities rescaled to [0, 255], mask boundary painted at 255.
///
/// A boundary pixel is a mask pixel with at least one in-plane 4-neighbour that is
/// false or lies outside the slice.
pub fn overlay_slice(
    vol: &VoxelVolume,
    mask: &BinaryMask,
    axis: Axis,
    index: usize,
) -> Result<GrayImage> {
    let dims = vol.dims();
    dims.ensure_same(&mask.dims())?;
    let len = axis.len(dims);
    if index >= len {
        return Err(Error::IndexOutOfRange { index, len });
    }
    let (width, height) = axis.plane(dims);

    let mut values = Vec::with_capacity(width * height);
    for v in 0..height {
        for u in 0..width {
            let (x, y, z) = axis.voxel(index, u, v);
            values.push(vol.get(x, y, z));
        }
    }
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
    let range = hi - lo;
    let mut pixels: Vec<u8> = values
        .iter()
        .map(|&x| {
            if range > 0.0 {
                ((x - lo) / range * 255.0).round().clamp(0.0, 255.0) as u8
            } else {
                0
            }
        })
        .collect();

    let inside = |u: isize, v: isize| -> bool {
        if u < 0 || v < 0 || u >= width as isize || v >= height as isize {
            return false;
        }
        let (x, y, z) = axis.voxel(index, u as usize, v as usize);
        mask.get(x, y, z)
    };
    for v in 0..height as isize {
        for u in 0..width as isize {
            if !inside(u, v) {
                continue;
            }
            let edge =
                !inside(u - 1, v) || !inside(u + 1, v) || !inside(u, v - 1) || !inside(u, v + 1);
            if edge {
                pixels[u as usize + v as usize * width] = 255;
            }
        }
    }

    Ok(GrayImage {
        width,
        height,
        pixels,
    })
}

pub fn export_overlay(
    vol: &VoxelVolume,
    mask: &BinaryMask,
    axis: Axis,
    index: usize,
    path: impl AsRef<Path>,
) -> Result<()> {
    let image = overlay_slice(vol, mask, axis, index)?;
    let path = path.as_ref();
    fs::write(path, image.to_pgm()).map_err(|e| Error::io(path, e))
}
