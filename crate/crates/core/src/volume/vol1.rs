//! VOL1 on-disk format: `<name>.vol.json` header plus `<name>.raw` payload.
//!
//! The header is `{"dims":[nx,ny,nz],"spacing":[sx,sy,sz],"dtype":"f32"|"u8","data":"<name>.raw"}`.
//! The payload holds exactly `nx*ny*nz` little-endian elements in x-fastest order.
//! `data` is resolved relative to the header's directory.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{BinaryMask, Dims, VoxelVolume};
use crate::error::{Error, Result};

const HEADER_SUFFIX: &str = ".vol.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Vol1Header {
    pub dims: [usize; 3],
    pub spacing: [f64; 3],
    pub dtype: String,
    pub data: String,
}

/// Maps either a basename (`out/tumor`) or a header path (`out/tumor.vol.json`)
/// to the header path and the basename.
fn resolve(path: &Path) -> (PathBuf, PathBuf) {
    let s = path.to_string_lossy();
    match s.strip_suffix(HEADER_SUFFIX) {
        Some(base) => (path.to_path_buf(), PathBuf::from(base)),
        None => (
            PathBuf::from(format!("{s}{HEADER_SUFFIX}")),
            path.to_path_buf(),
        ),
    }
}

fn read_header(path: &Path) -> Result<(Vol1Header, Dims, Vec<u8>)> {
    let (header_path, _) = resolve(path);
    let text = fs::read_to_string(&header_path).map_err(|e| Error::io(&header_path, e))?;
    let header: Vol1Header =
        serde_json::from_str(&text).map_err(|e| Error::Header(e.to_string()))?;
    let [nx, ny, nz] = header.dims;
    let dims =
        Dims::new(nx, ny, nz).map_err(|_| Error::Header(format!("bad dims {:?}", header.dims)))?;
    if header.spacing.iter().any(|s| !s.is_finite() || *s <= 0.0) {
        return Err(Error::Header(format!("bad spacing {:?}", header.spacing)));
    }
    let data_path = header_path
        .parent()
        .unwrap_or_else(|| Path::new(""))
        .join(&header.data);
    let payload = fs::read(&data_path).map_err(|e| Error::io(&data_path, e))?;
    Ok((header, dims, payload))
}

fn element_size(dtype: &str) -> Result<usize> {
    match dtype {
        "f32" => Ok(4),
        "u8" => Ok(1),
        other => Err(Error::Header(format!("unsupported dtype {other:?}"))),
    }
}

fn check_payload(dims: Dims, dtype: &str, payload: &[u8]) -> Result<()> {
    let expected = dims.len() * element_size(dtype)?;
    if payload.len() != expected {
        return Err(Error::PayloadSize {
            expected,
            actual: payload.len(),
        });
    }
    Ok(())
}

/// Loads an intensity volume. Both `f32` and `u8` payloads are accepted.
pub fn load_volume(path: impl AsRef<Path>) -> Result<VoxelVolume> {
    let (header, dims, payload) = read_header(path.as_ref())?;
    check_payload(dims, &header.dtype, &payload)?;
    let voxels: Vec<f64> = match header.dtype.as_str() {
        "f32" => payload
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]) as f64)
            .collect(),
        _ => payload.iter().map(|&b| b as f64).collect(),
    };
    VoxelVolume::new(dims, header.spacing, voxels)
}

/// Loads a mask stored as 0/1 bytes.
pub fn load_mask(path: impl AsRef<Path>) -> Result<BinaryMask> {
    let (header, dims, payload) = read_header(path.as_ref())?;
    if header.dtype != "u8" {
        return Err(Error::Header(format!(
            "mask dtype must be \"u8\", found {:?}",
            header.dtype
        )));
    }
    check_payload(dims, &header.dtype, &payload)?;
    let bits = payload
        .iter()
        .enumerate()
        .map(|(i, &b)| match b {
            0 => Ok(false),
            1 => Ok(true),
            _ => Err(Error::Header(format!(
                "mask byte {b} at index {i} is not 0/1"
            ))),
        })
        .collect::<Result<Vec<_>>>()?;
    BinaryMask::new(dims, bits)
}

fn write_pair(
    path: &Path,
    dims: Dims,
    spacing: [f64; 3],
    dtype: &str,
    payload: &[u8],
) -> Result<()> {
    let (header_path, base) = resolve(path);
    let raw_path = PathBuf::from(format!("{}.raw", base.to_string_lossy()));
    let data = raw_path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .ok_or_else(|| Error::InvalidParameter(format!("bad output path {}", path.display())))?;
    let header = Vol1Header {
        dims: dims.as_array(),
        spacing,
        dtype: dtype.to_string(),
        data,
    };
    fs::write(&raw_path, payload).map_err(|e| Error::io(&raw_path, e))?;
    let text = serde_json::to_string(&header)?;
    fs::write(&header_path, text).map_err(|e| Error::io(&header_path, e))?;
    Ok(())
}

/// Writes a volume as an `f32` payload. Values are rounded to single precision,
/// so a volume loaded from disk always round-trips exactly.
pub fn save_volume(vol: &VoxelVolume, path: impl AsRef<Path>) -> Result<()> {
    let mut payload = Vec::with_capacity(vol.voxels().len() * 4);
    for &v in vol.voxels() {
        payload.extend_from_slice(&(v as f32).to_le_bytes());
    }
    write_pair(path.as_ref(), vol.dims(), vol.spacing(), "f32", &payload)
}

pub fn save_mask(mask: &BinaryMask, path: impl AsRef<Path>) -> Result<()> {
    let payload: Vec<u8> = mask.bits().iter().map(|&b| b as u8).collect();
    write_pair(path.as_ref(), mask.dims(), [1.0; 3], "u8", &payload)
}
