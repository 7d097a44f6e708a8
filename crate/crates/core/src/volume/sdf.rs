use super::{BinaryMask, Dims, LevelSetField};
use crate::error::{Error, Result};

const INF: u32 = u32::MAX / 2;

/// Forward-pass half of the 26-neighbourhood with ⟨3,4,5⟩ weights
/// (face, edge, corner). The backward pass uses the negated offsets.
const FORWARD: [(isize, isize, isize, u32); 13] = [
    (-1, -1, -1, 5),
    (0, -1, -1, 4),
    (1, -1, -1, 5),
    (-1, 0, -1, 4),
    (0, 0, -1, 3),
    (1, 0, -1, 4),
    (-1, 1, -1, 5),
    (0, 1, -1, 4),
    (1, 1, -1, 5),
    (-1, -1, 0, 4),
    (0, -1, 0, 3),
    (1, -1, 0, 4),
    (-1, 0, 0, 3),
];

/// Two-pass chamfer distance (in units of 1/3 voxel) from every voxel to the
/// nearest voxel where `feature` is true.
fn chamfer_345(dims: Dims, feature: impl Fn(usize) -> bool) -> Vec<u32> {
    let mut dist: Vec<u32> = (0..dims.len())
        .map(|i| if feature(i) { 0 } else { INF })
        .collect();
    let (nx, ny, nz) = (dims.nx as isize, dims.ny as isize, dims.nz as isize);

    let relax = |x: isize, y: isize, z: isize, sign: isize, dist: &mut Vec<u32>| {
        let here = dims.index(x as usize, y as usize, z as usize);
        let mut best = dist[here];
        for &(dx, dy, dz, w) in &FORWARD {
            let (px, py, pz) = (x + sign * dx, y + sign * dy, z + sign * dz);
            if px < 0 || py < 0 || pz < 0 || px >= nx || py >= ny || pz >= nz {
                continue;
            }
            let cand = dist[dims.index(px as usize, py as usize, pz as usize)] + w;
            if cand < best {
                best = cand;
            }
        }
        dist[here] = best;
    };

    for z in 0..nz {
        for y in 0..ny {
            for x in 0..nx {
                relax(x, y, z, 1, &mut dist);
            }
        }
    }
    for z in (0..nz).rev() {
        for y in (0..ny).rev() {
            for x in (0..nx).rev() {
                relax(x, y, z, -1, &mut dist);
            }
        }
    }
    dist
}

/// Signed distance field of a mask: negative inside, positive outside.
///
/// Magnitudes are chamfer ⟨3,4,5⟩/3 distances to the nearest voxel of the
/// opposite phase, so voxels adjacent to the boundary get ±1 and
/// `{phi < 0}` reproduces the mask exactly.
pub fn mask_to_sdf(mask: &BinaryMask) -> Result<LevelSetField> {
    if mask.is_empty() {
        return Err(Error::NoBoundary("false"));
    }
    if mask.is_full() {
        return Err(Error::NoBoundary("true"));
    }
    let dims = mask.dims();
    let bits = mask.bits();
    let to_inside = chamfer_345(dims, |i| bits[i]);
    let to_outside = chamfer_345(dims, |i| !bits[i]);
    let phi = bits
        .iter()
        .enumerate()
        .map(|(i, &inside)| {
            if inside {
                -(to_outside[i] as f64) / 3.0
            } else {
                to_inside[i] as f64 / 3.0
            }
        })
        .collect();
    Ok(LevelSetField::from_raw(dims, phi))
}
