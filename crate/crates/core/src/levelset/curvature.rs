use rayon::prelude::*;

use crate::volume::{Dims, LevelSetField};

const ETA: f64 = 1e-8;
const KAPPA_MAX: f64 = 1.0;

/// Mean curvature `div(grad phi / |grad phi|)` at one voxel from central
/// differences with replicate boundary, clamped to [-1, 1].
pub fn curvature_at(phi: &[f64], dims: Dims, x: usize, y: usize, z: usize) -> f64 {
    let xm = x.saturating_sub(1);
    let xp = (x + 1).min(dims.nx - 1);
    let ym = y.saturating_sub(1);
    let yp = (y + 1).min(dims.ny - 1);
    let zm = z.saturating_sub(1);
    let zp = (z + 1).min(dims.nz - 1);
    let at = |i, j, k| phi[dims.index(i, j, k)];

    let c = at(x, y, z);
    let fx = (at(xp, y, z) - at(xm, y, z)) * 0.5;
    let fy = (at(x, yp, z) - at(x, ym, z)) * 0.5;
    let fz = (at(x, y, zp) - at(x, y, zm)) * 0.5;
    let fxx = at(xp, y, z) - 2.0 * c + at(xm, y, z);
    let fyy = at(x, yp, z) - 2.0 * c + at(x, ym, z);
    let fzz = at(x, y, zp) - 2.0 * c + at(x, y, zm);
    let fxy = (at(xp, yp, z) - at(xp, ym, z) - at(xm, yp, z) + at(xm, ym, z)) * 0.25;
    let fxz = (at(xp, y, zp) - at(xp, y, zm) - at(xm, y, zp) + at(xm, y, zm)) * 0.25;
    let fyz = (at(x, yp, zp) - at(x, yp, zm) - at(x, ym, zp) + at(x, ym, zm)) * 0.25;

    let (fx2, fy2, fz2) = (fx * fx, fy * fy, fz * fz);
    let num = fxx * (fy2 + fz2) + fyy * (fx2 + fz2) + fzz * (fx2 + fy2)
        - 2.0 * (fx * fy * fxy + fx * fz * fxz + fy * fz * fyz);
    let den = (fx2 + fy2 + fz2 + ETA).powf(1.5);
    (num / den).clamp(-KAPPA_MAX, KAPPA_MAX)
}

/// Curvature of every voxel, x-fastest.
pub fn curvature_field(phi: &LevelSetField) -> Vec<f64> {
    let dims = phi.dims();
    let values = phi.values();
    (0..dims.len())
        .into_par_iter()
        .map(|i| {
            let (x, y, z) = dims.coords(i);
            curvature_at(values, dims, x, y, z)
        })
        .collect()
}
