use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::volume::{Axis, Dims, VoxelVolume};

/// Normalized 1D Gaussian of radius `ceil(3*sigma)`; index `radius` is the centre tap.
pub fn gaussian_kernel(sigma: f64) -> Result<Vec<f64>> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "sigma must be > 0, got {sigma}"
        )));
    }
    let radius = (3.0 * sigma).ceil() as isize;
    let mut taps: Vec<f64> = (-radius..=radius)
        .map(|k| (-((k * k) as f64) / (2.0 * sigma * sigma)).exp())
        .collect();
    let total: f64 = taps.iter().sum();
    taps.iter_mut().for_each(|t| *t /= total);
    Ok(taps)
}

fn convolve_axis(src: &[f64], dims: Dims, kernel: &[f64], axis: Axis) -> Vec<f64> {
    let radius = (kernel.len() / 2) as isize;
    let (len, stride) = match axis {
        Axis::X => (dims.nx, 1),
        Axis::Y => (dims.ny, dims.nx),
        Axis::Z => (dims.nz, dims.slice_len()),
    };
    let last = len as isize - 1;
    let mut out = vec![0.0; src.len()];
    out.par_iter_mut().enumerate().for_each(|(i, o)| {
        let (x, y, z) = dims.coords(i);
        let pos = match axis {
            Axis::X => x,
            Axis::Y => y,
            Axis::Z => z,
        } as isize;
        let base = i - pos as usize * stride;
        let mut acc = 0.0;
        for (k, &w) in kernel.iter().enumerate() {
            let p = (pos + k as isize - radius).clamp(0, last) as usize;
            acc += w * src[base + p * stride];
        }
        *o = acc;
    });
    out
}

/// Separable blur applying the 1D passes in the given axis order.
pub fn gaussian_blur3d_ordered(
    vol: &VoxelVolume,
    sigma: f64,
    order: [Axis; 3],
) -> Result<VoxelVolume> {
    let kernel = gaussian_kernel(sigma)?;
    let dims = vol.dims();
    let mut data = vol.voxels().to_vec();
    for axis in order {
        data = convolve_axis(&data, dims, &kernel, axis);
    }
    VoxelVolume::new(dims, vol.spacing(), data)
}

/// 3D Gaussian smoothing: x pass, then y, then z, replicate boundary.
pub fn gaussian_blur3d(vol: &VoxelVolume, sigma: f64) -> Result<VoxelVolume> {
    gaussian_blur3d_ordered(vol, sigma, [Axis::X, Axis::Y, Axis::Z])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_shape() {
        let k = gaussian_kernel(1.5).unwrap();
        assert_eq!(k.len(), 11);
        assert!((k.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!(k.windows(2).take(5).all(|w| w[0] < w[1]));
        assert!(gaussian_kernel(0.0).is_err());
        assert!(gaussian_kernel(-1.0).is_err());
    }

    #[test]
    fn constant_is_preserved() {
        let vol = VoxelVolume::filled(Dims::new(9, 7, 5).unwrap(), 42.0).unwrap();
        let out = gaussian_blur3d(&vol, 1.5).unwrap();
        assert!(out.voxels().iter().all(|&v| (v - 42.0).abs() < 1e-6));
    }

    #[test]
    fn impulse_response_is_outer_product() {
        let dims = Dims::cube(33).unwrap();
        let vol = VoxelVolume::from_fn(
            dims,
            |x, y, z| if (x, y, z) == (16, 16, 16) { 1.0 } else { 0.0 },
        )
        .unwrap();
        let out = gaussian_blur3d(&vol, 1.5).unwrap();
        // oracle: evaluate the normalized Gaussian taps directly
        let w = |k: i32| {
            let g = |j: i32| (-((j * j) as f64) / (2.0 * 1.5 * 1.5)).exp();
            g(k) / (-5..=5).map(g).sum::<f64>()
        };
        let (w0, w1) = (w(0), w(1));
        assert!((out.get(16, 16, 16) - w0 * w0 * w0).abs() < 1e-15);
        for (x, y, z) in [
            (17, 16, 16),
            (15, 16, 16),
            (16, 17, 16),
            (16, 15, 16),
            (16, 16, 17),
            (16, 16, 15),
        ] {
            assert!((out.get(x, y, z) - w0 * w0 * w1).abs() < 1e-15);
        }
        assert!((out.get(18, 17, 16) - w(2) * w1 * w0).abs() < 1e-15);
        assert_eq!(out.get(22, 16, 16), 0.0);
    }
}
