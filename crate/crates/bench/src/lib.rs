//! Shared fixtures for the criterion benches.

use volseg_core::{generate_phantom, BinaryMask, Dims, PhantomSpec, VoxelVolume};

/// Noisy ellipsoid phantom on an `n`-cube with its ground truth.
pub fn noisy_phantom(n: usize, seed: u64) -> (VoxelVolume, BinaryMask) {
    let c = n as f64 / 2.0;
    let r = n as f64 / 5.0;
    let spec = PhantomSpec::ellipsoid([c; 3], [r * 1.1, r, r * 0.9]).with_noise(0.15, 8.0, seed);
    generate_phantom(Dims::cube(n).expect("non-zero size"), &spec).expect("phantom fits")
}
