//! Synthetic ultrasound-like tumour volumes with analytic ground truth.
//!
//! The noise stream comes from `Xoshiro256PlusPlus` seeded through
//! `SeedableRng::seed_from_u64` (SplitMix64 expansion of `rng_seed`), with
//! Gaussian deviates from `rand_distr::Normal` (ziggurat). Voxels are visited
//! in x-fastest order; each voxel draws its speckle deviate (when
//! `speckle_sigma > 0`) followed by its additive deviate (when
//! `additive_sigma > 0`). Final intensities are rounded to `f32` precision so a
//! phantom survives a VOL1 round-trip unchanged.

use rand::SeedableRng;
use rand_distr::{Distribution, Normal};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::volume::{BinaryMask, Dims, VoxelVolume};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhantomShape {
    Ellipsoid,
    /// Ellipsoid whose radius is modulated by
    /// `1 + lobe_amplitude * sin(n*azimuth) * sin(n*polar)`.
    Lobulated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhantomSpec {
    pub shape: PhantomShape,
    pub center: [f64; 3],
    pub radii: [f64; 3],
    #[serde(default)]
    pub lobe_count: u32,
    #[serde(default)]
    pub lobe_amplitude: f64,
    pub fg_intensity: f64,
    pub bg_intensity: f64,
    #[serde(default)]
    pub speckle_sigma: f64,
    #[serde(default)]
    pub additive_sigma: f64,
    #[serde(default)]
    pub rng_seed: u64,
}

impl PhantomSpec {
    /// Noiseless ellipsoid, foreground 200 on background 50.
    pub fn ellipsoid(center: [f64; 3], radii: [f64; 3]) -> Self {
        PhantomSpec {
            shape: PhantomShape::Ellipsoid,
            center,
            radii,
            lobe_count: 0,
            lobe_amplitude: 0.0,
            fg_intensity: 200.0,
            bg_intensity: 50.0,
            speckle_sigma: 0.0,
            additive_sigma: 0.0,
            rng_seed: 0,
        }
    }

    pub fn lobulated(
        center: [f64; 3],
        radii: [f64; 3],
        lobe_count: u32,
        lobe_amplitude: f64,
    ) -> Self {
        PhantomSpec {
            shape: PhantomShape::Lobulated,
            lobe_count,
            lobe_amplitude,
            ..Self::ellipsoid(center, radii)
        }
    }

    pub fn with_noise(mut self, speckle_sigma: f64, additive_sigma: f64, rng_seed: u64) -> Self {
        self.speckle_sigma = speckle_sigma;
        self.additive_sigma = additive_sigma;
        self.rng_seed = rng_seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self
            .center
            .iter()
            .chain(&self.radii)
            .any(|v| !v.is_finite())
        {
            return bad("center and radii must be finite".into());
        }
        if self.radii.iter().any(|&r| r <= 0.0) {
            return bad(format!("radii must be positive, got {:?}", self.radii));
        }
        if !(0.0..=0.5).contains(&self.lobe_amplitude) {
            return bad(format!(
                "lobe_amplitude {} outside [0, 0.5]",
                self.lobe_amplitude
            ));
        }
        for (name, v) in [
            ("fg_intensity", self.fg_intensity),
            ("bg_intensity", self.bg_intensity),
        ] {
            if !(0.0..=255.0).contains(&v) {
                return bad(format!("{name} {v} outside [0, 255]"));
            }
        }
        if self.fg_intensity == self.bg_intensity {
            return bad("fg_intensity must differ from bg_intensity".into());
        }
        for (name, v) in [
            ("speckle_sigma", self.speckle_sigma),
            ("additive_sigma", self.additive_sigma),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return bad(format!("{name} must be finite and >= 0, got {v}"));
            }
        }
        Ok(())
    }

    /// Largest radial scale factor the shape can reach.
    fn max_scale(&self) -> f64 {
        match self.shape {
            PhantomShape::Ellipsoid => 1.0,
            PhantomShape::Lobulated => 1.0 + self.lobe_amplitude,
        }
    }

    /// Analytic membership test for a voxel centre.
    pub fn contains(&self, x: f64, y: f64, z: f64) -> bool {
        let u = (x - self.center[0]) / self.radii[0];
        let v = (y - self.center[1]) / self.radii[1];
        let w = (z - self.center[2]) / self.radii[2];
        let rho2 = u * u + v * v + w * w;
        match self.shape {
            PhantomShape::Ellipsoid => rho2 <= 1.0,
            PhantomShape::Lobulated => {
                let rho = rho2.sqrt();
                let scale = if rho == 0.0 {
                    1.0
                } else {
                    let n = self.lobe_count as f64;
                    let azimuth = v.atan2(u);
                    let polar = (w / rho).clamp(-1.0, 1.0).acos();
                    1.0 + self.lobe_amplitude * (n * azimuth).sin() * (n * polar).sin()
                };
                rho <= scale
            }
        }
    }
}

/// Renders the phantom volume and its exact ground-truth mask.
pub fn generate_phantom(dims: Dims, spec: &PhantomSpec) -> Result<(VoxelVolume, BinaryMask)> {
    if dims.nx < 16 || dims.ny < 16 || dims.nz < 16 {
        return Err(Error::InvalidParameter(format!(
            "phantom dims must be >= 16 per axis, got {:?}",
            dims.as_array()
        )));
    }
    spec.validate()?;
    for (axis, &n) in dims.as_array().iter().enumerate() {
        let reach = spec.radii[axis] * spec.max_scale();
        let (lo, hi) = (spec.center[axis] - reach, spec.center[axis] + reach);
        if lo < 0.0 || hi > (n - 1) as f64 {
            return Err(Error::ShapeOutOfBounds(format!(
                "axis {axis}: [{lo}, {hi}] not inside [0, {}]",
                n - 1
            )));
        }
    }

    let mask = BinaryMask::from_fn(dims, |x, y, z| spec.contains(x as f64, y as f64, z as f64));

    let mut rng = Xoshiro256PlusPlus::seed_from_u64(spec.rng_seed);
    let speckle =
        Normal::new(0.0, spec.speckle_sigma).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let additive = Normal::new(0.0, spec.additive_sigma)
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;

    let voxels: Vec<f64> = mask
        .bits()
        .iter()
        .map(|&inside| {
            let mut v = if inside {
                spec.fg_intensity
            } else {
                spec.bg_intensity
            };
            if spec.speckle_sigma > 0.0 {
                v = (v * speckle.sample(&mut rng).exp()).clamp(0.0, 255.0);
            }
            if spec.additive_sigma > 0.0 {
                v = (v + additive.sample(&mut rng)).clamp(0.0, 255.0);
            }
            v as f32 as f64
        })
        .collect();

    Ok((VoxelVolume::new(dims, [1.0; 3], voxels)?, mask))
}
