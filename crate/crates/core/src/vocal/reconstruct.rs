use rayon::prelude::*;

use super::{PlanarContour, ANGLES, ANGLE_STEP};
use crate::error::{Error, Result};
use crate::volume::{BinaryMask, Dims};

/// Boundary radius of one contour at each integer height, on both sides of the axis.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiusProfile {
    /// Along `+(cos angle, sin angle)`.
    pub positive: Vec<f64>,
    /// Along `-(cos angle, sin angle)`.
    pub negative: Vec<f64>,
}

/// Scans the polygon with the horizontal line `a = z` for every `z` in
/// `0..heights`. Each side of the axis may cross the boundary at most once;
/// a side with no crossing has radius 0.
pub fn radius_profile(contour: &PlanarContour, heights: usize) -> Result<RadiusProfile> {
    let poly = &contour.polygon;
    let n = poly.len();
    let mut positive = vec![0.0; heights];
    let mut negative = vec![0.0; heights];
    for z in 0..heights {
        let level = z as f64;
        let (mut plus, mut minus) = (Vec::new(), Vec::new());
        for k in 0..n {
            let [a1, r1] = poly[k];
            let [a2, r2] = poly[(k + 1) % n];
            // half-open rule so a vertex on the line is counted once
            if (a1 <= level) == (a2 <= level) {
                continue;
            }
            let r = r1 + (level - a1) / (a2 - a1) * (r2 - r1);
            if r > 0.0 {
                plus.push(r);
            } else if r < 0.0 {
                minus.push(-r);
            }
        }
        if plus.len() > 1 || minus.len() > 1 {
            return Err(Error::NotStarShaped {
                angle: contour.angle,
                height: z,
            });
        }
        positive[z] = plus.first().copied().unwrap_or(0.0);
        negative[z] = minus.first().copied().unwrap_or(0.0);
    }
    Ok(RadiusProfile { positive, negative })
}

/// Maps a contour onto its canonical plane index in `0..6`, flipping sides when
/// the angle is given in `[180, 360)`.
fn canonical(contour: &PlanarContour) -> Result<(usize, PlanarContour)> {
    let angle = contour.angle.rem_euclid(360.0);
    let steps = angle / ANGLE_STEP;
    let rounded = steps.round();
    if (steps - rounded).abs() > 1e-9 {
        return Err(Error::InvalidContours(format!(
            "angle {} is not a multiple of {ANGLE_STEP}",
            contour.angle
        )));
    }
    let step = rounded as usize % 12;
    if step < 6 {
        Ok((
            step,
            PlanarContour {
                angle: ANGLES[step],
                ..contour.clone()
            },
        ))
    } else {
        let flipped = PlanarContour {
            angle: angle - 180.0,
            polygon: contour.polygon.iter().map(|&[a, r]| [a, -r]).collect(),
        };
        Ok((
            step - 6,
            PlanarContour {
                angle: ANGLES[step - 6],
                ..flipped
            },
        ))
    }
}

/// Rebuilds a volume from six contours on planes 30° apart.
///
/// The twelve half-planes (each contour's two sides) sample the boundary radius
/// at 30° intervals; between them the radius at height `z` is interpolated
/// linearly in angle. A voxel is inside when its distance from the axis is
/// below the interpolated radius.
pub fn vocal_reconstruct(
    contours: &[PlanarContour],
    dims: Dims,
    axis_point: [f64; 2],
) -> Result<BinaryMask> {
    if contours.len() != 6 {
        return Err(Error::InvalidContours(format!(
            "expected 6 contours, got {}",
            contours.len()
        )));
    }
    if axis_point.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter("axis point must be finite".into()));
    }
    let mut slots: [Option<RadiusProfile>; 6] = Default::default();
    for contour in contours {
        let (slot, canon) = canonical(contour)?;
        if slots[slot].is_some() {
            return Err(Error::InvalidContours(format!(
                "duplicate plane at {} degrees",
                ANGLES[slot]
            )));
        }
        canon.validate()?;
        slots[slot] = Some(radius_profile(&canon, dims.nz).map_err(|e| match e {
            Error::NotStarShaped { height, .. } => Error::NotStarShaped {
                angle: contour.angle,
                height,
            },
            other => other,
        })?);
    }
    let profiles: Vec<RadiusProfile> = slots
        .into_iter()
        .map(|s| s.expect("six distinct planes"))
        .collect();
    // half-plane h covers angle 30*h degrees
    let half_planes: Vec<&[f64]> = (0..12)
        .map(|h| {
            if h < 6 {
                profiles[h].positive.as_slice()
            } else {
                profiles[h - 6].negative.as_slice()
            }
        })
        .collect();

    let mut mask = BinaryMask::empty(dims);
    mask.bits_mut()
        .par_iter_mut()
        .enumerate()
        .for_each(|(i, bit)| {
            let (x, y, z) = dims.coords(i);
            let dx = x as f64 - axis_point[0];
            let dy = y as f64 - axis_point[1];
            let dist = dx.hypot(dy);
            let theta = dy.atan2(dx).to_degrees().rem_euclid(360.0);
            let h = ((theta / ANGLE_STEP).floor() as usize).min(11);
            let t = (theta - h as f64 * ANGLE_STEP) / ANGLE_STEP;
            let (r0, r1) = (half_planes[h][z], half_planes[(h + 1) % 12][z]);
            let radius = if r0 == r1 {
                r0
            } else {
                (1.0 - t) * r0 + t * r1
            };
            *bit = dist < radius;
        });
    Ok(mask)
}
