//! Rotational (VOCAL-style) contouring: six planar contours at 30° steps about
//! a z-parallel axis, and the volume they imply under linear-in-angle radius
//! interpolation.

mod reconstruct;
mod slice;

pub use reconstruct::{radius_profile, vocal_reconstruct, RadiusProfile};
pub use slice::slice_at_angle;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::volume::BinaryMask;

/// Angular step between contour planes, degrees.
pub const ANGLE_STEP: f64 = 30.0;

/// Canonical plane angles.
pub const ANGLES: [f64; 6] = [0.0, 30.0, 60.0, 90.0, 120.0, 150.0];

/// Closed contour on one rotational plane. Each point is `[a, r]`: `a` is the
/// height along the axis (z), `r` the signed distance from the axis along the
/// plane direction `(cos angle, sin angle)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanarContour {
    pub angle: f64,
    #[serde(rename = "points")]
    pub polygon: Vec<[f64; 2]>,
}

impl PlanarContour {
    /// Same plane described from the opposite side: angle + 180° with `r` negated.
    pub fn flipped(&self) -> PlanarContour {
        PlanarContour {
            angle: (self.angle + 180.0) % 360.0,
            polygon: self.polygon.iter().map(|&[a, r]| [a, -r]).collect(),
        }
    }

    /// Star-shaped outline that keeps, at every integer height, the outermost
    /// boundary crossing on each side of the axis and fills inward to the axis.
    ///
    /// This is the shape a rotational tracer can represent; for a contour that
    /// is already star-shaped about the axis it yields the same radius profile.
    pub fn radial_envelope(&self) -> Result<PlanarContour> {
        self.validate()?;
        let (lo, hi) = self
            .polygon
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                (lo.min(p[0]), hi.max(p[0]))
            });
        let n = self.polygon.len();
        let mut rows: Vec<(f64, f64, f64)> = Vec::new();
        for z in lo.ceil() as i64..=hi.floor() as i64 {
            let level = z as f64;
            let (mut plus, mut minus) = (0.0f64, 0.0f64);
            let mut hit = false;
            for k in 0..n {
                let [a1, r1] = self.polygon[k];
                let [a2, r2] = self.polygon[(k + 1) % n];
                if (a1 <= level) == (a2 <= level) {
                    continue;
                }
                let r = r1 + (level - a1) / (a2 - a1) * (r2 - r1);
                hit = true;
                if r > 0.0 {
                    plus = plus.max(r);
                } else {
                    minus = minus.max(-r);
                }
            }
            if hit && (plus > 0.0 || minus > 0.0) {
                rows.push((level, plus, minus));
            }
        }
        let (Some(first), Some(last)) = (rows.first(), rows.last()) else {
            return Err(Error::InvalidContours(format!(
                "contour at {} degrees spans no integer height",
                self.angle
            )));
        };
        let mut polygon = vec![[first.0 - 0.5, 0.0]];
        polygon.extend(rows.iter().map(|&(z, plus, _)| [z, plus]));
        polygon.push([last.0 + 0.5, 0.0]);
        polygon.extend(rows.iter().rev().map(|&(z, _, minus)| [z, -minus]));
        Ok(PlanarContour {
            angle: self.angle,
            polygon,
        })
    }

    /// Checks vertex count and that no two non-adjacent edges intersect.
    pub fn validate(&self) -> Result<()> {
        let n = self.polygon.len();
        if n < 3 {
            return Err(Error::InvalidContours(format!(
                "contour at {} degrees has {n} vertices",
                self.angle
            )));
        }
        if self.polygon.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidContours(format!(
                "contour at {} degrees has non-finite vertices",
                self.angle
            )));
        }
        let edge = |k: usize| (self.polygon[k], self.polygon[(k + 1) % n]);
        for i in 0..n {
            for j in i + 1..n {
                if j == i + 1 || (i == 0 && j == n - 1) {
                    continue;
                }
                let (p1, p2) = edge(i);
                let (q1, q2) = edge(j);
                if segments_intersect(p1, p2, q1, q2) {
                    return Err(Error::InvalidContours(format!(
                        "contour at {} degrees self-intersects (edges {i} and {j})",
                        self.angle
                    )));
                }
            }
        }
        Ok(())
    }
}

fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn on_segment(a: [f64; 2], b: [f64; 2], p: [f64; 2]) -> bool {
    p[0] >= a[0].min(b[0])
        && p[0] <= a[0].max(b[0])
        && p[1] >= a[1].min(b[1])
        && p[1] <= a[1].max(b[1])
}

fn segments_intersect(p1: [f64; 2], p2: [f64; 2], q1: [f64; 2], q2: [f64; 2]) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(q1, q2, p1))
        || (d2 == 0.0 && on_segment(q1, q2, p2))
        || (d3 == 0.0 && on_segment(p1, p2, q1))
        || (d4 == 0.0 && on_segment(p1, p2, q2))
}

/// In-plane centroid of the mask, the default rotation axis.
pub fn default_axis(mask: &BinaryMask) -> Option<[f64; 2]> {
    mask.centroid().map(|c| [c[0], c[1]])
}

/// Slices the mask at the six canonical angles.
pub fn vocal_contours(mask: &BinaryMask, axis_point: [f64; 2]) -> Result<Vec<PlanarContour>> {
    ANGLES
        .iter()
        .map(|&a| slice_at_angle(mask, axis_point, a))
        .collect()
}

/// Rotational approximation of a mask: six traced contours, each replaced by
/// its radial envelope, then reconstructed.
pub fn vocal_approximation(mask: &BinaryMask, axis_point: [f64; 2]) -> Result<BinaryMask> {
    let contours = vocal_contours(mask, axis_point)?
        .iter()
        .map(PlanarContour::radial_envelope)
        .collect::<Result<Vec<_>>>()?;
    vocal_reconstruct(&contours, mask.dims(), axis_point)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let c = PlanarContour {
            angle: 30.0,
            polygon: vec![[0.0, 1.0], [1.0, 1.0], [1.0, -1.0]],
        };
        let v: serde_json::Value = serde_json::to_value(&c).unwrap();
        assert_eq!(v["angle"], 30.0);
        assert_eq!(v["points"][1][0], 1.0);
        let back: PlanarContour = serde_json::from_value(v).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn bow_tie_is_rejected() {
        let c = PlanarContour {
            angle: 0.0,
            polygon: vec![[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]],
        };
        assert!(matches!(c.validate(), Err(Error::InvalidContours(_))));
        let ok = PlanarContour {
            angle: 0.0,
            polygon: vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
        };
        assert!(ok.validate().is_ok());
        let short = PlanarContour {
            angle: 0.0,
            polygon: vec![[0.0, 0.0], [1.0, 0.0]],
        };
        assert!(short.validate().is_err());
    }

    #[test]
    fn envelope_of_notched_contour() {
        // a "U" opening upward on the + side: two crossings at heights 3..=5
        let u = PlanarContour {
            angle: 0.0,
            polygon: vec![
                [0.5, -2.0],
                [0.5, 6.0],
                [5.5, 6.0],
                [5.5, 4.0],
                [2.5, 4.0],
                [2.5, 2.0],
                [5.5, 2.0],
                [5.5, -2.0],
            ],
        };
        assert!(u.validate().is_ok());
        assert!(reconstruct::radius_profile(&u, 6).is_err());
        let env = u.radial_envelope().unwrap();
        assert!(env.validate().is_ok());
        let p = reconstruct::radius_profile(&env, 7).unwrap();
        assert_eq!(p.positive, vec![0.0, 6.0, 6.0, 6.0, 6.0, 6.0, 0.0]);
        assert_eq!(p.negative, vec![0.0, 2.0, 2.0, 2.0, 2.0, 2.0, 0.0]);
    }

    #[test]
    fn flip_round_trips() {
        let c = PlanarContour {
            angle: 120.0,
            polygon: vec![[0.0, 2.0], [1.0, -3.0], [2.0, 2.0]],
        };
        assert_eq!(c.flipped().angle, 300.0);
        assert_eq!(c.flipped().flipped(), c);
    }
}
