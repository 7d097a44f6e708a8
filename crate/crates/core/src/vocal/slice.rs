use std::collections::{HashMap, VecDeque};

use super::PlanarContour;
use crate::error::{Error, Result};
use crate::volume::BinaryMask;

/// Binary image sampled on a plane through the rotation axis.
/// Column `i` is the signed radial coordinate `i - half`, row `j` is height `z = j`.
struct PlaneImage {
    width: usize,
    height: usize,
    half: isize,
    pixels: Vec<bool>,
}

fn bilinear(mask: &BinaryMask, z: usize, px: f64, py: f64) -> f64 {
    let dims = mask.dims();
    let x0 = px.floor();
    let y0 = py.floor();
    let (fx, fy) = (px - x0, py - y0);
    let at = |x: f64, y: f64| -> f64 {
        if x < 0.0 || y < 0.0 || x >= dims.nx as f64 || y >= dims.ny as f64 {
            0.0
        } else if mask.get(x as usize, y as usize, z) {
            1.0
        } else {
            0.0
        }
    };
    (1.0 - fx) * (1.0 - fy) * at(x0, y0)
        + fx * (1.0 - fy) * at(x0 + 1.0, y0)
        + (1.0 - fx) * fy * at(x0, y0 + 1.0)
        + fx * fy * at(x0 + 1.0, y0 + 1.0)
}

fn sample_plane(mask: &BinaryMask, axis_point: [f64; 2], angle_deg: f64) -> PlaneImage {
    let dims = mask.dims();
    let corners = [
        (0.0, 0.0),
        ((dims.nx - 1) as f64, 0.0),
        (0.0, (dims.ny - 1) as f64),
        ((dims.nx - 1) as f64, (dims.ny - 1) as f64),
    ];
    let reach = corners
        .iter()
        .map(|&(x, y)| ((x - axis_point[0]).powi(2) + (y - axis_point[1]).powi(2)).sqrt())
        .fold(0.0, f64::max);
    let half = reach.ceil() as isize + 1;
    let width = (2 * half + 1) as usize;
    let (sin, cos) = angle_deg.to_radians().sin_cos();
    let mut pixels = Vec::with_capacity(width * dims.nz);
    for z in 0..dims.nz {
        for i in 0..width {
            let s = (i as isize - half) as f64;
            let v = bilinear(mask, z, axis_point[0] + s * cos, axis_point[1] + s * sin);
            pixels.push(v >= 0.5);
        }
    }
    PlaneImage {
        width,
        height: dims.nz,
        half,
        pixels,
    }
}

/// 4-connected component labels; returns (labels, sizes). Label 0 is background.
fn label_components(img: &PlaneImage) -> (Vec<usize>, Vec<usize>) {
    let mut labels = vec![0usize; img.pixels.len()];
    let mut sizes = vec![0usize];
    let mut queue = VecDeque::new();
    for start in 0..img.pixels.len() {
        if !img.pixels[start] || labels[start] != 0 {
            continue;
        }
        let label = sizes.len();
        sizes.push(0);
        labels[start] = label;
        queue.push_back(start);
        while let Some(p) = queue.pop_front() {
            sizes[label] += 1;
            let (i, j) = (p % img.width, p / img.width);
            let mut visit = |q: usize| {
                if img.pixels[q] && labels[q] == 0 {
                    labels[q] = label;
                    queue.push_back(q);
                }
            };
            if i > 0 {
                visit(p - 1);
            }
            if i + 1 < img.width {
                visit(p + 1);
            }
            if j > 0 {
                visit(p - img.width);
            }
            if j + 1 < img.height {
                visit(p + img.width);
            }
        }
    }
    (labels, sizes)
}

/// Picks the component that the axis passes through (largest if several);
/// otherwise the one holding the foreground pixel nearest the axis.
fn select_component(img: &PlaneImage, labels: &[usize], sizes: &[usize]) -> Option<usize> {
    let axis_col = img.half as usize;
    let on_axis = (0..img.height)
        .map(|j| labels[axis_col + j * img.width])
        .filter(|&l| l != 0)
        .max_by_key(|&l| (sizes[l], std::cmp::Reverse(l)));
    if on_axis.is_some() {
        return on_axis;
    }
    labels
        .iter()
        .enumerate()
        .filter(|(_, &l)| l != 0)
        .min_by_key(|&(p, &l)| {
            let i = (p % img.width) as isize;
            (
                (i - img.half).unsigned_abs(),
                std::cmp::Reverse(sizes[l]),
                l,
            )
        })
        .map(|(_, &l)| l)
}

/// Marching squares on a binary image (4-connected foreground), returning every
/// closed boundary loop in doubled padded coordinates.
fn trace_loops(
    width: usize,
    height: usize,
    inside: impl Fn(usize, usize) -> bool,
) -> Vec<Vec<(i64, i64)>> {
    // padded by one pixel on every side
    let fg = |i: i64, j: i64| -> bool {
        if i < 1 || j < 1 || i > width as i64 || j > height as i64 {
            false
        } else {
            inside((i - 1) as usize, (j - 1) as usize)
        }
    };
    let mut segments: Vec<[(i64, i64); 2]> = Vec::new();
    for cj in 0..=height as i64 {
        for ci in 0..=width as i64 {
            let b0 = fg(ci, cj);
            let b1 = fg(ci + 1, cj);
            let b2 = fg(ci + 1, cj + 1);
            let b3 = fg(ci, cj + 1);
            let bottom = (2 * ci + 1, 2 * cj);
            let right = (2 * ci + 2, 2 * cj + 1);
            let top = (2 * ci + 1, 2 * cj + 2);
            let left = (2 * ci, 2 * cj + 1);
            let case = (b0 as u8) | (b1 as u8) << 1 | (b2 as u8) << 2 | (b3 as u8) << 3;
            match case {
                0 | 15 => {}
                // diagonal pairs are not 4-connected: cut each corner off separately
                5 => {
                    segments.push([left, bottom]);
                    segments.push([right, top]);
                }
                10 => {
                    segments.push([bottom, right]);
                    segments.push([top, left]);
                }
                _ => {
                    let crossed: Vec<(i64, i64)> = [
                        (b0 != b1, bottom),
                        (b1 != b2, right),
                        (b2 != b3, top),
                        (b3 != b0, left),
                    ]
                    .into_iter()
                    .filter_map(|(c, p)| c.then_some(p))
                    .collect();
                    segments.push([crossed[0], crossed[1]]);
                }
            }
        }
    }

    let mut incident: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (k, s) in segments.iter().enumerate() {
        incident.entry(s[0]).or_default().push(k);
        incident.entry(s[1]).or_default().push(k);
    }
    let mut used = vec![false; segments.len()];
    let mut loops = Vec::new();
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let origin = segments[start][0];
        let mut ring = vec![origin];
        let mut cursor = segments[start][1];
        while cursor != origin {
            ring.push(cursor);
            let next = incident[&cursor].iter().copied().find(|&k| !used[k]);
            let Some(k) = next else { break };
            used[k] = true;
            let s = segments[k];
            cursor = if s[0] == cursor { s[1] } else { s[0] };
        }
        loops.push(ring);
    }
    loops
}

fn signed_area(points: &[[f64; 2]]) -> f64 {
    let n = points.len();
    (0..n)
        .map(|k| {
            let p = points[k];
            let q = points[(k + 1) % n];
            p[0] * q[1] - q[0] * p[1]
        })
        .sum::<f64>()
        * 0.5
}

/// Traces the mask's cross-section on the plane through the z-parallel axis at
/// `axis_point`, rotated `angle` degrees from +x. Points are `[z, r]` with `r`
/// the signed distance from the axis along the plane direction.
pub fn slice_at_angle(
    mask: &BinaryMask,
    axis_point: [f64; 2],
    angle: f64,
) -> Result<PlanarContour> {
    if !angle.is_finite() || axis_point.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter(
            "angle and axis point must be finite".into(),
        ));
    }
    let img = sample_plane(mask, axis_point, angle);
    let (labels, sizes) = label_components(&img);
    let label =
        select_component(&img, &labels, &sizes).ok_or(Error::EmptyIntersection { angle })?;

    let loops = trace_loops(img.width, img.height, |i, j| {
        labels[i + j * img.width] == label
    });
    let to_plane = |(kx, ky): (i64, i64)| -> [f64; 2] {
        let i = kx as f64 / 2.0 - 1.0;
        let j = ky as f64 / 2.0 - 1.0;
        [j, i - img.half as f64]
    };
    let mut best: Option<Vec<[f64; 2]>> = None;
    let mut best_area = 0.0;
    for ring in loops {
        let pts: Vec<[f64; 2]> = ring.into_iter().map(to_plane).collect();
        let area = signed_area(&pts).abs();
        if area > best_area {
            best_area = area;
            best = Some(pts);
        }
    }
    let mut polygon = best.ok_or(Error::EmptyIntersection { angle })?;
    if signed_area(&polygon) < 0.0 {
        polygon.reverse();
    }
    Ok(PlanarContour { angle, polygon })
}
