use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::volume::BinaryMask;

/// Square in-plane structuring element of odd width.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructuringElement {
    width: usize,
}

impl StructuringElement {
    /// Even widths have no centre voxel and are widened by one (20 becomes 21).
    pub fn new(width: usize) -> Result<Self> {
        if width == 0 {
            return Err(Error::InvalidParameter(
                "structuring element width must be >= 1".into(),
            ));
        }
        Ok(StructuringElement {
            width: if width.is_multiple_of(2) {
                width + 1
            } else {
                width
            },
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn half(&self) -> usize {
        self.width / 2
    }
}

#[derive(Clone, Copy)]
enum Op {
    Dilate,
    Erode,
}

/// One 1D pass over `len` samples spaced `stride` apart.
/// Samples beyond the line count as false for both operations.
fn pass_line(
    src: &[bool],
    dst: &mut [bool],
    len: usize,
    stride: usize,
    half: usize,
    op: Op,
    prefix: &mut Vec<usize>,
) {
    prefix.clear();
    prefix.push(0);
    for i in 0..len {
        let last = prefix[i];
        prefix.push(last + src[i * stride] as usize);
    }
    for i in 0..len {
        let lo = i.saturating_sub(half);
        let hi = (i + half).min(len - 1);
        let ones = prefix[hi + 1] - prefix[lo];
        dst[i * stride] = match op {
            Op::Dilate => ones > 0,
            Op::Erode => ones == 2 * half + 1,
        };
    }
}

fn apply_slice(src: &[bool], dst: &mut [bool], nx: usize, ny: usize, half: usize, op: Op) {
    let mut rows = vec![false; src.len()];
    let mut prefix = Vec::with_capacity(nx.max(ny) + 1);
    for y in 0..ny {
        let r = y * nx..(y + 1) * nx;
        pass_line(&src[r.clone()], &mut rows[r], nx, 1, half, op, &mut prefix);
    }
    for x in 0..nx {
        pass_line(&rows[x..], &mut dst[x..], ny, nx, half, op, &mut prefix);
    }
}

fn apply(mask: &BinaryMask, se: StructuringElement, op: Op) -> BinaryMask {
    let dims = mask.dims();
    let plane = dims.slice_len();
    let mut out = BinaryMask::empty(dims);
    out.bits_mut()
        .par_chunks_mut(plane)
        .zip(mask.bits().par_chunks(plane))
        .for_each(|(dst, src)| apply_slice(src, dst, dims.nx, dims.ny, se.half(), op));
    out
}

/// Per-slice (fixed z) dilation by the width×width square.
pub fn dilate2d(mask: &BinaryMask, se: StructuringElement) -> BinaryMask {
    apply(mask, se, Op::Dilate)
}

/// Per-slice erosion; voxels whose square reaches past the slice edge are cleared.
pub fn erode2d(mask: &BinaryMask, se: StructuringElement) -> BinaryMask {
    apply(mask, se, Op::Erode)
}

/// Slice-wise morphological closing (dilation followed by erosion).
pub fn close_mask(mask: &BinaryMask, se: StructuringElement) -> BinaryMask {
    erode2d(&dilate2d(mask, se), se)
}
