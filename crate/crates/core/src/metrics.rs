//! Volumetric overlap measures between a reference and a segmentation mask.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::volume::BinaryMask;

/// SI (Dice), OF (overlap fraction), OV (Jaccard) and EF (extra fraction),
/// stored with the counts they are derived from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimilarityReport {
    pub si: f64,
    pub of: f64,
    pub ov: f64,
    pub ef: f64,
    pub n_ref: usize,
    pub n_seg: usize,
    pub n_overlap: usize,
}

impl SimilarityReport {
    pub fn from_counts(n_ref: usize, n_seg: usize, n_overlap: usize) -> Result<Self> {
        if n_ref == 0 {
            return Err(Error::EmptyReference);
        }
        if n_overlap > n_ref.min(n_seg) {
            return Err(Error::InvalidParameter(format!(
                "overlap {n_overlap} exceeds mask sizes {n_ref}/{n_seg}"
            )));
        }
        let (r, s, o) = (n_ref as f64, n_seg as f64, n_overlap as f64);
        Ok(SimilarityReport {
            si: 2.0 * o / (r + s),
            of: o / r,
            ov: o / (r + s - o),
            ef: (s - o) / r,
            n_ref,
            n_seg,
            n_overlap,
        })
    }
}

pub fn similarity(reference: &BinaryMask, segmentation: &BinaryMask) -> Result<SimilarityReport> {
    reference.dims().ensure_same(&segmentation.dims())?;
    let (n_ref, n_seg, n_overlap) = reference
        .bits()
        .par_iter()
        .zip(segmentation.bits().par_iter())
        .map(|(&r, &s)| (r as usize, s as usize, (r && s) as usize))
        .reduce(|| (0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    SimilarityReport::from_counts(n_ref, n_seg, n_overlap)
}
