//! Supporting filters: Gaussian pre-smoothing of the intensity volume and
//! slice-wise morphological closing of the initial region.

mod gaussian;
mod morphology;

pub use gaussian::{gaussian_blur3d, gaussian_blur3d_ordered, gaussian_kernel};
pub use morphology::{close_mask, dilate2d, erode2d, StructuringElement};
