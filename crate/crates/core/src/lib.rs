//! Volumetric tumour contouring: seeded 3D region growing, slice-wise
//! morphological closing, Gaussian smoothing and a 3D two-phase Chan–Vese
//! level set, with overlap metrics and a rotational (VOCAL-style) comparator.
//!
//! Masks, volumes and level-set fields share one voxel layout (x-fastest,
//! zero-based) and one sign convention (`phi < 0` is inside).

pub mod error;
pub mod filters;
pub mod growing;
pub mod levelset;
pub mod metrics;
pub mod phantom;
pub mod pipeline;
pub mod vocal;
pub mod volume;

pub use error::{Error, Result};
pub use filters::{close_mask, dilate2d, erode2d, gaussian_blur3d, StructuringElement};
pub use growing::{region_grow, Acceptance, GrowParams};
pub use levelset::{
    curvature_field, cv_energy, cv_run, cv_step, region_means, ChanVeseParams, CvRun, CvState,
    CvTrace, TraceEntry,
};
pub use metrics::{similarity, SimilarityReport};
pub use phantom::{generate_phantom, PhantomShape, PhantomSpec};
pub use pipeline::{segment_pipeline, PipelineConfig, PipelineOutput, StageTimings};
pub use vocal::{
    slice_at_angle, vocal_approximation, vocal_contours, vocal_reconstruct, PlanarContour,
};
pub use volume::{
    export_overlay, load_mask, load_volume, mask_to_sdf, save_mask, save_volume, Axis, BinaryMask,
    Dims, LevelSetField, SeedPoint, VoxelVolume,
};
