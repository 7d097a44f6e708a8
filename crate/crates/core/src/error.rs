use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed header: {0}")]
    Header(String),

    #[error("payload size mismatch: expected {expected} bytes, found {actual}")]
    PayloadSize { expected: usize, actual: usize },

    #[error("non-finite value at voxel index {index}")]
    NonFinite { index: usize },

    #[error("invalid dimensions {0:?}")]
    InvalidDims([usize; 3]),

    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimsMismatch { left: [usize; 3], right: [usize; 3] },

    #[error("mask has no boundary (all voxels {0})")]
    NoBoundary(&'static str),

    #[error("index {index} out of range for axis of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("seed ({x}, {y}, {z}) outside volume {dims:?}")]
    SeedOutOfBounds {
        x: usize,
        y: usize,
        z: usize,
        dims: [usize; 3],
    },

    #[error("phase collapse at iteration {iter}: one region became empty")]
    PhaseCollapse { iter: usize },

    #[error("reference mask is empty")]
    EmptyReference,

    #[error("plane at {angle} degrees does not intersect the mask")]
    EmptyIntersection { angle: f64 },

    #[error("contour at {angle} degrees is not star-shaped about the axis (height {height})")]
    NotStarShaped { angle: f64, height: usize },

    #[error("invalid contour set: {0}")]
    InvalidContours(String),

    #[error("shape exceeds volume bounds: {0}")]
    ShapeOutOfBounds(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Stable machine-readable code used by the command-line driver.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Io { .. } => "IO",
            Error::Header(_) => "HEADER",
            Error::PayloadSize { .. } => "PAYLOAD_SIZE",
            Error::NonFinite { .. } => "NON_FINITE",
            Error::InvalidDims(_) => "INVALID_DIMS",
            Error::DimsMismatch { .. } => "DIMS_MISMATCH",
            Error::NoBoundary(_) => "NO_BOUNDARY",
            Error::IndexOutOfRange { .. } => "INDEX_OUT_OF_RANGE",
            Error::InvalidParameter(_) => "INVALID_PARAMETER",
            Error::SeedOutOfBounds { .. } => "SEED_OUT_OF_BOUNDS",
            Error::PhaseCollapse { .. } => "PHASE_COLLAPSE",
            Error::EmptyReference => "EMPTY_REFERENCE",
            Error::EmptyIntersection { .. } => "EMPTY_INTERSECTION",
            Error::NotStarShaped { .. } => "NOT_STAR_SHAPED",
            Error::InvalidContours(_) => "INVALID_CONTOURS",
            Error::ShapeOutOfBounds(_) => "SHAPE_OUT_OF_BOUNDS",
            Error::Json(_) => "JSON",
            Error::Csv(_) => "CSV",
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
