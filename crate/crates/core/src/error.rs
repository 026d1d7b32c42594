use thiserror::Error;

use crate::geometry::Point3;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// The algebra description itself is malformed (indices outside `1..=n`,
    /// wrong `u_map` length, ...). Rule violations are reported separately.
    #[error("malformed algebra spec: {0}")]
    Structural(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{what} index {index} out of range 1..={max}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        max: usize,
    },

    /// `f_u(a) = 0`, so `a` lies in the maximal ideal of `I_u`.
    #[error("element is not invertible: f_{u} vanishes")]
    NonInvertible { u: usize },

    #[error("linear solve failed: {0}")]
    Singular(String),

    #[error("resolvent pole: t coincides with xi_{u}")]
    Pole { u: usize },

    #[error("contour for u = {u} does not isolate xi_{u}: {reason}")]
    Contour { u: usize, reason: String },

    #[error("holomorphic function has a pole on or inside the contour for u = {u}")]
    ContourPole { u: usize },

    #[error("evaluation failed at ({}, {}, {}): {source}", .at.x, .at.y, .at.z)]
    Evaluation {
        at: Point3,
        #[source]
        source: Box<Error>,
    },

    #[error("curve does not embrace L_{u} once (winding number {winding})")]
    DoesNotEmbrace { u: usize, winding: i64 },

    #[error("winding number indeterminate: curve passes within {distance:e} of the centre at node {node}")]
    IndeterminateWinding { node: usize, distance: f64 },

    #[error("finite-difference stencil leaves the domain: {0}")]
    Domain(String),

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("invalid surface: {0}")]
    InvalidSurface(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unknown fixture '{0}'")]
    UnknownFixture(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn at(self, p: Point3) -> Error {
        match self {
            e @ Error::Evaluation { .. } => e,
            other => Error::Evaluation {
                at: p,
                source: Box::new(other),
            },
        }
    }
}
