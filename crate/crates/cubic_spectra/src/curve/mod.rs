//! Certified topology of real plane curves of degree ≤ 5 and the
//! quintic/conic mutual-position tests: contact, visibility, the skew
//! criterion, and real intersection types of lines.
//!
//! The topology engine runs an exact vertical sweep in a sheared affine
//! chart: critical x-values come from a resultant, fiber root counts from
//! Sturm isolation, arcs are glued into circles through certified fold
//! windows, and the one-sided component is recognized by the parity of its
//! crossings with the line at infinity.

mod contact;
mod locate;
mod singular;
mod sweep;

pub use contact::*;
pub use locate::*;
pub use singular::*;
pub use sweep::*;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("input polynomial is not squarefree")]
    NotSquareFree,
    #[error("curve is singular; topology requires a smooth curve")]
    SingularInput,
    #[error("no tried chart/shear reached a generic sweep position")]
    ChartFailure,
    #[error("convexity of the four ovals could not be decided within budget")]
    ConvexityUndecided,
    #[error("the two curves share a component")]
    CommonComponent,
    #[error("the conic is not reduced (rank < 2)")]
    ThetaNotReduced,
    #[error("line is not generic for this test: {0}")]
    NonGenericLine(String),
    #[error("unsupported degree {0} (only 1..=5)")]
    BadDegree(u32),
    #[error("{0}")]
    Internal(String),
}

/// Deformation class codes of smooth quintic real loci.
pub use crate::atlas::QuinticCode as ClassCode;

/// Topological report of a smooth real plane curve of odd degree ≤ 5.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveTopology {
    pub class_code: ClassCode,
    pub ovals: Vec<OvalInfo>,
    /// A rational point close to the one-sided component, inside the same
    /// theta-region (certified on use).
    pub j_witness: (String, String),
    /// Chart transform and shear used, for reproducibility.
    pub chart: ChartInfo,
    pub oval_count: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OvalInfo {
    /// Interior witness point in the sweep chart (affine rational pair).
    pub witness: (String, String),
    /// Index of the oval that immediately contains this one, if nested.
    pub parent: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ChartInfo {
    /// Index of the projective chart move applied before shearing.
    pub chart_index: usize,
    /// Shear x -> x + k y.
    pub shear: i64,
}
