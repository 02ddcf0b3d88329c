//! Serializable report types shared by the CLI and the analysis pipeline.

use serde::{Deserialize, Serialize};

/// Input document for a marked cubic threefold.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ThreefoldDocument {
    pub variables: Vec<String>,
    pub cubic: String,
    /// Two spanning points with rational coordinates (as strings "p/q").
    pub line: [Vec<String>; 2],
}

/// Input document for a marked cubic surface (4 variables).
pub type SurfaceDocument = ThreefoldDocument;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectralReport {
    pub quintic: String,
    pub theta: String,
    pub quintic_vanishes: bool,
    pub theta_vanishes: bool,
    pub line_smoothness: String,
    pub line_type: Option<String>,
}
