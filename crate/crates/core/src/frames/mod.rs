//! Frame #1 `{ψ_ξ}`, its dual `{ψ̃_ξ}`, band-limited approximants `Θ` and the
//! compactly supported frame `{θ_ξ}` with its coefficient-level dual.

mod compact;
mod dual;
mod primal;
mod properties;
mod sampling;
mod theta;

pub use compact::{build_compact_dual, build_compact_frame, CompactDualReport, CompactFrameReport};
pub use dual::{build_dual_frame, DualBuildReport};
pub use primal::build_frame1;
pub use properties::{check_frame_properties, frame_bounds, FrameBounds, FramePropertiesReport, NormBand};
pub use sampling::{accept_gamma, check_sampling, SamplingReport};
pub use theta::{build_band_limited_theta, BandLimitedTheta, ThetaReport};

use crate::linalg::{Mat, Vector};
use crate::space::NetHierarchy;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameKind {
    Primal,
    Dual,
    Compact,
    CompactDual,
}

/// Net-indexed family of functions; column `ξ` of `elements` is the element at `ξ`.
#[derive(Clone, Debug)]
pub struct Frame {
    pub kind: FrameKind,
    pub elements: Mat,
    /// Level `j` of each element.
    pub level_of: Vec<i32>,
    /// Spectral band per level position (in `√λ` units), where one is guaranteed.
    pub bands: Vec<Option<(f64, f64)>>,
}

impl Frame {
    pub fn len(&self) -> usize {
        self.elements.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn element(&self, xi: usize) -> Vector {
        self.elements.column(xi).into_owned()
    }

    /// `(⟨f, φ_ξ⟩_μ)_ξ`.
    pub fn analysis(&self, f: &Vector, mu: &Vector) -> Vector {
        self.elements.tr_mul(&f.component_mul(mu))
    }

    /// `Σ_ξ c_ξ φ_ξ`.
    pub fn synthesis(&self, c: &Vector) -> Vector {
        &self.elements * c
    }
}

/// `Σ_ξ ⟨f, anal_ξ⟩ synth_ξ`.
pub fn reconstruct(synth: &Frame, anal: &Frame, f: &Vector, mu: &Vector) -> Vector {
    synth.synthesis(&anal.analysis(f, mu))
}

/// Band of `[b^{j-w}, b^{j+w}]` for every level of the hierarchy.
pub(crate) fn level_bands(h: &NetHierarchy, width: i32) -> Vec<Option<(f64, f64)>> {
    h.levels
        .iter()
        .map(|net| {
            let j = net.level;
            let lo = if h.mode == crate::space::HierarchyMode::Inhomogeneous && j == 0 {
                0.0
            } else {
                h.b.powi(j - width)
            };
            Some((lo, h.b.powi(j + width)))
        })
        .collect()
}
