use super::gram::gram;
use crate::calculus::{Cutoff, SpectralData};
use crate::error::{Error, Result};
use crate::frames::Frame;
use crate::linalg::{Mat, Vector};
use crate::seqspace::{function_norm, seq_norm, SpaceParams};
use crate::space::{ModelSpace, NetHierarchy};

/// `Σ_ξ t_ξ m_ξ` with the measured ratio `‖Σ t_ξ m_ξ‖ / ‖t‖_seq` (0 for `t = 0`).
#[allow(clippy::too_many_arguments)]
pub fn molecular_synthesis(
    t: &Vector,
    family: &Mat,
    params: &SpaceParams,
    space: &ModelSpace,
    spec: &SpectralData,
    h: &NetHierarchy,
    phi: &Cutoff,
    b: f64,
) -> Result<(Vector, f64)> {
    if family.ncols() != t.len() {
        return Err(Error::IndexMismatch(format!("{} coefficients for {} molecules", t.len(), family.ncols())));
    }
    let f = family * t;
    let nt = seq_norm(t, params, h, space)?;
    let ratio = if nt == 0.0 { 0.0 } else { function_norm(&f, params, space, spec, phi, b)? / nt };
    Ok((f, ratio))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalysisReport {
    /// `max_ξ |⟨f, m̃_ξ⟩ via the frame expansion − ⟨f, m̃_ξ⟩_μ|`.
    pub direct_diff: f64,
    /// `‖(⟨f, m̃_ξ⟩)‖_seq / ‖f‖` (0 for `f = 0`).
    pub ratio: f64,
}

/// `⟨f, m̃_ξ⟩ := Σ_η ⟨m̃_ξ, ψ_η⟩ ⟨f, ψ̃_η⟩`, compared with the direct inner product.
#[allow(clippy::too_many_arguments)]
pub fn molecular_analysis(
    f: &Vector,
    family: &Mat,
    primal: &Frame,
    dual: &Frame,
    params: &SpaceParams,
    space: &ModelSpace,
    spec: &SpectralData,
    h: &NetHierarchy,
    phi: &Cutoff,
    b: f64,
) -> Result<(Vector, AnalysisReport)> {
    let mu = &space.mu;
    let f = spec.project_mean_zero(f);
    let cross = gram(&primal.elements, family, mu)?;
    let coeffs = cross * dual.analysis(&f, mu);
    let direct = family.tr_mul(&f.component_mul(mu));
    let direct_diff = (&coeffs - &direct).amax();
    let nf = function_norm(&f, params, space, spec, phi, b)?;
    let ratio = if nf == 0.0 { 0.0 } else { seq_norm(&coeffs, params, h, space)? / nf };
    Ok((coeffs, AnalysisReport { direct_diff, ratio }))
}
