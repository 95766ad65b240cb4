use super::function::function_norm;
use super::params::SpaceParams;
use super::sequence::seq_norm;
use crate::calculus::{Cutoff, SpectralData};
use crate::error::{Error, Result};
use crate::frames::{reconstruct, Frame};
use crate::linalg::{norm2, Vector};
use crate::space::{ModelSpace, NetHierarchy};

/// Measured norm-equivalence bands over a battery of test functions.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterizationReport {
    pub params: SpaceParams,
    /// `min/max ‖(⟨f, ψ̃_ξ⟩)‖_seq / ‖f‖`.
    pub ratio: (f64, f64),
    /// Same with the roles of `ψ` and `ψ̃` interchanged.
    pub swapped_ratio: (f64, f64),
    /// `max ‖f − Σ ⟨f, ψ̃_ξ⟩ ψ_ξ‖₂ / ‖f‖₂`.
    pub identity_residual: f64,
    pub swapped_identity_residual: f64,
    /// `min/max` of the function norm under the second cutoff over the first.
    pub cutoff_ratio: (f64, f64),
    /// Battery members that were identically zero and skipped.
    pub skipped: usize,
}

impl CharacterizationReport {
    pub fn identity_ok(&self, tol: f64) -> bool {
        self.identity_residual <= tol && self.swapped_identity_residual <= tol
    }

    /// `max/min` of the main ratio band.
    pub fn width(&self) -> f64 {
        self.ratio.1 / self.ratio.0
    }
}

fn widen(band: &mut (f64, f64), v: f64) {
    band.0 = band.0.min(v);
    band.1 = band.1.max(v);
}

/// Compares sequence norms of frame coefficients against function norms and
/// checks `T_ψ ∘ S_ψ̃ = Id` both ways round. `phis.1` is a second admissible
/// cutoff used only to compare function norms.
#[allow(clippy::too_many_arguments)]
pub fn check_frame_characterization(
    battery: &[Vector],
    params: &SpaceParams,
    space: &ModelSpace,
    spec: &SpectralData,
    h: &NetHierarchy,
    primal: &Frame,
    dual: &Frame,
    phis: (&Cutoff, &Cutoff),
    b: f64,
) -> Result<CharacterizationReport> {
    if primal.len() != h.len() || dual.len() != h.len() {
        return Err(Error::IndexMismatch(format!(
            "frames have {} and {} elements, hierarchy has {}",
            primal.len(),
            dual.len(),
            h.len()
        )));
    }
    let mu = &space.mu;
    let empty = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut ratio, mut swapped_ratio, mut cutoff_ratio) = (empty, empty, empty);
    let (mut res, mut res_sw) = (0.0_f64, 0.0_f64);
    let mut skipped = 0;
    for f in battery {
        let f = spec.project_mean_zero(f);
        let nf = norm2(&f, mu);
        if nf == 0.0 {
            skipped += 1;
            continue;
        }
        let fun = function_norm(&f, params, space, spec, phis.0, b)?;
        let fun2 = function_norm(&f, params, space, spec, phis.1, b)?;
        let c = dual.analysis(&f, mu);
        let c_sw = primal.analysis(&f, mu);
        widen(&mut ratio, seq_norm(&c, params, h, space)? / fun);
        widen(&mut swapped_ratio, seq_norm(&c_sw, params, h, space)? / fun);
        widen(&mut cutoff_ratio, fun2 / fun);
        res = res.max(norm2(&(primal.synthesis(&c) - &f), mu) / nf);
        res_sw = res_sw.max(norm2(&(reconstruct(dual, primal, &f, mu) - &f), mu) / nf);
    }
    Ok(CharacterizationReport {
        params: *params,
        ratio,
        swapped_ratio,
        identity_residual: res,
        swapped_identity_residual: res_sw,
        cutoff_ratio,
        skipped,
    })
}
