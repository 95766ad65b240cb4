use super::symbol::Symbol;
use crate::calculus::{Cutoff, SpectralData};
use crate::error::{Error, Result};
use crate::frames::Frame;
use crate::linalg::{Mat, Vector};
use crate::seqspace::{function_norm, Family, Flavor, SpaceParams};
use crate::space::ModelSpace;

/// Tolerance for the agreement of the frame route with direct spectral application.
pub const ROUTE_TOL: f64 = 1e-9;

/// The columns `m(√L) ψ_ξ` of a synthesis frame.
pub fn multiplied_frame(symbol: &Symbol, primal: &Frame, spec: &SpectralData) -> Mat {
    let vals: Vec<f64> = (0..spec.n()).map(|i| symbol.eval(spec.sqrt_eigenvalue(i))).collect();
    let mut c = spec.eigenfunctions.tr_mul(&crate::linalg::scale_rows(&primal.elements, &spec.mu));
    for (i, mut row) in c.row_iter_mut().enumerate() {
        row *= vals[i];
    }
    &spec.eigenfunctions * c
}

fn route_check(frame_route: &Vector, direct: &Vector, f: &Vector) -> Result<f64> {
    let scale = f.norm().max(direct.norm()).max(f64::MIN_POSITIVE);
    let diff = (frame_route - direct).norm() / scale;
    if diff > ROUTE_TOL {
        return Err(Error::Precondition(format!("frame and spectral routes disagree by {diff:.3e}")));
    }
    Ok(diff)
}

/// `m(√L) f = Σ_ξ ⟨f, ψ̃_ξ⟩ m(√L) ψ_ξ`, checked against direct spectral
/// application. Returns the result and the relative route difference.
///
/// `f` is projected onto the mean-zero subspace first.
pub fn apply_multiplier(
    symbol: &Symbol,
    f: &Vector,
    primal: &Frame,
    dual: &Frame,
    spec: &SpectralData,
) -> Result<(Vector, f64)> {
    let mf = multiplied_frame(symbol, primal, spec);
    apply_with(&mf, symbol, f, dual, spec)
}

fn apply_with(mf: &Mat, symbol: &Symbol, f: &Vector, dual: &Frame, spec: &SpectralData) -> Result<(Vector, f64)> {
    let f = spec.project_mean_zero(f);
    let via_frame = mf * dual.analysis(&f, &spec.mu);
    let direct = spec.apply_fn(&f, |u| symbol.eval(u));
    let diff = route_check(&via_frame, &direct, &f)?;
    Ok((via_frame, diff))
}

#[derive(Clone, Debug)]
pub struct MultiplierBoundedness {
    /// `(family, flavor, max_f ‖m(√L)f‖ / ‖f‖)`.
    pub entries: Vec<(Family, Flavor, f64)>,
    /// Largest relative route difference seen over the battery.
    pub max_route_diff: f64,
}

impl MultiplierBoundedness {
    pub fn ratio(&self, family: Family, flavor: Flavor) -> Option<f64> {
        self.entries.iter().find(|e| e.0 == family && e.1 == flavor).map(|e| e.2)
    }
}

/// Max over the battery of `‖m(√L)f‖ / ‖f‖` in Ḟ, F̃, Ḃ and B̃ at `params`'s
/// `(s, p, q)`. Zero-norm functions are skipped.
#[allow(clippy::too_many_arguments)]
pub fn boundedness_report(
    symbol: &Symbol,
    params: &SpaceParams,
    battery: &[Vector],
    space: &ModelSpace,
    spec: &SpectralData,
    primal: &Frame,
    dual: &Frame,
    phi: &Cutoff,
    b: f64,
) -> Result<MultiplierBoundedness> {
    let mf = multiplied_frame(symbol, primal, spec);
    let mut pairs = Vec::with_capacity(battery.len());
    let mut max_route_diff = 0.0f64;
    for f in battery {
        let g = spec.project_mean_zero(f);
        let (mg, diff) = apply_with(&mf, symbol, &g, dual, spec)?;
        max_route_diff = max_route_diff.max(diff);
        pairs.push((g, mg));
    }
    let mut entries = Vec::new();
    for family in [Family::TriebelLizorkin, Family::Besov] {
        for flavor in [Flavor::Classical, Flavor::Tilde] {
            if family == Family::TriebelLizorkin && params.p.is_infinite() {
                continue;
            }
            let pr = params.with_family(family).with_flavor(flavor);
            let mut worst = 0.0f64;
            for (g, mg) in &pairs {
                let den = function_norm(g, &pr, space, spec, phi, b)?;
                if den > 0.0 {
                    worst = worst.max(function_norm(mg, &pr, space, spec, phi, b)? / den);
                }
            }
            entries.push((family, flavor, worst));
        }
    }
    Ok(MultiplierBoundedness { entries, max_route_diff })
}
