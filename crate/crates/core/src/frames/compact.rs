use super::theta::BandLimitedTheta;
use super::{Frame, FrameKind};
use crate::addiag::neumann_series;
use crate::calculus::{SpectralData, SUPPORT_THRESHOLD};
use crate::error::{Error, Result};
use crate::linalg::{norm2, scale_rows, Mat, Vector};
use crate::space::{HierarchyMode, ModelSpace, NetHierarchy};

#[derive(Clone, Debug)]
pub struct CompactFrameReport {
    pub radius: f64,
    pub c_tilde: f64,
    /// Per level: `(j, measured support radius, bound c̃ R b^{-j})`.
    pub support: Vec<(i32, f64, f64)>,
    pub support_pass: bool,
}

/// `θ_ξ = |A_ξ|^{1/2} Θ(b^{-j}√L)(·, ξ)`.
pub fn build_compact_frame(
    space: &ModelSpace,
    spec: &SpectralData,
    h: &NetHierarchy,
    theta: &BandLimitedTheta,
    c_tilde: f64,
) -> Result<(Frame, CompactFrameReport)> {
    if h.mode == HierarchyMode::Inhomogeneous {
        return Err(Error::InvalidArgument("compact frames are built for homogeneous windows only".into()));
    }
    if (theta.b - h.b).abs() > 1e-15 * h.b {
        return Err(Error::InvalidArgument("Θ and hierarchy use different bases".into()));
    }
    let n = spec.n();
    let mut elements = Mat::zeros(n, h.len());
    let mut level_of = Vec::with_capacity(h.len());
    let mut support = Vec::new();
    for (k, net) in h.levels.iter().enumerate() {
        let scale = h.b.powi(-net.level);
        let vals: Vec<f64> = (0..n).map(|i| theta.eval(scale * spec.sqrt_eigenvalue(i))).collect();
        let table = spec.kernel_from_values(&vals);
        let mut worst = 0.0_f64;
        for (i, xi) in h.range(k).enumerate() {
            let c = net.centers[i];
            let col = table.column(c) * net.a_vol[i].sqrt();
            let peak = col.amax();
            for x in 0..n {
                if col[x].abs() > SUPPORT_THRESHOLD * peak {
                    worst = worst.max(space.dist[(x, c)]);
                }
            }
            elements.set_column(xi, &col);
            level_of.push(net.level);
        }
        support.push((net.level, worst, c_tilde * theta.radius * scale));
    }
    let support_pass = support.iter().all(|(_, r, b)| r <= b);
    let report = CompactFrameReport { radius: theta.radius, c_tilde, support, support_pass };
    Ok((Frame { kind: FrameKind::Compact, elements, level_of, bands: vec![None; h.levels.len()] }, report))
}

#[derive(Clone, Debug)]
pub struct CompactDualReport {
    /// Spectral norm of `D = (⟨ψ_η − θ_η, ψ̃_ξ⟩)`.
    pub d_norm: f64,
    pub neumann_terms: usize,
    /// Coefficient map `G = (I − D)^{-1} P` with `P = (⟨ψ_η, ψ̃_ξ⟩)`.
    pub coefficient_map: Mat,
    pub d_matrix: Mat,
    /// Worst `‖f − Σ⟨f,θ̃_ξ⟩θ_ξ‖₂/‖f‖₂` over the battery.
    pub residual: f64,
}

/// Dual of the compact frame computed at coefficient level.
///
/// With `s = (⟨f, ψ̃_η⟩)` and `t = (I − D)^{-1} s`, the identity
/// `f = Σ_ξ t_ξ θ_ξ` holds because `D` maps into the range of the projection `P`.
/// Then `θ̃_ξ = Σ_η G[ξ,η] ψ̃_η`.
pub fn build_compact_dual(
    spec: &SpectralData,
    primal: &Frame,
    dual: &Frame,
    compact: &Frame,
    battery: &[Vector],
) -> Result<(Frame, CompactDualReport)> {
    let mu = &spec.mu;
    let dm = scale_rows(&dual.elements, mu);
    let d = dm.tr_mul(&(&primal.elements - &compact.elements));
    let p = dm.tr_mul(&primal.elements);
    let d_norm = d.clone().svd(false, false).singular_values.max();
    if !(d_norm < 1.0) {
        return Err(Error::Precondition(format!(
            "‖D‖ = {d_norm:.3e} ≥ 1: shrink the Θ tolerance (raise R)"
        )));
    }
    let series = neumann_series(&d, 1e-14, 10_000)?;
    let g = &series.sum * &p;
    let elements = &dual.elements * g.transpose();
    let frame = Frame { kind: FrameKind::CompactDual, elements, level_of: dual.level_of.clone(), bands: dual.bands.clone() };
    let mut residual = 0.0_f64;
    for f in battery {
        let nf = norm2(f, mu);
        if nf == 0.0 {
            continue;
        }
        let back = compact.synthesis(&frame.analysis(f, mu));
        residual = residual.max(norm2(&(back - f), mu) / nf);
    }
    Ok((frame, CompactDualReport { d_norm, neumann_terms: series.terms, coefficient_map: g, d_matrix: d, residual }))
}
