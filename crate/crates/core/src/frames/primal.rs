use super::{level_bands, Frame, FrameKind};
use crate::calculus::{apply_symbol, level_symbol, Cutoff, CutoffKind, SpectralData};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::space::NetHierarchy;

/// `ψ_ξ = |A_ξ|^{1/2} Ψ(b^{-j}√L)(·, ξ)` with `Ψ(u) = Φ(u) − Φ(bu)`.
pub fn build_frame1(spec: &SpectralData, h: &NetHierarchy, phi: &Cutoff) -> Result<Frame> {
    if phi.kind != CutoffKind::LowPass {
        return Err(Error::InvalidArgument("frame #1 is generated by a low-pass cutoff".into()));
    }
    if (phi.b - h.b).abs() > 1e-15 * h.b {
        return Err(Error::InvalidArgument(format!("cutoff base {} differs from hierarchy base {}", phi.b, h.b)));
    }
    let n = spec.n();
    let mut elements = Mat::zeros(n, h.len());
    let mut level_of = Vec::with_capacity(h.len());
    for (k, net) in h.levels.iter().enumerate() {
        let kernel = apply_symbol(spec, level_symbol(net.level, h.b, h.mode), 1.0);
        for (i, xi) in h.range(k).enumerate() {
            let col = kernel.table.column(net.centers[i]) * net.a_vol[i].sqrt();
            elements.set_column(xi, &col);
            level_of.push(net.level);
        }
    }
    Ok(Frame { kind: FrameKind::Primal, elements, level_of, bands: level_bands(h, 1) })
}
