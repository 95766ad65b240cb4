use crate::calculus::SpectralData;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::space::{build_hierarchy, HierarchyMode, ModelSpace, NetHierarchy};

/// Extremal constants of `Σ_ξ |A_ξ| |f(ξ)|² / ‖f‖²` over the spectral space `Σ_{b^{j+2}}`.
#[derive(Clone, Debug)]
pub struct SamplingReport {
    pub level: i32,
    pub lower: f64,
    pub upper: f64,
    pub epsilon: f64,
    /// Dimension of the spectral space.
    pub dim: usize,
}

pub fn check_sampling(spec: &SpectralData, h: &NetHierarchy, k: usize) -> Result<SamplingReport> {
    let net = &h.levels[k];
    let cap = h.b.powi(net.level + 2) * (1.0 + 1e-12);
    let idx: Vec<usize> = (0..spec.n()).filter(|&i| spec.sqrt_eigenvalue(i) <= cap).collect();
    if idx.is_empty() {
        return Err(Error::Sampling(format!("spectral space at level {} is empty", net.level)));
    }
    let d = idx.len();
    let e = &spec.eigenfunctions;
    let g = Mat::from_fn(d, d, |a, c| {
        net.centers
            .iter()
            .zip(&net.a_vol)
            .map(|(&x, w)| w * e[(x, idx[a])] * e[(x, idx[c])])
            .sum()
    });
    let ev = g.symmetric_eigenvalues();
    let lower = ev.min();
    let upper = ev.max();
    Ok(SamplingReport { level: net.level, lower, upper, epsilon: (1.0 - lower).max(upper - 1.0), dim: d })
}

/// Builds the hierarchy, halving `γ` until every level samples with `ε < 1/2`.
pub fn accept_gamma(
    space: &ModelSpace,
    spec: &SpectralData,
    b: f64,
    gamma: f64,
    window: (i32, i32),
    mode: HierarchyMode,
) -> Result<(NetHierarchy, Vec<SamplingReport>)> {
    let mut g = gamma;
    for _ in 0..40 {
        let h = build_hierarchy(space, b, g, window, mode)?;
        let reports = (0..h.levels.len()).map(|k| check_sampling(spec, &h, k)).collect::<Result<Vec<_>>>()?;
        if reports.iter().all(|r| r.epsilon < 0.5) {
            return Ok((h, reports));
        }
        g *= 0.5;
    }
    Err(Error::Sampling(format!("no γ down to {g:.3e} gives ε < 1/2")))
}
