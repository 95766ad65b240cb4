use crate::addiag::{ad_norm, NetGeometry};
use crate::error::{Error, Result};
use crate::linalg::{scale_rows, Mat, Vector};
use crate::seqspace::SpaceParams;

/// `a_{ξη} = ⟨m_η, m̃_ξ⟩_μ` for synthesis columns `m` and analysis columns `m̃`.
pub fn gram(synth: &Mat, anal: &Mat, mu: &Vector) -> Result<Mat> {
    if synth.nrows() != anal.nrows() || synth.nrows() != mu.len() {
        return Err(Error::IndexMismatch("families live on different point sets".into()));
    }
    Ok(anal.tr_mul(&scale_rows(synth, mu)))
}

#[derive(Clone, Debug)]
pub struct GramCertificate {
    /// `(δ, ‖A‖_δ)` over the scanned grid.
    pub scan: Vec<(f64, f64)>,
    pub budget: f64,
    /// Largest `δ` of the grid with `‖A‖_δ ≤ budget`, with its constant.
    pub best: Option<(f64, f64)>,
}

impl GramCertificate {
    pub fn pass(&self) -> bool {
        self.best.is_some()
    }
}

/// Scans `‖A‖_δ` over `deltas` and keeps the largest margin within budget.
pub fn gram_certificate(
    a: &Mat,
    g: &NetGeometry,
    params: &SpaceParams,
    deltas: &[f64],
    budget: f64,
) -> Result<GramCertificate> {
    let mut scan = Vec::with_capacity(deltas.len());
    for &d in deltas {
        scan.push((d, ad_norm(a, g, d, params)?.value));
    }
    let best = scan.iter().filter(|(_, c)| *c <= budget).max_by(|x, y| x.0.total_cmp(&y.0)).copied();
    Ok(GramCertificate { scan, budget, best })
}
