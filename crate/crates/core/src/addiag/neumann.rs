use super::norm::{ad_norm, composition_constant};
use super::weights::NetGeometry;
use crate::error::{Error, Result};
use crate::linalg::{max_abs, Mat};
use crate::seqspace::SpaceParams;

/// Partial sum `Σ_{n<terms} Dⁿ`.
#[derive(Clone, Debug)]
pub struct NeumannSeries {
    pub sum: Mat,
    pub terms: usize,
    /// `max |(Dⁿ)_{ξη}|` for each kept term.
    pub term_norms: Vec<f64>,
}

/// Sums `Σ Dⁿ` until the next power has every entry below `tol`.
pub fn neumann_series(d: &Mat, tol: f64, max_terms: usize) -> Result<NeumannSeries> {
    if d.nrows() != d.ncols() {
        return Err(Error::IndexMismatch(format!("{}x{} matrix is not square", d.nrows(), d.ncols())));
    }
    let n = d.nrows();
    let mut sum = Mat::identity(n, n);
    let mut term = Mat::identity(n, n);
    let mut term_norms = vec![1.0];
    loop {
        term = &term * d;
        let t = max_abs(&term);
        if !t.is_finite() || t > 1e12 {
            return Err(Error::Divergence { terms: term_norms.len() });
        }
        if t <= tol {
            break;
        }
        if term_norms.len() >= max_terms {
            return Err(Error::Divergence { terms: term_norms.len() });
        }
        sum += &term;
        term_norms.push(t);
    }
    Ok(NeumannSeries { terms: term_norms.len(), sum, term_norms })
}

#[derive(Clone, Debug)]
pub struct NeumannReport {
    pub eps: f64,
    pub eps1: f64,
    /// `‖I − A‖_ε`.
    pub delta: f64,
    /// Measured composition constant at `(ε, ε₁)`.
    pub c_star: f64,
    pub terms: usize,
    /// `‖Dⁿ‖_{ε₁}` for `n = 0, 1, ...`.
    pub term_ad_norms: Vec<f64>,
    /// Every term obeys `‖Dⁿ‖_{ε₁} ≤ (δ c*)ⁿ`.
    pub decay_ok: bool,
    /// `max(‖A A⁻¹ − I‖_max, ‖A⁻¹ A − I‖_max)`.
    pub residual: f64,
    pub inverse_ad_norm: f64,
}

/// Inverts `A` through `Σ (I − A)ⁿ`, after checking
/// `‖I − A‖_ε < delta_threshold < 1/c*` with `c*` measured at `(ε, ε₁)`.
/// `eps1` defaults to `ε/2`.
pub fn neumann_invert(
    a: &Mat,
    g: &NetGeometry,
    params: &SpaceParams,
    eps: f64,
    eps1: Option<f64>,
    delta_threshold: f64,
) -> Result<(Mat, NeumannReport)> {
    let eps1 = eps1.unwrap_or(eps / 2.0);
    if !(eps1 > 0.0 && eps1 < eps) {
        return Err(Error::InvalidArgument(format!("need 0 < ε₁ < ε, got ε₁={eps1}, ε={eps}")));
    }
    let n = g.len();
    let id = Mat::identity(n, n);
    let d = &id - a;
    let delta = ad_norm(&d, g, eps, params)?.value;
    let c_star = composition_constant(g, eps, eps1, params);
    if !(delta < delta_threshold && delta_threshold * c_star < 1.0) {
        return Err(Error::Precondition(format!(
            "need ‖I − A‖_ε = {delta:.3e} < threshold {delta_threshold:.3e} < 1/c* = {:.3e}",
            1.0 / c_star
        )));
    }
    let mut sum = id.clone();
    let mut term = id.clone();
    let mut term_ad_norms = vec![1.0];
    let mut decay_ok = true;
    loop {
        term = &term * &d;
        let t = ad_norm(&term, g, eps1, params)?.value;
        let k = term_ad_norms.len() as i32;
        if t > (delta * c_star).powi(k) * (1.0 + 1e-10) {
            decay_ok = false;
        }
        if t < 1e-12 {
            break;
        }
        if term_ad_norms.len() >= 10_000 || !t.is_finite() {
            return Err(Error::Divergence { terms: term_ad_norms.len() });
        }
        sum += &term;
        term_ad_norms.push(t);
    }
    let residual = max_abs(&(a * &sum - &id)).max(max_abs(&(&sum * a - &id)));
    let inverse_ad_norm = ad_norm(&sum, g, eps1, params)?.value;
    let report = NeumannReport {
        eps,
        eps1,
        delta,
        c_star,
        terms: term_ad_norms.len(),
        term_ad_norms,
        decay_ok,
        residual,
        inverse_ad_norm,
    };
    Ok((sum, report))
}
