use super::Frame;
use crate::calculus::{apply_l_power, SpectralData};
use crate::linalg::{norm2, norm_p, Vector};
use crate::space::{ModelSpace, NetHierarchy};

#[derive(Clone, Debug)]
pub struct NormBand {
    pub p: f64,
    pub min: f64,
    pub max: f64,
}

/// Fitted envelope `c·exp(−κ r^β)`, `r = b^j ρ(x,ξ)`, for `|L^m φ_ξ(x)|` scaled by `b^{2jm}|B(ξ,b^{-j})|^{-1/2}`.
#[derive(Clone, Debug)]
pub struct DecayFit {
    pub m: u32,
    pub c: f64,
    pub kappa: f64,
    pub beta: f64,
    /// Shell maxima `(r, max)` over unit-width bins of `r`.
    pub shells: Vec<(f64, f64)>,
}

#[derive(Clone, Debug)]
pub struct FramePropertiesReport {
    /// Largest `|⟨φ_ξ, e_i⟩|` over eigenvalues outside the level band.
    pub primal_band_leak: f64,
    pub dual_band_leak: f64,
    pub primal_decay: Vec<DecayFit>,
    pub dual_decay: Vec<DecayFit>,
    /// `‖φ_ξ‖_p / |B(ξ,b^{-j})|^{1/p−1/2}` bands for p = 1, 2, ∞.
    pub primal_norms: Vec<NormBand>,
    pub dual_norms: Vec<NormBand>,
}

fn band_leak(frame: &Frame, spec: &SpectralData, h: &NetHierarchy) -> f64 {
    let coeffs = spec.eigenfunctions.tr_mul(&crate::linalg::scale_rows(&frame.elements, &spec.mu));
    let mut worst = 0.0_f64;
    for xi in 0..frame.len() {
        let Some((lo, hi)) = frame.bands[h.level_index(xi)] else { continue };
        for i in 0..spec.n() {
            let s = spec.sqrt_eigenvalue(i);
            let inside = s >= lo * (1.0 - 1e-12) && s <= hi * (1.0 + 1e-12);
            if !inside {
                worst = worst.max(coeffs[(i, xi)].abs());
            }
        }
    }
    worst
}

fn decay_fit(frame: &Frame, spec: &SpectralData, h: &NetHierarchy, space: &ModelSpace, m: u32) -> DecayFit {
    let mut shells: Vec<f64> = Vec::new();
    for xi in 0..frame.len() {
        let j = h.level(xi);
        let p = h.point(xi);
        let scale = h.b.powi(j);
        let g = apply_l_power(spec, &frame.element(xi), m as i32, false).expect("nonnegative power");
        let norm = h.b.powf(2.0 * j as f64 * m as f64) / space.ball_volume(p, h.ell(xi)).sqrt();
        for x in 0..space.n() {
            let r = scale * space.dist[(x, p)];
            let bin = r.floor() as usize;
            if shells.len() <= bin {
                shells.resize(bin + 1, 0.0);
            }
            shells[bin] = shells[bin].max(g[x].abs() / norm);
        }
    }
    let c = shells.iter().copied().fold(0.0_f64, f64::max);
    let pts: Vec<(f64, f64)> = shells
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, v)| **v > 0.0 && **v < c)
        .map(|(r, v)| ((r as f64).ln(), (c / v).ln().ln()))
        .collect();
    let (kappa, beta) = if pts.len() >= 2 {
        let k = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let beta = if sxx > 0.0 { sxy / sxx } else { 0.0 };
        ((my - beta * mx).exp(), beta)
    } else {
        (0.0, 0.0)
    };
    DecayFit { m, c, kappa, beta, shells: shells.iter().enumerate().map(|(r, v)| (r as f64, *v)).collect() }
}

fn norm_bands(frame: &Frame, h: &NetHierarchy, space: &ModelSpace) -> Vec<NormBand> {
    [1.0, 2.0, f64::INFINITY]
        .iter()
        .map(|&p| {
            let mut lo = f64::INFINITY;
            let mut hi = 0.0_f64;
            for xi in 0..frame.len() {
                let vol = space.ball_volume(h.point(xi), h.ell(xi));
                let expo = if p.is_infinite() { -0.5 } else { 1.0 / p - 0.5 };
                let r = norm_p(&frame.element(xi), &space.mu, p) / vol.powf(expo);
                lo = lo.min(r);
                hi = hi.max(r);
            }
            NormBand { p, min: lo, max: hi }
        })
        .collect()
}

pub fn check_frame_properties(
    space: &ModelSpace,
    spec: &SpectralData,
    h: &NetHierarchy,
    primal: &Frame,
    dual: &Frame,
) -> FramePropertiesReport {
    FramePropertiesReport {
        primal_band_leak: band_leak(primal, spec, h),
        dual_band_leak: band_leak(dual, spec, h),
        primal_decay: (0..2).map(|m| decay_fit(primal, spec, h, space, m)).collect(),
        dual_decay: (0..2).map(|m| decay_fit(dual, spec, h, space, m)).collect(),
        primal_norms: norm_bands(primal, h, space),
        dual_norms: norm_bands(dual, h, space),
    }
}

/// Extremes of `Σ_ξ |⟨f, φ_ξ⟩|² / ‖f‖²` over a battery.
#[derive(Clone, Copy, Debug)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
}

pub fn frame_bounds(frame: &Frame, mu: &Vector, battery: &[Vector]) -> FrameBounds {
    let mut lower = f64::INFINITY;
    let mut upper = 0.0_f64;
    for f in battery {
        let nf = norm2(f, mu);
        if nf == 0.0 {
            continue;
        }
        let c = frame.analysis(f, mu);
        let r = c.norm_squared() / (nf * nf);
        lower = lower.min(r);
        upper = upper.max(r);
    }
    FrameBounds { lower, upper }
}
