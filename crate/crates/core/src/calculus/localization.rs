//! Measured localization, Hölder regularity and propagation speed of kernels.

use super::spectral::{apply_symbol, Kernel, SpectralData};
use crate::error::{Error, Result};
use crate::space::ModelSpace;

#[derive(Clone, Debug)]
pub struct LocalizationReport {
    pub delta: f64,
    pub orders: Vec<u32>,
    /// `max_{x,y} |K(x,y)| (|B(x,δ)||B(y,δ)|)^{1/2} (1+ρ(x,y)/δ)^N` per order.
    pub a_eff: Vec<f64>,
}

pub fn measure_localization(kernel: &Kernel, delta: f64, orders: &[u32], space: &ModelSpace) -> LocalizationReport {
    let n = space.n();
    let vol: Vec<f64> = (0..n).map(|x| space.ball_volume(x, delta)).collect();
    let mut a_eff = vec![0.0_f64; orders.len()];
    for x in 0..n {
        for y in 0..n {
            let base = kernel.table[(x, y)].abs() * (vol[x] * vol[y]).sqrt();
            let w = 1.0 + space.dist[(x, y)] / delta;
            for (k, &nn) in orders.iter().enumerate() {
                a_eff[k] = a_eff[k].max(base * w.powi(nn as i32));
            }
        }
    }
    LocalizationReport { delta, orders: orders.to_vec(), a_eff }
}

#[derive(Clone, Debug)]
pub struct HolderProfile {
    pub delta: f64,
    /// Per distance `r = ρ(y,y') ≤ δ`: max of `|K(x,y)−K(x,y')| (|B(x,δ)||B(y,δ)|)^{1/2} (1+ρ(x,y)/δ)^N`.
    pub shells: Vec<(f64, f64)>,
    /// Least-squares slope of `log max` against `log(r/δ)`; needs two shells.
    pub alpha_fit: Option<f64>,
}

pub fn measure_holder(kernel: &Kernel, delta: f64, order: u32, space: &ModelSpace) -> HolderProfile {
    let n = space.n();
    let vol: Vec<f64> = (0..n).map(|x| space.ball_volume(x, delta)).collect();
    let mut shells: Vec<(f64, f64)> = Vec::new();
    for y in 0..n {
        for yp in 0..n {
            let r = space.dist[(y, yp)];
            if r == 0.0 || r > delta {
                continue;
            }
            let mut worst = 0.0_f64;
            for x in 0..n {
                let diff = (kernel.table[(x, y)] - kernel.table[(x, yp)]).abs();
                let w = (1.0 + space.dist[(x, y)] / delta).powi(order as i32);
                worst = worst.max(diff * (vol[x] * vol[y]).sqrt() * w);
            }
            match shells.iter_mut().find(|(d, _)| *d == r) {
                Some(s) => s.1 = s.1.max(worst),
                None => shells.push((r, worst)),
            }
        }
    }
    shells.sort_by(|a, b| a.0.total_cmp(&b.0));
    let pts: Vec<(f64, f64)> = shells
        .iter()
        .filter(|(_, v)| *v > 0.0)
        .map(|(r, v)| ((r / delta).ln(), v.ln()))
        .collect();
    let alpha_fit = if pts.len() >= 2 {
        let m = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        (sxx > 0.0).then(|| sxy / sxx)
    } else {
        None
    };
    HolderProfile { delta, shells, alpha_fit }
}

/// Gaussian fit of the heat kernel: `p_t ≤ C* e^{-c* ρ²/t} (|B(x,√t)||B(y,√t)|)^{-1/2}`.
#[derive(Clone, Debug)]
pub struct SpeedCalibration {
    pub big_c: f64,
    pub c_star: f64,
    /// Propagation constant `1/(2√c*)`.
    pub c_tilde: f64,
    pub deltas: Vec<f64>,
}

/// Fits `(C*, c*)` over the ladder `t = δ²`.  Scales above a quarter of the
/// diameter are dropped because the finite model has equilibrated there and
/// the Gaussian profile says nothing about propagation.
pub fn calibrate_speed(space: &ModelSpace, spec: &SpectralData, deltas: &[f64]) -> Result<SpeedCalibration> {
    let cap = space.diameter() / 4.0;
    let mut used: Vec<f64> = deltas.iter().copied().filter(|d| *d > 0.0 && *d <= cap).collect();
    if used.is_empty() {
        let smallest = deltas.iter().copied().filter(|d| *d > 0.0).fold(f64::INFINITY, f64::min);
        if !smallest.is_finite() {
            return Err(Error::InvalidArgument("empty scale ladder".into()));
        }
        used.push(smallest);
    }
    let n = space.n();
    let mut fits = Vec::new();
    let mut big_c = 0.0_f64;
    for &delta in &used {
        let p = apply_symbol(spec, |u| (-u * u).exp(), delta);
        let vol: Vec<f64> = (0..n).map(|x| space.ball_volume(x, delta)).collect();
        let q = nalgebra::DMatrix::from_fn(n, n, |x, y| p.table[(x, y)] * (vol[x] * vol[y]).sqrt());
        let cmax = q.max();
        big_c = big_c.max(cmax);
        fits.push((delta, q, cmax));
    }
    let mut c_star = f64::INFINITY;
    for (delta, q, cmax) in &fits {
        let t = delta * delta;
        for x in 0..n {
            for y in 0..n {
                let rho = space.dist[(x, y)];
                let v = q[(x, y)];
                if rho == 0.0 || !(v > 1e-12 * cmax) {
                    continue;
                }
                c_star = c_star.min(t * (cmax / v).ln() / (rho * rho));
            }
        }
    }
    if !(c_star > 0.0) || !c_star.is_finite() {
        return Err(Error::InvalidArgument("heat kernel shows no measurable Gaussian decay".into()));
    }
    Ok(SpeedCalibration { big_c, c_star, c_tilde: 1.0 / (2.0 * c_star.sqrt()), deltas: used })
}

#[derive(Clone, Debug)]
pub struct FiniteSpeedReport {
    /// Largest `ρ(x,y)` with `|K(x,y)| > 1e-9 · max|K|`.
    pub effective_radius: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Relative threshold defining effective support.
pub const SUPPORT_THRESHOLD: f64 = 1e-9;

pub fn effective_radius(table: &nalgebra::DMatrix<f64>, space: &ModelSpace) -> f64 {
    let peak = table.amax();
    let mut r = 0.0_f64;
    for x in 0..space.n() {
        for y in 0..space.n() {
            if table[(x, y)].abs() > SUPPORT_THRESHOLD * peak {
                r = r.max(space.dist[(x, y)]);
            }
        }
    }
    r
}

/// Measures the support of `f(δ√L)` against `c̃ δ R` for a symbol whose
/// Fourier transform is certified to live in `[-R, R]`.
pub fn check_finite_speed(
    space: &ModelSpace,
    spec: &SpectralData,
    symbol: impl Fn(f64) -> f64,
    band_limit: Option<f64>,
    delta: f64,
    c_tilde: f64,
) -> Result<FiniteSpeedReport> {
    let r = band_limit.ok_or_else(|| Error::Precondition("symbol has no certified band limit".into()))?;
    let k = apply_symbol(spec, symbol, delta);
    let effective_radius = effective_radius(&k.table, space);
    let bound = c_tilde * delta * r;
    Ok(FiniteSpeedReport { effective_radius, bound, pass: effective_radius <= bound })
}
